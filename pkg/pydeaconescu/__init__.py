""" Wrapper to include the main library modules """
from .core import (DeaconescuError, DomainError, EmptyTableError, ExactRational,
                   Factorization, InconsistencyError, PrimeTable, ResourceLimitError,
                   SpfSegment, TotientSegment, UnsupportedInputError, euler_phi,
                   euler_phi_oracle, factorize, is_prime, nth_prime, schemmel_s2,
                   schemmel_s2_oracle, sieve_primes, spf_sieve, totient_sieve)
from .predicates import (Constraint, StructuralProfile, condition_holds, is_deaconescu,
                         lemma1_check, lemma2_violation, m_ratio, structural_profile)
from .certificates import CertificateReport, run_all_certificates
from .search import (NearMissCandidate, NearMissOutcome, PartialScanError, ScanResult,
                     d3_residual, near_miss_search, run_near_miss, scan_range)
from .checkpoint import ScanCheckpoint

__version__ = '0.1.0'
