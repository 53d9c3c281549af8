"""
The Deaconescu condition S2(n) | phi(n) - 1, the ratio M and the structural
constraints every Deaconescu number has to satisfy.
"""

import enum
import logging
from dataclasses import dataclass, field
from typing import List, Optional

from .core import (Factorization, InconsistencyError, DomainError, _as_int,
                   _as_factorization, euler_phi, schemmel_s2)

#pylint: disable=invalid-name

logger = logging.getLogger(__name__)

# a Deaconescu number is strictly larger than 5.86 * 10^22
LOWER_BOUND = 586 * 10 ** 20


class Constraint(str, enum.Enum):
    """ identifiers of the necessary conditions a candidate can violate """
    EVEN = 'even'
    NOT_SQUAREFREE = 'not_squarefree'
    OMEGA_LT_7 = 'omega_lt_7'
    OMEGA_LT_17 = 'omega_lt_17'
    LE_BOUND = 'le_bound_5_86e22'
    LEMMA1_FAIL = 'lemma1_fail'
    LEMMA2_FAIL = 'lemma2_fail'
    D3_PRIME_CLASS_FAIL = 'd3_prime_class_fail'
    D3_OMEGA_LT_48 = 'd3_omega_lt_48'
    D3_DIVISIBLE_BY_3 = 'd3_divisible_by_3'


def _divides(d, x):
    """ d | x, where 0 divides only 0 """
    if d == 0:
        return x == 0
    return x % d == 0


def condition_holds(n):
    """ True iff S2(n) divides phi(n) - 1 """
    f = _as_factorization(n)
    return _divides(schemmel_s2(f), euler_phi(f) - 1)


def is_composite(n):
    f = _as_factorization(n)
    return f.value >= 4 and not f.is_prime


def is_deaconescu(n):
    """ composite n >= 4 with S2(n) | phi(n) - 1 """
    f = _as_factorization(n)
    return is_composite(f) and condition_holds(f)


def m_ratio(n):
    """
    M = (phi(n) - 1) / S2(n) when the condition holds and S2(n) >= 1,
    otherwise None. M = 0 (only n = 1) is reported as None.
    """
    f = _as_factorization(n)
    s2 = schemmel_s2(f)
    phi_minus_one = euler_phi(f) - 1
    if s2 < 1 or phi_minus_one % s2:
        return None
    ratio = phi_minus_one // s2
    return ratio if ratio >= 1 else None


def lemma2_violation(f, M):
    """
    Smallest prime factor p of f with p = 1 (mod M), or None.

    A Deaconescu number in D_M has no such prime. For M = 1 every prime
    qualifies, so callers are expected to pass M >= 2.
    """
    f = _as_factorization(f)
    M = _as_int(M, 'M')
    if M < 1:
        raise DomainError('M must be >= 1, got {}'.format(M))
    if M < 2:
        logger.warning('lemma2_violation called with M = %d: every prime is 1 mod 1', M)
    for p in f.primes:
        if p % M == 1 % M:
            return p
    return None


def lemma1_applicable(f):
    """ odd, squarefree and every prime factor >= 11 """
    f = _as_factorization(f)
    return f.value > 1 and f.is_odd and f.is_squarefree and f.smallest_prime >= 11


def lemma1_check(f):
    """
    omega(n) >= p*, the bound every Deaconescu number with all prime factors
    >= 11 satisfies. Inputs outside that class are answered but logged.
    """
    f = _as_factorization(f)
    if f.value == 1:
        return False
    if not lemma1_applicable(f):
        logger.warning('lemma1_check on %s: needs an odd squarefree n with all primes >= 11',
                       f.value)
    return f.omega >= f.smallest_prime


def admissible_m_values(product_bound):
    """
    Odd M with 3 <= M < product_bound. For an odd composite n both
    phi(n) - 1 and S2(n) are odd, D_1 holds only primes, and
    M < phi(n) / S2(n).
    """
    return [m for m in range(3, int(product_bound) + 1, 2) if m < product_bound]


@dataclass(frozen=True)
class StructuralProfile:
    """ everything the proven constraints say about one n """
    n: int
    is_composite: bool
    is_odd: bool
    is_squarefree: bool
    omega: int
    smallest_prime: Optional[int]
    condition_holds: bool
    m_ratio: Optional[int]
    violated_constraints: List[Constraint] = field(default_factory=list)
    factorization: Optional[Factorization] = None
    phi: int = 0
    s2: int = 0

    @property
    def is_deaconescu(self):
        return self.is_composite and self.condition_holds

    def to_dict(self):
        """ JSON-ready dict; integers as decimal strings """
        return {
            'n': str(self.n),
            'factorization': [[str(p), e] for p, e in self.factorization.factors]
                             if self.factorization is not None else [],
            'phi': str(self.phi),
            's2': str(self.s2),
            'is_composite': self.is_composite,
            'is_odd': self.is_odd,
            'is_squarefree': self.is_squarefree,
            'omega': self.omega,
            'smallest_prime': None if self.smallest_prime is None else str(self.smallest_prime),
            'condition_holds': self.condition_holds,
            'is_deaconescu': self.is_deaconescu,
            'm_ratio': None if self.m_ratio is None else str(self.m_ratio),
            'violated_constraints': [c.value for c in self.violated_constraints],
        }


def violated_constraints(f, M=None):
    """ the necessary conditions of a Deaconescu number (in D_M) that f fails """
    f = _as_factorization(f)
    violated = []
    if not f.is_odd:
        violated.append(Constraint.EVEN)
    if not f.is_squarefree:
        violated.append(Constraint.NOT_SQUAREFREE)
    if f.omega < 7:
        violated.append(Constraint.OMEGA_LT_7)
    if f.omega < 17:
        violated.append(Constraint.OMEGA_LT_17)
    if f.value <= LOWER_BOUND:
        violated.append(Constraint.LE_BOUND)
    if lemma1_applicable(f) and f.omega < f.smallest_prime:
        violated.append(Constraint.LEMMA1_FAIL)
    if M is not None and M >= 3:
        if lemma2_violation(f, M) is not None:
            violated.append(Constraint.LEMMA2_FAIL)
        if M == 3:
            if any(p % 3 != 2 for p in f.primes):
                violated.append(Constraint.D3_PRIME_CLASS_FAIL)
            if f.omega < 48:
                violated.append(Constraint.D3_OMEGA_LT_48)
            if f.value % 3 == 0:
                violated.append(Constraint.D3_DIVISIBLE_BY_3)
    return violated


def structural_profile(n):
    """
    Full profile of n.

    :raises InconsistencyError: n satisfies the Deaconescu definition yet
            violates one of the proven constraints
    """
    f = _as_factorization(n)
    phi = euler_phi(f)
    s2 = schemmel_s2(f)
    holds = _divides(s2, phi - 1)
    ratio = m_ratio(f)
    profile = StructuralProfile(
        n=f.value,
        is_composite=is_composite(f),
        is_odd=f.is_odd,
        is_squarefree=f.is_squarefree,
        omega=f.omega,
        smallest_prime=f.smallest_prime,
        condition_holds=holds,
        m_ratio=ratio,
        violated_constraints=violated_constraints(f, ratio),
        factorization=f,
        phi=phi,
        s2=s2)

    if profile.is_deaconescu:
        logger.critical('%d satisfies S2(n) | phi(n) - 1 and is composite (M = %s), '
                        'violated constraints: %s', f.value, ratio,
                        [c.value for c in profile.violated_constraints])
        if profile.violated_constraints:
            raise InconsistencyError('{} satisfies the condition but violates {}'.format(
                f.value, ', '.join(c.value for c in profile.violated_constraints)))
    return profile
