""" Arithmetic core: primes, factorizations and the two totient functions """

import logging
import math
import operator
from fractions import Fraction
from functools import lru_cache, reduce

import numpy as np

#pylint: disable=invalid-name, missing-docstring

logger = logging.getLogger(__name__)


## resource caps ##

# largest limit accepted by sieve_primes (one flag byte per integer, ~1 GiB)
MAX_SIEVE_LIMIT = 1 << 30

# largest number of integers held by a single spf / totient segment
MAX_SEGMENT_SPAN = 1 << 24

# segment sieves need base primes up to isqrt(hi) and keep values in int64
MAX_SCAN_HI = 1 << 60

# Miller-Rabin with the first twelve primes as witnesses is exact below this
# bound (Sorenson & Webster). Larger inputs are rejected, never guessed.
MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
MR_DETERMINISTIC_BOUND = 318665857834031151167461

# brute-force oracles enumerate every residue
ORACLE_CAP = 10 ** 6

# factorize trial-divides up to this bound, then falls back to Pollard-Brent
TRIAL_DIVISION_BOUND = 1 << 16

RHO_ATTEMPTS = 8
RHO_ITERATION_CAP = 1 << 20
_RHO_BATCH = 128


# exact rationals: numerator/denominator always in lowest terms, comparisons
# by cross-multiplication
ExactRational = Fraction


## errors ##

class DeaconescuError(Exception):
    """ base class of all errors raised by pydeaconescu """


class DomainError(DeaconescuError, ValueError):
    """ argument outside the mathematical domain of an operation """


class EmptyTableError(DomainError):
    """ a prime table was requested for a limit below 2 """


class ResourceLimitError(DeaconescuError):
    """ request exceeds a documented memory or size cap """


class UnsupportedInputError(DeaconescuError, ValueError):
    """ input beyond the range where an exact answer can be guaranteed """


class InconsistencyError(DeaconescuError, RuntimeError):
    """ a computed object contradicts a proven necessary condition """


def _as_int(n, name='n'):
    """ accept python and numpy integers, reject floats and bools """
    if isinstance(n, bool):
        raise DomainError('{} must be an integer, got a bool'.format(name))
    try:
        return operator.index(n)
    except TypeError as exc:
        raise DomainError('{} must be an integer, got {!r}'.format(name, n)) from exc


## primes ##

class PrimeTable(object):
    """
    Immutable, ascending table of all primes <= limit.

    The j-th prime P_j is table.nth(j) == table.primes[j-1].
    """

    def __init__(self, limit, primes):
        self._limit = limit
        self._primes = np.asarray(primes, dtype=np.int64)
        self._primes.setflags(write=False)

    @property
    def limit(self):
        """ sieve limit of the table """
        return self._limit

    @property
    def primes(self):
        """ read-only numpy array (int64) of the primes """
        return self._primes

    def __len__(self):
        return len(self._primes)

    def __iter__(self):
        return (int(p) for p in self._primes)

    def __contains__(self, n):
        n = _as_int(n)
        if n > self._limit:
            raise DomainError('{} is beyond the table limit {}'.format(n, self._limit))
        i = int(np.searchsorted(self._primes, n))
        return i < len(self._primes) and int(self._primes[i]) == n

    def __eq__(self, other):
        return (isinstance(other, PrimeTable) and self._limit == other._limit and
                np.array_equal(self._primes, other._primes))

    def __repr__(self):
        return 'PrimeTable(limit={}, count={})'.format(self._limit, len(self))

    def nth(self, j):
        """ the j-th prime (1-based, P_1 = 2) """
        j = _as_int(j, 'j')
        if j < 1:
            raise DomainError('prime index must be >= 1, got {}'.format(j))
        if j > len(self._primes):
            raise DomainError('table up to {} holds only {} primes'.format(
                self._limit, len(self._primes)))
        return int(self._primes[j - 1])

    def index(self, p):
        """ 1-based index j with nth(j) == p """
        if p not in self:
            raise DomainError('{} is not a prime of this table'.format(p))
        return int(np.searchsorted(self._primes, p)) + 1

    def select(self, predicate):
        """ list of the primes (ascending) for which predicate(p) holds """
        return [p for p in self if predicate(p)]


def sieve_primes(limit):
    """
    Sieve of Eratosthenes.

    :param limit: inclusive upper bound, 2 <= limit <= MAX_SIEVE_LIMIT
    :raises EmptyTableError: limit < 2
    :raises ResourceLimitError: limit above MAX_SIEVE_LIMIT
    """
    limit = _as_int(limit, 'limit')
    if limit < 2:
        raise EmptyTableError('no primes <= {}'.format(limit))
    if limit > MAX_SIEVE_LIMIT:
        raise ResourceLimitError('sieve limit {} exceeds the cap {}'.format(
            limit, MAX_SIEVE_LIMIT))

    flags = np.ones(limit + 1, dtype=np.bool_)
    flags[:2] = False
    flags[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if flags[p]:
            flags[p * p::2 * p] = False
    return PrimeTable(limit, np.flatnonzero(flags))


@lru_cache(maxsize=8)
def _cached_table(limit):
    return sieve_primes(limit)


def nth_prime(j):
    """ the j-th prime, P_1 = 2, P_2 = 3, P_5 = 11 """
    j = _as_int(j, 'j')
    if j < 1:
        raise DomainError('prime index must be >= 1, got {}'.format(j))
    if j < 6:
        bound = 13
    else:
        # Rosser: P_j < j (ln j + ln ln j) for j >= 6
        bound = int(j * (math.log(j) + math.log(math.log(j)))) + 3
    return _cached_table(bound).nth(j)


def _strong_probable_prime(n, a, d, s):
    x = pow(a, d, n)
    if x in (1, n - 1):
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n):
    """
    Deterministic primality test.

    Trial division by the witness primes, then Miller-Rabin with the witness
    set MR_BASES, which is proven exhaustive below MR_DETERMINISTIC_BOUND.

    :raises UnsupportedInputError: n >= MR_DETERMINISTIC_BOUND
    """
    n = _as_int(n)
    if n < 2:
        return False
    for p in MR_BASES:
        if n % p == 0:
            return n == p
    if n < 41 * 41:
        return True
    if n >= MR_DETERMINISTIC_BOUND:
        raise UnsupportedInputError(
            'primality of {} cannot be decided deterministically'.format(n))
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    return all(_strong_probable_prime(n, a, d, s) for a in MR_BASES)


## factorizations ##

class Factorization(object):
    """
    Canonical prime decomposition value = prod(p**e).

    factors is a tuple of (prime, exponent) pairs with strictly increasing
    primes; value 1 has no factors.
    """

    def __init__(self, value, factors):
        self._value = value
        self._factors = tuple(factors)

    @classmethod
    def from_pairs(cls, pairs):
        """
        build and validate a factorization from (prime, exponent) pairs

        :raises DomainError: unsorted or repeated primes, a non-prime or a
               non-positive exponent
        """
        pairs = [(_as_int(p, 'prime'), _as_int(e, 'exponent')) for p, e in pairs]
        previous = 1
        for p, e in pairs:
            if p <= previous:
                raise DomainError('primes must be strictly increasing: {}'.format(pairs))
            if e < 1:
                raise DomainError('exponent of {} must be >= 1, got {}'.format(p, e))
            if not is_prime(p):
                raise DomainError('{} is not prime'.format(p))
            previous = p
        return cls(_multiply(pairs), pairs)

    @property
    def value(self):
        """ the factorized integer """
        return self._value

    @property
    def factors(self):
        """ tuple of (prime, exponent) """
        return self._factors

    @property
    def primes(self):
        """ tuple of the distinct primes, ascending """
        return tuple(p for p, _ in self._factors)

    @property
    def omega(self):
        """ number of distinct prime divisors """
        return len(self._factors)

    @property
    def smallest_prime(self):
        """ p*, or None for value 1 """
        return self._factors[0][0] if self._factors else None

    @property
    def is_squarefree(self):
        return all(e == 1 for _, e in self._factors)

    @property
    def is_odd(self):
        return self._value % 2 == 1

    @property
    def is_prime(self):
        return len(self._factors) == 1 and self._factors[0][1] == 1

    def multiply(self):
        """ re-multiply the factors """
        return _multiply(self._factors)

    def __iter__(self):
        return iter(self._factors)

    def __eq__(self, other):
        return (isinstance(other, Factorization) and self._value == other._value and
                self._factors == other._factors)

    def __hash__(self):
        return hash((self._value, self._factors))

    def __repr__(self):
        return 'Factorization({}, {})'.format(self._value, list(self._factors))

    def __str__(self):
        if not self._factors:
            return '1'
        return ' * '.join(str(p) if e == 1 else '{}^{}'.format(p, e)
                          for p, e in self._factors)


def _multiply(pairs):
    return reduce(operator.mul, (p ** e for p, e in pairs), 1)


def _pollard_brent(n):
    """ a non-trivial factor of the odd composite n, or None """
    for c in range(1, RHO_ATTEMPTS + 1):
        y, r, q, g = 2, 1, 1, 1
        x = ys = y
        while g == 1 and r <= RHO_ITERATION_CAP:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(_RHO_BATCH, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += _RHO_BATCH
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return None


def _split_cofactor(m, counts):
    """ add the prime factors of m (no factor below TRIAL_DIVISION_BOUND) """
    pending = [m]
    while pending:
        m = pending.pop()
        if m < MR_DETERMINISTIC_BOUND:
            if is_prime(m):
                counts[m] = counts.get(m, 0) + 1
                continue
        else:
            d, s = m - 1, 0
            while d % 2 == 0:
                d //= 2
                s += 1
            if _strong_probable_prime(m, 2, d, s):
                raise UnsupportedInputError(
                    'cofactor {} is beyond the deterministic primality bound'.format(m))
        logger.debug('Pollard-Brent on cofactor %d', m)
        factor = _pollard_brent(m)
        if factor is None:
            raise UnsupportedInputError('could not split the cofactor {}'.format(m))
        pending.extend((factor, m // factor))


def factorize(n):
    """
    Canonical factorization of n.

    Trial division by the primes below TRIAL_DIVISION_BOUND, then
    Pollard-Brent with fixed seeds; every reported prime is certified by
    is_prime, so the result is never wrong.

    :raises DomainError: n < 1
    :raises UnsupportedInputError: a cofactor could not be split or certified
    """
    n = _as_int(n)
    if n < 1:
        raise DomainError('cannot factorize {}'.format(n))

    counts = {}
    remaining = n
    exhausted = True
    for p in _cached_table(TRIAL_DIVISION_BOUND):
        if p * p > remaining:
            exhausted = False
            break
        if remaining % p == 0:
            e = 0
            while remaining % p == 0:
                remaining //= p
                e += 1
            counts[p] = e
    if remaining > 1:
        if exhausted:
            _split_cofactor(remaining, counts)
        else:
            counts[remaining] = counts.get(remaining, 0) + 1

    return Factorization(n, sorted(counts.items()))


def _as_factorization(f):
    if isinstance(f, Factorization):
        return f
    return factorize(f)


## totients ##

def euler_phi(f):
    """ phi(n) from its factorization, phi(p^k) = p^(k-1) (p-1), phi(1) = 1 """
    f = _as_factorization(f)
    return reduce(operator.mul, (p ** (e - 1) * (p - 1) for p, e in f.factors), 1)


def schemmel_s2(f):
    """
    Schemmel's totient S2 from the factorization:
    S2(2^k) = 0, S2(p^k) = p^(k-1) (p-2) for odd p, S2(1) = 1.
    """
    f = _as_factorization(f)
    return reduce(operator.mul, (p ** (e - 1) * (p - 2) for p, e in f.factors), 1)


def _oracle_input(n):
    n = _as_int(n)
    if n < 1:
        raise DomainError('oracle needs n >= 1, got {}'.format(n))
    if n > ORACLE_CAP:
        raise UnsupportedInputError('oracle input {} above the cap {}'.format(n, ORACLE_CAP))
    return n


def schemmel_s2_oracle(n):
    """
    S2(n) by direct enumeration: residues x mod n with gcd(x, n) = 1 and
    gcd(x + 1, n) = 1. Independent of factorize; used as a test oracle.
    """
    n = _oracle_input(n)
    coprime = np.gcd(np.arange(n, dtype=np.int64), n) == 1
    # x + 1 wraps to residue 0 for x = n - 1
    return int(np.count_nonzero(coprime & np.roll(coprime, -1)))


def euler_phi_oracle(n):
    """ phi(n) by counting 1 <= x <= n with gcd(x, n) = 1 """
    n = _oracle_input(n)
    return int(np.count_nonzero(np.gcd(np.arange(1, n + 1, dtype=np.int64), n) == 1))


## segment sieves ##

def _check_segment(lo, hi):
    lo = _as_int(lo, 'lo')
    hi = _as_int(hi, 'hi')
    if lo < 2 or lo > hi:
        raise DomainError('invalid segment [{}, {}]'.format(lo, hi))
    if hi > MAX_SCAN_HI:
        raise ResourceLimitError('segment end {} above the cap {}'.format(hi, MAX_SCAN_HI))
    if hi - lo + 1 > MAX_SEGMENT_SPAN:
        raise ResourceLimitError('segment of {} integers exceeds the cap {}'.format(
            hi - lo + 1, MAX_SEGMENT_SPAN))
    return lo, hi


def base_primes_for(hi):
    """ the primes up to isqrt(hi), as python ints """
    root = math.isqrt(hi)
    if root < 2:
        return ()
    return tuple(_cached_table(root))


class SpfSegment(object):
    """
    Smallest prime factor of every n in [lo, hi].

    Immutable after construction; safe to share between workers.
    """

    def __init__(self, lo, hi, spf, base_primes):
        self._lo = lo
        self._hi = hi
        self._spf = spf
        self._spf.setflags(write=False)
        self._base = tuple(base_primes)

    @property
    def lo(self):
        return self._lo

    @property
    def hi(self):
        return self._hi

    @property
    def spf(self):
        """ read-only int64 array, spf[n - lo] """
        return self._spf

    def __len__(self):
        return self._hi - self._lo + 1

    def __contains__(self, n):
        return self._lo <= n <= self._hi

    def __getitem__(self, n):
        if n not in self:
            raise DomainError('{} outside segment [{}, {}]'.format(n, self._lo, self._hi))
        return int(self._spf[n - self._lo])

    def is_prime(self, n):
        return self[n] == n

    def factorize(self, n):
        """
        factorize n by repeated smallest-prime-factor division; once the
        cofactor leaves the segment the base primes take over
        """
        n = _as_int(n)
        p = self[n]
        counts = {}
        m = n
        start = 0
        while m > 1:
            if m in self:
                p = int(self._spf[m - self._lo])
            else:
                p = m
                for i in range(start, len(self._base)):
                    q = self._base[i]
                    if q * q > m:
                        break
                    if m % q == 0:
                        p = q
                        start = i
                        break
            while m % p == 0:
                m //= p
                counts[p] = counts.get(p, 0) + 1
        return Factorization(n, sorted(counts.items()))


class TotientSegment(object):
    """
    Exact int64 tables of phi(n) and S2(n) for every n in [lo, hi], filled by
    the same prime pass that builds the segment's SpfSegment.
    """

    def __init__(self, spf_segment, phi, s2):
        self._spf = spf_segment
        self._phi = phi
        self._s2 = s2
        self._phi.setflags(write=False)
        self._s2.setflags(write=False)

    @property
    def lo(self):
        return self._spf.lo

    @property
    def hi(self):
        return self._spf.hi

    @property
    def spf(self):
        return self._spf

    @property
    def phi(self):
        return self._phi

    @property
    def s2(self):
        return self._s2

    def condition_mask(self):
        """ S2(n) | phi(n) - 1, with 0 dividing only 0 """
        phi_minus_one = self._phi - 1
        safe = np.where(self._s2 == 0, 1, self._s2)
        return np.where(self._s2 == 0, phi_minus_one == 0, phi_minus_one % safe == 0)

    def condition_hits(self):
        """ list of (n, M, is_composite) for every n satisfying the condition """
        mask = self.condition_mask()
        hits = []
        for offset in np.flatnonzero(mask):
            n = self.lo + int(offset)
            s2 = int(self._s2[offset])
            ratio = (int(self._phi[offset]) - 1) // s2 if s2 else 0
            hits.append((n, ratio, int(self._spf.spf[offset]) != n))
        return hits


def _sieve_segment(lo, hi, base_primes, totients):
    size = hi - lo + 1
    spf = np.zeros(size, dtype=np.int64)
    if totients:
        rest = np.arange(lo, hi + 1, dtype=np.int64)
        phi = np.ones(size, dtype=np.int64)
        s2 = np.ones(size, dtype=np.int64)

    for p in base_primes:
        first = -(-lo // p) * p
        if first > hi:
            continue
        # multiples of p below p*p already carry a smaller prime factor
        spf_first = max(first, p * p)
        if spf_first <= hi:
            view = spf[spf_first - lo::p]
            view[view == 0] = p
        if not totients:
            continue
        idx = slice(first - lo, size, p)
        rest[idx] //= p
        phi[idx] *= p - 1
        s2[idx] *= p - 2
        pk = p * p
        while pk <= hi:
            first = -(-lo // pk) * pk
            if first > hi:
                break
            idx = slice(first - lo, size, pk)
            rest[idx] //= p
            phi[idx] *= p
            s2[idx] *= p
            pk *= p

    values = np.arange(lo, hi + 1, dtype=np.int64)
    unset = spf == 0
    spf[unset] = values[unset]
    segment = SpfSegment(lo, hi, spf, base_primes)
    if not totients:
        return segment

    # what is left is a single prime above isqrt(hi)
    large = rest > 1
    phi[large] *= rest[large] - 1
    s2[large] *= rest[large] - 2
    return TotientSegment(segment, phi, s2)


def spf_sieve(lo, hi, base_primes=None):
    """
    segmented smallest-prime-factor sieve over [lo, hi]

    :param base_primes: primes up to isqrt(hi); computed when None
    :raises DomainError: lo < 2 or lo > hi
    :raises ResourceLimitError: segment longer than MAX_SEGMENT_SPAN or hi
            above MAX_SCAN_HI
    """
    lo, hi = _check_segment(lo, hi)
    if base_primes is None:
        base_primes = base_primes_for(hi)
    return _sieve_segment(lo, hi, base_primes, totients=False)


def totient_sieve(lo, hi, base_primes=None):
    """ spf, phi and S2 tables over [lo, hi] in one prime pass """
    lo, hi = _check_segment(lo, hi)
    if base_primes is None:
        base_primes = base_primes_for(hi)
    return _sieve_segment(lo, hi, base_primes, totients=True)
