"""
Range scans for Deaconescu numbers and the near-miss search over
congruence-filtered prime pools.
"""

import heapq
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple

from tqdm import tqdm

from .core import (DeaconescuError, DomainError, MAX_SCAN_HI, MAX_SEGMENT_SPAN,
                   PrimeTable, ResourceLimitError, _as_int, base_primes_for, euler_phi,
                   factorize, is_prime, schemmel_s2, totient_sieve)

#pylint: disable=invalid-name, too-many-arguments, too-many-locals, too-few-public-methods

logger = logging.getLogger(__name__)

DEFAULT_SEGMENT_SIZE = 1 << 17

# subsets visited by near_miss_search before it stops
DEFAULT_NODE_LIMIT = 2000000


class PartialScanError(DeaconescuError):
    """ a scan stopped early; completed holds the (lo, hi) segments done """

    def __init__(self, message, completed):
        super().__init__(message)
        self.completed = completed


@dataclass
class ScanResult:
    """
    Outcome of scan_range.

    condition_hits lists (n, M) for the segments evaluated in this run;
    condition_hit_count also counts segments restored from a checkpoint.
    composite_hits lists (n, M) for composite n, i.e. Deaconescu numbers.
    """
    lo: int
    hi: int
    scanned: int = 0
    condition_hits: List[Tuple[int, int]] = field(default_factory=list)
    composite_hits: List[Tuple[int, int]] = field(default_factory=list)
    elapsed: float = 0.0
    segments: int = 0
    condition_hit_count: int = 0
    resumed_segments: int = 0
    reverified: List[Tuple[int, bool]] = field(default_factory=list)

    @property
    def alarm(self):
        """ True when a Deaconescu number was found """
        return len(self.composite_hits) > 0

    @property
    def throughput(self):
        """ integers per second """
        if self.elapsed <= 0:
            return 0.0
        return self.scanned / self.elapsed

    def to_dict(self, include_hits=False):
        result = {
            'lo': str(self.lo),
            'hi': str(self.hi),
            'scanned': str(self.scanned),
            'segments': self.segments,
            'resumed_segments': self.resumed_segments,
            'condition_hit_count': str(self.condition_hit_count),
            'composite_hits': [[str(n), str(m)] for n, m in self.composite_hits],
            'reverified': [[str(n), ok] for n, ok in self.reverified],
            'elapsed_s': round(self.elapsed, 3),
            'throughput_per_s': round(self.throughput),
        }
        if include_hits:
            result['condition_hits'] = [[str(n), str(m)] for n, m in self.condition_hits]
        return result


def _scan_segment(seg_lo, seg_hi, base_primes):
    table = totient_sieve(seg_lo, seg_hi, base_primes)
    return seg_lo, seg_hi, table.condition_hits()


_worker_base_primes = ()


def _init_worker(base_primes):
    global _worker_base_primes #pylint: disable=global-statement
    _worker_base_primes = base_primes


def _scan_worker(bounds):
    return _scan_segment(bounds[0], bounds[1], _worker_base_primes)


def _reverify(n):
    """ recheck a hit with factorize instead of the sieve tables """
    f = factorize(n)
    s2 = schemmel_s2(f)
    phi_minus_one = euler_phi(f) - 1
    return len(f.factors) > 1 or f.factors[0][1] > 1, s2 > 0 and phi_minus_one % s2 == 0


def segment_bounds(lo, hi, segment_size):
    """ [lo, hi] cut into consecutive segments of segment_size integers """
    return [(s, min(s + segment_size - 1, hi)) for s in range(lo, hi + 1, segment_size)]


def scan_range(lo, hi, segment_size=DEFAULT_SEGMENT_SIZE, workers=1, checkpoint=None,
               progress=False):
    """
    Evaluate S2(n) | phi(n) - 1 for every n in [lo, hi].

    The range is cut into segments of segment_size integers; each segment is
    sieved independently (worker pool of width workers) and the results are
    merged in ascending segment order, so the output does not depend on the
    segmentation or the number of workers.

    :param checkpoint: optional ScanCheckpoint; completed segments recorded
           in it are skipped and new ones appended
    :param progress: show a tqdm progress bar on stderr
    :raises DomainError: lo < 4, lo > hi or segment_size < 1
    :raises ResourceLimitError: hi above MAX_SCAN_HI or a segment above
            MAX_SEGMENT_SPAN
    :raises PartialScanError: memory exhausted; carries the completed segments
    """
    lo = _as_int(lo, 'lo')
    hi = _as_int(hi, 'hi')
    segment_size = _as_int(segment_size, 'segment_size')
    workers = _as_int(workers, 'workers')
    if lo < 4 or lo > hi:
        raise DomainError('invalid scan range [{}, {}], need 4 <= lo <= hi'.format(lo, hi))
    if segment_size < 1 or workers < 1:
        raise DomainError('segment_size and workers must be >= 1')
    if hi > MAX_SCAN_HI:
        raise ResourceLimitError('scan end {} above the cap {}'.format(hi, MAX_SCAN_HI))
    if segment_size > MAX_SEGMENT_SPAN:
        raise ResourceLimitError('segment size {} above the cap {}'.format(
            segment_size, MAX_SEGMENT_SPAN))

    start_time = time.monotonic()
    result = ScanResult(lo, hi, scanned=hi - lo + 1)
    segments = segment_bounds(lo, hi, segment_size)
    result.segments = len(segments)

    completed = checkpoint.load() if checkpoint is not None else {}
    todo = []
    for bounds in segments:
        if bounds in completed:
            result.condition_hit_count += completed[bounds]
            result.resumed_segments += 1
        else:
            todo.append(bounds)
    if result.resumed_segments:
        logger.info('resuming: %d of %d segments already done', result.resumed_segments,
                    len(segments))

    base_primes = base_primes_for(hi)
    done = []
    try:
        if workers == 1 or len(todo) < 2:
            outcomes = (_scan_segment(s, e, base_primes) for s, e in todo)
            executor = None
        else:
            executor = ProcessPoolExecutor(max_workers=workers, initializer=_init_worker,
                                           initargs=(base_primes,))
            outcomes = executor.map(_scan_worker, todo)
        try:
            for seg_lo, seg_hi, hits in tqdm(outcomes, total=len(todo), desc='segments',
                                             unit='seg', disable=not progress):
                for n, ratio, composite in hits:
                    result.condition_hits.append((n, ratio))
                    if composite:
                        result.composite_hits.append((n, ratio))
                result.condition_hit_count += len(hits)
                if checkpoint is not None:
                    checkpoint.record(seg_lo, seg_hi, len(hits))
                done.append((seg_lo, seg_hi))
                logger.debug('segment [%d, %d]: %d hits', seg_lo, seg_hi, len(hits))
        finally:
            if executor is not None:
                executor.shutdown(cancel_futures=True)
    except MemoryError as exc:
        raise PartialScanError('out of memory after {} of {} segments'.format(
            len(done), len(todo)), done) from exc

    for n, ratio in result.composite_hits:
        composite, holds = _reverify(n)
        result.reverified.append((n, composite and holds))
        logger.critical('Deaconescu number candidate %d (M = %d), independent recheck: %s',
                        n, ratio, 'confirmed' if composite and holds else 'NOT confirmed')

    result.elapsed = time.monotonic() - start_time
    logger.info('scanned [%d, %d] in %.2f s (%.0f n/s)', lo, hi, result.elapsed,
                result.throughput)
    return result


## D3 residual and near-miss search ##

def d3_residual(primes):
    """
    prod (1 + 1/(3k_i)) - prod (3k_i)^-1 - 3 with k_i = (p_i - 2)/3.

    Zero iff the product of the primes lies in D_3.

    :raises DomainError: repeated primes, p in {2, 3}, p != 2 (mod 3) or p
            not prime
    """
    primes = [_as_int(p, 'prime') for p in primes]
    if len(set(primes)) != len(primes):
        raise DomainError('primes must be distinct: {}'.format(primes))
    first = Fraction(1)
    denominator = 1
    for p in primes:
        if p in (2, 3) or p % 3 != 2:
            raise DomainError('{} is not a prime = 2 (mod 3) above 3'.format(p))
        if not is_prime(p):
            raise DomainError('{} is not prime'.format(p))
        three_k = p - 2
        first *= Fraction(three_k + 1, three_k)
        denominator *= three_k
    return first - Fraction(1, denominator) - 3


@dataclass(frozen=True)
class NearMissCandidate:
    """ squarefree product of pool primes and its distance from D_M """
    primes: Tuple[int, ...]
    m_target: int
    phi: int
    s2: int

    @property
    def n(self):
        value = 1
        for p in self.primes:
            value *= p
        return value

    @property
    def omega(self):
        return len(self.primes)

    @property
    def abs_defect(self):
        """ |phi(n) - 1 - M S2(n)| """
        return abs(self.phi - 1 - self.m_target * self.s2)

    @property
    def residual(self):
        """ (phi(n) - 1)/S2(n) - M, exact """
        return Fraction(self.phi - 1, self.s2) - self.m_target

    def to_dict(self):
        return {
            'n': str(self.n),
            'primes': [str(p) for p in self.primes],
            'omega': self.omega,
            'm_target': self.m_target,
            'abs_defect': str(self.abs_defect),
            'residual': str(self.residual),
        }


def _pool_primes(pool):
    if isinstance(pool, PrimeTable):
        return list(pool)
    primes = sorted(set(_as_int(p, 'prime') for p in pool))
    for p in primes:
        if not is_prime(p):
            raise DomainError('pool entry {} is not prime'.format(p))
    return primes


def admissible_pool(pool, m_target):
    """
    the odd primes of pool allowed in D_M: none is 1 (mod M); for M = 3
    every prime is 2 (mod 3), which also rules out 3
    """
    primes = []
    for p in _pool_primes(pool):
        if p == 2 or p % m_target == 1:
            continue
        if m_target == 3 and p % 3 != 2:
            continue
        primes.append(p)
    return primes


def _check_omega_range(omega_range):
    omega_min, omega_max = (_as_int(w, 'omega') for w in omega_range)
    if omega_min < 1 or omega_min > omega_max:
        raise DomainError('invalid omega range ({}, {})'.format(omega_min, omega_max))
    return omega_min, omega_max


class _SubsetWalk(object):
    """
    depth-first, ascending-lexicographic enumeration of prime subsets with
    omega_min <= size <= omega_max, yielding (subset, phi, s2); stops after
    node_limit subsets and sets truncated
    """

    def __init__(self, primes, omega_min, omega_max, node_limit):
        self._primes = primes
        self._omega_min = omega_min
        self._omega_max = omega_max
        self._node_limit = node_limit
        self.visited = 0
        self.truncated = False

    def __iter__(self):
        primes = self._primes
        stack = [((), 0, 1, 1)]
        while stack:
            subset, start, phi, s2 = stack.pop()
            if self._omega_min <= len(subset):
                if self.visited == self._node_limit:
                    self.truncated = True
                    logger.warning('node limit %d reached, search truncated', self._node_limit)
                    return
                self.visited += 1
                yield subset, phi, s2
            if len(subset) == self._omega_max:
                continue
            # pushed in reverse so the smallest next prime is explored first
            for i in range(len(primes) - 1, start - 1, -1):
                p = primes[i]
                stack.append((subset + (p,), i + 1, phi * (p - 1), s2 * (p - 2)))


@dataclass
class NearMissOutcome:
    """
    Ranked candidates of one near-miss run. truncated is set when the node
    limit stopped the enumeration, so the ranking covers only the visited
    subsets.
    """
    candidates: List[NearMissCandidate] = field(default_factory=list)
    visited: int = 0
    truncated: bool = False
    infeasible: bool = False


def run_near_miss(pool, m_target, omega_range, beam, node_limit=DEFAULT_NODE_LIMIT):
    """
    Search squarefree products of admissible pool primes closest to D_M.

    Primes = 1 (mod M) are dropped (no Deaconescu number in D_M has one);
    for M = 3 only primes = 2 (mod 3) are kept. Subsets are enumerated
    depth-first in ascending order and the beam best by abs_defect are kept.

    :param pool: PrimeTable or iterable of primes
    :param omega_range: (omega_min, omega_max)
    :param beam: number of candidates returned
    :param node_limit: subsets visited before the search stops
    :return: NearMissOutcome, candidates sorted by (abs_defect, n); empty and
             infeasible with a logged warning when the pool cannot reach
             omega_min
    """
    m_target = _as_int(m_target, 'M')
    beam = _as_int(beam, 'beam')
    node_limit = _as_int(node_limit, 'node_limit')
    if m_target < 3:
        raise DomainError('M must be >= 3, got {}'.format(m_target))
    if beam < 1:
        raise DomainError('beam must be >= 1, got {}'.format(beam))
    if node_limit < 1:
        raise DomainError('node_limit must be >= 1, got {}'.format(node_limit))
    omega_min, omega_max = _check_omega_range(omega_range)

    primes = admissible_pool(pool, m_target)
    if omega_min > len(primes):
        logger.warning('only %d admissible primes for M = %d, omega >= %d is infeasible',
                       len(primes), m_target, omega_min)
        return NearMissOutcome(infeasible=True)

    best = []
    walk = _SubsetWalk(primes, omega_min, omega_max, node_limit)
    for subset, phi, s2 in walk:
        n = 1
        for p in subset:
            n *= p
        entry = (-abs(phi - 1 - m_target * s2), -n, subset, phi, s2)
        if len(best) < beam:
            heapq.heappush(best, entry)
        elif entry > best[0]:
            heapq.heapreplace(best, entry)

    ranked = sorted(best, key=lambda e: (-e[0], -e[1]))
    candidates = [NearMissCandidate(subset, m_target, phi, s2)
                  for _, _, subset, phi, s2 in ranked]
    return NearMissOutcome(candidates, walk.visited, walk.truncated)


def near_miss_search(pool, m_target, omega_range, beam, node_limit=DEFAULT_NODE_LIMIT):
    """ the ranked candidates of run_near_miss """
    return run_near_miss(pool, m_target, omega_range, beam, node_limit).candidates


def exhaustive_zero_defect(pool, m_target, omega_range):
    """
    Reference enumeration without any congruence filter: every subset of the
    pool primes (2 and 3 included) whose product n has phi(n) - 1 = M S2(n).
    """
    m_target = _as_int(m_target, 'M')
    omega_min, omega_max = _check_omega_range(omega_range)
    primes = _pool_primes(pool)
    hits = []
    for subset, phi, s2 in _SubsetWalk(primes, omega_min, omega_max, float('inf')):
        if phi - 1 == m_target * s2:
            hits.append(subset)
    return sorted(hits)
