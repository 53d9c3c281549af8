'''
Test the range scan, the D3 residual and the near-miss search.
'''

import os
import tempfile
import unittest
from fractions import Fraction
from unittest.mock import patch

from ddt import ddt, data, unpack

from pydeaconescu.checkpoint import ScanCheckpoint
from pydeaconescu.core import (DomainError, ResourceLimitError, euler_phi, schemmel_s2,
                               sieve_primes)
from pydeaconescu.predicates import condition_holds, m_ratio
from pydeaconescu.search import (PartialScanError, admissible_pool, d3_residual,
                                 exhaustive_zero_defect, near_miss_search, run_near_miss,
                                 scan_range, segment_bounds)


@ddt
class TestScanRange(unittest.TestCase):
    '''
    Test scan_range on desk-scale ranges.
    '''

    def test_scan_small(self):
        result = scan_range(4, 10 ** 4, segment_size=1024)
        primes = sieve_primes(10 ** 4).select(lambda p: p >= 5)
        self.assertEqual(result.composite_hits, [])
        self.assertFalse(result.alarm)
        self.assertEqual(result.condition_hits, [(p, 1) for p in primes])
        self.assertEqual(result.condition_hit_count, len(primes))
        self.assertEqual(result.scanned, 10 ** 4 - 3)
        self.assertGreater(result.throughput, 0)

    def test_scan_million(self):
        result = scan_range(4, 10 ** 6)
        self.assertEqual(result.composite_hits, [])
        self.assertEqual(result.condition_hit_count, 78498 - 2)

    @data((1024, 1), (4096, 1), (1024, 2), (1024, 8), (3000, 3))
    @unpack
    def test_segmentation_invariance(self, segment_size, workers):
        reference = scan_range(4, 3 * 10 ** 4, segment_size=1 << 15)
        result = scan_range(4, 3 * 10 ** 4, segment_size=segment_size, workers=workers)
        self.assertEqual(result.condition_hits, reference.condition_hits)
        self.assertEqual(result.composite_hits, reference.composite_hits)
        self.assertEqual(result.condition_hit_count, reference.condition_hit_count)

    def test_scan_ten_million(self):
        """
        [4, 10^7] holds only prime hits with M = 1, for any worker count
        """
        results = [scan_range(4, 10 ** 7, workers=workers) for workers in (1, 2, 8)]
        reference = results[0]
        self.assertEqual(reference.composite_hits, [])
        self.assertEqual(reference.condition_hit_count, 664579 - 2)
        self.assertTrue(all(m == 1 for _, m in reference.condition_hits))
        for result in results[1:]:
            self.assertEqual(result.condition_hits, reference.condition_hits)
            self.assertEqual(result.composite_hits, [])
            self.assertFalse(result.alarm)

    def test_single_even(self):
        result = scan_range(14, 14)
        self.assertEqual(result.scanned, 1)
        self.assertEqual(result.segments, 1)
        self.assertEqual(result.condition_hits, [])

    def test_direct_evaluation(self):
        """
        the sieve tables agree with per-n factorization
        """
        lo, hi = 9 * 10 ** 4, 10 ** 5
        result = scan_range(lo, hi, segment_size=4096)
        direct = [(n, m_ratio(n)) for n in range(lo, hi + 1) if condition_holds(n)]
        self.assertEqual(result.condition_hits, direct)

    @data((10, 4), (2, 100), (3, 3))
    @unpack
    def test_invalid_range(self, lo, hi):
        with self.assertRaises(DomainError):
            scan_range(lo, hi)

    def test_limits(self):
        with self.assertRaises(ResourceLimitError):
            scan_range(4, 1 << 61)
        with self.assertRaises(ResourceLimitError):
            scan_range(4, 100, segment_size=1 << 25)
        with self.assertRaises(DomainError):
            scan_range(4, 100, segment_size=0)

    def test_segment_bounds(self):
        self.assertEqual(segment_bounds(4, 20, 8), [(4, 11), (12, 19), (20, 20)])
        self.assertEqual(segment_bounds(5, 5, 8), [(5, 5)])

    def test_resume(self):
        with tempfile.TemporaryDirectory() as tmpdir:
            checkpoint = ScanCheckpoint(os.path.join(tmpdir, 'scan.ckpt'))
            fresh = scan_range(4, 2 * 10 ** 4, segment_size=2048)
            # an interrupted run that finished the first three segments
            for lo, hi in segment_bounds(4, 2 * 10 ** 4, 2048)[:3]:
                partial = scan_range(lo, hi, segment_size=2048)
                checkpoint.record(lo, hi, partial.condition_hit_count)
            resumed = scan_range(4, 2 * 10 ** 4, segment_size=2048, checkpoint=checkpoint)
            self.assertEqual(resumed.resumed_segments, 3)
            self.assertEqual(resumed.condition_hit_count, fresh.condition_hit_count)
            self.assertEqual(resumed.composite_hits, fresh.composite_hits)
            self.assertEqual(resumed.condition_hits,
                             [hit for hit in fresh.condition_hits if hit[0] > 6147])
            self.assertEqual(len(checkpoint.load()), resumed.segments)

    def test_fake_composite_hit(self):
        def fake_hits(self):
            return [(self.lo, 5, True)]

        with patch('pydeaconescu.core.TotientSegment.condition_hits', fake_hits):
            with self.assertLogs('pydeaconescu.search', level='CRITICAL'):
                result = scan_range(1155, 1200, segment_size=1024)
        self.assertTrue(result.alarm)
        self.assertEqual(result.composite_hits, [(1155, 5)])
        self.assertEqual(result.reverified, [(1155, False)])

    def test_out_of_memory(self):
        with patch('pydeaconescu.search.totient_sieve', side_effect=MemoryError):
            with self.assertRaises(PartialScanError) as context:
                scan_range(4, 5000, segment_size=1024)
        self.assertEqual(context.exception.completed, [])

    def test_to_dict(self):
        document = scan_range(4, 100, segment_size=1024).to_dict(include_hits=True)
        self.assertEqual(document['condition_hit_count'], '23')
        self.assertEqual(document['condition_hits'][0], ['5', '1'])
        self.assertEqual(document['composite_hits'], [])


@ddt
class TestNearMiss(unittest.TestCase):
    '''
    Test d3_residual, the admissible pools and near_miss_search.
    '''

    @data(([5], Fraction(-2)), ([5, 11], Fraction(-14, 9)), ([11, 5], Fraction(-14, 9)))
    @unpack
    def test_d3_residual(self, primes, expected):
        self.assertEqual(d3_residual(primes), expected)

    @data([7], [3], [2], [5, 5], [35])
    def test_d3_residual_domain(self, primes):
        with self.assertRaises(DomainError):
            d3_residual(primes)

    def test_d3_residual_matches_defect(self):
        """
        residual zero iff 3 S2(n) = phi(n) - 1; the sign agrees with the defect
        """
        for primes in ([5, 11], [5, 11, 17], [11, 17, 23, 29]):
            n = 1
            for p in primes:
                n *= p
            defect = euler_phi(n) - 1 - 3 * schemmel_s2(n)
            residual = d3_residual(primes)
            self.assertEqual(residual > 0, defect > 0)
            self.assertEqual(residual == 0, defect == 0)

    def test_d3_residual_chain(self):
        """
        extending the prime list strictly increases the residual, which
        stays negative for every tested list
        """
        chain = admissible_pool(sieve_primes(1000), 3)[:47]
        previous = None
        for length in range(1, len(chain) + 1):
            residual = d3_residual(chain[:length])
            self.assertLess(residual, 0)
            if previous is not None:
                self.assertGreater(residual, previous)
            previous = residual

    def test_admissible_pool(self):
        pool = sieve_primes(100)
        self.assertEqual(admissible_pool(pool, 3),
                         [5, 11, 17, 23, 29, 41, 47, 53, 59, 71, 83, 89])
        self.assertNotIn(11, admissible_pool(pool, 5))
        self.assertIn(3, admissible_pool(pool, 5))
        self.assertNotIn(2, admissible_pool(pool, 5))

    def test_near_miss_defect_42(self):
        candidates = near_miss_search(sieve_primes(20), 3, (2, 2), 5)
        by_primes = {c.primes: c for c in candidates}
        self.assertEqual(by_primes[(5, 11)].abs_defect, 42)
        self.assertEqual(by_primes[(5, 11)].residual, Fraction(-14, 9))
        self.assertEqual(by_primes[(5, 11)].n, 55)

    def test_near_miss_ranking(self):
        candidates = near_miss_search(sieve_primes(100), 3, (2, 3), 10)
        self.assertEqual(len(candidates), 10)
        keys = [(c.abs_defect, c.n) for c in candidates]
        self.assertEqual(keys, sorted(keys))
        for c in candidates:
            self.assertTrue(all(p % 3 == 2 for p in c.primes))
            self.assertEqual(c.abs_defect, abs(euler_phi(c.n) - 1 - 3 * schemmel_s2(c.n)))
        again = near_miss_search(sieve_primes(100), 3, (2, 3), 10)
        self.assertEqual(candidates, again)

    def test_near_miss_beam_is_best(self):
        """
        the beam holds the smallest defects among all subsets
        """
        pool = admissible_pool(sieve_primes(60), 5)
        everything = near_miss_search(pool, 5, (1, 4), 10 ** 6)
        best = near_miss_search(pool, 5, (1, 4), 7)
        self.assertEqual(best, everything[:7])

    def test_near_miss_beam_one(self):
        best = near_miss_search(sieve_primes(50), 3, (2, 2), 1)
        self.assertEqual(len(best), 1)
        self.assertEqual(best[0].primes, (5, 11))
        self.assertEqual(best, near_miss_search(sieve_primes(50), 3, (2, 2), 1))

    def test_near_miss_infeasible(self):
        with self.assertLogs('pydeaconescu.search', level='WARNING'):
            self.assertEqual(near_miss_search(sieve_primes(20), 3, (5, 6), 3), [])

    @data((2, (1, 2), 3), (3, (0, 2), 3), (3, (3, 2), 3), (3, (1, 2), 0))
    @unpack
    def test_near_miss_domain(self, m_target, omega_range, beam):
        with self.assertRaises(DomainError):
            near_miss_search(sieve_primes(50), m_target, omega_range, beam)

    def test_near_miss_node_limit(self):
        with self.assertLogs('pydeaconescu.search', level='WARNING'):
            outcome = run_near_miss(sieve_primes(100), 3, (2, 3), 10, node_limit=5)
        self.assertTrue(outcome.truncated)
        self.assertEqual(outcome.visited, 5)
        self.assertEqual(len(outcome.candidates), 5)

        # 12 admissible primes: C(12, 2) + C(12, 3) subsets
        complete = run_near_miss(sieve_primes(100), 3, (2, 3), 10)
        self.assertFalse(complete.truncated)
        self.assertFalse(complete.infeasible)
        self.assertEqual(complete.visited, 66 + 220)
        self.assertEqual(complete.candidates, near_miss_search(sieve_primes(100), 3, (2, 3), 10))

    def test_near_miss_node_limit_exact(self):
        """
        a limit equal to the number of subsets is not a truncation
        """
        outcome = run_near_miss(sieve_primes(100), 3, (2, 3), 10, node_limit=66 + 220)
        self.assertFalse(outcome.truncated)
        with self.assertRaises(DomainError):
            run_near_miss(sieve_primes(100), 3, (2, 3), 10, node_limit=0)

    def test_pruning_soundness(self):
        """
        the congruence filter never drops a zero-defect subset
        """
        twelve = admissible_pool(sieve_primes(100), 3)[:12]
        unfiltered = sieve_primes(twelve[-1])
        for m_target in (3, 5):
            exhaustive = exhaustive_zero_defect(unfiltered, m_target, (2, 4))
            pruned = [c.primes for c in near_miss_search(unfiltered, m_target, (2, 4), 10 ** 6)
                      if c.abs_defect == 0]
            self.assertEqual(sorted(pruned), exhaustive)
        self.assertEqual(exhaustive_zero_defect(twelve, 3, (2, 12)), [])

    def test_exhaustive_primes(self):
        # D_1 is made of primes: every single odd prime has defect zero
        self.assertEqual(exhaustive_zero_defect([3, 5, 7], 1, (1, 1)), [(3,), (5,), (7,)])


# vim: set et fenc=utf-8 ft=python ff=unix sts=4 sw=4 ts=4
