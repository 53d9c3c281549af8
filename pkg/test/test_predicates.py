'''
Test the Deaconescu condition and the structural constraints.
'''

import unittest
from unittest.mock import patch

from ddt import ddt, data, unpack

from pydeaconescu.core import (DomainError, Factorization, InconsistencyError, euler_phi,
                               factorize, schemmel_s2, sieve_primes)
from pydeaconescu.predicates import (Constraint, LOWER_BOUND, admissible_m_values,
                                     condition_holds, is_composite, is_deaconescu,
                                     lemma1_applicable, lemma1_check, lemma2_violation,
                                     m_ratio, structural_profile, violated_constraints)


@ddt
class TestCondition(unittest.TestCase):
    '''
    Test condition_holds, is_deaconescu and m_ratio.
    '''

    @data((97, True), (15, False), (4, False), (9, False), (1, True), (2, True), (3, True))
    @unpack
    def test_condition_holds(self, n, expected):
        self.assertEqual(condition_holds(n), expected)

    @data(7, 9, 15, 4, 1, 2, 3, 561)
    def test_is_deaconescu(self, n):
        self.assertFalse(is_deaconescu(n))

    @data((97, 1), (3, 1), (15, None), (1, None), (2, None), (4, None))
    @unpack
    def test_m_ratio(self, n, expected):
        self.assertEqual(m_ratio(n), expected)

    def test_primes(self):
        for p in sieve_primes(10 ** 5).select(lambda p: p >= 3):
            f = factorize(p)
            self.assertTrue(condition_holds(f))
            self.assertEqual(m_ratio(f), 1)

    def test_even(self):
        for n in range(4, 5000, 2):
            self.assertFalse(is_deaconescu(n))

    def test_no_small_composites(self):
        for n in range(4, 2 * 10 ** 4):
            if is_composite(n):
                self.assertFalse(condition_holds(n), n)

    def test_m_ratio_identity(self):
        for n in range(1, 5000):
            ratio = m_ratio(n)
            if ratio is not None:
                f = factorize(n)
                self.assertEqual(ratio * schemmel_s2(f), euler_phi(f) - 1)


@ddt
class TestLemmas(unittest.TestCase):
    '''
    Test lemma1_check, lemma2_violation and the admissible M values.
    '''

    @data((5 * 11 * 17, 3, None), (5 * 7 * 11, 3, 7), (3 * 7 * 13, 6, 7), (5 * 11, 5, 11),
          (3 * 5 * 7, 5, None))
    @unpack
    def test_lemma2_violation(self, n, M, expected):
        self.assertEqual(lemma2_violation(factorize(n), M), expected)

    def test_lemma2_m1(self):
        with self.assertLogs('pydeaconescu.predicates', level='WARNING'):
            self.assertEqual(lemma2_violation(factorize(15), 1), 3)
        with self.assertRaises(DomainError):
            lemma2_violation(factorize(15), 0)

    def test_lemma2_consistency(self):
        """
        p || n contributes phi(p) to phi(n); a prime p = 1 (mod M) then makes
        phi(n) - 1 = -1 (mod M) impossible for n in D_M
        """
        for n in (5 * 11 * 17, 5 * 11 * 17 * 23 * 29, 7 * 13 * 19 * 31):
            f = factorize(n)
            for p in f.primes:
                rest = n // p
                self.assertEqual(euler_phi(f), (p - 1) * euler_phi(rest))

    def test_lemma1(self):
        primes = sieve_primes(200).select(lambda p: p >= 11)
        self.assertTrue(lemma1_check(Factorization.from_pairs((p, 1) for p in primes[:11])))
        self.assertFalse(lemma1_check(factorize(11 * 13 * 17)))
        thirteen_up = Factorization.from_pairs((p, 1) for p in primes[1:13])
        self.assertEqual(thirteen_up.smallest_prime, 13)
        self.assertEqual(thirteen_up.omega, 12)
        self.assertFalse(lemma1_check(thirteen_up))

    def test_lemma1_inapplicable(self):
        self.assertFalse(lemma1_applicable(factorize(15)))
        self.assertFalse(lemma1_applicable(factorize(11 * 11 * 13)))
        with self.assertLogs('pydeaconescu.predicates', level='WARNING'):
            lemma1_check(factorize(15))

    def test_admissible_m_values(self):
        self.assertEqual(admissible_m_values(6), [3, 5])
        self.assertEqual(admissible_m_values(5), [3])
        self.assertEqual(admissible_m_values(3), [])


@ddt
class TestStructuralProfile(unittest.TestCase):
    '''
    Test structural_profile and the constraint vocabulary.
    '''

    def test_profile_105(self):
        profile = structural_profile(105)
        self.assertFalse(profile.condition_holds)
        self.assertIn(Constraint.OMEGA_LT_17, profile.violated_constraints)
        self.assertEqual(profile.omega, 3)

    def test_profile_15(self):
        profile = structural_profile(15)
        self.assertTrue(profile.is_odd)
        self.assertTrue(profile.is_squarefree)
        self.assertEqual(profile.omega, 2)
        self.assertEqual(profile.violated_constraints,
                         [Constraint.OMEGA_LT_7, Constraint.OMEGA_LT_17, Constraint.LE_BOUND])
        self.assertIsNone(profile.m_ratio)

    def test_profile_45(self):
        profile = structural_profile(45)
        self.assertFalse(profile.is_squarefree)
        self.assertIn(Constraint.NOT_SQUAREFREE, profile.violated_constraints)

    def test_profile_97(self):
        profile = structural_profile(97)
        self.assertTrue(profile.condition_holds)
        self.assertEqual(profile.m_ratio, 1)
        self.assertFalse(profile.is_deaconescu)
        self.assertIn(Constraint.LEMMA1_FAIL, profile.violated_constraints)

    def test_profile_dict(self):
        document = structural_profile(45).to_dict()
        self.assertEqual(document['n'], '45')
        self.assertEqual(document['factorization'], [['3', 2], ['5', 1]])
        self.assertEqual(document['violated_constraints'],
                         ['not_squarefree', 'omega_lt_7', 'omega_lt_17', 'le_bound_5_86e22'])

    def test_vocabulary(self):
        self.assertEqual([c.value for c in Constraint],
                         ['even', 'not_squarefree', 'omega_lt_7', 'omega_lt_17',
                          'le_bound_5_86e22', 'lemma1_fail', 'lemma2_fail',
                          'd3_prime_class_fail', 'd3_omega_lt_48', 'd3_divisible_by_3'])

    def test_d3_constraints(self):
        violated = violated_constraints(factorize(3 * 5 * 7), 3)
        self.assertIn(Constraint.LEMMA2_FAIL, violated)
        self.assertIn(Constraint.D3_PRIME_CLASS_FAIL, violated)
        self.assertIn(Constraint.D3_OMEGA_LT_48, violated)
        self.assertIn(Constraint.D3_DIVISIBLE_BY_3, violated)
        violated = violated_constraints(factorize(5 * 11 * 17), 3)
        self.assertNotIn(Constraint.LEMMA2_FAIL, violated)
        self.assertNotIn(Constraint.D3_PRIME_CLASS_FAIL, violated)
        self.assertNotIn(Constraint.D3_DIVISIBLE_BY_3, violated)

    def test_bound(self):
        self.assertIn(Constraint.LE_BOUND, violated_constraints(factorize(LOWER_BOUND)))
        # 3 * 5 * ... * 61 lies just above the bound
        above = Factorization.from_pairs((p, 1) for p in sieve_primes(61).select(lambda p: p > 2))
        self.assertGreater(above.value, LOWER_BOUND)
        self.assertNotIn(Constraint.LE_BOUND, violated_constraints(above))

    def test_inconsistency_alarm(self):
        """
        a composite satisfying the condition while violating a proven
        constraint aborts with an inconsistency
        """
        with patch('pydeaconescu.predicates.schemmel_s2', return_value=7), \
                patch('pydeaconescu.predicates.euler_phi', return_value=8), \
                patch('pydeaconescu.predicates.m_ratio', return_value=1):
            with self.assertLogs('pydeaconescu.predicates', level='CRITICAL'):
                with self.assertRaises(InconsistencyError):
                    structural_profile(15)


# vim: set et fenc=utf-8 ft=python ff=unix sts=4 sw=4 ts=4
