"""
Exact certificates for the inequalities and counts behind the lower bounds
on Deaconescu numbers.

Every certificate recomputes its quantity with exact integers/fractions and
reports the value, the claimed bound and whether the claim holds. Nothing in
here touches floating point.
"""

import enum
import logging
import operator
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import combinations
from typing import Dict, List, Union

from .core import DomainError, ResourceLimitError, _as_int, _cached_table, nth_prime
from .predicates import LOWER_BOUND, admissible_m_values

#pylint: disable=invalid-name, missing-docstring

logger = logging.getLogger(__name__)

# tau(t) = ((t+1)/t)^(t+1) has O(t log t) digits
TAU_T_MAX_CAP = 5000


class Relation(str, enum.Enum):
    LESS = '<'
    GREATER = '>'
    EQUAL = '='
    COUNT = 'count='

    def holds(self, value, bound):
        """ exact comparison of value and bound """
        if self is Relation.LESS:
            return value < bound
        if self is Relation.GREATER:
            return value > bound
        return value == bound


@dataclass
class CertificateReport:
    """
    One verified claim.

    passed is the exact comparison of exact_value against bound; side_checks
    holds the auxiliary facts the claim depends on (set sizes, gaps).
    details re-aggregate to exact_value: their product for 'product'
    certificates, their number for 'count' certificates.
    """
    id: str
    statement: str
    exact_value: Union[int, Fraction]
    bound: Union[int, Fraction]
    relation: Relation
    passed: bool
    details: List[Union[int, Fraction, str]] = field(default_factory=list)
    aggregate: str = 'product'
    side_checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self):
        """ the claim and all its side checks hold """
        return self.passed and all(self.side_checks.values())

    def audit(self):
        """ True iff details re-aggregate exactly to exact_value """
        if self.aggregate == 'count':
            return len(self.details) == self.exact_value
        return reduce(operator.mul, self.details, Fraction(1)) == self.exact_value

    def to_dict(self):
        value = Fraction(self.exact_value)
        bound = Fraction(self.bound)
        return {
            'id': self.id,
            'statement': self.statement,
            'exact_value': {'num': str(value.numerator), 'den': str(value.denominator)},
            'bound': {'num': str(bound.numerator), 'den': str(bound.denominator)},
            'relation': self.relation.value,
            'passed': self.passed,
            'aggregate': self.aggregate,
            'side_checks': dict(self.side_checks),
            'details': [str(d) for d in self.details],
        }

    @classmethod
    def from_dict(cls, document):
        """
        rebuild a report from to_dict output, exact values included

        :raises DomainError: missing key or malformed number
        """
        try:
            return cls(document['id'], document['statement'],
                       _exact_from_pair(document['exact_value']),
                       _exact_from_pair(document['bound']),
                       Relation(document['relation']), bool(document['passed']),
                       [_exact_from_text(d) for d in document['details']],
                       document['aggregate'], dict(document['side_checks']))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as error:
            raise DomainError('malformed certificate document: {}'.format(error)) from error


def _exact_from_pair(pair):
    value = Fraction(int(pair['num']), int(pair['den']))
    return value.numerator if value.denominator == 1 else value


def _exact_from_text(text):
    """ 'a/b' or 'a' as an exact number; other details (subsets, errors) stay text """
    try:
        value = Fraction(text)
    except ValueError:
        return text
    return value.numerator if value.denominator == 1 else value


def _report(cert_id, statement, value, bound, relation, details, aggregate='product',
            side_checks=None):
    return CertificateReport(cert_id, statement, value, bound, relation,
                             relation.holds(value, bound), details, aggregate,
                             side_checks or {})


def tau(t):
    """ tau(t) = (1 + 1/t)^(1 + t), exact at integer t """
    return Fraction(t + 1, t) ** (t + 1)


def _primes_between(lo, hi):
    return [p for p in _cached_table(max(hi, 2)) if lo <= p <= hi]


def _growth_terms(primes):
    """ (p - 1) / (p - 2) = 1 + 1/(p - 2) for each p """
    return [Fraction(p - 1, p - 2) for p in primes]


def cert_tau7(bound=None):
    """ (8/7)^8 = tau(7) < 3 """
    bound = Fraction(3) if bound is None else Fraction(bound)
    return _report('tau7', 'tau(7) = (1 + 1/7)^8 < 3', tau(7), bound, Relation.LESS,
                   [Fraction(8, 7)] * 8)


def cert_tau_decreasing(t_max=100, bound=None):
    """
    tau(t) > tau(t + 1) for every integer 7 <= t < t_max

    :raises DomainError: t_max < 8
    :raises ResourceLimitError: t_max > TAU_T_MAX_CAP
    """
    t_max = _as_int(t_max, 't_max')
    if t_max < 8:
        raise DomainError('t_max must be >= 8, got {}'.format(t_max))
    if t_max > TAU_T_MAX_CAP:
        raise ResourceLimitError('t_max {} above the cap {}'.format(t_max, TAU_T_MAX_CAP))

    margins = []
    current = tau(7)
    for t in range(7, t_max):
        following = tau(t + 1)
        margin = current - following
        if margin > 0:
            margins.append(margin)
        else:
            logger.error('tau(%d) <= tau(%d)', t, t + 1)
        current = following
    expected = t_max - 7 if bound is None else _as_int(bound, 'bound')
    return _report('tau_decreasing',
                   'tau(t) > tau(t+1) strictly for all integers 7 <= t < {}'.format(t_max),
                   len(margins), expected, Relation.COUNT, margins, aggregate='count')


def set_a():
    """ the 16 primes 3 <= p <= 59 """
    return _primes_between(3, 59)


def set_a_star():
    """ the 16 primes 3 <= p <= 79 with p != 1 (mod 5) """
    return [p for p in _primes_between(3, 79) if p % 5 != 1]


def cert_setA_product(bound=None):
    """ prod over A of (1 + 1/(p - 2)) < 6 """
    primes = set_a()
    terms = _growth_terms(primes)
    bound = Fraction(6) if bound is None else Fraction(bound)
    return _report('setA_product', 'prod_{3 <= p <= 59} (1 + 1/(p-2)) < 6',
                   reduce(operator.mul, terms, Fraction(1)), bound, Relation.LESS, terms,
                   side_checks={'|A| = 16': len(primes) == 16})


def cert_setAstar_product(bound=None):
    """ prod over A* of (1 + 1/(p - 2)) < 5 """
    primes = set_a_star()
    excluded = [p for p in _primes_between(3, 79) if p % 5 == 1]
    terms = _growth_terms(primes)
    bound = Fraction(5) if bound is None else Fraction(bound)
    return _report('setAstar_product',
                   'prod_{3 <= p <= 79, p != 1 mod 5} (1 + 1/(p-2)) < 5',
                   reduce(operator.mul, terms, Fraction(1)), bound, Relation.LESS, terms,
                   side_checks={'|A*| = 16': len(primes) == 16,
                                'excluded = {11, 31, 41, 61, 71}':
                                    excluded == [11, 31, 41, 61, 71]})


def d3_k_set():
    """ k = (p - 2)/3 for the primes 5 <= p <= 71 with p = 2 (mod 3) """
    return [(p - 2) // 3 for p in _primes_between(5, 71) if p % 3 == 2]


def cert_d3_product(bound=None):
    """
    prod_{k in K} (1 + 1/(3k)) * (1 + 1/81)^37 < 3, |K| = 10, which bounds the
    product over any 47 primes = 2 (mod 3). The remaining 37 primes are at
    least 83, the next prime of that class after 71, so their 3k >= 81.
    """
    ks = d3_k_set()
    terms = [Fraction(3 * k + 1, 3 * k) for k in ks]
    tail = Fraction(82, 81) ** 37
    terms.append(tail)
    next_prime = next(p for p in _primes_between(72, 200) if p % 3 == 2)
    bound = Fraction(3) if bound is None else Fraction(bound)
    return _report('d3_product', 'prod_{k in K} (1 + 1/(3k)) * (1 + 1/81)^37 < 3',
                   reduce(operator.mul, terms, Fraction(1)), bound, Relation.LESS, terms,
                   side_checks={'|K| = 10': len(ks) == 10,
                                'next prime = 2 mod 3 after 71 is 83':
                                    next_prime == 83 and (next_prime - 2) == 81})


def cert_primorial_bound(bound=None):
    """ P_2 * P_3 * ... * P_18 > 586 * 10^20 """
    primes = [nth_prime(j + 1) for j in range(1, 18)]
    forward = reduce(operator.mul, primes, 1)
    backward = reduce(operator.mul, reversed(primes), 1)
    bound = LOWER_BOUND if bound is None else _as_int(bound, 'bound')
    return _report('primorial_bound', 'prod_{j=1}^{17} P_{j+1} > 5.86 * 10^22',
                   forward, bound, Relation.GREATER, primes,
                   side_checks={'17 factors': len(primes) == 17,
                                'multiplication order independent': forward == backward})


def cert_admissible_m(bound=None):
    """ with omega(n) <= 16 only M in {3, 5} can occur """
    product = reduce(operator.mul, _growth_terms(set_a()), Fraction(1))
    values = admissible_m_values(product)
    expected = 2 if bound is None else _as_int(bound, 'bound')
    return _report('admissible_m', 'odd M with 3 <= M < prod_A (1 + 1/(p-2)) are 3 and 5',
                   len(values), expected, Relation.COUNT, values, aggregate='count',
                   side_checks={'values = [3, 5]': values == [3, 5]})


def cert_d3_excludes_3(bound=None):
    """
    3 * S2(n) = phi(n) - 1 has no solution with 3 | n: phi(3) - 1 = 1 and the
    other primes are 3k + 2, so phi(n) - 1 = 2 prod(3k + 1) - 1 = 1 (mod 3).
    Checked for every non-empty subset of K.
    """
    ks = d3_k_set()
    violations = []
    for size in range(1, len(ks) + 1):
        for subset in combinations(ks, size):
            if (2 * reduce(operator.mul, (3 * k + 1 for k in subset), 1) - 1) % 3 == 0:
                violations.append(str(subset))
    expected = 0 if bound is None else _as_int(bound, 'bound')
    return _report('d3_excludes_3', '2 prod(3k+1) - 1 is never divisible by 3',
                   len(violations), expected, Relation.COUNT, violations, aggregate='count')


def cert_lemma1_threshold(p_max=1000, bound=None):
    """ (1 + 1/(p - 2))^(p - 1) < 3 for every prime 11 <= p <= p_max """
    primes = _primes_between(11, p_max)
    margins = []
    for p in primes:
        margin = 3 - Fraction(p - 1, p - 2) ** (p - 1)
        if margin > 0:
            margins.append(margin)
    expected = len(primes) if bound is None else _as_int(bound, 'bound')
    return _report('lemma1_threshold',
                   '(1 + 1/(p-2))^(p-1) < 3 for all primes 11 <= p <= {}'.format(p_max),
                   len(margins), expected, Relation.COUNT, margins, aggregate='count')


CERTIFICATES = (
    ('tau7', cert_tau7),
    ('tau_decreasing', lambda bound=None: cert_tau_decreasing(100, bound)),
    ('setA_product', cert_setA_product),
    ('setAstar_product', cert_setAstar_product),
    ('d3_product', cert_d3_product),
    ('primorial_bound', cert_primorial_bound),
)

EXTENDED_CERTIFICATES = (
    ('admissible_m', cert_admissible_m),
    ('d3_excludes_3', cert_d3_excludes_3),
    ('lemma1_threshold', cert_lemma1_threshold),
)


def _run_one(cert_id, func, bound):
    try:
        return func(bound=bound)
    except Exception as exc: #pylint: disable=broad-except
        logger.error('certificate %s failed internally: %s', cert_id, exc)
        return CertificateReport(cert_id, 'internal failure', 0, 0, Relation.EQUAL, False,
                                 ['error: {}'.format(exc)], aggregate='count')


def run_all_certificates(extended=False, workers=1, bounds=None):
    """
    Run every certificate, in fixed order.

    :param extended: append the supplementary certificates
    :param workers: thread pool width; reports are merged in id order
    :param bounds: optional {id: bound} overrides (negative controls)
    :return: list of CertificateReport
    """
    bounds = bounds or {}
    selected = list(CERTIFICATES) + (list(EXTENDED_CERTIFICATES) if extended else [])
    if workers <= 1:
        return [_run_one(cert_id, func, bounds.get(cert_id)) for cert_id, func in selected]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        futures = [executor.submit(_run_one, cert_id, func, bounds.get(cert_id))
                   for cert_id, func in selected]
        return [future.result() for future in futures]
