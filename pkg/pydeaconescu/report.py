"""
Text and JSON rendering of profiles, certificates, scan results and
near-miss candidates. Integers and fractions are always printed exactly.
"""

import json

#pylint: disable=invalid-name

# keys and JSON types of a serialized CertificateReport
CERTIFICATE_SCHEMA = {
    'id': str,
    'statement': str,
    'exact_value': dict,
    'bound': dict,
    'relation': str,
    'passed': bool,
    'aggregate': str,
    'side_checks': dict,
    'details': list,
}


def to_json(document):
    return json.dumps(document, indent=2, sort_keys=False)


def _yes_no(flag):
    return 'yes' if flag else 'no'


def _optional(value):
    return '-' if value is None else str(value)


## check / profile ##

def profile_text(profile):
    """ one StructuralProfile as 'key: value' lines """
    violated = ', '.join(c.value for c in profile.violated_constraints)
    lines = [
        'n: {}'.format(profile.n),
        'factorization: {}'.format(profile.factorization),
        'phi(n): {}'.format(profile.phi),
        'S2(n): {}'.format(profile.s2),
        'composite: {}'.format(_yes_no(profile.is_composite)),
        'odd: {}'.format(_yes_no(profile.is_odd)),
        'squarefree: {}'.format(_yes_no(profile.is_squarefree)),
        'omega(n): {}'.format(profile.omega),
        'smallest prime: {}'.format(_optional(profile.smallest_prime)),
        'S2(n) | phi(n) - 1: {}'.format(_yes_no(profile.condition_holds)),
        'M: {}'.format(_optional(profile.m_ratio)),
        'Deaconescu number: {}'.format(_yes_no(profile.is_deaconescu)),
        'violated constraints: {}'.format(violated if violated else '-'),
    ]
    return '\n'.join(lines)


def render_profile(profile, output_format):
    if output_format == 'json':
        return to_json(profile.to_dict())
    return profile_text(profile)


def profile_summary_dict(lo, hi, tally, composites):
    return {
        'lo': str(lo),
        'hi': str(hi),
        'profiled': str(hi - lo + 1),
        'violated_constraints': {name: str(count) for name, count in tally.items()},
        'condition_composites': [str(n) for n in composites],
    }


def render_profile_summary(lo, hi, tally, composites, output_format):
    """ constraint tallies of the profile command """
    if output_format == 'json':
        return to_json(profile_summary_dict(lo, hi, tally, composites))
    lines = ['range: [{}, {}]'.format(lo, hi),
             'profiled: {}'.format(hi - lo + 1),
             'violated constraints:']
    for name, count in tally.items():
        lines.append(' {:<20} {:>10}'.format(name, count))
    lines.append('composites with S2(n) | phi(n) - 1: {}'.format(
        ', '.join(str(n) for n in composites) if composites else '-'))
    return '\n'.join(lines)


## certificates ##

def certificates_dict(reports):
    return {
        'certificates': [r.to_dict() for r in reports],
        'passed': all(r.ok for r in reports),
    }


def render_certificates(reports, output_format):
    if output_format == 'json':
        return to_json(certificates_dict(reports))
    lines = []
    for r in reports:
        lines.append('[{}] {}: {}'.format('PASS' if r.ok else 'FAIL', r.id, r.statement))
        lines.append('       value {} {} {}'.format(r.exact_value, r.relation.value, r.bound))
        for name, ok in r.side_checks.items():
            lines.append('       check {}: {}'.format(name, 'ok' if ok else 'FAILED'))
    passed = sum(1 for r in reports if r.ok)
    lines.append('{} of {} certificates passed'.format(passed, len(reports)))
    return '\n'.join(lines)


## scan ##

def render_scan(result, output_format, include_hits=False):
    """ scan summary; include_hits adds every condition hit ("n M" lines in text) """
    if output_format == 'json':
        return to_json(result.to_dict(include_hits=include_hits))
    lines = [
        'range: [{}, {}]'.format(result.lo, result.hi),
        'scanned: {}'.format(result.scanned),
        'segments: {} ({} resumed)'.format(result.segments, result.resumed_segments),
        'condition hits: {}'.format(result.condition_hit_count),
        'composite hits: {}'.format(len(result.composite_hits)),
    ]
    for (n, m), (_, confirmed) in zip(result.composite_hits, result.reverified):
        lines.append(' n = {} M = {} recheck: {}'.format(
            n, m, 'confirmed' if confirmed else 'NOT confirmed'))
    lines.append('elapsed: {:.3f} s, throughput: {:.0f} n/s'.format(
        result.elapsed, result.throughput))
    if include_hits:
        lines.extend('{} {}'.format(n, m) for n, m in result.condition_hits)
    return '\n'.join(lines)


## near-miss ##

def near_miss_dict(m_target, pool_limit, omega_range, beam, pool_size, outcome,
                   warning=None):
    return {
        'm_target': m_target,
        'pool_limit': str(pool_limit),
        'omega_min': omega_range[0],
        'omega_max': omega_range[1],
        'beam': beam,
        'admissible_pool_size': pool_size,
        'candidates': [c.to_dict() for c in outcome.candidates],
        'visited': str(outcome.visited),
        'truncated': outcome.truncated,
        'warning': warning,
        'exploratory': True,
    }


def render_near_miss(m_target, pool_limit, omega_range, beam, pool_size, outcome,
                     output_format, warning=None):
    """ ranked candidates of a NearMissOutcome; truncation is always reported """
    if output_format == 'json':
        return to_json(near_miss_dict(m_target, pool_limit, omega_range, beam, pool_size,
                                      outcome, warning))
    lines = ['exploratory near-miss search',
             'M = {}, primes <= {}: {} admissible, omega {}..{}, beam {}'.format(
                 m_target, pool_limit, pool_size, omega_range[0], omega_range[1], beam)]
    if warning:
        lines.append('Warning: {}'.format(warning))
    if outcome.truncated:
        lines.append('Warning: node limit reached after {} subsets, the ranking covers '
                     'only the visited ones'.format(outcome.visited))
    lines.append('{:>4} {:>5} {:>12} {:>14}  {:<}'.format(
        'rank', 'omega', 'abs_defect', 'residual', 'primes (n)'))
    for rank, c in enumerate(outcome.candidates, 1):
        lines.append('{:>4} {:>5} {:>12} {:>14}  {} ({})'.format(
            rank, c.omega, c.abs_defect, str(c.residual),
            ' '.join(str(p) for p in c.primes), c.n))
    return '\n'.join(lines)
