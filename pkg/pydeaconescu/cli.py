#! /usr/bin/env python
"""
Command line interface: check, profile, scan, certify and near-miss
"""

import argparse
import logging
import sys
from collections import OrderedDict

from .certificates import run_all_certificates
from .checkpoint import ScanCheckpoint
from .config import RunConfig, parse_exact_int, MIN_SEGMENT_SIZE
from .core import (DeaconescuError, DomainError, InconsistencyError, ResourceLimitError,
                   UnsupportedInputError, sieve_primes)
from .predicates import Constraint, structural_profile
from .report import (render_certificates, render_near_miss, render_profile,
                     render_profile_summary, render_scan)
from .search import (DEFAULT_SEGMENT_SIZE, PartialScanError, admissible_pool, run_near_miss,
                     scan_range)

#pylint: disable=invalid-name

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_COUNTEREXAMPLE = 3
EXIT_INCONSISTENT = 4

# largest range accepted by the profile command
PROFILE_SPAN_CAP = 10 ** 5


def cmd_check(config):
    """ structural profile of a single n """
    n = config['n']
    if n < 1:
        raise DomainError('n must be a positive integer, got {}'.format(n))
    profile = structural_profile(n)
    print(render_profile(profile, config.output_format))
    return EXIT_COUNTEREXAMPLE if profile.is_deaconescu else EXIT_OK


def cmd_profile(config):
    """ tally the violated constraints of every n in [lo, hi] """
    lo, hi = config['lo'], config['hi']
    if lo < 1 or lo > hi:
        raise DomainError('invalid range [{}, {}]'.format(lo, hi))
    if hi - lo + 1 > PROFILE_SPAN_CAP:
        raise ResourceLimitError('profile range longer than {}'.format(PROFILE_SPAN_CAP))

    tally = OrderedDict((c.value, 0) for c in Constraint)
    composites = []
    inconsistent = False
    for n in range(lo, hi + 1):
        try:
            profile = structural_profile(n)
        except InconsistencyError as error:
            logger.critical('%s', error)
            composites.append(n)
            inconsistent = True
            continue
        for constraint in profile.violated_constraints:
            tally[constraint.value] += 1
        if profile.is_deaconescu:
            composites.append(n)

    print(render_profile_summary(lo, hi, tally, composites, config.output_format))
    if inconsistent:
        return EXIT_INCONSISTENT
    return EXIT_COUNTEREXAMPLE if composites else EXIT_OK


def cmd_scan(config):
    """ exhaustive scan of [lo, hi] """
    checkpoint = None
    if config.checkpoint_path:
        checkpoint = ScanCheckpoint(config.checkpoint_path)
    result = scan_range(config['lo'], config['hi'], config.segment_size,
                        config.worker_count, checkpoint, config.progress)
    print(render_scan(result, config.output_format, config.include_hits))
    return EXIT_COUNTEREXAMPLE if result.alarm else EXIT_OK


def cmd_certify(config):
    """ run the certificates; success only if every one holds """
    reports = run_all_certificates(extended=config.extended, workers=config.worker_count)
    print(render_certificates(reports, config.output_format))
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAILURE


def cmd_near_miss(config):
    """ ranked candidates closest to D_M """
    m_target, pool_limit = config['M'], config['pool_limit']
    omega_range = (config['omega_min'], config['omega_max'])
    beam = config['beam']
    if m_target < 3:
        raise DomainError('M must be >= 3, got {}'.format(m_target))

    pool = sieve_primes(pool_limit) if pool_limit >= 2 else []
    admissible = admissible_pool(pool, m_target)
    outcome = run_near_miss(admissible, m_target, omega_range, beam)
    warning = None
    if outcome.infeasible:
        warning = 'only {} admissible primes <= {} for M = {}, omega >= {} is infeasible'.format(
            len(admissible), pool_limit, m_target, omega_range[0])
    print(render_near_miss(m_target, pool_limit, omega_range, beam, len(admissible),
                           outcome, config.output_format, warning))
    return EXIT_OK


COMMANDS = {
    'check': (cmd_check, ('n',)),
    'profile': (cmd_profile, ('lo', 'hi')),
    'scan': (cmd_scan, ('lo', 'hi')),
    'certify': (cmd_certify, ()),
    'near-miss': (cmd_near_miss, ('M', 'pool_limit', 'omega_min', 'omega_max', 'beam')),
}


def _positive_int(text):
    value = parse_exact_int(text)
    if value < 1:
        raise ValueError('must be >= 1')
    return value


def build_parser():
    """ the argparse parser with one sub-command per operation """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-f', '--format', dest='format', choices=('text', 'json'),
                        default='text', help='Output format (default: text)')
    common.add_argument('-w', '--workers', dest='workers', type=_positive_int, default=1,
                        help='Worker processes/threads (default: 1)')
    common.add_argument('-s', '--segment-size', dest='segment_size', type=_positive_int,
                        default=DEFAULT_SEGMENT_SIZE,
                        help='Integers per sieve segment, >= {} (default: {})'.format(
                            MIN_SEGMENT_SIZE, DEFAULT_SEGMENT_SIZE))
    common.add_argument('-c', '--checkpoint', dest='checkpoint', default=None,
                        metavar='PATH', help='Checkpoint file for resumable scans')
    common.add_argument('-v', '--verbose', dest='verbose', action='store_true',
                        default=False, help='Verbose logging on stderr')

    parser = argparse.ArgumentParser(
        description='Verification and search toolkit for Deaconescu numbers, composite '
                    'n with S2(n) | phi(n) - 1')
    subparsers = parser.add_subparsers(dest='command', metavar='command')
    subparsers.required = True

    check = subparsers.add_parser('check', parents=[common],
                                  help='Structural profile of one integer')
    check.add_argument('n', type=parse_exact_int, help='Integer to check (any length)')

    profile = subparsers.add_parser('profile', parents=[common],
                                    help='Tally violated constraints over a range')
    profile.add_argument('lo', type=parse_exact_int)
    profile.add_argument('hi', type=parse_exact_int)

    scan = subparsers.add_parser('scan', parents=[common],
                                 help='Exhaustive scan of a range')
    scan.add_argument('lo', type=parse_exact_int)
    scan.add_argument('hi', type=parse_exact_int)
    scan.add_argument('-p', '--progress', dest='progress', action='store_true',
                      default=False, help='Show a progress bar')
    scan.add_argument('--hits', dest='hits', action='store_true', default=False,
                      help='Also print every condition hit as "n M"')

    certify = subparsers.add_parser('certify', parents=[common],
                                    help='Verify the exact inequality certificates')
    certify.add_argument('-e', '--extended', dest='extended', action='store_true',
                         default=False, help='Include the supplementary certificates')

    near_miss = subparsers.add_parser('near-miss', parents=[common],
                                      help='Products of admissible primes closest to D_M')
    near_miss.add_argument('M', type=parse_exact_int, help='Target ratio M >= 3')
    near_miss.add_argument('pool_limit', type=parse_exact_int, help='Use primes <= this')
    near_miss.add_argument('omega_min', type=parse_exact_int)
    near_miss.add_argument('omega_max', type=parse_exact_int)
    near_miss.add_argument('beam', type=parse_exact_int, help='Number of candidates')
    return parser


def main(argv=None):
    """Command line interface"""
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format='%(levelname)s: %(message)s')

    command, params = COMMANDS[args.command]
    try:
        config = RunConfig.from_args(args, params)
        return command(config)
    except (DomainError, UnsupportedInputError, ResourceLimitError) as error:
        print('Error: {}'.format(error), file=sys.stderr)
        return EXIT_USAGE
    except InconsistencyError as error:
        print('Error: {}'.format(error), file=sys.stderr)
        return EXIT_INCONSISTENT
    except PartialScanError as error:
        print('Error: {} (completed segments: {})'.format(error, len(error.completed)),
              file=sys.stderr)
        return EXIT_FAILURE
    except DeaconescuError as error:
        print('Error: {}'.format(error), file=sys.stderr)
        return EXIT_FAILURE


if __name__ == '__main__':
    sys.exit(main())
