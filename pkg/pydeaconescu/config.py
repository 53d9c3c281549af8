"""
Run configuration shared by the command line tools
"""

import re
from dataclasses import dataclass, field
from typing import Dict, Optional

from .core import DomainError
from .search import DEFAULT_SEGMENT_SIZE

COMMANDS = ('check', 'scan', 'certify', 'near-miss', 'profile')
OUTPUT_FORMATS = ('text', 'json')

MIN_SEGMENT_SIZE = 1024

_INTEGER = re.compile(r'[+-]?[0-9]+\Z')


def parse_exact_int(text):
    """
    parse a decimal integer of any length; floats, exponents and other
    notations are rejected so no value is ever rounded
    """
    text = text.strip()
    if not _INTEGER.match(text):
        raise ValueError('not a decimal integer: {!r}'.format(text))
    return int(text)


@dataclass(frozen=True)
class RunConfig:
    """ validated settings of one command line invocation """
    command: str
    params: Dict[str, int] = field(default_factory=dict)
    output_format: str = 'text'
    worker_count: int = 1
    segment_size: int = DEFAULT_SEGMENT_SIZE
    checkpoint_path: Optional[str] = None
    verbose: bool = False
    progress: bool = False
    extended: bool = False
    include_hits: bool = False

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise DomainError('unknown command {!r}'.format(self.command))
        if self.output_format not in OUTPUT_FORMATS:
            raise DomainError('unknown output format {!r}'.format(self.output_format))
        if self.worker_count < 1:
            raise DomainError('--workers must be >= 1, got {}'.format(self.worker_count))
        if self.segment_size < MIN_SEGMENT_SIZE:
            raise DomainError('--segment-size must be >= {}, got {}'.format(
                MIN_SEGMENT_SIZE, self.segment_size))
        for name, value in self.params.items():
            if not isinstance(value, int) or isinstance(value, bool):
                raise DomainError('parameter {} must be an integer, got {!r}'.format(
                    name, value))

    @classmethod
    def from_args(cls, args, params):
        """
        build from an argparse namespace

        :param params: names of the numeric positional arguments of the command
        """
        return cls(command=args.command,
                   params={name: getattr(args, name) for name in params},
                   output_format=args.format,
                   worker_count=args.workers,
                   segment_size=args.segment_size,
                   checkpoint_path=args.checkpoint,
                   verbose=args.verbose,
                   progress=getattr(args, 'progress', False),
                   extended=getattr(args, 'extended', False),
                   include_hits=getattr(args, 'hits', False))

    def __getitem__(self, name):
        return self.params[name]
