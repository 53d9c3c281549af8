'''
Append-only record of completed scan segments, so an interrupted scan can be
resumed.

Every line is "lo hi hits_count" (decimal integers separated by a single
space), where hits_count is the number of integers in [lo, hi] satisfying
S2(n) | phi(n) - 1. A line is only written after its segment is fully
evaluated; a torn last line (crash while writing) is ignored on load.
'''

import logging
import os

logger = logging.getLogger(__name__)


class ScanCheckpoint(object):
    '''
    Checkpoint file handle.

    Example usage:
    > checkpoint = ScanCheckpoint('scan.ckpt')
    > result = scan_range(4, 10**8, checkpoint=checkpoint)
    > # interrupted? run the same call again, completed segments are skipped
    '''

    def __init__(self, path):
        self._path = path

    @property
    def path(self):
        '''Location of the checkpoint file.'''
        return self._path

    def exists(self):
        return os.path.isfile(self._path)

    def load(self):
        '''
        Read the completed segments.

        :return: dict mapping (lo, hi) to hits_count
        '''
        completed = {}
        if not self.exists():
            return completed
        with open(self._path, 'r', encoding='utf-8') as handle:
            for line_number, line in enumerate(handle, 1):
                fields = line.split()
                if not fields:
                    continue
                if not line.endswith('\n'):
                    logger.warning('%s:%d: ignoring unterminated last line %r',
                                   self._path, line_number, line)
                    continue
                try:
                    lo, hi, hits_count = (int(x) for x in fields)
                except ValueError:
                    logger.warning('%s:%d: skipping malformed checkpoint line %r',
                                   self._path, line_number, line.rstrip('\n'))
                    continue
                if lo > hi or hits_count < 0 or hits_count > hi - lo + 1:
                    logger.warning('%s:%d: skipping inconsistent checkpoint line %r',
                                   self._path, line_number, line.rstrip('\n'))
                    continue
                completed[(lo, hi)] = hits_count
        return completed

    def record(self, lo, hi, hits_count):
        '''Append one completed segment and flush it to disk.'''
        with open(self._path, 'a', encoding='utf-8') as handle:
            handle.write('{:d} {:d} {:d}\n'.format(lo, hi, hits_count))
            handle.flush()
            os.fsync(handle.fileno())

    def clear(self):
        '''Remove the checkpoint file, if any.'''
        if self.exists():
            os.remove(self._path)
