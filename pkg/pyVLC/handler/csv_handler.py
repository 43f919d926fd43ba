# MIT License
# Copyright (c) 2020, pyVLC developers
# All rights reserved.
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
# The above copyright notice and this permission notice shall be included in all
# copies or substantial portions of the Software.
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.
from typing import Optional

from ..ser_trace import SerTrace
from .handler import SerHandler

FORMAT_VERSION = 1
COLUMNS = ('receiver', 'snr_db', 'symbols', 'errors', 'ser', 'wall_time_s', 'flag')


def _float(value: Optional[float]) -> str:
    return '' if value is None else '%.17g' % value


def gen_record_line(record, timing: bool = False) -> str:
    wall_time = _float(record.wall_time) if timing else ''
    return ','.join([record.receiver, _float(record.snr_db), str(record.symbols), str(record.errors),
                     _float(record.ser), wall_time, record.flag])


def trace_to_csv(trace: SerTrace, config_digest: Optional[str] = None, master_seed: Optional[int] = None,
                 timing: bool = False) -> str:
    """
    ``#`` header comments (format, config hash, seed) then one line per record.
    Wall times are only written when ``timing`` is set so that two runs produce the same bytes.
    """
    lines = [f'# format={FORMAT_VERSION}']
    if config_digest is not None:
        lines.append(f'# config_sha256={config_digest}')
    if master_seed is not None:
        lines.append(f'# master_seed={master_seed}')
    lines.append(','.join(COLUMNS))
    lines += [gen_record_line(record, timing) for record in trace]
    return '\n'.join(lines) + '\n'


class CSVHandler(SerHandler):

    def __init__(self, filename: str, config_digest: Optional[str] = None, master_seed: Optional[int] = None,
                 timing: bool = False):
        """
        :param filename: file name to store processed traces, overwritten by :py:meth:`save_data`
        :param config_digest: configuration hash written in the header
        :param master_seed: seed written in the header
        :param timing: write the wall_time_s column
        """
        SerHandler.__init__(self)
        self._filename = filename
        self._config_digest = config_digest
        self._master_seed = master_seed
        self._timing = timing

    def save_data(self):
        """
        write processed traces to the file
        """
        text = trace_to_csv(self._flaten_trace(), self._config_digest, self._master_seed, self._timing)
        with open(self._filename, 'w') as csv_file:
            csv_file.write(text)
        self.traces = []
