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
from ..ser_trace import SerTrace
from .handler import SerHandler


def format_record(record) -> str:
    if record.failure is not None:
        return f'{record.receiver:<9} {record.snr_db:6.1f} dB  failed : {record.failure}'
    line = f'{record.receiver:<9} {record.snr_db:6.1f} dB  SER {record.ser:.3e} ({record.errors}/{record.symbols})'
    if record.wall_time is not None:
        line += f'  {record.wall_time:.3f} s'
    if record.flag:
        line += f'  [{record.flag}]'
    return line


class PrintHandler(SerHandler):

    def process(self, trace: SerTrace):
        """
        Print the records of the given trace on the standard output
        """
        for record in trace:
            print(format_record(record))
