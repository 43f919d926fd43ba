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
from ..exception import PyVLCException
from ..ser_trace import SerTrace


class DuplicateRecordError(PyVLCException):
    """
    Exception raised when processed traces hold two records for the same receiver and SNR point
    """

    def __init__(self, receiver: str, snr_db: float):
        PyVLCException.__init__(self, f'two records for {receiver} at {snr_db} dB')
        self.receiver = receiver
        self.snr_db = snr_db


def _check_records(records: SerTrace):
    seen = set()
    for record in records:
        key = (record.receiver, record.snr_db)
        if key in seen:
            raise DuplicateRecordError(*key)
        seen.add(key)


class SerHandler:
    """
    An object that can handle the records of a SER trace
    """

    def __init__(self):
        self.traces = []

    def process(self, trace: SerTrace):
        self.traces.append(trace)

    def _flaten_trace(self) -> SerTrace:
        flatened_trace = SerTrace([])
        for trace in self.traces:
            flatened_trace += trace
        _check_records(flatened_trace)
        return flatened_trace
