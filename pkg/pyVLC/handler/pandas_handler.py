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
try:
    import pandas
except ImportError:
    import logging
    logging.getLogger().info("Pandas is not installed.")

from ..exception import PyVLCException
from ..ser_trace import SerTrace
from .csv_handler import COLUMNS
from .handler import SerHandler


def _gen_row(record):
    return [record.receiver, record.snr_db, record.symbols, record.errors, record.ser, record.wall_time,
            record.flag]


def trace_to_dataframe(trace: SerTrace) -> 'pandas.DataFrame':
    """
    convert a SER trace into a pandas DataFrame, one row per record
    """
    if len(trace) == 0:
        return pandas.DataFrame()
    return pandas.DataFrame(columns=list(COLUMNS), data=[_gen_row(record) for record in trace])


class NoRecordProcessedError(PyVLCException):
    """
    Exception raised when trying to get dataframe from pandas handler without process any record before
    """


class PandasHandler(SerHandler):
    """
    handle SER records to convert them into pandas DataFrame
    """

    def get_dataframe(self) -> 'pandas.DataFrame':
        """
        return the DataFrame containing the processed records
        """
        if len(self.traces) > 0:
            return trace_to_dataframe(self._flaten_trace())
        raise NoRecordProcessedError()
