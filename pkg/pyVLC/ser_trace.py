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
import math
from typing import Any, Dict, Iterable, List, Optional, Tuple

import numpy

from .exception import DimensionMismatchError

LOW_CONFIDENCE_SER = 1e-3
MIN_ERRORS = 100
MONOTONIC_SIGMAS = 3.0


class SerRecord:
    """
    :var receiver: receiver name
    :vartype receiver: str
    :var snr_db: SNR point, in dB
    :vartype snr_db: float
    :var symbols: number of per LED symbol decisions
    :vartype symbols: int
    :var errors: number of wrong decisions
    :vartype errors: int
    :var wall_time: training plus detection time in seconds, None when not measured
    :vartype wall_time: Optional[float]
    :var failure: error message when the receiver could not be trained, None otherwise
    :vartype failure: Optional[str]
    """
    def __init__(self, receiver: str, snr_db: float, symbols: int, errors: int, wall_time: Optional[float] = None,
                 failure: Optional[str] = None):
        if symbols < 0 or not 0 <= errors <= symbols:
            raise ValueError(f'{errors} errors over {symbols} symbols')
        self.receiver = receiver
        self.snr_db = snr_db
        self.symbols = symbols
        self.errors = errors
        self.wall_time = wall_time
        self.failure = failure

    @staticmethod
    def failed(receiver: str, snr_db: float, failure: str, wall_time: Optional[float] = None) -> 'SerRecord':
        return SerRecord(receiver, snr_db, 0, 0, wall_time, failure)

    @property
    def ser(self) -> Optional[float]:
        """
        errors / symbols, None if no symbol was decided
        """
        if self.symbols == 0:
            return None
        return self.errors / self.symbols

    @property
    def standard_error(self) -> float:
        """
        binomial standard error of the SER estimate
        """
        if self.symbols == 0:
            return math.inf
        ser = self.ser
        return math.sqrt(ser * (1 - ser) / self.symbols)

    @property
    def flag(self) -> str:
        """
        ``failed``, ``low-confidence`` when a SER >= 1e-3 rests on less than 100 errors, empty otherwise
        """
        if self.failure is not None:
            return 'failed'
        if self.ser is not None and self.ser >= LOW_CONFIDENCE_SER and self.errors < MIN_ERRORS:
            return 'low-confidence'
        return ''

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, SerRecord):
            return NotImplemented
        return (self.receiver, self.snr_db, self.symbols, self.errors, self.failure) == \
            (other.receiver, other.snr_db, other.symbols, other.errors, other.failure)

    def __repr__(self) -> str:
        return f'SerRecord({self.receiver!r}, {self.snr_db}, {self.symbols}, {self.errors})'


class SerTrace:
    """
    SER records of one or several sweeps, in insertion order
    """
    def __init__(self, records: Iterable[SerRecord]):
        """
        :param records: records contained in the trace
        """
        self._records = list(records)

    def __getitem__(self, key: Any) -> SerRecord:
        """
        Return the n-th record of the trace or the record of a ``(receiver, snr_db)`` pair

        :raise KeyError: if no record matches the given pair
        :raise IndexError: if no record matches the given index
        """
        if isinstance(key, int):
            return self._records[key]
        for record in self._records:
            if (record.receiver, record.snr_db) == key:
                return record
        raise KeyError(f'no record for : {key}')

    def __iter__(self):
        return iter(self._records)

    def __len__(self) -> int:
        return len(self._records)

    def __contains__(self, receiver: str) -> bool:
        return any(record.receiver == receiver for record in self._records)

    def __add__(self, trace: 'SerTrace') -> 'SerTrace':
        return SerTrace(self._records + trace._records)

    def __iadd__(self, trace: 'SerTrace'):
        self._records += trace._records
        return self

    def append(self, record: SerRecord):
        self._records.append(record)

    def receivers(self) -> List[str]:
        """
        :return: receiver names in order of first appearance
        """
        return list(dict.fromkeys(record.receiver for record in self._records))

    def curve(self, receiver: str) -> List[SerRecord]:
        """
        :return: the successful records of a receiver sorted by SNR
        """
        records = [r for r in self._records if r.receiver == receiver and r.failure is None]
        return sorted(records, key=lambda record: record.snr_db)

    def sort(self, receiver_order: Optional[Iterable[str]] = None):
        """
        Order records by receiver (``receiver_order`` or first appearance) then by ascending SNR
        """
        order = list(receiver_order) if receiver_order is not None else self.receivers()
        rank = {name: index for index, name in enumerate(order)}
        self._records.sort(key=lambda record: (rank.get(record.receiver, len(rank)), record.snr_db))

    def check_monotonic(self, sigmas: float = MONOTONIC_SIGMAS) -> List[Tuple[str, float, float]]:
        """
        Find SER increases with SNR larger than ``sigmas`` combined standard errors

        :return: ``(receiver, lower snr, higher snr)`` for each violation, empty when the curves are sane
        """
        violations = []
        for receiver in self.receivers():
            curve = self.curve(receiver)
            for low, high in zip(curve, curve[1:]):
                margin = sigmas * math.hypot(low.standard_error, high.standard_error)
                if high.ser - low.ser > margin:
                    violations.append((receiver, low.snr_db, high.snr_db))
        return violations


class ConstellationDump:
    """
    Pre decision soft values of one receiver with the symbols that were sent

    :var soft: N_t x n soft estimates
    :var symbols: N_t x n transmitted levels
    """
    def __init__(self, receiver: str, snr_db: float, soft: numpy.ndarray, symbols: numpy.ndarray):
        soft = numpy.atleast_2d(numpy.asarray(soft, dtype=float))
        symbols = numpy.atleast_2d(numpy.asarray(symbols, dtype=float))
        if soft.shape != symbols.shape:
            raise DimensionMismatchError(symbols.shape, soft.shape)
        self.receiver = receiver
        self.snr_db = snr_db
        self.soft = soft
        self.symbols = symbols

    @property
    def n_streams(self) -> int:
        return self.soft.shape[0]

    def stream(self, index: int) -> List[Tuple[float, float]]:
        """
        :return: the (soft value, true symbol) pairs of one LED stream
        """
        if not 0 <= index < self.n_streams:
            raise IndexError(f'stream {index} out of {self.n_streams}')
        return list(zip(self.soft[index].tolist(), self.symbols[index].tolist()))

    def cluster_statistics(self) -> Dict[float, Tuple[float, float, int]]:
        """
        Pool all streams and group soft values by the level that was sent

        :return: level -> (mean, standard deviation, count)
        """
        statistics = {}
        for level in numpy.unique(self.symbols):
            values = self.soft[self.symbols == level]
            statistics[float(level)] = (float(values.mean()), float(values.std()), int(values.size))
        return statistics

    def is_separated(self, mean_tolerance: float, max_std: float) -> bool:
        """
        :return: True if every cluster mean is within ``mean_tolerance`` of its level and every std below ``max_std``
        """
        return all(abs(mean - level) <= mean_tolerance and std < max_std
                   for level, (mean, std, _) in self.cluster_statistics().items())

    def to_csv(self) -> str:
        """
        :return: ``# format=1`` header comments then ``stream,soft,symbol`` rows, stream by stream
        """
        lines = ['# format=1', f'# receiver={self.receiver}', '# snr_db=%.17g' % self.snr_db, 'stream,soft,symbol']
        for index in range(self.n_streams):
            for soft, symbol in zip(self.soft[index], self.symbols[index]):
                lines.append('%d,%.17g,%.17g' % (index, soft, symbol))
        return '\n'.join(lines) + '\n'
