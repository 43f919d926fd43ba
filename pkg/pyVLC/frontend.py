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
"""
Transmit side of the link: PAM symbol frames, memoryless LED polynomial and r = H y + n
"""
import logging
import os.path
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Tuple

import numpy
from numpy.polynomial import polynomial

from .channel import ChannelMatrix
from .exception import PyVLCException, DimensionMismatchError, FittingError

logger = logging.getLogger(__name__)

DATA_DIR = os.path.join(os.path.dirname(__file__), 'data')
DEFAULT_IV_TABLE = os.path.join(DATA_DIR, 'led_iv.csv')
DEFAULT_ORDER = 5
DEFAULT_PROBE_SYMBOLS = 10000

# stream ids for numpy.random.default_rng([link.seed, stream])
_PROBE_STREAM = 0
_NOISE_STREAM = 1


class ConstellationError(PyVLCException):
    """
    Exception raised when PAM levels are not strictly ascending positive values
    """


class CalibrationError(PyVLCException):
    """
    Exception raised when the noiseless received signal has zero power
    """


@dataclass(frozen=True)
class PamConstellation:
    """
    J strictly ascending positive voltage levels
    """
    levels: Tuple[float, ...]

    def __post_init__(self):
        levels = tuple(float(level) for level in self.levels)
        if len(levels) < 2:
            raise ConstellationError(f'a PAM constellation needs at least 2 levels, got {len(levels)}')
        if any(level <= 0 for level in levels):
            raise ConstellationError(f'intensity modulation levels must be positive : {levels}')
        if any(b <= a for a, b in zip(levels, levels[1:])):
            raise ConstellationError(f'levels must be strictly ascending : {levels}')
        object.__setattr__(self, 'levels', levels)

    @classmethod
    def uniform(cls, size: int, v_min: float, v_max: float) -> 'PamConstellation':
        """
        :return: ``size`` equally spaced levels from v_min to v_max included
        """
        return cls(tuple(numpy.linspace(v_min, v_max, size)))

    @property
    def size(self) -> int:
        return len(self.levels)

    @property
    def array(self) -> numpy.ndarray:
        return numpy.asarray(self.levels)

    @property
    def thresholds(self) -> numpy.ndarray:
        """
        decision boundaries, the midpoints between adjacent levels
        """
        levels = self.array
        return (levels[:-1] + levels[1:]) / 2

    @property
    def mean(self) -> float:
        return float(numpy.mean(self.array))

    @property
    def variance(self) -> float:
        return float(numpy.mean(self.array ** 2) - self.mean ** 2)


@dataclass(frozen=True)
class PolynomialNonlinearity:
    """
    LED curve y = sum_{k=1..K} a_k x^k, no constant term; ``coeffs[k-1]`` is a_k
    """
    coeffs: Tuple[float, ...]

    def __post_init__(self):
        coeffs = tuple(float(c) for c in self.coeffs)
        if len(coeffs) < 1:
            raise FittingError('a LED polynomial needs at least one coefficient')
        if not all(numpy.isfinite(coeffs)):
            raise FittingError(f'non finite LED polynomial coefficient : {coeffs}')
        if not any(coeffs):
            raise FittingError('all LED polynomial coefficients are zero')
        object.__setattr__(self, 'coeffs', coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __call__(self, x):
        return apply_led_nonlinearity(x, self)

    def to_text(self) -> str:
        """
        :return: whitespace separated ``a_1 ... a_K`` line
        """
        return ' '.join('%.17g' % c for c in self.coeffs) + '\n'

    @staticmethod
    def from_file(filename: str) -> 'PolynomialNonlinearity':
        with open(filename, 'r') as coeff_file:
            return PolynomialNonlinearity(tuple(float(token) for token in coeff_file.read().split()))


@dataclass(frozen=True)
class TrainingSet:
    """
    :var symbols: N_t x M matrix T of transmitted levels
    :var received: N_r x M channel outputs, column m produced by column m of symbols
    """
    symbols: numpy.ndarray
    received: numpy.ndarray

    def __post_init__(self):
        if self.symbols.shape[1] != self.received.shape[1]:
            raise DimensionMismatchError(self.symbols.shape[1], self.received.shape[1])

    @property
    def length(self) -> int:
        return self.symbols.shape[1]

    def to_csv(self) -> str:
        """
        :return: one line per time instant, ``m,x_0..x_{Nt-1},r_0..r_{Nr-1}``
        """
        n_leds, n_pds = self.symbols.shape[0], self.received.shape[0]
        header = 'm,' + ','.join([f'x_{n}' for n in range(n_leds)] + [f'r_{q}' for q in range(n_pds)])
        lines = [header]
        for m in range(self.length):
            values = list(self.symbols[:, m]) + list(self.received[:, m])
            lines.append(f'{m},' + ','.join('%.17g' % v for v in values))
        return '\n'.join(lines) + '\n'


@dataclass(frozen=True)
class LinkConfig:
    """
    Everything needed to push symbols through the LED MIMO link at a given SNR.
    The noise variance is calibrated once on first use from noiseless probe symbols.
    """
    channel: ChannelMatrix
    nonlinearity: PolynomialNonlinearity
    constellation: PamConstellation
    snr_db: float
    seed: int = 0
    probe_symbols: int = DEFAULT_PROBE_SYMBOLS

    def __post_init__(self):
        if not numpy.isfinite(self.snr_db):
            raise CalibrationError(f'snr must be finite : {self.snr_db}')

    @property
    def n_leds(self) -> int:
        return self.channel.n_leds

    @property
    def n_pds(self) -> int:
        return self.channel.n_pds

    @cached_property
    def noise_variance(self) -> float:
        return calibrate_noise_variance(self, self.probe_symbols)


def apply_led_nonlinearity(x, nl: PolynomialNonlinearity):
    """
    :param x: drive voltage, scalar or array (applied elementwise)
    :return: LED output sum_k a_k x^k
    """
    x = numpy.asarray(x, dtype=float)
    if not numpy.all(numpy.isfinite(x)):
        raise ValueError('LED drive voltage must be finite')
    result = polynomial.polyval(x, (0.0,) + nl.coeffs)
    return float(result) if result.ndim == 0 else result


def read_iv_table(filename: str = DEFAULT_IV_TABLE) -> numpy.ndarray:
    """
    Read a two column ``volts,amps`` CSV (header line optional, ``#`` comments skipped)

    :return: array of shape (n, 2)
    """
    rows = []
    with open(filename, 'r') as table:
        for line in table:
            line = line.strip()
            if not line or line.startswith('#'):
                continue
            fields = line.split(',')
            try:
                rows.append((float(fields[0]), float(fields[1])))
            except ValueError:
                if rows:
                    raise
                # header line
    return numpy.asarray(rows)


def fit_polynomial_iv(samples: Iterable[Tuple[float, float]], order: int) -> PolynomialNonlinearity:
    """
    Least squares fit of I = sum_{k=1..K} a_k V^k

    :param samples: (voltage, current) pairs
    :param order: K
    :raise FittingError: if fewer than K distinct voltages are given
    """
    samples = numpy.asarray(list(samples), dtype=float).reshape(-1, 2)
    if order < 1:
        raise FittingError(f'polynomial order must be >= 1 : {order}')
    voltages, currents = samples[:, 0], samples[:, 1]

    # fitting in V / scale keeps the Vandermonde columns of comparable size
    scale = numpy.max(numpy.abs(voltages)) if len(voltages) else 0.0
    if scale == 0:
        raise FittingError('no non zero voltage sample')
    design = numpy.vander(voltages / scale, order + 1, increasing=True)[:, 1:]
    scaled, _, rank, _ = numpy.linalg.lstsq(design, currents, rcond=None)
    if rank < order:
        raise FittingError(f'{rank} independent voltages for an order {order} fit')
    coeffs = scaled / scale ** numpy.arange(1, order + 1)
    return PolynomialNonlinearity(tuple(coeffs))


def default_nonlinearity(order: int = DEFAULT_ORDER) -> PolynomialNonlinearity:
    """
    :return: the LED curve fitted on the bundled I-V table
    """
    return fit_polynomial_iv(read_iv_table(DEFAULT_IV_TABLE), order)


def draw_symbol_frame(n_leds: int, length: int, constellation: PamConstellation,
                      rng: numpy.random.Generator) -> numpy.ndarray:
    """
    :return: n_leds x length matrix of i.i.d. uniform constellation levels
    """
    if length < 1:
        raise ValueError(f'frame length must be >= 1 : {length}')
    indexes = rng.integers(0, constellation.size, size=(n_leds, length))
    return constellation.array[indexes]


def _noiseless(symbols: numpy.ndarray, link: LinkConfig) -> numpy.ndarray:
    if symbols.ndim != 2 or symbols.shape[0] != link.n_leds:
        raise DimensionMismatchError((link.n_leds, 'M'), symbols.shape)
    return link.channel.gains @ apply_led_nonlinearity(symbols, link.nonlinearity)


def signal_power(received: numpy.ndarray) -> float:
    """
    :return: average electrical power over PDs and symbols
    """
    return float(numpy.mean(numpy.square(received)))


def calibrate_noise_variance(link: LinkConfig, probe_frames: int = DEFAULT_PROBE_SYMBOLS) -> float:
    """
    Noise variance giving ``link.snr_db`` over ``probe_frames`` noiseless probe symbols

    :raise CalibrationError: if the probe signal has zero power
    """
    if probe_frames < 1:
        raise ValueError(f'at least one probe symbol is needed : {probe_frames}')
    rng = numpy.random.default_rng([link.seed, _PROBE_STREAM])
    probe = draw_symbol_frame(link.n_leds, probe_frames, link.constellation, rng)
    power = signal_power(_noiseless(probe, link))
    if power == 0:
        raise CalibrationError('received signal power is zero')
    variance = power / 10 ** (link.snr_db / 10)
    logger.debug('snr %s dB : signal power %g, noise variance %g', link.snr_db, power, variance)
    return variance


def transmit_frame(symbols: numpy.ndarray, link: LinkConfig, rng: Optional[numpy.random.Generator] = None,
                   noise_variance: Optional[float] = None) -> numpy.ndarray:
    """
    Push a N_t x M symbol frame through the LED curve, the channel and the PD noise

    :param rng: noise generator, seeded from ``link.seed`` if None
    :param noise_variance: overrides the calibrated variance (0 gives the noiseless signal)
    :return: N_r x M received frame
    """
    clean = _noiseless(numpy.asarray(symbols, dtype=float), link)
    variance = link.noise_variance if noise_variance is None else noise_variance
    if variance == 0:
        return clean
    if rng is None:
        rng = numpy.random.default_rng([link.seed, _NOISE_STREAM])
    return clean + rng.normal(0.0, numpy.sqrt(variance), size=clean.shape)


def make_training_set(link: LinkConfig, length: int, symbol_rng: numpy.random.Generator,
                      noise_rng: Optional[numpy.random.Generator] = None) -> TrainingSet:
    """
    :return: a training matrix T of ``length`` symbols per LED with its received frame
    """
    symbols = draw_symbol_frame(link.n_leds, length, link.constellation, symbol_rng)
    return TrainingSet(symbols, transmit_frame(symbols, link, noise_rng))


def measure_snr_db(link: LinkConfig, length: int, symbol_rng: numpy.random.Generator,
                   noise_rng: numpy.random.Generator) -> float:
    """
    Empirical SNR of a fresh frame: noiseless power over the power of what the noise added
    """
    symbols = draw_symbol_frame(link.n_leds, length, link.constellation, symbol_rng)
    clean = _noiseless(symbols, link)
    noise = transmit_frame(symbols, link, noise_rng) - clean
    return 10 * numpy.log10(signal_power(clean) / signal_power(noise))
