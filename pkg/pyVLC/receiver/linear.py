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
Linear MIMO equalizers built from the known channel, with an optional per stream polynomial postdistorter
"""
import logging
import warnings
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy
import scipy.linalg
from numpy.polynomial import Polynomial

from ..channel import ChannelMatrix
from ..exception import PyVLCException, DimensionMismatchError, FittingError
from ..frontend import PamConstellation, PolynomialNonlinearity

logger = logging.getLogger(__name__)

DEFAULT_POSTDISTORTER_ORDER = 5
JITTER = 1e-12


class EqualizerConstructionError(PyVLCException):
    """
    Exception raised when the channel matrix does not allow the requested equalizer
    """


def _gains(channel: Union[ChannelMatrix, numpy.ndarray]) -> numpy.ndarray:
    if isinstance(channel, ChannelMatrix):
        return channel.gains
    return numpy.atleast_2d(numpy.asarray(channel, dtype=float))


def _format_row(values) -> str:
    return ' '.join('%.17g' % v for v in values)


@dataclass(frozen=True)
class LinearEqualizer:
    """
    x = symbol_mean + matrix (r - received_mean); both means are None for ZF

    :var kind: ``'ZF'`` or ``'LMMSE'``
    :var matrix: N_t x N_r equalization matrix
    :var regularized: True when a singular LMMSE innovation matrix had to be jittered
    """
    kind: str
    matrix: numpy.ndarray
    symbol_mean: Optional[numpy.ndarray] = None
    received_mean: Optional[numpy.ndarray] = None
    regularized: bool = False

    def __call__(self, received: numpy.ndarray) -> numpy.ndarray:
        received = numpy.asarray(received, dtype=float)
        if received.shape[0] != self.matrix.shape[1]:
            raise DimensionMismatchError(self.matrix.shape[1], received.shape[0])
        if self.received_mean is None:
            return self.matrix @ received
        if received.ndim == 1:
            return self.symbol_mean + self.matrix @ (received - self.received_mean)
        return self.symbol_mean[:, None] + self.matrix @ (received - self.received_mean[:, None])

    def to_text(self) -> str:
        lines = ['format=1', f'kind={self.kind}', f'rows={self.matrix.shape[0]}', f'cols={self.matrix.shape[1]}']
        lines += [_format_row(row) for row in self.matrix]
        if self.symbol_mean is not None:
            lines.append('symbol_mean ' + _format_row(self.symbol_mean))
            lines.append('received_mean ' + _format_row(self.received_mean))
        return '\n'.join(lines) + '\n'


def build_zf(channel) -> LinearEqualizer:
    """
    Zero forcing equalizer, the Moore-Penrose left inverse (H^T H)^-1 H^T

    :raise EqualizerConstructionError: if H does not have full column rank
    """
    gains = _gains(channel)
    n_pds, n_leds = gains.shape
    if n_pds < n_leds or numpy.linalg.matrix_rank(gains) < n_leds:
        raise EqualizerConstructionError(f'{n_pds}x{n_leds} channel matrix is not full column rank')
    return LinearEqualizer('ZF', scipy.linalg.pinv(gains))


def build_lmmse(channel, constellation: PamConstellation, nonlinearity: Optional[PolynomialNonlinearity],
                noise_variance: float) -> LinearEqualizer:
    """
    LMMSE equalizer of the linear surrogate r = H x + n, x i.i.d. uniform over the constellation.
    The LED curve is part of the signature like every other receiver builder, the surrogate ignores it.

    x = mu + C H^T (H C H^T + sigma² I)^-1 (r - H mu), computed as
    (H^T H + sigma² C^-1)^-1 H^T whenever that N_t x N_t system is positive definite.
    """
    if noise_variance < 0:
        raise ValueError(f'noise variance must be >= 0 : {noise_variance}')
    gains = _gains(channel)
    n_pds, n_leds = gains.shape
    symbol_mean = numpy.full(n_leds, constellation.mean)
    variance = constellation.variance
    regularized = False

    if noise_variance > 0 or numpy.linalg.matrix_rank(gains) == n_leds:
        normal = gains.T @ gains + noise_variance / variance * numpy.eye(n_leds)
        matrix = scipy.linalg.solve(normal, gains.T, assume_a='pos')
    else:
        innovation = variance * gains @ gains.T
        jitter = JITTER * numpy.trace(innovation) / n_pds
        if jitter == 0:
            raise EqualizerConstructionError('zero channel matrix')
        logger.warning('singular noiseless LMMSE innovation matrix, adding %g jitter', jitter)
        regularized = True
        matrix = variance * scipy.linalg.solve(innovation + jitter * numpy.eye(n_pds), gains, assume_a='pos').T
    return LinearEqualizer('LMMSE', matrix, symbol_mean, gains @ symbol_mean, regularized)


@dataclass(frozen=True)
class Postdistorter:
    """
    One polynomial (constant term included) per LED stream mapping equalized values to symbol levels

    :var residuals: training mean square error of each stream
    """
    polynomials: Tuple[Polynomial, ...]
    residuals: Tuple[float, ...]
    order: int

    def __call__(self, equalized: numpy.ndarray) -> numpy.ndarray:
        equalized = numpy.asarray(equalized, dtype=float)
        if equalized.shape[0] != len(self.polynomials):
            raise DimensionMismatchError(len(self.polynomials), equalized.shape[0])
        return numpy.stack([poly(stream) for poly, stream in zip(self.polynomials, equalized)])

    def to_text(self) -> str:
        """
        one block per stream : ``domain lo hi`` then the coefficients on the [-1, 1] window
        """
        lines = ['format=1', f'order={self.order}', f'streams={len(self.polynomials)}']
        for poly, residual in zip(self.polynomials, self.residuals):
            lines.append('domain ' + _format_row(poly.domain))
            lines.append('coef ' + _format_row(poly.coef))
            lines.append('residual %.17g' % residual)
        return '\n'.join(lines) + '\n'


def fit_postdistorter(equalized: numpy.ndarray, targets: numpy.ndarray,
                      order: int = DEFAULT_POSTDISTORTER_ORDER) -> Postdistorter:
    """
    Fit, for each stream independently, the degree ``order`` polynomial p minimising |p(equalized) - target|²

    :param equalized: N_t x M equalizer outputs on the training frame
    :param targets: N_t x M training symbols
    :raise FittingError: if M <= order + 1 or a stream is constant
    """
    equalized = numpy.atleast_2d(numpy.asarray(equalized, dtype=float))
    targets = numpy.atleast_2d(numpy.asarray(targets, dtype=float))
    if equalized.shape != targets.shape:
        raise DimensionMismatchError(targets.shape, equalized.shape)
    if order < 1:
        raise FittingError(f'postdistorter order must be >= 1 : {order}')
    if equalized.shape[1] <= order + 1:
        raise FittingError(f'{equalized.shape[1]} samples for an order {order} postdistorter')

    polynomials, residuals = [], []
    for stream, (values, target) in enumerate(zip(equalized, targets)):
        if numpy.ptp(values) == 0:
            raise FittingError(f'stream {stream} equalizer output is constant')
        # fewer distinct values than coefficients gives the minimum norm interpolant
        with warnings.catch_warnings():
            warnings.simplefilter('ignore', numpy.exceptions.RankWarning)
            poly = Polynomial.fit(values, target, order)
        polynomials.append(poly)
        residuals.append(float(numpy.mean((poly(values) - target) ** 2)))
    return Postdistorter(tuple(polynomials), tuple(residuals), order)


def equalize_and_postdistort(equalizer: LinearEqualizer, postdistorter: Optional[Postdistorter],
                             received: numpy.ndarray) -> numpy.ndarray:
    """
    :return: soft estimates, to be sliced with :py:func:`pyVLC.receiver.elm.detect`
    """
    equalized = equalizer(received)
    if postdistorter is None:
        return equalized
    return postdistorter(equalized)
