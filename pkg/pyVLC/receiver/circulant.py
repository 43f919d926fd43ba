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
Low complexity ELM whose input weights are the first N_r columns of a L x L circulant matrix.

The circulant is stored by its generator ``g``, the FIRST COLUMN of the matrix:
``W~[i, j] = g[(i - j) mod L]``. With the unitary DFT F this gives
``W~ = F^H diag(d) F`` with ``d = sqrt(L) F g``, so ``W r = W~ [r; 0]`` costs two FFTs
and L complex multiplications instead of L N_r real ones.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy
import scipy.fft
import scipy.linalg

from ..exception import PyVLCException, DimensionMismatchError
from ..frontend import LinkConfig, TrainingSet
from .elm import (DEFAULT_HIDDEN_SIZE, DEFAULT_RIDGE, HiddenSizeError, InputScaler, fit_model,
                  get_activation)

IMAGINARY_TOLERANCE = 1e-10


class ConsistencyError(PyVLCException):
    """
    Exception raised when the FFT matvec of a real circulant leaves a non negligible imaginary part
    """


def is_power_of_two(value: int) -> bool:
    return value >= 1 and value & (value - 1) == 0


def _check_length(length: int):
    if not is_power_of_two(length):
        raise HiddenSizeError(f'FFT length must be a power of two : {length}')


def fft(v: numpy.ndarray, axis: int = 0) -> numpy.ndarray:
    """
    Unitary DFT, F[k, n] = L^(-1/2) exp(-2i pi k n / L)
    """
    v = numpy.asarray(v)
    _check_length(v.shape[axis])
    return scipy.fft.fft(v, axis=axis, norm='ortho')


def ifft(v: numpy.ndarray, axis: int = 0) -> numpy.ndarray:
    """
    Inverse of :py:func:`fft`, F^H
    """
    v = numpy.asarray(v)
    _check_length(v.shape[axis])
    return scipy.fft.ifft(v, axis=axis, norm='ortho')


def generator_spectrum(generator: numpy.ndarray) -> numpy.ndarray:
    """
    :return: d = sqrt(L) F g, the eigenvalues of the circulant generated by g
    """
    return math.sqrt(len(generator)) * fft(generator)


def generator_from_spectrum(spectrum: numpy.ndarray) -> numpy.ndarray:
    """
    :return: the real generator whose spectrum is given
    """
    return (ifft(spectrum) / math.sqrt(len(spectrum))).real


@dataclass
class CirculantElmModel:
    """
    :var generator: length L first column of the circulant W~
    :var spectrum: sqrt(L) F generator
    :var biases: length L vector b, dense
    :var input_size: N_r, the inputs are zero padded from N_r to L
    :var output_weights: L x N_t matrix B, None until trained
    """
    generator: numpy.ndarray
    spectrum: numpy.ndarray
    biases: numpy.ndarray
    input_size: int
    activation: str = 'sigmoid'
    output_weights: Optional[numpy.ndarray] = None
    seed: Optional[int] = None
    scaler: Optional[InputScaler] = None

    variant = 'celm'

    @property
    def hidden_size(self) -> int:
        return len(self.generator)

    @property
    def is_trained(self) -> bool:
        return self.output_weights is not None

    def hidden(self, received: numpy.ndarray) -> numpy.ndarray:
        """
        :param received: length N_r vector or N_r x M frame
        :return: hidden layer response, length L or L x M
        """
        received = numpy.asarray(received, dtype=float)
        if received.shape[0] != self.input_size:
            raise DimensionMismatchError(self.input_size, received.shape[0])
        if self.scaler is not None:
            received = self.scaler(received)
        pre_activation = circulant_matvec(self, received)
        if pre_activation.ndim == 1:
            pre_activation = pre_activation + self.biases
        else:
            pre_activation = pre_activation + self.biases[:, None]
        return get_activation(self.activation)(pre_activation)


def from_generator(generator: numpy.ndarray, biases: numpy.ndarray, input_size: int,
                   activation: str = 'sigmoid', seed=None) -> CirculantElmModel:
    """
    Build an untrained model around a given generator

    :raise HiddenSizeError: if L is not a power of two or L <= N_r
    """
    generator = numpy.asarray(generator, dtype=float)
    hidden_size = len(generator)
    _check_length(hidden_size)
    if hidden_size <= input_size:
        raise HiddenSizeError(f'hidden size {hidden_size} must exceed the input size {input_size}')
    if len(biases) != hidden_size:
        raise DimensionMismatchError(hidden_size, len(biases))
    return CirculantElmModel(generator, generator_spectrum(generator), numpy.asarray(biases, dtype=float),
                             input_size, activation=activation, seed=seed)


def init_circulant(hidden_size: int, input_size: int, seed, activation: str = 'sigmoid') -> CirculantElmModel:
    """
    Draw the generator and the biases i.i.d. uniform on [-1, 1]
    """
    if input_size < 1:
        raise DimensionMismatchError('N_r >= 1', input_size)
    _check_length(hidden_size)
    if hidden_size <= input_size:
        raise HiddenSizeError(f'hidden size {hidden_size} must exceed the input size {input_size}')
    rng = numpy.random.default_rng(seed)
    generator = rng.uniform(-1.0, 1.0, size=hidden_size)
    biases = rng.uniform(-1.0, 1.0, size=hidden_size)
    return from_generator(generator, biases, input_size, activation, seed)


def circulant_matvec(model: CirculantElmModel, r: numpy.ndarray) -> numpy.ndarray:
    """
    W r computed as F^H (d . F [r; 0])

    :param r: length N_r vector or N_r x M frame
    :return: length L vector or L x M matrix
    :raise ConsistencyError: if the discarded imaginary part is not round-off
    """
    r = numpy.asarray(r, dtype=float)
    if r.shape[0] != model.input_size:
        raise DimensionMismatchError(model.input_size, r.shape[0])
    padded = numpy.zeros((model.hidden_size,) + r.shape[1:])
    padded[:model.input_size] = r

    spectrum = model.spectrum if r.ndim == 1 else model.spectrum[:, None]
    product = ifft(spectrum * fft(padded))
    result = product.real
    residue = numpy.max(numpy.abs(product.imag), initial=0.0)
    # an output that cancels to ~0 is measured against the input magnitudes instead
    scale = max(numpy.max(numpy.abs(result), initial=0.0),
                numpy.max(numpy.abs(model.spectrum)) * numpy.max(numpy.abs(r), initial=0.0))
    if residue > IMAGINARY_TOLERANCE * scale:
        raise ConsistencyError(f'imaginary residue {residue} in circulant matvec')
    return result


def circulant_hidden_map(model: CirculantElmModel, r: numpy.ndarray) -> numpy.ndarray:
    """
    :return: g(W r + b) with W the implied partial circulant
    """
    return model.hidden(r)


def implied_input_weights(model: CirculantElmModel) -> numpy.ndarray:
    """
    Materialise the L x N_r dense input weights the FFT path implements (for checks and export only)
    """
    return scipy.linalg.circulant(model.generator)[:, :model.input_size]


def train_circulant_receiver(link: LinkConfig, training: TrainingSet, hidden_size: int = DEFAULT_HIDDEN_SIZE,
                             ridge: float = DEFAULT_RIDGE, seed=0, activation: str = 'sigmoid',
                             normalize: bool = False) -> CirculantElmModel:
    """
    Circulant counterpart of :py:func:`pyVLC.receiver.elm.train_receiver`, same solver
    """
    if training.received.shape[0] != link.n_pds or training.symbols.shape[0] != link.n_leds:
        raise DimensionMismatchError((link.n_leds, link.n_pds),
                                     (training.symbols.shape[0], training.received.shape[0]))
    model = init_circulant(hidden_size, link.n_pds, seed, activation)
    return fit_model(model, training, ridge, normalize)


@dataclass(frozen=True)
class ComplexityReport:
    """
    Real multiplications needed for one soft estimate

    :var dense_mults: L N_r + 2L
    :var circulant_exact: 8/3 L log L - 4/9 L + 12 + 4/9 (-1)^log L, split radix count
    :var inference_dense_mults: multiplications of `elm_infer` on a dense model, L N_r + L N_t
    """
    hidden_size: int
    input_size: int
    dense_mults: int
    circulant_exact: Fraction
    inference_dense_mults: Optional[int] = None

    @property
    def circulant_mults(self) -> int:
        return int(round(self.circulant_exact))

    @property
    def ratio(self) -> float:
        return float(Fraction(self.dense_mults) / self.circulant_exact)

    def to_table(self) -> str:
        lines = ['dense_mults  circulant_mults  ratio',
                 f'{self.dense_mults:<12d} {self.circulant_mults:<16d} {self.ratio:.2f}']
        if self.inference_dense_mults is not None:
            lines.append(f'dense inference multiplications : {self.inference_dense_mults}')
        return '\n'.join(lines) + '\n'

    def to_csv(self) -> str:
        return ('hidden_size,input_size,dense_mults,circulant_mults,ratio\n'
                f'{self.hidden_size},{self.input_size},{self.dense_mults},{self.circulant_mults},{self.ratio:.6f}\n')


def count_dense_multiplications(hidden_size: int, input_size: int, output_size: int) -> int:
    """
    Multiplications of one ``elm_infer`` call on a dense model, the same as ``ElmModel.inference_mults``
    """
    return hidden_size * input_size + hidden_size * output_size


def complexity_report(hidden_size: int, input_size: int, output_size: Optional[int] = None) -> ComplexityReport:
    """
    Compare the dense and FFT input layer costs

    :raise HiddenSizeError: if L is not a power of two
    """
    _check_length(hidden_size)
    if input_size < 1:
        raise DimensionMismatchError('N_r >= 1', input_size)
    log_l = hidden_size.bit_length() - 1
    dense = hidden_size * input_size + 2 * hidden_size
    circulant = (Fraction(8, 3) * hidden_size * log_l - Fraction(4, 9) * hidden_size + 12
                 + Fraction(4, 9) * (-1) ** log_l)
    inference = None
    if output_size is not None:
        inference = count_dense_multiplications(hidden_size, input_size, output_size)
    return ComplexityReport(hidden_size, input_size, dense, circulant, inference)
