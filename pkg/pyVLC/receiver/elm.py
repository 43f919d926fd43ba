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
Extreme learning machine receiver: random fixed hidden layer, least squares output weights
"""
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy
import scipy.linalg
from scipy.special import expit

from ..exception import PyVLCException, DimensionMismatchError, NotTrainedError
from ..frontend import LinkConfig, PamConstellation, TrainingSet

logger = logging.getLogger(__name__)

DEFAULT_HIDDEN_SIZE = 128
DEFAULT_RIDGE = 1e-6
PINV_CUTOFF = 1e-12
SIGMOID_LIMIT = 710.0


class DetectionError(PyVLCException):
    """
    Exception raised when a soft symbol estimate is not finite
    """


class HiddenSizeError(PyVLCException):
    """
    Exception raised when the number of hidden nodes does not suit the model
    """


def sigmoid(z):
    return expit(numpy.clip(z, -SIGMOID_LIMIT, SIGMOID_LIMIT))


ACTIVATIONS = {
    'sigmoid': sigmoid,
    'tanh': numpy.tanh,
}


def get_activation(name: str):
    try:
        return ACTIVATIONS[name]
    except KeyError:
        raise ValueError(f'unknown activation : {name}') from None


@dataclass(frozen=True)
class InputScaler:
    """
    Per-PD standardisation learnt on the training frame, shrunk by sqrt(N_r) so that a row of W
    applied to a scaled input has a pre-activation of unit order whatever the number of PDs
    """
    mean: numpy.ndarray
    scale: numpy.ndarray

    @staticmethod
    def fit(received: numpy.ndarray) -> 'InputScaler':
        mean = received.mean(axis=1)
        spread = received.std(axis=1)
        spread[spread == 0] = 1.0
        return InputScaler(mean, spread * numpy.sqrt(received.shape[0]))

    def __call__(self, received: numpy.ndarray) -> numpy.ndarray:
        if received.ndim == 1:
            return (received - self.mean) / self.scale
        return (received - self.mean[:, None]) / self.scale[:, None]


@dataclass
class ElmModel:
    """
    :var input_weights: L x N_r matrix W
    :var biases: length L vector b
    :var output_weights: L x N_t matrix B (column n is beta_n), None until trained
    """
    input_weights: numpy.ndarray
    biases: numpy.ndarray
    activation: str = 'sigmoid'
    output_weights: Optional[numpy.ndarray] = None
    seed: Optional[int] = None
    scaler: Optional[InputScaler] = None

    variant = 'elm'

    @property
    def hidden_size(self) -> int:
        return self.input_weights.shape[0]

    @property
    def input_size(self) -> int:
        return self.input_weights.shape[1]

    @property
    def is_trained(self) -> bool:
        return self.output_weights is not None

    @property
    def inference_mults(self) -> int:
        """
        Real multiplications of one soft estimate: L N_r for W r, then L per output stream

        :raise NotTrainedError: if the output weights were not solved
        """
        if not self.is_trained:
            raise NotTrainedError(f'{self.variant} model has no output weights')
        return self.input_weights.size + self.output_weights.size

    def _scaled(self, received: numpy.ndarray) -> numpy.ndarray:
        received = numpy.asarray(received, dtype=float)
        if received.shape[0] != self.input_size:
            raise DimensionMismatchError(self.input_size, received.shape[0])
        return received if self.scaler is None else self.scaler(received)

    def hidden(self, received: numpy.ndarray) -> numpy.ndarray:
        """
        :param received: length N_r vector or N_r x M frame
        :return: hidden layer response, length L or L x M
        """
        received = self._scaled(received)
        pre_activation = self.input_weights @ received
        if received.ndim == 1:
            pre_activation = pre_activation + self.biases
        else:
            pre_activation = pre_activation + self.biases[:, None]
        return get_activation(self.activation)(pre_activation)


def init_elm(hidden_size: int, input_size: int, seed) -> Tuple[numpy.ndarray, numpy.ndarray]:
    """
    Draw W (L x N_r) and b (L) i.i.d. uniform on [-1, 1]
    """
    if hidden_size < 1:
        raise HiddenSizeError(f'hidden size must be >= 1 : {hidden_size}')
    if input_size < 1:
        raise DimensionMismatchError('N_r >= 1', input_size)
    rng = numpy.random.default_rng(seed)
    weights = rng.uniform(-1.0, 1.0, size=(hidden_size, input_size))
    biases = rng.uniform(-1.0, 1.0, size=hidden_size)
    return weights, biases


def hidden_map(weights: numpy.ndarray, biases: numpy.ndarray, r: numpy.ndarray,
               activation: str = 'sigmoid') -> numpy.ndarray:
    """
    :return: g(W r + b)
    """
    r = numpy.asarray(r, dtype=float)
    if weights.shape[1] != r.shape[0]:
        raise DimensionMismatchError(weights.shape[1], r.shape[0])
    return get_activation(activation)(weights @ r + biases)


def build_hidden_matrix(weights: numpy.ndarray, biases: numpy.ndarray, received: numpy.ndarray,
                        activation: str = 'sigmoid') -> numpy.ndarray:
    """
    :param received: N_r x M frame
    :return: M x L hidden layer output matrix, row m is g(W r(m) + b)
    """
    received = numpy.asarray(received, dtype=float)
    if received.ndim != 2 or received.shape[0] != weights.shape[1]:
        raise DimensionMismatchError((weights.shape[1], 'M'), received.shape)
    return get_activation(activation)((weights @ received).T + biases)


def train_output_weights(phi: numpy.ndarray, targets: numpy.ndarray, ridge: float = DEFAULT_RIDGE) -> numpy.ndarray:
    """
    Solve (phi^T phi + ridge I) B = phi^T T^T, one column per LED stream.
    With ridge 0 the minimum norm least squares solution is returned.

    :param phi: M x L hidden layer output matrix
    :param targets: N_t x M training symbols
    :return: L x N_t output weights
    """
    if ridge < 0:
        raise ValueError(f'ridge must be >= 0 : {ridge}')
    targets = numpy.atleast_2d(numpy.asarray(targets, dtype=float))
    if phi.shape[0] != targets.shape[1]:
        raise DimensionMismatchError(phi.shape[0], targets.shape[1])

    if ridge == 0:
        return scipy.linalg.pinv(phi, atol=0.0, rtol=PINV_CUTOFF) @ targets.T

    gram = phi.T @ phi + ridge * numpy.eye(phi.shape[1])
    try:
        factor = scipy.linalg.cho_factor(gram)
    except numpy.linalg.LinAlgError:
        logger.warning('ridge normal equations not positive definite, using the pseudoinverse')
        return scipy.linalg.pinv(gram, atol=0.0, rtol=PINV_CUTOFF) @ (phi.T @ targets.T)
    return scipy.linalg.cho_solve(factor, phi.T @ targets.T)


def elm_infer(model, r: numpy.ndarray) -> numpy.ndarray:
    """
    Soft symbol estimate B^T g(W r + b), for a ElmModel or a CirculantElmModel

    :param r: length N_r vector or N_r x M frame
    :return: length N_t vector or N_t x M matrix
    :raise NotTrainedError: if the output weights were not solved
    """
    if not model.is_trained:
        raise NotTrainedError(f'{model.variant} model has no output weights')
    return model.output_weights.T @ model.hidden(r)


def detect(x_tilde, constellation: PamConstellation) -> numpy.ndarray:
    """
    Nearest constellation level for each soft estimate, a value exactly between two levels goes to the lower one

    :raise DetectionError: if a soft estimate is not finite
    """
    x_tilde = numpy.asarray(x_tilde, dtype=float)
    if not numpy.all(numpy.isfinite(x_tilde)):
        raise DetectionError('non finite soft symbol estimate')
    indexes = numpy.searchsorted(constellation.thresholds, x_tilde, side='left')
    return constellation.array[indexes]


def fit_model(model, training: TrainingSet, ridge: float = DEFAULT_RIDGE, normalize: bool = False):
    """
    Solve the output weights of an initialised model on a training set, in place

    :return: the model
    """
    if normalize:
        model.scaler = InputScaler.fit(training.received)
    phi = model.hidden(training.received).T
    model.output_weights = train_output_weights(phi, training.symbols, ridge)
    return model


def train_receiver(link: LinkConfig, training: TrainingSet, hidden_size: int = DEFAULT_HIDDEN_SIZE,
                   ridge: float = DEFAULT_RIDGE, seed=0, activation: str = 'sigmoid',
                   normalize: bool = False) -> ElmModel:
    """
    Draw a random hidden layer and fit it on the training set
    """
    if training.received.shape[0] != link.n_pds or training.symbols.shape[0] != link.n_leds:
        raise DimensionMismatchError((link.n_leds, link.n_pds),
                                     (training.symbols.shape[0], training.received.shape[0]))
    weights, biases = init_elm(hidden_size, link.n_pds, seed)
    model = ElmModel(weights, biases, activation=activation, seed=seed)
    return fit_model(model, training, ridge, normalize)
