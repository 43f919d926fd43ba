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

import numpy

from ..exception import NotTrainedError
from ..frontend import LinkConfig, TrainingSet
from .circulant import CirculantElmModel, train_circulant_receiver
from .elm import DEFAULT_HIDDEN_SIZE, DEFAULT_RIDGE, ElmModel, detect, elm_infer, train_receiver
from .linear import (DEFAULT_POSTDISTORTER_ORDER, LinearEqualizer, Postdistorter, build_lmmse, build_zf,
                     equalize_and_postdistort, fit_postdistorter)


class Receiver:
    """
    Interface of a detector that is trained on a link then turns received frames into symbol decisions
    """

    #: name used in configuration files and result traces
    name = None

    def __init__(self):
        self._link = None

    def train(self, link: LinkConfig, training: TrainingSet, seed: Optional[int] = None):
        """
        Fit the receiver on a training set sent over the given link

        :param seed: seed of the random parts of the receiver, if any
        """
        raise NotImplementedError()

    def soft_output(self, received: numpy.ndarray) -> numpy.ndarray:
        """
        :param received: N_r x M received frame
        :return: N_t x M soft symbol estimates
        :raise NotTrainedError: if the receiver was not trained
        """
        raise NotImplementedError()

    def detect(self, received: numpy.ndarray) -> numpy.ndarray:
        """
        :return: N_t x M hard decisions on the constellation of the training link
        """
        return detect(self.soft_output(received), self.get_link().constellation)

    def get_link(self) -> LinkConfig:
        """
        Get the link the receiver was trained on

        :raise NotTrainedError: if the receiver was not trained
        """
        if self._link is None:
            raise NotTrainedError(f'{self.name} receiver is not trained')
        return self._link


class LinearReceiver(Receiver):
    """
    ZF or LMMSE equalizer designed with the exact channel matrix, optionally followed by a postdistorter
    """

    def __init__(self, kind: str, postdistort: bool = False, postdistorter_order: int = DEFAULT_POSTDISTORTER_ORDER):
        Receiver.__init__(self)
        if kind not in ('ZF', 'LMMSE'):
            raise ValueError(f'unknown linear equalizer : {kind}')
        self.kind = kind
        self.postdistort = postdistort
        self.postdistorter_order = postdistorter_order
        self.name = kind + '+PD' if postdistort else kind
        self.equalizer: Optional[LinearEqualizer] = None
        self.postdistorter: Optional[Postdistorter] = None

    def train(self, link: LinkConfig, training: TrainingSet, seed: Optional[int] = None):
        if self.kind == 'ZF':
            equalizer = build_zf(link.channel)
        else:
            equalizer = build_lmmse(link.channel, link.constellation, link.nonlinearity, link.noise_variance)
        postdistorter = None
        if self.postdistort:
            postdistorter = fit_postdistorter(equalizer(training.received), training.symbols,
                                              self.postdistorter_order)
        self.equalizer, self.postdistorter = equalizer, postdistorter
        self._link = link

    def soft_output(self, received: numpy.ndarray) -> numpy.ndarray:
        self.get_link()
        return equalize_and_postdistort(self.equalizer, self.postdistorter, received)


class ElmReceiver(Receiver):
    """
    Extreme learning machine with a dense random input layer
    """
    name = 'ELM'

    def __init__(self, hidden_size: int = DEFAULT_HIDDEN_SIZE, ridge: float = DEFAULT_RIDGE,
                 activation: str = 'sigmoid', normalize: bool = False):
        Receiver.__init__(self)
        self.hidden_size = hidden_size
        self.ridge = ridge
        self.activation = activation
        self.normalize = normalize
        self.model: Optional[ElmModel] = None

    def _fit(self, link, training, seed):
        return train_receiver(link, training, self.hidden_size, self.ridge, seed, self.activation, self.normalize)

    def train(self, link: LinkConfig, training: TrainingSet, seed: Optional[int] = None):
        self.model = self._fit(link, training, seed)
        self._link = link

    def soft_output(self, received: numpy.ndarray) -> numpy.ndarray:
        self.get_link()
        return elm_infer(self.model, received)


class CirculantElmReceiver(ElmReceiver):
    """
    Extreme learning machine whose input layer is a partial circulant applied with FFTs
    """
    name = 'CELM'

    def _fit(self, link, training, seed) -> CirculantElmModel:
        return train_circulant_receiver(link, training, self.hidden_size, self.ridge, seed, self.activation,
                                        self.normalize)
