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
from dataclasses import dataclass
from typing import Iterable, List, Optional

from ..exception import NoSuchReceiverError
from .elm import DEFAULT_HIDDEN_SIZE, DEFAULT_RIDGE
from .linear import DEFAULT_POSTDISTORTER_ORDER
from .receiver import CirculantElmReceiver, ElmReceiver, LinearReceiver, Receiver

RECEIVER_NAMES = ('ZF', 'LMMSE', 'ZF+PD', 'LMMSE+PD', 'ELM', 'CELM')


@dataclass(frozen=True)
class ReceiverSettings:
    """
    Parameters shared by the receivers of one experiment
    """
    hidden_size: int = DEFAULT_HIDDEN_SIZE
    ridge: float = DEFAULT_RIDGE
    activation: str = 'sigmoid'
    normalize: bool = False
    postdistorter_order: int = DEFAULT_POSTDISTORTER_ORDER


class ReceiverFactory:

    @staticmethod
    def available_receivers() -> List[str]:
        """
        :return: the receiver names understood by :py:meth:`create_receivers`
        """
        return list(RECEIVER_NAMES)

    @staticmethod
    def _create_receiver(name: str, settings: ReceiverSettings) -> Receiver:
        if name in ('ZF', 'LMMSE'):
            return LinearReceiver(name, False, settings.postdistorter_order)
        if name in ('ZF+PD', 'LMMSE+PD'):
            return LinearReceiver(name[:-3], True, settings.postdistorter_order)
        if name == 'ELM':
            return ElmReceiver(settings.hidden_size, settings.ridge, settings.activation, settings.normalize)
        if name == 'CELM':
            return CirculantElmReceiver(settings.hidden_size, settings.ridge, settings.activation,
                                        settings.normalize)
        raise NoSuchReceiverError(name)

    @staticmethod
    def create_receivers(names: Optional[Iterable[str]] = None,
                         settings: Optional[ReceiverSettings] = None) -> List[Receiver]:
        """
        Create untrained receivers from their names

        :param names: receiver names, in the order the receivers are returned (if None, every known receiver)
        :param settings: hidden layer and postdistorter parameters (if None, the defaults)
        :return: a list of untrained receivers
        :raise NoSuchReceiverError: if a name does not match any receiver
        """
        if names is None:
            names = RECEIVER_NAMES
        if settings is None:
            settings = ReceiverSettings()
        return [ReceiverFactory._create_receiver(name.strip().upper(), settings) for name in names]
