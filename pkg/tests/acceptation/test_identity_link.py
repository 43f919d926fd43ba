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
Every receiver on a square identity channel with linear LEDs, where detection must be exact
"""
import numpy
import pytest

from pyVLC.frontend import draw_symbol_frame, make_training_set, transmit_frame
from pyVLC.receiver import RECEIVER_NAMES, ReceiverFactory, ReceiverSettings
from ..utils.links import PAM4, identity_link

SETTINGS = ReceiverSettings(normalize=True, postdistorter_order=3)


@pytest.fixture(scope='module')
def link():
    return identity_link(n_leds=4, snr_db=60.0, seed=3)


@pytest.fixture(scope='module')
def training(link):
    return make_training_set(link, 1000, numpy.random.default_rng(30), numpy.random.default_rng(31))


@pytest.fixture(scope='module')
def payload(link):
    symbols = draw_symbol_frame(4, 10000, PAM4, numpy.random.default_rng(32))
    return symbols, transmit_frame(symbols, link, numpy.random.default_rng(33))


@pytest.mark.parametrize('name', RECEIVER_NAMES)
def test_receiver_detect_every_payload_symbol(name, link, training, payload):
    receiver = ReceiverFactory.create_receivers([name], SETTINGS)[0]
    receiver.train(link, training, seed=5)
    symbols, received = payload
    assert numpy.array_equal(receiver.detect(received), symbols)


def test_zero_forcing_of_a_noiseless_frame_give_back_the_symbols(link, training, payload):
    receiver = ReceiverFactory.create_receivers(['ZF'])[0]
    receiver.train(link, training)
    symbols, _ = payload
    soft = receiver.soft_output(transmit_frame(symbols, link, noise_variance=0.0))
    assert numpy.max(numpy.abs(soft - symbols)) <= 1e-10
