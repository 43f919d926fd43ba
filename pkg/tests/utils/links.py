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
import numpy
import pytest

from pyVLC.channel import ChannelMatrix
from pyVLC.frontend import LinkConfig, PamConstellation, PolynomialNonlinearity

IDENTITY_CURVE = PolynomialNonlinearity((1.0,))
PAM4 = PamConstellation.uniform(4, 1.7, 2.0)

SMALL_CONFIG = """
[experiment]
format = 1
master_seed = 7
snr_grid_db = 30, 40
payload_symbols = 1000
payload_chunk = 400
training_length = 300
receivers = ZF, LMMSE+PD, ELM, CELM

[elm]
hidden_size = 128
normalize = yes
"""


def identity_link(n_leds=4, snr_db=60.0, seed=0):
    """
    square identity channel and linear LEDs
    """
    return LinkConfig(ChannelMatrix(numpy.eye(n_leds)), IDENTITY_CURVE, PAM4, snr_db, seed)


@pytest.fixture
def linear_link():
    return identity_link()


@pytest.fixture
def mixing_link():
    """
    8 PDs, 4 LEDs, positive full rank channel and linear LEDs
    """
    gains = numpy.random.default_rng(3).uniform(0.1, 1.0, size=(8, 4))
    return LinkConfig(ChannelMatrix(gains), IDENTITY_CURVE, PAM4, 60.0, 0)
