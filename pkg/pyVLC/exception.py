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


class PyVLCException(Exception):
    """
    pyVLC exceptions parent class
    """


class DimensionMismatchError(PyVLCException):
    """
    Exception raised when two arrays handed to the same operation have incompatible shapes
    """

    def __init__(self, expected, got):
        """
        :param expected: shape (or size) the operation needed
        :param got: shape (or size) it received
        """
        PyVLCException.__init__(self, f'expected {expected}, got {got}')
        self.expected = expected
        self.got = got


class FittingError(PyVLCException):
    """
    Exception raised when a least squares polynomial fit has not enough independent samples
    """


class NotTrainedError(PyVLCException):
    """
    Exception raised when a receiver or a model is used for inference before its output weights were solved
    """


class ConfigError(PyVLCException):
    """
    Exception raised when an experiment configuration is malformed or references a missing file
    """


class NoSuchReceiverError(PyVLCException):
    """
    Exception raised when a receiver name does not match any known receiver
    """

    def __init__(self, receiver_name: str):
        """
        :param receiver_name: the unknown receiver name
        """
        PyVLCException.__init__(self, f'no such receiver : {receiver_name}')
        #: the unknown receiver name
        self.receiver_name = receiver_name
