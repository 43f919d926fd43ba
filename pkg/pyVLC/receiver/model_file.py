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
Text format for trained ELM models::

    format=1
    variant=elm            (or celm)
    hidden_size=128
    input_size=64
    output_size=9
    seed=123               (or none)
    activation=sigmoid
    [input_weights]        (elm, L rows) or [generator] (celm, one row)
    [biases]
    [output_weights]       (L rows)
    [scaler_mean]          (only for normalized models)
    [scaler_scale]

Floats are written with 17 significant digits so a saved model reloads bit for bit.
"""
import logging
from typing import Dict, List, Union

import numpy

from ..exception import PyVLCException, NotTrainedError
from .circulant import CirculantElmModel, from_generator
from .elm import ACTIVATIONS, ElmModel, InputScaler

logger = logging.getLogger(__name__)

FORMAT_VERSION = '1'
_HEADER_KEYS = ('variant', 'hidden_size', 'input_size', 'output_size', 'seed', 'activation')

Model = Union[ElmModel, CirculantElmModel]


class ModelFileError(PyVLCException):
    """
    Exception raised when a model file can not be read back into a model
    """

    def __init__(self, filename: str, reason: str):
        PyVLCException.__init__(self, f'{filename} : {reason}')
        #: the offending file
        self.filename = filename


def _rows(matrix: numpy.ndarray) -> List[str]:
    return [' '.join('%.17g' % value for value in row) for row in numpy.atleast_2d(matrix)]


def model_to_text(model: Model) -> str:
    """
    :raise NotTrainedError: if the model has no output weights
    """
    if not model.is_trained:
        raise NotTrainedError(f'{model.variant} model has no output weights')
    seed = 'none' if model.seed is None else str(int(model.seed))
    lines = [f'format={FORMAT_VERSION}', f'variant={model.variant}', f'hidden_size={model.hidden_size}',
             f'input_size={model.input_size}', f'output_size={model.output_weights.shape[1]}',
             f'seed={seed}', f'activation={model.activation}']
    if model.variant == 'elm':
        lines += ['[input_weights]'] + _rows(model.input_weights)
    else:
        lines += ['[generator]'] + _rows(model.generator)
    lines += ['[biases]'] + _rows(model.biases)
    lines += ['[output_weights]'] + _rows(model.output_weights)
    if model.scaler is not None:
        lines += ['[scaler_mean]'] + _rows(model.scaler.mean)
        lines += ['[scaler_scale]'] + _rows(model.scaler.scale)
    return '\n'.join(lines) + '\n'


def save_model(model: Model, filename: str):
    """
    Write a trained model to a file, overwriting it
    """
    with open(filename, 'w') as model_file:
        model_file.write(model_to_text(model))
    logger.info('%s model saved to %s', model.variant, filename)


def _parse(filename: str, text: str):
    header: Dict[str, str] = {}
    sections: Dict[str, List[List[float]]] = {}
    current = None
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        if line.startswith('[') and line.endswith(']'):
            current = line[1:-1]
            sections[current] = []
        elif current is None:
            key, sep, value = line.partition('=')
            if not sep:
                raise ModelFileError(filename, f'line {number} is not a key=value pair')
            header[key.strip()] = value.strip()
        else:
            try:
                sections[current].append([float(token) for token in line.split()])
            except ValueError:
                raise ModelFileError(filename, f'line {number} is not a row of numbers') from None
    return header, sections


def _matrix(filename, sections, name, shape) -> numpy.ndarray:
    if name not in sections:
        raise ModelFileError(filename, f'missing [{name}] section')
    try:
        matrix = numpy.asarray(sections[name], dtype=float)
    except ValueError:
        raise ModelFileError(filename, f'ragged [{name}] section') from None
    if matrix.size != numpy.prod(shape):
        raise ModelFileError(filename, f'[{name}] has {matrix.size} values, expected shape {shape}')
    return matrix.reshape(shape)


def model_from_text(text: str, filename: str = '<string>') -> Model:
    header, sections = _parse(filename, text)
    if header.get('format') != FORMAT_VERSION:
        raise ModelFileError(filename, f'unsupported format {header.get("format")}')
    for key in _HEADER_KEYS:
        if key not in header:
            raise ModelFileError(filename, f'missing {key}')
    try:
        hidden_size = int(header['hidden_size'])
        input_size = int(header['input_size'])
        output_size = int(header['output_size'])
        seed = None if header['seed'] == 'none' else int(header['seed'])
    except ValueError as error:
        raise ModelFileError(filename, str(error)) from None
    activation = header['activation']
    if activation not in ACTIVATIONS:
        raise ModelFileError(filename, f'unknown activation {activation}')

    biases = _matrix(filename, sections, 'biases', (hidden_size,))
    output_weights = _matrix(filename, sections, 'output_weights', (hidden_size, output_size))
    variant = header['variant']
    if variant == 'elm':
        weights = _matrix(filename, sections, 'input_weights', (hidden_size, input_size))
        model = ElmModel(weights, biases, activation, seed=seed)
    elif variant == 'celm':
        generator = _matrix(filename, sections, 'generator', (hidden_size,))
        try:
            model = from_generator(generator, biases, input_size, activation, seed)
        except PyVLCException as error:
            raise ModelFileError(filename, str(error)) from None
    else:
        raise ModelFileError(filename, f'unknown variant {variant}')
    model.output_weights = output_weights
    if 'scaler_mean' in sections:
        model.scaler = InputScaler(_matrix(filename, sections, 'scaler_mean', (input_size,)),
                                   _matrix(filename, sections, 'scaler_scale', (input_size,)))
    return model


def load_model(filename: str) -> Model:
    """
    :raise ModelFileError: if the file is not a valid model file
    :raise OSError: if the file can not be read
    """
    with open(filename, 'r') as model_file:
        return model_from_text(model_file.read(), filename)
