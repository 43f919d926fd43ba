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
Experiment configuration files, INI grammar::

    [experiment]    format (=1), master_seed, snr_grid_db, payload_symbols, payload_chunk,
                    training_length, receivers, workers
    [geometry]      room_length, room_width, room_height, vertical_distance,
                    led_rows, led_cols, led_spacing, pd_rows, pd_cols, pd_spacing
    [optics]        lambertian_order, fov_deg, refractive_index, pd_area
    [nonlinearity]  coefficients_file, iv_table, order
    [constellation] levels, v_min, v_max
    [elm]           hidden_size, ridge, activation, normalize
    [postdistorter] order

Every key is optional except ``format``; missing keys take the defaults of :py:class:`ExperimentConfig`.
"""
import configparser
import hashlib
import logging
import math
import os.path
from dataclasses import dataclass, fields, replace
from typing import Optional, Tuple

from .channel import ChannelGeometry, ChannelMatrix, OpticalParams, build_channel_matrix, grid_geometry
from .exception import ConfigError, PyVLCException
from .frontend import (DATA_DIR, DEFAULT_IV_TABLE, PamConstellation, PolynomialNonlinearity, fit_polynomial_iv,
                       read_iv_table)
from .receiver.elm import ACTIVATIONS
from .receiver.receiver_factory import RECEIVER_NAMES, ReceiverSettings

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1
DEFAULT_CONFIG = os.path.join(DATA_DIR, 'table1.cfg')
MIN_PAYLOAD_SYMBOLS = 1000
MAX_SEED = 2 ** 64


def snr_key(snr_db: float) -> int:
    """
    SNR component of the random stream keys: the SNR in millidecibels, wrapped to 32 bits
    """
    return round(snr_db * 1000) % 2 ** 32


# field name -> (section, key)
_LAYOUT = {
    'master_seed': ('experiment', 'master_seed'),
    'snr_grid_db': ('experiment', 'snr_grid_db'),
    'payload_symbols': ('experiment', 'payload_symbols'),
    'payload_chunk': ('experiment', 'payload_chunk'),
    'training_length': ('experiment', 'training_length'),
    'receivers': ('experiment', 'receivers'),
    'workers': ('experiment', 'workers'),
    'room_length': ('geometry', 'room_length'),
    'room_width': ('geometry', 'room_width'),
    'room_height': ('geometry', 'room_height'),
    'vertical_distance': ('geometry', 'vertical_distance'),
    'led_rows': ('geometry', 'led_rows'),
    'led_cols': ('geometry', 'led_cols'),
    'led_spacing': ('geometry', 'led_spacing'),
    'pd_rows': ('geometry', 'pd_rows'),
    'pd_cols': ('geometry', 'pd_cols'),
    'pd_spacing': ('geometry', 'pd_spacing'),
    'lambertian_order': ('optics', 'lambertian_order'),
    'fov_deg': ('optics', 'fov_deg'),
    'refractive_index': ('optics', 'refractive_index'),
    'pd_area': ('optics', 'pd_area'),
    'coefficients_file': ('nonlinearity', 'coefficients_file'),
    'iv_table': ('nonlinearity', 'iv_table'),
    'nonlinearity_order': ('nonlinearity', 'order'),
    'levels': ('constellation', 'levels'),
    'v_min': ('constellation', 'v_min'),
    'v_max': ('constellation', 'v_max'),
    'hidden_size': ('elm', 'hidden_size'),
    'ridge': ('elm', 'ridge'),
    'activation': ('elm', 'activation'),
    'normalize': ('elm', 'normalize'),
    'postdistorter_order': ('postdistorter', 'order'),
}


@dataclass(frozen=True)
class ExperimentConfig:
    """
    Everything a SER sweep or a constellation dump depends on. Defaults give the 3x3 LED / 8x8 PD room.
    """
    master_seed: int = 20200101
    snr_grid_db: Tuple[float, ...] = (20.0, 25.0, 30.0, 35.0, 40.0, 45.0, 50.0)
    payload_symbols: int = 100000
    payload_chunk: int = 10000
    training_length: int = 1000
    receivers: Tuple[str, ...] = RECEIVER_NAMES
    workers: int = 1

    room_length: float = 10.0
    room_width: float = 10.0
    room_height: float = 3.0
    vertical_distance: float = 2.15
    led_rows: int = 3
    led_cols: int = 3
    led_spacing: float = 1.0
    pd_rows: int = 8
    pd_cols: int = 8
    pd_spacing: float = 0.5

    lambertian_order: float = 1.0
    fov_deg: float = 62.0
    refractive_index: float = 1.5
    pd_area: float = 1e-4

    coefficients_file: Optional[str] = None
    iv_table: Optional[str] = None
    nonlinearity_order: int = 5

    levels: int = 4
    v_min: float = 1.7
    v_max: float = 2.0

    hidden_size: int = 128
    ridge: float = 1e-6
    activation: str = 'sigmoid'
    normalize: bool = False

    postdistorter_order: int = 5

    def __post_init__(self):
        object.__setattr__(self, 'snr_grid_db', tuple(float(snr) for snr in self.snr_grid_db))
        object.__setattr__(self, 'receivers', tuple(name.strip().upper() for name in self.receivers))
        if not 0 <= self.master_seed < MAX_SEED:
            raise ConfigError(f'master_seed must be an unsigned 64 bit integer : {self.master_seed}')
        if not self.snr_grid_db:
            raise ConfigError('empty snr_grid_db')
        if not all(math.isfinite(snr) for snr in self.snr_grid_db):
            raise ConfigError(f'non finite SNR in snr_grid_db : {self.snr_grid_db}')
        if len({snr_key(snr) for snr in self.snr_grid_db}) != len(self.snr_grid_db):
            raise ConfigError(f'SNR points less than 0.5 mdB apart share their random streams : {self.snr_grid_db}')
        if self.payload_symbols < MIN_PAYLOAD_SYMBOLS:
            raise ConfigError(f'payload_symbols must be >= {MIN_PAYLOAD_SYMBOLS} : {self.payload_symbols}')
        if self.payload_chunk < 1:
            raise ConfigError(f'payload_chunk must be >= 1 : {self.payload_chunk}')
        if self.training_length < 1:
            raise ConfigError(f'training_length must be >= 1 : {self.training_length}')
        if self.workers < 1:
            raise ConfigError(f'workers must be >= 1 : {self.workers}')
        if not self.receivers:
            raise ConfigError('no receiver to run')
        for name in self.receivers:
            if name not in RECEIVER_NAMES:
                raise ConfigError(f'unknown receiver {name}, expected one of {", ".join(RECEIVER_NAMES)}')
        if len(set(self.receivers)) != len(self.receivers):
            raise ConfigError(f'duplicated receiver in {self.receivers}')
        if self.activation not in ACTIVATIONS:
            raise ConfigError(f'unknown activation : {self.activation}')
        if self.hidden_size < 1 or self.nonlinearity_order < 1 or self.postdistorter_order < 1:
            raise ConfigError('hidden_size and polynomial orders must be >= 1')
        if self.ridge < 0:
            raise ConfigError(f'ridge must be >= 0 : {self.ridge}')
        for path in (self.coefficients_file, self.iv_table):
            if path is not None and not os.path.isfile(path):
                raise ConfigError(f'no such file : {path}')

    @staticmethod
    def from_text(text: str, base_dir: str = '.') -> 'ExperimentConfig':
        """
        Parse a configuration; relative file names are resolved against ``base_dir``

        :raise ConfigError: on a syntax error, an unknown key, a bad value or a missing referenced file
        """
        parser = configparser.ConfigParser(inline_comment_prefixes=(';', '#'))
        try:
            parser.read_string(text)
        except configparser.Error as error:
            raise ConfigError(f'malformed configuration : {error}') from None

        if parser.get('experiment', 'format', fallback=None) != str(FORMAT_VERSION):
            raise ConfigError(f'[experiment] format must be {FORMAT_VERSION}')
        known = {section_key for section_key in _LAYOUT.values()} | {('experiment', 'format')}
        for section in parser.sections():
            for key in parser[section]:
                if (section, key) not in known:
                    raise ConfigError(f'unknown key {key} in [{section}]')

        defaults = {f.name: f for f in fields(ExperimentConfig)}
        values = {}
        for name, (section, key) in _LAYOUT.items():
            raw = parser.get(section, key, fallback='').strip()
            if raw:
                values[name] = _convert(name, raw, defaults[name].default, section, key, parser)
        for name in ('coefficients_file', 'iv_table'):
            if name in values:
                values[name] = os.path.normpath(os.path.join(base_dir, values[name]))
        return ExperimentConfig(**values)

    @staticmethod
    def from_file(filename: str) -> 'ExperimentConfig':
        """
        :raise ConfigError: if the file does not exist or is not a valid configuration
        """
        try:
            with open(filename, 'r') as config_file:
                text = config_file.read()
        except OSError as error:
            raise ConfigError(f'can not read {filename} : {error.strerror}') from None
        config = ExperimentConfig.from_text(text, os.path.dirname(os.path.abspath(filename)))
        logger.debug('configuration %s loaded, digest %s', filename, config.digest())
        return config

    def with_seed(self, master_seed: int) -> 'ExperimentConfig':
        return replace(self, master_seed=master_seed)

    def to_text(self) -> str:
        """
        Canonical dump, every key written in a fixed order
        """
        sections = {}
        for f in fields(self):
            section, key = _LAYOUT[f.name]
            sections.setdefault(section, []).append((key, _format(getattr(self, f.name))))
        lines = []
        for section, items in sections.items():
            lines.append(f'[{section}]')
            if section == 'experiment':
                lines.append(f'format = {FORMAT_VERSION}')
            lines += [f'{key} = {value}' for key, value in items]
            lines.append('')
        return '\n'.join(lines)

    def digest(self) -> str:
        """
        :return: SHA-256 of the canonical dump, hex encoded
        """
        return hashlib.sha256(self.to_text().encode('utf-8')).hexdigest()

    def optical_params(self) -> OpticalParams:
        return OpticalParams(self.lambertian_order, math.radians(self.fov_deg), self.refractive_index, self.pd_area)

    def geometry(self) -> ChannelGeometry:
        return grid_geometry(self.led_rows, self.led_cols, self.led_spacing, self.pd_rows, self.pd_cols,
                             self.pd_spacing, self.room_length, self.room_width, self.room_height,
                             self.vertical_distance, self.optical_params())

    def channel(self) -> ChannelMatrix:
        return build_channel_matrix(self.geometry())

    def nonlinearity(self) -> PolynomialNonlinearity:
        """
        Coefficients file if given, otherwise the fit of the I-V table (the bundled one by default)
        """
        if self.coefficients_file is not None:
            return PolynomialNonlinearity.from_file(self.coefficients_file)
        table = self.iv_table if self.iv_table is not None else DEFAULT_IV_TABLE
        return fit_polynomial_iv(read_iv_table(table), self.nonlinearity_order)

    def constellation(self) -> PamConstellation:
        return PamConstellation.uniform(self.levels, self.v_min, self.v_max)

    def receiver_settings(self) -> ReceiverSettings:
        return ReceiverSettings(self.hidden_size, self.ridge, self.activation, self.normalize,
                                self.postdistorter_order)


def _format(value) -> str:
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'yes' if value else 'no'
    if isinstance(value, tuple):
        return ', '.join(_format(item) for item in value)
    if isinstance(value, float):
        return '%.17g' % value
    return str(value)


def _convert(name, raw, default, section, key, parser):
    try:
        if isinstance(default, bool):
            return parser.getboolean(section, key)
        if name == 'snr_grid_db':
            return tuple(float(token) for token in raw.split(',') if token.strip())
        if name == 'receivers':
            return tuple(token.strip() for token in raw.split(',') if token.strip())
        if isinstance(default, int):
            return int(raw)
        if isinstance(default, float):
            return float(raw)
        return raw
    except ValueError:
        raise ConfigError(f'bad value for {key} in [{section}] : {raw}') from None


def load_config(filename: Optional[str] = None, master_seed: Optional[int] = None) -> ExperimentConfig:
    """
    Load a configuration file (the bundled scenario if None) and apply a seed override

    :raise ConfigError: if the configuration is invalid or its scene can not be built
    """
    config = ExperimentConfig.from_file(filename if filename is not None else DEFAULT_CONFIG)
    if master_seed is not None:
        config = config.with_seed(master_seed)
    try:
        config.geometry()
        config.constellation()
    except PyVLCException as error:
        raise ConfigError(f'invalid scene : {error}') from None
    return config
