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
Line-of-sight optical MIMO channel between a ceiling LED array and a PD array (Lambertian model)
"""
import math
from dataclasses import dataclass, field, replace
from typing import List, Optional, Sequence, Tuple

import numpy

from .exception import PyVLCException

Point = Tuple[float, float, float]

DOWN = (0.0, 0.0, -1.0)
UP = (0.0, 0.0, 1.0)

_UNIT_NORM_TOLERANCE = 1e-12


class GeometryError(PyVLCException):
    """
    Exception raised when optical parameters or a room layout violate their invariants
    """


class AngleDomainError(PyVLCException):
    """
    Exception raised when an emission angle is outside [0, pi/2]
    """

    def __init__(self, angle: float):
        """
        :param angle: the rejected angle, in radians
        """
        PyVLCException.__init__(self, f'angle {angle} rad outside [0, pi/2]')
        #: the rejected angle, in radians
        self.angle = angle


class SingularityError(GeometryError):
    """
    Exception raised when a gain formula divides by zero (zero field of view, LED and PD at the same place)
    """


@dataclass(frozen=True)
class OpticalParams:
    """
    :var lambda_order: Lambertian emission order
    :var phi_c: receiver field of view half-angle, in radians
    :var gamma: concentrator refractive index
    :var a_pd: photodiode physical area, in m²
    """
    lambda_order: float = 1.0
    phi_c: float = math.radians(62.0)
    gamma: float = 1.5
    a_pd: float = 1e-4

    def __post_init__(self):
        if not self.lambda_order > 0:
            raise GeometryError(f'lambertian order must be positive : {self.lambda_order}')
        if self.phi_c == 0:
            raise SingularityError('zero field of view')
        if not 0 < self.phi_c <= math.pi / 2:
            raise GeometryError(f'field of view must be in (0, pi/2] : {self.phi_c}')
        if not self.gamma >= 1:
            raise GeometryError(f'refractive index must be >= 1 : {self.gamma}')
        if not self.a_pd > 0:
            raise GeometryError(f'photodiode area must be positive : {self.a_pd}')


def _check_orientations(orientations, count, default, what):
    if orientations is None:
        return [default] * count
    if len(orientations) != count:
        raise GeometryError(f'{len(orientations)} {what} orientations for {count} positions')
    for vector in orientations:
        if abs(numpy.linalg.norm(vector) - 1.0) > _UNIT_NORM_TOLERANCE:
            raise GeometryError(f'{what} orientation is not a unit vector : {vector}')
    return [tuple(float(c) for c in vector) for vector in orientations]


@dataclass(frozen=True)
class ChannelGeometry:
    """
    Positions (meters) and unit orientations of the transmitting LEDs and receiving PDs.
    LEDs face down and PDs face up unless orientations are given.
    """
    led_positions: Sequence[Point]
    pd_positions: Sequence[Point]
    params: OpticalParams = field(default_factory=OpticalParams)
    led_orientations: Optional[Sequence[Point]] = None
    pd_orientations: Optional[Sequence[Point]] = None

    def __post_init__(self):
        if len(self.led_positions) < 1 or len(self.pd_positions) < 1:
            raise GeometryError('a channel needs at least one LED and one PD')
        object.__setattr__(self, 'led_positions', [tuple(float(c) for c in p) for p in self.led_positions])
        object.__setattr__(self, 'pd_positions', [tuple(float(c) for c in p) for p in self.pd_positions])
        object.__setattr__(self, 'led_orientations',
                           _check_orientations(self.led_orientations, len(self.led_positions), DOWN, 'LED'))
        object.__setattr__(self, 'pd_orientations',
                           _check_orientations(self.pd_orientations, len(self.pd_positions), UP, 'PD'))

        receiving_plane = max(p[2] for p in self.pd_positions)
        for led in self.led_positions:
            if led[2] <= receiving_plane:
                raise GeometryError(f'LED {led} is not above the receiving plane')

    @property
    def n_leds(self) -> int:
        return len(self.led_positions)

    @property
    def n_pds(self) -> int:
        return len(self.pd_positions)

    def mirrored(self, axis: int = 1) -> 'ChannelGeometry':
        """
        :return: the same scene reflected through the plane ``coordinate[axis] == 0``
        """
        def flip(points):
            return [tuple(-c if i == axis else c for i, c in enumerate(p)) for p in points]
        return replace(self, led_positions=flip(self.led_positions), pd_positions=flip(self.pd_positions),
                       led_orientations=flip(self.led_orientations), pd_orientations=flip(self.pd_orientations))


def _grid(rows: int, cols: int, spacing: float, center_x: float, center_y: float, height: float) -> List[Point]:
    xs = (numpy.arange(cols) - (cols - 1) / 2.0) * spacing + center_x
    ys = (numpy.arange(rows) - (rows - 1) / 2.0) * spacing + center_y
    return [(float(x), float(y), float(height)) for y in ys for x in xs]


def grid_geometry(led_rows: int = 3, led_cols: int = 3, led_spacing: float = 1.0,
                  pd_rows: int = 8, pd_cols: int = 8, pd_spacing: float = 0.5,
                  room_length: float = 10.0, room_width: float = 10.0, room_height: float = 3.0,
                  vertical_distance: float = 2.15, params: Optional[OpticalParams] = None) -> ChannelGeometry:
    """
    Build a ceiling LED grid and a PD grid both centered on the room center.
    Defaults reproduce the 3x3 LED / 8x8 PD room with a 2.15 m drop.

    Grids are row major: index ``row * cols + col``.
    """
    if vertical_distance <= 0 or vertical_distance > room_height:
        raise GeometryError(f'vertical distance {vertical_distance} does not fit a {room_height} m room')
    center_x, center_y = room_length / 2.0, room_width / 2.0
    leds = _grid(led_rows, led_cols, led_spacing, center_x, center_y, room_height)
    pds = _grid(pd_rows, pd_cols, pd_spacing, center_x, center_y, room_height - vertical_distance)
    return ChannelGeometry(leds, pds, params if params is not None else OpticalParams())


class ChannelMatrix:
    """
    N_r x N_t matrix of LOS DC gains, ``gains[q][p]`` couples LED p to PD q
    """

    def __init__(self, gains: numpy.ndarray):
        gains = numpy.asarray(gains, dtype=float)
        if gains.ndim != 2:
            raise GeometryError(f'channel matrix must be 2D, got shape {gains.shape}')
        if not numpy.all(numpy.isfinite(gains)) or numpy.any(gains < 0):
            raise GeometryError('channel gains must be finite and non negative')
        self.gains = gains

    @property
    def n_pds(self) -> int:
        return self.gains.shape[0]

    @property
    def n_leds(self) -> int:
        return self.gains.shape[1]

    def to_csv(self) -> str:
        """
        :return: row major CSV text, header ``pd_index,led_0,...,led_{Nt-1}``
        """
        header = 'pd_index,' + ','.join(f'led_{p}' for p in range(self.n_leds))
        lines = [header]
        for q, row in enumerate(self.gains):
            lines.append(f'{q},' + ','.join('%.17g' % value for value in row))
        return '\n'.join(lines) + '\n'


def lambertian_radiant_intensity(phi: float, lambda_order: float) -> float:
    """
    Radiant intensity of a Lambertian emitter, [(lambda + 1) / 2 pi] cos^lambda(phi), in 1/sr

    :raise AngleDomainError: if phi is outside [0, pi/2]
    """
    if not 0 <= phi <= math.pi / 2:
        raise AngleDomainError(phi)
    if lambda_order <= 0:
        raise GeometryError(f'lambertian order must be positive : {lambda_order}')
    # cos(pi/2) is 6e-17 in floating point
    cosine = 0.0 if phi == math.pi / 2 else math.cos(phi)
    return (lambda_order + 1) / (2 * math.pi) * cosine ** lambda_order


def effective_collection_area(params: OpticalParams) -> float:
    """
    Collection area of a PD behind its concentrator, gamma² A_PD / sin²(phi_c), in m²

    :raise SingularityError: if the field of view is zero
    """
    sine = math.sin(params.phi_c)
    if sine == 0:
        raise SingularityError('zero field of view')
    return params.gamma ** 2 * params.a_pd / sine ** 2


def _angle_between(u, v) -> float:
    cosine = numpy.dot(u, v) / (numpy.linalg.norm(u) * numpy.linalg.norm(v))
    return math.acos(min(1.0, max(-1.0, float(cosine))))


def los_dc_gain(led_index: int, pd_index: int, geometry: ChannelGeometry) -> float:
    """
    DC gain of the direct path from one LED to one PD

    The gain is zero when the incidence angle exceeds the field of view, an incidence
    exactly at the field of view still collects light. A PD behind the LED plane
    receives nothing.

    :raise SingularityError: if the LED and the PD are at the same position
    """
    led = numpy.asarray(geometry.led_positions[led_index])
    pd = numpy.asarray(geometry.pd_positions[pd_index])
    ray = pd - led
    distance = float(numpy.linalg.norm(ray))
    if distance == 0:
        raise SingularityError(f'LED {led_index} and PD {pd_index} are at the same position')

    incidence = _angle_between(geometry.pd_orientations[pd_index], -ray)
    if incidence > geometry.params.phi_c:
        return 0.0
    emission = _angle_between(geometry.led_orientations[led_index], ray)
    if emission > math.pi / 2:
        return 0.0

    area = effective_collection_area(geometry.params)
    intensity = lambertian_radiant_intensity(emission, geometry.params.lambda_order)
    return area / distance ** 2 * intensity * math.cos(incidence)


def build_channel_matrix(geometry: ChannelGeometry) -> ChannelMatrix:
    """
    :return: the N_r x N_t matrix H with ``H[q][p] = los_dc_gain(p, q)``
    """
    gains = numpy.empty((geometry.n_pds, geometry.n_leds))
    for q in range(geometry.n_pds):
        for p in range(geometry.n_leds):
            gains[q, p] = los_dc_gain(p, q, geometry)
    return ChannelMatrix(gains)
