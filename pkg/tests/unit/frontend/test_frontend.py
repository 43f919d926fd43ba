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
from pyVLC.exception import DimensionMismatchError, FittingError
from pyVLC.frontend import (CalibrationError, ConstellationError, LinkConfig, PamConstellation,
                            PolynomialNonlinearity, TrainingSet, apply_led_nonlinearity, calibrate_noise_variance,
                            default_nonlinearity, draw_symbol_frame, fit_polynomial_iv, make_training_set,
                            read_iv_table, transmit_frame)
from ...utils.links import PAM4, identity_link, linear_link, mixing_link


@pytest.fixture
def constant_link():
    """
    one LED, one PD, levels 1 and 2 both mapped to 2 by the LED curve 3x - x²
    """
    return LinkConfig(ChannelMatrix([[1.0]]), PolynomialNonlinearity((3.0, -1.0)), PamConstellation((1.0, 2.0)),
                      0.0)


#################
# CONSTELLATION #
#################
def test_uniform_4_pam_levels_are_evenly_spaced():
    assert PAM4.levels == pytest.approx((1.7, 1.8, 1.9, 2.0))
    assert PAM4.thresholds == pytest.approx([1.75, 1.85, 1.95])


def test_mean_and_variance_of_two_levels():
    constellation = PamConstellation((1.0, 2.0))
    assert constellation.mean == 1.5
    assert constellation.variance == 0.25


def test_create_constellation_with_descending_levels_raise_ConstellationError():
    with pytest.raises(ConstellationError):
        PamConstellation((2.0, 1.0))


def test_create_constellation_with_one_level_raise_ConstellationError():
    with pytest.raises(ConstellationError):
        PamConstellation((1.0,))


def test_create_constellation_with_zero_level_raise_ConstellationError():
    with pytest.raises(ConstellationError):
        PamConstellation((0.0, 1.0))


##################
# LED POLYNOMIAL #
##################
def test_identity_curve_is_passthrough():
    x = numpy.array([[1.7, 2.0], [1.8, 1.9]])
    assert numpy.array_equal(apply_led_nonlinearity(x, PolynomialNonlinearity((1.0,))), x)


def test_curve_has_no_constant_term():
    assert apply_led_nonlinearity(0.0, PolynomialNonlinearity((0.3, 0.2, 0.1))) == 0.0


def test_curve_is_applied_elementwise():
    curve = PolynomialNonlinearity((3.0, -1.0))
    assert list(curve(numpy.array([1.0, 2.0, 3.0]))) == [2.0, 2.0, 0.0]


def test_non_finite_drive_voltage_raise_ValueError():
    with pytest.raises(ValueError):
        apply_led_nonlinearity(numpy.array([1.0, numpy.nan]), PolynomialNonlinearity((1.0,)))


def test_create_curve_with_only_zero_coefficients_raise_FittingError():
    with pytest.raises(FittingError):
        PolynomialNonlinearity((0.0, 0.0))


def test_curve_coefficients_text_read_back_bit_exact(fs):
    curve = PolynomialNonlinearity((0.1, -0.2 / 3, 1e-7))
    fs.create_file('/coeffs.txt', contents=curve.to_text())
    assert PolynomialNonlinearity.from_file('/coeffs.txt') == curve


###########
# I-V FIT #
###########
def test_fit_exact_cubic_samples_recover_coefficients():
    truth = PolynomialNonlinearity((0.5, -0.1, 0.01))
    voltages = numpy.linspace(1.0, 2.0, 10)
    fitted = fit_polynomial_iv(zip(voltages, truth(voltages)), 3)
    assert fitted.coeffs == pytest.approx(truth.coeffs, rel=1e-8)


def test_fit_with_fewer_distinct_voltages_than_order_raise_FittingError():
    with pytest.raises(FittingError):
        fit_polynomial_iv([(1.0, 1.0), (1.0, 1.0), (2.0, 2.0)], 3)


def test_fit_with_only_zero_voltages_raise_FittingError():
    with pytest.raises(FittingError):
        fit_polynomial_iv([(0.0, 0.0), (0.0, 0.0)], 1)


def test_read_bundled_iv_table_return_sixteen_samples():
    table = read_iv_table()
    assert table.shape == (16, 2)
    assert table[0] == pytest.approx([1.70, 0.0054125])
    assert table[-1] == pytest.approx([2.00, 0.0192125])


def test_read_iv_table_skip_comments_and_header(fs):
    fs.create_file('/iv.csv', contents='# measured\nvolts,amps\n1.0,0.1\n2.0,0.3\n')
    assert read_iv_table('/iv.csv').tolist() == [[1.0, 0.1], [2.0, 0.3]]


def test_default_curve_follows_the_bundled_table():
    curve = default_nonlinearity()
    table = read_iv_table()
    assert curve.order == 5
    assert curve(table[:, 0]) == pytest.approx(table[:, 1], abs=1e-5)


def test_default_curve_is_increasing_on_a_fine_voltage_grid():
    volts = numpy.linspace(1.7, 2.0, 3001)
    assert numpy.all(numpy.diff(default_nonlinearity()(volts)) > 0)


def test_default_curve_is_increasing_and_compressive_over_the_levels():
    curve = default_nonlinearity()
    steps = numpy.diff(curve(PAM4.array))
    assert numpy.all(steps > 0)
    assert steps[0] > steps[1] > steps[2]


###############
# CALIBRATION #
###############
def test_calibration_of_constant_received_signal_at_0_db_is_its_power(constant_link):
    assert calibrate_noise_variance(constant_link, 100) == pytest.approx(4.0)


def test_calibration_at_10_db_is_a_tenth_of_the_power():
    link = LinkConfig(ChannelMatrix([[1.0]]), PolynomialNonlinearity((3.0, -1.0)), PamConstellation((1.0, 2.0)),
                      10.0)
    assert link.noise_variance == pytest.approx(0.4)


def test_calibration_of_dark_channel_raise_CalibrationError():
    link = LinkConfig(ChannelMatrix([[0.0]]), PolynomialNonlinearity((1.0,)), PamConstellation((1.0, 2.0)), 20.0)
    with pytest.raises(CalibrationError):
        link.noise_variance


def test_create_link_with_infinite_snr_raise_CalibrationError():
    with pytest.raises(CalibrationError):
        LinkConfig(ChannelMatrix([[1.0]]), PolynomialNonlinearity((1.0,)), PamConstellation((1.0, 2.0)),
                   float('inf'))


############
# TRANSMIT #
############
def test_symbol_frame_only_holds_constellation_levels():
    symbols = draw_symbol_frame(4, 1000, PAM4, numpy.random.default_rng(1))
    assert symbols.shape == (4, 1000)
    assert set(numpy.unique(symbols)) == set(PAM4.levels)


def test_noiseless_transmit_is_channel_times_curve(mixing_link):
    symbols = draw_symbol_frame(4, 50, PAM4, numpy.random.default_rng(2))
    received = transmit_frame(symbols, mixing_link, noise_variance=0.0)
    assert numpy.array_equal(received, mixing_link.channel.gains @ symbols)


def test_transmit_with_wrong_led_count_raise_DimensionMismatchError(linear_link):
    with pytest.raises(DimensionMismatchError):
        transmit_frame(numpy.ones((3, 10)), linear_link)


def test_noise_has_the_calibrated_variance():
    link = identity_link(snr_db=10.0)
    symbols = draw_symbol_frame(4, 50000, PAM4, numpy.random.default_rng(4))
    noise = transmit_frame(symbols, link, numpy.random.default_rng(5)) - symbols
    assert numpy.var(noise) == pytest.approx(link.noise_variance, rel=0.02)


def test_training_set_columns_pair_symbols_with_their_received_vector(linear_link):
    training = make_training_set(linear_link, 20, numpy.random.default_rng(6), numpy.random.default_rng(7))
    assert training.length == 20
    assert numpy.max(numpy.abs(training.received - training.symbols)) < 0.05


def test_create_training_set_with_different_lengths_raise_DimensionMismatchError():
    with pytest.raises(DimensionMismatchError):
        TrainingSet(numpy.ones((2, 10)), numpy.ones((3, 11)))


def test_training_set_csv_has_one_line_per_instant():
    training = TrainingSet(numpy.array([[1.5, 1.75]]), numpy.array([[0.5, 0.25], [1.0, 2.0]]))
    assert training.to_csv().splitlines() == ['m,x_0,r_0,r_1', '0,1.5,0.5,1', '1,1.75,0.25,2']
