import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from mmwsim import (FrequencyRangeWarning, LinkGeometry, PropagationParams,
                    ShadowDraws, draw_shadows, fspl, link_loss,
                    los_probability, material_loss, o2i_loss,
                    oxygen_absorption, pl_los_ci, pl_nlos_abg)

# expected values frozen from an independent high-precision evaluation of the
# model formulas (mpmath script, 40 digits)
FSPL_2GHZ = 38.46838314
FSPL_30GHZ = 61.99020832
CI_30GHZ_100M = 103.9902083
CI_2GHZ_100M_X5 = 85.46838314
ABG_30GHZ_100M = 124.4626827
ABG_2GHZ_100M = 99.41193891
PLOS_36 = 0.6839397206
PLOS_180 = 0.1060641523
O2I28_LOW = 17.82878745
O2I28_HIGH = 37.94901959
O2I28_COMBINED = 34.98075913


def test_fspl_values():
    assert_allclose(fspl(2e9), FSPL_2GHZ, atol=1e-6)
    assert_allclose(fspl(30e9), FSPL_30GHZ, atol=1e-6)
    # argument of the log is 1 at f = c / (4 pi)
    assert_allclose(fspl(299792458.0 / (4.0 * math.pi)), 0.0, atol=1e-9)


def test_fspl_errors():
    with pytest.raises(ValueError):
        fspl(0.0)
    with pytest.raises(ValueError):
        fspl(-1e9)


def test_ci_los_values():
    assert_allclose(pl_los_ci(30e9, 100.0), CI_30GHZ_100M, atol=1e-6)
    assert_allclose(pl_los_ci(2e9, 100.0, 5.0), CI_2GHZ_100M_X5, atol=1e-6)
    # log term vanishes at the 1 m reference distance
    assert_allclose(pl_los_ci(17e9, 1.0), fspl(17e9), atol=1e-12)


def test_ci_los_reference_distance_error():
    with pytest.raises(ValueError):
        pl_los_ci(30e9, 0.5)


def test_abg_nlos_values():
    assert_allclose(pl_nlos_abg(30.0, 100.0), ABG_30GHZ_100M, atol=1e-6)
    assert_allclose(pl_nlos_abg(2.0, 100.0), ABG_2GHZ_100M, atol=1e-6)
    # both log terms vanish, leaving beta
    assert_allclose(pl_nlos_abg(1.0, 1.0), 22.4, atol=1e-12)


def test_abg_frequency_slope_exact(rng):
    # pl(f2) - pl(f1) = 10 * gamma * log10(f2 / f1) for any distance
    d = rng.uniform(1.0, 2000.0, size=1000)
    diff = pl_nlos_abg(100.0, d) - pl_nlos_abg(2.0, d)
    assert_allclose(diff, 21.3 * math.log10(50.0), atol=1e-9)


def test_frequency_validity_warning():
    with pytest.warns(FrequencyRangeWarning):
        pl_los_ci(0.2e9, 10.0)
    with pytest.warns(FrequencyRangeWarning):
        pl_nlos_abg(150.0, 10.0)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("error")
        pl_los_ci(100e9, 10.0)  # boundary of the validity range is fine
        pl_nlos_abg(0.5, 10.0)


def test_monotonic_in_distance_and_frequency(rng):
    d = np.sort(rng.uniform(1.0, 5000.0, size=1000))
    for fn in (lambda dd: pl_los_ci(30e9, dd), lambda dd: pl_nlos_abg(30.0, dd)):
        pl = fn(d)
        assert np.all(np.diff(pl) > 0)
    f = np.sort(rng.uniform(0.5, 100.0, size=1000))
    assert np.all(np.diff(pl_los_ci(f * 1e9, 100.0)) > 0)
    assert np.all(np.diff(pl_nlos_abg(f, 100.0)) > 0)


def test_los_probability_values():
    assert los_probability(10.0) == 1.0
    assert_allclose(los_probability(36.0), PLOS_36, atol=1e-6)
    assert_allclose(los_probability(180.0), PLOS_180, atol=1e-6)


def test_los_probability_shape(rng):
    d = rng.uniform(0.0, 18.0, size=1000)
    assert np.all(los_probability(d) == 1.0)
    d = np.sort(rng.uniform(18.0, 5000.0, size=1000))
    p = los_probability(d)
    assert np.all(np.diff(p) <= 1e-15)
    assert los_probability(1e6) < 1e-4
    with pytest.raises(ValueError):
        los_probability(-1.0)


def test_material_loss():
    assert_allclose(material_loss("glass", 28.0), 7.6, atol=1e-12)
    assert_allclose(material_loss("concrete", 28.0), 117.0, atol=1e-12)
    assert_allclose(material_loss("irr_glass", 0.0), 23.0, atol=1e-12)
    with pytest.raises(ValueError):
        material_loss("wood", 28.0)


def test_o2i_values():
    assert_allclose(o2i_loss(28.0, 0.0), O2I28_COMBINED, atol=1e-6)
    # the in-building term adds exactly 0.5 dB/m
    assert_allclose(o2i_loss(28.0, 10.0) - o2i_loss(28.0, 0.0), 5.0, atol=1e-12)


def test_o2i_branches_against_oracle():
    # reproduce the two wall models independently and combine them by hand
    l_g, l_irr, l_c = 7.6, 31.4, 117.0
    low = 5 - 10 * math.log10(0.3 * 10 ** (-l_g / 10) + 0.7 * 10 ** (-l_c / 10))
    high = 5 - 10 * math.log10(0.7 * 10 ** (-l_irr / 10) + 0.3 * 10 ** (-l_c / 10))
    assert_allclose(low, O2I28_LOW, atol=1e-6)
    assert_allclose(high, O2I28_HIGH, atol=1e-6)
    combined = 10 * math.log10(0.5 * 10 ** (low / 10) + 0.5 * 10 ** (high / 10))
    assert_allclose(o2i_loss(28.0, 0.0), combined, atol=1e-9)


def test_o2i_composite_between_branches(rng):
    # with random shadow draws the composite sits strictly between the noisy
    # branches and within 3.02 dB of the larger one
    f = rng.uniform(0.5, 100.0, size=1000)
    x_low = rng.normal(0, math.sqrt(3.0), size=1000)
    x_high = rng.normal(0, math.sqrt(5.0), size=1000)
    for fi, xl, xh in zip(f[:200], x_low[:200], x_high[:200]):
        l_g = material_loss("glass", fi)
        l_irr = material_loss("irr_glass", fi)
        l_c = material_loss("concrete", fi)
        low = 5 - 10 * math.log10(0.3 * 10 ** (-l_g / 10) + 0.7 * 10 ** (-l_c / 10)) + xl
        high = 5 - 10 * math.log10(0.7 * 10 ** (-l_irr / 10) + 0.3 * 10 ** (-l_c / 10)) + xh
        combined = o2i_loss(fi, 0.0, xl, xh)
        assert min(low, high) < combined < max(low, high)
        assert combined > max(low, high) - 3.02


def test_oxygen_absorption():
    assert oxygen_absorption(60e9, 200.0) == 3.0
    assert oxygen_absorption(60e9, 0.0) == 0.0
    assert oxygen_absorption(2e9, 1000.0) == 0.0
    assert oxygen_absorption(100e9, 1000.0) == 0.0
    with pytest.raises(ValueError):
        oxygen_absorption(60e9, -1.0)


def test_shadow_draw_statistics():
    params = PropagationParams()
    draws = draw_shadows(np.random.default_rng(99), 1_000_000, params)
    for arr, sigma in (
        (draws.x_los_db, params.sigma_los_db),
        (draws.x_nlos_db, params.sigma_nlos_db),
        (draws.x_o2i_low_db, params.sigma_o2i_low_db),
        (draws.x_o2i_high_db, params.sigma_o2i_high_db),
    ):
        assert abs(arr.mean()) < 0.02
        assert abs(arr.std() - sigma) / sigma < 0.01


def test_link_loss_composition():
    geom = LinkGeometry(d_2d_m=99.6, d_3d_m=100.0, f_c_hz=30e9,
                        is_los=True, is_indoor=False)
    assert_allclose(link_loss(geom, ShadowDraws()), CI_30GHZ_100M, atol=1e-6)
    assert_allclose(link_loss(geom, ShadowDraws(), g_sm_db=3.0),
                    CI_30GHZ_100M - 3.0, atol=1e-6)

    geom = LinkGeometry(d_2d_m=199.8, d_3d_m=200.0, f_c_hz=60e9,
                        is_los=False, is_indoor=True, d_2d_in_m=0.0)
    want = pl_nlos_abg(60.0, 200.0) + o2i_loss(60.0, 0.0) + 3.0
    assert_allclose(link_loss(geom, ShadowDraws()), want, atol=1e-9)


def test_link_loss_selects_by_los_state(rng):
    d = rng.uniform(10.0, 400.0, size=500)
    is_los = rng.uniform(size=500) < 0.5
    draws = draw_shadows(rng, 500)
    geom = LinkGeometry(d_2d_m=d, d_3d_m=d, f_c_hz=30e9,
                        is_los=is_los, is_indoor=False)
    total = link_loss(geom, draws)
    want = np.where(is_los, pl_los_ci(30e9, d, draws.x_los_db),
                    pl_nlos_abg(30.0, d, draws.x_nlos_db))
    assert_allclose(total, want, atol=1e-12)


def test_params_validation():
    with pytest.raises(ValueError):
        PropagationParams(sigma_los_db=-1.0)
    with pytest.raises(ValueError):
        PropagationParams(abg_alpha=0.0)
