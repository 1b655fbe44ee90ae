import math

import pytest
from hypothesis import given, settings, strategies as st

from isacplan import channel, linkbudget
from isacplan.emitters import bandwidth_power_link_params

MODEL = linkbudget.RateModel(se_cap_bps_hz=6.0, streams=1)


def link(distance_m: float) -> linkbudget.LinkParams:
    return linkbudget.LinkParams(
        tx=channel.ArrayConfig(256, 1),
        rx=channel.ArrayConfig(64, 1),
        pathloss=channel.PathlossModel(140e9, 2.0),
        distance_m=distance_m,
        noise=channel.NoiseModel(10.0),
        impl_loss_db=20.0,
    )


def test_rate_vanishes_at_no_snr():
    assert linkbudget.achievable_rate_bps(-300.0, 1e9, MODEL) < 1.0


def test_rate_cap_binds_at_high_snr():
    # log2(1001) ~ 9.97 > 6, so the cap line applies
    model = linkbudget.RateModel(6.0, 3)
    assert linkbudget.achievable_rate_bps(30.0, 2e9, model) == pytest.approx(6.0 * 2e9 * 3)


def test_rate_unit_se_point():
    assert linkbudget.achievable_rate_bps(0.0, 1e9, MODEL) == pytest.approx(1e9)


def test_rate_model_validation():
    with pytest.raises(ValueError):
        linkbudget.RateModel(0.0, 1)
    with pytest.raises(ValueError):
        linkbudget.RateModel(6.0, 5)


@settings(max_examples=100)
@given(
    st.floats(min_value=-20.0, max_value=14.0),
    st.floats(min_value=1e8, max_value=2e10),
)
def test_required_power_round_trip(ptx, bandwidth):
    """Below the cap the power inversion is the exact inverse of the rate."""
    rate = linkbudget.achievable_rate_bps(link(100.0).snr_db(ptx, bandwidth), bandwidth, MODEL)
    if rate >= MODEL.streams * bandwidth * MODEL.se_cap_bps_hz * 0.999:
        return  # cap region: the inversion returns the cheaper threshold power
    solution = linkbudget.required_power_per_element(rate, bandwidth, link(100.0), MODEL)
    assert solution.feasible
    assert solution.power_dbm == pytest.approx(ptx, abs=1e-9)


@settings(max_examples=100)
@given(
    st.floats(min_value=1e8, max_value=5e10),
    st.floats(min_value=0.01, max_value=0.99),
)
def test_required_power_always_round_trips_through_rate(bandwidth, frac):
    target = frac * MODEL.streams * bandwidth * MODEL.se_cap_bps_hz
    solution = linkbudget.required_power_per_element(target, bandwidth, link(100.0), MODEL)
    assert solution.feasible
    back = linkbudget.achievable_rate_bps(
        link(100.0).snr_db(solution.power_dbm, bandwidth), bandwidth, MODEL
    )
    assert back == pytest.approx(target, rel=1e-9)


def test_required_power_infeasible_above_cap():
    solution = linkbudget.required_power_per_element(100e9, 1e9, link(100.0), MODEL)
    assert not solution.feasible
    assert solution.power_dbm is None


def test_required_power_anchor_short_range_link():
    """10 Gbps over 100 m at 2 GHz needs about 5 dBm per element with the
    calibrated curve parameters."""
    curve_link = bandwidth_power_link_params(100.0)
    solution = linkbudget.required_power_per_element(10e9, 2e9, curve_link, MODEL)
    assert solution.feasible
    assert solution.power_dbm == pytest.approx(5.0, abs=1.0)


def test_required_bandwidth_consistency():
    ptx = 8.0
    b0 = 3e9
    rate = linkbudget.achievable_rate_bps(link(100.0).snr_db(ptx, b0), b0, MODEL)
    solution = linkbudget.required_bandwidth(rate, ptx, link(100.0), MODEL)
    assert solution.feasible
    assert solution.bandwidth_hz <= b0 * (1.0 + 1e-9)
    back = linkbudget.achievable_rate_bps(
        link(100.0).snr_db(ptx, solution.bandwidth_hz), solution.bandwidth_hz, MODEL
    )
    assert back == pytest.approx(rate, rel=1e-6)


def test_required_bandwidth_anchors():
    """Curve anchors: ~2 GHz for (10 Gbps, 100 m) and ~13 GHz for
    (100 Gbps, 10 m) at 5 dBm per element."""
    uncapped = linkbudget.RateModel(math.inf, 1)
    long_link = linkbudget.required_bandwidth(10e9, 5.0, bandwidth_power_link_params(100.0), uncapped)
    short_link = linkbudget.required_bandwidth(100e9, 5.0, bandwidth_power_link_params(10.0), uncapped)
    assert long_link.feasible and short_link.feasible
    assert long_link.bandwidth_hz == pytest.approx(2e9, rel=0.5)
    assert short_link.bandwidth_hz == pytest.approx(13e9, rel=0.3)


def test_required_bandwidth_absurd_target_infeasible():
    solution = linkbudget.required_bandwidth(1e15, 5.0, link(100.0), MODEL)
    assert not solution.feasible
    assert solution.bandwidth_hz is None


@settings(max_examples=30)
@given(st.floats(min_value=-10.0, max_value=25.0))
def test_rate_monotone_in_bandwidth(ptx):
    rates = [
        linkbudget.achievable_rate_bps(link(50.0).snr_db(ptx, b), b, MODEL)
        for b in (1e8, 1e9, 5e9, 2e10)
    ]
    assert all(b >= a for a, b in zip(rates, rates[1:]))


def test_rate_monotone_in_streams_and_snr():
    one = linkbudget.achievable_rate_bps(10.0, 1e9, linkbudget.RateModel(6.0, 1))
    two = linkbudget.achievable_rate_bps(10.0, 1e9, linkbudget.RateModel(6.0, 2))
    assert two == pytest.approx(2.0 * one)
    assert linkbudget.achievable_rate_bps(12.0, 1e9, MODEL) > linkbudget.achievable_rate_bps(
        10.0, 1e9, MODEL
    )


def test_required_power_nonincreasing_in_bandwidth_below_cap():
    target = 5e9
    powers = []
    for b in (1e9, 2e9, 4e9, 8e9):
        sol = linkbudget.required_power_per_element(target, b, link(100.0), MODEL)
        assert sol.feasible
        powers.append(sol.power_dbm)
    assert all(b <= a + 1e-9 for a, b in zip(powers, powers[1:]))


def test_phy_latency_endpoints():
    lat_wide = linkbudget.phy_latency_s(4e9)
    lat_narrow = linkbudget.phy_latency_s(0.4e9)
    # closed form: 2 * 14 * (4096/B) * 1.07
    assert lat_wide == pytest.approx(2 * 14 * (4096 / 4e9) * 1.07, rel=1e-12)
    assert lat_wide == pytest.approx(30.7e-6, rel=0.01)
    assert lat_narrow == pytest.approx(306.9e-6, rel=0.01)


def test_phy_latency_inverse_in_bandwidth():
    assert linkbudget.phy_latency_s(1e9) == pytest.approx(2.0 * linkbudget.phy_latency_s(2e9))


@given(st.floats(min_value=1e8, max_value=1e11))
def test_phy_latency_times_bandwidth_constant(bandwidth):
    product = linkbudget.phy_latency_s(bandwidth) * bandwidth
    assert product == pytest.approx(2 * 14 * 4096 * 1.07, rel=1e-12)


def test_numerology_validation():
    with pytest.raises(ValueError):
        linkbudget.Numerology(subcarriers=0)
    with pytest.raises(ValueError):
        linkbudget.Numerology(cp_overhead=1.0)


def test_integration_symbols():
    # 100 Hz refresh at 2 GHz: 10 ms / 2.19 us per symbol
    n = linkbudget.integration_symbols(100.0, 2e9)
    assert n == math.floor(0.01 / ((4096 / 2e9) * 1.07))
