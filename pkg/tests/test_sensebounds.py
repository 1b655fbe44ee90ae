import pytest
from hypothesis import given, settings, strategies as st

from isacplan import channel, sensebounds
from isacplan.quantities import wavelength_m

S1_KPIS = sensebounds.SensingKpis(
    mode="monostatic",
    max_range_m=50.0,
    update_rate_hz=25.0,
    range_res_m=0.1,
    range_acc_m=0.1,
    ang_res_deg=3.0,
    ang_acc_deg=0.2,
    velocity_m_s=0.04,
)
S2_KPIS = sensebounds.SensingKpis(
    mode="bistatic",
    max_range_m=10.0,
    update_rate_hz=1e3,
    range_acc_m=0.01,
    ang_res_deg=1.0,
    velocity_m_s=0.1,
)


def test_range_resolution_values():
    assert sensebounds.range_resolution_m(2e9) == pytest.approx(0.075, rel=1e-3)
    assert sensebounds.range_resolution_m(1.5e9) == pytest.approx(0.1, rel=1e-3)


def test_range_resolution_halves_with_double_bandwidth():
    assert sensebounds.range_resolution_m(4e9) == pytest.approx(
        sensebounds.range_resolution_m(2e9) / 2.0
    )


def test_range_resolution_rejects_zero_bandwidth():
    with pytest.raises(ValueError):
        sensebounds.range_resolution_m(0.0)


def test_angular_resolution_table():
    assert sensebounds.angular_resolution_deg(channel.ArrayConfig(100, 2)) == pytest.approx(
        1.02, abs=0.01
    )
    assert sensebounds.angular_resolution_deg(channel.ArrayConfig(35, 2)) == pytest.approx(
        2.90, abs=0.01
    )
    assert sensebounds.angular_resolution_deg(channel.ArrayConfig(10, 2)) == pytest.approx(
        10.15, abs=0.01
    )


def test_angular_resolution_needs_two_elements():
    with pytest.raises(ValueError):
        sensebounds.angular_resolution_deg(channel.ArrayConfig(1, 1))


def test_velocity_resolution_fits_monostatic_update_period():
    lam = wavelength_m(140e9)
    t_needed = lam / (2.0 * 0.04)
    assert t_needed == pytest.approx(26.8e-3, rel=0.01)
    assert t_needed < 1.0 / 25.0  # fits inside the refresh period


def test_velocity_resolution_scalings():
    lam = wavelength_m(140e9)
    assert sensebounds.velocity_resolution_m_s(lam, 0.08) == pytest.approx(
        sensebounds.velocity_resolution_m_s(lam, 0.04) / 2.0
    )
    assert sensebounds.velocity_resolution_m_s(2 * lam, 0.04) == pytest.approx(
        2.0 * sensebounds.velocity_resolution_m_s(lam, 0.04)
    )


def _run(kpis, bandwidth_hz, rx_per_dim, ptx_dbm, tx_per_dim=40, rcs=10.0):
    return {
        c.name: c
        for c in sensebounds.sensing_feasibility(
            kpis,
            bandwidth_hz,
            140e9,
            channel.ArrayConfig(tx_per_dim, 2),
            channel.ArrayConfig(rx_per_dim, 2),
            ptx_dbm,
            channel.NoiseModel(5.0),
            channel.RadarTarget(rcs_m2=rcs),
        )
    }


def test_monostatic_mapping_passes_with_adequate_resources():
    checks = _run(S1_KPIS, 2e9, rx_per_dim=35, ptx_dbm=16)
    assert checks["range_resolution"].verdict == "pass"
    assert checks["range_resolution"].achieved == pytest.approx(0.075, rel=1e-3)
    assert checks["angular_resolution"].verdict == "pass"
    assert checks["angular_resolution"].achieved == pytest.approx(2.90, abs=0.01)
    assert checks["velocity"].verdict == "pass"
    assert checks["detection_snr"].verdict == "pass"


def test_small_receive_array_fails_angular_check():
    checks = _run(S2_KPIS, 4e9, rx_per_dim=10, ptx_dbm=20)
    assert checks["angular_resolution"].verdict == "fail"
    assert checks["angular_resolution"].achieved == pytest.approx(10.15, abs=0.01)


def test_tiny_bandwidth_fails_range_check():
    checks = _run(S1_KPIS, 1e6, rx_per_dim=35, ptx_dbm=16)
    assert checks["range_resolution"].verdict == "fail"


def test_single_element_rx_has_no_angular_resolution():
    checks = _run(S1_KPIS, 2e9, rx_per_dim=1, ptx_dbm=16)
    assert checks["angular_resolution"].verdict == "fail"
    assert checks["angular_resolution"].achieved is None


def test_velocity_tension_reported_not_failed():
    """A velocity target unreachable within the refresh period at this
    carrier is a KPI-internal tension and must surface as a warning."""
    checks = _run(S2_KPIS, 4e9, rx_per_dim=100, ptx_dbm=20, rcs=1.0)
    assert checks["velocity"].verdict == "warn"
    assert "tension" in checks["velocity"].note


def test_bistatic_uses_both_legs():
    bi = _run(S2_KPIS, 4e9, rx_per_dim=100, ptx_dbm=20, tx_per_dim=20, rcs=1.0)
    assert bi["detection_snr"].verdict == "pass"
    # worst case doubles the spreading of one leg
    mono_like = channel.monostatic_snr_db(
        20.0,
        channel.ArrayConfig(20, 2),
        channel.ArrayConfig(100, 2),
        channel.RadarTarget(1.0),
        140e9,
        10.0,
        channel.NoiseModel(5.0),
        4e9,
    )
    assert bi["detection_snr"].achieved == pytest.approx(mono_like, abs=1e-9)


def test_kpi_validation():
    with pytest.raises(ValueError):
        sensebounds.SensingKpis(mode="weird", max_range_m=1.0, update_rate_hz=1.0)
    with pytest.raises(ValueError):
        sensebounds.SensingKpis(mode="monostatic", max_range_m=0.0, update_rate_hz=1.0)


@settings(max_examples=60)
@given(st.floats(min_value=1e8, max_value=2e10), st.floats(min_value=1.5, max_value=4.0))
def test_resolution_homogeneity(bandwidth, scale):
    """Scaling the resource and the target by the same law keeps verdicts."""
    res = sensebounds.range_resolution_m(bandwidth)
    scaled = sensebounds.range_resolution_m(bandwidth * scale)
    assert scaled == pytest.approx(res / scale, rel=1e-12)


@settings(max_examples=40)
@given(
    st.floats(min_value=5e8, max_value=8e9),
    st.integers(min_value=20, max_value=90),
    st.floats(min_value=5.0, max_value=20.0),
)
def test_feasibility_monotone_in_resources(bandwidth, rx, ptx):
    """More bandwidth, elements, or power never flips pass into fail."""
    ranking = {"pass": 0, "warn": 1, "fail": 2}
    base = _run(S1_KPIS, bandwidth, rx_per_dim=rx, ptx_dbm=ptx)
    better = _run(S1_KPIS, bandwidth * 1.5, rx_per_dim=rx + 10, ptx_dbm=ptx + 3)
    for name, check in base.items():
        if name == "range_resolution" or name == "range_accuracy":
            continue  # more bandwidth always helps these two as well, checked below
        assert ranking[better[name].verdict] <= ranking[check.verdict]
    assert better["range_resolution"].achieved < base["range_resolution"].achieved
