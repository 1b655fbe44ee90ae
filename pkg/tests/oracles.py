"""Independent oracles used to cross-check the engine.

Everything here deliberately recomputes results through a different route
than the implementation: linear-unit budget accounting, numerical
minimization, Monte Carlo estimation, and a second geometry library.
"""

from __future__ import annotations

import math

import numpy as np

C = 299_792_458.0
BOLTZMANN_NOISE_W_HZ = 1e-3 * 10.0 ** (-174.0 / 10.0)  # -174 dBm/Hz in watts


def budget_link_snr_linear(
    ptx_element_w: float,
    n_tx: int,
    n_rx: int,
    tx_element_gain_lin: float,
    rx_element_gain_lin: float,
    carrier_hz: float,
    exponent: float,
    distance_m: float,
    noise_figure_lin: float,
    bandwidth_hz: float,
    impl_loss_lin: float,
    reference_m: float = 1.0,
) -> float:
    """Spreadsheet-style one-way link budget, entirely in linear units."""
    lam = C / carrier_hz
    fspl_ref = (4.0 * math.pi * reference_m / lam) ** 2
    spreading = fspl_ref * (max(distance_m, reference_m) / reference_m) ** exponent
    eirp = ptx_element_w * n_tx**2 * tx_element_gain_lin
    received = eirp * n_rx * rx_element_gain_lin / spreading
    noise = BOLTZMANN_NOISE_W_HZ * bandwidth_hz * noise_figure_lin
    return received / (noise * impl_loss_lin)


def budget_radar_snr_linear(
    ptx_element_w: float,
    n_tx: int,
    n_rx: int,
    carrier_hz: float,
    rcs_m2: float,
    d_tx_m: float,
    d_rx_m: float,
    noise_figure_lin: float,
    bandwidth_hz: float,
    impl_loss_lin: float,
    element_gain_lin: float = 1.0,
) -> float:
    """Radar equation in linear units; monostatic when d_tx == d_rx."""
    lam = C / carrier_hz
    eirp = ptx_element_w * n_tx**2 * element_gain_lin
    received = (
        eirp
        * n_rx
        * element_gain_lin
        * lam**2
        * rcs_m2
        / ((4.0 * math.pi) ** 3 * d_tx_m**2 * d_rx_m**2)
    )
    noise = BOLTZMANN_NOISE_W_HZ * bandwidth_hz * noise_figure_lin
    return received / (noise * impl_loss_lin)


def golden_section_minimize(fn, lo: float, hi: float, iters: int = 200) -> float:
    """Minimizer of a unimodal function over [lo, hi] (log-spaced probing)."""
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = math.log(lo), math.log(hi)
    c = b - phi * (b - a)
    d = a + phi * (b - a)
    fc, fd = fn(math.exp(c)), fn(math.exp(d))
    for _ in range(iters):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - phi * (b - a)
            fc = fn(math.exp(c))
        else:
            a, c, fc = c, d, fd
            d = a + phi * (b - a)
            fd = fn(math.exp(d))
    return math.exp((a + b) / 2.0)


def monte_carlo_toa_rmse(
    anchors_xy: np.ndarray,
    ue_xy: np.ndarray,
    sigma_range_m: float,
    trials: int,
    seed: int = 1234,
) -> float:
    """RMSE of a Gauss-Newton range-only least-squares estimator.

    Starts each solve from the truth (efficient-estimator regime) and runs
    two full Gauss-Newton refinements, vectorized across trials.
    """
    rng = np.random.default_rng(seed)
    true_d = np.linalg.norm(anchors_xy - ue_xy, axis=1)
    meas = true_d[None, :] + rng.normal(0.0, sigma_range_m, size=(trials, len(anchors_xy)))
    est = np.tile(ue_xy, (trials, 1)).astype(float)
    for _ in range(2):
        diff = est[:, None, :] - anchors_xy[None, :, :]
        dist = np.linalg.norm(diff, axis=2)
        jac = diff / dist[:, :, None]  # (trials, n, 2)
        resid = meas - dist  # (trials, n)
        jtj = np.einsum("tni,tnj->tij", jac, jac)
        jtr = np.einsum("tni,tn->ti", jac, resid)
        est = est + np.linalg.solve(jtj, jtr[:, :, None])[:, :, 0]
    err = est - ue_xy
    return float(np.sqrt(np.mean(np.sum(err**2, axis=1))))


def loglog_slope(x, y) -> float:
    """Least-squares slope of log(y) against log(x)."""
    lx = np.log(np.asarray(x, dtype=float))
    ly = np.log(np.asarray(y, dtype=float))
    return float(np.polyfit(lx, ly, 1)[0])


def segment_blocked_shapely(p1, p2, polygon_vertices) -> bool:
    """Reference LoS test: does the segment meet the open polygon interior?"""
    from shapely.geometry import LineString, Polygon

    segment = LineString([tuple(p1), tuple(p2)])
    polygon = Polygon([tuple(v) for v in polygon_vertices])
    return segment.relate_pattern(polygon, "T********")
