"""Uplink localization error bounds for a 2D range-plus-angle scenario.

The squared position error bound decomposes into a distance term and an
angle term:

    speb = N0*B*d^2 / (T*P*lam^2) * (c^2*a_range/(B^2*N) + d^2*a_angle/N^3)

with T the integration time in transmissions, N the receive antenna count,
and a_range/a_angle dimensionless constants. The constants are calibrated
once against an independent Fisher-information computation for a
flat-spectrum pilot received on a uniform linear array (fisher_oracle);
the calibrated defaults are frozen below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .quantities import SPEED_OF_LIGHT_M_S

# Calibrated via calibrate_alphas() at the reference array size below.
CALIBRATION_N_RX = 32
ALPHA_RANGE_DEFAULT = 24.0
ALPHA_ANGLE_DEFAULT = 96.0 * CALIBRATION_N_RX**2 / (CALIBRATION_N_RX**2 - 1)


@dataclass(frozen=True)
class SpebParams:
    """Inputs of the squared position error bound."""

    integration_symbols: int
    bandwidth_hz: float
    noise_density_w_hz: float
    distance_m: float
    wavelength_m: float
    n_rx: int
    ptx_w: float
    alpha_range: float = ALPHA_RANGE_DEFAULT
    alpha_angle: float = ALPHA_ANGLE_DEFAULT

    def __post_init__(self):
        for name in (
            "integration_symbols",
            "bandwidth_hz",
            "noise_density_w_hz",
            "distance_m",
            "wavelength_m",
            "n_rx",
            "ptx_w",
            "alpha_range",
            "alpha_angle",
        ):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")


@dataclass(frozen=True)
class LocalizationBound:
    speb_m2: float
    peb_m: float
    range_term_m2: float
    angle_term_m2: float
    range_err_m: float
    angle_err_rad: float


def speb(p: SpebParams) -> LocalizationBound:
    """Evaluate the bound; the two addends are reported separately."""
    c = SPEED_OF_LIGHT_M_S
    prefactor = (p.noise_density_w_hz * p.bandwidth_hz * p.distance_m**2) / (
        p.integration_symbols * p.ptx_w * p.wavelength_m**2
    )
    range_term = prefactor * c**2 * p.alpha_range / (p.bandwidth_hz**2 * p.n_rx)
    angle_term = prefactor * p.distance_m**2 * p.alpha_angle / p.n_rx**3
    total = range_term + angle_term
    return LocalizationBound(
        speb_m2=total,
        peb_m=math.sqrt(total),
        range_term_m2=range_term,
        angle_term_m2=angle_term,
        range_err_m=math.sqrt(range_term),
        angle_err_rad=math.sqrt(angle_term) / p.distance_m,
    )


def required_tx_power_w(target_peb_m: float, p: SpebParams) -> float:
    """Transmit power achieving a target position error bound.

    Closed form: the bound is proportional to 1/P, so P scales by the ratio
    of the bound at the parametrized power to the target. Round-trips
    through speb() exactly.
    """
    if not target_peb_m > 0.0:
        raise ValueError("target_peb_m must be positive")
    at_current = speb(p).speb_m2
    return p.ptx_w * at_current / target_peb_m**2


def optimal_bandwidth_hz(p: SpebParams) -> float:
    """Unique bandwidth minimizing the bound: (c*N/d)*sqrt(a_range/a_angle)."""
    return (
        SPEED_OF_LIGHT_M_S
        * p.n_rx
        / p.distance_m
        * math.sqrt(p.alpha_range / p.alpha_angle)
    )


def orientation_error_to_position_error_m(eps_deg: float, distance_m: float) -> float:
    """First-order lever-arm position error d*eps for a small angle error."""
    if not 0.0 <= eps_deg < 10.0:
        raise ValueError("lever-arm approximation only valid for small angles")
    if distance_m < 0.0:
        raise ValueError("distance must be non-negative")
    return distance_m * math.radians(eps_deg)


@dataclass(frozen=True)
class FisherInfo:
    """2x2 Fisher information over (distance, angle) and its numerical rank."""

    fim: np.ndarray
    rank: int

    def position_bound_m2(self, distance_m: float) -> float:
        """Trace of the position-error covariance floor at a given range."""
        if self.rank < 2:
            return math.inf
        inv = np.linalg.inv(self.fim)
        return float(inv[0, 0] + distance_m**2 * inv[1, 1])


def fisher_oracle(
    n_pilots: int,
    bandwidth_hz: float,
    snr_linear: float,
    n_rx: int,
    spacing_wavelengths: float = 0.5,
    theta_rad: float = 0.0,
    n_freq: int = 4096,
) -> FisherInfo:
    """Delay/angle Fisher information for a flat-spectrum pilot on a ULA.

    Model: each pilot transmission occupies a unit time-bandwidth product
    with per-antenna integrated SNR ``snr_linear``; the spectrum is flat
    over [-B/2, B/2] (integrated numerically) and the array is a centered
    uniform linear array observed near broadside. Cross terms vanish by
    symmetry. The delay row is converted to distance via c.

    Returns the FIM over (d, theta); with a single antenna the angle row is
    zero and the rank report says so.
    """
    if n_rx < 1:
        raise ValueError("n_rx must be >= 1")
    if not (n_pilots > 0 and bandwidth_hz > 0.0 and snr_linear > 0.0):
        raise ValueError("pilots, bandwidth, and SNR must be positive")
    rho = n_pilots * snr_linear  # integrated SNR per antenna

    # Midpoint rule over the flat spectrum: (2/E N0)*∫ (2pi f)^2 |S(f)|^2 df
    # with |S|^2 = E/B; energy bookkeeping collapses to rho.
    f = (np.arange(n_freq) + 0.5) / n_freq * bandwidth_hz - bandwidth_hz / 2.0
    mean_sq_angular_freq = float(np.mean((2.0 * np.pi * f) ** 2))
    j_tau = 2.0 * rho * n_rx * mean_sq_angular_freq
    j_dd = j_tau / SPEED_OF_LIGHT_M_S**2

    # Element positions in wavelengths; the wavelength cancels against the
    # 2*pi/lambda phase slope.
    pos = (np.arange(n_rx) - (n_rx - 1) / 2.0) * spacing_wavelengths
    j_theta = (
        2.0
        * rho
        * float(np.sum((2.0 * np.pi * pos * math.cos(theta_rad)) ** 2))
    )

    fim = np.array([[j_dd, 0.0], [0.0, j_theta]])
    rank = int(np.linalg.matrix_rank(fim))
    return FisherInfo(fim=fim, rank=rank)


def friis_snr_linear(p: SpebParams) -> float:
    """Per-antenna per-transmission SNR implied by free-space amplitude decay."""
    p_rx = p.ptx_w * (p.wavelength_m / (4.0 * math.pi * p.distance_m)) ** 2
    return p_rx / (p.noise_density_w_hz * p.bandwidth_hz)


def calibrate_alphas(
    n_rx: int = CALIBRATION_N_RX,
    n_pilots: int = 120,
    bandwidth_hz: float = 2e9,
    snr_linear: float = 1.0,
) -> tuple[float, float]:
    """Extract the two bound constants by matching the oracle's CRLBs.

    The extraction divides out every scenario quantity, so the results are
    pure numbers independent of power, distance, and integration time.
    """
    if n_rx < 2:
        raise ValueError("angle calibration needs n_rx >= 2")
    info = fisher_oracle(n_pilots, bandwidth_hz, snr_linear, n_rx)
    inv = np.linalg.inv(info.fim)
    var_d, var_theta = float(inv[0, 0]), float(inv[1, 1])
    c = SPEED_OF_LIGHT_M_S
    # Reference scenario with unit Friis factors folded into snr_linear:
    # snr = P*lam^2/((4*pi*d)^2*N0*B). Solve the bound's two terms for the
    # constants with d, lam, P, N0 chosen so snr_linear comes out as given.
    d = 1.0
    lam = 1.0
    n0_b = 1.0
    ptx = snr_linear * (4.0 * math.pi * d) ** 2 * n0_b / lam**2
    n0 = n0_b / bandwidth_hz
    pref = n0 * bandwidth_hz * d**2 / (n_pilots * ptx * lam**2)
    alpha_range = var_d / (pref * c**2 / (bandwidth_hz**2 * n_rx))
    alpha_angle = var_theta * d**2 / (pref * d**2 / n_rx**3)
    return alpha_range, alpha_angle


@dataclass(frozen=True)
class CurvePoint:
    d_m: float
    range_err_m: float
    angle_err_deg: float
    peb_m: float
    rate_bps: float


def error_vs_distance_curve(
    base: SpebParams,
    d_grid_m,
    rate_at_distance,
) -> list[CurvePoint]:
    """Evaluate the bound and an achievable rate over a distance grid.

    ``rate_at_distance`` maps a distance in metres to a rate in bps so the
    link model stays the caller's choice.
    """
    grid = list(d_grid_m)
    if not grid or any(d <= 0 for d in grid):
        raise ValueError("distance grid must be positive")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("distance grid must be strictly increasing")
    points = []
    for d in grid:
        bound = speb(replace(base, distance_m=d))
        points.append(
            CurvePoint(
                d_m=d,
                range_err_m=bound.range_err_m,
                angle_err_deg=math.degrees(bound.angle_err_rad),
                peb_m=bound.peb_m,
                rate_bps=rate_at_distance(d),
            )
        )
    return points
