"""Sensing resolution and accuracy checks for mono- and bistatic modes.

Resolution follows the classic closed forms (c/2B range, 0.886*lambda/D
beamwidth, lambda/2T Doppler). Accuracy uses the resolution/sqrt(2*SNR)
rule of thumb as a replaceable policy; detection requires a configurable
SNR threshold at maximum range.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import channel
from .quantities import SPEED_OF_LIGHT_M_S, linear_from_db, wavelength_m

DETECTION_THRESHOLD_DB_DEFAULT = 10.0

# Half-power beamwidth of a uniform aperture in degrees: 0.886/(N*spacing)
# radians, i.e. 101.5/N at half-wavelength spacing.
BEAMWIDTH_FACTOR = 0.886


@dataclass(frozen=True)
class SensingKpis:
    """Targets for one sensing use case; None skips the matching check."""

    mode: str  # "monostatic" | "bistatic"
    max_range_m: float
    update_rate_hz: float
    range_res_m: float | None = None
    range_acc_m: float | None = None
    ang_res_deg: float | None = None
    ang_acc_deg: float | None = None
    velocity_m_s: float | None = None

    def __post_init__(self):
        if self.mode not in ("monostatic", "bistatic"):
            raise ValueError(f"unknown sensing mode {self.mode!r}")
        if not (self.max_range_m > 0.0 and self.update_rate_hz > 0.0):
            raise ValueError("max_range_m and update_rate_hz must be positive")
        for name in ("range_res_m", "range_acc_m", "ang_res_deg", "ang_acc_deg", "velocity_m_s"):
            v = getattr(self, name)
            if v is not None and not v > 0.0:
                raise ValueError(f"{name} must be positive when given")


@dataclass(frozen=True)
class SensingCheck:
    name: str
    required: float | None
    achieved: float | None
    verdict: str  # "pass" | "fail" | "warn"
    note: str = ""


def range_resolution_m(bandwidth_hz: float) -> float:
    """c/(2B)."""
    if not bandwidth_hz > 0.0:
        raise ValueError("bandwidth must be positive")
    return SPEED_OF_LIGHT_M_S / (2.0 * bandwidth_hz)


def angular_resolution_deg(array: channel.ArrayConfig) -> float:
    """Half-power beamwidth of one array dimension.

    A single element forms no beam; callers should treat that as "no
    angular resolution" (see sensing_feasibility).
    """
    if array.elements_per_dim < 2:
        raise ValueError("angular resolution needs >= 2 elements per dimension")
    rad = BEAMWIDTH_FACTOR / (array.elements_per_dim * array.spacing_wavelengths)
    return math.degrees(rad)


def velocity_resolution_m_s(wavelength: float, t_obs_s: float) -> float:
    """Doppler resolution lambda/(2*T) for a coherent observation window."""
    if not (wavelength > 0.0 and t_obs_s > 0.0):
        raise ValueError("wavelength and observation time must be positive")
    return wavelength / (2.0 * t_obs_s)


def _resolution_check(
    name: str, required: float | None, achieved: float, rtol: float, note: str = ""
) -> SensingCheck:
    if required is None:
        return SensingCheck(name, None, achieved, "pass", "no target set")
    verdict = "pass" if achieved <= required * (1.0 + rtol) else "fail"
    return SensingCheck(name, required, achieved, verdict, note)


def sensing_feasibility(
    kpis: SensingKpis,
    bandwidth_hz: float,
    carrier_hz: float,
    tx: channel.ArrayConfig,
    rx: channel.ArrayConfig,
    ptx_per_element_dbm: float,
    noise: channel.NoiseModel,
    target: channel.RadarTarget,
    impl_loss_db: float = 20.0,
    detection_threshold_db: float = DETECTION_THRESHOLD_DB_DEFAULT,
    rtol: float = 0.05,
) -> list[SensingCheck]:
    """Run every applicable sensing check with margins.

    Coherent observation time for Doppler is capped by the refresh period.
    A velocity target that is unreachable within the refresh period for any
    resource choice is a KPI-internal tension and reported as a warning
    rather than a failure. Infeasibility is always a verdict, never an
    exception.
    """
    checks = []
    lam = wavelength_m(carrier_hz)

    res = range_resolution_m(bandwidth_hz)
    checks.append(_resolution_check("range_resolution", kpis.range_res_m, res, rtol))

    if rx.elements_per_dim < 2:
        ang = None
        checks.append(
            SensingCheck(
                "angular_resolution",
                kpis.ang_res_deg,
                None,
                "fail" if kpis.ang_res_deg is not None else "warn",
                "single-element receive array forms no beam",
            )
        )
    else:
        ang = angular_resolution_deg(rx)
        checks.append(_resolution_check("angular_resolution", kpis.ang_res_deg, ang, rtol))

    t_obs = 1.0 / kpis.update_rate_hz
    vel = velocity_resolution_m_s(lam, t_obs)
    if kpis.velocity_m_s is None:
        checks.append(SensingCheck("velocity", None, vel, "pass", "no target set"))
    elif vel <= kpis.velocity_m_s * (1.0 + rtol):
        checks.append(SensingCheck("velocity", kpis.velocity_m_s, vel, "pass"))
    else:
        # Unreachable at this carrier within one refresh period no matter
        # the resources: report the tension instead of resolving it.
        needed = lam / (2.0 * kpis.velocity_m_s)
        checks.append(
            SensingCheck(
                "velocity",
                kpis.velocity_m_s,
                vel,
                "warn",
                f"needs {needed * 1e3:.3g} ms coherent observation but the "
                f"refresh period is {t_obs * 1e3:.3g} ms; KPI-internal tension",
            )
        )

    if kpis.mode == "monostatic":
        snr_db = channel.monostatic_snr_db(
            ptx_per_element_dbm,
            tx,
            rx,
            target,
            carrier_hz,
            kpis.max_range_m,
            noise,
            bandwidth_hz,
            impl_loss_db,
        )
    else:
        # Worst case geometry: both legs at maximum range.
        snr_db = channel.bistatic_snr_db(
            ptx_per_element_dbm,
            tx,
            rx,
            target,
            carrier_hz,
            kpis.max_range_m,
            kpis.max_range_m,
            noise,
            bandwidth_hz,
            impl_loss_db,
        )
    checks.append(
        SensingCheck(
            "detection_snr",
            detection_threshold_db,
            snr_db,
            "pass" if snr_db >= detection_threshold_db * (1.0 - rtol) else "fail",
            f"{kpis.mode} SNR at {kpis.max_range_m:.3g} m",
        )
    )

    # Accuracy proxy: resolution / sqrt(2*SNR).
    acc_factor = math.sqrt(2.0 * linear_from_db(snr_db)) if snr_db > -math.inf else 0.0
    if acc_factor > 0.0:
        checks.append(
            _resolution_check(
                "range_accuracy", kpis.range_acc_m, res / acc_factor, rtol,
                "resolution/sqrt(2*SNR) proxy",
            )
        )
        if ang is not None:
            checks.append(
                _resolution_check(
                    "angular_accuracy", kpis.ang_acc_deg, ang / acc_factor, rtol,
                    "resolution/sqrt(2*SNR) proxy",
                )
            )
    return checks
