"""Pathloss, noise, and SNR models for communication and sensing links.

The link budget is assembled from dB terms so every contribution stays
auditable. Transmit power is specified per antenna element; the TX array
contributes 20*log10(N) (power combining plus coherent beamforming) and the
RX array 10*log10(N) on top of the per-element gains.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .quantities import SPEED_OF_LIGHT_M_S, wavelength_m

THERMAL_NOISE_DBM_HZ = -174.0


class NearFieldClampWarning(UserWarning):
    """Distance below the pathloss reference was clamped to the reference."""


@dataclass(frozen=True)
class PathlossModel:
    """Log-distance pathloss anchored at free space loss at a reference distance."""

    carrier_hz: float
    exponent: float = 2.0
    reference_distance_m: float = 1.0

    def __post_init__(self):
        if not self.carrier_hz > 0.0:
            raise ValueError("carrier_hz must be positive")
        if not 1.5 <= self.exponent <= 6.0:
            raise ValueError(f"pathloss exponent {self.exponent} outside [1.5, 6]")
        if not self.reference_distance_m > 0.0:
            raise ValueError("reference_distance_m must be positive")


@dataclass(frozen=True)
class NoiseModel:
    """Thermal noise floor plus receiver noise figure."""

    noise_figure_db: float = 5.0

    def __post_init__(self):
        if self.noise_figure_db < 0.0:
            raise ValueError("noise_figure_db must be >= 0")


@dataclass(frozen=True)
class ArrayConfig:
    """Square (or linear) antenna array described per dimension."""

    elements_per_dim: int
    dims: int = 2
    element_gain_dbi: float = 0.0
    spacing_wavelengths: float = 0.5

    def __post_init__(self):
        if self.elements_per_dim < 1:
            raise ValueError("elements_per_dim must be >= 1")
        if self.dims not in (1, 2):
            raise ValueError("dims must be 1 or 2")
        if not self.spacing_wavelengths > 0.0:
            raise ValueError("spacing_wavelengths must be positive")

    @property
    def n_elements(self) -> int:
        return self.elements_per_dim**self.dims


@dataclass(frozen=True)
class RadarTarget:
    """Point scatterer with a fixed radar cross-section."""

    rcs_m2: float = 1.0
    radial_velocity_m_s: float = 0.0

    def __post_init__(self):
        if not self.rcs_m2 > 0.0:
            raise ValueError("rcs_m2 must be positive")


def fspl_db(distance_m: float, frequency_hz: float) -> float:
    """Free-space pathloss 20*log10(4*pi*d*f/c)."""
    if not distance_m > 0.0:
        raise ValueError("distance must be positive for free-space loss")
    return 20.0 * math.log10(4.0 * math.pi * distance_m * frequency_hz / SPEED_OF_LIGHT_M_S)


def pathloss_db(model: PathlossModel, distance_m: float) -> float:
    """Pathloss in dB at a distance.

    Free-space loss at the reference distance plus 10*n*log10(d/d0).
    Distances below the reference clamp to the reference (near field is out
    of scope) and emit a NearFieldClampWarning.
    """
    if distance_m <= 0.0:
        raise ValueError("pathloss is singular at zero distance")
    if distance_m < model.reference_distance_m:
        warnings.warn(
            f"distance {distance_m} m below reference {model.reference_distance_m} m; clamped",
            NearFieldClampWarning,
            stacklevel=2,
        )
        distance_m = model.reference_distance_m
    ref = fspl_db(model.reference_distance_m, model.carrier_hz)
    return ref + 10.0 * model.exponent * math.log10(distance_m / model.reference_distance_m)


def noise_power_dbm(noise: NoiseModel, bandwidth_hz: float) -> float:
    """Integrated noise power: -174 dBm/Hz + 10*log10(B) + NF."""
    if not bandwidth_hz > 0.0:
        raise ValueError("bandwidth must be positive")
    return THERMAL_NOISE_DBM_HZ + 10.0 * math.log10(bandwidth_hz) + noise.noise_figure_db


def tx_array_gain_db(tx: ArrayConfig) -> float:
    """TX gain over one element: power combining + beamforming, 20*log10(N)."""
    return 20.0 * math.log10(tx.n_elements) + tx.element_gain_dbi


def rx_array_gain_db(rx: ArrayConfig) -> float:
    """RX combining gain, 10*log10(N)."""
    return 10.0 * math.log10(rx.n_elements) + rx.element_gain_dbi


def link_snr_db(
    ptx_per_element_dbm: float,
    tx: ArrayConfig,
    rx: ArrayConfig,
    pathloss: PathlossModel,
    distance_m: float,
    noise: NoiseModel,
    bandwidth_hz: float,
    impl_loss_db: float = 20.0,
) -> float:
    """One-way link SNR in dB for a beam-aligned point-to-point link.

    Parameters
    ----------
    ptx_per_element_dbm
        Saturated output power per TX antenna element.
    impl_loss_db
        Lump covering PA back-off and RX sensitivity degradation.
    """
    return (
        ptx_per_element_dbm
        + tx_array_gain_db(tx)
        + rx_array_gain_db(rx)
        - pathloss_db(pathloss, distance_m)
        - impl_loss_db
        - noise_power_dbm(noise, bandwidth_hz)
    )


def _radar_constant_db(carrier_hz: float, rcs_m2: float) -> float:
    lam = wavelength_m(carrier_hz)
    return 10.0 * math.log10(lam**2 * rcs_m2 / (4.0 * math.pi) ** 3)


def monostatic_snr_db(
    ptx_per_element_dbm: float,
    tx: ArrayConfig,
    rx: ArrayConfig,
    target: RadarTarget,
    carrier_hz: float,
    distance_m: float,
    noise: NoiseModel,
    bandwidth_hz: float,
    impl_loss_db: float = 20.0,
) -> float:
    """Radar-equation SNR for a co-located TX/RX: two-way d^4 spreading."""
    if not distance_m > 0.0:
        raise ValueError("radar range must be positive")
    return (
        ptx_per_element_dbm
        + tx_array_gain_db(tx)
        + rx_array_gain_db(rx)
        + _radar_constant_db(carrier_hz, target.rcs_m2)
        - 40.0 * math.log10(distance_m)
        - impl_loss_db
        - noise_power_dbm(noise, bandwidth_hz)
    )


def bistatic_snr_db(
    ptx_per_element_dbm: float,
    tx: ArrayConfig,
    rx: ArrayConfig,
    target: RadarTarget,
    carrier_hz: float,
    tx_distance_m: float,
    rx_distance_m: float,
    noise: NoiseModel,
    bandwidth_hz: float,
    impl_loss_db: float = 20.0,
) -> float:
    """Radar-equation SNR for separated TX and RX (d_tx^2 * d_rx^2 spreading)."""
    if not (tx_distance_m > 0.0 and rx_distance_m > 0.0):
        raise ValueError("radar ranges must be positive")
    return (
        ptx_per_element_dbm
        + tx_array_gain_db(tx)
        + rx_array_gain_db(rx)
        + _radar_constant_db(carrier_hz, target.rcs_m2)
        - 20.0 * math.log10(tx_distance_m)
        - 20.0 * math.log10(rx_distance_m)
        - impl_loss_db
        - noise_power_dbm(noise, bandwidth_hz)
    )
