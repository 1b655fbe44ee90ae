"""Scalar unit conversions shared by every other module.

Conventions: frequencies/bandwidths in Hz, powers in dBm at interfaces and
watts internally, distances in m, durations in s, angles in degrees at
interfaces and radians internally. All composed arithmetic happens in
linear units; dB appears only at API and file boundaries.
"""

from __future__ import annotations

import math

SPEED_OF_LIGHT_M_S = 299_792_458.0

__all__ = [
    "SPEED_OF_LIGHT_M_S",
    "db_from_linear",
    "linear_from_db",
    "dbm_to_watts",
    "watts_to_dbm",
    "wavelength_m",
]


def db_from_linear(ratio: float) -> float:
    """Convert a linear power ratio to dB. Raises on non-positive input."""
    if not ratio > 0.0:
        raise ValueError(f"linear ratio must be positive, got {ratio}")
    return 10.0 * math.log10(ratio)


def linear_from_db(db: float) -> float:
    """Convert dB to a linear power ratio."""
    return 10.0 ** (db / 10.0)


def dbm_to_watts(dbm: float) -> float:
    """Convert power in dBm to watts."""
    if not math.isfinite(dbm):
        raise ValueError(f"power in dBm must be finite, got {dbm}")
    return 10.0 ** ((dbm - 30.0) / 10.0)


def watts_to_dbm(watts: float) -> float:
    """Convert power in watts to dBm. Raises on non-positive input."""
    if not watts > 0.0:
        raise ValueError(f"power in watts must be positive, got {watts}")
    return 10.0 * math.log10(watts) + 30.0


def wavelength_m(frequency_hz: float) -> float:
    """Free-space wavelength for a carrier frequency."""
    if not frequency_hz > 0.0:
        raise ValueError(f"frequency must be positive, got {frequency_hz}")
    return SPEED_OF_LIGHT_M_S / frequency_hz
