"""Rate computation and its inversions, plus the OFDM slot latency model.

Rates follow Shannon capacity with a hard per-stream spectral-efficiency
cap; spatial streams multiply rate as ideal parallel channels. Inversions
return explicit feasibility results rather than sentinel numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import channel
from .quantities import linear_from_db

BANDWIDTH_SEARCH_MIN_HZ = 1e6
BANDWIDTH_SEARCH_MAX_HZ = 100e9

# Fraction of the end-to-end latency budget available to PHY slots; the
# remainder is reserved for processing and transport.
PHY_LATENCY_BUDGET_FRACTION = 0.3


@dataclass(frozen=True)
class RateModel:
    """Spectral-efficiency cap per stream and parallel stream count."""

    se_cap_bps_hz: float = 6.0
    streams: int = 1

    def __post_init__(self):
        if not self.se_cap_bps_hz > 0.0:
            raise ValueError("se_cap_bps_hz must be positive")
        if not 1 <= self.streams <= 4:
            raise ValueError("streams must be in 1..4")


@dataclass(frozen=True)
class Numerology:
    """OFDM frame constants used by the latency model."""

    subcarriers: int = 4096
    cp_overhead: float = 0.07
    symbols_per_slot: int = 14

    def __post_init__(self):
        if self.subcarriers < 1:
            raise ValueError("subcarriers must be >= 1")
        if not 0.0 <= self.cp_overhead < 1.0:
            raise ValueError("cp_overhead must be in [0, 1)")
        if self.symbols_per_slot < 1:
            raise ValueError("symbols_per_slot must be >= 1")

    def symbol_duration_s(self, bandwidth_hz: float) -> float:
        if not bandwidth_hz > 0.0:
            raise ValueError("bandwidth must be positive")
        return (self.subcarriers / bandwidth_hz) * (1.0 + self.cp_overhead)


@dataclass(frozen=True)
class PowerSolution:
    feasible: bool
    power_dbm: float | None = None
    note: str = ""


@dataclass(frozen=True)
class BandwidthSolution:
    feasible: bool
    bandwidth_hz: float | None = None
    note: str = ""


def achievable_rate_bps(snr_db: float, bandwidth_hz: float, model: RateModel) -> float:
    """streams * B * min(log2(1 + snr), se_cap)."""
    if not bandwidth_hz > 0.0:
        raise ValueError("bandwidth must be positive")
    se = math.log2(1.0 + linear_from_db(snr_db))
    return model.streams * bandwidth_hz * min(se, model.se_cap_bps_hz)


@dataclass(frozen=True)
class LinkParams:
    """Everything except power and bandwidth that fixes a link budget."""

    tx: channel.ArrayConfig
    rx: channel.ArrayConfig
    pathloss: channel.PathlossModel
    distance_m: float
    noise: channel.NoiseModel
    impl_loss_db: float = 20.0

    def snr_db(self, ptx_per_element_dbm: float, bandwidth_hz: float) -> float:
        return channel.link_snr_db(
            ptx_per_element_dbm,
            self.tx,
            self.rx,
            self.pathloss,
            self.distance_m,
            self.noise,
            bandwidth_hz,
            self.impl_loss_db,
        )


def required_power_per_element(
    rate_target_bps: float,
    bandwidth_hz: float,
    link: LinkParams,
    model: RateModel,
) -> PowerSolution:
    """Minimum per-element TX power that reaches the target rate.

    Analytic inversion: the needed spectral efficiency fixes the needed SNR,
    which maps linearly (in dB) back to power. Targets above the cap line
    streams*B*se_cap are infeasible at any power.
    """
    if not rate_target_bps > 0.0:
        raise ValueError("rate target must be positive")
    cap_rate = model.streams * bandwidth_hz * model.se_cap_bps_hz
    if rate_target_bps > cap_rate:
        return PowerSolution(
            False,
            note=f"target {rate_target_bps:.3g} bps exceeds SE-cap rate {cap_rate:.3g} bps",
        )
    se_needed = rate_target_bps / (model.streams * bandwidth_hz)
    snr_needed_db = 10.0 * math.log10(2.0**se_needed - 1.0)
    snr_at_zero = link.snr_db(0.0, bandwidth_hz)
    return PowerSolution(True, power_dbm=snr_needed_db - snr_at_zero)


def required_bandwidth(
    rate_target_bps: float,
    ptx_per_element_dbm: float,
    link: LinkParams,
    model: RateModel,
) -> BandwidthSolution:
    """Smallest bandwidth meeting the target rate at fixed per-element power.

    Noise grows with B, so the achievable rate saturates at large B; the
    solver scans decades to bracket the target and then bisects.
    """
    if not rate_target_bps > 0.0:
        raise ValueError("rate target must be positive")

    def rate(b: float) -> float:
        return achievable_rate_bps(link.snr_db(ptx_per_element_dbm, b), b, model)

    lo, hi = BANDWIDTH_SEARCH_MIN_HZ, None
    if rate(lo) >= rate_target_bps:
        hi = lo
        lo = None
    else:
        b = lo
        while b < BANDWIDTH_SEARCH_MAX_HZ:
            b = min(b * 10.0, BANDWIDTH_SEARCH_MAX_HZ)
            if rate(b) >= rate_target_bps:
                hi = b
                break
            lo = b
    if hi is None:
        return BandwidthSolution(
            False,
            note=f"target {rate_target_bps:.3g} bps unreachable below "
            f"{BANDWIDTH_SEARCH_MAX_HZ:.3g} Hz at {ptx_per_element_dbm:.3g} dBm/element",
        )
    if lo is None:
        return BandwidthSolution(True, bandwidth_hz=hi)
    for _ in range(200):
        mid = math.sqrt(lo * hi)
        if rate(mid) >= rate_target_bps:
            hi = mid
        else:
            lo = mid
    return BandwidthSolution(True, bandwidth_hz=hi)


def phy_latency_s(bandwidth_hz: float, numerology: Numerology = Numerology()) -> float:
    """Bidirectional PHY latency: two slots of symbols_per_slot OFDM symbols."""
    symbol = numerology.symbol_duration_s(bandwidth_hz)
    slot = numerology.symbols_per_slot * symbol
    return 2.0 * slot


def integration_symbols(
    update_rate_hz: float, bandwidth_hz: float, numerology: Numerology = Numerology()
) -> int:
    """OFDM symbols available for one measurement at a given refresh rate."""
    if not update_rate_hz > 0.0:
        raise ValueError("update rate must be positive")
    available = 1.0 / update_rate_hz
    return max(1, math.floor(available / numerology.symbol_duration_s(bandwidth_hz)))
