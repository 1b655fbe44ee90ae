"""CSV, PGM, and JSON emitters plus the two preset trade-off curves.

All outputs are deterministic: fixed column orders, fixed float formatting,
no timestamps. Non-finite values appear as ``inf`` in CSV and ``null`` in
JSON (strict JSON has no infinity).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from . import channel, deployment, linkbudget, locbounds, usecases
from .quantities import dbm_to_watts, wavelength_m


def _fmt(value: float) -> str:
    if value is None:
        return ""
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.10g}"


# ---------------------------------------------------------------------------
# Reports


def _json_safe(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def report_to_dict(report: usecases.FeasibilityReport) -> dict:
    return {
        "use_case": report.use_case,
        "overall": report.overall,
        "checks": [
            {
                "name": c.name,
                "required": _json_safe(c.required),
                "achieved": _json_safe(c.achieved),
                "margin": _json_safe(c.margin),
                "verdict": c.verdict,
                "paper_row": c.paper_row,
                "note": c.note,
            }
            for c in report.checks
        ],
        "limiting_constraint": report.limiting_constraint,
    }


def reports_json(reports: list[usecases.FeasibilityReport]) -> str:
    """Canonical JSON for a report set; the CLI and the HTTP service share it."""
    payload = {"reports": [report_to_dict(r) for r in reports]}
    return json.dumps(payload, indent=2, allow_nan=False) + "\n"


def report_to_text(report: usecases.FeasibilityReport) -> str:
    lines = [f"use case {report.use_case}: {report.overall.upper()}"]
    if report.limiting_constraint:
        lines.append(f"  limiting constraint: {report.limiting_constraint}")
    for c in report.checks:
        req = _fmt(c.required) if isinstance(c.required, float) else (c.required or "-")
        ach = _fmt(c.achieved) if isinstance(c.achieved, float) else (c.achieved or "-")
        margin = _fmt(c.margin) if c.margin is not None else "-"
        line = f"  [{c.verdict:4s}] {c.name:24s} required={req} achieved={ach} margin={margin} ({c.paper_row})"
        if c.note:
            line += f" -- {c.note}"
        lines.append(line)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Heatmaps


def heatmap_to_csv(heatmap: deployment.Heatmap) -> str:
    lines = ["x_m,y_m,value"]
    for j, y in enumerate(heatmap.ys_m):
        for i, x in enumerate(heatmap.xs_m):
            lines.append(f"{_fmt(float(x))},{_fmt(float(y))},{_fmt(float(heatmap.values[j, i]))}")
    return "\n".join(lines) + "\n"


def heatmap_to_pgm(heatmap: deployment.Heatmap) -> str:
    """Plain-text grayscale grid (P2) for quick visual inspection.

    Finite values map linearly onto 0..255 (low = dark); non-finite cells
    render white.
    """
    values = heatmap.values
    finite = values[~(values != values)]  # drop NaN
    finite = finite[abs(finite) != math.inf]
    lo = float(finite.min()) if finite.size else 0.0
    hi = float(finite.max()) if finite.size else 1.0
    span = hi - lo
    rows = []
    for j in range(values.shape[0]):
        cells = []
        for i in range(values.shape[1]):
            v = float(values[j, i])
            if not math.isfinite(v):
                cells.append(255)
            elif span == 0.0:
                cells.append(128)
            else:
                cells.append(int(round(255 * (v - lo) / span)))
        rows.append(" ".join(str(c) for c in cells))
    header = f"P2\n{values.shape[1]} {values.shape[0]}\n255\n"
    return header + "\n".join(rows) + "\n"


def heatmap_to_dict(heatmap: deployment.Heatmap) -> dict:
    return {
        "metric": heatmap.metric,
        "xs_m": [float(x) for x in heatmap.xs_m],
        "ys_m": [float(y) for y in heatmap.ys_m],
        "values": [
            [(float(v) if math.isfinite(v) else None) for v in row] for row in heatmap.values
        ],
    }


# ---------------------------------------------------------------------------
# Sweeps


@dataclass(frozen=True)
class SweepResult:
    param: str
    column: str  # "required_power_dbm" | "required_bandwidth_hz"
    values: list[float]
    solved: list[float | None]
    feasible: list[bool]

    def to_csv(self) -> str:
        lines = [f"param,value,{self.column},feasible"]
        for v, s, ok in zip(self.values, self.solved, self.feasible):
            cell = _fmt(s) if s is not None else "inf"
            lines.append(f"{self.param},{_fmt(v)},{cell},{'true' if ok else 'false'}")
        return "\n".join(lines) + "\n"


def _set_dotted(scn: usecases.ScenarioConfig, dotted: str, value: float) -> usecases.ScenarioConfig:
    from . import scenario as scenario_mod

    data = scenario_mod.scenario_to_dict(scn)
    parts = dotted.split(".")
    if len(parts) != 2 or parts[0] not in ("signal", "hardware", "deployment", "overrides"):
        raise deployment.ConfigurationError(
            f"sweep parameter must look like 'section.key', got {dotted!r}"
        )
    section, key = parts
    if key not in data[section]:
        raise deployment.ConfigurationError(f"unknown sweep parameter {dotted!r}")
    current = data[section][key]
    data[section][key] = int(round(value)) if isinstance(current, int) and not isinstance(current, bool) else value
    return scenario_mod.scenario_from_dict(data)


def run_sweep(
    scn: usecases.ScenarioConfig,
    param: str,
    start: float,
    stop: float,
    points: int,
    target: str,
    use_case_id: str,
) -> SweepResult:
    """Solve the required power (or bandwidth) across a parameter grid.

    ``target`` is "rate" (invert the link budget for the use case's rate at
    its link range) or "peb" (invert the localization bound for its
    accuracy target). Sweeping the power key under a rate target solves for
    bandwidth instead.
    """
    if points < 1:
        raise deployment.ConfigurationError("sweep needs at least one point")
    registry = usecases.builtin_use_cases()
    if use_case_id not in registry:
        raise deployment.ConfigurationError(f"unknown use case {use_case_id!r}")
    uc = registry[use_case_id]
    if target not in ("rate", "peb"):
        raise deployment.ConfigurationError(f"sweep target must be 'rate' or 'peb', got {target!r}")
    if target == "rate" and uc.rate_bps is None:
        raise deployment.ConfigurationError(f"use case {use_case_id} has no rate target")
    if target == "peb" and uc.loc_acc_m is None:
        raise deployment.ConfigurationError(f"use case {use_case_id} has no location accuracy target")

    solve_bandwidth = target == "rate" and param == "hardware.ptx_per_element_dbm"
    column = "required_bandwidth_hz" if solve_bandwidth else "required_power_dbm"
    values = [start + (stop - start) * i / max(points - 1, 1) for i in range(points)]
    solved: list[float | None] = []
    feasible: list[bool] = []
    for v in values:
        s = _set_dotted(scn, param, v)
        link = linkbudget.LinkParams(
            tx=s.hardware.in_array,
            rx=s.hardware.ue_array,
            pathloss=s.hardware.pathloss,
            distance_m=uc.link_range_m,
            noise=s.hardware.ue_noise,
            impl_loss_db=s.hardware.impl_loss_db,
        )
        if target == "rate":
            if solve_bandwidth:
                sol = linkbudget.required_bandwidth(
                    uc.rate_bps, s.hardware.ptx_per_element_dbm, link, s.signal.rate_model
                )
                solved.append(sol.bandwidth_hz)
                feasible.append(sol.feasible)
            else:
                sol = linkbudget.required_power_per_element(
                    uc.rate_bps, s.signal.bandwidth_hz, link, s.signal.rate_model
                )
                solved.append(sol.power_dbm)
                feasible.append(sol.feasible)
        else:
            t_symbols = linkbudget.integration_symbols(
                uc.update_rate_hz or 1.0, s.signal.bandwidth_hz, s.signal.numerology
            )
            params = locbounds.SpebParams(
                integration_symbols=t_symbols,
                bandwidth_hz=s.signal.bandwidth_hz,
                noise_density_w_hz=dbm_to_watts(
                    channel.THERMAL_NOISE_DBM_HZ + s.hardware.in_noise_figure_db
                ),
                distance_m=uc.link_range_m,
                wavelength_m=wavelength_m(s.hardware.carrier_hz),
                n_rx=s.hardware.in_array.n_elements,
                ptx_w=1.0,
                alpha_range=s.overrides.alpha_range,
                alpha_angle=s.overrides.alpha_angle,
            )
            required_w = locbounds.required_tx_power_w(uc.loc_acc_m, params)
            solved.append(10.0 * math.log10(required_w) + 30.0)
            feasible.append(True)
    return SweepResult(param, column, values, solved, feasible)


# ---------------------------------------------------------------------------
# Preset trade-off curves


def error_curve_csv(scn: usecases.ScenarioConfig) -> str:
    """Distance sweep of the localization bound plus the achievable rate.

    Preset: 2 GHz pilots at the scenario carrier, 14 dBm device power on a
    single antenna, 120 transmissions, 32-element anchor line array. Noise
    figure and pathloss exponent come from the scenario.
    """
    bandwidth_hz = 2e9
    ptx_dbm = 14.0
    n_pilots = 120
    n_rx = 32
    n0 = dbm_to_watts(channel.THERMAL_NOISE_DBM_HZ + scn.hardware.in_noise_figure_db)
    lam = wavelength_m(scn.hardware.carrier_hz)
    base = locbounds.SpebParams(
        integration_symbols=n_pilots,
        bandwidth_hz=bandwidth_hz,
        noise_density_w_hz=n0,
        distance_m=1.0,
        wavelength_m=lam,
        n_rx=n_rx,
        ptx_w=dbm_to_watts(ptx_dbm),
        alpha_range=scn.overrides.alpha_range,
        alpha_angle=scn.overrides.alpha_angle,
    )
    rx_array = channel.ArrayConfig(n_rx, 1)
    tx_array = channel.ArrayConfig(1, 1)
    pathloss = scn.hardware.pathloss
    noise = scn.hardware.in_noise
    rate_model = linkbudget.RateModel(math.inf, 1)

    def rate_at(d: float) -> float:
        snr = channel.link_snr_db(ptx_dbm, tx_array, rx_array, pathloss, d, noise, bandwidth_hz, 0.0)
        return linkbudget.achievable_rate_bps(snr, bandwidth_hz, rate_model)

    grid = [10 ** (math.log10(200.0) * i / 59) for i in range(60)]
    points = locbounds.error_vs_distance_curve(base, grid, rate_at)
    lines = ["d_m,range_err_m,angle_err_deg,peb_m,rate_bps"]
    for p in points:
        lines.append(
            f"{_fmt(p.d_m)},{_fmt(p.range_err_m)},{_fmt(p.angle_err_deg)},{_fmt(p.peb_m)},{_fmt(p.rate_bps)}"
        )
    return "\n".join(lines) + "\n"


# One documented calibration for the bandwidth/power trade-off curves:
# patch-like 4 dBi element gain on both arrays, applied identically to both
# link distances. All other constants follow the link-budget defaults.
CURVE_ELEMENT_GAIN_DBI = 4.0


def bandwidth_power_link_params(distance_m: float, carrier_hz: float = 140e9) -> linkbudget.LinkParams:
    return linkbudget.LinkParams(
        tx=channel.ArrayConfig(256, 1, element_gain_dbi=CURVE_ELEMENT_GAIN_DBI),
        rx=channel.ArrayConfig(64, 1, element_gain_dbi=CURVE_ELEMENT_GAIN_DBI),
        pathloss=channel.PathlossModel(carrier_hz, 2.0),
        distance_m=distance_m,
        noise=channel.NoiseModel(10.0),
        impl_loss_db=20.0,
    )


def bandwidth_power_curve_csv(scn: usecases.ScenarioConfig) -> str:
    """Required bandwidth versus per-element power for both rate targets.

    Point-to-point link at the scenario carrier, 256 TX / 64 RX elements,
    RX noise figure 10 dB, pathloss exponent 2, 20 dB implementation lump,
    uncapped Shannon rate with a single stream.
    """
    model = linkbudget.RateModel(math.inf, 1)
    carrier = scn.hardware.carrier_hz
    link_short = bandwidth_power_link_params(10.0, carrier)
    link_long = bandwidth_power_link_params(100.0, carrier)
    lines = ["ptx_dbm,required_bandwidth_hz_100gbps_10m,required_bandwidth_hz_10gbps_100m"]
    for i in range(31):
        ptx = float(i)
        short = linkbudget.required_bandwidth(100e9, ptx, link_short, model)
        long = linkbudget.required_bandwidth(10e9, ptx, link_long, model)
        cell_short = _fmt(short.bandwidth_hz) if short.feasible else "inf"
        cell_long = _fmt(long.bandwidth_hz) if long.feasible else "inf"
        lines.append(f"{_fmt(ptx)},{cell_short},{cell_long}")
    return "\n".join(lines) + "\n"
