"""Scenario file parsing and serialization.

The format is sectioned key-value text. `[signal]`, `[hardware]`,
`[deployment]`, and `[overrides]` appear at most once; `[nodes]` and
`[obstacles]` repeat, one section per node or obstacle. Keys carry explicit
unit suffixes so a bare number can never be misread. Unknown keys are
rejected and every diagnostic carries a line and column.

An empty file is valid and yields the pure-defaults scenario.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import channel, deployment, usecases

_UNIT_SUFFIXES = ("_hz", "_dbm", "_dbi", "_db", "_m2", "_m", "_s", "_deg")


@dataclass(frozen=True)
class Diagnostic:
    line: int
    col: int
    kind: str  # "syntax" | "unknown-section" | "unknown-key" | "missing-unit" | "invariant"
    message: str

    def __str__(self):
        return f"line {self.line}, col {self.col}: {self.kind}: {self.message}"


class ScenarioParseError(ValueError):
    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("\n".join(str(d) for d in self.diagnostics))


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("true", "yes", "on", "1"):
        return True
    if lowered in ("false", "no", "off", "0"):
        return False
    raise ValueError(f"expected a boolean, got {text!r}")


def _parse_tags(text: str) -> tuple[str, ...]:
    return tuple(t.strip() for t in text.split(",") if t.strip())


def _parse_vertices(text: str) -> tuple[tuple[float, float], ...]:
    points = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        parts = chunk.split()
        if len(parts) != 2:
            raise ValueError(f"expected 'x y' pairs separated by ';', got {chunk!r}")
        points.append((float(parts[0]), float(parts[1])))
    return tuple(points)


_SCHEMA = {
    "signal": {
        "bandwidth_hz": float,
        "waveform": str,
        "coherent": _parse_bool,
        "shaping": _parse_tags,
        "streams": int,
        "se_cap_bps_per_hz": float,
        "subcarriers": int,
        "cp_overhead": float,
        "symbols_per_slot": int,
    },
    "hardware": {
        "carrier_hz": float,
        "channelized": _parse_bool,
        "phase_coherent": _parse_bool,
        "full_duplex_isolation": _parse_bool,
        "ptx_per_element_dbm": float,
        "in_elements_per_dim": int,
        "in_dims": int,
        "in_element_gain_dbi": float,
        "in_spacing_wavelengths": float,
        "ue_elements_per_dim": int,
        "ue_dims": int,
        "ue_element_gain_dbi": float,
        "ue_spacing_wavelengths": float,
        "in_noise_figure_db": float,
        "ue_noise_figure_db": float,
        "impl_loss_db": float,
        "pathloss_exponent": float,
    },
    "deployment": {
        "ue_x_m": float,
        "ue_y_m": float,
        "ue_z_m": float,
        "mix": _parse_tags,
        "sigma_toa_s": float,
        "sigma_tdoa_s": float,
        "sigma_rtt_s": float,
        "sigma_aoa_deg": float,
        "region_min_x_m": float,
        "region_min_y_m": float,
        "region_max_x_m": float,
        "region_max_y_m": float,
        "region_resolution_m": float,
    },
    "nodes": {
        "x_m": float,
        "y_m": float,
        "z_m": float,
        "kind": str,
        "yaw_deg": float,
        "pitch_deg": float,
        "roll_deg": float,
        "elements_per_dim": int,
        "dims": int,
        "element_gain_dbi": float,
        "sync_error_s": float,
        "position_error_m": float,
        "orientation_error_deg": float,
    },
    "obstacles": {
        "vertices_m": _parse_vertices,
    },
    "overrides": {
        "alpha_range": float,
        "alpha_angle": float,
        "detection_threshold_db": float,
        "rcs_m2": float,
        "latency_budget_fraction": float,
        "verdict_rtol": float,
    },
}

_REPEATED_SECTIONS = ("nodes", "obstacles")


def _split_sections(text: str, diagnostics: list[Diagnostic]):
    """First pass: raw (section, entries) list with source positions."""
    sections = []
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        col = raw.index(stripped[0]) + 1
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                diagnostics.append(Diagnostic(lineno, col, "syntax", f"unterminated section header {stripped!r}"))
                current = None
                continue
            name = stripped[1:-1].strip().lower()
            if name not in _SCHEMA:
                diagnostics.append(Diagnostic(lineno, col, "unknown-section", f"unknown section [{name}]"))
                current = None
                continue
            current = (name, lineno, {})
            sections.append(current)
            continue
        if "=" not in stripped:
            diagnostics.append(Diagnostic(lineno, col, "syntax", f"expected 'key = value', got {stripped!r}"))
            continue
        if current is None:
            diagnostics.append(Diagnostic(lineno, col, "syntax", "key outside any section"))
            continue
        key, _, value = stripped.partition("=")
        key = key.strip().lower()
        value = value.strip()
        section_name, _, entries = current
        schema = _SCHEMA[section_name]
        if key not in schema:
            base_matches = [k for k in schema if k.startswith(key + "_") and k[len(key):] in _UNIT_SUFFIXES]
            if base_matches:
                diagnostics.append(
                    Diagnostic(lineno, col, "missing-unit", f"key {key!r} needs a unit suffix: use {base_matches[0]!r}")
                )
            else:
                diagnostics.append(
                    Diagnostic(lineno, col, "unknown-key", f"unknown key {key!r} in section [{section_name}]")
                )
            continue
        if key in entries:
            diagnostics.append(Diagnostic(lineno, col, "syntax", f"duplicate key {key!r}"))
            continue
        try:
            entries[key] = (schema[key](value), lineno, col)
        except (ValueError, TypeError) as exc:
            diagnostics.append(Diagnostic(lineno, col, "invariant", f"bad value for {key!r}: {exc}"))
    return sections


def _merge(sections, name: str, diagnostics: list[Diagnostic]) -> dict:
    """Collapse singleton sections, flagging duplicates."""
    found = [s for s in sections if s[0] == name]
    if len(found) > 1:
        _, lineno, _ = found[1]
        diagnostics.append(Diagnostic(lineno, 1, "syntax", f"section [{name}] given more than once"))
    merged = {}
    for _, _, entries in found:
        merged.update(entries)
    return merged


def _get(entries: dict, key: str, default):
    return entries[key][0] if key in entries else default


def parse_scenario(text: str) -> usecases.ScenarioConfig:
    """Parse scenario text into a fully defaulted configuration.

    Raises ScenarioParseError carrying every diagnostic found; parsing never
    stops at the first problem.
    """
    diagnostics: list[Diagnostic] = []
    sections = _split_sections(text, diagnostics)

    signal_e = _merge(sections, "signal", diagnostics)
    hardware_e = _merge(sections, "hardware", diagnostics)
    deploy_e = _merge(sections, "deployment", diagnostics)
    overrides_e = _merge(sections, "overrides", diagnostics)
    node_sections = [s for s in sections if s[0] == "nodes"]
    obstacle_sections = [s for s in sections if s[0] == "obstacles"]

    def build(factory, entries, **kwargs):
        lineno = min((v[1] for v in entries.values()), default=1)
        try:
            return factory(**kwargs)
        except (ValueError, TypeError) as exc:
            diagnostics.append(Diagnostic(lineno, 1, "invariant", str(exc)))
            return None

    signal = build(
        usecases.SignalConfig,
        signal_e,
        bandwidth_hz=_get(signal_e, "bandwidth_hz", 5e9),
        waveform=_get(signal_e, "waveform", "ofdm"),
        coherent=_get(signal_e, "coherent", True),
        shaping=_get(signal_e, "shaping", ("freq", "time", "space")),
        streams=_get(signal_e, "streams", 2),
        se_cap_bps_hz=_get(signal_e, "se_cap_bps_per_hz", 6.0),
        subcarriers=_get(signal_e, "subcarriers", 4096),
        cp_overhead=_get(signal_e, "cp_overhead", 0.07),
        symbols_per_slot=_get(signal_e, "symbols_per_slot", 14),
    )

    in_array = build(
        channel.ArrayConfig,
        hardware_e,
        elements_per_dim=_get(hardware_e, "in_elements_per_dim", 16),
        dims=_get(hardware_e, "in_dims", 2),
        element_gain_dbi=_get(hardware_e, "in_element_gain_dbi", 0.0),
        spacing_wavelengths=_get(hardware_e, "in_spacing_wavelengths", 0.5),
    )
    ue_array = build(
        channel.ArrayConfig,
        hardware_e,
        elements_per_dim=_get(hardware_e, "ue_elements_per_dim", 8),
        dims=_get(hardware_e, "ue_dims", 2),
        element_gain_dbi=_get(hardware_e, "ue_element_gain_dbi", 0.0),
        spacing_wavelengths=_get(hardware_e, "ue_spacing_wavelengths", 0.5),
    )
    hardware = None
    if in_array is not None and ue_array is not None:
        hardware = build(
            usecases.HardwareConfig,
            hardware_e,
            carrier_hz=_get(hardware_e, "carrier_hz", 140e9),
            channelized=_get(hardware_e, "channelized", False),
            phase_coherent=_get(hardware_e, "phase_coherent", True),
            full_duplex_isolation=_get(hardware_e, "full_duplex_isolation", True),
            in_array=in_array,
            ue_array=ue_array,
            ptx_per_element_dbm=_get(hardware_e, "ptx_per_element_dbm", 10.0),
            in_noise_figure_db=_get(hardware_e, "in_noise_figure_db", 5.0),
            ue_noise_figure_db=_get(hardware_e, "ue_noise_figure_db", 10.0),
            impl_loss_db=_get(hardware_e, "impl_loss_db", 20.0),
            pathloss_exponent=_get(hardware_e, "pathloss_exponent", 2.0),
        )

    mix = None
    mix_tags = _get(deploy_e, "mix", ("tdoa",))
    sigma_keys = {"toa": "sigma_toa_s", "tdoa": "sigma_tdoa_s", "rtt": "sigma_rtt_s", "aoa": "sigma_aoa_deg"}
    mix_lineno = deploy_e["mix"][1] if "mix" in deploy_e else 1
    unknown_types = [t for t in mix_tags if t not in sigma_keys]
    if unknown_types:
        diagnostics.append(
            Diagnostic(mix_lineno, 1, "invariant", f"unknown measurement types {unknown_types}")
        )
    else:
        defaults = {"sigma_tdoa_s": 2e-11} if "mix" not in deploy_e else {}
        kwargs = {}
        for tag in mix_tags:
            key = sigma_keys[tag]
            value = _get(deploy_e, key, defaults.get(key))
            if value is None:
                diagnostics.append(
                    Diagnostic(mix_lineno, 1, "invariant", f"mix includes {tag!r} but {key} is not set")
                )
                continue
            if tag == "aoa":
                kwargs["sigma_aoa_rad"] = math.radians(value)
            else:
                kwargs[key] = value
        for tag, key in sigma_keys.items():
            if key in deploy_e and tag not in mix_tags:
                diagnostics.append(
                    Diagnostic(deploy_e[key][1], 1, "invariant", f"{key} set but {tag!r} not in mix")
                )
        if kwargs:
            mix = build(deployment.MeasurementMix, deploy_e, **kwargs)

    region = build(
        deployment.Region,
        deploy_e,
        min_x_m=_get(deploy_e, "region_min_x_m", -20.0),
        min_y_m=_get(deploy_e, "region_min_y_m", -20.0),
        max_x_m=_get(deploy_e, "region_max_x_m", 20.0),
        max_y_m=_get(deploy_e, "region_max_y_m", 20.0),
        resolution_m=_get(deploy_e, "region_resolution_m", 2.0),
    )

    nodes = []
    for _, lineno, entries in node_sections:
        array = in_array
        if any(k in entries for k in ("elements_per_dim", "dims", "element_gain_dbi")) or array is None:
            array = build(
                channel.ArrayConfig,
                entries,
                elements_per_dim=_get(entries, "elements_per_dim", 16),
                dims=_get(entries, "dims", 2),
                element_gain_dbi=_get(entries, "element_gain_dbi", 0.0),
            )
            if array is None:
                continue
        node = build(
            deployment.InfrastructureNode,
            entries,
            position_m=(
                _get(entries, "x_m", 0.0),
                _get(entries, "y_m", 0.0),
                _get(entries, "z_m", 5.0),
            ),
            kind=_get(entries, "kind", "bs"),
            orientation_rad=(
                math.radians(_get(entries, "yaw_deg", 0.0)),
                math.radians(_get(entries, "pitch_deg", 0.0)),
                math.radians(_get(entries, "roll_deg", 0.0)),
            ),
            array=array,
            sync_error_s=_get(entries, "sync_error_s", 50e-12),
            position_error_m=_get(entries, "position_error_m", 1e-3),
            orientation_error_rad=math.radians(_get(entries, "orientation_error_deg", 0.05)),
        )
        if node is not None:
            nodes.append(node)

    obstacles = []
    for _, lineno, entries in obstacle_sections:
        if "vertices_m" not in entries:
            diagnostics.append(Diagnostic(lineno, 1, "invariant", "obstacle section needs vertices_m"))
            continue
        obstacle = build(deployment.Obstacle, entries, vertices_m=entries["vertices_m"][0])
        if obstacle is not None:
            obstacles.append(obstacle)

    overrides = build(
        usecases.Overrides,
        overrides_e,
        alpha_range=_get(overrides_e, "alpha_range", usecases.Overrides().alpha_range),
        alpha_angle=_get(overrides_e, "alpha_angle", usecases.Overrides().alpha_angle),
        detection_threshold_db=_get(overrides_e, "detection_threshold_db", 10.0),
        rcs_m2=_get(overrides_e, "rcs_m2", None),
        latency_budget_fraction=_get(overrides_e, "latency_budget_fraction", 0.3),
        verdict_rtol=_get(overrides_e, "verdict_rtol", usecases.VERDICT_RTOL_DEFAULT),
    )

    if diagnostics or None in (signal, hardware, mix, region, overrides):
        raise ScenarioParseError(diagnostics)

    if not node_sections:
        nodes = list(usecases.default_nodes(hardware))
    deploy = usecases.DeploymentConfig(
        nodes=tuple(nodes),
        obstacles=tuple(obstacles),
        region=region,
        mix=mix,
        ue_position_m=(
            _get(deploy_e, "ue_x_m", 0.0),
            _get(deploy_e, "ue_y_m", 0.0),
            _get(deploy_e, "ue_z_m", 0.0),
        ),
    )
    return usecases.ScenarioConfig(signal=signal, hardware=hardware, deployment=deploy, overrides=overrides)


def load_scenario(path: str) -> usecases.ScenarioConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_scenario(fh.read())


# ---------------------------------------------------------------------------
# Dict form shared by the HTTP API


def scenario_to_dict(scn: usecases.ScenarioConfig) -> dict:
    """Nested dict using exactly the scenario-file keys."""
    mix = scn.deployment.mix
    mix_tags = mix.types
    deploy = {
        "ue_x_m": scn.deployment.ue_position_m[0],
        "ue_y_m": scn.deployment.ue_position_m[1],
        "ue_z_m": scn.deployment.ue_position_m[2],
        "mix": list(mix_tags),
        "region_min_x_m": scn.deployment.region.min_x_m,
        "region_min_y_m": scn.deployment.region.min_y_m,
        "region_max_x_m": scn.deployment.region.max_x_m,
        "region_max_y_m": scn.deployment.region.max_y_m,
        "region_resolution_m": scn.deployment.region.resolution_m,
    }
    if mix.sigma_toa_s is not None:
        deploy["sigma_toa_s"] = mix.sigma_toa_s
    if mix.sigma_tdoa_s is not None:
        deploy["sigma_tdoa_s"] = mix.sigma_tdoa_s
    if mix.sigma_rtt_s is not None:
        deploy["sigma_rtt_s"] = mix.sigma_rtt_s
    if mix.sigma_aoa_rad is not None:
        deploy["sigma_aoa_deg"] = math.degrees(mix.sigma_aoa_rad)
    return {
        "signal": {
            "bandwidth_hz": scn.signal.bandwidth_hz,
            "waveform": scn.signal.waveform,
            "coherent": scn.signal.coherent,
            "shaping": list(scn.signal.shaping),
            "streams": scn.signal.streams,
            "se_cap_bps_per_hz": scn.signal.se_cap_bps_hz,
            "subcarriers": scn.signal.subcarriers,
            "cp_overhead": scn.signal.cp_overhead,
            "symbols_per_slot": scn.signal.symbols_per_slot,
        },
        "hardware": {
            "carrier_hz": scn.hardware.carrier_hz,
            "channelized": scn.hardware.channelized,
            "phase_coherent": scn.hardware.phase_coherent,
            "full_duplex_isolation": scn.hardware.full_duplex_isolation,
            "ptx_per_element_dbm": scn.hardware.ptx_per_element_dbm,
            "in_elements_per_dim": scn.hardware.in_array.elements_per_dim,
            "in_dims": scn.hardware.in_array.dims,
            "in_element_gain_dbi": scn.hardware.in_array.element_gain_dbi,
            "in_spacing_wavelengths": scn.hardware.in_array.spacing_wavelengths,
            "ue_elements_per_dim": scn.hardware.ue_array.elements_per_dim,
            "ue_dims": scn.hardware.ue_array.dims,
            "ue_element_gain_dbi": scn.hardware.ue_array.element_gain_dbi,
            "ue_spacing_wavelengths": scn.hardware.ue_array.spacing_wavelengths,
            "in_noise_figure_db": scn.hardware.in_noise_figure_db,
            "ue_noise_figure_db": scn.hardware.ue_noise_figure_db,
            "impl_loss_db": scn.hardware.impl_loss_db,
            "pathloss_exponent": scn.hardware.pathloss_exponent,
        },
        "deployment": deploy,
        "nodes": [
            {
                "x_m": n.position_m[0],
                "y_m": n.position_m[1],
                "z_m": n.position_m[2],
                "kind": n.kind,
                "yaw_deg": math.degrees(n.orientation_rad[0]),
                "pitch_deg": math.degrees(n.orientation_rad[1]),
                "roll_deg": math.degrees(n.orientation_rad[2]),
                "elements_per_dim": n.array.elements_per_dim,
                "dims": n.array.dims,
                "element_gain_dbi": n.array.element_gain_dbi,
                "sync_error_s": n.sync_error_s,
                "position_error_m": n.position_error_m,
                "orientation_error_deg": math.degrees(n.orientation_error_rad),
            }
            for n in scn.deployment.nodes
        ],
        "obstacles": [{"vertices_m": [list(v) for v in o.vertices_m]} for o in scn.deployment.obstacles],
        "overrides": {
            "alpha_range": scn.overrides.alpha_range,
            "alpha_angle": scn.overrides.alpha_angle,
            "detection_threshold_db": scn.overrides.detection_threshold_db,
            "rcs_m2": scn.overrides.rcs_m2,
            "latency_budget_fraction": scn.overrides.latency_budget_fraction,
            "verdict_rtol": scn.overrides.verdict_rtol,
        },
    }


def scenario_from_dict(data: dict) -> usecases.ScenarioConfig:
    """Build a scenario from the dict form; unknown keys are rejected."""
    if not isinstance(data, dict):
        raise ScenarioParseError([Diagnostic(1, 1, "syntax", "scenario body must be an object")])
    diagnostics: list[Diagnostic] = []
    known_top = {"signal", "hardware", "deployment", "nodes", "obstacles", "overrides"}
    for key in data:
        if key not in known_top:
            diagnostics.append(Diagnostic(1, 1, "unknown-key", f"unknown top-level key {key!r}"))

    def check_keys(section: str, payload: dict):
        schema = dict(_SCHEMA[section])
        for key in payload:
            if key not in schema:
                diagnostics.append(Diagnostic(1, 1, "unknown-key", f"unknown key {key!r} in {section!r}"))

    for section in ("signal", "hardware", "deployment", "overrides"):
        payload = data.get(section, {})
        if not isinstance(payload, dict):
            diagnostics.append(Diagnostic(1, 1, "syntax", f"{section!r} must be an object"))
        else:
            check_keys(section, payload)
    for i, node in enumerate(data.get("nodes", [])):
        if isinstance(node, dict):
            check_keys("nodes", node)
        else:
            diagnostics.append(Diagnostic(1, 1, "syntax", f"nodes[{i}] must be an object"))
    for i, obstacle in enumerate(data.get("obstacles", [])):
        if isinstance(obstacle, dict):
            check_keys("obstacles", obstacle)
        else:
            diagnostics.append(Diagnostic(1, 1, "syntax", f"obstacles[{i}] must be an object"))
    if diagnostics:
        raise ScenarioParseError(diagnostics)

    # Reuse the text parser so dict and file inputs share one code path.
    lines = []

    def emit(section: str, payload: dict):
        lines.append(f"[{section}]")
        for key, value in payload.items():
            if value is None:
                continue
            if isinstance(value, bool):
                value = "true" if value else "false"
            elif isinstance(value, (list, tuple)):
                if key == "vertices_m":
                    value = "; ".join(f"{p[0]} {p[1]}" for p in value)
                else:
                    value = ", ".join(str(v) for v in value)
            lines.append(f"{key} = {value}")

    for section in ("signal", "hardware", "deployment", "overrides"):
        if data.get(section):
            emit(section, data[section])
    for node in data.get("nodes", []):
        emit("nodes", node)
    for obstacle in data.get("obstacles", []):
        emit("obstacles", obstacle)
    return parse_scenario("\n".join(lines))


def scenario_to_text(scn: usecases.ScenarioConfig) -> str:
    """Serialize to scenario-file text; parse_scenario round-trips it."""
    data = scenario_to_dict(scn)
    lines = []

    def emit(section: str, payload: dict):
        lines.append(f"[{section}]")
        for key, value in payload.items():
            if value is None:
                continue
            if isinstance(value, bool):
                value = "true" if value else "false"
            elif isinstance(value, (list, tuple)):
                if key == "vertices_m":
                    value = "; ".join(f"{p[0]} {p[1]}" for p in value)
                else:
                    value = ", ".join(str(v) for v in value)
            lines.append(f"{key} = {value}")
        lines.append("")

    for section in ("signal", "hardware", "deployment", "overrides"):
        emit(section, data[section])
    for node in data["nodes"]:
        emit("nodes", node)
    for obstacle in data["obstacles"]:
        emit("obstacles", obstacle)
    return "\n".join(lines)
