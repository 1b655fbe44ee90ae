import math
from pathlib import Path

import pytest

from isacplan import deployment, scenario, usecases
from isacplan.scenario import ScenarioParseError

SCENARIO_DIR = Path(__file__).resolve().parents[1] / "scenarios"


def kinds(exc: ScenarioParseError) -> list[str]:
    return [d.kind for d in exc.diagnostics]


def test_empty_file_yields_valid_defaults():
    scn = scenario.parse_scenario("")
    assert scn.signal.bandwidth_hz == 5e9
    assert scn.hardware.carrier_hz == 140e9
    assert len(scn.deployment.nodes) == 4
    assert scn.deployment.mix.sigma_tdoa_s == 2e-11


def test_comments_and_blank_lines_ignored():
    scn = scenario.parse_scenario("# hello\n\n[signal] # trailing\nbandwidth_hz = 1e9 # inline\n")
    assert scn.signal.bandwidth_hz == 1e9


def test_negative_bandwidth_is_invariant_violation():
    with pytest.raises(ScenarioParseError) as err:
        scenario.parse_scenario("[signal]\nbandwidth_hz = -1\n")
    assert kinds(err.value) == ["invariant"]
    assert err.value.diagnostics[0].line == 2


def test_unknown_key_and_section_reported_with_position():
    with pytest.raises(ScenarioParseError) as err:
        scenario.parse_scenario("[signal]\nwombat = 3\n[plumbing]\n")
    by_kind = {d.kind: d for d in err.value.diagnostics}
    assert by_kind["unknown-key"].line == 2
    assert by_kind["unknown-section"].line == 3


def test_missing_unit_suffix_gets_dedicated_diagnostic():
    with pytest.raises(ScenarioParseError) as err:
        scenario.parse_scenario("[signal]\nbandwidth = 2e9\n")
    (diag,) = err.value.diagnostics
    assert diag.kind == "missing-unit"
    assert "bandwidth_hz" in diag.message


def test_syntax_errors_do_not_stop_collection():
    text = "[signal\nbandwidth_hz = 2e9\n[signal]\nstreams = seven\nbandwidth_hz = -4\n"
    with pytest.raises(ScenarioParseError) as err:
        scenario.parse_scenario(text)
    assert len(err.value.diagnostics) >= 3
    assert "syntax" in kinds(err.value)
    assert "invariant" in kinds(err.value)


def test_duplicate_keys_and_sections_flagged():
    with pytest.raises(ScenarioParseError) as err:
        scenario.parse_scenario("[signal]\nstreams = 1\nstreams = 2\n[overrides]\n[overrides]\n")
    assert kinds(err.value).count("syntax") == 2


def test_mix_requires_matching_sigmas():
    with pytest.raises(ScenarioParseError) as err:
        scenario.parse_scenario("[deployment]\nmix = toa\n")
    assert "sigma_toa_s" in str(err.value)
    with pytest.raises(ScenarioParseError) as err:
        scenario.parse_scenario("[deployment]\nmix = toa\nsigma_toa_s = 1e-9\nsigma_aoa_deg = 1\n")
    assert "not in mix" in str(err.value)


def test_aoa_sigma_converted_to_radians():
    scn = scenario.parse_scenario("[deployment]\nmix = aoa\nsigma_aoa_deg = 2\n")
    assert scn.deployment.mix.sigma_aoa_rad == pytest.approx(math.radians(2.0))


def test_obstacle_parsing():
    scn = scenario.parse_scenario("[obstacles]\nvertices_m = 0 0; 4 0; 4 4; 0 4\n")
    assert scn.deployment.obstacles == (
        deployment.Obstacle(vertices_m=((0.0, 0.0), (4.0, 0.0), (4.0, 4.0), (0.0, 4.0))),
    )


def test_node_array_defaults_to_infrastructure_array():
    scn = scenario.parse_scenario(
        "[hardware]\nin_elements_per_dim = 24\n[nodes]\nx_m = 1\ny_m = 2\n"
    )
    assert scn.deployment.nodes[0].array.elements_per_dim == 24
    scn2 = scenario.parse_scenario("[nodes]\nx_m = 1\ny_m = 2\nelements_per_dim = 6\ndims = 1\n")
    assert scn2.deployment.nodes[0].array.elements_per_dim == 6


def test_golden_file_matches_fixture():
    scn = scenario.load_scenario(str(SCENARIO_DIR / "l1.scenario"))
    assert scn.signal.bandwidth_hz == 2e9
    assert scn.signal.coherent is True
    assert scn.hardware.carrier_hz == 28e9
    assert scn.hardware.in_array.elements_per_dim == 16
    assert scn.hardware.ue_array.elements_per_dim == 16
    assert scn.deployment.mix == deployment.MeasurementMix(sigma_tdoa_s=2e-11)
    assert len(scn.deployment.nodes) == 4
    node = scn.deployment.nodes[0]
    assert node.position_m == (-7.0, -7.0, 3.0)
    assert node.sync_error_s == 5e-11
    assert node.position_error_m == 0.5e-3
    assert node.orientation_error_rad == pytest.approx(math.radians(0.05))


def test_text_round_trip_identity():
    for name in ("c1", "c2", "l1", "l2", "l3", "s1", "s2", "recommended", "obstructed"):
        scn = scenario.load_scenario(str(SCENARIO_DIR / f"{name}.scenario"))
        assert scenario.parse_scenario(scenario.scenario_to_text(scn)) == scn


def test_dict_round_trip_identity():
    scn = usecases.default_scenario()
    assert scenario.scenario_from_dict(scenario.scenario_to_dict(scn)) == scn


def test_dict_form_rejects_unknown_keys():
    data = scenario.scenario_to_dict(usecases.default_scenario())
    data["signal"]["chirp_rate"] = 5
    with pytest.raises(ScenarioParseError):
        scenario.scenario_from_dict(data)
    with pytest.raises(ScenarioParseError):
        scenario.scenario_from_dict({"extra_top": {}})
    with pytest.raises(ScenarioParseError):
        scenario.scenario_from_dict({"nodes": ["not-a-node"]})
