import dataclasses
from pathlib import Path

import pytest

from isacplan import deployment, scenario, usecases

SCENARIO_DIR = Path(__file__).resolve().parents[1] / "scenarios"
REGISTRY = usecases.builtin_use_cases()


def load(name: str) -> usecases.ScenarioConfig:
    return scenario.load_scenario(str(SCENARIO_DIR / f"{name}.scenario"))


# --- registry -------------------------------------------------------------------


def test_registry_has_seven_cases():
    assert len(REGISTRY) == 7
    assert set(REGISTRY) == {"C1", "C2", "L1", "L2", "L3", "S1", "S2"}


def test_registry_kpi_spot_checks():
    assert REGISTRY["C1"].rate_bps == 100e9
    assert REGISTRY["C2"].rate_bps == 10e9
    assert REGISTRY["L1"].loc_acc_m == 0.01
    assert REGISTRY["L2"].update_rate_hz == 1e3
    assert REGISTRY["L3"].link_range_m == 1000.0
    assert REGISTRY["S1"].sensing.max_range_m == 50.0
    assert REGISTRY["S1"].sensing.velocity_m_s == 0.04
    assert REGISTRY["S2"].sensing.mode == "bistatic"


def test_registry_kinds():
    kinds = {i: REGISTRY[i].kind for i in REGISTRY}
    assert kinds["C1"] == kinds["C2"] == "communication"
    assert kinds["L1"] == kinds["L2"] == kinds["L3"] == "localization"
    assert kinds["S1"] == kinds["S2"] == "sensing"


# --- evaluate on the golden columns ----------------------------------------------


@pytest.mark.parametrize("uc_id", ["C1", "C2", "L1", "L2", "L3", "S1", "S2"])
def test_golden_columns_pass(uc_id):
    report = usecases.evaluate(load(uc_id.lower()), REGISTRY[uc_id])
    assert report.overall == "pass"
    assert all(c.verdict != "fail" for c in report.checks)


def test_report_structure_is_auditable():
    for uc_id in REGISTRY:
        report = usecases.evaluate(load(uc_id.lower()), REGISTRY[uc_id])
        names = [c.name for c in report.checks]
        assert len(names) == len(set(names)), f"duplicate check names for {uc_id}"
        for check in report.checks:
            assert check.paper_row.count(".") == 1
            assert check.verdict in ("pass", "fail", "warn")
        assert report.limiting_constraint in names


def test_obstructed_scenario_loses_one_anchor():
    scn = load("obstructed")
    visible = [
        n
        for n in scn.deployment.nodes
        if deployment.los_visible((0.0, 0.0), n, scn.deployment.obstacles)
    ]
    assert len(visible) == 3
    report = usecases.evaluate(scn, REGISTRY["L1"])
    assert report.overall == "fail"
    assert report.limiting_constraint == "anchors"
    anchors = next(c for c in report.checks if c.name == "anchors")
    assert anchors.achieved == 3 and anchors.required == 4


def test_reflective_anchor_does_not_satisfy_time_difference_rule():
    data = scenario.scenario_to_dict(load("l1"))
    data["nodes"][3]["kind"] = "ris"
    report = usecases.evaluate(scenario.scenario_from_dict(data), REGISTRY["L1"])
    anchors = next(c for c in report.checks if c.name == "anchors")
    assert anchors.verdict == "fail"
    assert anchors.achieved == 3


def test_empty_deployment_fails_at_anchor_check():
    scn = dataclasses.replace(
        load("l1"),
        deployment=dataclasses.replace(load("l1").deployment, nodes=()),
    )
    report = usecases.evaluate(scn, REGISTRY["L1"])
    assert report.overall == "fail"
    verdicts = {c.name: c.verdict for c in report.checks}
    assert verdicts["anchors"] == "fail"


def test_l1_narrowband_small_array_limited_by_resolution_route():
    data = scenario.scenario_to_dict(load("l1"))
    data["signal"]["bandwidth_hz"] = 0.4e9
    data["hardware"]["in_elements_per_dim"] = 10
    report = usecases.evaluate(scenario.scenario_from_dict(data), REGISTRY["L1"])
    assert report.overall == "fail"
    assert report.limiting_constraint == "resolution_route"
    verdicts = {c.name: c.verdict for c in report.checks}
    assert verdicts["resolution_route"] == "fail"


def test_l1_angular_route_accepts_narrowband_with_large_array():
    data = scenario.scenario_to_dict(load("l1"))
    data["signal"]["bandwidth_hz"] = 0.5e9
    data["hardware"]["in_elements_per_dim"] = 64
    report = usecases.evaluate(scenario.scenario_from_dict(data), REGISTRY["L1"])
    route = next(c for c in report.checks if c.name == "resolution_route")
    assert route.verdict == "pass"
    assert "angular" in route.note


def test_coherence_binding_for_precision_cases():
    data = scenario.scenario_to_dict(load("l1"))
    data["signal"]["coherent"] = False
    report = usecases.evaluate(scenario.scenario_from_dict(data), REGISTRY["L1"])
    verdicts = {c.name: c.verdict for c in report.checks}
    assert verdicts["coherence"] == "fail"


def test_waveform_mismatch_is_advisory():
    data = scenario.scenario_to_dict(load("l1"))
    data["signal"]["waveform"] = "single_carrier"
    report = usecases.evaluate(scenario.scenario_from_dict(data), REGISTRY["L1"])
    verdicts = {c.name: c.verdict for c in report.checks}
    assert verdicts["waveform"] == "warn"
    assert report.overall == "pass"  # warnings never fail a scenario


def test_channelization_without_phase_coherence():
    data = scenario.scenario_to_dict(load("l1"))
    data["hardware"]["channelized"] = True
    data["hardware"]["phase_coherent"] = False
    report = usecases.evaluate(scenario.scenario_from_dict(data), REGISTRY["L1"])
    assert {c.name: c.verdict for c in report.checks}["channelization"] == "fail"
    comm = scenario.scenario_to_dict(load("c1"))
    comm["hardware"]["channelized"] = True
    comm["hardware"]["phase_coherent"] = False
    report2 = usecases.evaluate(scenario.scenario_from_dict(comm), REGISTRY["C1"])
    assert {c.name: c.verdict for c in report2.checks}["channelization"] == "warn"


def test_s2_reports_kpi_tensions_as_warnings():
    report = usecases.evaluate(load("s2"), REGISTRY["S2"])
    warns = {c.name for c in report.checks if c.verdict == "warn"}
    assert "velocity" in warns
    assert "range_resolution" in warns
    assert report.overall == "pass"


def test_full_duplex_flag_binds_monostatic_sensing():
    data = scenario.scenario_to_dict(load("s1"))
    data["hardware"]["full_duplex_isolation"] = False
    report = usecases.evaluate(scenario.scenario_from_dict(data), REGISTRY["S1"])
    assert {c.name: c.verdict for c in report.checks}["full_duplex"] == "fail"


def test_unknown_use_case_rejected():
    fake = dataclasses.replace(REGISTRY["L1"], id="L9")
    with pytest.raises(deployment.ConfigurationError):
        usecases.evaluate(usecases.default_scenario(), fake)
    with pytest.raises(deployment.ConfigurationError):
        usecases.evaluate_all(usecases.default_scenario(), ["L1", "zz"])


def test_evaluate_is_deterministic():
    scn = load("l2")
    assert usecases.evaluate(scn, REGISTRY["L2"]) == usecases.evaluate(scn, REGISTRY["L2"])


def test_monotonicity_improving_resources_never_breaks_a_pass():
    base = scenario.scenario_to_dict(load("l2"))
    assert usecases.evaluate(scenario.scenario_from_dict(base), REGISTRY["L2"]).overall == "pass"
    better = scenario.scenario_to_dict(load("l2"))
    better["signal"]["bandwidth_hz"] *= 1.5
    better["hardware"]["ptx_per_element_dbm"] += 3.0
    better["hardware"]["in_elements_per_dim"] = 20
    for node in better["nodes"]:
        node["sync_error_s"] /= 2.0
        node["position_error_m"] /= 2.0
        node["orientation_error_deg"] /= 2.0
    report = usecases.evaluate(scenario.scenario_from_dict(better), REGISTRY["L2"])
    assert report.overall == "pass"


# --- mutations: each flips exactly its check -------------------------------------

MUTATIONS = [
    ("C1", "c1", ("hardware", "ptx_per_element_dbm", -40.0), "rate"),
    ("C2", "c2", ("signal", "streams", 1), "rate"),
    ("L1", "l1", ("node0", "sync_error_s", 1e-9), "sync"),
    ("L2", "l2", ("node0", "position_error_m", 0.05), "in_knowledge_position"),
    ("L3", "l3", ("node0", "orientation_error_deg", 2.0), "in_knowledge_orientation"),
    ("S1", "s1", ("signal", "bandwidth_hz", 1e9), "range_resolution"),
    ("S2", "s2", ("hardware", "ue_elements_per_dim", 10), "angular_resolution"),
]


@pytest.mark.parametrize("uc_id,fname,mutation,expected", MUTATIONS)
def test_single_field_mutation_flips_exactly_one_check(uc_id, fname, mutation, expected):
    scn = load(fname)
    baseline = usecases.evaluate(scn, REGISTRY[uc_id])
    data = scenario.scenario_to_dict(scn)
    section, key, value = mutation
    if section == "node0":
        data["nodes"][0][key] = value
    else:
        data[section][key] = value
    mutated = usecases.evaluate(scenario.scenario_from_dict(data), REGISTRY[uc_id])
    before = {c.name: c.verdict for c in baseline.checks}
    after = {c.name: c.verdict for c in mutated.checks}
    flipped = [n for n in before if before[n] != after.get(n)]
    assert flipped == [expected]
    assert after[expected] == "fail"
    assert mutated.overall == "fail"
    assert mutated.limiting_constraint == expected


# --- recommendation ---------------------------------------------------------------


def test_recommend_c2_alone_is_two_gigahertz_class():
    rec = usecases.recommend(["C2"])
    assert rec.all_pass
    assert 1e9 <= rec.scenario.signal.bandwidth_hz <= 3e9


def test_recommend_full_set_matches_conclusion_envelope():
    rec = usecases.recommend(["C1", "C2", "L1", "L2", "L3", "S1", "S2"])
    assert rec.all_pass
    assert 5e9 <= rec.scenario.signal.bandwidth_hz <= 10e9
    assert rec.scenario.hardware.carrier_hz > 100e9
    assert rec.scenario.hardware.in_array.elements_per_dim >= 10
    assert max(n.sync_error_s for n in rec.scenario.deployment.nodes) <= 100e-12
    assert rec.scenario.signal.coherent


def test_recommend_self_verifies_every_subset():
    for ids in (["L1"], ["S1", "S2"], ["C1", "L2"], ["L3"]):
        rec = usecases.recommend(ids)
        assert [r.use_case for r in rec.reports] == ids
        assert rec.all_pass, [r.use_case for r in rec.reports if r.overall != "pass"]


def test_recommend_rejects_empty_and_unknown():
    with pytest.raises(deployment.ConfigurationError):
        usecases.recommend([])
    with pytest.raises(deployment.ConfigurationError):
        usecases.recommend(["L1", "Q7"])


def test_recommended_scenario_file_matches_engine_output():
    rec = usecases.recommend(["C1", "C2", "L1", "L2", "L3", "S1", "S2"])
    from_file = scenario.load_scenario(str(SCENARIO_DIR / "recommended.scenario"))
    assert from_file == rec.scenario
