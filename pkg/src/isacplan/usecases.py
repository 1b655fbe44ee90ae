"""KPI registry and the feasibility engine.

Seven built-in use cases (two communication, three localization, two
sensing) are checked against a full scenario description. Every check in a
report carries the requirement-table row it audits, an exact margin, and a
pass/fail/warn verdict; the overall verdict is pass iff nothing failed.

Verdicts allow a small relative slack (default 5%) because the published
requirement cells are quoted to one or two significant figures; margins are
always reported exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import channel, deployment, linkbudget, locbounds, sensebounds
from .deployment import ConfigurationError
from .quantities import dbm_to_watts, wavelength_m

VERDICT_RTOL_DEFAULT = 0.05

TX_POWER_CLASS = {
    "C1": "medium",
    "C2": "medium",
    "L1": "low",
    "L2": "higher (short integration time)",
    "L3": "higher (long link range)",
    "S1": "high (two-way path loss)",
    "S2": "high (two-way path loss)",
}


@dataclass(frozen=True)
class UseCaseKpis:
    """Targets for one use case; None disables the matching check."""

    id: str
    description: str
    link_range_m: float
    rate_bps: float | None = None
    e2e_latency_s: float | None = None
    loc_acc_m: float | None = None
    orient_acc_deg: float | None = None
    update_rate_hz: float | None = None
    min_bandwidth_delay_hz: float | None = None
    angular_route_elements_per_dim: int | None = None
    coherent_required: bool = False
    preferred_waveforms: tuple[str, ...] = ()
    shaping_needs: tuple[str, ...] = ()
    sensing: sensebounds.SensingKpis | None = None
    default_rcs_m2: float = 1.0

    @property
    def kind(self) -> str:
        if self.sensing is not None:
            return "sensing"
        if self.loc_acc_m is not None:
            return "localization"
        return "communication"


def builtin_use_cases() -> dict[str, UseCaseKpis]:
    """The seven built-in use cases keyed by id."""
    ofdm_like = ("ofdm", "dfts-ofdm")
    cases = [
        UseCaseKpis(
            id="C1",
            description="very short-range wireless access",
            link_range_m=10.0,
            rate_bps=100e9,
            e2e_latency_s=1e-3,
            shaping_needs=("space",),
        ),
        UseCaseKpis(
            id="C2",
            description="short-range wireless access",
            link_range_m=100.0,
            rate_bps=10e9,
            e2e_latency_s=1e-3,
            shaping_needs=("freq", "space"),
        ),
        UseCaseKpis(
            id="L1",
            description="high-accuracy positioning",
            link_range_m=10.0,
            loc_acc_m=0.01,
            orient_acc_deg=1.0,
            update_rate_hz=100.0,
            min_bandwidth_delay_hz=2e9,
            angular_route_elements_per_dim=50,
            coherent_required=True,
            preferred_waveforms=ofdm_like,
            shaping_needs=("freq", "time", "space"),
        ),
        UseCaseKpis(
            id="L2",
            description="low-latency positioning",
            link_range_m=30.0,
            loc_acc_m=0.1,
            orient_acc_deg=1.0,
            update_rate_hz=1e3,
            min_bandwidth_delay_hz=0.5e9,
            coherent_required=True,
            preferred_waveforms=ofdm_like,
            shaping_needs=("freq", "space"),
        ),
        UseCaseKpis(
            id="L3",
            description="low-complexity positioning",
            link_range_m=1000.0,
            loc_acc_m=10.0,
            update_rate_hz=1.0,
        ),
        UseCaseKpis(
            id="S1",
            description="monostatic radar-like mapping",
            link_range_m=50.0,
            coherent_required=True,
            preferred_waveforms=ofdm_like,
            shaping_needs=("freq", "time", "space"),
            sensing=sensebounds.SensingKpis(
                mode="monostatic",
                max_range_m=50.0,
                update_rate_hz=25.0,
                range_res_m=0.1,
                range_acc_m=0.1,
                ang_res_deg=3.0,
                ang_acc_deg=0.2,
                velocity_m_s=0.04,
            ),
            default_rcs_m2=10.0,  # vehicle-scale reflector
        ),
        UseCaseKpis(
            id="S2",
            description="bistatic robotic object sensing",
            link_range_m=10.0,
            coherent_required=True,
            preferred_waveforms=ofdm_like,
            shaping_needs=("freq",),
            sensing=sensebounds.SensingKpis(
                mode="bistatic",
                max_range_m=10.0,
                update_rate_hz=1e3,
                range_acc_m=0.01,
                ang_res_deg=1.0,
                velocity_m_s=0.1,
            ),
            default_rcs_m2=1.0,
        ),
    ]
    return {c.id: c for c in cases}


# ---------------------------------------------------------------------------
# Scenario description


@dataclass(frozen=True)
class SignalConfig:
    bandwidth_hz: float = 5e9
    waveform: str = "ofdm"
    coherent: bool = True
    shaping: tuple[str, ...] = ("freq", "time", "space")
    streams: int = 2
    se_cap_bps_hz: float = 6.0
    subcarriers: int = 4096
    cp_overhead: float = 0.07
    symbols_per_slot: int = 14

    def __post_init__(self):
        if not self.bandwidth_hz > 0.0:
            raise ValueError("bandwidth_hz must be positive")

    @property
    def rate_model(self) -> linkbudget.RateModel:
        return linkbudget.RateModel(self.se_cap_bps_hz, self.streams)

    @property
    def numerology(self) -> linkbudget.Numerology:
        return linkbudget.Numerology(self.subcarriers, self.cp_overhead, self.symbols_per_slot)


@dataclass(frozen=True)
class HardwareConfig:
    carrier_hz: float = 140e9
    channelized: bool = False
    phase_coherent: bool = True
    full_duplex_isolation: bool = True
    in_array: channel.ArrayConfig = field(default_factory=lambda: channel.ArrayConfig(16, 2))
    ue_array: channel.ArrayConfig = field(default_factory=lambda: channel.ArrayConfig(8, 2))
    ptx_per_element_dbm: float = 10.0
    in_noise_figure_db: float = 5.0
    ue_noise_figure_db: float = 10.0
    impl_loss_db: float = 20.0
    pathloss_exponent: float = 2.0

    @property
    def pathloss(self) -> channel.PathlossModel:
        return channel.PathlossModel(self.carrier_hz, self.pathloss_exponent)

    @property
    def in_noise(self) -> channel.NoiseModel:
        return channel.NoiseModel(self.in_noise_figure_db)

    @property
    def ue_noise(self) -> channel.NoiseModel:
        return channel.NoiseModel(self.ue_noise_figure_db)


@dataclass(frozen=True)
class DeploymentConfig:
    nodes: tuple[deployment.InfrastructureNode, ...] = ()
    obstacles: tuple[deployment.Obstacle, ...] = ()
    region: deployment.Region = field(
        default_factory=lambda: deployment.Region(-20.0, -20.0, 20.0, 20.0, 2.0)
    )
    mix: deployment.MeasurementMix = field(
        default_factory=lambda: deployment.MeasurementMix(sigma_tdoa_s=2e-11)
    )
    ue_position_m: tuple[float, float, float] = (0.0, 0.0, 0.0)


@dataclass(frozen=True)
class Overrides:
    """Engine constants a scenario may tune; defaults are the documented ones."""

    alpha_range: float = locbounds.ALPHA_RANGE_DEFAULT
    alpha_angle: float = locbounds.ALPHA_ANGLE_DEFAULT
    detection_threshold_db: float = sensebounds.DETECTION_THRESHOLD_DB_DEFAULT
    rcs_m2: float | None = None  # None: use the use case's default target
    latency_budget_fraction: float = linkbudget.PHY_LATENCY_BUDGET_FRACTION
    verdict_rtol: float = VERDICT_RTOL_DEFAULT


@dataclass(frozen=True)
class ScenarioConfig:
    signal: SignalConfig = field(default_factory=SignalConfig)
    hardware: HardwareConfig = field(default_factory=HardwareConfig)
    deployment: DeploymentConfig = field(default_factory=DeploymentConfig)
    overrides: Overrides = field(default_factory=Overrides)


def default_nodes(
    hardware: HardwareConfig,
    half_span_m: float = 15.0,
    height_m: float = 5.0,
    sync_error_s: float = 50e-12,
    position_error_m: float = 1e-3,
    orientation_error_deg: float = 0.05,
) -> tuple[deployment.InfrastructureNode, ...]:
    """Four base stations on the corners of a square around the origin."""
    err = math.radians(orientation_error_deg)
    return tuple(
        deployment.InfrastructureNode(
            position_m=(sx * half_span_m, sy * half_span_m, height_m),
            kind="bs",
            array=hardware.in_array,
            sync_error_s=sync_error_s,
            position_error_m=position_error_m,
            orientation_error_rad=err,
        )
        for sx, sy in ((-1.0, -1.0), (-1.0, 1.0), (1.0, -1.0), (1.0, 1.0))
    )


def default_scenario() -> ScenarioConfig:
    hw = HardwareConfig()
    return ScenarioConfig(
        deployment=DeploymentConfig(nodes=default_nodes(hw)),
        hardware=hw,
    )


# ---------------------------------------------------------------------------
# Reports


@dataclass(frozen=True)
class Check:
    name: str
    required: float | str | None
    achieved: float | str | None
    margin: float | None
    verdict: str  # "pass" | "fail" | "warn"
    paper_row: str
    note: str = ""


@dataclass(frozen=True)
class FeasibilityReport:
    use_case: str
    overall: str  # "pass" | "fail"
    checks: tuple[Check, ...]
    limiting_constraint: str | None


def _margin_at_most(required: float, achieved: float) -> float:
    if not math.isfinite(achieved):
        return -math.inf
    return (required - achieved) / abs(required) if required != 0.0 else required - achieved


def _margin_at_least(required: float, achieved: float) -> float:
    if not math.isfinite(achieved):
        return -math.inf if achieved < 0 else math.inf
    return (achieved - required) / abs(required) if required != 0.0 else achieved - required


def _check_at_most(name, row, required, achieved, rtol, note="") -> Check:
    verdict = "pass" if achieved <= required * (1.0 + rtol) else "fail"
    return Check(name, required, achieved, _margin_at_most(required, achieved), verdict, row, note)


def _check_at_least(name, row, required, achieved, rtol, note="") -> Check:
    verdict = "pass" if achieved >= required * (1.0 - rtol) else "fail"
    return Check(name, required, achieved, _margin_at_least(required, achieved), verdict, row, note)


def _check_flag(name, row, ok, required_desc, achieved_desc, note="", fail_verdict="fail") -> Check:
    return Check(
        name,
        required_desc,
        achieved_desc,
        None,
        "pass" if ok else fail_verdict,
        row,
        note,
    )


def _finish(uc_id: str, checks: list[Check]) -> FeasibilityReport:
    overall = "pass" if all(c.verdict != "fail" for c in checks) else "fail"
    numeric = [c for c in checks if c.margin is not None and math.isfinite(c.margin)]
    failed = [c for c in checks if c.verdict == "fail"]
    if failed:
        with_margin = [c for c in failed if c.margin is not None and math.isfinite(c.margin)]
        limiting = min(with_margin, key=lambda c: c.margin).name if with_margin else failed[0].name
    elif numeric:
        limiting = min(numeric, key=lambda c: c.margin).name
    else:
        limiting = None
    return FeasibilityReport(uc_id, overall, tuple(checks), limiting)


# ---------------------------------------------------------------------------
# Evaluation


def _signal_checks(scn: ScenarioConfig, uc: UseCaseKpis, rtol: float) -> list[Check]:
    checks = []
    if uc.coherent_required:
        checks.append(
            _check_flag(
                "coherence",
                "signals.modulation",
                scn.signal.coherent,
                "coherent",
                "coherent" if scn.signal.coherent else "non-coherent",
                "accuracy beyond the resolution limit needs coherent processing",
            )
        )
    else:
        checks.append(
            _check_flag(
                "coherence",
                "signals.modulation",
                True,
                "coherent or non-coherent",
                "coherent" if scn.signal.coherent else "non-coherent",
            )
        )
    if uc.preferred_waveforms:
        ok = scn.signal.waveform in uc.preferred_waveforms
        checks.append(
            _check_flag(
                "waveform",
                "signals.waveform",
                ok,
                "|".join(uc.preferred_waveforms),
                scn.signal.waveform,
                "advisory: ambiguity-function quality is not modeled",
                fail_verdict="warn",
            )
        )
    if uc.shaping_needs:
        missing = [s for s in uc.shaping_needs if s not in scn.signal.shaping]
        checks.append(
            _check_flag(
                "shaping",
                "signals.shaping",
                not missing,
                "+".join(uc.shaping_needs),
                "+".join(scn.signal.shaping) or "none",
                "advisory",
                fail_verdict="warn",
            )
        )
    if scn.hardware.channelized and not scn.hardware.phase_coherent:
        checks.append(
            _check_flag(
                "channelization",
                "hardware.channelization",
                False,
                "phase coherence across chains",
                "fragmented band without phase coherence",
                "coherent angle/delay estimation needs one phase reference",
                fail_verdict="fail" if uc.coherent_required else "warn",
            )
        )
    else:
        checks.append(
            _check_flag(
                "channelization",
                "hardware.channelization",
                True,
                "contiguous or phase-coherent band",
                "channelized" if scn.hardware.channelized else "contiguous",
            )
        )
    return checks


def _latency_check(scn: ScenarioConfig, uc: UseCaseKpis, rtol: float) -> Check | None:
    if uc.e2e_latency_s is not None:
        budget = uc.e2e_latency_s
        row = "kpi.latency"
    elif uc.update_rate_hz is not None and uc.kind == "localization":
        budget = 1.0 / uc.update_rate_hz
        row = "kpi.update_rate"
    else:
        return None
    phy = linkbudget.phy_latency_s(scn.signal.bandwidth_hz, scn.signal.numerology)
    allowed = scn.overrides.latency_budget_fraction * budget
    return _check_at_most(
        "latency",
        row,
        allowed,
        phy,
        rtol,
        f"bidirectional PHY slots vs {scn.overrides.latency_budget_fraction:.0%} of the "
        f"{budget * 1e3:.3g} ms end-to-end budget",
    )


def _deployment_common(scn: ScenarioConfig, uc: UseCaseKpis, rtol: float) -> list[Check]:
    checks = []
    nodes = list(scn.deployment.nodes)
    sync = deployment.sync_budget_check(uc.id, nodes, rtol)
    if sync.required is None:
        checks.append(
            _check_flag("sync", "deployments.synchronization", True, "N/A", "exempt", sync.note)
        )
    else:
        checks.append(
            Check(
                "sync",
                sync.required,
                sync.achieved,
                _margin_at_most(sync.required, sync.achieved),
                "pass" if sync.passed else "fail",
                "deployments.synchronization",
                "worst pairwise clock error",
            )
        )
    loc_acc = uc.loc_acc_m
    if uc.sensing is not None and uc.sensing.range_acc_m is not None and uc.id == "S2":
        loc_acc = uc.sensing.range_acc_m
    knowledge = deployment.in_knowledge_check(uc.id, nodes, uc.link_range_m, loc_acc, rtol)
    pos = knowledge[0]
    if pos.required is None:
        checks.append(
            _check_flag(
                "in_knowledge_position", "deployments.in_knowledge", True, "area-level", "exempt", pos.note
            )
        )
    else:
        checks.append(
            Check(
                "in_knowledge_position",
                pos.required,
                pos.achieved,
                _margin_at_most(pos.required, pos.achieved),
                "pass" if pos.passed else "fail",
                "deployments.in_knowledge",
                "worst anchor position error",
            )
        )
    if len(knowledge) > 1:
        orient = knowledge[1]
        checks.append(
            Check(
                "in_knowledge_orientation",
                orient.required,
                orient.achieved,
                _margin_at_most(orient.required, orient.achieved),
                "pass" if orient.passed else "fail",
                "deployments.in_knowledge",
                orient.note,
            )
        )
    return checks


def _visible_nodes(scn: ScenarioConfig) -> list[deployment.InfrastructureNode]:
    ue = scn.deployment.ue_position_m
    return [
        n
        for n in scn.deployment.nodes
        if deployment.los_visible((ue[0], ue[1]), n, scn.deployment.obstacles)
    ]


def _communication_checks(scn: ScenarioConfig, uc: UseCaseKpis, rtol: float) -> list[Check]:
    link = linkbudget.LinkParams(
        tx=scn.hardware.in_array,
        rx=scn.hardware.ue_array,
        pathloss=scn.hardware.pathloss,
        distance_m=uc.link_range_m,
        noise=scn.hardware.ue_noise,
        impl_loss_db=scn.hardware.impl_loss_db,
    )
    snr = link.snr_db(scn.hardware.ptx_per_element_dbm, scn.signal.bandwidth_hz)
    rate = linkbudget.achievable_rate_bps(snr, scn.signal.bandwidth_hz, scn.signal.rate_model)
    checks = [
        _check_at_least(
            "rate",
            "kpi.rate",
            uc.rate_bps,
            rate,
            rtol,
            f"{snr:.1f} dB SNR at {uc.link_range_m:.3g} m, {scn.signal.streams} stream(s)",
        ),
        _check_at_least(
            "anchors",
            "deployments.placement",
            1,
            sum(1 for n in _visible_nodes(scn) if n.delay_capable),
            0.0,
            "at least one active serving node in line of sight",
        ),
    ]
    return checks


def _localization_checks(scn: ScenarioConfig, uc: UseCaseKpis, rtol: float) -> list[Check]:
    checks = []
    dep = scn.deployment
    visible = _visible_nodes(scn)
    anchor = deployment.anchor_rule_check(dep.mix, 3, visible)
    checks.append(
        Check(
            "anchors",
            anchor.required,
            anchor.visible,
            _margin_at_least(anchor.required, anchor.visible),
            "pass" if anchor.passed else "fail",
            "deployments.placement",
            f"3D minimum by measurement type ({anchor.rule})",
        )
    )

    ue = dep.ue_position_m
    result = deployment.gdop((ue[0], ue[1]), list(dep.nodes), dep.mix, dep.obstacles, dim=2)
    note = "map-plane error bound from the anchor geometry"
    if not result.observable:
        note = f"unobservable geometry (information rank {result.rank} < 2)"
    checks.append(
        Check(
            "peb",
            uc.loc_acc_m,
            result.peb_m,
            _margin_at_most(uc.loc_acc_m, result.peb_m),
            "pass" if (result.observable and result.peb_m <= uc.loc_acc_m * (1 + rtol)) else "fail",
            "kpi.location_accuracy",
            note,
        )
    )

    if uc.orient_acc_deg is not None:
        ue_array = scn.hardware.ue_array
        if ue_array.elements_per_dim < 2:
            checks.append(
                _check_flag(
                    "orientation_accuracy",
                    "kpi.orientation_accuracy",
                    False,
                    f"{uc.orient_acc_deg:.3g} deg",
                    "no UE array",
                    "orientation estimation needs a multi-element device array",
                )
            )
        else:
            link = linkbudget.LinkParams(
                tx=scn.hardware.in_array,
                rx=ue_array,
                pathloss=scn.hardware.pathloss,
                distance_m=uc.link_range_m,
                noise=scn.hardware.ue_noise,
                impl_loss_db=scn.hardware.impl_loss_db,
            )
            snr_lin = 10 ** (link.snr_db(scn.hardware.ptx_per_element_dbm, scn.signal.bandwidth_hz) / 10)
            beam = sensebounds.angular_resolution_deg(ue_array)
            proxy = beam / math.sqrt(2.0 * snr_lin)
            checks.append(
                _check_at_most(
                    "orientation_accuracy",
                    "kpi.orientation_accuracy",
                    uc.orient_acc_deg,
                    proxy,
                    rtol,
                    "device-array beamwidth over sqrt(2*SNR)",
                )
            )

    if uc.min_bandwidth_delay_hz is not None:
        b = scn.signal.bandwidth_hz
        delay_ok = b >= uc.min_bandwidth_delay_hz * (1.0 - rtol)
        route = "delay domain" if delay_ok else None
        if not delay_ok and uc.angular_route_elements_per_dim is not None:
            if scn.hardware.in_array.elements_per_dim >= uc.angular_route_elements_per_dim:
                route = "angular domain"
        checks.append(
            Check(
                "resolution_route",
                uc.min_bandwidth_delay_hz,
                b,
                _margin_at_least(uc.min_bandwidth_delay_hz, b),
                "pass" if route else "fail",
                "signals.bandwidth",
                f"resolved via {route}" if route else (
                    "neither bandwidth nor anchor-array route reaches the needed resolution"
                ),
            )
        )

    # Transmit-power requirement from the error-bound inversion.
    numerology = scn.signal.numerology
    t_symbols = linkbudget.integration_symbols(
        uc.update_rate_hz or 1.0, scn.signal.bandwidth_hz, numerology
    )
    n0 = dbm_to_watts(channel.THERMAL_NOISE_DBM_HZ + scn.hardware.in_noise_figure_db)
    params = locbounds.SpebParams(
        integration_symbols=t_symbols,
        bandwidth_hz=scn.signal.bandwidth_hz,
        noise_density_w_hz=n0,
        distance_m=uc.link_range_m,
        wavelength_m=wavelength_m(scn.hardware.carrier_hz),
        n_rx=scn.hardware.in_array.n_elements,
        ptx_w=1.0,
        alpha_range=scn.overrides.alpha_range,
        alpha_angle=scn.overrides.alpha_angle,
    )
    required_w = locbounds.required_tx_power_w(uc.loc_acc_m, params)
    available_w = dbm_to_watts(scn.hardware.ptx_per_element_dbm) * scn.hardware.ue_array.n_elements
    checks.append(
        Check(
            "tx_power",
            required_w,
            available_w,
            _margin_at_least(required_w, available_w),
            "pass" if available_w >= required_w * (1.0 - rtol) else "fail",
            "hardware.transmit_power",
            f"{TX_POWER_CLASS[uc.id]}; uplink bound inversion over "
            f"{t_symbols} symbols",
        )
    )
    return checks


def _sensing_checks(scn: ScenarioConfig, uc: UseCaseKpis, rtol: float) -> list[Check]:
    kpis = uc.sensing
    rcs = scn.overrides.rcs_m2 if scn.overrides.rcs_m2 is not None else uc.default_rcs_m2
    target = channel.RadarTarget(rcs_m2=rcs)
    if kpis.mode == "monostatic":
        tx = rx = scn.hardware.in_array
        noise = scn.hardware.in_noise
    else:
        tx = scn.hardware.in_array
        rx = scn.hardware.ue_array
        noise = scn.hardware.ue_noise
    rows = {
        "range_resolution": "signals.bandwidth",
        "angular_resolution": "hardware.array_size",
        "velocity": "kpi.update_rate",
        "detection_snr": "hardware.transmit_power",
        "range_accuracy": "kpi.sensing_accuracy",
        "angular_accuracy": "kpi.sensing_accuracy",
    }
    checks = []
    for sc in sensebounds.sensing_feasibility(
        kpis,
        scn.signal.bandwidth_hz,
        scn.hardware.carrier_hz,
        tx,
        rx,
        scn.hardware.ptx_per_element_dbm,
        noise,
        target,
        scn.hardware.impl_loss_db,
        scn.overrides.detection_threshold_db,
        rtol,
    ):
        if sc.name == "detection_snr":
            margin = (
                (sc.achieved - sc.required) / 10.0
                if sc.achieved is not None and math.isfinite(sc.achieved)
                else None
            )
        elif sc.required is None or sc.achieved is None:
            margin = None
        else:
            margin = _margin_at_most(sc.required, sc.achieved)
        checks.append(Check(sc.name, sc.required, sc.achieved, margin, sc.verdict, rows[sc.name], sc.note))
    if uc.id == "S2" and kpis.range_res_m is None:
        # Replace the no-target row with an explicit note about the tension.
        res = sensebounds.range_resolution_m(scn.signal.bandwidth_hz)
        checks = [c for c in checks if c.name != "range_resolution"]
        checks.append(
            Check(
                "range_resolution",
                0.01,
                res,
                None,
                "warn",
                "signals.bandwidth",
                "the stated 1 cm resolution needs ~15 GHz; treated as the accuracy "
                "target instead (see range_accuracy)",
            )
        )
    if kpis.mode == "monostatic":
        checks.append(
            _check_flag(
                "full_duplex",
                "hardware.full_duplex",
                scn.hardware.full_duplex_isolation,
                "TX/RX isolation",
                "isolated" if scn.hardware.full_duplex_isolation else "not isolated",
                "co-located transmit and receive need self-interference decoupling",
            )
        )
    else:
        checks.append(
            _check_at_least(
                "anchors",
                "deployments.placement",
                1,
                sum(1 for n in _visible_nodes(scn) if n.delay_capable),
                0.0,
                "at least one active receive node in line of sight",
            )
        )
    return checks


def evaluate(scn: ScenarioConfig, uc: UseCaseKpis) -> FeasibilityReport:
    """Check one scenario against one use case's targets."""
    if uc.id not in deployment.SYNC_BUDGET_S:
        raise ConfigurationError(f"unknown use case {uc.id!r}")
    rtol = scn.overrides.verdict_rtol
    checks = _signal_checks(scn, uc, rtol)
    latency = _latency_check(scn, uc, rtol)
    if latency is not None:
        checks.append(latency)
    if uc.kind == "communication":
        checks.extend(_communication_checks(scn, uc, rtol))
    elif uc.kind == "localization":
        checks.extend(_localization_checks(scn, uc, rtol))
    else:
        checks.extend(_sensing_checks(scn, uc, rtol))
    checks.extend(_deployment_common(scn, uc, rtol))
    return _finish(uc.id, checks)


def evaluate_all(scn: ScenarioConfig, ids=None) -> list[FeasibilityReport]:
    registry = builtin_use_cases()
    if ids is None:
        ids = list(registry)
    missing = [i for i in ids if i not in registry]
    if missing:
        raise ConfigurationError(f"unknown use case ids: {missing}")
    return [evaluate(scn, registry[i]) for i in ids]


# ---------------------------------------------------------------------------
# Joint recommendation


BANDWIDTH_NEED_HZ = {
    "C1": 10e9,
    "C2": 2e9,
    "L1": 4e9,
    "L2": 1e9,
    "L3": 0.4e9,
    "S1": 4e9,
    "S2": 4e9,
}
CARRIER_NEED_HZ = {
    "C1": 140e9,
    "C2": 140e9,
    "L1": 140e9,
    "L2": 140e9,
    "L3": 28e9,
    "S1": 140e9,
    "S2": 140e9,
}
IN_ELEMENTS_NEED = {"C1": 16, "C2": 16, "L1": 16, "L2": 16, "L3": 16, "S1": 40, "S2": 20}
UE_ELEMENTS_NEED = {"C1": 8, "C2": 8, "L1": 16, "L2": 16, "L3": 1, "S1": 16, "S2": 100}
PTX_NEED_DBM = {"C1": 10.0, "C2": 10.0, "L1": 0.0, "L2": 10.0, "L3": 10.0, "S1": 20.0, "S2": 20.0}


@dataclass(frozen=True)
class Recommendation:
    scenario: ScenarioConfig
    notes: tuple[str, ...]
    reports: tuple[FeasibilityReport, ...]

    @property
    def all_pass(self) -> bool:
        return all(r.overall == "pass" for r in self.reports)


def recommend(use_case_ids) -> Recommendation:
    """Componentwise-max requirement envelope, verified against each input.

    The envelope takes the largest bandwidth/array/power need and the
    strictest synchronization and calibration budgets over the selected use
    cases, then re-runs the feasibility engine on every one of them.
    """
    ids = list(use_case_ids)
    if not ids:
        raise ConfigurationError("recommend needs at least one use case")
    registry = builtin_use_cases()
    missing = [i for i in ids if i not in registry]
    if missing:
        raise ConfigurationError(f"unknown use case ids: {missing}")

    notes = []
    bandwidth = max(BANDWIDTH_NEED_HZ[i] for i in ids)
    carrier = max(CARRIER_NEED_HZ[i] for i in ids)
    in_per_dim = max(IN_ELEMENTS_NEED[i] for i in ids)
    ue_per_dim = max(UE_ELEMENTS_NEED[i] for i in ids)
    ptx = max(PTX_NEED_DBM[i] for i in ids)
    notes.append(f"aggregate bandwidth {bandwidth / 1e9:.3g} GHz (largest single-use-case need)")
    notes.append(f"carrier {carrier / 1e9:.3g} GHz to host that bandwidth")

    hardware = HardwareConfig(
        carrier_hz=carrier,
        in_array=channel.ArrayConfig(in_per_dim, 2),
        ue_array=channel.ArrayConfig(ue_per_dim, 2),
        ptx_per_element_dbm=ptx,
    )

    # Streams sized against the spectral efficiency the envelope actually
    # reaches at each use case's link range, not just the cap.
    streams = 1
    for i in ids:
        uc = registry[i]
        if uc.rate_bps is None:
            continue
        snr = channel.link_snr_db(
            ptx,
            hardware.in_array,
            hardware.ue_array,
            hardware.pathloss,
            uc.link_range_m,
            hardware.ue_noise,
            bandwidth,
            hardware.impl_loss_db,
        )
        se = min(math.log2(1.0 + 10 ** (snr / 10.0)), 6.0)
        if se <= 0.0:
            raise ConfigurationError(
                f"conflicting hard constraints: no positive rate reachable for {i}"
            )
        streams = max(streams, math.ceil(uc.rate_bps / (bandwidth * se)))
    if streams > 4:
        raise ConfigurationError(
            f"conflicting hard constraints: {streams} spatial streams needed, at most 4 supported"
        )
    if streams > 1:
        notes.append(f"{streams} spatial streams so the peak rate fits the achievable spectral efficiency")

    coherent = any(registry[i].coherent_required for i in ids)
    shaping = tuple(sorted({s for i in ids for s in registry[i].shaping_needs}))
    sync_budgets = [deployment.SYNC_BUDGET_S[i] for i in ids if deployment.SYNC_BUDGET_S[i]]
    sync_error = min(sync_budgets) / 2.0 if sync_budgets else 1e-9
    pos_budgets = [deployment.POSITION_BUDGET_M[i] for i in ids if deployment.POSITION_BUDGET_M[i]]
    pos_error = min(pos_budgets) / 2.0 if pos_budgets else 0.1
    lever = [
        registry[i].loc_acc_m / registry[i].link_range_m
        for i in ids
        if registry[i].loc_acc_m is not None
    ]
    lever += [
        registry[i].sensing.range_acc_m / registry[i].link_range_m
        for i in ids
        if registry[i].sensing is not None and registry[i].sensing.range_acc_m is not None
    ]
    orient_error_deg = math.degrees(min(lever) / 2.0) if lever else 0.5
    notes.append(
        f"anchors hold {sync_error * 1e12:.3g} ps clocks, {pos_error * 1e3:.3g} mm position and "
        f"{orient_error_deg:.3g} deg orientation knowledge (half the strictest budget)"
    )
    if coherent:
        notes.append("coherent multi-carrier operation (binding for precision use cases)")

    scenario = ScenarioConfig(
        signal=SignalConfig(
            bandwidth_hz=bandwidth,
            coherent=coherent,
            shaping=shaping or ("space",),
            streams=streams,
        ),
        hardware=hardware,
        deployment=DeploymentConfig(
            nodes=default_nodes(
                hardware,
                sync_error_s=sync_error,
                position_error_m=pos_error,
                orientation_error_deg=orient_error_deg,
            )
        ),
    )
    reports = tuple(evaluate(scenario, registry[i]) for i in ids)
    failed = [r.use_case for r in reports if r.overall != "pass"]
    if failed:
        notes.append(f"verification FAILED for: {', '.join(failed)}")
    else:
        notes.append("verified: the envelope passes every selected use case")
    return Recommendation(scenario, tuple(notes), reports)
