"""Geometric deployment evaluation: visibility, anchor rules, FIM/GDOP,
coverage heatmaps, and synchronization/calibration budget checks.

Obstacles are vertical prisms of infinite height, so line-of-sight reduces
to a 2D segment-vs-polygon test. Unobservable geometry is a value (infinite
GDOP with a rank report), never an exception, so heatmaps can render it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import channel, linkbudget
from .quantities import SPEED_OF_LIGHT_M_S

UNOBSERVABLE = math.inf

SYNC_BUDGET_S = {
    "C1": 10e-9,
    "C2": 10e-9,
    "L1": 100e-12,
    "L2": 0.5e-9,
    "L3": 10e-9,
    "S1": None,  # monostatic sensing carries its own clock
    "S2": 100e-12,
}

# Infrastructure position knowledge budgets; None means no numeric budget.
POSITION_BUDGET_M = {
    "C1": None,
    "C2": None,
    "L1": 1e-3,
    "L2": 1e-2,
    "L3": 1.0,
    "S1": None,
    "S2": 1e-3,
}


class ConfigurationError(ValueError):
    """A check was asked about an unknown use case or malformed scenario."""


@dataclass(frozen=True)
class InfrastructureNode:
    """Base station or reconfigurable surface anchor with known pose."""

    position_m: tuple[float, float, float]
    kind: str = "bs"  # "bs" | "ris"
    orientation_rad: tuple[float, float, float] = (0.0, 0.0, 0.0)
    array: channel.ArrayConfig = field(default_factory=lambda: channel.ArrayConfig(16))
    sync_error_s: float = 0.0
    position_error_m: float = 0.0
    orientation_error_rad: float = 0.0

    def __post_init__(self):
        if self.kind not in ("bs", "ris"):
            raise ValueError(f"unknown node kind {self.kind!r}")
        for name in ("sync_error_s", "position_error_m", "orientation_error_rad"):
            if getattr(self, name) < 0.0:
                raise ValueError(f"{name} must be >= 0")

    @property
    def delay_capable(self) -> bool:
        # Passive reflective anchors provide angle references only.
        return self.kind == "bs"


@dataclass(frozen=True)
class Region:
    """Axis-aligned rectangle with a square evaluation grid."""

    min_x_m: float
    min_y_m: float
    max_x_m: float
    max_y_m: float
    resolution_m: float

    def __post_init__(self):
        if not (self.max_x_m > self.min_x_m and self.max_y_m > self.min_y_m):
            raise ValueError("region max corner must exceed min corner")
        if not self.resolution_m > 0.0:
            raise ValueError("resolution must be positive")

    def grid(self) -> tuple[np.ndarray, np.ndarray]:
        """Cell-center coordinates along x and y."""
        nx = max(1, int(math.floor((self.max_x_m - self.min_x_m) / self.resolution_m)))
        ny = max(1, int(math.floor((self.max_y_m - self.min_y_m) / self.resolution_m)))
        xs = self.min_x_m + (np.arange(nx) + 0.5) * self.resolution_m
        ys = self.min_y_m + (np.arange(ny) + 0.5) * self.resolution_m
        return xs, ys


@dataclass(frozen=True)
class Obstacle:
    """Simple polygon in the map plane, blocking as an infinite prism."""

    vertices_m: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if len(self.vertices_m) < 3:
            raise ValueError("obstacle needs at least 3 vertices")


@dataclass(frozen=True)
class MeasurementMix:
    """Measurement types in use and their per-measurement errors."""

    sigma_toa_s: float | None = None
    sigma_tdoa_s: float | None = None
    sigma_rtt_s: float | None = None
    sigma_aoa_rad: float | None = None

    def __post_init__(self):
        if not self.types:
            raise ValueError("measurement mix must include at least one type")
        for name in ("sigma_toa_s", "sigma_tdoa_s", "sigma_rtt_s", "sigma_aoa_rad"):
            v = getattr(self, name)
            if v is not None and not v > 0.0:
                raise ValueError(f"{name} must be positive when given")

    @property
    def types(self) -> tuple[str, ...]:
        out = []
        for name, sigma in (
            ("toa", self.sigma_toa_s),
            ("tdoa", self.sigma_tdoa_s),
            ("rtt", self.sigma_rtt_s),
            ("aoa", self.sigma_aoa_rad),
        ):
            if sigma is not None:
                out.append(name)
        return tuple(out)


# ---------------------------------------------------------------------------
# Line of sight


def _orient(ax, ay, bx, by, cx, cy) -> float:
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def _point_on_segment(px, py, ax, ay, bx, by, eps) -> bool:
    if abs(_orient(ax, ay, bx, by, px, py)) > eps:
        return False
    return min(ax, bx) - eps <= px <= max(ax, bx) + eps and min(ay, by) - eps <= py <= max(ay, by) + eps


def _point_strictly_inside(px: float, py: float, poly: Obstacle, eps: float) -> bool:
    verts = poly.vertices_m
    n = len(verts)
    for i in range(n):
        ax, ay = verts[i]
        bx, by = verts[(i + 1) % n]
        if _point_on_segment(px, py, ax, ay, bx, by, eps):
            return False
    inside = False
    for i in range(n):
        ax, ay = verts[i]
        bx, by = verts[(i + 1) % n]
        if (ay > py) != (by > py):
            x_cross = ax + (py - ay) * (bx - ax) / (by - ay)
            if px < x_cross:
                inside = not inside
    return inside


def _segment_params_vs_edge(p1, p2, q1, q2, eps) -> list[float]:
    """Parameters t on segment p1->p2 where it meets edge q1->q2."""
    rx, ry = p2[0] - p1[0], p2[1] - p1[1]
    sx, sy = q2[0] - q1[0], q2[1] - q1[1]
    denom = rx * sy - ry * sx
    qpx, qpy = q1[0] - p1[0], q1[1] - p1[1]
    if abs(denom) > eps:
        t = (qpx * sy - qpy * sx) / denom
        u = (qpx * ry - qpy * rx) / denom
        if -eps <= t <= 1.0 + eps and -eps <= u <= 1.0 + eps:
            return [min(1.0, max(0.0, t))]
        return []
    # Parallel: collinear overlap contributes both projected endpoints.
    if abs(qpx * ry - qpy * rx) > eps:
        return []
    rr = rx * rx + ry * ry
    if rr <= eps:
        return []
    t0 = (qpx * rx + qpy * ry) / rr
    t1 = ((q2[0] - p1[0]) * rx + (q2[1] - p1[1]) * ry) / rr
    return [min(1.0, max(0.0, t)) for t in (t0, t1) if -eps <= t <= 1.0 + eps]


def los_visible(
    ue_xy: tuple[float, float],
    node: InfrastructureNode,
    obstacles: tuple[Obstacle, ...] = (),
) -> bool:
    """True iff the UE-node segment avoids every obstacle interior.

    Obstacle boundaries do not block (documented tie-break): a segment
    grazing an edge or touching a vertex stays visible. The test splits the
    segment at every boundary crossing and probes each piece's midpoint
    against the open polygon interior.
    """
    p1 = (float(ue_xy[0]), float(ue_xy[1]))
    p2 = (float(node.position_m[0]), float(node.position_m[1]))
    scale = max(abs(v) for v in (*p1, *p2, 1.0))
    eps = 1e-12 * scale * scale
    for obstacle in obstacles:
        params = {0.0, 1.0}
        verts = obstacle.vertices_m
        n = len(verts)
        for i in range(n):
            for t in _segment_params_vs_edge(p1, p2, verts[i], verts[(i + 1) % n], eps):
                params.add(t)
        ordered = sorted(params)
        for a, b in zip(ordered, ordered[1:]):
            tm = 0.5 * (a + b)
            mx = p1[0] + tm * (p2[0] - p1[0])
            my = p1[1] + tm * (p2[1] - p1[1])
            if _point_strictly_inside(mx, my, obstacle, eps):
                return False
    return True


# ---------------------------------------------------------------------------
# Anchor counting and Fisher information


@dataclass(frozen=True)
class AnchorVerdict:
    passed: bool
    required: int
    visible: int
    rule: str


def min_anchor_check(mix: MeasurementMix, dim: int, visible_count: int) -> AnchorVerdict:
    """Minimum line-of-sight anchors for observability by counting.

    Time differences need dim+1 anchors, absolute times dim, angles 2; a
    mix needs only the cheapest of its included sufficient types.
    """
    if dim not in (2, 3):
        raise ValueError("dim must be 2 or 3")
    requirement = {"tdoa": dim + 1, "toa": dim, "rtt": dim, "aoa": 2}
    required = min(requirement[t] for t in mix.types)
    rule = ", ".join(f"{t}:{requirement[t]}" for t in mix.types)
    return AnchorVerdict(visible_count >= required, required, visible_count, rule)


def anchor_rule_check(
    mix: MeasurementMix, dim: int, visible_nodes: list[InfrastructureNode]
) -> AnchorVerdict:
    """Node-aware anchor rule: each type counts only anchors able to serve
    it (reflective anchors are angle-only). The mix passes if any included
    type has enough capable anchors; the reported numbers belong to the
    type closest to (or furthest past) its requirement.
    """
    if dim not in (2, 3):
        raise ValueError("dim must be 2 or 3")
    requirement = {"tdoa": dim + 1, "toa": dim, "rtt": dim, "aoa": 2}
    delay_count = sum(1 for n in visible_nodes if n.delay_capable)
    best: tuple[int, int, str] | None = None
    for t in mix.types:
        count = len(visible_nodes) if t == "aoa" else delay_count
        req = requirement[t]
        if best is None or count - req > best[1] - best[0]:
            best = (req, count, t)
    req, count, t = best  # mix is never empty
    rule = f"{t}:{req} (angle rows count all anchors, time rows only active ones)"
    return AnchorVerdict(count >= req, req, count, rule)


def _unit_vectors(
    ue: np.ndarray, nodes: list[InfrastructureNode], dim: int
) -> tuple[np.ndarray, np.ndarray]:
    pos = np.array([n.position_m[:dim] for n in nodes], dtype=float)
    diff = np.atleast_2d(ue[:dim] - pos)
    dist = np.linalg.norm(diff, axis=1)
    if np.any(dist <= 0.0):
        raise ValueError("UE coincides with an anchor position")
    return diff / dist[:, None], dist


def position_fim(
    ue_xy,
    nodes: list[InfrastructureNode],
    mix: MeasurementMix,
    obstacles: tuple[Obstacle, ...] = (),
    dim: int = 2,
) -> np.ndarray:
    """Position Fisher information summed over visible anchors.

    Delay rows are u/c weighted 1/sigma^2. Time differences are taken
    against the first visible delay anchor; their correlated noise (shared
    reference) is whitened exactly, which makes the result independent of
    the reference choice. Angle rows span the orthogonal complement of u
    scaled by 1/d.
    """
    ue = np.asarray(ue_xy, dtype=float)
    c = SPEED_OF_LIGHT_M_S
    visible = [n for n in nodes if los_visible((ue[0], ue[1]), n, obstacles)]
    fim = np.zeros((dim, dim))
    if not visible:
        return fim
    delay_nodes = [n for n in visible if n.delay_capable]

    if mix.sigma_toa_s is not None and delay_nodes:
        u, _ = _unit_vectors(ue, delay_nodes, dim)
        fim += (u.T @ u) / (c * mix.sigma_toa_s) ** 2
    if mix.sigma_rtt_s is not None and delay_nodes:
        u, _ = _unit_vectors(ue, delay_nodes, dim)
        fim += (u.T @ u) / (c * mix.sigma_rtt_s) ** 2
    if mix.sigma_tdoa_s is not None and len(delay_nodes) >= 2:
        u, _ = _unit_vectors(ue, delay_nodes, dim)
        n = len(delay_nodes)
        h = u[1:] - u[0]  # differences against the first visible anchor
        whiten = np.eye(n - 1) - np.full((n - 1, n - 1), 1.0 / n)
        fim += (h.T @ whiten @ h) / (c * mix.sigma_tdoa_s) ** 2
    if mix.sigma_aoa_rad is not None:
        u, dist = _unit_vectors(ue, visible, dim)
        for ui, di in zip(u, dist):
            proj = np.eye(dim) - np.outer(ui, ui)
            fim += proj / (di * mix.sigma_aoa_rad) ** 2
    return fim


@dataclass(frozen=True)
class GdopResult:
    gdop: float
    peb_m: float
    rank: int
    observable: bool


def gdop(
    ue_xy,
    nodes: list[InfrastructureNode],
    mix: MeasurementMix,
    obstacles: tuple[Obstacle, ...] = (),
    dim: int = 2,
) -> GdopResult:
    """Geometric dilution of precision and position error bound.

    Rank-deficient geometry yields an explicit unobservable verdict. The
    GDOP normalization uses c*sigma of the first available time type; for
    angle-only mixes the angle error is scaled by the mean visible-anchor
    distance to obtain a position-equivalent reference error.
    """
    fim = position_fim(ue_xy, nodes, mix, obstacles, dim)
    eig = np.linalg.eigvalsh(fim)
    tol = max(eig[-1], 0.0) * 1e-10
    rank = int(np.sum(eig > tol))
    if rank < dim:
        return GdopResult(UNOBSERVABLE, UNOBSERVABLE, rank, False)
    peb = float(math.sqrt(np.trace(np.linalg.inv(fim))))
    sigma_ref_m = None
    for sigma in (mix.sigma_toa_s, mix.sigma_rtt_s, mix.sigma_tdoa_s):
        if sigma is not None:
            sigma_ref_m = SPEED_OF_LIGHT_M_S * sigma
            break
    if sigma_ref_m is None:
        ue = np.asarray(ue_xy, dtype=float)
        visible = [n for n in nodes if los_visible((ue[0], ue[1]), n, obstacles)]
        _, dist = _unit_vectors(ue, visible, dim)
        sigma_ref_m = mix.sigma_aoa_rad * float(np.mean(dist))
    return GdopResult(peb / sigma_ref_m, peb, rank, True)


# ---------------------------------------------------------------------------
# Coverage heatmaps


@dataclass(frozen=True)
class LinkContext:
    """Channel/rate parameters needed by rate and sensing heatmap metrics."""

    ue_array: channel.ArrayConfig
    pathloss: channel.PathlossModel
    noise: channel.NoiseModel
    bandwidth_hz: float
    ptx_per_element_dbm: float
    rate_model: linkbudget.RateModel
    target: channel.RadarTarget
    sensing_noise: channel.NoiseModel
    impl_loss_db: float = 20.0


@dataclass(frozen=True)
class Heatmap:
    metric: str
    xs_m: np.ndarray
    ys_m: np.ndarray
    values: np.ndarray  # shape (len(ys), len(xs)); inf marks unobservable


def coverage_heatmap(
    region: Region,
    nodes: list[InfrastructureNode],
    mix: MeasurementMix,
    obstacles: tuple[Obstacle, ...],
    metric: str,
    link: LinkContext | None = None,
    dim: int = 2,
) -> Heatmap:
    """Evaluate one scalar metric at every grid cell center.

    Cells are independent; iteration order cannot change values. The rate
    and sensing metrics report the best serving visible node (planar
    distances); rate falls to 0 and sensing SNR to -inf without coverage.
    """
    if metric not in ("peb", "gdop", "visible_count", "rate", "sensing_snr"):
        raise ConfigurationError(f"unknown heatmap metric {metric!r}")
    if metric in ("rate", "sensing_snr") and link is None:
        raise ConfigurationError(f"metric {metric!r} needs link parameters")
    xs, ys = region.grid()
    values = np.empty((len(ys), len(xs)))
    for j, y in enumerate(ys):
        for i, x in enumerate(xs):
            values[j, i] = _cell_metric((x, y), nodes, mix, obstacles, metric, link, dim)
    return Heatmap(metric=metric, xs_m=xs, ys_m=ys, values=values)


def _cell_metric(cell, nodes, mix, obstacles, metric, link, dim) -> float:
    visible = [n for n in nodes if los_visible(cell, n, obstacles)]
    if metric == "visible_count":
        return float(len(visible))
    if metric in ("peb", "gdop"):
        try:
            res = gdop(cell, nodes, mix, obstacles, dim)
        except ValueError:
            return UNOBSERVABLE  # cell center sits exactly on an anchor
        return res.peb_m if metric == "peb" else res.gdop
    best = -math.inf
    for node in visible:
        d = math.hypot(node.position_m[0] - cell[0], node.position_m[1] - cell[1])
        d = max(d, link.pathloss.reference_distance_m)
        if metric == "rate":
            snr = channel.link_snr_db(
                link.ptx_per_element_dbm,
                node.array,
                link.ue_array,
                link.pathloss,
                d,
                link.noise,
                link.bandwidth_hz,
                link.impl_loss_db,
            )
            best = max(best, linkbudget.achievable_rate_bps(snr, link.bandwidth_hz, link.rate_model))
        else:
            best = max(
                best,
                channel.monostatic_snr_db(
                    link.ptx_per_element_dbm,
                    node.array,
                    node.array,
                    link.target,
                    link.pathloss.carrier_hz,
                    d,
                    link.sensing_noise,
                    link.bandwidth_hz,
                    link.impl_loss_db,
                ),
            )
    if metric == "rate":
        return best if best > -math.inf else 0.0
    return best


# ---------------------------------------------------------------------------
# Budget checks


@dataclass(frozen=True)
class BudgetVerdict:
    passed: bool
    required: float | None
    achieved: float | None
    note: str = ""


def sync_budget_check(use_case_id: str, nodes: list[InfrastructureNode], rtol: float = 0.0) -> BudgetVerdict:
    """Worst pairwise clock error against the use case's budget.

    Pairwise error combines the two node sigmas in quadrature. Use cases
    without a budget (monostatic sensing) always pass.
    """
    if use_case_id not in SYNC_BUDGET_S:
        raise ConfigurationError(f"unknown use case {use_case_id!r}")
    budget = SYNC_BUDGET_S[use_case_id]
    if budget is None:
        return BudgetVerdict(True, None, None, "no synchronization requirement")
    errors = sorted((n.sync_error_s for n in nodes), reverse=True)
    if len(errors) < 2:
        return BudgetVerdict(True, budget, 0.0, "fewer than two anchors, nothing to synchronize")
    worst = math.hypot(errors[0], errors[1])
    return BudgetVerdict(worst <= budget * (1.0 + rtol), budget, worst)


def in_knowledge_check(
    use_case_id: str,
    nodes: list[InfrastructureNode],
    operating_distance_m: float,
    loc_acc_m: float | None = None,
    rtol: float = 0.0,
) -> list[BudgetVerdict]:
    """Infrastructure position and orientation knowledge budgets.

    Position uses the literal mm/cm/m-level budget; orientation uses the
    lever-arm rule d*sigma against the use case's location accuracy.
    """
    if use_case_id not in POSITION_BUDGET_M:
        raise ConfigurationError(f"unknown use case {use_case_id!r}")
    if not operating_distance_m > 0.0:
        raise ValueError("operating_distance_m must be positive")
    out = []
    budget = POSITION_BUDGET_M[use_case_id]
    if budget is None:
        out.append(BudgetVerdict(True, None, None, "no numeric position-knowledge budget"))
    else:
        worst = max((n.position_error_m for n in nodes), default=0.0)
        out.append(BudgetVerdict(worst <= budget * (1.0 + rtol), budget, worst))
    if loc_acc_m is not None:
        worst_rad = max((n.orientation_error_rad for n in nodes), default=0.0)
        lever = operating_distance_m * worst_rad
        out.append(
            BudgetVerdict(
                lever <= loc_acc_m * (1.0 + rtol),
                loc_acc_m,
                lever,
                f"lever arm at {operating_distance_m:.3g} m",
            )
        )
    return out
