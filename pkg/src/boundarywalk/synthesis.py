"""Lattice-walk synthesis with prescribed spherical behavior.

Walks step by unit basis vectors from integer positions.  Three layers:
hovering walks whose projections stay in a small ball (stationary_walk),
walks shadowing a directed path on the spherical simplex (shadow_walk),
and an infinite phased stream whose projected tail clouds accumulate
exactly on a target skeleton (WalkSynthesizer / synthesize).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DriftBoundError, GeometryError, PreconditionError
from .simplex import (
    DirectedPath,
    Polyline,
    SimplexPoint,
    direct_approx,
    line_approx,
    path_to_sphere,
    polyline_to_simplex,
    support_face,
    transfer_budget,
)
from .sphere import SpherePoint, angle_between, slerp

# Angle below which a path terminal counts as sitting on a vertex.
VERTEX_SNAP = 1e-9
# Fraction of eps1 used as the approach threshold when a segment's terminal
# is the vertex itself (any value <= 1/2 keeps the drift budget).
CASE1_FRAC = 0.25


def _csc(x: float) -> float:
    if x <= 0.0:
        raise GeometryError("csc bound needs a positive angle")
    return 1.0 / math.sin(min(x, math.pi / 2.0))


# ---------------------------------------------------------------------------
# walk data

@dataclass(frozen=True)
class LatticeWalk:
    """Integer start plus signed 1-based step indices (+i steps axis i-1)."""

    start: tuple[int, ...]
    indices: np.ndarray

    def __post_init__(self) -> None:
        idx = np.asarray(self.indices)
        if idx.size and (np.any(idx == 0) or np.any(np.abs(idx) > len(self.start))):
            raise GeometryError("walk indices must be signed values in 1..n")

    @property
    def n(self) -> int:
        return len(self.start)

    def __len__(self) -> int:
        return int(np.asarray(self.indices).size)

    def all_positive(self) -> bool:
        idx = np.asarray(self.indices)
        return bool(np.all(idx > 0)) if idx.size else True

    def positions(self) -> np.ndarray:
        """All integer positions, exactly, shape (steps+1, n)."""
        idx = np.asarray(self.indices)
        out = np.empty((idx.size + 1, self.n), dtype=np.int64)
        out[0] = self.start
        for axis in range(self.n):
            delta = (idx == axis + 1).astype(np.int64) - (idx == -(axis + 1)).astype(np.int64)
            out[1:, axis] = self.start[axis] + np.cumsum(delta)
        return out


class _WalkState:
    """Mutable walk accumulator: exact integer position, norm^2, emitted indices."""

    __slots__ = ("pos", "out", "nrm2")

    def __init__(self, pos) -> None:
        self.pos = [int(v) for v in pos]
        self.out: list[int] = []
        self.nrm2 = sum(v * v for v in self.pos)

    @property
    def n(self) -> int:
        return len(self.pos)

    def append(self, axis: int, count: int = 1) -> None:
        if count <= 0:
            return
        c = self.pos[axis]
        self.nrm2 += count * (2 * c + count)
        self.pos[axis] = c + count
        self.out.extend([axis + 1] * count)

    def norm(self) -> float:
        return math.sqrt(self.nrm2)

    def axis_angle(self, axis: int) -> float:
        c = self.pos[axis]
        perp2 = self.nrm2 - c * c
        return math.atan2(math.sqrt(max(0.0, float(perp2))), float(c))

    def angle_to(self, u: np.ndarray) -> float:
        d = float(np.dot(np.asarray(self.pos, dtype=float), u))
        d /= self.norm() * float(np.linalg.norm(u))
        return math.acos(min(1.0, max(-1.0, d)))

    def unit(self) -> np.ndarray:
        return np.asarray(self.pos, dtype=float) / self.norm()


def _min_steps_below(state: _WalkState, axis: int, theta_t: float) -> int:
    """Minimal m >= 0 with angle(pos + m*e_axis, e_axis) < theta_t.

    The angle to a vertex is atan2(r, c+m) with r the fixed off-axis norm,
    strictly decreasing in m, so the count solves in closed form; the small
    loops absorb float rounding.
    """
    if theta_t <= 0.0:
        raise GeometryError("threshold angle must be positive")
    c = state.pos[axis]
    r = math.sqrt(max(0.0, float(state.nrm2 - c * c)))
    if r == 0.0:
        return 0
    if theta_t >= math.pi / 2.0:
        m = 0
    else:
        m = max(0, int(math.ceil(r / math.tan(theta_t) - c)))
    while math.atan2(r, float(c + m)) >= theta_t:
        m += 1
    while m > 0 and math.atan2(r, float(c + m - 1)) < theta_t:
        m -= 1
    return m


# ---------------------------------------------------------------------------
# stationary walks

def stationary_radius(n_axes: int, eps: float) -> float:
    """Norm above which a hovering walk with tolerance eps exists.

    Dimension 2 needs steps shorter than eps/2; higher dimensions recurse
    with eps/3 on a coordinate projection, doubled so some projection of
    any start is long enough.
    """
    if eps <= 0.0:
        raise GeometryError("tolerance must be positive")
    if n_axes <= 1:
        return 1.0
    if n_axes == 2:
        return _csc(eps / 2.0)
    return max(_csc(eps / 3.0), 2.0 * stationary_radius(n_axes - 1, eps / 3.0))


def _stationary_stream(pos0, axes: tuple[int, ...], eps: float):
    """Yield 0-based axes of an endless walk whose projection hovers.

    Owns a private copy of the position; every yielded axis has already
    been applied to that copy.
    """
    pos = list(pos0)
    if len(axes) == 1:
        a = axes[0]
        while True:
            pos[a] += 1
            yield a
    elif len(axes) == 2:
        i, j = axes
        theta0 = math.atan2(pos[j], pos[i])
        while True:
            a = i if math.atan2(pos[j], pos[i]) >= theta0 else j
            pos[a] += 1
            yield a
    else:
        collapse = min(axes, key=lambda a: (pos[a], a))
        rest = tuple(a for a in axes if a != collapse)

        def rest_norm() -> float:
            return math.sqrt(float(sum(pos[a] * pos[a] for a in rest)))

        theta0 = math.atan2(rest_norm(), pos[collapse])
        inner = _stationary_stream(pos, rest, eps / 3.0)
        while True:
            a = next(inner)
            pos[a] += 1
            yield a
            r = rest_norm()
            if math.atan2(r, pos[collapse]) - theta0 > eps / 3.0:
                c = pos[collapse]
                m = max(1, int(math.ceil(r / math.tan(theta0) - c)))
                while math.atan2(r, float(c + m)) > theta0:
                    m += 1
                while m > 1 and math.atan2(r, float(c + m - 1)) <= theta0:
                    m -= 1
                for _ in range(m):
                    pos[collapse] += 1
                    yield collapse


def stationary_walk(x, eps: float, min_steps: int) -> list[int]:
    """A walk of `min_steps` positive steps from x whose every position
    projects within eps of the projection of x.

    Requires strictly positive integer coordinates and
    ||x|| > stationary_radius(n, eps).
    """
    pos = [int(v) for v in x]
    if any(v <= 0 for v in pos):
        raise GeometryError("start must have positive integer coordinates")
    if min_steps < 0:
        raise GeometryError("min_steps must be nonnegative")
    nrm = math.sqrt(sum(v * v for v in pos))
    if nrm <= stationary_radius(len(pos), eps):
        raise GeometryError(
            f"start norm {nrm:.3g} below stationary radius "
            f"{stationary_radius(len(pos), eps):.3g}")
    gen = _stationary_stream(pos, tuple(range(len(pos))), eps)
    return [next(gen) + 1 for _ in range(min_steps)]


# ---------------------------------------------------------------------------
# shadowing

@dataclass(frozen=True)
class SegmentRecord:
    """Diagnostics for one shadowed segment of a directed path."""

    case: int            # 0 constant, 1 vertex terminal, 2 skip, 3 partial
    target: int | None   # 0-based vertex axis
    appended: int
    dist_before: float
    dist_after: float
    bound: float


def required_radius(path: DirectedPath, eps1: float, eps2: float) -> float:
    """Start norm that shadow_walk needs for the given path and budgets."""
    if path.space != "sphere":
        raise GeometryError("shadowing needs a sphere-side directed path")
    if eps1 <= 0.0 or eps2 <= 0.0 or eps2 > eps1:
        raise GeometryError("budgets must satisfy 0 < eps2 <= eps1")
    n = path.n
    n_seg = max(1, path.aimed_count())
    return max(2.0,
               _csc(eps1 / (4.0 * n_seg)),
               math.sqrt(n) * _csc(eps1 / 4.0),
               (math.sqrt(n) / 2.0) * _csc(eps2 / 4.0),
               stationary_radius(n, 0.6 * eps2))


def _shadow_segments(state: _WalkState, path: DirectedPath, eps1: float,
                     delta: float, d_prev: float,
                     log: list | None, check: bool) -> float:
    """Run the per-segment append rules; returns the final terminal distance.

    Per aimed segment toward vertex w ending at T: if T is w, approach
    within CASE1_FRAC*eps1; if the projection is already closer to w than
    T, append nothing; otherwise append the minimal count that makes it
    strictly closer than T.  Each segment then satisfies
    dist <= max(eps1/2, previous + delta).
    """
    for _, st in path.segments():
        t_end = st.end
        if st.kind == "constant":
            d_after = state.angle_to(t_end)
            bound = max(eps1 / 2.0, d_prev + delta)
            if log is not None:
                log.append(SegmentRecord(0, None, 0, d_prev, d_after, bound))
            d_prev = d_after
            continue
        axis = st.target
        theta_t = math.acos(min(1.0, max(-1.0, float(t_end[axis]))))
        theta_cur = state.axis_angle(axis)
        if theta_t <= VERTEX_SNAP:
            case = 1
            m = _min_steps_below(state, axis, CASE1_FRAC * eps1)
        elif theta_t > theta_cur:
            case = 2
            m = 0
        else:
            case = 3
            m = _min_steps_below(state, axis, theta_t)
        state.append(axis, m)
        d_after = state.angle_to(t_end)
        bound = max(eps1 / 2.0, d_prev + delta)
        if check and d_after > bound + 1e-9:
            raise DriftBoundError(
                f"segment drift {d_after:.6g} exceeds budget {bound:.6g} "
                f"(case {case}, axis {axis}, appended {m})")
        if log is not None:
            log.append(SegmentRecord(case, axis, m, d_prev, d_after, bound))
        d_prev = d_after
    return d_prev


def _emit_interleaved(state: _WalkState, counts: np.ndarray) -> None:
    """Append counts[axis] steps per axis, interleaved proportionally.

    Every prefix stays within one step per axis of the exact ray mix, so
    the projected trace follows the great-circle arc of the straight
    segment it discretizes.
    """
    total = int(counts.sum())
    if total <= 0:
        return
    keys = []
    axes = []
    for axis in range(counts.size):
        c = int(counts[axis])
        if c <= 0:
            continue
        keys.append((np.arange(1, c + 1) - 0.5) / c)
        axes.append(np.full(c, axis, dtype=np.int64))
    key_arr = np.concatenate(keys)
    axis_arr = np.concatenate(axes)
    order = np.lexsort((axis_arr, key_arr))
    seq = axis_arr[order]
    # collapse runs so bulk appends stay cheap
    run_starts = np.flatnonzero(np.diff(seq)) + 1
    boundaries = np.concatenate(([0], run_starts, [seq.size]))
    for b0, b1 in zip(boundaries[:-1], boundaries[1:]):
        state.append(int(seq[b0]), int(b1 - b0))


def _tail_refine(state: _WalkState, t_end: np.ndarray, eps1: float, eps2: float,
                 log: list | None, check: bool, guard: int) -> None:
    """Bring the projection within 3*eps2/8 of t_end.

    At large norms, shadow a fine directed path toward the terminal; at
    small norms, where per-step quantization would dominate, walk a
    rounded integer multiple of the terminal ray instead.
    """
    beta = _sphere_line_path(state.unit(), t_end, eps2 / 8.0, guard)
    n_seg = max(1, beta.aimed_count())
    if state.nrm2 > _csc(eps2 / (8.0 * n_seg)) ** 2:
        _shadow_segments(state, beta, eps2, eps2 / (8.0 * n_seg), 0.0, log, check)
        return
    axial = float(np.dot(np.asarray(state.pos, dtype=float), t_end))
    perp = math.sqrt(max(0.0, state.nrm2 - axial * axial))
    tau = perp / math.tan(eps2 / 8.0) - axial
    if tau > 0.0:
        counts = np.maximum(0, np.round(tau * t_end)).astype(np.int64)
        _emit_interleaved(state, counts)


def _sphere_line_path(a: np.ndarray, target: np.ndarray, eps: float, guard: int) -> DirectedPath:
    from .simplex import sphere_line_approx
    return sphere_line_approx(SpherePoint(a), SpherePoint(target), eps, guard=guard)


def _pad(state: _WalkState, t_end: np.ndarray, pad_eps: float,
         min_len: int, min_norm: float) -> None:
    """Extend until the walk has min_len steps and norm strictly above min_norm.

    If the anchor terminal is a vertex, repeat its axis (the projection
    approaches the vertex monotonically); otherwise hover stationarily
    within pad_eps.
    """
    if len(state.out) >= min_len and state.nrm2 > min_norm * min_norm:
        return
    vertex_axis = None
    top = int(np.argmax(t_end))
    if math.acos(min(1.0, max(-1.0, float(t_end[top])))) <= VERTEX_SNAP:
        vertex_axis = top
    if vertex_axis is not None:
        while len(state.out) < min_len or state.nrm2 <= min_norm * min_norm:
            need_len = max(0, min_len - len(state.out))
            c = state.pos[vertex_axis]
            perp2 = float(state.nrm2 - c * c)
            need_norm = 0
            if state.nrm2 <= min_norm * min_norm:
                need_norm = int(math.ceil(math.sqrt(max(0.0, min_norm * min_norm - perp2)) - c)) + 1
            state.append(vertex_axis, max(1, need_len, need_norm))
        return
    gen = _stationary_stream(state.pos, tuple(range(state.n)), pad_eps)
    while len(state.out) < min_len or state.nrm2 <= min_norm * min_norm:
        state.append(next(gen))


def _shadow_into(state: _WalkState, path: DirectedPath, eps1: float, eps2: float,
                 min_len: int, min_norm: float, log: list | None,
                 check: bool, guard: int) -> None:
    d0 = state.angle_to(path.start)
    if d0 >= eps1 / 2.0:
        raise PreconditionError(
            f"start projection {d0:.4g} not within {eps1 / 2.0:.4g} of the path start")
    delta = eps1 / (4.0 * max(1, path.aimed_count()))
    _shadow_segments(state, path, eps1, delta, d0, log, check)
    t_end = path.end
    if state.angle_to(t_end) > 0.375 * eps2:
        _tail_refine(state, t_end, eps1, eps2, log, check, guard)
    if check:
        d_fin = state.angle_to(t_end)
        if d_fin > 0.375 * eps2 + 1e-9:
            raise DriftBoundError(f"tail landed {d_fin:.6g} from the terminal, "
                                  f"budget {0.375 * eps2:.6g}")
    _pad(state, t_end, 0.6 * eps2, min_len, min_norm)


def shadow_walk(path: DirectedPath, x, eps1: float, eps2: float, min_len: int = 0,
                *, min_norm: float = 0.0, log: list | None = None,
                check: bool = True, guard: int = 10 ** 6) -> list[int]:
    """A finite positive walk from x whose projected trace stays within
    Hausdorff distance eps1 of the directed path and ends within eps2 of
    its terminal, with at least min_len steps.

    Requires ||x|| >= required_radius(path, eps1, eps2), the projection of
    x within eps1/2 of the path start, and positive integer coordinates.
    """
    pos = [int(v) for v in x]
    if len(pos) != path.n:
        raise GeometryError("dimension mismatch between start and path")
    if any(v <= 0 for v in pos):
        raise GeometryError("start must have positive integer coordinates")
    state = _WalkState(pos)
    radius = required_radius(path, eps1, eps2)
    if state.norm() < radius:
        raise PreconditionError(
            f"start norm {state.norm():.4g} below required radius {radius:.4g}")
    _shadow_into(state, path, eps1, eps2, min_len, min_norm, log, check, guard)
    return state.out


# ---------------------------------------------------------------------------
# targets and phase plans

class TargetSet:
    """A connected piecewise-geodesic skeleton on the spherical simplex.

    Vertices are rays in the nonnegative orthant; edges are great-circle
    arcs between them; one vertex is the designated basepoint where every
    covering tour starts and ends.
    """

    __slots__ = ("vertices", "edges", "basepoint")

    def __init__(self, vertices, edges, basepoint: int) -> None:
        from .sphere import radial_project
        verts = tuple(radial_project(np.asarray(v, dtype=float)
                                     if not isinstance(v, SpherePoint) else v.coords)
                      for v in vertices)
        if not verts:
            raise GeometryError("target needs at least one vertex")
        n = verts[0].n
        if n < 2 or any(p.n != n for p in verts):
            raise GeometryError("target vertices must share one dimension >= 2")
        edge_list = []
        for e in edges:
            i, j = int(e[0]), int(e[1])
            if not (0 <= i < len(verts) and 0 <= j < len(verts)) or i == j:
                raise GeometryError(f"bad edge {e!r}")
            edge_list.append((min(i, j), max(i, j)))
        if not 0 <= int(basepoint) < len(verts):
            raise GeometryError(f"bad basepoint index {basepoint}")
        # connectivity over all vertices
        seen = {int(basepoint)}
        frontier = [int(basepoint)]
        adj: dict[int, list[int]] = {i: [] for i in range(len(verts))}
        for i, j in edge_list:
            adj[i].append(j)
            adj[j].append(i)
        while frontier:
            u = frontier.pop()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    frontier.append(v)
        if len(seen) != len(verts):
            raise GeometryError("target skeleton is not connected")
        self.vertices = verts
        self.edges = tuple(sorted(set(edge_list)))
        self.basepoint = int(basepoint)

    @property
    def n(self) -> int:
        return self.vertices[0].n

    def vertex_array(self) -> np.ndarray:
        return np.array([p.coords for p in self.vertices])

    def sample(self, resolution: float) -> np.ndarray:
        """Dense arc-length sample of the skeleton at the given angular spacing."""
        pts = [p.coords for p in self.vertices]
        for i, j in self.edges:
            a, b = self.vertices[i], self.vertices[j]
            length = angle_between(a, b)
            k = max(1, int(math.ceil(length / resolution)))
            for s in range(1, k):
                pts.append(slerp(a, b, s / k).coords)
        return np.array(pts)

    def tour(self) -> list[int]:
        """Closed vertex tour from the basepoint traversing every edge twice."""
        adj: dict[int, list[int]] = {i: [] for i in range(len(self.vertices))}
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        for lst in adj.values():
            lst.sort()
        seq = [self.basepoint]
        used: set[tuple[int, int]] = set()

        def visit(u: int) -> None:
            for v in adj[u]:
                key = (min(u, v), max(u, v))
                if key in used:
                    continue
                used.add(key)
                seq.append(v)
                visit(v)
                seq.append(u)

        visit(self.basepoint)
        return seq


@dataclass(frozen=True)
class PhaseSpec:
    """One phase of the synthesis schedule."""

    phase: int
    eps: float
    loop: Polyline           # sphere-side closed tour through the basepoint
    net: np.ndarray          # 1/k-net of the skeleton, all points on the loop


class PhasePlan:
    """Per-phase loops, nets and budgets for a target skeleton.

    The tour traverses the entire skeleton, so it contains every net at
    every scale and stays on the target exactly.
    """

    def __init__(self, target: TargetSet) -> None:
        self.target = target
        self._tour = target.tour()
        self._cache: dict[int, PhaseSpec] = {}

    def eps(self, k: int) -> float:
        return 2.0 ** (-k)

    def loop(self, k: int) -> Polyline:
        pts = [self.target.vertices[i].coords for i in self._tour]
        return Polyline("sphere", pts)

    def net(self, k: int) -> np.ndarray:
        if k < 1:
            raise GeometryError("net scale index must be >= 1")
        pts = [p.coords for p in self.target.vertices]
        for i, j in self.target.edges:
            a, b = self.target.vertices[i], self.target.vertices[j]
            length = angle_between(a, b)
            m = max(1, int(math.ceil(length * k)))
            for s in range(1, m):
                pts.append(slerp(a, b, s / m).coords)
        return np.array(pts)

    def phase(self, k: int) -> PhaseSpec:
        if k not in self._cache:
            self._cache[k] = PhaseSpec(k, self.eps(k), self.loop(k), self.net(k))
        return self._cache[k]


def plan_phases(target: TargetSet) -> PhasePlan:
    """Build the phase schedule for a target skeleton."""
    return PhasePlan(target)


# ---------------------------------------------------------------------------
# the synthesis stream

@dataclass(frozen=True)
class PhaseSpan:
    """Step range [start, stop) a phase occupies in the emitted stream."""

    phase: int
    start: int
    stop: int
    radius: float
    segments: int
    eps1: float
    eps2: float


class WalkSynthesizer:
    """Deterministic infinite walk from the origin realizing a target set.

    Phase k shadows a directed approximation of the covering tour with
    budget 2^-k, hands off within 2^-(k+2) of the next phase's start, and
    only begins once the norm exceeds that phase's required radius.  The
    emitted index list is append-only; phase spans record where each phase
    lives in it.
    """

    def __init__(self, target: TargetSet, *, collect_drift_log: bool = False,
                 guard: int = 10 ** 6) -> None:
        self.target = target
        self.plan = plan_phases(target)
        self.state = _WalkState([0] * target.n)
        self.phase_spans: list[PhaseSpan] = []
        self.drift_logs: dict[int, list[SegmentRecord]] = {}
        self._collect = collect_drift_log
        self._guard = guard
        self._dir_end: np.ndarray | None = None   # simplex-side chained endpoint
        self._lookahead: tuple[DirectedPath, np.ndarray, float] | None = None

    # -- schedule ----------------------------------------------------------
    def eps1(self, k: int) -> float:
        return 0.5 if k == 0 else 2.0 ** (-k)

    def eps2(self, k: int) -> float:
        return 0.25 if k == 0 else 2.0 ** (-(k + 2))

    def _approx_phase(self, k: int) -> tuple[DirectedPath, np.ndarray]:
        """Directed approximation of phase k's loop, chained simplex-side."""
        n = self.target.n
        if k == 0:
            start = SimplexPoint(np.full(n, 1.0 / n))
            qk = self.plan.target.vertices[self.plan.target.basepoint]
            target_k = SimplexPoint(qk.coords / qk.coords.sum())
            budget = transfer_budget(self.eps1(1), n)
            kp = line_approx(start, target_k, support_face(target_k), budget,
                             guard=self._guard)
        else:
            loop_k = polyline_to_simplex(self.plan.loop(k))
            budget = transfer_budget(self.eps1(k), n)
            kp = direct_approx(loop_k, SimplexPoint(self._dir_end), budget,
                               guard=self._guard)
        return path_to_sphere(kp), np.asarray(kp.end, dtype=float)

    def advance_phase(self) -> PhaseSpan:
        """Run the next phase to completion; returns its span."""
        k = len(self.phase_spans)
        start_len = len(self.state.out)
        log: list | None = [] if self._collect else None
        if k == 0:
            path0, end0 = self._approx_phase(0)
            r0 = required_radius(path0, self.eps1(0), self.eps2(0))
            while self.state.nrm2 <= r0 * r0:
                for axis in range(self.target.n):
                    self.state.append(axis)
            self._dir_end = end0
            path1, end1 = self._approx_phase(1)
            r1 = max(r0, required_radius(path1, self.eps1(1), self.eps2(1)))
            self._lookahead = (path1, end1, r1)
            _shadow_into(self.state, path0, self.eps1(0), self.eps2(0),
                         0, r1, log, True, self._guard)
            span = PhaseSpan(0, start_len, len(self.state.out), r0,
                             path0.aimed_count(), self.eps1(0), self.eps2(0))
        else:
            path_k, end_k, r_k = self._lookahead
            self._dir_end = end_k
            path_next, end_next = self._approx_phase(k + 1)
            r_next = max(r_k, required_radius(path_next, self.eps1(k + 1),
                                              self.eps2(k + 1)))
            self._lookahead = (path_next, end_next, r_next)
            _shadow_into(self.state, path_k, self.eps1(k), self.eps2(k),
                         0, r_next, log, True, self._guard)
            span = PhaseSpan(k, start_len, len(self.state.out), r_k,
                             path_k.aimed_count(), self.eps1(k), self.eps2(k))
        if log is not None:
            self.drift_logs[k] = log
        self.phase_spans.append(span)
        return span

    def ensure_phases(self, k: int) -> None:
        """Complete phases 0..k."""
        while len(self.phase_spans) <= k:
            self.advance_phase()

    def ensure_steps(self, steps: int) -> None:
        while len(self.state.out) < steps:
            self.advance_phase()

    def stream(self):
        """Infinite iterator over the emitted 1-based step indices."""
        i = 0
        while True:
            while i >= len(self.state.out):
                self.advance_phase()
            yield self.state.out[i]
            i += 1

    def walk(self) -> LatticeWalk:
        """Snapshot of everything emitted so far."""
        return LatticeWalk((0,) * self.target.n,
                           np.array(self.state.out, dtype=np.int16))


def synthesize(target: TargetSet):
    """Unbounded index stream whose projected tail clouds accumulate on the target."""
    return WalkSynthesizer(target).stream()
