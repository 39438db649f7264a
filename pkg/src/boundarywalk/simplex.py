"""Directed paths on the standard simplex and their spherical transfer.

The standard Euclidean simplex K has the coordinate axes' unit points as
vertices, so a point of K is its own barycentric coordinate vector.  A
*directed* path is a chain of segments each of which either stays put or
heads straight at a vertex; the constructions here approximate arbitrary
segments and polylines by directed paths to any positive tolerance, first
on K and then, by radial projection, on the spherical simplex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import GeometryError, IterationLimitError
from .sphere import SpherePoint, radial_project, slerp, angle_between

SNAP = 1e-12
SUPPORT_TOL = 1e-12
# Hard cap on outer iterations of a single segment approximation.
ITER_GUARD = 10 ** 6
# Recursion budgets never drop below this, keeping every geometric
# predicate four orders of magnitude above float noise on unit-scale
# coordinates.  Public tolerances must stay above it.
BUDGET_FLOOR = 1e-12


class SimplexPoint:
    """Barycentric coordinates on the standard simplex: entries >= 0, sum 1.

    Entries in [-1e-12, 0) are clamped to 0; the sum must be 1 within 1e-12
    and is renormalized exactly.
    """

    __slots__ = ("coords",)

    def __init__(self, coords) -> None:
        arr = np.array(coords, dtype=float)
        if arr.ndim != 1 or arr.size < 1:
            raise GeometryError("expected a 1-d coordinate vector")
        if np.min(arr) < -1e-12:
            raise GeometryError(f"negative barycentric coordinate in {arr!r}")
        arr = np.maximum(arr, 0.0)
        s = float(arr.sum())
        if abs(s - 1.0) > 1e-12:
            raise GeometryError(f"barycentric coordinates sum to {s!r}, not 1")
        arr /= s
        arr.setflags(write=False)
        self.coords = arr

    @property
    def n(self) -> int:
        return self.coords.size

    def __repr__(self) -> str:
        return f"SimplexPoint({np.array2string(self.coords, precision=6)})"


def _simplex_coords(p) -> np.ndarray:
    if isinstance(p, SimplexPoint):
        return p.coords
    return SimplexPoint(p).coords


def support_face(p, tol: float = SUPPORT_TOL) -> tuple[int, ...]:
    """Axes with strictly positive coordinate; p is interior to this face."""
    arr = p.coords if isinstance(p, (SimplexPoint, SpherePoint)) else np.asarray(p, float)
    return tuple(int(i) for i in np.nonzero(arr > tol)[0])


def simplex_vertex(n: int, axis: int) -> np.ndarray:
    v = np.zeros(n)
    v[axis] = 1.0
    return v


@dataclass(frozen=True)
class PathStep:
    """One unit of a directed path: constant, or aimed at vertex `target`."""

    kind: str  # "aimed" | "constant"
    target: int | None
    end: np.ndarray


class DirectedPath:
    """A chain of directed segments; each step starts where the previous ended.

    `space` is "simplex" (Euclidean metric on coordinates) or "sphere"
    (angle metric on unit vectors).
    """

    __slots__ = ("space", "start", "steps")

    def __init__(self, space: str, start: np.ndarray, steps: tuple[PathStep, ...]) -> None:
        if space not in ("simplex", "sphere"):
            raise GeometryError(f"unknown path space {space!r}")
        s = np.array(start, dtype=float)
        s.setflags(write=False)
        self.space = space
        self.start = s
        self.steps = tuple(steps)

    @property
    def n(self) -> int:
        return self.start.size

    @property
    def end(self) -> np.ndarray:
        return self.steps[-1].end if self.steps else self.start

    def points(self) -> list[np.ndarray]:
        return [self.start] + [st.end for st in self.steps]

    def aimed_count(self) -> int:
        return sum(1 for st in self.steps if st.kind == "aimed")

    def segments(self):
        """Yield (start_point, step) pairs."""
        cur = self.start
        for st in self.steps:
            yield cur, st
            cur = st.end

    def _dist(self, u: np.ndarray, v: np.ndarray) -> float:
        if self.space == "simplex":
            return float(np.linalg.norm(u - v))
        return angle_between(u, v)

    def validate(self, tol: float = 1e-9) -> None:
        """Check the structural invariants; raises GeometryError on failure."""
        for p0, st in self.segments():
            if st.kind == "constant":
                if self._dist(p0, st.end) > tol:
                    raise GeometryError("constant step moves")
                continue
            if st.target is None or not 0 <= st.target < self.n:
                raise GeometryError("aimed step without a valid target vertex")
            v = simplex_vertex(self.n, st.target)
            if self.space == "simplex":
                d = v - p0
                denom = float(np.dot(d, d))
                if denom <= SNAP:
                    raise GeometryError("aimed step starting at its own vertex")
                t = float(np.dot(st.end - p0, d)) / denom
                resid = float(np.linalg.norm(st.end - (p0 + t * d)))
            else:
                full = angle_between(p0, v)
                if full <= SNAP:
                    raise GeometryError("aimed step starting at its own vertex")
                t = angle_between(p0, st.end) / full
                resid = angle_between(st.end, slerp(SpherePoint(p0), SpherePoint(v), min(1.0, t)).coords)
            if resid > tol:
                raise GeometryError(f"aimed step leaves its geodesic (residual {resid:.2e})")
            if not SNAP < t <= 1.0 + tol:
                raise GeometryError(f"aimed step parameter {t} outside (0, 1]")

    def sample(self, resolution: float) -> np.ndarray:
        """Points along the path at the given spacing (Euclidean or angular)."""
        pts = [self.start]
        for p0, st in self.segments():
            length = self._dist(p0, st.end)
            k = max(1, int(math.ceil(length / resolution)))
            for j in range(1, k + 1):
                t = j / k
                if self.space == "simplex":
                    pts.append(p0 + t * (st.end - p0))
                else:
                    pts.append(slerp(SpherePoint(p0), SpherePoint(st.end), t).coords)
        return np.array(pts)


class Polyline:
    """A chain of points interpreted as concatenated segments."""

    __slots__ = ("space", "points")

    def __init__(self, space: str, points) -> None:
        if space not in ("simplex", "sphere"):
            raise GeometryError(f"unknown polyline space {space!r}")
        arr = np.array(points, dtype=float)
        if arr.ndim != 2 or arr.shape[0] < 1:
            raise GeometryError("polyline needs at least one point")
        arr.setflags(write=False)
        self.space = space
        self.points = arr

    @property
    def n(self) -> int:
        return self.points.shape[1]

    def sample(self, resolution: float) -> np.ndarray:
        pts = [self.points[0]]
        for j in range(1, len(self.points)):
            a, b = self.points[j - 1], self.points[j]
            length = float(np.linalg.norm(b - a)) if self.space == "simplex" else angle_between(a, b)
            k = max(1, int(math.ceil(length / resolution)))
            for i in range(1, k + 1):
                t = i / k
                if self.space == "simplex":
                    pts.append(a + t * (b - a))
                else:
                    pts.append(slerp(SpherePoint(a), SpherePoint(b), t).coords)
        return np.array(pts)


# ---------------------------------------------------------------------------
# segment helpers

def _seg_nearest_t(p: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    d = b - a
    dd = float(np.dot(d, d))
    if dd <= SNAP * SNAP:
        return 0.0
    return min(1.0, max(0.0, float(np.dot(p - a, d)) / dd))


def segment_distance(p: np.ndarray, a: np.ndarray, b: np.ndarray) -> float:
    """Euclidean distance from p to the segment [a, b]."""
    t = _seg_nearest_t(p, a, b)
    return float(np.linalg.norm(p - (a + t * (b - a))))


def _aim_vertex_for(cur: np.ndarray, q2: np.ndarray, tol: float = 1e-11) -> int | None:
    """A vertex w with q2 on the segment [cur, w], if one exists."""
    n = cur.size
    for w in range(n):
        d = simplex_vertex(n, w) - cur
        dd = float(np.dot(d, d))
        if dd <= SNAP:
            continue
        t = float(np.dot(q2 - cur, d)) / dd
        if not SNAP < t <= 1.0 + 1e-9:
            continue
        if float(np.linalg.norm(q2 - (cur + min(t, 1.0) * d))) <= tol:
            return w
    return None


class _PathBuilder:
    def __init__(self, start: np.ndarray) -> None:
        self.start = np.array(start, dtype=float)
        self.cur = self.start.copy()
        self.steps: list[PathStep] = []

    def aim(self, axis: int, end: np.ndarray) -> None:
        if float(np.linalg.norm(end - self.cur)) <= SNAP:
            return
        e = np.array(end, dtype=float)
        e.setflags(write=False)
        self.steps.append(PathStep("aimed", axis, e))
        self.cur = e.copy()

    def extend(self, steps) -> None:
        for st in steps:
            self.steps.append(st)
            self.cur = st.end.copy()

    def path(self, space: str = "simplex") -> DirectedPath:
        return DirectedPath(space, self.start, tuple(self.steps))


def _truncate_near(steps: list[PathStep], start: np.ndarray, x: np.ndarray,
                   radius: float) -> list[PathStep]:
    """Cut a step chain at the first point within `radius` of x.

    The closest approach is evaluated pointwise rather than through the
    quadratic's discriminant, which cancels catastrophically when `radius`
    is many orders below the step length.
    """
    out: list[PathStep] = []
    p0 = start
    if float(np.linalg.norm(p0 - x)) <= radius:
        return out
    for st in steps:
        d = st.end - p0
        dd = float(np.dot(d, d))
        if dd > SNAP * SNAP:
            t_min = min(1.0, max(0.0, float(np.dot(x - p0, d)) / dd))
            d_min = float(np.linalg.norm(p0 + t_min * d - x))
            if d_min <= radius:
                back = math.sqrt(max(0.0, radius * radius - d_min * d_min)) / math.sqrt(dd)
                t = max(0.0, t_min - back)
                if t <= SNAP:
                    return out
                end = p0 + min(1.0, t) * d
                end.setflags(write=False)
                out.append(PathStep(st.kind, st.target, end))
                return out
        out.append(st)
        p0 = st.end
    return out


def _first_crossing_t(cur: np.ndarray, q3: np.ndarray, a: np.ndarray, b: np.ndarray,
                      thresh: float) -> float | None:
    """First t with dist(cur + t(q3-cur), [a,b]) >= thresh; None if never.

    Distance to a segment is convex along a line, so with f(0) < 0 there is
    a single crossing, found by bisection.
    """

    def f(t: float) -> float:
        return segment_distance(cur + t * (q3 - cur), a, b) - thresh

    if f(1.0) < 0.0:
        return None
    if f(0.0) >= 0.0:
        return 0.0
    lo, hi = 0.0, 1.0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if f(mid) >= 0.0:
            hi = mid
        else:
            lo = mid
    return hi


def _approach(b: _PathBuilder, q2: np.ndarray, face: tuple[int, ...], eps: float,
              round_log: list | None, guard: int) -> None:
    """Extend the builder by a directed path from b.cur to within eps of q2.

    The emitted piece stays within eps of the segment [b.cur, q2]; q2 must be
    interior to `face`.
    """
    q_orig = b.cur.copy()
    n = q2.size
    if float(np.linalg.norm(q_orig - q2)) <= max(SNAP, 0.75 * eps):
        return
    w = _aim_vertex_for(q_orig, q2)
    if w is not None:
        b.aim(w, q2)
        return
    if len(face) < 2:
        raise GeometryError("unreachable: non-aimed target on a vertex face")

    # Fixed frame for this call: the line through q_orig and q2, the chosen
    # far vertex v, and the exit point q3 of the ray v -> q2 on the subface.
    line_dir = q_orig - q2
    line_dir /= np.linalg.norm(line_dir)

    def off_line(vtx: int) -> float:
        d = simplex_vertex(n, vtx) - q2
        return float(np.linalg.norm(d - np.dot(d, line_dir) * line_dir))

    candidates = sorted(face, key=lambda vtx: -float(np.linalg.norm(simplex_vertex(n, vtx) - q2)))
    v = None
    for cand in candidates:
        if off_line(cand) > 1e-9 or len(face) == 2:
            v = cand
            break
    if v is None:
        raise GeometryError("degenerate face geometry: no usable steering vertex")
    sub = tuple(a for a in face if a != v)
    q3 = q2.copy()
    q3[v] = 0.0
    q3 /= q3.sum()

    if float(np.linalg.norm(q3 - q2)) <= eps / 2.0:
        _approach(b, q3, sub, eps / 2.0, round_log, guard)
        return

    perp = (q3 - q2) - np.dot(q3 - q2, line_dir) * line_dir
    pn = float(np.linalg.norm(perp))
    if pn <= 1e-13:
        # q3 sits on the line through q_orig and q2; steer via a different
        # vertex by recursing one level with a shrunk budget.
        _approach(b, q3, sub, min(eps / 2.0, 0.5 * float(np.linalg.norm(q3 - q2))), round_log, guard)
        return
    nu = perp / pn
    vpt = simplex_vertex(n, v)
    s_v = float(np.dot(nu, vpt - q2))

    prev_i = 2
    for _ in range(guard):
        cur = b.cur
        d_cur = float(np.linalg.norm(cur - q2))
        if d_cur <= 0.75 * eps:
            return
        w = _aim_vertex_for(cur, q2)
        if w is not None:
            b.aim(w, q2)
            return
        dist_vq3 = segment_distance(cur, vpt, q3)
        if round_log is not None:
            round_log.append((d_cur, dist_vq3))
        i = prev_i + 1
        while eps / 2.0 ** i >= max(dist_vq3, 4.0 * SNAP) / 4.0 and i < 60:
            i += 1
        prev_i = i
        # The budget shrinks every round per the escalation rule, but is
        # floored well above float resolution so truncation stays reliable.
        eps_i = max(eps / 2.0 ** i, BUDGET_FLOOR)

        if segment_distance(q2, cur, q3) <= eps / 2.0:
            # The straight run at q3 passes close to the target; cut there.
            t_near = _seg_nearest_t(q2, cur, q3)
            x = cur + t_near * (q3 - cur)
        else:
            t_x = _first_crossing_t(cur, q3, q_orig, q2, eps / 2.0)
            if t_x is None:
                x = q3
            elif t_x <= SNAP:
                # Already at the tube wall; force a short march toward q3.
                step = min(1.0, 2.0 * eps_i / max(SNAP, float(np.linalg.norm(q3 - cur))))
                x = cur + step * (q3 - cur)
            else:
                x = cur + t_x * (q3 - cur)

        tmp = _PathBuilder(cur)
        _approach(tmp, q3, sub, eps_i, None, guard)
        b.extend(_truncate_near(tmp.steps, cur, x, eps_i))

        s_ba = float(np.dot(nu, b.cur - q2))
        if s_ba > 1e-13:
            t = s_ba / (s_ba - s_v)
            y = b.cur + t * (vpt - b.cur)
            b.aim(v, y)
    raise IterationLimitError("segment approximation failed to terminate")


def line_approx(q, q2, face, eps: float, *, round_log: list | None = None,
                guard: int = ITER_GUARD) -> DirectedPath:
    """Directed path from q ending within eps of q2, staying within eps of [q, q2].

    q2 must be interior to `face` (its support must equal the face exactly);
    boundary targets are rejected rather than perturbed.
    """
    qc = _simplex_coords(q)
    q2c = _simplex_coords(q2)
    if eps <= 0.0:
        raise GeometryError("tolerance must be positive")
    face_t = tuple(sorted(int(a) for a in face))
    if support_face(q2c) != face_t:
        raise GeometryError("target point is not interior to the given face")
    b = _PathBuilder(qc)
    _approach(b, q2c, face_t, eps, round_log, guard)
    return b.path("simplex")


def direct_approx(gamma: Polyline, start, eps: float, *, guard: int = ITER_GUARD) -> DirectedPath:
    """Directed path within Hausdorff distance eps of the polyline `gamma`.

    The start may be any point within eps of gamma's first vertex; the
    result ends within eps/2 of gamma's last vertex.  Each polyline segment
    is approximated with budget eps/2 and the pieces are chained.
    """
    if gamma.space != "simplex":
        raise GeometryError("direct_approx expects a simplex-side polyline")
    sc = _simplex_coords(start)
    if eps <= 0.0:
        raise GeometryError("tolerance must be positive")
    pts = gamma.points
    if float(np.linalg.norm(sc - pts[0])) > eps + 1e-12:
        raise GeometryError("start point too far from the polyline's first vertex")
    b = _PathBuilder(sc)
    budget = eps / 2.0
    if float(np.linalg.norm(sc - pts[0])) > SNAP:
        _approach(b, pts[0], support_face(pts[0]), budget, None, guard)
    for j in range(1, len(pts)):
        if float(np.linalg.norm(pts[j] - pts[j - 1])) <= SNAP:
            continue
        _approach(b, pts[j], support_face(pts[j]), budget, None, guard)
    return b.path("simplex")


# ---------------------------------------------------------------------------
# transfer between the Euclidean and spherical simplices

def simplex_to_sphere(p) -> SpherePoint:
    """Radial projection of a simplex point; vertices map to vertices."""
    return radial_project(_simplex_coords(p))


def sphere_to_simplex(p) -> SimplexPoint:
    arr = p.coords if isinstance(p, SpherePoint) else np.asarray(p, float)
    return SimplexPoint(arr / arr.sum())


def path_to_sphere(path: DirectedPath) -> DirectedPath:
    """Transfer a simplex-side directed path to the sphere.

    Radial projection sends segments through the origin's planes to
    great-circle arcs, so aimed steps stay aimed at the same vertex.
    """
    if path.space != "simplex":
        raise GeometryError("expected a simplex-side path")
    steps = []
    for st in path.steps:
        end = radial_project(st.end).coords
        steps.append(PathStep(st.kind, st.target, end))
    return DirectedPath("sphere", radial_project(path.start).coords, tuple(steps))


def polyline_to_simplex(poly: Polyline) -> Polyline:
    if poly.space == "simplex":
        return poly
    pts = poly.points / poly.points.sum(axis=1, keepdims=True)
    return Polyline("simplex", pts)


def polyline_to_sphere(poly: Polyline) -> Polyline:
    if poly.space == "sphere":
        return poly
    pts = poly.points / np.linalg.norm(poly.points, axis=1, keepdims=True)
    return Polyline("sphere", pts)


def transfer_budget(eps_sphere: float, n: int) -> float:
    """Euclidean budget on K guaranteeing an angular budget on the sphere.

    Points of K have norm >= 1/sqrt(n), so the angle between projections of
    u, w in K is at most (pi*sqrt(n)/2)*|u - w|.
    """
    return eps_sphere * 2.0 / (math.pi * math.sqrt(n))


def sphere_line_approx(a, target, eps: float, *, guard: int = ITER_GUARD) -> DirectedPath:
    """Directed path on the sphere from a to within eps of target.

    Built on the Euclidean simplex with a distortion-safe budget, then
    projected; stays within eps of the connecting great-circle arc.
    """
    a_pt = a if isinstance(a, SpherePoint) else SpherePoint(a)
    t_pt = target if isinstance(target, SpherePoint) else SpherePoint(target)
    ak = sphere_to_simplex(a_pt)
    tk = sphere_to_simplex(t_pt)
    budget = transfer_budget(eps, a_pt.n)
    kp = line_approx(ak, tk, support_face(tk), budget, guard=guard)
    return path_to_sphere(kp)
