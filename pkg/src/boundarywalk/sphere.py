"""Spherical geometry on the nonnegative unit half-sphere.

Points are unit vectors with coordinates >= 0 (boundary rays of the
positive orthant), distances are angles at the origin, in radians.
All angles returned by this module lie in [0, pi]; on the nonnegative
half-sphere any two points are at most pi/2 apart.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import GeometryError, PreconditionError

# Coordinates more negative than this are rejected; less negative ones are
# clamped to 0 on construction.
COORD_CLAMP = 1e-12
# Tolerance on the unit-norm invariant at construction.
UNIT_TOL = 1e-12
# Two sphere points closer than this angle are treated as the same point.
POINT_EQ_TOL = 1e-9


def _clamp_nonneg(arr: np.ndarray) -> np.ndarray:
    if arr.ndim != 1 or arr.size < 1:
        raise GeometryError("expected a 1-d coordinate vector")
    if np.min(arr) < -COORD_CLAMP:
        raise GeometryError(f"negative coordinate in {arr!r}")
    return np.maximum(arr, 0.0)


class SpherePoint:
    """A unit vector with nonnegative coordinates.

    Construction clamps coordinates in [-1e-12, 0) to 0 and renormalizes;
    anything farther from the invariants is rejected.
    """

    __slots__ = ("coords",)

    def __init__(self, coords) -> None:
        arr = _clamp_nonneg(np.array(coords, dtype=float))
        nrm = float(np.linalg.norm(arr))
        if abs(nrm - 1.0) > UNIT_TOL:
            raise GeometryError(f"not a unit vector (norm {nrm!r})")
        arr /= nrm
        arr.setflags(write=False)
        self.coords = arr

    @property
    def n(self) -> int:
        return self.coords.size

    def isclose(self, other: "SpherePoint", tol: float = POINT_EQ_TOL) -> bool:
        return angle_between(self, other) <= tol

    def __repr__(self) -> str:
        return f"SpherePoint({np.array2string(self.coords, precision=6)})"


def _coords(p) -> np.ndarray:
    if isinstance(p, SpherePoint):
        return p.coords
    return np.asarray(p, dtype=float)


def axis_point(n: int, axis: int) -> SpherePoint:
    """The simplex vertex on coordinate axis `axis` (0-based)."""
    if not 0 <= axis < n:
        raise GeometryError(f"axis {axis} out of range for dimension {n}")
    v = np.zeros(n)
    v[axis] = 1.0
    return SpherePoint(v)


def radial_project(x) -> SpherePoint:
    """Project a nonzero vector with nonnegative coordinates to the half-sphere.

    Scale invariant: radial_project(t*x) == radial_project(x) for t > 0.
    """
    arr = _clamp_nonneg(np.array(x, dtype=float))
    nrm = float(np.linalg.norm(arr))
    if nrm <= 0.0:
        raise GeometryError("cannot project the zero vector")
    return SpherePoint(arr / nrm)


def _angle_arr(u: np.ndarray, v: np.ndarray) -> float:
    # Dot products are clamped before arccos so degenerate configurations
    # never produce NaN.
    d = float(np.dot(u, v)) / (float(np.linalg.norm(u)) * float(np.linalg.norm(v)))
    return math.acos(min(1.0, max(-1.0, d)))


def angle_between(a, b) -> float:
    """Angle at the origin between two sphere points, in [0, pi]."""
    return _angle_arr(_coords(a), _coords(b))


def slerp(a, b, t: float) -> SpherePoint:
    """Point on the great-circle arc from `a` to `b` at fraction `t` of the angle."""
    if not 0.0 <= t <= 1.0:
        raise GeometryError(f"interpolation parameter {t} outside [0, 1]")
    ua, ub = _coords(a), _coords(b)
    theta = _angle_arr(ua, ub)
    if theta <= 1e-15:
        return SpherePoint(ua)
    s = math.sin(theta)
    w = (math.sin((1.0 - t) * theta) * ua + math.sin(t * theta) * ub) / s
    return SpherePoint(w / np.linalg.norm(w))


def third_side(aw: float, bw: float, c: float) -> float:
    """Side `ab` of the spherical triangle with sides aw, bw meeting at angle `c`.

    Spherical law of cosines: cos(ab) = cos(aw)cos(bw) + sin(aw)sin(bw)cos(c).
    """
    for val in (aw, bw, c):
        if not -1e-12 <= val <= math.pi + 1e-12:
            raise GeometryError(f"angle {val} outside [0, pi]")
    cos_ab = math.cos(aw) * math.cos(bw) + math.sin(aw) * math.sin(bw) * math.cos(c)
    return math.acos(min(1.0, max(-1.0, cos_ab)))


def chord_step_bound(x) -> float:
    """Upper bound asin(1/||x||) on the projected length of one basis step from x."""
    nrm = float(np.linalg.norm(np.asarray(x, dtype=float)))
    if nrm < 1.0 - 1e-12:
        raise GeometryError(f"bound requires ||x|| >= 1, got {nrm}")
    return math.asin(min(1.0, 1.0 / nrm))


def psi_collapse(q, axis: int) -> SpherePoint:
    """Push q away from the vertex on `axis` onto the opposite face.

    Zeroes coordinate `axis` and renormalizes, which realizes extending the
    geodesic from that vertex through q until it leaves the vertex's star.
    Undefined at the vertex itself.
    """
    u = _coords(q).copy()
    if not 0 <= axis < u.size:
        raise GeometryError(f"axis {axis} out of range")
    u[axis] = 0.0
    nrm = float(np.linalg.norm(u))
    if nrm <= 1e-12:
        raise GeometryError("collapse undefined at the vertex of its own axis")
    return SpherePoint(u / nrm)


def monotone_approach_holds(a, a2, w, b, tol: float = 1e-9) -> bool:
    """Whether moving from `a` to `a2` along the geodesic toward `w` strictly
    decreases the distance to `b`.

    Preconditions (violations raise PreconditionError, they are never
    reported as False): `a2` lies strictly inside the arc [a, w]; b is
    strictly closer to w than a2 is; all pairwise distances are <= pi/2.
    """
    pts = [_coords(p) for p in (a, a2, w, b)]
    for i in range(4):
        for j in range(i + 1, 4):
            if _angle_arr(pts[i], pts[j]) > math.pi / 2 + 1e-12:
                raise PreconditionError("pairwise distance exceeds pi/2")
    d_aw = angle_between(a, w)
    d_a2w = angle_between(a2, w)
    d_aa2 = angle_between(a, a2)
    if abs(d_aa2 + d_a2w - d_aw) > tol:
        raise PreconditionError("a2 does not lie on the arc from a to w")
    if not d_a2w < d_aw - tol:
        raise PreconditionError("a2 is not strictly between a and w")
    if not angle_between(b, w) < d_a2w - tol:
        raise PreconditionError("b is not strictly closer to w than a2")
    return angle_between(b, a2) < angle_between(b, a)
