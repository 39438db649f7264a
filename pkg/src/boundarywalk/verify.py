"""Numerical verification of boundary behavior.

Projects walk prefixes to the sphere, measures Hausdorff distances in the
angle metric, and produces per-phase convergence reports comparing tail
clouds against a target skeleton.  Every reported number is recomputed from
the exact integer positions at report time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import GeometryError
from .synthesis import LatticeWalk, WalkSynthesizer

# Angular spacing for skeleton samples at net scale k: min(1/(10k), this cap).
Z_RESOLUTION_CAP = 1e-3
# Target number of cloud points per phase before striding kicks in.
CLOUD_CAP = 4096


def _as_unit_rows(points) -> np.ndarray:
    arr = np.asarray(points, dtype=float)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2 or arr.shape[0] == 0:
        raise GeometryError("expected a nonempty set of points")
    nrm = np.linalg.norm(arr, axis=1, keepdims=True)
    if np.any(nrm <= 0.0):
        raise GeometryError("zero vector cannot lie on the sphere")
    return arr / nrm


def _directed_min_dot(a: np.ndarray, b: np.ndarray, block: int = 1024) -> float:
    """min over rows of a of (max dot with rows of b)."""
    worst = 1.0
    for lo in range(0, a.shape[0], block):
        dots = a[lo:lo + block] @ b.T
        worst = min(worst, float(np.max(dots, axis=1).min()))
    return worst


def hausdorff(a, b) -> float:
    """Hausdorff distance between finite sphere point sets, in radians."""
    ua, ub = _as_unit_rows(a), _as_unit_rows(b)
    d = min(_directed_min_dot(ua, ub), _directed_min_dot(ub, ua))
    return math.acos(min(1.0, max(-1.0, d)))


@dataclass(frozen=True)
class TailCloud:
    """Projections of all walk positions from a step index onward."""

    points: np.ndarray
    span: tuple[int, int]


def tail_cloud(walk: LatticeWalk, from_step: int) -> TailCloud:
    """Project every position with index >= from_step."""
    if not 0 <= from_step <= len(walk):
        raise GeometryError(f"from_step {from_step} outside 0..{len(walk)}")
    pos = walk.positions()[from_step:]
    return TailCloud(_as_unit_rows(pos.astype(float)), (from_step, len(walk)))


@dataclass(frozen=True)
class PhaseReport:
    """Measured convergence of one phase's projected cloud to the target."""

    phase: int
    span: tuple[int, int]
    prefix_length: int
    d_h: float
    stride: int
    stride_slack: float
    resolution: float
    budget: float
    net_scale: float
    sampling_slack: float
    tolerance: float
    passed: bool


@dataclass(frozen=True)
class ConvergenceReport:
    dimension: int
    phases: tuple[PhaseReport, ...]
    overall_pass: bool

    def render(self) -> str:
        lines = [f"dimension={self.dimension} phases={len(self.phases)}"]
        for r in self.phases:
            lines.append(
                "phase={p} span_start={a} span_stop={b} prefix_length={n} "
                "d_h={dh:.17g} stride={s} stride_slack={ss:.17g} "
                "resolution={res:.17g} budget={bu:.17g} net_scale={ns:.17g} "
                "sampling_slack={sl:.17g} tolerance={tol:.17g} pass={ok}".format(
                    p=r.phase, a=r.span[0], b=r.span[1], n=r.prefix_length,
                    dh=r.d_h, s=r.stride, ss=r.stride_slack, res=r.resolution,
                    bu=r.budget, ns=r.net_scale, sl=r.sampling_slack,
                    tol=r.tolerance, ok="true" if r.passed else "false"))
        lines.append(f"overall_pass={'true' if self.overall_pass else 'false'}")
        return "\n".join(lines) + "\n"


def phase_tolerance(k: int, resolution: float) -> float:
    """Default tolerance for phase k: approximation budget + net scale + slack."""
    return 2.0 ** (-k) + 1.0 / k + resolution / 2.0


def _phase_cloud(synth: WalkSynthesizer, span, cloud_cap: int) -> tuple[np.ndarray, int, float]:
    """Strided projected positions over a span, plus the stride slack.

    Consecutive positions move by at most asin(1/norm) on the sphere, so a
    stride of s misses points at most s*asin(1/norm_start) from a kept one.
    """
    walk = synth.walk()
    pos = walk.positions()[span.start:span.stop + 1]
    stride = max(1, (pos.shape[0] - 1) // cloud_cap)
    sel = pos[::stride]
    if (pos.shape[0] - 1) % stride:
        sel = np.vstack([sel, pos[-1]])
    start_norm = float(np.linalg.norm(pos[0]))
    slack = stride * math.asin(min(1.0, 1.0 / max(1.0, start_norm)))
    return _as_unit_rows(sel.astype(float)), stride, slack


def convergence_report(synth: WalkSynthesizer, phases: int, *,
                       tolerances: dict[int, float] | None = None,
                       cloud_cap: int = CLOUD_CAP) -> ConvergenceReport:
    """Drive the synthesizer through the requested phases and measure each one.

    Phase k's cloud (all projected positions in its span, strided with
    recorded slack) is compared against a dense sample of the target at
    resolution min(1/(10k), 1e-3); it passes if the measured Hausdorff
    distance plus slacks stays below the phase tolerance.
    """
    if phases < 1:
        raise GeometryError("need at least one phase")
    synth.ensure_phases(phases)
    reports = []
    for k in range(1, phases + 1):
        span = synth.phase_spans[k]
        resolution = min(1.0 / (10.0 * k), Z_RESOLUTION_CAP)
        z_sample = synth.target.sample(resolution)
        cloud, stride, stride_slack = _phase_cloud(synth, span, cloud_cap)
        d_h = hausdorff(cloud, z_sample)
        tol = (tolerances or {}).get(k, phase_tolerance(k, resolution))
        effective = d_h + stride_slack + resolution / 2.0
        reports.append(PhaseReport(
            phase=k, span=(span.start, span.stop), prefix_length=span.stop,
            d_h=d_h, stride=stride, stride_slack=stride_slack,
            resolution=resolution, budget=2.0 ** (-k), net_scale=1.0 / k,
            sampling_slack=resolution / 2.0, tolerance=tol,
            passed=bool(effective <= tol)))
    return ConvergenceReport(synth.target.n, tuple(reports),
                             all(r.passed for r in reports))
