"""Command-line front end.

Reads a target-skeleton description, synthesizes the walk to a requested
phase count or prefix length, and emits the generator word, a projection
trace table, and a convergence report.  Outputs are deterministic:
identical configurations produce byte-identical files.

Exit codes: 0 success (all verified phases pass), 1 tolerance failure with
--verify, 2 malformed target or configuration.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .errors import GeometryError, TargetFormatError
from .groups import format_word
from .synthesis import TargetSet, WalkSynthesizer
from .verify import ConvergenceReport, convergence_report, Z_RESOLUTION_CAP

TRACE_CHUNK = 65536


def load_target(path: str) -> TargetSet:
    """Load a target skeleton from a JSON description.

    Required fields: dimension (int >= 2), vertices (list of coordinate
    lists, renormalized onto the sphere), edges (list of index pairs),
    basepoint (vertex index).
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise TargetFormatError(f"cannot read target file {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise TargetFormatError("target file must hold a JSON object")
    missing = {"dimension", "vertices", "edges", "basepoint"} - set(data)
    if missing:
        raise TargetFormatError(f"target file missing fields: {sorted(missing)}")
    dim = data["dimension"]
    if not isinstance(dim, int) or dim < 2:
        raise TargetFormatError(f"dimension must be an integer >= 2, got {dim!r}")
    verts = data["vertices"]
    if not isinstance(verts, list) or not verts:
        raise TargetFormatError("vertices must be a nonempty list")
    for v in verts:
        if not isinstance(v, list) or len(v) != dim or \
                not all(isinstance(c, (int, float)) for c in v):
            raise TargetFormatError(f"bad vertex {v!r}")
    edges = data["edges"]
    if not isinstance(edges, list) or not all(
            isinstance(e, list) and len(e) == 2 for e in edges):
        raise TargetFormatError("edges must be a list of index pairs")
    try:
        return TargetSet(verts, edges, data["basepoint"])
    except (GeometryError, TypeError) as exc:
        raise TargetFormatError(f"invalid target: {exc}") from exc


def _write_word(path: str, synth: WalkSynthesizer, limit: int) -> None:
    out = synth.state.out
    with open(path, "w", encoding="utf-8") as fh:
        for span in synth.phase_spans:
            lo, hi = span.start, min(span.stop, limit)
            if hi > lo:
                fh.write(format_word(out[lo:hi]) + "\n")
            if hi >= limit:
                break


def _write_trace(path: str, synth: WalkSynthesizer, limit: int, stride: int) -> None:
    n = synth.target.n
    z = synth.target.sample(Z_RESOLUTION_CAP)
    idx = np.array(synth.state.out[:limit], dtype=np.int64)
    cols = (["step"] + [f"c{j + 1}" for j in range(n)]
            + [f"s{j + 1}" for j in range(n)] + ["dist_z"])
    pos = np.zeros(n, dtype=np.int64)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\t".join(cols) + "\n")
        _write_trace_row(fh, 0, pos, z)
        for lo in range(0, idx.size, TRACE_CHUNK):
            chunk = idx[lo:lo + TRACE_CHUNK]
            deltas = np.zeros((chunk.size, n), dtype=np.int64)
            deltas[np.arange(chunk.size), chunk - 1] = 1
            positions = pos + np.cumsum(deltas, axis=0)
            pos = positions[-1].copy()
            for j in range(chunk.size):
                step = lo + j + 1
                if step % stride == 0 or step == idx.size:
                    _write_trace_row(fh, step, positions[j], z)


def _write_trace_row(fh, step: int, pos: np.ndarray, z: np.ndarray) -> None:
    nrm = math.sqrt(float(np.dot(pos, pos)))
    ints = "\t".join(str(int(v)) for v in pos)
    if nrm <= 0.0:
        sph = "\t".join("nan" for _ in pos)
        dist = "nan"
    else:
        unit = pos / nrm
        sph = "\t".join(f"{v:.17g}" for v in unit)
        d = math.acos(min(1.0, max(-1.0, float(np.max(z @ unit)))))
        dist = f"{d:.17g}"
    fh.write(f"{step}\t{ints}\t{sph}\t{dist}\n")


def _parse_tolerances(items) -> dict[int, float]:
    out: dict[int, float] = {}
    for item in items or []:
        try:
            key, val = item.split("=", 1)
            out[int(key)] = float(val)
        except ValueError as exc:
            raise TargetFormatError(
                f"bad tolerance override {item!r}, expected PHASE=VALUE") from exc
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="boundarywalk",
        description="Synthesize a lattice walk whose boundary projections "
                    "accumulate on a target skeleton, and verify convergence.")
    p.add_argument("--target", required=True, help="target skeleton JSON file")
    stop = p.add_mutually_exclusive_group(required=True)
    stop.add_argument("--phases", type=int, help="run this many phases")
    stop.add_argument("--max-steps", type=int, help="run to this prefix length")
    p.add_argument("--dimension", type=int, default=None,
                   help="expected dimension (checked against the target file)")
    p.add_argument("--word-out", default=None, help="write the generator word here")
    p.add_argument("--trace-out", default=None, help="write the projection trace here")
    p.add_argument("--report-out", default=None, help="write the convergence report here")
    p.add_argument("--verify", action="store_true",
                   help="exit 1 unless every verified phase passes its tolerance")
    p.add_argument("--tolerance", action="append", metavar="PHASE=VALUE",
                   help="override the tolerance of one phase (repeatable)")
    p.add_argument("--trace-stride", type=int, default=1,
                   help="write every Nth trace row (default 1)")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        tolerances = _parse_tolerances(args.tolerance)
        target = load_target(args.target)
        if args.dimension is not None and args.dimension != target.n:
            raise TargetFormatError(
                f"target dimension {target.n} does not match --dimension {args.dimension}")
        if args.phases is not None and args.phases < 1:
            raise TargetFormatError("--phases must be >= 1")
        if args.max_steps is not None and args.max_steps < 1:
            raise TargetFormatError("--max-steps must be >= 1")
        if args.trace_stride < 1:
            raise TargetFormatError("--trace-stride must be >= 1")
    except TargetFormatError as exc:
        print(f"boundarywalk: {exc}", file=sys.stderr)
        return 2

    synth = WalkSynthesizer(target)
    if args.phases is not None:
        report = convergence_report(synth, args.phases, tolerances=tolerances)
        limit = synth.phase_spans[args.phases].stop
    else:
        synth.ensure_steps(args.max_steps)
        limit = args.max_steps
        done = [s.phase for s in synth.phase_spans if s.phase >= 1 and s.stop <= limit]
        if done:
            report = convergence_report(synth, max(done), tolerances=tolerances)
        else:
            report = ConvergenceReport(target.n, (), True)

    if args.word_out:
        _write_word(args.word_out, synth, limit)
    if args.trace_out:
        _write_trace(args.trace_out, synth, limit, args.trace_stride)
    if args.report_out:
        with open(args.report_out, "w", encoding="utf-8") as fh:
            fh.write(report.render())

    if args.verify and not report.overall_pass:
        return 1
    return 0


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
