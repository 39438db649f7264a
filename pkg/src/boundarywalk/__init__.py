"""Lattice walks with prescribed boundary behavior on the sphere at infinity."""

from .errors import (
    DriftBoundError,
    GeometryError,
    IterationLimitError,
    PreconditionError,
    TargetFormatError,
)
from .sphere import (
    SpherePoint,
    angle_between,
    axis_point,
    chord_step_bound,
    monotone_approach_holds,
    psi_collapse,
    radial_project,
    slerp,
    third_side,
)
from .simplex import (
    DirectedPath,
    PathStep,
    Polyline,
    SimplexPoint,
    direct_approx,
    line_approx,
    path_to_sphere,
    simplex_to_sphere,
    sphere_line_approx,
    sphere_to_simplex,
    support_face,
)
from .synthesis import (
    LatticeWalk,
    PhasePlan,
    PhaseSpan,
    SegmentRecord,
    TargetSet,
    WalkSynthesizer,
    plan_phases,
    required_radius,
    shadow_walk,
    stationary_radius,
    stationary_walk,
    synthesize,
)
from .groups import (
    GroupWord,
    f_on_flat,
    format_word,
    free_reduce,
    parse_word,
    phi,
    phi_inverse,
    walk_from_word,
    word_from_indices,
)
from .verify import (
    ConvergenceReport,
    PhaseReport,
    TailCloud,
    convergence_report,
    hausdorff,
    tail_cloud,
)
from .cli import load_target

__all__ = [
    "ConvergenceReport", "DirectedPath", "DriftBoundError", "GeometryError",
    "GroupWord", "IterationLimitError", "LatticeWalk", "PathStep", "PhasePlan",
    "PhaseReport", "PhaseSpan", "Polyline", "PreconditionError", "SegmentRecord",
    "SimplexPoint", "SpherePoint", "TailCloud", "TargetFormatError", "TargetSet",
    "WalkSynthesizer", "angle_between", "axis_point", "chord_step_bound",
    "convergence_report", "direct_approx", "f_on_flat", "format_word",
    "free_reduce", "hausdorff", "line_approx", "load_target",
    "monotone_approach_holds", "parse_word", "path_to_sphere", "phi",
    "phi_inverse", "plan_phases", "psi_collapse", "radial_project",
    "required_radius", "shadow_walk", "simplex_to_sphere", "slerp",
    "sphere_line_approx", "sphere_to_simplex", "stationary_radius",
    "stationary_walk", "support_face", "synthesize", "tail_cloud", "third_side",
    "walk_from_word", "word_from_indices",
]
