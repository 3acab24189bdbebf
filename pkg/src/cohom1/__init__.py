"""Singular boundary value problems of equivariant harmonic self-maps on
cohomogeneity-one spheres and rotation groups: classification of the
harmonic k-maps and their degrees, ODE residual evaluation in closed and
raw-sum form, trigonometric identity oracles, and a double-shooting solver.
"""

__version__ = "0.1.0"

from .actions import (
    ActionDescriptor,
    Space,
    Tangential,
    admissible_k,
    degree_of_k_map,
    make_action,
    strict_triples,
    tangential_vanishes,
)
from .classify import (
    HarmonicityVerdict,
    examples_table,
    is_harmonic_k_map,
    is_linear_solution,
    linear_residual_oracle,
)
from .ode import (
    BvpSpec,
    TensionSample,
    closed_tension,
    closed_tension_equal_m,
    raw_tension_sphere,
    raw_tension_so,
    residual_norm,
    rhs,
)
from .identities import (
    cotangent_identity,
    half_sum_split,
    identity_suite,
    lemma_sin_2r,
    lemma_sin_sq,
)
from .solver import (
    Endpoint,
    ShootingConfig,
    SolutionProfile,
    SweepPoint,
    series_start,
    shoot,
    solve,
    sweep,
)

__all__ = [
    "ActionDescriptor",
    "BvpSpec",
    "Endpoint",
    "HarmonicityVerdict",
    "ShootingConfig",
    "SolutionProfile",
    "Space",
    "SweepPoint",
    "Tangential",
    "TensionSample",
    "admissible_k",
    "closed_tension",
    "closed_tension_equal_m",
    "cotangent_identity",
    "degree_of_k_map",
    "examples_table",
    "half_sum_split",
    "identity_suite",
    "is_harmonic_k_map",
    "is_linear_solution",
    "lemma_sin_2r",
    "lemma_sin_sq",
    "linear_residual_oracle",
    "make_action",
    "raw_tension_so",
    "raw_tension_sphere",
    "residual_norm",
    "rhs",
    "series_start",
    "shoot",
    "solve",
    "strict_triples",
    "sweep",
    "tangential_vanishes",
]
