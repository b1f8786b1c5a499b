"""Affine semigroups, their one-point compactifications S_inf, and derivations of C[S_inf]."""

from __future__ import annotations

from .algebra import (
    AlgebraElement,
    CompletionTower,
    binomial,
    chi_inf,
    constant,
    in_I_infty,
    in_ideal,
    monomial,
    parse_element,
    psi,
    to_text,
)
from .classify import (
    IntegrabilityVerdict,
    OracleBounds,
    classify_integrable,
    oracle_continuity,
    oracle_p1,
    oracle_p2,
    oracle_verdict,
)
from .derivation import (
    Derivation,
    from_components,
    from_generator_images,
    is_lnd,
    lift,
    project,
)
from .errors import (
    CarrierError,
    ClosureError,
    DimensionError,
    InconsistentImagesError,
    NotInSemigroupError,
    NotPointedError,
    OnePointError,
    ParseError,
    RankError,
)
from .lattice import Cone, dual_rays, is_strongly_convex
from .quotient import FiniteQuotient, build_quotient, check_tower
from .semigroup import INF, AffineSemigroup, build

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement",
    "CompletionTower",
    "binomial",
    "chi_inf",
    "constant",
    "in_I_infty",
    "in_ideal",
    "monomial",
    "parse_element",
    "psi",
    "to_text",
    "IntegrabilityVerdict",
    "OracleBounds",
    "classify_integrable",
    "oracle_continuity",
    "oracle_p1",
    "oracle_p2",
    "oracle_verdict",
    "Derivation",
    "from_components",
    "from_generator_images",
    "is_lnd",
    "lift",
    "project",
    "CarrierError",
    "ClosureError",
    "DimensionError",
    "InconsistentImagesError",
    "NotInSemigroupError",
    "NotPointedError",
    "OnePointError",
    "ParseError",
    "RankError",
    "Cone",
    "dual_rays",
    "is_strongly_convex",
    "FiniteQuotient",
    "build_quotient",
    "check_tower",
    "INF",
    "AffineSemigroup",
    "build",
]
