"""Exact geometry over small finite fields."""

from .field import FieldSpec, choose_nonsquare, field_make, is_prime
from .jacobian import (
    IdentityResult,
    batch_rank,
    conic_rank,
    identity_on_points,
    jacobian_rank,
    jacobian_ranks,
    matrix_rank,
    singular_points,
)
from .poly import MultiPoly, parse_poly, poly_eval, poly_partial
from .scheme import (
    AFFINE,
    BUNDLE,
    PROJECTIVE,
    AmbientSpace,
    Block,
    PointRec,
    PointSet,
    SchemeSpec,
    enumerate_points,
    projective_space,
)

__all__ = [
    "AFFINE", "BUNDLE", "PROJECTIVE", "AmbientSpace", "Block", "FieldSpec",
    "IdentityResult", "MultiPoly", "PointRec", "PointSet", "SchemeSpec",
    "batch_rank", "choose_nonsquare", "conic_rank", "enumerate_points",
    "field_make", "identity_on_points", "is_prime", "jacobian_rank",
    "jacobian_ranks", "matrix_rank", "parse_poly", "poly_eval", "poly_partial",
    "projective_space",
    "singular_points",
]
