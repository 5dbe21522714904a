"""Exact Ehrhart delta-polynomials and local decompositions of Gorenstein fans."""

from .cone import Cone, GorensteinForm, cone_from_generators, face_lattice, gorenstein_form
from .decomposition import (
    DecompositionReport,
    c_polynomials,
    h_V,
    local_c,
    verify_identity,
    verify_polytope_formula,
    verify_subdivision_invariance,
)
from .ehrhart import box_points, box_polynomial, delta_of_complex, delta_of_cone, interior_box_polynomial, level_count
from .errors import GorensteinFansError, InputError, InternalAssertion
from .fan import Fan, fan_from_max_cones, is_complete, star
from .polynomial import IntPolynomial, format_polynomial
from .poset import GradedPoset, g_poly, h_poly
from .subdivision import crepant_subdivide, stellar_subdivide

__all__ = [
    "Cone",
    "DecompositionReport",
    "Fan",
    "GorensteinFansError",
    "GorensteinForm",
    "GradedPoset",
    "InputError",
    "IntPolynomial",
    "InternalAssertion",
    "box_points",
    "box_polynomial",
    "c_polynomials",
    "cone_from_generators",
    "crepant_subdivide",
    "delta_of_complex",
    "delta_of_cone",
    "face_lattice",
    "fan_from_max_cones",
    "format_polynomial",
    "g_poly",
    "gorenstein_form",
    "h_V",
    "h_poly",
    "interior_box_polynomial",
    "is_complete",
    "level_count",
    "local_c",
    "star",
    "stellar_subdivide",
    "verify_identity",
    "verify_polytope_formula",
    "verify_subdivision_invariance",
]
