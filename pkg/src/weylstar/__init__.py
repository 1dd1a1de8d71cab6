"""weylstar: computational engine for the Weyl algebra over C with 2m
generators -- K-ordered star products, intertwiners between orderings,
closed-form star exponentials of quadratic forms, and the two-valued
(sign-sheet) algebra of polar elements."""

from .params import Params, default_tolerance
from .poly import PolyC, linear_form_u, linear_form_v
from .ordering import OrderingK, weyl, standard, antistandard, preset, j_matrix
from .linalg import mat_exp, mat_trig, det_inv, sqrt_branch
from .star import (star_poly, commutator, quad_form, quad_star_k,
                   rank_one_B, rank_one_matrix)
from .gauss import (GaussianElement, GaussPoly, TwoValued, Provenance,
                    star_gauss_poly, star_gauss_gauss, star_gausspoly,
                    inverse, adjoint, linear_adjoint_matrix)
from .intertwine import intertwine_poly, intertwine_gauss
from .starexp import (StarExpResult, star_exp_quadratic, star_exp_weyl,
                      rank_one_weyl, rank_one_standard_printed,
                      ode_oracle_integrate, singular_scan, flow_determinant)
from .polar import (PolarElement, polar_element, polar_element_axis,
                    continue_sheet, reflect, double_cover_rotation,
                    uv_rotation_family)
from .sheets import SheetPath, BranchedScalar, canonical_amplitude, sheet_sign
from .exprs import parse_expr, evaluate, to_text
from . import kernels

__version__ = "0.1.0"

__all__ = [
    "Params", "default_tolerance",
    "PolyC", "linear_form_u", "linear_form_v",
    "OrderingK", "weyl", "standard", "antistandard", "preset", "j_matrix",
    "mat_exp", "mat_trig", "det_inv", "sqrt_branch",
    "star_poly", "commutator", "quad_form", "quad_star_k",
    "rank_one_B", "rank_one_matrix",
    "GaussianElement", "GaussPoly", "TwoValued", "Provenance",
    "star_gauss_poly", "star_gauss_gauss", "star_gausspoly",
    "inverse", "adjoint", "linear_adjoint_matrix",
    "intertwine_poly", "intertwine_gauss",
    "StarExpResult", "star_exp_quadratic", "star_exp_weyl",
    "rank_one_weyl", "rank_one_standard_printed",
    "ode_oracle_integrate", "singular_scan", "flow_determinant",
    "PolarElement", "polar_element", "polar_element_axis",
    "continue_sheet", "reflect", "double_cover_rotation", "uv_rotation_family",
    "SheetPath", "BranchedScalar", "canonical_amplitude", "sheet_sign",
    "parse_expr", "evaluate", "to_text",
    "kernels",
]
