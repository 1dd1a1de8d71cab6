"""K-ordered star products on polynomials and quadratic-form builders."""
from __future__ import annotations

import numpy as np

from . import kernels
from .errors import DimensionMismatch, NotOnSphere
from .linalg import require_symmetric
from .ordering import OrderingK
from .params import Params
from .poly import PolyC


def _check_ring(f: PolyC, ordering: OrderingK, params: Params):
    if f.nvars != params.n:
        raise DimensionMismatch(
            f"polynomial has {f.nvars} variables, Params require {params.n}")
    if ordering.n != params.n:
        raise DimensionMismatch(
            f"ordering is for 2m = {ordering.n}, Params require {params.n}")


def star_poly(f: PolyC, g: PolyC, ordering: OrderingK, params: Params) -> PolyC:
    """f * g in the given ordering.

    The bidifferential series terminates at order min(deg f, deg g), so the
    result is exact up to floating-point rounding.
    """
    _check_ring(f, ordering, params)
    _check_ring(g, ordering, params)
    lam = 0.5j * params.hbar
    return PolyC(params.n, kernels.star_terms(f.terms, g.terms, ordering.gamma, lam))


def commutator(f: PolyC, g: PolyC, ordering: OrderingK, params: Params) -> PolyC:
    return star_poly(f, g, ordering, params) - star_poly(g, f, ordering, params)


def quad_form(A, params: Params) -> PolyC:
    """The quadratic polynomial sum_ij A_ij z_i z_j for symmetric A."""
    a = require_symmetric(A, params.n)
    terms: dict = {}
    n = params.n
    for i in range(n):
        for j in range(n):
            if a[i, j] == 0:
                continue
            e = [0] * n
            e[i] += 1
            e[j] += 1
            key = tuple(e)
            terms[key] = terms.get(key, 0j) + complex(a[i, j])
    return PolyC(n, terms)


def quad_star_k(A, ordering: OrderingK, params: Params) -> PolyC:
    """The symmetrized star quadratic sum_ij A_ij (z_i * z_j + z_j * z_i)/2
    as a polynomial: A[z] + (i*hbar/2) Tr(K A).

    The J part of Gamma cancels in the symmetrization, leaving half the
    K-trace; this matches the explicit symmetrized star products exactly.
    """
    a = require_symmetric(A, params.n)
    shift = 0.5j * params.hbar * complex(np.trace(ordering.K @ a))
    return quad_form(a, params) + shift


def require_on_sphere(a, m: int, tol: float = 1e-12) -> np.ndarray:
    """Validate <a, a> = 1 (the complex sphere) and return a as an array."""
    v = np.asarray(a, dtype=complex)
    if v.shape != (m,):
        raise DimensionMismatch(f"vector must have {m} components, got {v.shape}")
    s = complex(v @ v)
    if abs(s - 1.0) > tol:
        raise NotOnSphere(f"<a, a> = {s!r}, expected 1")
    return v


def rank_one_matrix(a, alpha: complex, beta: complex, gamma_c: complex,
                    params: Params) -> np.ndarray:
    """Symmetric matrix A with
    A[z] = alpha <a,u>^2 + beta <a,v>^2 + 2 gamma <a,u><a,v>."""
    v = require_on_sphere(a, params.m)
    p = np.outer(v, v)
    top = np.hstack([alpha * p, gamma_c * p])
    bot = np.hstack([gamma_c * p, beta * p])
    return np.vstack([top, bot])


def rank_one_B(a, alpha: complex, beta: complex, gamma_c: complex,
               params: Params) -> tuple[np.ndarray, PolyC, complex]:
    """The rank-one quadratic form: its matrix, its polynomial, and the
    discriminant D = gamma^2 - alpha*beta."""
    mat = rank_one_matrix(a, alpha, beta, gamma_c, params)
    disc = gamma_c * gamma_c - alpha * beta
    return mat, quad_form(mat, params), disc
