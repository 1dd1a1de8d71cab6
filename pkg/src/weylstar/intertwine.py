"""The intertwining operator between orderings.

On polynomials it is the exponential of the second-order operator
(hbar/4i) sum (K - K')^{ij} d_i d_j, a finite sum since every application
drops the degree by two.  (The coefficient hbar/4i is the unique one for
which the homomorphism identity T(f *_K g) = T(f) *_{K'} T(g) holds for
the product normalization used here; it also maps the symmetrized star
quadratic of K to that of K'.)

On Gaussians the operator acts 2-to-2: the closed form carries
det(I + i hbar (K-K') Q)^{-1/2}, whose branch is continued from +1 along
the straight-line homotopy K(s) = K + s(K' - K).
"""
from __future__ import annotations

import numpy as np

from .errors import NonInvertibleTransform, StepUnderflow
from .gauss import GaussianElement, Provenance, TwoValued
from .ordering import OrderingK
from .params import Params
from .poly import PolyC
from .sheets import continue_sqrt
from .star import _check_ring


def apply_quadratic_derivative_exp(f: PolyC, coeff_matrix, scale: complex) -> PolyC:
    """exp(scale * sum_ij C^{ij} d_i d_j) f, evaluated as a finite sum."""
    c = np.asarray(coeff_matrix, dtype=complex)
    n = f.nvars
    total = f
    cur = f
    k = 0
    while True:
        k += 1
        nxt = PolyC.zero(n)
        for i in range(n):
            di = cur.derivative(i)
            if di.is_zero():
                continue
            for j in range(n):
                if c[i, j] == 0:
                    continue
                dij = di.derivative(j)
                if not dij.is_zero():
                    nxt = nxt + dij * c[i, j]
        if nxt.is_zero():
            return total
        cur = nxt * (scale / k)
        total = total + cur


def intertwine_poly(f: PolyC, ord_from: OrderingK, ord_to: OrderingK,
                    params: Params) -> PolyC:
    """Carry a polynomial from one ordering's realization to another's."""
    _check_ring(f, ord_from, params)
    _check_ring(f, ord_to, params)
    dk = ord_from.K - ord_to.K
    if np.abs(dk).max(initial=0.0) == 0.0:
        return f
    return apply_quadratic_derivative_exp(f, dk, params.hbar / 4j)


def intertwine_gauss(F: GaussianElement, ord_from: OrderingK, ord_to: OrderingK,
                     params: Params) -> TwoValued:
    """Carry a Gaussian between orderings; inherently two-valued.

    Raises NonInvertibleTransform when det(I + i hbar (K-K') Q) vanishes,
    i.e. the image leaves the Gaussian class.
    """
    if F.n != params.n or ord_from.n != params.n or ord_to.n != params.n:
        raise NonInvertibleTransform("dimensions do not match Params")
    dk = ord_from.K - ord_to.K
    ident = np.eye(params.n, dtype=complex)
    dkq = dk @ F.Q

    def det_at(s: float) -> complex:
        return complex(np.linalg.det(ident + 1j * params.hbar * s * dkq))

    try:
        cont = continue_sqrt(det_at, singular_error=NonInvertibleTransform,
                             zero_tol=1e-13)
    except StepUnderflow as exc:
        raise NonInvertibleTransform(
            f"branch continuation failed along the ordering homotopy ({exc})") from exc

    try:
        q_new = F.Q @ np.linalg.inv(ident + 1j * params.hbar * dkq)
    except np.linalg.LinAlgError as exc:
        raise NonInvertibleTransform("transform determinant vanishes") from exc
    q_new = 0.5 * (q_new + q_new.T)
    prov = None
    if F.provenance is not None:
        prov = Provenance(F.provenance.A, F.provenance.t, ord_to)
    return TwoValued(GaussianElement(F.g * cont.inv_sqrt_end, q_new, prov))
