"""The Gaussian class {g * exp Q[z]} and its star-algebra operations.

Star products with one polynomial factor terminate and are evaluated
exactly.  Products of two Gaussians (optionally carrying polynomial
prefactors) have a closed form whose amplitude involves a determinant to
the power -1/2; its branch is fixed deterministically by a straight-line
homotopy that scales the right factor's quadratic form from 0 to Q2,
continuing the square root from +1.  Elements produced this way are
two-valued: only the pair {F, -F} is well-defined, which TwoValued makes
explicit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .errors import (DimensionMismatch, NoInverseInClass, NonFinite,
                     ProductSingular, StepUnderflow)
from .linalg import require_symmetric
from .ordering import OrderingK
from .params import Params, default_tolerance
from .poly import PolyC
from .sheets import canonical_amplitude, continue_sqrt
from .star import _check_ring


@dataclass(frozen=True)
class Provenance:
    """Records that an element arose as the star exponential of the
    quadratic form tA at the given ordering."""

    A: np.ndarray
    t: complex
    ordering: OrderingK


class GaussianElement:
    """g * exp(Q[z]) with nonzero amplitude g and complex symmetric Q."""

    __slots__ = ("g", "Q", "provenance")

    def __init__(self, g: complex, Q, provenance: Optional[Provenance] = None):
        g = complex(g)
        if g == 0:
            raise NonFinite("amplitude must be nonzero")
        if not (math.isfinite(g.real) and math.isfinite(g.imag)):
            raise NonFinite("amplitude must be finite")
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "Q", require_symmetric(Q))
        object.__setattr__(self, "provenance", provenance)

    def __setattr__(self, *_):
        raise AttributeError("GaussianElement is immutable")

    @classmethod
    def constant(cls, c: complex, m: int) -> "GaussianElement":
        return cls(c, np.zeros((2 * m, 2 * m), dtype=complex))

    @classmethod
    def one(cls, m: int) -> "GaussianElement":
        return cls.constant(1.0, m)

    @property
    def m(self) -> int:
        return self.Q.shape[0] // 2

    @property
    def n(self) -> int:
        return self.Q.shape[0]

    def is_constant(self, tol: float = 1e-14) -> bool:
        return bool(np.abs(self.Q).max(initial=0.0) <= tol)

    def scaled(self, c: complex) -> "GaussianElement":
        return GaussianElement(self.g * c, self.Q, self.provenance)

    def negated(self) -> "GaussianElement":
        return self.scaled(-1.0)

    def evaluate(self, point) -> complex:
        z = np.asarray(point, dtype=complex)
        return self.g * np.exp(z @ self.Q @ z)

    def approx_eq(self, other: "GaussianElement", tol: float | None = None) -> bool:
        tol = default_tolerance() if tol is None else tol
        scale = max(1.0, float(np.abs(self.Q).max(initial=0.0)))
        return (abs(self.g - other.g) <= tol * max(1.0, abs(self.g))
                and np.abs(self.Q - other.Q).max(initial=0.0) <= tol * scale)

    def __repr__(self):
        return f"GaussianElement(g={self.g:.6g}, m={self.m})"


class GaussPoly:
    """(polynomial prefactor) * GaussianElement."""

    __slots__ = ("prefactor", "core")

    def __init__(self, prefactor: PolyC, core: GaussianElement):
        if prefactor.nvars != core.n:
            raise DimensionMismatch("prefactor ring does not match the Gaussian")
        if prefactor.is_zero():
            raise ValueError("prefactor must be a nonzero polynomial")
        object.__setattr__(self, "prefactor", prefactor)
        object.__setattr__(self, "core", core)

    def __setattr__(self, *_):
        raise AttributeError("GaussPoly is immutable")

    @classmethod
    def pure(cls, core: GaussianElement) -> "GaussPoly":
        return cls(PolyC.one(core.n), core)

    @property
    def m(self) -> int:
        return self.core.m

    def weighted_prefactor(self) -> PolyC:
        """prefactor * g, so two GaussPolys compare through (this, Q)."""
        return self.prefactor * self.core.g

    def as_polynomial(self, tol: float = 1e-9) -> PolyC:
        """Collapse to a plain polynomial; requires Q ~ 0."""
        if np.abs(self.core.Q).max(initial=0.0) > tol:
            raise ValueError("core is not a constant Gaussian")
        return self.weighted_prefactor()

    def evaluate(self, point) -> complex:
        return self.prefactor.evaluate(point) * self.core.evaluate(point)

    def __repr__(self):
        return f"GaussPoly(deg={self.prefactor.degree()}, core={self.core!r})"


Representative = Union[GaussianElement, GaussPoly]


class TwoValued:
    """The unordered pair {F, -F}; equality ignores the global sign."""

    __slots__ = ("representative",)

    def __init__(self, representative: Representative):
        object.__setattr__(self, "representative", representative)

    def __setattr__(self, *_):
        raise AttributeError("TwoValued is immutable")

    @property
    def pair(self) -> tuple:
        return (self.representative, _negate(self.representative))

    def negated(self) -> "TwoValued":
        return TwoValued(_negate(self.representative))

    def canonical(self) -> Representative:
        """The member whose amplitude has argument in (-pi/2, pi/2]."""
        rep = self.representative
        g = rep.g if isinstance(rep, GaussianElement) else rep.core.g
        return rep if canonical_amplitude(g) == g else _negate(rep)

    def eq_up_to_sign(self, other: "TwoValued", tol: float | None = None) -> bool:
        tol = default_tolerance() if tol is None else tol
        a, b = self.representative, other.representative
        if isinstance(a, GaussianElement) != isinstance(b, GaussianElement):
            return False
        qa, qb = (a.Q, b.Q) if isinstance(a, GaussianElement) else (a.core.Q, b.core.Q)
        scale = max(1.0, float(np.abs(qa).max(initial=0.0)))
        if np.abs(qa - qb).max(initial=0.0) > tol * scale:
            return False
        if isinstance(a, GaussianElement):
            return (abs(a.g - b.g) <= tol * abs(a.g)
                    or abs(a.g + b.g) <= tol * abs(a.g))
        pa, pb = a.weighted_prefactor(), b.weighted_prefactor()
        return pa.approx_eq(pb, tol) or pa.approx_eq(-pb, tol)

    def __repr__(self):
        return f"TwoValued({self.representative!r})"


def _negate(rep: Representative) -> Representative:
    if isinstance(rep, GaussianElement):
        return rep.negated()
    return GaussPoly(rep.prefactor, rep.core.negated())


# ---------------------------------------------------------------------------
# Gaussian * polynomial: the series terminates, evaluate it exactly.
# ---------------------------------------------------------------------------

def star_gauss_poly(F: GaussianElement, f: PolyC, ordering: OrderingK,
                    params: Params, side: str = "right") -> GaussPoly:
    """F * f (side="right") or f * F (side="left"), exactly.

    Works on a doubled polynomial ring: x-variables carry the Gaussian
    factor, y-variables the polynomial; each derivative falling on the
    Gaussian multiplies by the linear form (2 Q x)_i.
    """
    _check_ring(f, ordering, params)
    if F.n != params.n:
        raise DimensionMismatch("Gaussian dimension does not match Params")
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")

    n = params.n
    gamma = ordering.gamma
    lam = 0.5j * params.hbar

    # combined ring: x = 0..n-1 (Gaussian side), y = n..2n-1 (polynomial side)
    def embed_y(p: PolyC) -> PolyC:
        return PolyC(2 * n, {(0,) * n + e: c for e, c in p.terms.items()})

    lin_x = []  # (2 Q x)_i as polynomials in the combined ring
    for i in range(n):
        terms = {}
        for k2 in range(n):
            c = 2.0 * F.Q[i, k2]
            if c != 0:
                e = [0] * (2 * n)
                e[k2] = 1
                terms[tuple(e)] = c
        lin_x.append(PolyC(2 * n, terms))

    cur = embed_y(f)
    total = PolyC.zero(2 * n)
    k = 0
    fac = 1.0 + 0j
    while not cur.is_zero():
        total = total + cur * fac
        k += 1
        fac *= lam / k
        nxt = PolyC.zero(2 * n)
        for i in range(n):
            for j in range(n):
                gij = gamma[i, j] if side == "right" else gamma[j, i]
                if gij == 0:
                    continue
                dy = cur.derivative(n + j)
                if dy.is_zero():
                    continue
                nxt = nxt + (dy.derivative(i) + lin_x[i].pointwise_mul(dy)) * gij
        cur = nxt

    merged: dict = {}
    for e, c in total.terms.items():
        key = tuple(a + b for a, b in zip(e[:n], e[n:]))
        merged[key] = merged.get(key, 0j) + c
    return GaussPoly(PolyC(n, merged), F)


# ---------------------------------------------------------------------------
# Gaussian * Gaussian (with optional polynomial prefactors): closed form.
# ---------------------------------------------------------------------------

def _product_quadratic(Q1, Q2, gamma, hbar):
    """New quadratic form and the branch-continued det^(-1/2) data."""
    n = Q1.shape[0]
    ident = np.eye(n, dtype=complex)
    gq2 = gamma @ Q2
    gtq1 = gamma.T @ Q1

    def det_at(sigma: float) -> complex:
        return complex(np.linalg.det(ident + (hbar ** 2) * (sigma * gq2) @ gtq1))

    try:
        cont = continue_sqrt(det_at, singular_error=ProductSingular,
                             zero_tol=1e-13)
    except StepUnderflow as exc:
        raise ProductSingular(
            f"branch continuation failed; product likely leaves the class ({exc})"
        ) from exc

    core = ident + (hbar ** 2) * gq2 @ gtq1
    try:
        x = np.linalg.inv(core)
    except np.linalg.LinAlgError as exc:
        raise ProductSingular("composition determinant vanishes") from exc
    qp = (ident + 1j * hbar * Q2 @ gamma.T) @ (Q1 @ x) @ (ident + 1j * hbar * gq2) + Q2
    return 0.5 * (qp + qp.T), cont


def star_gauss_gauss(F1: GaussianElement, F2: GaussianElement,
                     ordering: OrderingK, params: Params) -> TwoValued:
    """Closed-form product of two Gaussians.

    Raises ProductSingular when the composition determinant vanishes (the
    product leaves the Gaussian class).
    """
    if F1.n != params.n or F2.n != params.n or ordering.n != params.n:
        raise DimensionMismatch("dimensions do not match Params")
    qp, cont = _product_quadratic(F1.Q, F2.Q, ordering.gamma, params.hbar)
    amp = F1.g * F2.g * cont.inv_sqrt_end
    return TwoValued(GaussianElement(amp, qp))


def _transport_prefactor(p1: PolyC, p2: PolyC, Q1, Q2, gamma, hbar) -> PolyC:
    """Polynomial carried through the closed-form product.

    Writes p(w) e^{G(w)} = p(d/ds) e^{G(w) + s.w}|_{s=0} in doubled
    variables w = (x, y) and reads the transported polynomial off a
    truncated exponential of the (s, z)-coupling."""
    n = Q1.shape[0]
    n4 = 2 * n
    smax = p1.degree() + p2.degree()
    if smax <= 0:
        return PolyC.one(n)

    # V = (I - 4 C Qtilde)^{-1} with C the doubled-variable coupling of the
    # bidifferential exponential and Qtilde = diag(Q1, Q2); the transported
    # polynomial is read off exp(s.(V w) + s.(V C s)) at w = (z, z).
    m4 = np.eye(n4, dtype=complex)
    m4[:n, n:] -= 1j * hbar * (gamma @ Q2)
    m4[n:, :n] -= 1j * hbar * (gamma.T @ Q1)
    try:
        v = np.linalg.inv(m4)
    except np.linalg.LinAlgError as exc:
        raise ProductSingular("composition determinant vanishes") from exc

    c4 = np.zeros((n4, n4), dtype=complex)
    c4[:n, n:] = (0.25j * hbar) * gamma
    c4[n:, :n] = (0.25j * hbar) * gamma.T
    coupling = v @ c4
    coupling = 0.5 * (coupling + coupling.T)
    lin = v @ np.vstack([np.eye(n), np.eye(n)]).astype(complex)

    # ring: s_0..s_{4m-1}, then z_0..z_{2m-1}
    nv = n4 + n
    terms: dict = {}
    for a in range(n4):
        for j in range(n):
            c = lin[a, j]
            if c == 0:
                continue
            e = [0] * nv
            e[a] += 1
            e[n4 + j] += 1
            terms[tuple(e)] = terms.get(tuple(e), 0j) + c
    for a in range(n4):
        for b in range(n4):
            c = coupling[a, b]
            if c == 0:
                continue
            e = [0] * nv
            e[a] += 1
            e[b] += 1
            terms[tuple(e)] = terms.get(tuple(e), 0j) + c
    expo = PolyC(nv, terms)

    s_slice = slice(0, n4)
    series = PolyC.one(nv)
    power = PolyC.one(nv)
    for k in range(1, smax + 1):
        power = power.pointwise_mul(expo).truncate_degree(smax, on_vars=s_slice)
        series = series + power * (1.0 / math.factorial(k))

    coefmap: dict = {}
    for e, c in series.terms.items():
        smono, zmono = e[:n4], e[n4:]
        coefmap.setdefault(smono, {})[zmono] = coefmap.get(smono, {}).get(zmono, 0j) + c

    out = PolyC.zero(n)
    for e1, c1 in p1.terms.items():
        for e2, c2 in p2.terms.items():
            key = e1 + e2
            zpart = coefmap.get(key)
            if not zpart:
                continue
            w = c1 * c2
            for exp in e1 + e2:
                w *= math.factorial(exp)
            out = out + PolyC(n, zpart) * w
    if out.is_zero():
        raise ProductSingular("polynomial prefactor vanished in the product")
    return out


def star_gausspoly(P1: GaussPoly, P2: GaussPoly, ordering: OrderingK,
                   params: Params) -> GaussPoly:
    """Closed-form product of two polynomial-times-Gaussian elements."""
    if P1.core.n != params.n or P2.core.n != params.n:
        raise DimensionMismatch("dimensions do not match Params")
    qp, cont = _product_quadratic(P1.core.Q, P2.core.Q, ordering.gamma, params.hbar)
    amp = P1.core.g * P2.core.g * cont.inv_sqrt_end
    pre = _transport_prefactor(P1.prefactor, P2.prefactor,
                               P1.core.Q, P2.core.Q, ordering.gamma, params.hbar)
    return GaussPoly(pre, GaussianElement(amp, qp))


# ---------------------------------------------------------------------------
# Inverses and adjoint actions.
# ---------------------------------------------------------------------------

def inverse(F: GaussianElement, ordering: OrderingK, params: Params) -> TwoValued:
    """The star inverse inside the Gaussian class.

    Solves for the quadratic form through the tangent-like coordinate
    T = -(J/hbar + i Q K J)^{-1} Q and fixes the amplitude by pairing, so
    star_gauss_gauss(F, inverse(F)) is exactly the +1 branch.
    """
    hbar = params.hbar
    j = ordering.J
    k = ordering.K
    try:
        mt = np.linalg.inv(j / hbar + 1j * F.Q @ k @ j)
        t = -mt @ F.Q
        q_inv = (j / hbar) @ t @ np.linalg.inv(np.eye(params.n) - 1j * k @ j @ t)
    except np.linalg.LinAlgError as exc:
        raise NoInverseInClass("no Gaussian inverse at this point") from exc
    q_inv = 0.5 * (q_inv + q_inv.T)
    probe = GaussianElement(1.0, q_inv)
    try:
        prod = star_gauss_gauss(F, probe, ordering, params).representative
    except ProductSingular as exc:
        raise NoInverseInClass("candidate inverse leaves the class") from exc
    scale = max(1.0, float(np.abs(F.Q).max(initial=0.0)))
    if np.abs(prod.Q).max(initial=0.0) > 1e-8 * scale:
        raise NoInverseInClass("residual quadratic form after inversion")
    prov = None
    if F.provenance is not None:
        prov = Provenance(F.provenance.A, -F.provenance.t, F.provenance.ordering)
    return TwoValued(GaussianElement(1.0 / prod.g, q_inv, prov))


def adjoint(F: GaussianElement, x, ordering: OrderingK, params: Params):
    """Ad(F)x = F * x * F^{-1}.

    For polynomial x the two-valuedness of F cancels and the result is a
    plain polynomial; for Gaussian arguments the result stays two-valued.
    """
    f_inv = inverse(F, ordering, params).representative
    if isinstance(x, PolyC):
        left = star_gauss_poly(F, x, ordering, params, side="right")
        full = star_gausspoly(left, GaussPoly.pure(f_inv), ordering, params)
        return full.as_polynomial(tol=1e-8 * max(1.0, float(np.abs(F.Q).max(initial=0.0))))
    if isinstance(x, GaussianElement):
        mid = star_gauss_gauss(F, x, ordering, params).representative
        return star_gauss_gauss(mid, f_inv, ordering, params)
    if isinstance(x, GaussPoly):
        mid = star_gausspoly(GaussPoly.pure(F), x, ordering, params)
        return TwoValued(star_gausspoly(mid, GaussPoly.pure(f_inv), ordering, params))
    if isinstance(x, TwoValued):
        return adjoint(F, x.representative, ordering, params)
    raise TypeError(f"cannot take the adjoint action on {type(x).__name__}")


def linear_adjoint_matrix(A, t: complex, params: Params) -> np.ndarray:
    """Matrix of Ad(exp_*(tA_*)) on linear forms: exp(2i*hbar*t * A @ J).

    Ordering-independent, since commutators of generators are.
    """
    from .linalg import mat_exp
    from .ordering import j_matrix

    a = require_symmetric(A, params.n)
    return mat_exp(2j * params.hbar * t * (a @ j_matrix(params.m)))
