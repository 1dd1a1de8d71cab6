"""Closed-form star exponentials of quadratic forms, an independent ODE
oracle, and singularity scanning.

With X = hbar*t*J@A the evolution problem dF/dt = (A[z] + (i hbar/2)TrKA) * F,
F(0) = 1 has the closed-form solution

    F(t) = det(W)^(-1/2) * exp( ((-J/hbar) sin(X) W^{-1})[z] ),
    W = cos(X) + i K J sin(X),

with the amplitude branch continued from +1 at t = 0 along the straight
segment [0, t].  The determinant's zero set is the (ordering-dependent)
singular set.  The ODE oracle integrates the induced scalar + matrix
Riccati system with classical RK4 and is the single source of truth for
amplitudes.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (DimensionMismatch, SingularEncountered, SingularPoint,
                     StepUnderflow)
from .gauss import GaussianElement, Provenance, TwoValued
from .linalg import mat_exp, require_symmetric
from .ordering import OrderingK, standard, weyl
from .params import Params
from .sheets import continue_sqrt, sheet_sign
from .star import require_on_sphere, rank_one_matrix


@dataclass(frozen=True)
class StarExpResult:
    """A star exponential value: the two-valued element plus the sheet
    (sign of the continued amplitude relative to the canonical member)."""

    element: TwoValued
    sheet: int

    @property
    def representative(self) -> GaussianElement:
        return self.element.representative


def _trig_of_flow(A: np.ndarray, ordering: OrderingK, hbar: float, t: complex):
    x = hbar * t * (ordering.J @ A)
    ep = mat_exp(1j * x)
    en = mat_exp(-1j * x)
    cos_x = 0.5 * (ep + en)
    sin_x = (ep - en) / 2j
    w = cos_x + 1j * (ordering.K @ ordering.J) @ sin_x
    return cos_x, sin_x, w


def flow_determinant(A, ordering: OrderingK, params: Params, t: complex) -> complex:
    """det W(t); zeros of this function form the singular set."""
    a = require_symmetric(A, params.n)
    _, _, w = _trig_of_flow(a, ordering, params.hbar, t)
    return complex(np.linalg.det(w))


def star_exp_quadratic(A, ordering: OrderingK, params: Params,
                       t: complex) -> StarExpResult:
    """exp_*(t A_*) in the given ordering, branch continued from t = 0."""
    a = require_symmetric(A, params.n)
    if ordering.n != params.n:
        raise DimensionMismatch("ordering does not match Params")
    hbar = params.hbar
    t = complex(t)

    def det_at(sigma: float) -> complex:
        _, _, w = _trig_of_flow(a, ordering, hbar, sigma * t)
        return complex(np.linalg.det(w))

    try:
        cont = continue_sqrt(det_at, singular_error=SingularPoint, zero_tol=1e-12)
    except StepUnderflow as exc:
        raise SingularPoint(
            f"amplitude continuation failed along [0, {t!r}] ({exc})") from exc

    _, sin_x, w = _trig_of_flow(a, ordering, hbar, t)
    try:
        w_inv = np.linalg.inv(w)
    except np.linalg.LinAlgError as exc:
        raise SingularPoint(f"det W vanishes at t = {t!r}") from exc
    q = (-ordering.J / hbar) @ sin_x @ w_inv
    q = 0.5 * (q + q.T)
    amp = cont.inv_sqrt_end
    elem = GaussianElement(amp, q, Provenance(a, t, ordering))
    return StarExpResult(TwoValued(elem), sheet_sign(amp))


def star_exp_weyl(A, params: Params, t: complex) -> StarExpResult:
    """The Weyl-ordered specialization (K = 0) of star_exp_quadratic."""
    return star_exp_quadratic(A, weyl(params.m), params, t)


# ---------------------------------------------------------------------------
# Rank-one closed forms.
# ---------------------------------------------------------------------------

def _require_unit_discriminant(alpha, beta, gamma_c, tol=1e-12):
    disc = gamma_c * gamma_c - alpha * beta
    if abs(disc - 1.0) > tol:
        raise ValueError(f"discriminant gamma^2 - alpha*beta = {disc!r}, expected 1")


def rank_one_weyl(t: complex, alpha: complex, beta: complex, gamma_c: complex,
                  a, params: Params) -> GaussianElement:
    """Weyl-ordered rank-one star exponential:
    (cos hbar t)^{-1} * exp( (tan(hbar t)/hbar) * (alpha<a,u>^2 + beta<a,v>^2
    + 2 gamma <a,u><a,v>) )."""
    _require_unit_discriminant(alpha, beta, gamma_c)
    vec = require_on_sphere(a, params.m)
    c = np.cos(params.hbar * complex(t))
    if abs(c) < 1e-12:
        raise SingularPoint(f"cos(hbar t) vanishes at t = {t!r}")
    mat = rank_one_matrix(vec, alpha, beta, gamma_c, params)
    q = (np.tan(params.hbar * complex(t)) / params.hbar) * mat
    return GaussianElement(1.0 / c, q,
                           Provenance(mat, complex(t), weyl(params.m)))


def rank_one_standard_printed(t: complex, alpha: complex, beta: complex,
                              gamma_c: complex, a, params: Params) -> GaussianElement:
    """Standard-ordered rank-one closed form, amplitude taken verbatim from
    the published prefactor e^{-i hbar t gamma} (cos 2hbar t - i gamma
    sin 2hbar t)^{-1/2}.

    The amplitude is known to disagree with the ODE oracle by a factor close
    to e^{2 i hbar t gamma}; `verify` measures and reports the discrepancy.
    The quadratic part agrees with the general closed form.
    """
    _require_unit_discriminant(alpha, beta, gamma_c)
    vec = require_on_sphere(a, params.m)
    hbar = params.hbar
    t = complex(t)

    def base(sigma: float) -> complex:
        tt = sigma * t
        return complex(np.cos(2 * hbar * tt) - 1j * gamma_c * np.sin(2 * hbar * tt))

    try:
        cont = continue_sqrt(base, singular_error=SingularPoint, zero_tol=1e-12)
    except StepUnderflow as exc:
        raise SingularPoint(f"rank-one amplitude singular on [0, {t!r}]") from exc
    amp = np.exp(-1j * hbar * t * gamma_c) * cont.inv_sqrt_end

    denom = base(1.0)
    s2 = complex(np.sin(2 * hbar * t))
    x_n = 0.5 * alpha * s2 / denom
    y_n = 0.5 * beta * s2 / denom
    z_n = 0.5j * (1.0 - 1.0 / denom)
    p = np.outer(vec, vec)
    q = np.zeros((params.n, params.n), dtype=complex)
    mm = params.m
    q[:mm, :mm] = (x_n / hbar) * p
    q[mm:, mm:] = (y_n / hbar) * p
    q[:mm, mm:] = (z_n / hbar) * p
    q[mm:, :mm] = (z_n / hbar) * p
    return GaussianElement(amp, q)


# ---------------------------------------------------------------------------
# ODE oracle.
# ---------------------------------------------------------------------------

def ode_oracle_integrate(A, ordering: OrderingK, params: Params, t: complex,
                         steps: int = 400) -> GaussianElement:
    """Integrate the induced system with classical RK4.

    Substituting g * exp(Q[z]) into the evolution equation and matching
    coefficients gives

        dQ/dt = A + i hbar (A G Q + Q G^T A) - hbar^2 Q G^T A G Q,
        dg/dt = g * ( (i hbar/2) Tr(K A) - (hbar^2/2) Tr(G^T A G Q) ),

    with G = K + J.  Convergence is 4th order in the step size.
    """
    a = require_symmetric(A, params.n)
    if steps < 1:
        raise ValueError("steps must be >= 1")
    t = complex(t)
    if t != 0 and abs(t) / steps < 1e-15 * abs(t):
        raise StepUnderflow("step size underflows")
    hbar = params.hbar
    g_mat = ordering.gamma
    k_mat = ordering.K
    ag = a @ g_mat
    gta = g_mat.T @ a
    gtag = g_mat.T @ a @ g_mat
    trace_shift = 0.5j * hbar * complex(np.trace(k_mat @ a))

    def rhs(state):
        q, g = state
        qd = a + 1j * hbar * (ag @ q + q @ gta) - hbar ** 2 * (q @ gtag @ q)
        gd = g * (trace_shift - 0.5 * hbar ** 2 * complex(np.trace(gtag @ q)))
        return qd, gd

    q = np.zeros((params.n, params.n), dtype=complex)
    g = 1.0 + 0j
    h = t / steps
    for _ in range(steps):
        k1q, k1g = rhs((q, g))
        k2q, k2g = rhs((q + 0.5 * h * k1q, g + 0.5 * h * k1g))
        k3q, k3g = rhs((q + 0.5 * h * k2q, g + 0.5 * h * k2g))
        k4q, k4g = rhs((q + h * k3q, g + h * k3g))
        q = q + (h / 6.0) * (k1q + 2 * k2q + 2 * k3q + k4q)
        g = g + (h / 6.0) * (k1g + 2 * k2g + 2 * k3g + k4g)
        if not (np.all(np.isfinite(q.view(float))) and abs(g) < 1e12
                and np.abs(q).max(initial=0.0) < 1e12):
            raise SingularEncountered("integration blew up; path hits the singular set")
        if abs(g) < 1e-14:
            raise SingularEncountered("amplitude collapsed to zero")
    q = 0.5 * (q + q.T)
    return GaussianElement(g, q, Provenance(a, t, ordering))


# ---------------------------------------------------------------------------
# Singularity scanning.
# ---------------------------------------------------------------------------

def singular_scan(A, ordering: OrderingK, params: Params,
                  region: tuple, grid: tuple = (200, 1),
                  accept_tol: float = 1e-8) -> list:
    """Approximate zeros of det W on a rectangle of complex t.

    region = (re_min, re_max, im_min, im_max); grid = (n_re, n_im).  Each
    horizontal grid line is scanned for dips of |det W|; every bracketed
    local minimum is refined by bisection on the derivative sign of
    |det W|^2 to width 1e-10 and accepted when the refined minimum is
    below accept_tol relative to the line's typical scale.
    """
    a = require_symmetric(A, params.n)
    re_min, re_max, im_min, im_max = (float(x) for x in region)
    n_re, n_im = (int(g) for g in grid)
    if n_re < 2:
        raise ValueError("grid must have at least 2 points along the real axis")

    def absdet(tr: float, ti: float) -> float:
        return abs(flow_determinant(a, ordering, params, complex(tr, ti)))

    found: list = []
    im_values = [im_min] if n_im <= 1 else list(np.linspace(im_min, im_max, n_im))
    re_values = list(np.linspace(re_min, re_max, n_re))
    for ti in im_values:
        vals = [absdet(tr, ti) for tr in re_values]
        scale = max(max(vals), 1e-300)
        for idx in range(1, len(vals) - 1):
            if not (vals[idx] <= vals[idx - 1] and vals[idx] <= vals[idx + 1]):
                continue
            lo, hi = re_values[idx - 1], re_values[idx + 1]
            # bisect on the sign of d/dt |det|^2
            for _ in range(200):
                if hi - lo <= 1e-10:
                    break
                mid = 0.5 * (lo + hi)
                eps = max(1e-12, (hi - lo) * 1e-3)
                slope = absdet(mid + eps, ti) - absdet(mid - eps, ti)
                if slope > 0:
                    hi = mid
                else:
                    lo = mid
            root = 0.5 * (lo + hi)
            if absdet(root, ti) <= accept_tol * scale:
                found.append(complex(root, ti))
    found.sort(key=lambda z: (z.imag, z.real))
    deduped: list = []
    for z in found:
        if not deduped or abs(z - deduped[-1]) > 1e-8:
            deduped.append(z)
    return deduped


# ---------------------------------------------------------------------------
# Shared helper for the polar construction.
# ---------------------------------------------------------------------------

def standard_exp_rank_one(a, alpha, beta, gamma_c, params: Params,
                          t: complex) -> StarExpResult:
    """Star exponential of the rank-one form in the standard ordering via
    the general closed-form path."""
    mat = rank_one_matrix(a, alpha, beta, gamma_c, params)
    return star_exp_quadratic(mat, standard(params.m), params, t)
