"""Polar elements, sheet continuation along parameter families, reflections
and the blurred double cover of SO(m, C).

The polar element for a vector a on the complex sphere is the star
exponential of (pi/2 hbar) times the rank-one form with (alpha, beta,
gamma) = (0, 0, 1), computed in the standard ordering where it is finite.
Its value is +-i * exp((2i/hbar) <a,u><a,v>): genuinely two-valued, with
the sign selected only by the path used to reach it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import PathThroughSingularity, StepUnderflow
from .gauss import GaussianElement, TwoValued
from .linalg import require_symmetric
from .ordering import OrderingK
from .params import Params
from .sheets import SheetPath, continue_sqrt
from .star import require_on_sphere, rank_one_matrix
from .starexp import StarExpResult, flow_determinant, star_exp_quadratic
from .ordering import standard


@dataclass(frozen=True)
class PolarElement:
    """A point a of the complex sphere together with the two-valued value
    of its polar star exponential (which squares to -1)."""

    a: np.ndarray
    value: TwoValued

    @property
    def representative(self) -> GaussianElement:
        return self.value.representative


def polar_element(a, params: Params) -> PolarElement:
    """exp_*((pi / 2 hbar) B(0, 0, 1)) at the standard ordering."""
    vec = require_on_sphere(a, params.m)
    mat = rank_one_matrix(vec, 0.0, 0.0, 1.0, params)
    t_polar = math.pi / (2.0 * params.hbar)
    result: StarExpResult = star_exp_quadratic(mat, standard(params.m), params, t_polar)
    return PolarElement(vec, result.element)


def polar_element_axis(k: int, params: Params) -> PolarElement:
    """The polar element for the k-th coordinate axis (1-based)."""
    if not 1 <= k <= params.m:
        raise ValueError(f"axis index {k} out of range 1..{params.m}")
    a = np.zeros(params.m, dtype=complex)
    a[k - 1] = 1.0
    return polar_element(a, params)


def reflect(a, b) -> np.ndarray:
    """The reflection b - 2<a,b>a for a on the complex sphere."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    a = require_on_sphere(a, a.shape[0])
    if b.shape != a.shape:
        raise ValueError("a and b must have the same length")
    return b - 2.0 * complex(a @ b) * a


def double_cover_rotation(a, b) -> np.ndarray:
    """Matrix of Ad(polar(a) * polar(b)) on the span of the u-linear forms:
    the composition of the two reflections, a special complex-orthogonal
    rotation."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    m = a.shape[0]
    require_on_sphere(a, m)
    require_on_sphere(b, m)
    ra = np.eye(m, dtype=complex) - 2.0 * np.outer(a, a)
    rb = np.eye(m, dtype=complex) - 2.0 * np.outer(b, b)
    return ra @ rb


def continue_sheet(family, ordering: OrderingK, params: Params, t_end: complex,
                   path) -> SheetPath:
    """Continue the star-exponential amplitude along a family A(s).

    family maps a real parameter s to a symmetric matrix; path is the
    (ordered) list of s samples.  The amplitude at the start is the
    t-continuation from the identity; along the family the square-root
    sheet is chained with adaptive refinement.  net_sign compares the
    family-continued endpoint amplitude with the endpoint's own
    t-continuation from the identity: a constant path yields +1, and a
    path whose two t-continuations are separated by a zero of the flow
    determinant (the double-cover flip) yields -1.
    """
    samples = [float(s) for s in path]
    if len(samples) < 1:
        raise ValueError("path must contain at least one sample")
    t_end = complex(t_end)

    a_start = require_symmetric(family(samples[0]), params.n)
    start = star_exp_quadratic(a_start, ordering, params, t_end)
    g_start = start.representative.g

    s_lo, s_hi = samples[0], samples[-1]
    span = s_hi - s_lo

    def det_at(sigma: float) -> complex:
        a_mat = require_symmetric(family(s_lo + sigma * span), params.n)
        d = flow_determinant(a_mat, ordering, params, t_end)
        return d

    if span == 0.0:
        return SheetPath(tuple(samples), (g_start,) * len(samples), 1)

    try:
        cont = continue_sqrt(det_at, sqrt_start=1.0 / g_start,
                             singular_error=PathThroughSingularity,
                             zero_tol=1e-12)
    except StepUnderflow as exc:
        raise PathThroughSingularity(
            f"family continuation stalled ({exc})") from exc

    # amplitudes at the requested samples, interpolated from the refined walk
    branch_values = []
    for s in samples:
        sigma = (s - s_lo) / span
        idx = max(i for i, sg in enumerate(cont.samples) if sg <= sigma + 1e-15)
        branch_values.append(1.0 / cont.sqrt_values[idx])
    g_end = 1.0 / cont.sqrt_end

    a_end = require_symmetric(family(samples[-1]), params.n)
    g_ref = star_exp_quadratic(a_end, ordering, params, t_end).representative.g
    net = 1 if abs(g_end - g_ref) <= abs(g_end + g_ref) else -1
    return SheetPath(tuple(samples), tuple(branch_values), net)


def uv_rotation_family(params: Params):
    """The one-parameter family of quadratic forms
    s |-> sin(2s)(u^2 - v^2) + cos(2s)(2uv) for m = 1.

    Conjugating exp_*(2t uv) by exp_*((i s / 2hbar)(u^2 + v^2)) rotates the
    form this way; following s from 0 to pi/2 at t = pi/(2 hbar) flips the
    polar element's sheet.
    """
    if params.m != 1:
        raise ValueError("the rotation family is defined for m = 1")

    def family(s: float) -> np.ndarray:
        si, co = math.sin(2.0 * s), math.cos(2.0 * s)
        return np.array([[si, co], [co, -si]], dtype=complex)

    return family
