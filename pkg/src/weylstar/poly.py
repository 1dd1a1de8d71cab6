"""Sparse multivariate polynomials over C.

Exponent multi-indices are fixed-length tuples of non-negative integers;
term maps never store zero coefficients and iterate in sorted exponent
order so that floating-point sums are reproducible bit for bit.
"""
from __future__ import annotations

import math
from typing import Iterable, Mapping

import numpy as np

from .errors import DimensionMismatch

# Relative coefficient pruning threshold: keeps the sparse representation
# canonical after cancellation.
PRUNE_REL = 1e-15


def _normalize(nvars: int, terms: Mapping[tuple, complex]) -> dict:
    cleaned = {}
    biggest = 0.0
    for exp, c in terms.items():
        c = complex(c)
        if c == 0:
            continue
        if len(exp) != nvars:
            raise DimensionMismatch(
                f"exponent {exp} has length {len(exp)}, expected {nvars}")
        cleaned[tuple(int(e) for e in exp)] = c
        biggest = max(biggest, abs(c))
    if not cleaned:
        return {}
    floor = PRUNE_REL * biggest
    return {e: c for e, c in cleaned.items() if abs(c) > floor}


class PolyC:
    """Immutable sparse polynomial in `nvars` complex variables."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, complex] | None = None):
        object.__setattr__(self, "nvars", int(nvars))
        object.__setattr__(self, "terms", _normalize(self.nvars, terms or {}))

    def __setattr__(self, *_):
        raise AttributeError("PolyC is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "PolyC":
        return cls(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c: complex) -> "PolyC":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def one(cls, nvars: int) -> "PolyC":
        return cls.constant(nvars, 1.0)

    @classmethod
    def monomial(cls, nvars: int, exp: Iterable[int], c: complex = 1.0) -> "PolyC":
        return cls(nvars, {tuple(exp): c})

    @classmethod
    def generator(cls, nvars: int, index: int) -> "PolyC":
        """z_index, 0-based over (u_1..u_m, v_1..v_m)."""
        e = [0] * nvars
        e[index] = 1
        return cls(nvars, {tuple(e): 1.0})

    # -- basic queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def constant_term(self) -> complex:
        return self.terms.get((0,) * self.nvars, 0j)

    def coeff(self, exp: Iterable[int]) -> complex:
        return self.terms.get(tuple(exp), 0j)

    def norm(self) -> float:
        """L2 norm of the coefficient vector."""
        return math.sqrt(sum(abs(c) ** 2 for c in self.terms.values()))

    def sorted_terms(self):
        return sorted(self.terms.items())

    # -- arithmetic ----------------------------------------------------------

    def _require_same_ring(self, other: "PolyC"):
        if self.nvars != other.nvars:
            raise DimensionMismatch(
                f"polynomials live in different rings ({self.nvars} vs {other.nvars} variables)")

    def __add__(self, other):
        if isinstance(other, (int, float, complex)):
            other = PolyC.constant(self.nvars, other)
        self._require_same_ring(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0j) + c
        return PolyC(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return PolyC(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, float, complex)):
            other = PolyC.constant(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, scalar):
        if not isinstance(scalar, (int, float, complex)):
            return NotImplemented
        return PolyC(self.nvars, {e: c * scalar for e, c in self.terms.items()})

    __rmul__ = __mul__

    def pointwise_mul(self, other: "PolyC") -> "PolyC":
        """Commutative (pointwise) product; the star product lives elsewhere."""
        self._require_same_ring(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0j) + c1 * c2
        return PolyC(self.nvars, out)

    def pointwise_pow(self, k: int) -> "PolyC":
        if k < 0:
            raise ValueError("negative power")
        out = PolyC.one(self.nvars)
        base = self
        while k:
            if k & 1:
                out = out.pointwise_mul(base)
            base = base.pointwise_mul(base)
            k >>= 1
        return out

    def derivative(self, index: int) -> "PolyC":
        out = {}
        for e, c in self.terms.items():
            if e[index] == 0:
                continue
            e2 = list(e)
            e2[index] -= 1
            out[tuple(e2)] = c * e[index]
        return PolyC(self.nvars, out)

    def truncate_degree(self, maxdeg: int, on_vars: slice | None = None) -> "PolyC":
        """Drop terms whose total degree (on a variable slice, when given)
        exceeds maxdeg."""
        def deg(e):
            return sum(e[on_vars]) if on_vars is not None else sum(e)
        return PolyC(self.nvars, {e: c for e, c in self.terms.items() if deg(e) <= maxdeg})

    def evaluate(self, point) -> complex:
        z = np.asarray(point, dtype=complex)
        if z.shape != (self.nvars,):
            raise DimensionMismatch(f"point must have {self.nvars} components")
        total = 0j
        for e, c in self.sorted_terms():
            v = c
            for zi, ei in zip(z, e):
                if ei:
                    v *= zi ** ei
            total += v
        return total

    # -- comparisons ----------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, PolyC) and self.nvars == other.nvars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nvars, tuple(self.sorted_terms())))

    def approx_eq(self, other: "PolyC", tol: float = 1e-12) -> bool:
        self._require_same_ring(other)
        scale = max(self.norm(), other.norm(), 1.0)
        return (self - other).norm() <= tol * scale

    # -- display ----------------------------------------------------------------

    def __repr__(self):
        if not self.terms:
            return "PolyC(0)"
        m = self.nvars // 2

        def mono(e):
            parts = []
            for i, p in enumerate(e):
                if not p:
                    continue
                name = f"u{i + 1}" if i < m else f"v{i - m + 1}"
                parts.append(name if p == 1 else f"{name}^{p}")
            return "*".join(parts) or "1"

        bits = [f"({c:.6g})*{mono(e)}" for e, c in self.sorted_terms()]
        return " + ".join(bits)


def linear_form_u(a, params) -> PolyC:
    """<a, u> as a polynomial."""
    a = np.asarray(a, dtype=complex)
    if a.shape != (params.m,):
        raise DimensionMismatch(f"vector must have {params.m} components")
    terms = {}
    for i, c in enumerate(a):
        e = [0] * params.n
        e[i] = 1
        terms[tuple(e)] = c
    return PolyC(params.n, terms)


def linear_form_v(b, params) -> PolyC:
    """<b, v> as a polynomial."""
    b = np.asarray(b, dtype=complex)
    if b.shape != (params.m,):
        raise DimensionMismatch(f"vector must have {params.m} components")
    terms = {}
    for i, c in enumerate(b):
        e = [0] * params.n
        e[params.m + i] = 1
        terms[tuple(e)] = c
    return PolyC(params.n, terms)
