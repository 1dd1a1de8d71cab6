"""Orderings of the algebra: a complex symmetric matrix K and Gamma = K + J.

K = 0 is the Weyl ordering; K = [[0, I], [I, 0]] the standard ordering;
K = [[0, -I], [-I, 0]] the antistandard ordering.
"""
from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch
from .linalg import require_symmetric

PRESET_NAMES = ("weyl", "standard", "antistandard")


def j_matrix(m: int) -> np.ndarray:
    """The 2m x 2m block matrix [[0, -I], [I, 0]]."""
    j = np.zeros((2 * m, 2 * m), dtype=complex)
    j[:m, m:] = -np.eye(m)
    j[m:, :m] = np.eye(m)
    return j


class OrderingK:
    """An ordering, given by its complex symmetric 2m x 2m matrix K."""

    __slots__ = ("m", "K", "gamma", "name")

    def __init__(self, K, name: str | None = None):
        K = require_symmetric(K)
        if K.shape[0] % 2 != 0:
            raise DimensionMismatch("K must be 2m x 2m")
        object.__setattr__(self, "m", K.shape[0] // 2)
        object.__setattr__(self, "K", K)
        object.__setattr__(self, "gamma", K + j_matrix(self.m))
        object.__setattr__(self, "name", name)

    def __setattr__(self, *_):
        raise AttributeError("OrderingK is immutable")

    @property
    def n(self) -> int:
        return 2 * self.m

    @property
    def J(self) -> np.ndarray:
        return j_matrix(self.m)

    def __repr__(self):
        label = self.name or "custom"
        return f"OrderingK(m={self.m}, {label})"

    def approx_eq(self, other: "OrderingK", tol: float = 1e-14) -> bool:
        return self.m == other.m and np.allclose(self.K, other.K, rtol=0, atol=tol)


def weyl(m: int) -> OrderingK:
    return OrderingK(np.zeros((2 * m, 2 * m), dtype=complex), name="weyl")


def standard(m: int) -> OrderingK:
    k = np.zeros((2 * m, 2 * m), dtype=complex)
    k[:m, m:] = np.eye(m)
    k[m:, :m] = np.eye(m)
    return OrderingK(k, name="standard")


def antistandard(m: int) -> OrderingK:
    k = np.zeros((2 * m, 2 * m), dtype=complex)
    k[:m, m:] = -np.eye(m)
    k[m:, :m] = -np.eye(m)
    return OrderingK(k, name="antistandard")


def preset(name: str, m: int) -> OrderingK:
    if name == "weyl":
        return weyl(m)
    if name == "standard":
        return standard(m)
    if name == "antistandard":
        return antistandard(m)
    raise ValueError(f"unknown ordering preset {name!r}; choose from {PRESET_NAMES}")
