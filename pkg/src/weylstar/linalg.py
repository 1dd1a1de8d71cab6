"""Dense complex linear algebra kernel.

Matrix exponential by Pade-13 scaling and squaring, trigonometric matrix
functions built from exponentials of +-iM (robust for non-diagonalizable
matrices), determinant/inverse with a singularity guard, and the
branch-controlled scalar square root used for all sheet tracking.
"""
from __future__ import annotations

import cmath
import math

import numpy as np

from .errors import AmbiguousBranch, NonFinite, NotSymmetric, Singular, SingularCos

# Pade-13 numerator coefficients; theta is the standard order-13 scaling cutoff.
_PADE13_B = (
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0, 129060195264000.0, 10559470521600.0,
    670442572800.0, 33522128640.0, 1323241920.0, 40840800.0,
    960960.0, 16380.0, 182.0, 1.0,
)
_PADE13_THETA = 5.371920351148152


def as_cmatrix(mat, dim: int | None = None) -> np.ndarray:
    """Validate and return a square complex matrix with finite entries."""
    a = np.asarray(mat, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NonFinite(f"expected a square matrix, got shape {a.shape}")
    if dim is not None and a.shape[0] != dim:
        raise NonFinite(f"expected dimension {dim}, got {a.shape[0]}")
    if not np.all(np.isfinite(a.view(float))):
        raise NonFinite("matrix entries must be finite")
    return a


def is_symmetric(a: np.ndarray, tol: float = 1e-12) -> bool:
    scale = max(1.0, float(np.abs(a).max(initial=0.0)))
    return bool(np.abs(a - a.T).max(initial=0.0) <= tol * scale)


def require_symmetric(mat, dim: int | None = None) -> np.ndarray:
    a = as_cmatrix(mat, dim)
    if not is_symmetric(a):
        raise NotSymmetric("matrix must be complex symmetric (A == A^T)")
    return 0.5 * (a + a.T)


def mat_exp(mat) -> np.ndarray:
    """exp(M) by Pade-13 with scaling and squaring."""
    m = as_cmatrix(mat)
    norm = float(np.linalg.norm(m, 1))
    if not math.isfinite(norm):
        raise NonFinite("matrix norm overflowed")
    squarings = 0
    if norm > _PADE13_THETA:
        squarings = max(0, int(math.ceil(math.log2(norm / _PADE13_THETA))))
        m = m / (2.0 ** squarings)

    ident = np.eye(m.shape[0], dtype=complex)
    b = _PADE13_B
    m2 = m @ m
    m4 = m2 @ m2
    m6 = m4 @ m2
    u = m @ (m6 @ (b[13] * m6 + b[11] * m4 + b[9] * m2)
             + b[7] * m6 + b[5] * m4 + b[3] * m2 + b[1] * ident)
    v = m6 @ (b[12] * m6 + b[10] * m4 + b[8] * m2) \
        + b[6] * m6 + b[4] * m4 + b[2] * m2 + b[0] * ident
    try:
        r = np.linalg.solve(v - u, v + u)
    except np.linalg.LinAlgError as exc:
        raise NonFinite(f"Pade denominator is singular: {exc}") from exc
    for _ in range(squarings):
        r = r @ r
    if not np.all(np.isfinite(r.view(float))):
        raise NonFinite("matrix exponential overflowed")
    return r


def mat_trig(mat) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(cos M, sin M, tan M) with tan M = sin(M) @ inv(cos M)."""
    m = as_cmatrix(mat)
    ep = mat_exp(1j * m)
    en = mat_exp(-1j * m)
    cos_m = 0.5 * (ep + en)
    sin_m = (ep - en) / 2j
    try:
        _, cos_inv = det_inv(cos_m)
    except Singular as exc:
        raise SingularCos("cos M is singular; tan M undefined at this point") from exc
    return cos_m, sin_m, sin_m @ cos_inv


def det_inv(mat) -> tuple[complex, np.ndarray]:
    """(det M, M^-1); raises Singular when |det M| <= 1e-12 * ||M||^dim.

    The norm scale is floored at 1 so that near-zero matrices (for example
    cos M at a zero of the cosine) register as singular.
    """
    m = as_cmatrix(mat)
    det = complex(np.linalg.det(m))
    norm = max(1.0, float(np.linalg.norm(m, 2)))
    if abs(det) <= 1e-12 * norm ** m.shape[0]:
        raise Singular(f"matrix is numerically singular (|det| = {abs(det):.3e})")
    return det, np.linalg.inv(m)


def sqrt_branch(w: complex, ref: complex) -> complex:
    """Square root of w on the branch nearest (in argument) to ref.

    Raises AmbiguousBranch when the two roots are equidistant from ref,
    which signals that a continuation path must be refined.
    """
    w = complex(w)
    ref = complex(ref)
    if w == 0:
        raise ValueError("sqrt_branch requires w != 0")
    if ref == 0:
        raise ValueError("sqrt_branch requires ref != 0")
    root = cmath.sqrt(w)
    d = abs(cmath.phase(root / ref))
    if abs(d - math.pi / 2) < 1e-12:
        raise AmbiguousBranch(
            f"both square roots of {w!r} are equidistant in argument from {ref!r}")
    return root if d < math.pi / 2 else -root
