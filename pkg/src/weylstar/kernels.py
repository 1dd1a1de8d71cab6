"""Star-product kernel selection.

Imports the compiled extension when available and falls back to the
pure-Python kernel otherwise.  Both expose identical semantics; the
dispatcher also routes to the pure kernel whenever the packed-integer
encoding used by the extension would overflow.
"""
from __future__ import annotations

import numpy as np

from . import _star_kernel_py as _py

try:  # pragma: no cover - exercised only when the extension is built
    from . import _star_kernel as _ext
except ImportError:  # pragma: no cover
    _ext = None

_PACK_LIMIT = 2 ** 31


def backend() -> str:
    return "compiled" if _ext is not None else "pure-python"


def star_terms(terms1: dict, terms2: dict, gamma, lam: complex) -> dict:
    """Star product of two term maps {exponent tuple: coefficient}."""
    if not terms1 or not terms2:
        return {}
    if _ext is None:
        return _py.star_terms(terms1, terms2, gamma, lam)

    nv = len(gamma)
    deg1 = max(sum(e) for e in terms1)
    deg2 = max(sum(e) for e in terms2)
    radix = deg1 + deg2 + 1
    r2m = radix ** nv
    if r2m >= _PACK_LIMIT:
        return _py.star_terms(terms1, terms2, gamma, lam)

    rpow = np.array([radix ** i for i in range(nv)], dtype=np.int64)

    def pack(terms):
        exps = np.array(sorted(terms), dtype=np.int64).reshape(len(terms), nv)
        keys = exps @ rpow
        vals = np.array([terms[tuple(e)] for e in exps.tolist()],
                        dtype=np.complex128)
        return keys.astype(np.int64), vals

    k1, v1 = pack(terms1)
    k2, v2 = pack(terms2)
    g = np.asarray(gamma, dtype=np.complex128)
    gi, gj = np.nonzero(g)
    gv = np.ascontiguousarray(g[gi, gj])
    out_keys, out_vals = _ext.star_terms_packed(
        np.ascontiguousarray(k1), np.ascontiguousarray(v1),
        np.ascontiguousarray(k2), np.ascontiguousarray(v2),
        np.ascontiguousarray(rpow), r2m, nv, radix,
        np.ascontiguousarray(gi.astype(np.int_)),
        np.ascontiguousarray(gj.astype(np.int_)),
        gv, complex(lam))

    out = {}
    for key, val in zip(out_keys.tolist(), out_vals.tolist()):
        exp = []
        rem = key
        for _ in range(nv):
            exp.append(rem % radix)
            rem //= radix
        out[tuple(exp)] = val
    return out
