"""JSON forms.

Complex numbers serialize as [re, im], matrices as row-major nested
arrays, polynomials as sorted lists of {"exp": [...], "c": [re, im]}, and
Gaussians as {"g", "Q", "two_valued", "provenance"?}.  Serialization is
deterministic: keys sorted, terms in sorted exponent order.
"""
from __future__ import annotations

import json

import numpy as np

from .errors import EvalError
from .gauss import GaussianElement, GaussPoly, Provenance, TwoValued
from .ordering import OrderingK
from .poly import PolyC


def cnum(z: complex) -> list:
    z = complex(z)
    return [z.real, z.imag]


def parse_cnum(obj) -> complex:
    if isinstance(obj, (int, float)):
        return complex(obj)
    if isinstance(obj, (list, tuple)) and len(obj) == 2:
        return complex(float(obj[0]), float(obj[1]))
    raise EvalError(f"expected a complex number as [re, im], got {obj!r}")


def matrix_to_json(mat) -> list:
    a = np.asarray(mat, dtype=complex)
    return [[cnum(x) for x in row] for row in a.tolist()]


def matrix_from_json(obj) -> np.ndarray:
    if not isinstance(obj, list) or not obj:
        raise EvalError("expected a nested list for a matrix")
    rows = [[parse_cnum(x) for x in row] for row in obj]
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise EvalError("matrix rows have unequal lengths")
    return np.array(rows, dtype=complex)


def vector_to_json(vec) -> list:
    return [cnum(x) for x in np.asarray(vec, dtype=complex).tolist()]


def vector_from_json(obj) -> np.ndarray:
    if not isinstance(obj, list):
        raise EvalError("expected a list for a vector")
    return np.array([parse_cnum(x) for x in obj], dtype=complex)


def poly_to_json(p: PolyC) -> list:
    return [{"exp": list(e), "c": cnum(c)} for e, c in p.sorted_terms()]


def poly_from_json(obj, nvars: int) -> PolyC:
    if not isinstance(obj, list):
        raise EvalError("expected a list of terms for a polynomial")
    terms = {}
    for item in obj:
        exp = tuple(int(e) for e in item["exp"])
        terms[exp] = terms.get(exp, 0j) + parse_cnum(item["c"])
    return PolyC(nvars, terms)


def provenance_to_json(prov: Provenance) -> dict:
    return {
        "A": matrix_to_json(prov.A),
        "t": cnum(prov.t),
        "ordering": matrix_to_json(prov.ordering.K),
    }


def gaussian_to_json(F: GaussianElement, two_valued: bool) -> dict:
    out = {
        "g": cnum(F.g),
        "Q": matrix_to_json(F.Q),
        "two_valued": bool(two_valued),
    }
    if F.provenance is not None:
        out["provenance"] = provenance_to_json(F.provenance)
    return out


def gaussian_from_json(obj) -> GaussianElement:
    g = parse_cnum(obj["g"])
    q = matrix_from_json(obj["Q"])
    prov = None
    if obj.get("provenance"):
        p = obj["provenance"]
        prov = Provenance(matrix_from_json(p["A"]), parse_cnum(p["t"]),
                          OrderingK(matrix_from_json(p["ordering"])))
    return GaussianElement(g, q, prov)


def gausspoly_to_json(gp: GaussPoly, two_valued: bool) -> dict:
    return {
        "prefactor": poly_to_json(gp.prefactor),
        "core": gaussian_to_json(gp.core, two_valued),
        "two_valued": bool(two_valued),
    }


def value_to_json(value) -> dict:
    """Uniform result envelope used by the CLI; always carries two_valued."""
    if isinstance(value, PolyC):
        return {"kind": "polynomial", "terms": poly_to_json(value),
                "two_valued": False}
    if isinstance(value, GaussianElement):
        out = gaussian_to_json(value, two_valued=False)
        out["kind"] = "gaussian"
        return out
    if isinstance(value, TwoValued):
        rep = value.representative
        if isinstance(rep, GaussianElement):
            out = gaussian_to_json(rep, two_valued=True)
            out["kind"] = "gaussian"
            return out
        out = gausspoly_to_json(rep, two_valued=True)
        out["kind"] = "gausspoly"
        return out
    if isinstance(value, GaussPoly):
        out = gausspoly_to_json(value, two_valued=False)
        out["kind"] = "gausspoly"
        return out
    raise TypeError(f"cannot serialize {type(value).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"
