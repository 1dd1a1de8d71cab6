"""Pure-Python star-product kernel.

Evaluates the exponential bidifferential series

    f * g = sum_k (lam^k / k!) sum Gamma^{i1 j1} ... Gamma^{ik jk}
            (d_{i1}..d_{ik} f) (d_{j1}..d_{jk} g),      lam = i*hbar/2,

by iterating the single derivation D = sum Gamma^{ij} d_i (x) d_j on a
sparse tensor of exponent pairs.  The series terminates at order
min(deg f, deg g).  This is the reference implementation; a compiled twin
with identical semantics lives in _star_kernel.pyx.
"""
from __future__ import annotations


def star_terms(terms1: dict, terms2: dict, gamma, lam: complex) -> dict:
    """Product term map; inputs are dicts {exponent tuple: coefficient}."""
    nv = len(gamma)
    nnz = [(i, j, complex(gamma[i][j]))
           for i in range(nv) for j in range(nv) if gamma[i][j] != 0]

    pairs: dict = {}
    for e1, c1 in terms1.items():
        for e2, c2 in terms2.items():
            key = (e1, e2)
            pairs[key] = pairs.get(key, 0j) + c1 * c2

    res: dict = {}
    k = 0
    fac = 1.0 + 0j
    while pairs:
        for (e1, e2), v in pairs.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            res[e] = res.get(e, 0j) + fac * v
        k += 1
        fac *= lam / k
        nxt: dict = {}
        for (e1, e2), v in pairs.items():
            for i, j, g in nnz:
                a = e1[i]
                if a == 0:
                    continue
                b = e2[j]
                if b == 0:
                    continue
                ne1 = e1[:i] + (a - 1,) + e1[i + 1:]
                ne2 = e2[:j] + (b - 1,) + e2[j + 1:]
                key = (ne1, ne2)
                nxt[key] = nxt.get(key, 0j) + v * (a * b) * g
        pairs = nxt
    return res
