# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled star-product kernel.

Same algorithm as _star_kernel_py, on radix-packed exponent codes: a
monomial exponent (e_0, ..., e_{nv-1}) is stored as sum_i e_i * R^i with
R exceeding every possible total degree, and a pair of monomials as
code1 * R^nv + code2.  The caller guarantees R^nv fits in 31 bits.
"""
from cython.operator cimport dereference, postincrement
from libcpp.unordered_map cimport unordered_map

import numpy as np

ctypedef long long i64
ctypedef double complex cplx


def star_terms_packed(i64[::1] keys1, cplx[::1] vals1,
                      i64[::1] keys2, cplx[::1] vals2,
                      i64[::1] rpow, i64 r2m, int nv, i64 radix,
                      long[::1] gi, long[::1] gj, cplx[::1] gv,
                      cplx lam):
    cdef unordered_map[i64, cplx] pairs, nxt, res
    cdef unordered_map[i64, cplx].iterator it
    cdef Py_ssize_t a, b, t
    cdef int i, j, k
    cdef i64 key, k1, k2, e1i, e2j
    cdef cplx v, fac

    for a in range(keys1.shape[0]):
        for b in range(keys2.shape[0]):
            key = keys1[a] * r2m + keys2[b]
            pairs[key] = pairs[key] + vals1[a] * vals2[b]

    k = 0
    fac = 1.0
    while pairs.size() > 0:
        it = pairs.begin()
        while it != pairs.end():
            key = dereference(it).first
            v = dereference(it).second
            k1 = key / r2m
            k2 = key % r2m
            res[k1 + k2] = res[k1 + k2] + fac * v
            postincrement(it)
        k += 1
        fac = fac * lam / k
        nxt.clear()
        it = pairs.begin()
        while it != pairs.end():
            key = dereference(it).first
            v = dereference(it).second
            k1 = key / r2m
            k2 = key % r2m
            for t in range(gi.shape[0]):
                i = gi[t]
                j = gj[t]
                e1i = (k1 / rpow[i]) % radix
                if e1i == 0:
                    continue
                e2j = (k2 / rpow[j]) % radix
                if e2j == 0:
                    continue
                nxt[(k1 - rpow[i]) * r2m + (k2 - rpow[j])] = \
                    nxt[(k1 - rpow[i]) * r2m + (k2 - rpow[j])] \
                    + v * (e1i * e2j) * gv[t]
            postincrement(it)
        pairs.swap(nxt)

    out_keys = np.empty(res.size(), dtype=np.int64)
    out_vals = np.empty(res.size(), dtype=np.complex128)
    cdef i64[::1] ok = out_keys
    cdef cplx[::1] ov = out_vals
    cdef Py_ssize_t pos = 0
    it = res.begin()
    while it != res.end():
        ok[pos] = dereference(it).first
        ov[pos] = dereference(it).second
        pos += 1
        postincrement(it)
    return out_keys, out_vals
