import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import rand_poly, rand_symmetric
from weylstar import kernels
from weylstar._star_kernel_py import star_terms as star_terms_py
from weylstar.errors import DimensionMismatch, NotOnSphere, NotSymmetric
from weylstar.ordering import OrderingK, antistandard, j_matrix, standard, weyl
from weylstar.params import Params
from weylstar.poly import PolyC, linear_form_u, linear_form_v
from weylstar.serialize import poly_from_json, poly_to_json
from weylstar.star import (commutator, quad_form, quad_star_k, rank_one_B,
                           star_poly)


class TestPolyC:
    def test_zero_pruning(self):
        p = PolyC(2, {(1, 0): 1.0, (0, 1): 0.0})
        assert (0, 1) not in p.terms
        assert p.degree() == 1

    def test_relative_pruning(self):
        p = PolyC(2, {(1, 0): 1.0, (0, 1): 1e-17})
        assert list(p.terms) == [(1, 0)]

    def test_algebra(self):
        u = PolyC.generator(2, 0)
        v = PolyC.generator(2, 1)
        q = (u + v).pointwise_mul(u - v)
        assert q == u.pointwise_mul(u) - v.pointwise_mul(v)
        assert (2 * u - u - u).is_zero()

    def test_derivative(self):
        p = PolyC(2, {(2, 1): 3.0})
        assert p.derivative(0) == PolyC(2, {(1, 1): 6.0})
        assert p.derivative(1) == PolyC(2, {(2, 0): 3.0})

    def test_evaluate(self):
        p = PolyC(2, {(2, 0): 1.0, (0, 1): -2.0})
        assert p.evaluate([1j, 0.5]) == pytest.approx(-1.0 - 1.0)

    def test_json_roundtrip(self, rng):
        p = rand_poly(rng, 4, 3)
        assert poly_from_json(poly_to_json(p), 4) == p

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            PolyC(2, {(1, 0, 0): 1.0})


@pytest.fixture(params=["weyl", "standard", "antistandard", "random"])
def ordering_m1(request, rng):
    if request.param == "random":
        return OrderingK(rand_symmetric(rng, 2))
    return {"weyl": weyl, "standard": standard, "antistandard": antistandard}[request.param](1)


class TestStarPoly:
    def test_weyl_commutator(self):
        p = Params(1, 1.0)
        u, v = PolyC.generator(2, 0), PolyC.generator(2, 1)
        c = commutator(u, v, weyl(1), p)
        assert c == PolyC.constant(2, -1j)

    def test_unit(self, rng, ordering_m1):
        p = Params(1, 1.0)
        f = rand_poly(rng, 2, 4)
        assert star_poly(PolyC.one(2), f, ordering_m1, p).approx_eq(f, 1e-14)
        assert star_poly(f, PolyC.one(2), ordering_m1, p).approx_eq(f, 1e-14)

    def test_weyl_uv(self):
        # one application of the derivation: Gamma = J, J^{12} = -1
        p = Params(1, 1.0)
        u, v = PolyC.generator(2, 0), PolyC.generator(2, 1)
        got = star_poly(u, v, weyl(1), p)
        assert got == PolyC(2, {(1, 1): 1.0, (0, 0): -0.5j})

    def test_commutators_match_j_for_random_k(self, rng):
        for m in (1, 2, 3):
            p = Params(m, 1.0)
            j = j_matrix(m)
            ordering = OrderingK(rand_symmetric(rng, 2 * m))
            for i in range(2 * m):
                for jdx in range(2 * m):
                    zi = PolyC.generator(2 * m, i)
                    zj = PolyC.generator(2 * m, jdx)
                    c = commutator(zi, zj, ordering, p)
                    expect = PolyC.constant(2 * m, 1j * p.hbar * j[i, jdx])
                    assert (c - expect).norm() < 1e-12

    def test_degree_bound_and_termination(self, rng, ordering_m1):
        p = Params(1, 1.0)
        f = rand_poly(rng, 2, 3)
        g = rand_poly(rng, 2, 4)
        prod = star_poly(f, g, ordering_m1, p)
        assert prod.degree() <= f.degree() + g.degree()

    def test_bilinearity(self, rng, ordering_m1):
        p = Params(1, 1.0)
        f, g, h = (rand_poly(rng, 2, 3) for _ in range(3))
        a, b = 1.3 - 0.2j, -0.4 + 2j
        lhs = star_poly(f * a + g * b, h, ordering_m1, p)
        rhs = star_poly(f, h, ordering_m1, p) * a + star_poly(g, h, ordering_m1, p) * b
        assert lhs.approx_eq(rhs, 1e-12)

    def test_associativity_random(self, rng):
        for m in (1, 2):
            p = Params(m, 1.0)
            for _ in range(10):
                ordering = OrderingK(rand_symmetric(rng, 2 * m))
                f, g, h = (rand_poly(rng, 2 * m, 4) for _ in range(3))
                lhs = star_poly(star_poly(f, g, ordering, p), h, ordering, p)
                rhs = star_poly(f, star_poly(g, h, ordering, p), ordering, p)
                bound = 1e-10 * f.norm() * g.norm() * h.norm()
                assert (lhs - rhs).norm() <= bound

    def test_backends_agree(self, rng):
        if kernels.backend() != "compiled":
            pytest.skip("compiled kernel not available")
        for m in (1, 2, 3):
            gamma = rand_symmetric(rng, 2 * m) + j_matrix(m)
            f = rand_poly(rng, 2 * m, 4, nterms=8)
            g = rand_poly(rng, 2 * m, 5, nterms=8)
            lam = 0.5j * 0.7
            fast = kernels.star_terms(f.terms, g.terms, gamma, lam)
            slow = star_terms_py(f.terms, g.terms, gamma, lam)
            assert (PolyC(2 * m, fast) - PolyC(2 * m, slow)).norm() < 1e-12


class TestQuadForms:
    def test_zero(self):
        p = Params(1, 1.0)
        assert quad_form(np.zeros((2, 2)), p).is_zero()

    def test_cross_term(self):
        p = Params(1, 1.0)
        s = np.array([[0, 1], [1, 0]], dtype=complex)
        assert quad_form(s, p) == PolyC(2, {(1, 1): 2.0})

    def test_identity_matrix(self):
        p = Params(1, 1.0)
        assert quad_form(np.eye(2), p) == PolyC(2, {(2, 0): 1.0, (0, 2): 1.0})

    def test_not_symmetric(self):
        p = Params(1, 1.0)
        with pytest.raises(NotSymmetric):
            quad_form(np.array([[0, 1], [0, 0]]), p)

    def test_weyl_trace_term_vanishes(self, rng):
        p = Params(2, 0.7)
        a = rand_symmetric(rng, 4)
        assert quad_star_k(a, weyl(2), p).approx_eq(quad_form(a, p), 1e-14)

    def test_standard_example(self):
        # m=1, hbar=1, K = A = [[0,1],[1,0]]: symmetrizing the star products
        # gives 2uv + i (Tr KA = 2, shift i*hbar/2 * 2 = i)
        p = Params(1, 1.0)
        s = np.array([[0, 1], [1, 0]], dtype=complex)
        got = quad_star_k(s, standard(1), p)
        assert got == PolyC(2, {(1, 1): 2.0, (0, 0): 1j})

    def test_matches_symmetrization_oracle(self, rng):
        for m in (1, 2):
            p = Params(m, 1.0)
            n = 2 * m
            a = rand_symmetric(rng, n)
            ordering = OrderingK(rand_symmetric(rng, n))
            acc = PolyC.zero(n)
            for i in range(n):
                for j in range(n):
                    zi, zj = PolyC.generator(n, i), PolyC.generator(n, j)
                    sym = (star_poly(zi, zj, ordering, p)
                           + star_poly(zj, zi, ordering, p)) * 0.5
                    acc = acc + sym * a[i, j]
            assert quad_star_k(a, ordering, p).approx_eq(acc, 1e-12)


class TestRankOne:
    def test_m1_polar_form(self):
        p = Params(1, 1.0)
        mat, poly, disc = rank_one_B([1.0], 0.0, 0.0, 1.0, p)
        assert np.allclose(mat, np.array([[0, 1], [1, 0]]))
        assert poly == PolyC(2, {(1, 1): 2.0})
        assert disc == pytest.approx(1.0)

    def test_zero_form(self):
        p = Params(1, 1.0)
        mat, poly, disc = rank_one_B([1.0], 0.0, 0.0, 0.0, p)
        assert np.abs(mat).max() == 0 and poly.is_zero() and disc == 0

    def test_m2_embeds_block(self):
        p = Params(2, 1.0)
        mat, poly, _ = rank_one_B([1.0, 0.0], 0.3, -0.1, 1.0, p)
        p1 = Params(1, 1.0)
        mat1, poly1, _ = rank_one_B([1.0], 0.3, -0.1, 1.0, p1)
        assert np.allclose(mat[np.ix_([0, 2], [0, 2])], mat1)
        assert np.abs(mat[np.ix_([1, 3], [1, 3])]).max() == 0

    def test_off_sphere(self):
        p = Params(2, 1.0)
        with pytest.raises(NotOnSphere):
            rank_one_B([1.0, 1.0], 0, 0, 1.0, p)

    def test_angle_bracket(self, rng):
        # [<a,u>, <b,v>] = -i hbar <a,b> in any ordering
        for m in (1, 3):
            p = Params(m, 0.6)
            ordering = OrderingK(rand_symmetric(rng, 2 * m))
            a = rng.normal(size=m) + 1j * rng.normal(size=m)
            b = rng.normal(size=m) + 1j * rng.normal(size=m)
            c = commutator(linear_form_u(a, p), linear_form_v(b, p), ordering, p)
            assert (c - PolyC.constant(2 * m, -1j * p.hbar * complex(a @ b))).norm() < 1e-12


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=3), st.integers(min_value=0, max_value=3))
def test_power_degrees(du, dv):
    p = Params(1, 1.0)
    mono = PolyC(2, {(du, dv): 1.0})
    prod = star_poly(mono, mono, weyl(1), p)
    assert prod.degree() <= 2 * (du + dv)
    assert prod.coeff((2 * du, 2 * dv)) == pytest.approx(1.0)
