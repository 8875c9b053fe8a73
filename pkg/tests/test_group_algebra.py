import math

import pytest

from dualgroups import catalog
from dualgroups.fields import GF, QQ
from dualgroups.group_algebra import (
    GroupAlgebraElement,
    MatrixTransport,
    NotAHomomorphismError,
    Truncation,
    TruncationError,
    UnsupportedGroupError,
    adjoint_transport,
    alpha_p_subalgebra,
    convolve,
    counit_element,
    delta_element,
    embed_point,
    regular_representation,
    satisfies_derivation_rule,
    u_derivation_element,
    unit_test_finite,
)
from dualgroups.poly import Poly


def test_mu_n_is_periodic_sequences():
    field = GF(7)
    mu = catalog.roots_of_unity(field, 3)
    basis = Truncation.exact(mu)
    assert basis.rank == 3
    u = GroupAlgebraElement(basis, {(i,): field.coerce(c) for i, c in enumerate([1, 2, 3])})
    v = GroupAlgebraElement(basis, {(i,): field.coerce(c) for i, c in enumerate([4, 5, 6])})
    uv = convolve(u, v)
    assert [uv.value((i,)) for i in range(3)] == [4, 3, 4]  # componentwise mod 7


def test_counit_is_convolution_unit():
    for G, basis in [
        (catalog.roots_of_unity(QQ, 4), None),
        (catalog.additive_group(QQ), 5),
    ]:
        b = Truncation.exact(G) if basis is None else Truncation.degree(G, basis)
        e = counit_element(b)
        u = delta_element(b, b.monomials[-1])
        assert convolve(e, u) == u
        assert convolve(u, e) == u


def test_divided_power_relation():
    # t^[i] t^[j] = C(i+j, i) t^[i+j] for i + j <= 8
    G = catalog.additive_group(QQ)
    b = Truncation.degree(G, 8)
    for i in range(9):
        for j in range(9 - i):
            lhs = convolve(delta_element(b, (i,)), delta_element(b, (j,)))
            rhs = delta_element(b, (i + j,)).scale(math.comb(i + j, i))
            assert lhs == rhs


def test_gm_window_is_componentwise():
    G = catalog.multiplicative_group(QQ)
    b = Truncation.degree(G, 3)
    # monomials x^i and y^j correspond to sequence indices i and -j
    assert len(b.monomials) == 7
    u = embed_point(b, {"x": 2, "y": QQ.coerce(1) / 2})
    v = embed_point(b, {"x": 3, "y": QQ.coerce(1) / 3})
    uv = convolve(u, v)
    assert uv == embed_point(b, {"x": 6, "y": QQ.coerce(1) / 6})


def test_embed_point_multiplicative_mu3_f7():
    field = GF(7)
    b = Truncation.exact(catalog.roots_of_unity(field, 3))
    g2 = embed_point(b, {"x": 2})
    g4 = embed_point(b, {"x": 4})
    assert convolve(g2, g4) == embed_point(b, {"x": 1})


def test_embed_point_additive_truncation():
    G = catalog.additive_group(QQ)
    b = Truncation.degree(G, 6)
    ga = embed_point(b, {"x": 2})
    gb = embed_point(b, {"x": 5})
    assert convolve(ga, gb) == embed_point(b, {"x": 7})


def test_alpha_p_exact_model():
    basis, t, unit = alpha_p_subalgebra(GF(2))
    assert basis.rank == 2
    assert convolve(t, t) == GroupAlgebraElement(basis, {})
    basis3, t3, unit3 = alpha_p_subalgebra(GF(3))
    assert basis3.rank == 3
    tt = convolve(t3, t3)
    assert tt == delta_element(basis3, (2,)).scale(2)
    assert convolve(tt, t3) == GroupAlgebraElement(basis3, {})
    assert unit3 == counit_element(basis3)
    with pytest.raises(UnsupportedGroupError):
        alpha_p_subalgebra(QQ)


def test_convolution_associative_exact_and_truncated():
    field = GF(5)
    b = Truncation.exact(catalog.roots_of_unity(field, 4))
    els = [delta_element(b, m) for m in b.monomials]
    for u in els:
        for v in els:
            for w in els:
                assert convolve(convolve(u, v), w) == convolve(u, convolve(v, w))
    # truncated: associativity within the window
    G = catalog.additive_group(QQ)
    bt = Truncation.degree(G, 5)
    xs = [delta_element(bt, (i,)) for i in (0, 1, 2)]
    for u in xs:
        for v in xs:
            for w in xs:
                assert convolve(convolve(u, v), w) == convolve(u, convolve(v, w))


def test_truncation_mismatch_rejected():
    G = catalog.additive_group(QQ)
    u = delta_element(Truncation.degree(G, 3), (1,))
    v = delta_element(Truncation.degree(G, 4), (1,))
    with pytest.raises(TruncationError):
        convolve(u, v)


def test_unit_test_finite():
    field = GF(7)
    b = Truncation.exact(catalog.roots_of_unity(field, 3))
    assert unit_test_finite(embed_point(b, {"x": 2}))
    assert not unit_test_finite(GroupAlgebraElement(b, {}))
    # constant group Z/2 over Q: delta_0 + delta_1 has determinant 0
    z2 = catalog.constant_cyclic(QQ, 2)
    bz = Truncation.exact(z2)
    d0 = embed_point(bz, {"d0": 1, "d1": 0})
    d1 = embed_point(bz, {"d0": 0, "d1": 1})
    assert unit_test_finite(d0)
    assert unit_test_finite(d1)
    assert not unit_test_finite(d0 + d1)
    G = catalog.additive_group(QQ)
    with pytest.raises(UnsupportedGroupError):
        unit_test_finite(delta_element(Truncation.degree(G, 3), (0,)))


def test_constant_cyclic_group_algebra_is_classical():
    # multiplication table of k[Z/n] for the cyclic cases
    for n in (2, 3):
        G = catalog.constant_cyclic(QQ, n)
        b = Truncation.exact(G)
        points = []
        for a in range(n):
            vals = {f"d{i}": 1 if i == a else 0 for i in range(n)}
            points.append(embed_point(b, vals))
        for a in range(n):
            for c in range(n):
                assert convolve(points[a], points[c]) == points[(a + c) % n]


def test_group_algebra_of_product_is_tensor():
    # O[mu_m] (x) O[mu_n] = O[mu_m x mu_n] at basis level
    field = GF(7)
    m, n = 2, 3
    from dualgroups.hopf import product_group

    GH = product_group(catalog.roots_of_unity(field, m), catalog.roots_of_unity(field, n))
    b = Truncation.exact(GH)
    assert b.rank == m * n
    bm = Truncation.exact(catalog.roots_of_unity(field, m))
    bn = Truncation.exact(catalog.roots_of_unity(field, n))
    for i1 in range(m):
        for j1 in range(n):
            for i2 in range(m):
                for j2 in range(n):
                    left = convolve(delta_element(b, (i1, j1)), delta_element(b, (i2, j2)))
                    fx = convolve(delta_element(bm, (i1,)), delta_element(bm, (i2,)))
                    fy = convolve(delta_element(bn, (j1,)), delta_element(bn, (j2,)))
                    expect = GroupAlgebraElement(b, {
                        (mi[0], mj[0]): field.mul(ci, cj)
                        for mi, ci in fx.coeffs.items()
                        for mj, cj in fy.coeffs.items()
                    })
                    assert left == expect


def test_derivation_star_point_is_derivation():
    # if d is a u-derivation and v a point, d * v is a (u * v)-derivation
    cases = [
        (catalog.additive_group(QQ), 6, {"x": 3}, {"x": 2}, {"x": 1}),
        # on the torus, u-derivation values must satisfy u(x) d(y) + u(y) d(x) = 0
        (catalog.multiplicative_group(QQ), 3,
         {"x": 3, "y": QQ.coerce(1) / 3},
         {"x": 2, "y": QQ.coerce(1) / 2},
         {"x": 1, "y": QQ.coerce(-1) / 9}),
    ]
    for G, bound, point_u, point_v, dvals in cases:
        b = Truncation.degree(G, bound)
        u = embed_point(b, point_u)
        v = embed_point(b, point_v)
        d = u_derivation_element(b, point_u, dvals)
        assert satisfies_derivation_rule(d, u)
        dv = convolve(d, v)
        uv = convolve(u, v)
        assert satisfies_derivation_rule(dv, uv)


def test_adjoint_transport_mu_n_characters():
    field = GF(7)
    mu = catalog.roots_of_unity(field, 3)
    b = Truncation.exact(mu)
    u = GroupAlgebraElement(b, {(0,): field.coerce(1), (1,): field.coerce(2),
                                (2,): field.coerce(3)})
    for j in range(3):
        mt = adjoint_transport(b, [[Poly.var(field, 1, 0) ** j if j else Poly.const(field, 1, 1)]])
        assert mt.apply(u) == [[u.value(((j % 3),))]]


def test_adjoint_transport_trivial_map_factors_counit():
    # the trivial map G -> 1 transports u to its value on the algebra unit
    field = QQ
    b = Truncation.exact(catalog.roots_of_unity(field, 4))
    mt = adjoint_transport(b, [[Poly.const(field, 1, 1)]])
    u = delta_element(b, (2,)) + delta_element(b, (0,)).scale(5)
    assert mt.apply(u) == [[u.value((0,))]]


def test_adjoint_transport_regular_representation_z2():
    field = QQ
    z2 = catalog.constant_cyclic(field, 2)
    b = Truncation.exact(z2)
    M = [
        [Poly.var(field, 2, 0), Poly.var(field, 2, 1)],
        [Poly.var(field, 2, 1), Poly.var(field, 2, 0)],
    ]
    mt = adjoint_transport(b, M)
    d0 = embed_point(b, {"d0": 1, "d1": 0})
    d1 = embed_point(b, {"d0": 0, "d1": 1})
    assert mt.apply(d0) == [[1, 0], [0, 1]]
    assert mt.apply(d1) == [[0, 1], [1, 0]]
    # multiplicative on the exact basis
    for a in (d0, d1):
        for c in (d0, d1):
            prod = mt.apply(convolve(a, c))
            ma, mc = mt.apply(a), mt.apply(c)
            classical = [
                [sum(ma[i][k] * mc[k][j] for k in range(2)) for j in range(2)]
                for i in range(2)
            ]
            assert prod == classical


def test_adjoint_transport_rejects_non_homomorphism():
    field = QQ
    b = Truncation.exact(catalog.roots_of_unity(field, 3))
    with pytest.raises(NotAHomomorphismError):
        adjoint_transport(b, [[Poly.var(field, 1, 0) + Poly.const(field, 1, 1)]])


def test_group_like_elements_are_units():
    field = GF(5)
    b = Truncation.exact(catalog.roots_of_unity(field, 4))
    for a in (1, 2, 3, 4):
        assert unit_test_finite(embed_point(b, {"x": a}))
