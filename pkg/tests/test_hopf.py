import itertools

import pytest

from dualgroups import catalog
from dualgroups.fields import GF, QQ
from dualgroups.hopf import (
    EDerivation,
    HopfPresentation,
    InvalidPointError,
    LiePoint,
    PointValue,
    adjoint_action,
    adjoint_full_matrix,
    convolve,
    exp_point,
    identity_point,
    is_hopf_morphism,
    lie_algebra,
    lie_bracket,
    lie_group_presentation,
    lie_point_from_coordinates,
    product_group,
    universal_point,
    verify_hopf,
)
from dualgroups.poly import DualPoly, IModule, Poly

I1 = IModule(1)
I2 = IModule(2)


def catalog_groups(field):
    groups = [
        catalog.additive_group(field),
        catalog.multiplicative_group(field),
        catalog.ga_times_ga(field),
        catalog.ga_semidirect_gm(field),
        catalog.heisenberg(field),
        catalog.witt_group(field, 2),
        catalog.witt_group(field, 3),
        catalog.constant_cyclic(field, 2),
        catalog.constant_cyclic(field, 3),
    ]
    groups += [catalog.roots_of_unity(field, n) for n in range(2, 7)]
    if field.p:
        groups.append(catalog.frobenius_kernel(field))
    return groups


@pytest.mark.parametrize("p", [0, 2, 3, 5])
def test_verify_hopf_catalog(p):
    field = QQ if p == 0 else GF(p)
    for G in catalog_groups(field):
        report = verify_hopf(G)
        assert report.ok, (p, G.name, report)


def test_verify_hopf_detects_corrupted_antipode():
    G = catalog.additive_group(QQ)
    bad = HopfPresentation(
        "bad", G.algebra, G.comul, G.counit,
        {"x": DualPoly.of_poly(Poly.var(QQ, 1, 0), 0)},
    )
    report = verify_hopf(bad)
    assert not report.antipode
    assert report.coassoc and report.counit and report.relations_preserved


def test_lie_dimensions():
    assert lie_algebra(catalog.additive_group(QQ), I1).dim == 1
    assert lie_algebra(catalog.roots_of_unity(GF(5), 5), I1).dim == 1
    assert lie_algebra(catalog.ga_times_ga(GF(3)), I2).dim == 4
    assert lie_algebra(catalog.multiplicative_group(QQ), I1).dim == 1
    assert lie_algebra(catalog.ga_semidirect_gm(QQ), I2).dim == 4


def test_mu_p_lie_relation_killed():
    # d(x^p - 1) = p (...) = 0 in characteristic p, so the basis is d(x) = 1
    G = catalog.roots_of_unity(GF(5), 5)
    lie = lie_algebra(G, I1)
    assert lie.base_dim == 1
    assert lie.vectors[0]["x"] == 1


def test_adjoint_commutative_is_identity():
    for G in (catalog.additive_group(QQ), catalog.roots_of_unity(QQ, 4),
              catalog.witt_group(GF(3), 2)):
        lie, M = adjoint_action(G)
        for i in range(lie.base_dim):
            for j in range(lie.base_dim):
                expect = Poly.const(G.field, G.nvars, 1 if i == j else 0)
                assert G.algebra.reduce_poly(M[i][j] - expect).is_zero(), G.name


def test_adjoint_semidirect_has_torus_entry():
    G = catalog.ga_semidirect_gm(QQ)
    lie, M = adjoint_action(G)
    # the translation direction rescales by the torus coordinate
    b_a = lie.pivot_gens.index("a")
    assert M[b_a][b_a] == G.var("t")
    full = adjoint_full_matrix(lie, M)
    assert len(full) == lie.base_dim


def test_bracket_examples():
    G = catalog.ga_semidirect_gm(QQ)
    d_t = {"a": QQ.zero, "t": QQ.one, "s": QQ.coerce(-1)}
    d_a = {"a": QQ.one, "t": QQ.zero, "s": QQ.zero}
    br = lie_bracket(G, d_t, d_a)
    assert br == {"a": QQ.one, "t": QQ.zero, "s": QQ.zero}
    # antisymmetry and [x, x] = 0
    assert lie_bracket(G, d_a, d_t) == {g: QQ.neg(v) for g, v in br.items()}
    assert all(v == QQ.zero for v in lie_bracket(G, d_a, d_a).values())


def _basis_derivations(G, lie):
    return [dict(vec) for vec in lie.vectors]


@pytest.mark.parametrize("maker", [catalog.ga_semidirect_gm, catalog.heisenberg])
def test_bracket_antisymmetry_and_jacobi(maker):
    G = maker(QQ)
    lie = lie_algebra(G, I1)
    basis = _basis_derivations(G, lie)
    field = G.field

    def add(u, v):
        return {g: field.add(u[g], v[g]) for g in G.gens}

    def bracket(u, v):
        return lie_bracket(G, u, v)

    for x in basis:
        for y in basis:
            assert bracket(x, y) == {g: field.neg(c) for g, c in bracket(y, x).items()}
            for z in basis:
                j1 = bracket(x, bracket(y, z))
                j2 = bracket(y, bracket(z, x))
                j3 = bracket(z, bracket(x, y))
                total = add(add(j1, j2), j3)
                assert all(c == field.zero for c in total.values())


def test_exp_translation_on_additive_group():
    # x = c d over R = k[eps]: exp(x) is the point x -> eps c
    G = catalog.additive_group(QQ)
    c = DualPoly.const(QQ, 1, 1, 3)   # the scalar 3 in a rank-1 dual ring
    pt = exp_point(G, LiePoint(G, I1, {"x": (c,)}))
    expect = DualPoly.eps(QQ, 1, 1, 0, Poly.const(QQ, 1, 3))
    assert pt.values["x"] == expect


def test_exp_zero_is_identity():
    G = catalog.multiplicative_group(QQ)
    zero = DualPoly.zero(QQ, 1, 1)
    x = LiePoint(G, I1, {g: (zero,) for g in G.gens})
    pt = exp_point(G, x)
    assert pt == identity_point(G, 1, 1)


def test_exp_rejects_non_derivation():
    G = catalog.roots_of_unity(GF(3), 4)
    # values that do not kill the relation x^4 - 1 (need d(x)*4x^3 = d(x)*x^3*4
    # at the counit: 4*1 = 1 != 0 mod 3, so d(x) = 1 fails)
    bad = LiePoint(G, I1, {"x": (DualPoly.const(GF(3), 1, 1, 1),)})
    with pytest.raises(InvalidPointError):
        exp_point(G, bad)


def test_exp_is_additive_on_universal_points():
    # exp(x) exp(y) = exp(x + y) over O(Lie x Lie)[I]
    for G in (catalog.additive_group(QQ), catalog.ga_semidirect_gm(QQ)):
        lie = lie_algebra(G, I1)
        nb = lie.base_dim
        nvars = 2 * nb
        coords_x = [DualPoly.of_poly(Poly.var(G.field, nvars, b), 1) for b in range(nb)]
        coords_y = [DualPoly.of_poly(Poly.var(G.field, nvars, nb + b), 1) for b in range(nb)]
        x = lie_point_from_coordinates(lie, coords_x)
        y = lie_point_from_coordinates(lie, coords_y)
        lhs = exp_point(G, x).mul(exp_point(G, y))
        rhs = exp_point(G, x.add(y))
        for g in G.gens:
            assert lhs.values[g] == rhs.values[g], G.name


def test_exp_kernel_contains_I_multiples():
    # exp(i x) = identity for any section i of I, ranks 1 and 2
    for iota in (I1, I2):
        G = catalog.ga_semidirect_gm(GF(5))
        lie = lie_algebra(G, iota)
        nb = lie.base_dim
        r = iota.rank
        coords = [
            DualPoly.of_poly(Poly.var(G.field, nb * r, k), r) for k in range(nb * r)
        ]
        x = lie_point_from_coordinates(lie, coords)
        for j in range(r):
            section = DualPoly.eps(G.field, nb * r, r, j)
            assert exp_point(G, x.mul_ring(section)) == identity_point(G, nb * r, r)


def test_cocycle_vanishes_through_exp():
    # exp_H o h^* phi o exp_G is trivial for pointed scheme maps phi
    field = QQ
    G = catalog.additive_group(field)
    H = catalog.ga_semidirect_gm(field)
    lieG = lie_algebra(G, I1)
    lieH = lie_algebra(H, I1)
    nb = lieG.base_dim
    coords = [DualPoly.of_poly(Poly.var(field, nb, b), 1) for b in range(nb)]
    g1 = exp_point(G, lie_point_from_coordinates(lieG, coords))
    # a family of pointed maps G -> Lie(H, I): polynomial coordinates with
    # zero constant term
    x = Poly.var(field, 1, 0)
    for coord_polys in ([x, x**2], [x**3, -x], [x + x**2, Poly.zero(field, 1)]):
        lie_vals = [cp.subs_dual([g1.values["x"]]) for cp in coord_polys]
        y = lie_point_from_coordinates(lieH, lie_vals)
        out = exp_point(H, y)
        assert out == identity_point(H, 1, 1)


def test_product_group_structure():
    G = catalog.ga_times_ga(QQ)
    assert G.gens == ("x_1", "x_2")
    assert verify_hopf(G).ok
    assert lie_algebra(G, I1).dim == 2
    H = product_group(catalog.additive_group(QQ), catalog.roots_of_unity(QQ, 3))
    assert verify_hopf(H).ok
    assert lie_algebra(H, I1).dim == lie_algebra(catalog.additive_group(QQ), I1).dim \
        + lie_algebra(catalog.roots_of_unity(QQ, 3), I1).dim


def test_lie_idempotence_dimensions_and_basis():
    # Lie(G, I (x) J) vs Lie(Lie(G, I), J): equal dimension, basis to basis
    for G in (catalog.additive_group(QQ), catalog.ga_semidirect_gm(QQ),
              catalog.multiplicative_group(QQ)):
        for r, s in ((1, 1), (1, 2), (2, 1), (2, 2)):
            lie_inner = lie_algebra(G, IModule(r))
            L = lie_group_presentation(lie_inner)
            outer = lie_algebra(L, IModule(s))
            tensor = lie_algebra(G, IModule(r * s))
            assert outer.dim == tensor.dim
            # the vector group's own Lie basis is the coordinate basis
            assert outer.base_dim == len(L.gens)
            assert outer.pivot_gens == list(L.gens)


def test_point_multiplication_and_inverse():
    G = catalog.ga_semidirect_gm(QQ)
    u = universal_point(G)
    vals = u.mul(u.inverse())
    ident = identity_point(G, G.nvars, 0)
    for g in G.gens:
        assert G.algebra.normal_form_dual(vals.values[g] - ident.values[g]).is_zero()


def test_is_hopf_morphism_detects_frobenius():
    G = catalog.additive_group(GF(3))
    frob = {"x": DualPoly.of_poly(Poly.var(GF(3), 1, 0) ** 3, 0)}
    assert is_hopf_morphism(G, G, frob)
    not_hom = {"x": DualPoly.of_poly(Poly.var(GF(3), 1, 0) ** 2, 0)}
    assert not is_hopf_morphism(G, G, not_hom)
