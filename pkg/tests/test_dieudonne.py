import itertools

import pytest

from dualgroups import catalog
from dualgroups.cocycles import witt_cocycle
from dualgroups.dieudonne import (
    BoundsError,
    DieudonneElt,
    DModulePresentation,
    PresentationError,
    RelationColumn,
    UnipotentModule,
    UnsupportedGroupError,
    WittHom,
    classify,
    d_normal_form,
    dieudonne_of_unipotent,
    direct_sum,
    hom_D,
    hom_contains,
    lie_functor,
    lie_of_map,
    module_D_mod_Vn,
    right_mult_matrix,
)
from dualgroups.extensions import deform, trivial_deformation
from dualgroups.fields import GF
from dualgroups.hopf import vector_group
from dualgroups.linalg import rref, zpn_howell, zpn_in_span, zpn_length
from dualgroups.poly import IModule, Poly

I1 = IModule(1)
I2 = IModule(2)


# -- the ring ------------------------------------------------------------------


def test_normal_forms():
    assert d_normal_form(3, 2, "F*V").render() == "3"
    assert d_normal_form(3, 2, "V*F").render() == "3"
    # p^2 at precision 3 survives; at precision 2 it is 0
    assert d_normal_form(3, 3, "V^2*F^2").render() == "9"
    assert d_normal_form(3, 2, "V^2*F^2").render() == "0"
    assert d_normal_form(3, 2, "3 + F*V*F").render() == "3 + 3*F"
    assert d_normal_form(2, 3, "F^2*V").render() == "2*F"
    assert d_normal_form(5, 2, "(F + V)^2").render() == "V^2 + 10 + F^2"


def test_element_algebra(rng):
    p, N = 3, 2
    for _ in range(20):
        a = DieudonneElt(p, N, {rng.randint(-2, 2): rng.randrange(9) for _ in range(2)})
        b = DieudonneElt(p, N, {rng.randint(-2, 2): rng.randrange(9) for _ in range(2)})
        c = DieudonneElt(p, N, {rng.randint(-2, 2): rng.randrange(9) for _ in range(2)})
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a        # commutative over F_p
        assert a * (b + c) == a * b + a * c


def test_reduce_mod_dvn():
    e = DieudonneElt(3, 3, {-1: 3, 0: 9, 1: 1})
    r = e.reduce_mod_dvn(2)
    # V has order p^(2-1): coefficient 3 dies; scalars live mod p^2
    assert r.coeffs == {1: 1}


# -- windowed modules -----------------------------------------------------------


def test_module_window_lengths():
    assert module_D_mod_Vn(2, 2, 1, 4).length() == 5
    assert module_D_mod_Vn(2, 2, 2, 4).length() == 11
    assert module_D_mod_Vn(3, 3, 3, 2).length() == 3 * 3 + 2 + 1


def test_is_smooth():
    for n in (1, 2):
        assert module_D_mod_Vn(3, 2, n, 3).is_smooth()
    # the Frobenius-kernel module D/(DV + DF): F kills the generator
    pres = DModulePresentation(2, 2, [1], [RelationColumn(1, [DieudonneElt.F(2, 2)])])
    assert not pres.materialize(4).is_smooth()
    # zero module
    assert DModulePresentation(2, 2, []).materialize(4).is_smooth()


def test_presentation_well_definedness():
    with pytest.raises(PresentationError):
        # right multiplication by 1: D/DV -> D/DV^2 is not defined (V*1 != 0)
        DModulePresentation(2, 2, [2], [RelationColumn(1, [DieudonneElt.scalar(2, 2, 1)])])


def test_end_rank_check():
    # D/DV^n embeds with full rank into End(D/DV^n) by right multiplication;
    # windows: source at D, target at 2D so the multiplications are faithful
    for p, n, D in ((3, 1, 3), (3, 2, 3), (2, 2, 4)):
        N = 2
        M = module_D_mod_Vn(p, N, n, D)
        M_big = module_D_mod_Vn(p, N, n, 2 * D)
        hb = hom_D(M, M_big)
        sol, triv, _ = hb
        flats = []
        for d in M.labels:
            mat = right_mult_matrix(M, M_big, n, DieudonneElt(p, N, {d: 1}))
            assert hom_contains(M, M_big, mat, hb), (p, n, d)
            flats.append([mat[i][j] for i in range(len(M_big.labels))
                          for j in range(len(M.labels))])
        span = zpn_howell(flats + list(triv), p, N)
        embed_len = zpn_length(span, p, N) - zpn_length(zpn_howell(list(triv), p, N) if triv else [], p, N)
        assert embed_len == M.length(), (p, n)


def test_hom_contains_shift_map():
    # Hom(D/DV, D/DV^2) contains the map induced by the Witt shift
    p, N, D = 3, 2, 3
    M1 = module_D_mod_Vn(p, N, 1, D)
    M2 = module_D_mod_Vn(p, N, 2, 2 * D)
    hb = hom_D(M1, M2)
    mat = right_mult_matrix(M1, M2, 2, DieudonneElt.V(p, N))
    assert hom_contains(M1, M2, mat, hb)


def test_hom_dv_dv_matches_additive_polynomials():
    # Hom(D/DV, D/DV) = truncated k[F] = End(G_a) = additive polynomials:
    # the right-multiplication image has the same rank as the additive solve
    p, D = 3, 3
    N = 1
    M = module_D_mod_Vn(p, N, 1, D)
    M_big = module_D_mod_Vn(p, N, 1, 2 * D)
    hb = hom_D(M, M_big)
    flats = []
    for d in M.labels:
        mat = right_mult_matrix(M, M_big, 1, DieudonneElt(p, N, {d: 1}))
        flats.append([x for row in mat for x in row])
    span = zpn_howell(flats, p, N)
    MU = dieudonne_of_unipotent(catalog.additive_group(GF(p)), 1, D)
    assert zpn_length(span, p, N) == len(MU.gr[0])


# -- the Lie functor -------------------------------------------------------------


@pytest.mark.parametrize("n", [1, 2, 3])
def test_lie_of_standard_module(n):
    p = 5
    D = 2
    pres = DModulePresentation(p, 2, [n])
    L = lie_functor(pres, D)
    assert len(L.labels) == n * (D + 1)
    assert L.length() == n * (D + 1)
    # V acts by the shift (a_0, .., a_{n-1}) -> (0, a_0, ..)
    vm = L.v_matrix()
    for t in range(n):
        for a in range(D + 1):
            src = L.index[(0, t, a)]
            if t + 1 < n:
                assert vm[L.index[(0, t + 1, a)]][src] == 1
            else:
                assert all(row[src] == 0 for row in vm)
    # scalars act diagonally: over F_p the twist (x_0, x_0^p, ...) is constant
    assert L.p == p


def test_lie_on_morphisms():
    p = 5
    # F goes to 0
    m = lie_of_map(DModulePresentation(p, 2, [1]), DieudonneElt.F(p, 2), 2)
    assert all(all(c == 0 for c in row) for row in m)
    # V goes to the shift on D/DV^2
    m = lie_of_map(DModulePresentation(p, 2, [2]), DieudonneElt.V(p, 2), 2)
    D = 2
    for a in range(D + 1):
        assert m[1 * (D + 1) + a][0 * (D + 1) + a] == 1
    # scalars go to the diagonal
    m = lie_of_map(DModulePresentation(p, 2, [2]), DieudonneElt.scalar(p, 2, 7), 2)
    for i in range(2 * (D + 1)):
        assert m[i][i] == 7 % p


def test_lie_additive_on_direct_sums():
    p = 3
    pres1 = DModulePresentation(p, 2, [1])
    pres2 = DModulePresentation(p, 2, [2])
    pres12 = DModulePresentation(p, 2, [1, 2])
    D = 2
    assert (lie_functor(pres12, D).length()
            == lie_functor(pres1, D).length() + lie_functor(pres2, D).length())


def test_lie_rejects_wrong_v_bound():
    # right multiplication by 1: D/DV -> D/DV^3 is not defined (V.1 != 0 there)
    with pytest.raises(PresentationError):
        DModulePresentation(3, 2, [3], [RelationColumn(1, [DieudonneElt.scalar(3, 2, 1)])])


# -- Hom(U, W_m) ------------------------------------------------------------------


def test_m_of_additive_group_level_one():
    # additive polynomials: the Frobenius-power basis with F acting by shift
    p, D = 2, 4
    U = catalog.additive_group(GF(p))
    M = dieudonne_of_unipotent(U, 1, D)
    assert len(M.gr[0]) == D + 1
    for k, h in enumerate(M.lifts[0]):
        assert h.components[0] == Poly.var(GF(p), 1, 0) ** (p**k)
        assert M.contains(h.frobenius()) == (k + 1 <= D)
    # independent oracle over F_2 at small degree: enumerate all polynomials
    # of degree <= 4 and keep the additive ones
    small = dieudonne_of_unipotent(U, 1, 2)
    additive = []
    x = Poly.var(GF(2), 1, 0)
    y1 = Poly.var(GF(2), 2, 0)
    y2 = Poly.var(GF(2), 2, 1)
    for mask in range(1, 32):
        poly = Poly.zero(GF(2), 1)
        for d in range(5):
            if mask & (1 << d):
                poly = poly + x ** (d + 1) if d + 1 <= 4 else poly
        if poly.is_zero() or poly.degree() > 4:
            continue
        diff = poly.subs([y1 + y2]) - poly.subs([y1.embed(2, 0) if False else y1]) - poly.subs([y2])
        if diff.is_zero():
            additive.append(poly)
    got = {h.components[0].render(["x"]) for h in small.lifts[0]}
    span = set()
    # the additive polynomials of degree <= 4 are spanned by x, x^2, x^4
    assert {q.render(["x"]) for q in additive} >= {"x", "x^2", "x^4"}
    for q in additive:
        assert all(e in (1, 2, 4) for (e,), _ in [(m, c) for m, c in q.terms.items()])


def test_m_of_w2_contains_identity_generating():
    p, D = 2, 3
    W2 = catalog.witt_group(GF(p), 2)
    M = dieudonne_of_unipotent(W2, 2, D)
    idh = WittHom(W2, [Poly.var(GF(p), 2, 0), Poly.var(GF(p), 2, 1)])
    assert idh.is_homomorphism()
    assert M.contains(idh)
    # the D-span of the identity exhausts the D/DV^2 window: graded ranks
    els0 = []
    els1 = []
    cur = idh
    for a in range(D + 1):
        els0.append(cur)
        els1.append(cur.verschiebung())
        els1.append(cur.scale_int(p))
        cur = cur.frobenius()
    from dualgroups.dieudonne import _poly_to_coeffs

    rows0 = [_poly_to_coeffs(W2, h.components[0], D) for h in els0]
    r0, _ = rref([r for r in rows0 if r is not None], GF(p))
    rows1 = [
        _poly_to_coeffs(W2, h.components[1], D + 1)
        for h in els1 if h.components[0].is_zero()
    ]
    r1, _ = rref([r for r in rows1 if r is not None], GF(p))
    window_length = module_D_mod_Vn(p, 2, 2, D).length()
    assert len(r0) + len(r1) == window_length
    # and every D-multiple stays inside the computed module
    assert M.contains(idh.scale_int(3))
    assert M.contains(idh.frobenius().verschiebung())


def test_m_additive_on_products():
    p, D = 3, 2
    U1 = catalog.additive_group(GF(p))
    U12 = catalog.ga_times_ga(GF(p))
    for m in (1, 2):
        M1 = dieudonne_of_unipotent(U1, m, D)
        M12 = dieudonne_of_unipotent(U12, m, D)
        assert M12.length() == 2 * M1.length()


def test_m_exact_on_witt_chain():
    # 0 -> G_a -> W_2 -> G_a -> 0 (inclusion the shift, projection the first
    # coordinate): applying M gives an exact sequence at the window
    p, D = 2, 4
    field = GF(p)
    W2 = catalog.witt_group(field, 2)
    Ga = catalog.additive_group(field)
    M_W = dieudonne_of_unipotent(W2, 2, D)
    M_Ga = dieudonne_of_unipotent(Ga, 2, D)

    pi_values = [Poly.var(field, 1, 0), Poly.zero(field, 1)]     # W_2 <- pre of pi... O(Ga) -> O(W2)
    # pi: W_2 -> G_a is (a, b) -> a: function level x -> w0
    pi_sub = [Poly.var(field, 2, 0)]
    # iota: G_a -> W_2 is b -> (0, b): function level w0 -> 0, w1 -> x
    iota_sub = [Poly.zero(field, 1), Poly.var(field, 1, 0)]

    def pi_star(h):
        return WittHom(W2, [c.subs(pi_sub) for c in h.components])

    def iota_star(h):
        return WittHom(Ga, [c.subs(iota_sub) for c in h.components])

    # injectivity of pi^* and composite zero
    for level in range(2):
        for h in M_Ga.lifts[level]:
            assert M_W.contains(pi_star(h))
            if not h.is_zero():
                assert not pi_star(h).is_zero()
            assert iota_star(pi_star(h)).is_zero()

    # kernel of iota^* equals the image of pi^*: graded comparison
    from dualgroups.dieudonne import (
        _additive_candidates,
        _additivity_columns,
        _coeffs_to_poly,
        _poly_of_candidate,
        _poly_to_coeffs,
    )
    from dualgroups.linalg import solve
    from dualgroups.witt import witt_structure_polys_mod_p

    # level 0 of the kernel: f0 killed by iota AND admitting a lift f1 with
    # f1 o iota = 0
    columns1, keys1 = _additivity_columns(W2, D + 1)
    extra = witt_structure_polys_mod_p(p, 2)[0][1]
    extra = extra - Poly.var(field, 4, 1) - Poly.var(field, 4, 3)
    cands1 = _additive_candidates(W2, D + 1)
    iota_cols = [_poly_of_candidate(W2, cand).subs(iota_sub) for cand in cands1]
    iota_keys = sorted({mm for q in iota_cols for mm in q.terms})
    iota_rows = [[q.terms.get(key, field.zero) for q in iota_cols] for key in iota_keys]

    ker0 = []
    for h in M_W.lifts[0]:
        f0 = h.components[0]
        if not f0.subs(iota_sub).is_zero():
            continue
        zero4 = Poly.zero(field, 4)
        ob = extra.subs([f0.embed(4, 0), zero4, f0.embed(4, 2), zero4])
        keys = sorted(set(keys1) | set(ob.terms))
        rows = [[col.terms.get(key, field.zero) for col in columns1] for key in keys]
        rhs = [ob.terms.get(key, field.zero) for key in keys]
        rows += iota_rows
        rhs += [field.zero] * len(iota_rows)
        if solve(rows, rhs, field) is not None:
            ker0.append(f0)
    im0 = [pi_star(h).components[0] for h in M_Ga.lifts[0]]
    rows_k, _ = rref([v for q in ker0 if (v := _poly_to_coeffs(W2, q, D)) is not None], field)
    rows_i, _ = rref([v for q in im0 if (v := _poly_to_coeffs(W2, q, D)) is not None], field)
    assert rows_k == rows_i
    # level 1
    ker1 = []
    for vec in M_W.gr[1]:
        q = _coeffs_to_poly(W2, vec, D + 1)
        if q.subs(iota_sub).is_zero():
            ker1.append(q)
    im1 = [pi_star(h).components[1] for h in M_Ga.lifts[1]]
    rows_k1, _ = rref([_poly_to_coeffs(W2, q, D + 1) for q in ker1], field)
    rows_i1, _ = rref([_poly_to_coeffs(W2, q, D + 1) for q in im1], field)
    assert rows_k1 == rows_i1

    # surjectivity of iota^* at the matched window: images of the level-0
    # lifts cover the degree <= D part of M(G_a) at level 1
    images = [iota_star(h).components[1] for h in M_W.lifts[0]]
    rows_s, _ = rref([_poly_to_coeffs(Ga, q, D + 1) for q in images], field)
    x = Poly.var(field, 1, 0)
    for k in range(D + 1):
        target = _poly_to_coeffs(Ga, x ** (p**k), D + 1)
        aug, _ = rref(rows_s + [target], field)
        assert len(aug) == len(rows_s), k

    # rank accounting
    assert M_W.length() == M_Ga.length() + len(rows_s)


def test_unsupported_groups_rejected():
    with pytest.raises(UnsupportedGroupError):
        dieudonne_of_unipotent(catalog.roots_of_unity(GF(3), 3), 1, 2)
    with pytest.raises(UnsupportedGroupError):
        dieudonne_of_unipotent(catalog.additive_group(GF(3)), 3, 2)


# -- classification ---------------------------------------------------------------


@pytest.mark.parametrize("p", [2, 3])
def test_classify_trivial_deformation_splits(p):
    field = GF(p)
    di = classify(trivial_deformation(catalog.additive_group(field), I1), 2, 4)
    assert di.exact and di.split and di.lie_certificate
    assert di.lengths["total"] == di.lengths["base"] + di.lengths["lie_image"]


@pytest.mark.parametrize("p", [2, 3])
def test_classify_witt_deformation_does_not_split(p):
    field = GF(p)
    G = catalog.additive_group(field)
    di = classify(deform(G, witt_cocycle(G, I1)), 2, 4)
    assert di.exact and not di.split and di.lie_certificate


def test_classify_rank2():
    field = GF(2)
    G = catalog.additive_group(field)
    di = classify(deform(G, witt_cocycle(G, I2, part=0)), 2, 3)
    assert di.exact and not di.split and di.lie_certificate
    dj = classify(trivial_deformation(G, I2), 2, 3)
    assert dj.exact and dj.split


def test_classify_rejects_nonpolynomial():
    dm = trivial_deformation(catalog.roots_of_unity(GF(3), 3), I1)
    with pytest.raises(UnsupportedGroupError):
        classify(dm, 2, 3)


def test_classify_bounds_diagnostic():
    # the additive-candidate window cannot see the morphisms of a bilinear
    # deformation in odd characteristic: classify reports the insufficiency
    from dualgroups.cocycles import bilinear_cocycle

    field = GF(5)
    G = catalog.additive_group(field)
    dm = deform(G, bilinear_cocycle(G, I1, [("x", 0, 0, 0, 1)]))
    with pytest.raises(BoundsError):
        classify(dm, 2, 2)
