"""Restriction of scalars along k[I]/k at presentation level.

Each generator x of a k[I]-presentation is split as x = x_0 + sum_j eps_j
x_j; structure maps and relations are expanded, products of infinitesimals
killed, and the graded components give a presentation over k.  On top of
the splitting:

* beta_apply evaluates the counit adjunction h^* h_* G -> G on points,
* kernel_L presents ker(beta) and its special fibre as the Lie algebra,
* diamond is the transported product on I-compatible functionals,
* extension_of reads off the 2-cocycle of 1 -> Lie -> h_* G -> G_k -> 1
  through a rigidification, via the section it induces.
"""

from __future__ import annotations

from dataclasses import dataclass

from .extensions import (
    Cocycle2,
    ExtensionObj,
    Deformation,
    NotADeformationError,
    NotRigidError,
    build_extension,
)
from .hopf import (
    AlgebraMap,
    HopfPresentation,
    LieModule,
    convolve,
    lie_algebra,
    _scalar_pow,
)
from .poly import DualPoly, IModule, Poly, PresentedAlgebra


@dataclass
class WeilRestriction:
    """The restriction of scalars E = h_* G of a k[I]-group presentation."""

    source: HopfPresentation
    result: HopfPresentation
    gen_table: dict           # source generator -> list of r+1 result generators

    @property
    def iota(self) -> IModule:
        return self.source.iota

    def pi_values(self) -> dict:
        """Function-ring values of pi: E -> G_k (reduction mod I): x -> x_0."""
        nE = self.result.nvars
        field = self.result.field
        out = {}
        for i, g in enumerate(self.source.gens):
            out[g] = Poly.var(field, nE, self.result.gens.index(self.gen_table[g][0]))
        return out


def _split_names(gens, rank):
    return {g: [f"{g}_{j}" for j in range(rank + 1)] for g in gens}


def weil_restrict(H: HopfPresentation) -> WeilRestriction:
    """Split variables into body plus infinitesimal parts and regrade."""
    r = H.rank
    assert r >= 1, "restriction of scalars along k[I]/k needs rank(I) >= 1"
    field = H.field
    n = H.nvars
    table = _split_names(H.gens, r)
    gens = [name for g in H.gens for name in table[g]]
    nE = n * (r + 1)

    def split_values(offset_blocks):
        """Substitution x_i -> x_{i,0} + sum_j eps_j x_{i,j} per tensor slot."""
        vals = []
        for s in offset_blocks:
            for i in range(n):
                base = s * nE + (r + 1) * i
                body = Poly.var(field, len(offset_blocks) * nE, base)
                parts = tuple(
                    Poly.var(field, len(offset_blocks) * nE, base + 1 + j)
                    for j in range(r)
                )
                vals.append(DualPoly(body, parts))
        return vals

    one_slot = split_values([0])
    two_slot = split_values([0, 1])

    relations = []
    for rel in H.algebra.relations:
        image = rel.subs(one_slot)
        for comp in (image.body, *image.parts):
            if not comp.is_zero():
                relations.append(comp)
    algebra = PresentedAlgebra(
        field, gens, relations,
        strategy="groebner" if relations else "free",
    )

    comul = {}
    counit = {}
    antipode = {}
    for gi, g in enumerate(H.gens):
        dsplit = H.comul[g].subs(two_slot)
        ssplit = H.antipode[g].subs(one_slot)
        eps = H.counit[g]
        comps_d = (dsplit.body, *dsplit.parts)
        comps_s = (ssplit.body, *ssplit.parts)
        comps_e = (eps.body.constant_term(), *(q.constant_term() for q in eps.parts))
        for j, name in enumerate(table[g]):
            comul[name] = DualPoly.of_poly(comps_d[j], 0)
            antipode[name] = DualPoly.of_poly(comps_s[j], 0)
            counit[name] = DualPoly.of_poly(Poly.const(field, 0, comps_e[j]), 0)

    result = HopfPresentation(f"Res[{H.name}]", algebra, comul, counit, antipode, H.smooth)
    return WeilRestriction(H, result, table)


def restrict_morphism(src: WeilRestriction, dst: WeilRestriction, values: dict) -> dict:
    """h_* of a morphism given by function-ring values on dst's source gens.

    values: generator of dst.source -> DualPoly over src.source's ring.
    Returns the generator values of O(dst.result) -> O(src.result).
    """
    r = src.iota.rank
    assert r == dst.iota.rank
    field = src.source.field
    n = src.source.nvars
    nE = src.result.nvars
    one_slot = []
    for i in range(n):
        base = (r + 1) * i
        one_slot.append(DualPoly(
            Poly.var(field, nE, base),
            tuple(Poly.var(field, nE, base + 1 + j) for j in range(r)),
        ))
    out = {}
    for g in dst.source.gens:
        image = values[g].subs(one_slot)
        comps = (image.body, *image.parts)
        for j, name in enumerate(dst.gen_table[g]):
            out[name] = comps[j]
    return out


def special_fibre(H: HopfPresentation) -> HopfPresentation:
    """G_k = the reduction mod I: body components of all structure data."""
    if H.rank == 0:
        return H
    field = H.field
    relations = [r.body for r in H.algebra.relations if not r.body.is_zero()]
    has_mixed = any(
        any(not q.is_zero() for q in r.parts) for r in H.algebra.relations
    )
    strategy = H.algebra.strategy
    rules = None
    if strategy == "rules" and not has_mixed:
        rules = [r.body for r in H.algebra._rules]
    elif relations:
        strategy = "groebner"
    else:
        strategy = "free"
    algebra = PresentedAlgebra(
        field, H.gens, relations,
        strategy="free" if not relations else strategy,
        rules=rules,
    )
    lift = lambda v: DualPoly.of_poly(v.body, 0)
    return HopfPresentation(
        f"{H.name}_k", algebra,
        {g: lift(H.comul[g]) for g in H.gens},
        {g: lift(H.counit[g]) for g in H.gens},
        {g: lift(H.antipode[g]) for g in H.gens},
        H.smooth,
    )


def beta_apply(wr: WeilRestriction, point: dict) -> dict:
    """Counit adjunction on an R-point of h^* E, R a k[I]-algebra.

    point maps result generators to DualPolys over R; the image point of the
    source has x -> p(x_0) + sum_j eps_j p(x_j).
    """
    out = {}
    for g in wr.source.gens:
        names = wr.gen_table[g]
        acc = point[names[0]]
        for j in range(wr.iota.rank):
            acc = acc + point[names[1 + j]].eps_mul(j)
        out[g] = acc
    return out


@dataclass
class KernelL:
    """ker(beta) presented over k[I], with its special-fibre dictionary."""

    restriction: WeilRestriction
    presentation: PresentedAlgebra
    lie: LieModule
    fibre_values: dict        # E generator -> Poly over the Lie coordinate ring

    def fibre_dimension(self):
        return self.lie.dim


def kernel_L(wr: WeilRestriction, lie: LieModule | None = None) -> KernelL:
    """The closed subscheme of h^* h_* G where v_bar + v_R equals the counit."""
    H = wr.source
    E = wr.result
    r = H.rank
    field = H.field
    nE = E.nvars
    relations = [DualPoly.of_poly(rel.body, r) for rel in E.algebra.relations]
    for g in H.gens:
        names = wr.gen_table[g]
        eps = H.counit[g]
        body = Poly.var(field, nE, E.gens.index(names[0])) - Poly.const(
            field, nE, eps.body.constant_term()
        )
        parts = tuple(
            Poly.var(field, nE, E.gens.index(names[1 + j]))
            - Poly.const(field, nE, eps.parts[j].constant_term())
            for j in range(r)
        )
        relations.append(DualPoly(body, parts))
    presentation = PresentedAlgebra(
        field, E.gens, relations, strategy="groebner", iota=H.iota,
    )

    fibre = special_fibre(H)
    if lie is None:
        lie = lie_algebra(fibre, H.iota)
    nb = lie.base_dim
    nL = nb * r
    fibre_values = {}
    for i, g in enumerate(H.gens):
        names = wr.gen_table[g]
        eps = H.counit[g]
        fibre_values[names[0]] = Poly.const(field, nL, eps.body.constant_term())
        for j in range(r):
            acc = Poly.const(field, nL, eps.parts[j].constant_term())
            for b, vec in enumerate(lie.vectors):
                if vec[g] != field.zero:
                    acc = acc + Poly.var(field, nL, b * r + j).scale(vec[g])
            fibre_values[names[1 + j]] = acc
    return KernelL(wr, presentation, lie, fibre_values)


# ---------------------------------------------------------------------------
# the transported product on I-compatible functionals


class DualElementFunctional:
    """I-compatible functional on a truncation basis: dual-scalar coefficients.

    coeffs[mono] = (body, part_1, ..., part_r); the body map is v_bar and the
    parts are the components of v.
    """

    __slots__ = ("basis", "coeffs", "rank")

    def __init__(self, basis, rank, coeffs):
        self.basis = basis
        self.rank = rank
        field = basis.group.field
        zero = (field.zero,) * (rank + 1)
        self.coeffs = {m: tuple(c) for m, c in coeffs.items() if tuple(c) != zero}

    def value(self, mono):
        field = self.basis.group.field
        return self.coeffs.get(mono, (field.zero,) * (self.rank + 1))

    def __add__(self, other):
        field = self.basis.group.field
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            prev = out.get(m, (field.zero,) * (self.rank + 1))
            out[m] = tuple(field.add(a, b) for a, b in zip(prev, c))
        return DualElementFunctional(self.basis, self.rank, out)

    def __eq__(self, other):
        return (
            isinstance(other, DualElementFunctional)
            and self.basis is other.basis
            and self.coeffs == other.coeffs
        )

    def i_compatible_part(self):
        """The underlying v as a map into I (x) R (drops v_bar)."""
        return {m: c[1:] for m, c in self.coeffs.items()}


class NotICompatibleError(Exception):
    pass


def counit_functional(basis, rank) -> DualElementFunctional:
    """theta of the diamond unit d: the counit as a dual functional."""
    group = basis.group
    field = group.field
    coeffs = {}
    for m in basis.monomials:
        val = _dual_scalar_of_monomial(group, m)
        coeffs[m] = val
    return DualElementFunctional(basis, rank, coeffs)


def _dual_scalar_of_monomial(group, mono):
    """Multiplicative extension of the counit to a monomial, as a dual scalar."""
    field = group.field
    r = group.rank
    acc = (field.one,) + (field.zero,) * r
    for i, e in enumerate(mono):
        eps = group.counit[group.gens[i]]
        val = (eps.body.constant_term(), *(q.constant_term() for q in eps.parts))
        for _ in range(e):
            body = field.mul(acc[0], val[0])
            parts = tuple(
                field.add(field.mul(acc[0], val[1 + j]), field.mul(acc[1 + j], val[0]))
                for j in range(r)
            )
            acc = (body, *parts)
    return acc


def diamond(u: DualElementFunctional, v: DualElementFunctional) -> DualElementFunctional:
    """(v_bar (x) w + v (x) w_bar) o Delta, with the graded correction from
    the I-part of Delta paired against (v_bar (x) w_bar)."""
    basis = u.basis
    if basis is not v.basis or u.rank != v.rank:
        raise NotICompatibleError("operands live on different truncations")
    group = basis.group
    field = group.field
    r = u.rank
    n = group.nvars
    out = {}
    for m in basis.monomials:
        dp = basis.comul_of(m)
        body_acc = field.zero
        part_acc = [field.zero] * r
        for mm, c in dp.body.terms.items():
            a = u.value(mm[:n])
            b = v.value(mm[n:])
            body_acc = field.add(body_acc, field.mul(c, field.mul(a[0], b[0])))
            for j in range(r):
                part_acc[j] = field.add(
                    part_acc[j],
                    field.mul(c, field.add(
                        field.mul(a[0], b[1 + j]), field.mul(a[1 + j], b[0])
                    )),
                )
        for j in range(r):
            for mm, c in dp.parts[j].terms.items():
                a = u.value(mm[:n])
                b = v.value(mm[n:])
                part_acc[j] = field.add(part_acc[j], field.mul(c, field.mul(a[0], b[0])))
        out[m] = (body_acc, *part_acc)
    return DualElementFunctional(basis, r, out)


def star_product(u: DualElementFunctional, v: DualElementFunctional) -> DualElementFunctional:
    """theta(u) * theta(v): same convolution computed with dual-scalar products."""
    basis = u.basis
    group = basis.group
    field = group.field
    r = u.rank
    n = group.nvars
    out = {}
    for m in basis.monomials:
        dp = basis.comul_of(m)
        acc = [field.zero] * (r + 1)
        for mm, c in dp.body.terms.items():
            a = u.value(mm[:n])
            b = v.value(mm[n:])
            prod = _dual_scalar_mul(field, a, b)
            acc = [field.add(x, field.mul(c, y)) for x, y in zip(acc, prod)]
        for j in range(r):
            for mm, c in dp.parts[j].terms.items():
                a = u.value(mm[:n])
                b = v.value(mm[n:])
                acc[1 + j] = field.add(acc[1 + j], field.mul(c, field.mul(a[0], b[0])))
        out[m] = tuple(acc)
    return DualElementFunctional(basis, r, out)


def _dual_scalar_mul(field, a, b):
    body = field.mul(a[0], b[0])
    parts = tuple(
        field.add(field.mul(a[0], b[1 + j]), field.mul(a[1 + j], b[0]))
        for j in range(len(a) - 1)
    )
    return (body, *parts)


# ---------------------------------------------------------------------------
# the extension structure of h_* G


def extension_of(defm, rigidification: dict | None = None) -> ExtensionObj:
    """The extension 1 -> Lie(G_k, I) -> h_* G -> G_k -> 1 with its cocycle.

    The cocycle is computed from the section induced by the rigidification:
    P = s(g) s(g') s(g g')^{-1}, evaluated on universal points of E.  For a
    Deformation the canonical rigidification is used; a bare k[I]-group
    without one is refused.
    """
    if isinstance(defm, Deformation):
        H = defm.hopf
        G = defm.base
        sigma = rigidification if rigidification is not None else defm.rigidification
    else:
        H = defm
        G = special_fibre(H)
        sigma = rigidification
    if sigma is None:
        raise NotRigidError(
            "no rigidification: the group is not known to be rigid "
            "(the Frobenius-twist kernel shows the construction can fail)"
        )
    r = H.rank
    field = H.field
    n = H.nvars
    wr = weil_restrict(H)
    E = wr.result
    nE = E.nvars

    # sigma(1) = 1
    counit_vals = [G.counit_const(g, 0, r) for g in G.gens]
    for g in G.gens:
        if sigma[g].subs(counit_vals) != G.counit_const(g, 0, r):
            raise NotRigidError("rigidification must preserve the unit")

    # section values s: O(E) -> A from the rigidification components
    s_vals = {}
    for g in H.gens:
        names = wr.gen_table[g]
        s_vals[names[0]] = sigma[g].body
        for j in range(r):
            s_vals[names[1 + j]] = sigma[g].parts[j]

    # functionals O(E) -> A (x) A
    f1_vals = [DualPoly.of_poly(s_vals[e].embed(2 * n, 0), 0) for e in E.gens]
    f2_vals = [DualPoly.of_poly(s_vals[e].embed(2 * n, n), 0) for e in E.gens]
    comul_bodies = [G.comul[g].body for g in G.gens]
    ds_vals = {e: s_vals[e].subs(comul_bodies) for e in E.gens}
    f3_vals = [
        DualPoly.of_poly(E.antipode[e].body.subs([ds_vals[x] for x in E.gens]), 0)
        for e in E.gens
    ]
    conv = convolve(E, [AlgebraMap(E, f1_vals), AlgebraMap(E, f2_vals), AlgebraMap(E, f3_vals)])

    tensor2 = G.tensor(2)
    zero2 = Poly.zero(field, 2 * n)
    values = {}
    for g in G.gens:
        names = wr.gen_table[g]
        eps = H.counit[g]
        body = tensor2.reduce_poly(
            conv[names[0]].body - Poly.const(field, 2 * n, eps.body.constant_term())
        )
        if not body.is_zero():
            raise NotADeformationError("section composite does not land in the Lie kernel")
        parts = tuple(
            tensor2.reduce_poly(
                conv[names[1 + j]].body
                - Poly.const(field, 2 * n, eps.parts[j].constant_term())
            )
            for j in range(r)
        )
        values[g] = DualPoly(zero2, parts)
    cocycle = Cocycle2(G, H.iota, values)
    return build_extension(G, cocycle, check=False)


# ---------------------------------------------------------------------------
# the tangent-bundle model


def tangent_extension_iso(G: HopfPresentation, iota: IModule):
    """Mutually inverse Hopf dictionaries between h_* h^* G and Lie(G,I) x| G.

    Returns (wr, E0, tau, sigma): tau maps O(h_* h^* G) generators to
    O(E0)-polynomials, sigma the other way; both are verified by the tests.
    """
    from .catalog import base_extend

    r = iota.rank
    field = G.field
    n = G.nvars
    wr = weil_restrict(base_extend(G, iota))
    E0 = build_extension(G, Cocycle2.zero(G, iota), check=False)
    lie = E0.lie
    nb = lie.base_dim
    nE0 = nb * r + n
    nT = n * (r + 1)

    # tau: x_{h,0} -> x_h ; x_{h,j} -> sum_b L_{b,j} (d_b (x) id) Delta(x_h)
    tau = {}
    g_pos = [nb * r + i for i in range(n)]
    for i, g in enumerate(G.gens):
        names = wr.gen_table[g]
        tau[names[0]] = Poly.var(field, nE0, g_pos[i])
        right_translates = _right_translates(G, lie, g)
        for j in range(r):
            acc = Poly.zero(field, nE0)
            for b in range(nb):
                acc = acc + Poly.var(field, nE0, b * r + j) * right_translates[b].reindex(nE0, g_pos)
            tau[names[1 + j]] = acc

    # sigma: x_h -> x_{h,0} ; L_{b,j} -> I-part of f * alpha(g)^{-1} at pivots
    sigma = {}
    body_map = [Poly.var(field, nT, (r + 1) * i) for i in range(n)]
    split_vals = [
        DualPoly(
            Poly.var(field, nT, (r + 1) * i),
            tuple(Poly.var(field, nT, (r + 1) * i + 1 + j) for j in range(r)),
        )
        for i in range(n)
    ]
    for i, g in enumerate(G.gens):
        sigma[g] = Poly.var(field, nT, (r + 1) * i)
    for b, pg in enumerate(lie.pivot_gens):
        dd = G.comul[pg].body
        for j in range(r):
            acc = Poly.zero(field, nT)
            for mm, c in dd.terms.items():
                m1, m2 = mm[:n], mm[n:]
                left = _split_monomial(m1, split_vals, field, nT, iota.rank)
                s_m2 = _poly_of_monomial(G, m2).subs([G.antipode[h].body for h in G.gens])
                right = s_m2.subs(body_map)
                acc = acc + (left.parts[j] * right).scale(c)
            sigma[f"L{b+1}e{j+1}"] = acc
    return wr, E0, tau, sigma


def _right_translates(G, lie, g):
    """(d_b (x) id) Delta(x_g) in the function ring, one per basis vector."""
    field = G.field
    n = G.nvars
    out = []
    eps = [G.counit_scalar(h) for h in G.gens]
    for vec in lie.vectors:
        acc = Poly.zero(field, n)
        for mm, c in G.comul[g].body.terms.items():
            m1, m2 = mm[:n], mm[n:]
            dval = _derivation_scalar(field, eps, vec, m1, G.gens)
            if dval != field.zero:
                acc = acc + Poly(field, n, {m2: field.mul(c, dval)})
        out.append(acc)
    return out


def _derivation_scalar(field, eps, vec, mono, gens):
    acc = field.zero
    for i, e in enumerate(mono):
        if not e:
            continue
        if eps[i] == field.zero and e > 1:
            continue
        s = field.mul(field.coerce(e), _scalar_pow(field, eps[i], e - 1))
        for j, ej in enumerate(mono):
            if j != i and ej:
                s = field.mul(s, _scalar_pow(field, eps[j], ej))
        acc = field.add(acc, field.mul(s, vec[gens[i]]))
    return acc


def _split_monomial(mono, split_vals, field, nT, rank):
    acc = DualPoly.const(field, nT, rank, 1)
    for i, e in enumerate(mono):
        if e:
            acc = acc * split_vals[i].power(e)
    return acc


def _poly_of_monomial(G, mono):
    return Poly(G.field, G.nvars, {mono: G.field.one})
