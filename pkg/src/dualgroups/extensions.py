"""The cocycle / extension / deformation dictionary.

A 2-cocycle c: G x G -> Lie(G, I) is stored by its values on generators as
a pointed derivation into I (x) (A (x) A); a 1-cochain is the same with a
single tensor slot.  From a cocycle we build:

* the extension E_c = Lie(G, I) x G with multiplication
  (x, g)(x', g') = (x + Ad(g) x' + c(g, g'), g g'), as a Hopf presentation;
* the deformation of G over k[I] with comultiplication
  Delta_c = Delta + (c * Delta), the group law u . v = (1 + c(u, v)) u v.

extract_cocycle inverts deform exactly (convolution against Delta o S), and
the Baer sum / scalar multiple / sum-of-deformations operations act on the
cocycle; the quotient descriptions are certified at point level by the
acceptance tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .hopf import (
    AlgebraMap,
    CounitMap,
    EDerivation,
    HopfPresentation,
    LieModule,
    SumFunctional,
    adjoint_action,
    convolve,
    lie_algebra,
    _scalar_pow,
)
from .linalg import solve
from .poly import DualPoly, IModule, Poly, PresentedAlgebra, grevlex_key


class CocycleError(Exception):
    pass


class NotADeformationError(Exception):
    pass


class NotRigidError(Exception):
    pass


def _lift(v: DualPoly, rank: int) -> DualPoly:
    return v.lift_rank(rank)


# ---------------------------------------------------------------------------
# cochains and cocycles


class Cochain1:
    """Pointed map G -> Lie(G, I): a derivation-valued assignment on generators.

    values[g] is a DualPoly over the group's own ring with zero body; the
    extension to all of A follows the pointed-derivation rule.  Pointedness
    (the map kills the identity point) is enforced at construction.
    """

    def __init__(self, group: HopfPresentation, iota: IModule, values: dict):
        assert group.rank == 0
        self.group = group
        self.iota = iota
        A = group.algebra
        vals = {}
        for g in group.gens:
            v = values[g]
            assert v.nvars == group.nvars and v.rank == iota.rank
            if not v.body.is_zero():
                raise CocycleError("cochain values must lie in I (x) A")
            vals[g] = A.normal_form_dual(v) if A.relations else v
        self.values = vals
        eps = [group.counit_scalar(g) for g in group.gens]
        for g in group.gens:
            for q in self.values[g].parts:
                at_eps = _eval_at_scalars(q, eps, group.field)
                if at_eps != group.field.zero:
                    raise CocycleError("cochain is not pointed (nonzero at the identity)")

    def __add__(self, other):
        assert self.group is other.group and self.iota == other.iota
        return Cochain1(
            self.group, self.iota,
            {g: self.values[g] + other.values[g] for g in self.group.gens},
        )

    def scale(self, c):
        return Cochain1(
            self.group, self.iota,
            {g: v.scale(self.group.field.coerce(c)) for g, v in self.values.items()},
        )

    def __eq__(self, other):
        return (
            isinstance(other, Cochain1)
            and self.group.gens == other.group.gens
            and self.group.field == other.group.field
            and self.iota == other.iota
            and self.values == other.values
        )

    @classmethod
    def zero(cls, group, iota):
        z = DualPoly.zero(group.field, group.nvars, iota.rank)
        return cls(group, iota, {g: z for g in group.gens})


def _eval_at_scalars(p: Poly, scalars, field):
    acc = field.zero
    for m, c in p.terms.items():
        s = c
        for i, e in enumerate(m):
            if e:
                s = field.mul(s, _scalar_pow(field, scalars[i], e))
        acc = field.add(acc, s)
    return acc


class Cocycle2:
    """Map G x G -> Lie(G, I) by generator values in I (x) (A (x) A)."""

    def __init__(self, group: HopfPresentation, iota: IModule, values: dict, normalize_check=True):
        assert group.rank == 0
        self.group = group
        self.iota = iota
        A2 = group.tensor(2)
        vals = {}
        for g in group.gens:
            v = values[g]
            assert v.nvars == 2 * group.nvars and v.rank == iota.rank
            if not v.body.is_zero():
                raise CocycleError("cocycle values must lie in I (x) (A (x) A)")
            vals[g] = A2.normal_form_dual(v) if A2.relations else v
        self.values = vals
        self._normalized = None
        if normalize_check:
            self._normalized = self.is_normalized()

    @classmethod
    def zero(cls, group, iota):
        z = DualPoly.zero(group.field, 2 * group.nvars, iota.rank)
        return cls(group, iota, {g: z for g in group.gens})

    def is_zero(self):
        return all(v.is_zero() for v in self.values.values())

    def is_normalized(self) -> bool:
        """Both unit restrictions vanish: (id (x) eps) C = (eps (x) id) C = 0."""
        group = self.group
        n = group.nvars
        field = group.field
        rank = self.iota.rank
        gen_vars = [DualPoly.of_poly(Poly.var(field, n, i), rank) for i in range(n)]
        eps_consts = [group.counit_const(g, n, 0).lift_rank(rank) for g in group.gens]
        left = gen_vars + eps_consts
        right = eps_consts + gen_vars
        for g in group.gens:
            if not group.algebra.normal_form_dual(self.values[g].subs(left)).is_zero():
                return False
            if not group.algebra.normal_form_dual(self.values[g].subs(right)).is_zero():
                return False
        return True

    def __add__(self, other):
        assert self.group is other.group and self.iota == other.iota
        return Cocycle2(
            self.group, self.iota,
            {g: self.values[g] + other.values[g] for g in self.group.gens},
            normalize_check=False,
        )

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return Cocycle2(
            self.group, self.iota,
            {g: v.scale(self.group.field.coerce(c)) for g, v in self.values.items()},
            normalize_check=False,
        )

    def __eq__(self, other):
        return (
            isinstance(other, Cocycle2)
            and self.group.gens == other.group.gens
            and self.group.field == other.group.field
            and self.iota == other.iota
            and self.values == other.values
        )

    def render(self) -> str:
        group = self.group
        names = [f"{g}(1)" for g in group.gens] + [f"{g}(2)" for g in group.gens]
        return "; ".join(
            f"{g} -> {self.values[g].render(names, self.iota.labels)}" for g in group.gens
        )


def _lie_coordinates(lie: LieModule, values: dict, ring_nvars: int):
    """Coordinates C[b][j] (Polys over a ring) of a derivation-valued map.

    Reads values at the pivot generators and verifies the reconstruction, so
    values outside the span of the Lie basis are rejected.
    """
    group = lie.group
    field = group.field
    r = lie.iota.rank
    coords = [
        [values[pg].parts[j] for j in range(r)]
        for pg in lie.pivot_gens
    ]
    for i, g in enumerate(group.gens):
        for j in range(r):
            acc = Poly.zero(field, ring_nvars)
            for b, vec in enumerate(lie.vectors):
                if vec[g] != field.zero:
                    acc = acc + coords[b][j].scale(vec[g])
            if acc != values[g].parts[j]:
                raise CocycleError(
                    f"derivation values at {g} leave the Lie span of the group"
                )
    return coords


def _lie_reconstruct(lie: LieModule, coords, ring_nvars: int) -> dict:
    group = lie.group
    field = group.field
    r = lie.iota.rank
    zero = Poly.zero(field, ring_nvars)
    out = {}
    for g in group.gens:
        parts = []
        for j in range(r):
            acc = zero
            for b, vec in enumerate(lie.vectors):
                if vec[g] != field.zero:
                    acc = acc + coords[b][j].scale(vec[g])
            parts.append(acc)
        out[g] = DualPoly(zero, parts)
    return out


class _AdCache:
    """Per-group adjoint data shared by the cocycle machinery."""

    _store = {}

    @classmethod
    def get(cls, group: HopfPresentation, iota: IModule):
        key = (id(group), iota.labels)
        if key not in cls._store:
            lie = lie_algebra(group, iota)
            _, matrix = adjoint_action(group, lie)
            cls._store[key] = (lie, matrix)
        return cls._store[key]


def check_cocycle(c: Cocycle2) -> bool:
    """The 2-cocycle identity on universal points:
    c(g, g') + c(g g', g'') = Ad(g) c(g', g'') + c(g, g' g'')."""
    group = c.group
    field = group.field
    n = group.nvars
    r = c.iota.rank
    # derivation validity: values must kill the relations
    eps = [group.counit_scalar(g) for g in group.gens]
    A2 = group.tensor(2)
    for rel in group.algebra.relations:
        acc = DualPoly.zero(field, 2 * n, r)
        for m, cf in rel.body.terms.items():
            for i, e in enumerate(m):
                if not e:
                    continue
                if eps[i] == field.zero and e > 1:
                    continue
                s = field.mul(field.coerce(e), _scalar_pow(field, eps[i], e - 1))
                for jj, ej in enumerate(m):
                    if jj != i and ej:
                        s = field.mul(s, _scalar_pow(field, eps[jj], ej))
                if s != field.zero:
                    acc = acc + c.values[group.gens[i]].scale(field.mul(cf, s))
        if not A2.normal_form_dual(acc).is_zero():
            return False

    try:
        lie, matrix = _AdCache.get(group, c.iota)
        coords = _lie_coordinates(lie, c.values, 2 * n)
    except CocycleError:
        return False

    A3 = group.tensor(3)
    lift_var = lambda i: DualPoly.of_poly(Poly.var(field, 3 * n, i), r)
    comul_lift = [_lift(group.comul[g], r) for g in group.gens]

    # c(g, g'): slots (1, 2)
    t1 = {g: c.values[g].embed(3 * n, 0) for g in group.gens}
    # c(g g', g''): first argument through Delta
    vals_12 = [v.embed(3 * n, 0) for v in comul_lift] + [lift_var(2 * n + i) for i in range(n)]
    t2 = {g: c.values[g].subs(vals_12) for g in group.gens}
    # c(g, g' g''): second argument through Delta
    vals_23 = [lift_var(i) for i in range(n)] + [v.embed(3 * n, n) for v in comul_lift]
    t4 = {g: c.values[g].subs(vals_23) for g in group.gens}
    # Ad(g) c(g', g''): coordinates in slots (2, 3), matrix at the slot-1 point
    c23 = [[q.embed(3 * n, n) for q in row] for row in coords]
    m1 = [[e.embed(3 * n, 0) for e in row] for row in matrix]
    nb = lie.base_dim
    ad_coords = [
        [
            _sum_polys(
                [m1[b][bp] * c23[bp][j] for bp in range(nb)],
                field, 3 * n,
            )
            for j in range(r)
        ]
        for b in range(nb)
    ]
    t3 = _lie_reconstruct(lie, ad_coords, 3 * n)

    for g in group.gens:
        lhs = A3.normal_form_dual(t1[g] + t2[g])
        rhs = A3.normal_form_dual(t3[g] + t4[g])
        if lhs != rhs:
            return False
    return True


def _sum_polys(polys, field, nvars):
    acc = Poly.zero(field, nvars)
    for p in polys:
        acc = acc + p
    return acc


def coboundary(phi: Cochain1) -> Cocycle2:
    """d phi (g, g') = phi(g g') - phi(g) - Ad(g) phi(g')."""
    group = phi.group
    field = group.field
    n = group.nvars
    r = phi.iota.rank
    lie, matrix = _AdCache.get(group, phi.iota)
    coords = _lie_coordinates(lie, phi.values, n)

    comul_lift = [_lift(group.comul[g], r) for g in group.gens]
    # phi(g g'): push the part entries through Delta
    t_prod = {
        g: phi.values[g].subs(comul_lift)
        for g in group.gens
    }
    t_g = {g: phi.values[g].embed(2 * n, 0) for g in group.gens}
    coords2 = [[q.embed(2 * n, n) for q in row] for row in coords]
    m1 = [[e.embed(2 * n, 0) for e in row] for row in matrix]
    nb = lie.base_dim
    ad_coords = [
        [
            _sum_polys([m1[b][bp] * coords2[bp][j] for bp in range(nb)], field, 2 * n)
            for j in range(r)
        ]
        for b in range(nb)
    ]
    t_ad = _lie_reconstruct(lie, ad_coords, 2 * n)
    values = {
        g: t_prod[g] - t_g[g] - t_ad[g]
        for g in group.gens
    }
    return Cocycle2(group, phi.iota, values)


# ---------------------------------------------------------------------------
# extensions E_c


@dataclass
class ExtensionObj:
    """Extension 1 -> Lie(G, I) -> E_c -> G -> 1 realized on Lie x G."""

    base: HopfPresentation
    iota: IModule
    cocycle: Cocycle2
    lie: LieModule
    admat: list
    hopf: HopfPresentation
    lie_gens: tuple

    @property
    def field(self):
        return self.base.field

    def section_values(self) -> dict:
        """Function-ring values of the canonical section g -> (0, g)."""
        field = self.field
        nG = self.base.nvars
        out = {}
        for i, lg in enumerate(self.lie_gens):
            out[lg] = Poly.zero(field, nG)
        for i, g in enumerate(self.base.gens):
            out[g] = Poly.var(field, nG, i)
        return out


def build_extension(G: HopfPresentation, c: Cocycle2, check=True) -> ExtensionObj:
    """Hopf presentation of E_c from a normalized 2-cocycle."""
    if check and not check_cocycle(c):
        raise CocycleError("not a 2-cocycle")
    if check and not c.is_normalized():
        raise CocycleError("cocycle is not normalized")
    field = G.field
    n = G.nvars
    r = c.iota.rank
    lie, matrix = _AdCache.get(G, c.iota)
    coords = _lie_coordinates(lie, c.values, 2 * n)
    nb = lie.base_dim
    nL = nb * r
    nE = nL + n

    lie_gens = tuple(f"L{b+1}e{j+1}" for b in range(nb) for j in range(r))
    assert not set(lie_gens) & set(G.gens)
    gens = list(lie_gens) + list(G.gens)

    g_ix = lambda i: nL + i            # position of G generator i in E
    rels = [DualPoly.of_poly(rl.body.reindex(nE, [g_ix(i) for i in range(n)]), 0)
            for rl in G.algebra.relations]
    rules = [DualPoly.of_poly(rl.body.reindex(nE, [g_ix(i) for i in range(n)]), 0)
             for rl in G.algebra._rules]
    algebra = PresentedAlgebra(
        field, gens, rels,
        strategy="rules" if rels else "free",
        rules=rules or None,
    )

    # tensor square variable layout: [L(1), G(1), L(2), G(2)]
    slot1_g = [g_ix(i) for i in range(n)]
    slot2_g = [nE + g_ix(i) for i in range(n)]
    map_gg = slot1_g + slot2_g         # A tensor A -> E tensor E
    comul = {}
    counit = {}
    antipode = {}
    for i, g in enumerate(G.gens):
        comul[g] = DualPoly.of_poly(G.comul[g].body.reindex(2 * nE, map_gg), 0)
        counit[g] = DualPoly.of_poly(G.counit[g].body, 0)
        antipode[g] = DualPoly.of_poly(G.antipode[g].body.reindex(nE, slot1_g), 0)

    s_vals = [G.antipode[h].body for h in G.gens]
    for b in range(nb):
        m_s = [matrix[b][bp].subs(s_vals) for bp in range(nb)]
        for j in range(r):
            ell_1 = Poly.var(field, 2 * nE, b * r + j)
            acc = ell_1
            for bp in range(nb):
                acc = acc + matrix[b][bp].reindex(2 * nE, slot1_g) * Poly.var(
                    field, 2 * nE, nE + bp * r + j
                )
            acc = acc + coords[b][j].reindex(2 * nE, map_gg)
            comul[lie_gens[b * r + j]] = DualPoly.of_poly(acc, 0)
            counit[lie_gens[b * r + j]] = DualPoly.of_poly(Poly.const(field, 0, 0), 0)
            # S(l) = -sum M[b][bp] o S * l_bp - c(S(g), g)
            s_acc = Poly.zero(field, nE)
            for bp in range(nb):
                s_acc = s_acc - m_s[bp].reindex(nE, slot1_g) * Poly.var(field, nE, bp * r + j)
            cs = coords[b][j].subs(
                [s.reindex(nE, slot1_g) for s in s_vals]
                + [Poly.var(field, nE, g_ix(i)) for i in range(n)]
            )
            antipode[lie_gens[b * r + j]] = DualPoly.of_poly(s_acc - cs, 0)

    hopf = HopfPresentation(f"E[{G.name}]", algebra, comul, counit, antipode, smooth=G.smooth)
    return ExtensionObj(G, c.iota, c, lie, matrix, hopf, lie_gens)


def fibre_product_over_base(E1: ExtensionObj, E2: ExtensionObj) -> HopfPresentation:
    """E_c1 x_G E_c2 as a group presentation on Lie + Lie + G coordinates."""
    assert E1.base is E2.base and E1.iota == E2.iota
    G = E1.base
    field = G.field
    n = G.nvars
    r = E1.iota.rank
    lie = E1.lie
    matrix = E1.admat
    nb = lie.base_dim
    nL = nb * r
    nE = 2 * nL + n
    gens = [f"A{x}" for x in E1.lie_gens] + [f"B{x}" for x in E2.lie_gens] + list(G.gens)
    g_ix = lambda i: 2 * nL + i
    slot1_g = [g_ix(i) for i in range(n)]
    slot2_g = [nE + g_ix(i) for i in range(n)]
    map_gg = slot1_g + slot2_g
    rels = [DualPoly.of_poly(rl.body.reindex(nE, slot1_g), 0) for rl in G.algebra.relations]
    rules = [DualPoly.of_poly(rl.body.reindex(nE, slot1_g), 0) for rl in G.algebra._rules]
    algebra = PresentedAlgebra(field, gens, rels, strategy="rules" if rels else "free",
                               rules=rules or None)
    comul = {}
    counit = {}
    antipode = {}
    for i, g in enumerate(G.gens):
        comul[g] = DualPoly.of_poly(G.comul[g].body.reindex(2 * nE, map_gg), 0)
        counit[g] = DualPoly.of_poly(G.counit[g].body, 0)
        antipode[g] = DualPoly.of_poly(G.antipode[g].body.reindex(nE, slot1_g), 0)
    s_vals = [G.antipode[h].body for h in G.gens]
    for ext, offset in ((E1, 0), (E2, nL)):
        coords = _lie_coordinates(lie, ext.cocycle.values, 2 * n)
        for b in range(nb):
            m_s = [matrix[b][bp].subs(s_vals) for bp in range(nb)]
            for j in range(r):
                pos = offset + b * r + j
                acc = Poly.var(field, 2 * nE, pos)
                for bp in range(nb):
                    acc = acc + matrix[b][bp].reindex(2 * nE, slot1_g) * Poly.var(
                        field, 2 * nE, nE + offset + bp * r + j
                    )
                acc = acc + coords[b][j].reindex(2 * nE, map_gg)
                comul[gens[pos]] = DualPoly.of_poly(acc, 0)
                counit[gens[pos]] = DualPoly.of_poly(Poly.const(field, 0, 0), 0)
                s_acc = Poly.zero(field, nE)
                for bp in range(nb):
                    s_acc = s_acc - m_s[bp].reindex(nE, slot1_g) * Poly.var(field, nE, offset + bp * r + j)
                cs = coords[b][j].subs(
                    [s.reindex(nE, slot1_g) for s in s_vals]
                    + [Poly.var(field, nE, g_ix(i)) for i in range(n)]
                )
                antipode[gens[pos]] = DualPoly.of_poly(s_acc - cs, 0)
    return HopfPresentation(f"E1xE2[{G.name}]", algebra, comul, counit, antipode)


# ---------------------------------------------------------------------------
# deformations


@dataclass
class Deformation:
    """Group scheme over k[I] on the same generators as its special fibre G."""

    base: HopfPresentation
    iota: IModule
    hopf: HopfPresentation
    cocycle: Cocycle2 | None
    rigidification: dict | None

    @property
    def field(self):
        return self.base.field


def deform(G: HopfPresentation, c: Cocycle2, check=True) -> Deformation:
    """The deformation with law u . v = (1 + c(u, v)) u v over k[I]."""
    if check and not check_cocycle(c):
        raise CocycleError("not a 2-cocycle: the deformed law would not be associative")
    if check and not c.is_normalized():
        raise CocycleError("cocycle is not normalized")
    assert G.rank == 0
    field = G.field
    n = G.nvars
    r = c.iota.rank

    gamma = EDerivation(G, [c.values[g] for g in G.gens])
    delta_map = AlgebraMap(G, [_lift(G.comul[g], r) for g in G.gens])
    correction = convolve(G, [gamma, delta_map])

    algebra = PresentedAlgebra(
        G.field, G.gens,
        [DualPoly.of_poly(rl.body, r) for rl in G.algebra.relations],
        strategy=G.algebra.strategy if G.algebra.strategy != "groebner" else "rules",
        iota=c.iota,
        rules=[DualPoly.of_poly(rl.body, r) for rl in G.algebra._rules] or None,
    )
    tensor2 = algebra.tensor_power(2)
    comul = {
        g: tensor2.normal_form_dual(_lift(G.comul[g], r) + correction[g])
        for g in G.gens
    }
    counit = {g: _lift(G.counit[g], r) for g in G.gens}

    # S_c = u^{-1} (1 - c(u, u^{-1})): convolution of S with e - (id (x) S) c
    s_vals = [DualPoly.of_poly(G.antipode[g].body, r) for g in G.gens]
    id_vals = [DualPoly.of_poly(Poly.var(field, n, i), r) for i in range(n)]
    gamma_pair_vals = [
        c.values[g].subs(id_vals + s_vals).scale(field.neg(field.one))
        for g in G.gens
    ]
    right = SumFunctional(CounitMap(G, n, r), EDerivation(G, gamma_pair_vals))
    s_map = AlgebraMap(G, s_vals)
    antipode_raw = convolve(G, [s_map, right])
    antipode = {g: algebra.normal_form_dual(antipode_raw[g]) for g in G.gens}

    hopf = HopfPresentation(f"{G.name}[c]", algebra, comul, counit, antipode, smooth=G.smooth)
    rigid = {g: DualPoly.of_poly(G.var(g), r) for g in G.gens}
    return Deformation(G, c.iota, hopf, c, rigid)


def trivial_deformation(G: HopfPresentation, iota: IModule) -> Deformation:
    return deform(G, Cocycle2.zero(G, iota), check=False)


def _invert_rigidification(defm: Deformation, sigma: dict) -> dict:
    """(sigma)^{-1} on generators: body must be the identity mod relations."""
    G = defm.base
    A = defm.hopf.algebra
    out = {}
    for i, g in enumerate(G.gens):
        v = A.normal_form_dual(sigma[g])
        if v.body != A.normal_form_dual(DualPoly.of_poly(G.var(g), defm.iota.rank)).body:
            raise NotRigidError("rigidification does not lift the identity")
        out[g] = DualPoly(v.body, tuple(-q for q in v.parts))
    return out


def extract_cocycle(defm: Deformation, rigidification: dict | None = None) -> Cocycle2:
    """The cocycle with deform(G, c) = defm, via the chosen rigidification.

    C = (Delta_c * (Delta o S)) - e computed in the group algebra of G over
    (A (x) A)[I]; a non-canonical rigidification first transports the
    deformed structure onto h^* G.
    """
    G = defm.base
    field = G.field
    n = G.nvars
    r = defm.iota.rank
    sigma = rigidification if rigidification is not None else defm.rigidification
    if sigma is None:
        raise NotRigidError(
            "no rigidification supplied; the group may not be rigid "
            "(the Frobenius-twist kernel is the standard counterexample)"
        )
    # sigma(1) = 1
    counit_vals = [G.counit_const(g, 0, r) for g in G.gens]
    for g in G.gens:
        if sigma[g].subs(counit_vals) != G.counit_const(g, 0, r):
            raise NotRigidError("rigidification must preserve the unit")

    comul_c = defm.hopf.comul
    canonical = all(
        sigma[g] == DualPoly.of_poly(G.var(g), r) for g in G.gens
    )
    if not canonical:
        # transported structure on h^* G: (sigma (x) sigma) o Delta_c o sigma^{-1}
        tau = _invert_rigidification(defm, sigma)
        sigma_slot1 = [
            sigma[g].subs([DualPoly.of_poly(Poly.var(field, 2 * n, i), r) for i in range(n)])
            for g in G.gens
        ]
        sigma_slot2 = [
            sigma[g].subs([DualPoly.of_poly(Poly.var(field, 2 * n, n + i), r) for i in range(n)])
            for g in G.gens
        ]
        tensor2 = defm.hopf.tensor(2)
        comul_c = {}
        for g in G.gens:
            inner = tau[g].subs([defm.hopf.comul[h] for h in G.gens])
            comul_c[g] = tensor2.normal_form_dual(inner.subs(sigma_slot1 + sigma_slot2))

    delta_c_map = AlgebraMap(G, [comul_c[g] for g in G.gens])
    s_then_delta = AlgebraMap(
        G,
        [
            DualPoly.of_poly(G.antipode[g].body, r).subs(
                [_lift(G.comul[h], r) for h in G.gens]
            )
            for g in G.gens
        ],
    )
    conv = convolve(G, [delta_c_map, s_then_delta])
    tensor2G = G.tensor(2)
    values = {}
    for g in G.gens:
        v = conv[g]
        expected_body = Poly.const(field, 2 * n, G.counit_scalar(g))
        diff = v - DualPoly.of_poly(expected_body, r)
        if tensor2G.relations:
            diff = tensor2G.normal_form_dual(diff)
        if not diff.body.is_zero():
            raise NotADeformationError(
                "law minus the base law is not an infinitesimal left translation"
            )
        values[g] = diff
    return Cocycle2(G, defm.iota, values)


def weil_extend(E: ExtensionObj) -> Deformation:
    """Quasi-inverse of restriction of scalars, realized on the cocycle."""
    return deform(E.base, E.cocycle, check=False)


# ---------------------------------------------------------------------------
# module-stack operations


def baer_sum(E1: ExtensionObj, E2: ExtensionObj) -> ExtensionObj:
    if E1.base is not E2.base or E1.iota != E2.iota:
        raise CocycleError("Baer sum needs extensions of the same group by the same module")
    return build_extension(E1.base, E1.cocycle + E2.cocycle, check=False)


def scalar_mul(lam, E: ExtensionObj) -> ExtensionObj:
    return build_extension(E.base, E.cocycle.scale(lam), check=False)


def sum_deformations(d1: Deformation, d2: Deformation) -> Deformation:
    if d1.base is not d2.base or d1.iota != d2.iota:
        raise CocycleError("sum of deformations needs a shared base")
    if d1.cocycle is None or d2.cocycle is None:
        raise CocycleError("deformations lack cocycle data; extract first")
    return deform(d1.base, d1.cocycle + d2.cocycle, check=False)


def scale_deformation(lam, d: Deformation) -> Deformation:
    if d.cocycle is None:
        raise CocycleError("deformation lacks cocycle data; extract first")
    return deform(d.base, d.cocycle.scale(lam), check=False)


# ---------------------------------------------------------------------------
# morphisms of extensions


@dataclass
class ExtensionMorphism:
    """f: E -> E' over the identity of G, f(x, g) = (x + phi(g), g)."""

    src: ExtensionObj
    dst: ExtensionObj
    cochain: Cochain1
    values: dict   # function-ring map O(E') -> O(E) on generators

    def compose(self, other: "ExtensionMorphism") -> "ExtensionMorphism":
        """self o other: E'' <- E' <- E pointwise (other first)."""
        assert other.dst is self.src or other.dst.hopf is self.src.hopf
        return morphism_from_cochain(self.cochain + other.cochain, other.src, self.dst)


def morphism_from_cochain(phi: Cochain1, E: ExtensionObj, Eprime: ExtensionObj) -> ExtensionMorphism:
    """The extension morphism E -> E' with f(x, g) = (x + phi(g), g).

    Requires d phi = c' - c exactly.
    """
    if coboundary(phi) != Eprime.cocycle - E.cocycle:
        raise CocycleError("coboundary of the cochain does not match c' - c")
    G = E.base
    field = G.field
    n = G.nvars
    r = E.iota.rank
    lie = E.lie
    nb = lie.base_dim
    nE = nb * r + n
    coords = _lie_coordinates(lie, phi.values, n)
    g_pos = [nb * r + i for i in range(n)]
    values = {}
    for b in range(nb):
        for j in range(r):
            values[Eprime.lie_gens[b * r + j]] = DualPoly.of_poly(
                Poly.var(field, nE, b * r + j) + coords[b][j].reindex(nE, g_pos), 0
            )
    for i, g in enumerate(G.gens):
        values[g] = DualPoly.of_poly(Poly.var(field, nE, g_pos[i]), 0)
    return ExtensionMorphism(E, Eprime, phi, values)


# ---------------------------------------------------------------------------
# cohomology at bounded degree


def cohomologous(c1: Cocycle2, c2: Cocycle2, degree_bound: int) -> Cochain1 | None:
    """Search phi with d phi = c2 - c1, coordinates of degree <= degree_bound.

    A failed search only means "not cohomologous within the bound".
    """
    group = c1.group
    field = group.field
    n = group.nvars
    r = c1.iota.rank
    lie, _ = _AdCache.get(group, c1.iota)
    nb = lie.base_dim
    target = c2 - c1

    monomials = group.algebra.standard_monomials(max_degree=degree_bound)
    unknowns = []
    for b in range(nb):
        for j in range(r):
            for m in monomials:
                unknowns.append((b, j, m))

    columns = []
    eps = [group.counit_scalar(g) for g in group.gens]
    for (b, j, m) in unknowns:
        coords = [[Poly.zero(field, n) for _ in range(r)] for _ in range(nb)]
        coords[b][j] = Poly(field, n, {m: field.one})
        vals = _lie_reconstruct(lie, coords, n)
        # pointedness correction: subtract the value at the identity
        const = _eval_at_scalars(coords[b][j], eps, field)
        if const != field.zero:
            coords[b][j] = coords[b][j] - Poly.const(field, n, const)
            vals = _lie_reconstruct(lie, coords, n)
        phi = Cochain1(group, c1.iota, vals)
        columns.append(coboundary(phi))

    # assemble the linear system over the monomials appearing anywhere
    keys = set()
    for col in columns + [target]:
        for g in group.gens:
            for j in range(r):
                keys.update((g, j, mm) for mm in col.values[g].parts[j].terms)
    keys = sorted(keys, key=lambda t: (t[0], t[1], grevlex_key(t[2])))
    rows = []
    rhs = []
    for key in keys:
        g, j, mm = key
        rows.append([col.values[g].parts[j].terms.get(mm, field.zero) for col in columns])
        rhs.append(target.values[g].parts[j].terms.get(mm, field.zero))
    sol = solve(rows, rhs, field)
    if sol is None:
        return None
    coords = [[Poly.zero(field, n) for _ in range(r)] for _ in range(nb)]
    for coef, (b, j, m) in zip(sol, unknowns):
        if coef != field.zero:
            coords[b][j] = coords[b][j] + Poly(field, n, {m: coef})
    for b in range(nb):
        for j in range(r):
            const = _eval_at_scalars(coords[b][j], eps, field)
            if const != field.zero:
                coords[b][j] = coords[b][j] - Poly.const(field, n, const)
    return Cochain1(group, c1.iota, _lie_reconstruct(lie, coords, n))


# ---------------------------------------------------------------------------
# the exponential-graph subgroups K_lambda


def k_lambda_member(E: ExtensionObj, lie_values: dict, point_values: dict, lam,
                    target=None) -> bool:
    """Membership of ((x, g)) in K_lambda(E_c): g = exp(lambda x).

    lie_values: generator -> tuple of target-ring elements (a point of
    h^* Lie(G, I)); point_values: generator -> target-ring element (a point
    of h^* G over the same k[I]-algebra).
    """
    from .hopf import LiePoint, exp_point

    G = E.base
    x = LiePoint(G, E.iota, lie_values)
    lam = G.field.coerce(lam)
    expx = exp_point(G, x.scale(lam), target)
    for g in G.gens:
        diff = expx.values[g] - point_values[g]
        if target is not None:
            diff = target.normal_form_dual(diff)
        if not diff.is_zero():
            return False
    return True
