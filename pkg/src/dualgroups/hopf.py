"""Finitely presented Hopf algebras as affine group schemes.

A HopfPresentation is a PresentedAlgebra together with comultiplication,
counit and antipode given on generators (DualPoly values, so presentations
over k[I] are the rank > 0 case of the same structure).  On top of it:

* axiom verification as normal-form identities (verify_hopf),
* the Lie algebra of pointed derivations and its fixed ordered basis,
* the convolution calculus of linear functionals on the function ring,
  which drives the adjoint action, the Lie bracket and the exponential.

Functionals are k-linear maps A -> R specified by their values on
normal-form monomials; convolution is (f_1 x ... x f_m) o Delta^(m-1).
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import Field
from .linalg import nullspace, solve
from .poly import (
    TRIVIAL_I,
    DualPoly,
    IModule,
    Poly,
    PresentedAlgebra,
    grevlex_key,
)


class HopfPresentation:
    """Affine group scheme given by generators, relations and structure maps."""

    __slots__ = ("name", "algebra", "comul", "counit", "antipode", "smooth", "_cache")

    def __init__(self, name, algebra, comul, counit, antipode, smooth=None):
        self.name = name
        self.algebra = algebra
        self.comul = dict(comul)
        self.counit = dict(counit)
        self.antipode = dict(antipode)
        self.smooth = smooth
        self._cache = {}
        rank = algebra.iota.rank
        for g in algebra.gens:
            assert self.comul[g].nvars == 2 * self.nvars and self.comul[g].rank == rank
            assert self.counit[g].nvars == 0 and self.counit[g].rank == rank
            assert self.antipode[g].nvars == self.nvars and self.antipode[g].rank == rank

    # -- shorthands ------------------------------------------------------

    @property
    def gens(self):
        return self.algebra.gens

    @property
    def field(self) -> Field:
        return self.algebra.field

    @property
    def iota(self) -> IModule:
        return self.algebra.iota

    @property
    def rank(self):
        return self.algebra.iota.rank

    @property
    def nvars(self):
        return len(self.algebra.gens)

    def var(self, g):
        return self.algebra.var(g)

    def counit_scalar(self, g):
        """Body constant of the counit at a generator."""
        return self.counit[g].body.constant_term()

    def counit_const(self, g, nvars, rank) -> DualPoly:
        """Counit value embedded as a constant of a target ring."""
        c = self.counit[g]
        body = Poly.const(self.field, nvars, c.body.constant_term())
        parts = [Poly.const(self.field, nvars, q.constant_term()) for q in c.parts]
        parts += [Poly.zero(self.field, nvars)] * (rank - len(parts))
        return DualPoly(body, parts)

    def tensor(self, m) -> PresentedAlgebra:
        return self.algebra.tensor_power(m)

    def iterated_comul(self, m: int) -> dict:
        """Delta^(m-1) on generators, normal form in the m-fold tensor ring."""
        key = ("comul", m)
        if key in self._cache:
            return self._cache[key]
        n = self.nvars
        if m == 1:
            out = {
                g: DualPoly.of_poly(self.var(g), self.rank)
                for g in self.gens
            }
        else:
            prev = self.iterated_comul(m - 1)
            total = m * n
            values = [self.comul[g].embed(total, 0) for g in self.gens]
            for j in range(n, (m - 1) * n):
                values.append(
                    DualPoly.of_poly(Poly.var(self.field, total, j + n), self.rank)
                )
            tensor = self.tensor(m)
            out = {g: tensor.normal_form_dual(prev[g].subs(values)) for g in self.gens}
        self._cache[key] = out
        return out

    def reduce(self, p):
        return self.algebra.normal_form(p)

    def render(self, p) -> str:
        return self.algebra.render(p)

    def __repr__(self):
        return f"HopfPresentation({self.name})"


@dataclass
class HopfReport:
    coassoc: bool
    counit: bool
    antipode: bool
    relations_preserved: bool

    @property
    def ok(self):
        return self.coassoc and self.counit and self.antipode and self.relations_preserved


def verify_hopf(H: HopfPresentation) -> HopfReport:
    """Check the Hopf axioms as normal-form identities on every generator."""
    n = H.nvars
    field = H.field
    rank = H.rank
    A = H.algebra
    A2 = H.tensor(2)
    A3 = H.tensor(3)

    gen_vars = [DualPoly.of_poly(Poly.var(field, n, i), rank) for i in range(n)]
    comul_vals = [H.comul[g] for g in H.gens]
    counit_vals = [H.counit[g] for g in H.gens]
    antipode_vals = [H.antipode[g] for g in H.gens]

    relations_ok = True
    for rel in A.relations:
        if not A2.normal_form_dual(rel.subs(comul_vals)).is_zero():
            relations_ok = False
        if not rel.subs(counit_vals).is_zero():
            relations_ok = False
        if not A.normal_form_dual(rel.subs(antipode_vals)).is_zero():
            relations_ok = False

    coassoc_ok = True
    left_vals = [H.comul[g].embed(3 * n, 0) for g in H.gens]
    left_vals += [DualPoly.of_poly(Poly.var(field, 3 * n, 2 * n + i), rank) for i in range(n)]
    right_vals = [DualPoly.of_poly(Poly.var(field, 3 * n, i), rank) for i in range(n)]
    right_vals += [H.comul[g].embed(3 * n, n) for g in H.gens]
    for g in H.gens:
        lhs = A3.normal_form_dual(H.comul[g].subs(left_vals))
        rhs = A3.normal_form_dual(H.comul[g].subs(right_vals))
        if lhs != rhs:
            coassoc_ok = False

    counit_ok = True
    eps_left = [H.counit_const(g, n, rank) for g in H.gens] + gen_vars
    eps_right = gen_vars + [H.counit_const(g, n, rank) for g in H.gens]
    for g in H.gens:
        x = A.normal_form_dual(DualPoly.of_poly(H.var(g), rank))
        if A.normal_form_dual(H.comul[g].subs(eps_left)) != x:
            counit_ok = False
        if A.normal_form_dual(H.comul[g].subs(eps_right)) != x:
            counit_ok = False

    antipode_ok = True
    s_left = antipode_vals + gen_vars
    s_right = gen_vars + antipode_vals
    for g in H.gens:
        target = H.counit_const(g, n, rank)
        if A.normal_form_dual(H.comul[g].subs(s_left)) != A.normal_form_dual(target):
            antipode_ok = False
        if A.normal_form_dual(H.comul[g].subs(s_right)) != A.normal_form_dual(target):
            antipode_ok = False

    return HopfReport(coassoc_ok, counit_ok, antipode_ok, relations_ok)


# ---------------------------------------------------------------------------
# linear functionals on the function ring, and convolution


class Functional:
    """k-linear map A -> R given by values on monomials of the free ring."""

    def on_monomial(self, exps) -> DualPoly:
        raise NotImplementedError


class AlgebraMap(Functional):
    """Multiplicative functional: an R-point of Spec A, given on generators."""

    def __init__(self, group: HopfPresentation, values):
        self.group = group
        self.values = list(values)
        self._memo = {}
        self._pow = [dict() for _ in values]

    def _power(self, i, e):
        cache = self._pow[i]
        if e not in cache:
            cache[e] = self.values[i].power(e)
        return cache[e]

    def on_monomial(self, exps):
        v = self._memo.get(exps)
        if v is not None:
            return v
        sample = self.values[0]
        out = DualPoly.const(sample.field, sample.nvars, sample.rank, 1)
        for i, e in enumerate(exps):
            if e:
                out = out * self._power(i, e)
        self._memo[exps] = out
        return out


class CounitMap(AlgebraMap):
    """The identity of the group as an R-point."""

    def __init__(self, group, nvars, rank):
        values = [group.counit_const(g, nvars, rank) for g in group.gens]
        super().__init__(group, values)


class EDerivation(Functional):
    """Pointed derivation at the counit: d(ab) = eps(a) d(b) + eps(b) d(a)."""

    def __init__(self, group: HopfPresentation, values):
        self.group = group
        self.values = list(values)
        self.eps = [group.counit_scalar(g) for g in group.gens]
        self._memo = {}

    def on_monomial(self, exps):
        v = self._memo.get(exps)
        if v is not None:
            return v
        sample = self.values[0]
        field = sample.field
        out = DualPoly.zero(field, sample.nvars, sample.rank)
        for i, e in enumerate(exps):
            if not e:
                continue
            if self.eps[i] == field.zero and e > 1:
                continue
            s = field.coerce(e)
            if e > 1:
                s = field.mul(s, _scalar_pow(field, self.eps[i], e - 1))
            for j, ej in enumerate(exps):
                if j != i and ej:
                    s = field.mul(s, _scalar_pow(field, self.eps[j], ej))
                    if s == field.zero:
                        break
            if s == field.zero:
                continue
            out = out + self.values[i].scale(s)
        self._memo[exps] = out
        return out


def _scalar_pow(field, a, e):
    out = field.one
    for _ in range(e):
        out = field.mul(out, a)
        if out == field.zero:
            return out
    return out


class SumFunctional(Functional):
    def __init__(self, *parts):
        self.parts = parts

    def on_monomial(self, exps):
        out = self.parts[0].on_monomial(exps)
        for f in self.parts[1:]:
            out = out + f.on_monomial(exps)
        return out


def convolve(group: HopfPresentation, funcs) -> dict:
    """(f_1 * ... * f_m)(g) for every generator g, via the Sweedler expansion.

    The target ring of all functionals must agree; the result is a dict of
    DualPoly values per generator (unreduced in the target).
    """
    m = len(funcs)
    assert m >= 1
    if m == 1:
        return {g: funcs[0].on_monomial(_unit_mono(group.nvars, group.gens.index(g)))
                for g in group.gens}
    expanded = group.iterated_comul(m)
    n = group.nvars
    out = {}
    for g in group.gens:
        dp = expanded[g]
        sample = funcs[0].on_monomial((0,) * n)
        total = DualPoly.zero(sample.field, sample.nvars, sample.rank)
        for m_exp, c in dp.body.terms.items():
            total = total + _paired(funcs, m_exp, n).scale(c)
        for j, part in enumerate(dp.parts):
            for m_exp, c in part.terms.items():
                total = total + _paired(funcs, m_exp, n).scale(c).eps_mul(j)
        out[g] = total
    return out


def _paired(funcs, exps, n):
    out = None
    for i, f in enumerate(funcs):
        block = exps[i * n:(i + 1) * n]
        v = f.on_monomial(block)
        out = v if out is None else out * v
    return out


def _unit_mono(n, i):
    e = [0] * n
    e[i] = 1
    return tuple(e)


# ---------------------------------------------------------------------------
# points


class InvalidPointError(Exception):
    pass


class PointValue:
    """R-point of a presented group: generator values in a target ring."""

    __slots__ = ("group", "values", "target")

    def __init__(self, group: HopfPresentation, values: dict, target: PresentedAlgebra | None = None):
        self.group = group
        self.values = dict(values)
        self.target = target

    def _value_list(self):
        return [self.values[g] for g in self.group.gens]

    def reduce(self):
        if self.target is None:
            return self
        return PointValue(
            self.group,
            {g: self.target.normal_form_dual(v) for g, v in self.values.items()},
            self.target,
        )

    def is_valid(self) -> bool:
        vals = self._value_list()
        for rel in self.group.algebra.relations:
            image = rel.subs(vals)
            if self.target is not None:
                image = self.target.normal_form_dual(image)
            if not image.is_zero():
                return False
        return True

    def mul(self, other: "PointValue") -> "PointValue":
        assert self.group is other.group
        prod = convolve(self.group, [AlgebraMap(self.group, self._value_list()),
                                     AlgebraMap(self.group, other._value_list())])
        return PointValue(self.group, prod, self.target).reduce()

    def inverse(self) -> "PointValue":
        vals = self._value_list()
        out = {g: self.group.antipode[g].subs(vals) for g in self.group.gens}
        return PointValue(self.group, out, self.target).reduce()

    def __eq__(self, other):
        if not isinstance(other, PointValue) or self.group is not other.group:
            return False
        a, b = self.reduce(), other.reduce()
        return all(a.values[g] == b.values[g] for g in self.group.gens)

    def __repr__(self):
        pretty = {g: repr(v) for g, v in self.values.items()}
        return f"PointValue({pretty})"


def identity_point(group: HopfPresentation, nvars, rank, target=None) -> PointValue:
    return PointValue(
        group,
        {g: group.counit_const(g, nvars, rank) for g in group.gens},
        target,
    )


def universal_point(group: HopfPresentation, nvars=None, rank=None, offset=0, target=None) -> PointValue:
    """The identity map A -> A (optionally embedded in a larger dual ring)."""
    n = group.nvars
    nvars = n if nvars is None else nvars
    rank = group.rank if rank is None else rank
    vals = {
        g: DualPoly.of_poly(Poly.var(group.field, nvars, offset + i), rank)
        for i, g in enumerate(group.gens)
    }
    return PointValue(group, vals, target)


# ---------------------------------------------------------------------------
# Lie algebra


@dataclass
class LieModule:
    """Pointed derivations annihilating the relations, with a pinned basis.

    vectors[b] maps generators to field scalars; the basis is in reduced
    echelon form with vectors[b] reading 1 at its pivot generator and 0 at
    the other pivots, so coordinates of a derivation can be read off at the
    pivot generators.  The full basis of Lie(G, I) is ordered (b, j) with
    b the derivation index and j the basis index of I, lexicographically.
    """

    group: HopfPresentation
    iota: IModule
    vectors: list
    pivot_gens: list

    @property
    def base_dim(self):
        return len(self.vectors)

    @property
    def dim(self):
        return len(self.vectors) * self.iota.rank

    def coordinates_of(self, dvalues: dict, reducer=None):
        """Coefficients lambda_b with d = sum_b lambda_b d_b, read at pivots.

        dvalues maps generators to elements of any commutative ring; the
        reconstruction is verified by the caller where it matters.
        """
        return [dvalues[g] for g in self.pivot_gens]

    def reconstruct(self, coords):
        """Generator values of sum_b coords[b] * d_b (coords in any ring)."""
        out = {}
        for i, g in enumerate(self.group.gens):
            acc = None
            for b, vec in enumerate(self.vectors):
                c = vec[g]
                if c == self.group.field.zero:
                    continue
                term = coords[b].scale(c) if hasattr(coords[b], "scale") else coords[b] * c
                acc = term if acc is None else acc + term
            out[g] = acc
        return out


def jacobian_at_counit(group: HopfPresentation):
    """Rows: relations; columns: generators; entry d(rel)/d(gen) at the counit."""
    field = group.field
    eps = [group.counit_scalar(g) for g in group.gens]
    rows = []
    for rel in group.algebra.relations:
        row = []
        for i in range(group.nvars):
            acc = field.zero
            for m, c in rel.body.terms.items():
                e = m[i]
                if not e:
                    continue
                s = field.mul(field.coerce(e), _scalar_pow(field, eps[i], e - 1))
                for j, ej in enumerate(m):
                    if j != i and ej:
                        s = field.mul(s, _scalar_pow(field, eps[j], ej))
                acc = field.add(acc, field.mul(c, s))
            row.append(acc)
        rows.append(row)
    return rows


def lie_algebra(group: HopfPresentation, iota: IModule) -> LieModule:
    """Basis of pointed derivations killing the relations; dim = n * rank(I)."""
    assert group.rank == 0, "Lie algebra is computed for groups over the base field"
    field = group.field
    rows = jacobian_at_counit(group)
    basis, free_cols = nullspace(rows, group.nvars, field)
    vectors = [
        {g: vec[i] for i, g in enumerate(group.gens)}
        for vec in basis
    ]
    pivot_gens = [group.gens[c] for c in free_cols]
    return LieModule(group, iota, vectors, pivot_gens)


def derivation_on_poly(group: HopfPresentation, values: dict, f: Poly):
    """Extend generator values of a pointed derivation to a polynomial.

    values maps generators to elements of a common ring with + and scale;
    f is a Poly in the group's generators.
    """
    field = group.field
    eps = [group.counit_scalar(g) for g in group.gens]
    vals = [values[g] for g in group.gens]
    sample = vals[0]
    out = DualPoly.zero(sample.field, sample.nvars, sample.rank)
    for m, c in f.terms.items():
        for i, e in enumerate(m):
            if not e:
                continue
            if eps[i] == field.zero and e > 1:
                continue
            s = field.mul(field.coerce(e), _scalar_pow(field, eps[i], e - 1))
            for j, ej in enumerate(m):
                if j != i and ej:
                    s = field.mul(s, _scalar_pow(field, eps[j], ej))
            if s != field.zero:
                out = out + vals[i].scale(field.mul(c, s))
    return out


def is_lie_point(group: HopfPresentation, values: dict) -> bool:
    """values: gen -> DualPoly with zero body (an element of I tensor R)."""
    for v in values.values():
        if not v.body.is_zero():
            return False
    for rel in group.algebra.relations:
        if not derivation_on_poly(group, values, rel.body).is_zero():
            return False
    return True


# ---------------------------------------------------------------------------
# adjoint action, bracket, exponential


def adjoint_action(group: HopfPresentation, lie: LieModule | None = None):
    """Matrix of Ad on the Lie basis, entries in the function ring.

    Computed by conjugating 1 + eps' d_b by the universal point at first
    order in a fresh nilpotent eps'.  Returns (lie, M) with M[c][b] in A the
    coefficient of d_c in Ad(g) d_b; the action on Lie(G, I) is the block
    diagonal repetition of M over a basis of I.
    """
    if lie is None:
        lie = lie_algebra(group, IModule(1))
    n = group.nvars
    field = group.field
    one = Poly.const(field, n, 1)

    g_pt = AlgebraMap(group, [DualPoly.of_poly(group.var(g), 1) for g in group.gens])
    ginv_pt = AlgebraMap(group, [DualPoly.of_poly(group.antipode[g].body, 1) for g in group.gens])
    eps_pt = CounitMap(group, n, 1)

    columns = []
    for vec in lie.vectors:
        dvals = [DualPoly(Poly.zero(field, n), (Poly.const(field, n, vec[g]),)) for g in group.gens]
        chi = SumFunctional(eps_pt, EDerivation(group, dvals))
        conj = convolve(group, [g_pt, chi, ginv_pt])
        columns.append({g: group.algebra.reduce_poly(conj[g].parts[0]) for g in group.gens})

    matrix = [
        [columns[b][pg] for b in range(lie.base_dim)]
        for pg in lie.pivot_gens
    ]
    # reconstruction must reproduce the conjugated derivation on every generator
    for b in range(lie.base_dim):
        for i, g in enumerate(group.gens):
            acc = Poly.zero(field, n)
            for c, vec in enumerate(lie.vectors):
                if vec[g] != field.zero:
                    acc = acc + matrix[c][b].scale(vec[g])
            assert group.algebra.reduce_poly(acc - columns[b][g]).is_zero(), (
                "adjoint conjugate left the Lie span"
            )
    return lie, matrix


def adjoint_full_matrix(lie: LieModule, matrix):
    """Block-diagonal expansion of the base matrix over the basis of I."""
    r = lie.iota.rank
    nb = lie.base_dim
    n = lie.group.nvars
    zero = Poly.zero(lie.group.field, n)
    size = nb * r
    out = [[zero] * size for _ in range(size)]
    for j in range(r):
        for c in range(nb):
            for b in range(nb):
                out[c * r + j][b * r + j] = matrix[c][b]
    return out


def lie_bracket(group: HopfPresentation, xvals: dict, yvals: dict) -> dict:
    """Convolution commutator of two pointed derivations with scalar values."""
    field = group.field
    as_const = lambda vals: [
        DualPoly.of_poly(Poly.const(field, 0, vals[g]), 0) for g in group.gens
    ]
    dx = EDerivation(group, as_const(xvals))
    dy = EDerivation(group, as_const(yvals))
    xy = convolve(group, [dx, dy])
    yx = convolve(group, [dy, dx])
    return {
        g: (xy[g] - yx[g]).body.constant_term()
        for g in group.gens
    }


class LiePoint:
    """Point of h^* Lie(G, I) over a dual-number target ring.

    values[g] is a tuple of target-ring elements (one per basis vector of
    I): the derivation sends g to sum_j eps_j (x) values[g][j].
    """

    __slots__ = ("group", "iota", "values")

    def __init__(self, group, iota, values):
        self.group = group
        self.iota = iota
        self.values = {g: tuple(v) for g, v in values.items()}

    def sample(self):
        return next(iter(self.values.values()))[0]

    def add(self, other):
        return LiePoint(
            self.group,
            self.iota,
            {
                g: tuple(a + b for a, b in zip(self.values[g], other.values[g]))
                for g in self.values
            },
        )

    def scale(self, c):
        return LiePoint(
            self.group, self.iota,
            {g: tuple(v.scale(c) for v in vs) for g, vs in self.values.items()},
        )

    def mul_ring(self, r):
        """Multiply by a target-ring element (e.g. a section of I)."""
        return LiePoint(
            self.group, self.iota,
            {g: tuple(v * r for v in vs) for g, vs in self.values.items()},
        )

    def is_derivation(self) -> bool:
        sample = self.sample()
        zero = DualPoly.zero(sample.field, sample.nvars, sample.rank)
        for j in range(self.iota.rank):
            vals = {g: self.values[g][j] for g in self.group.gens}
            for rel in self.group.algebra.relations:
                image = _linear_derivation(self.group, vals, rel.body, zero)
                if not image.is_zero():
                    return False
        return True


def _linear_derivation(group, vals, f, zero):
    field = group.field
    eps = [group.counit_scalar(g) for g in group.gens]
    out = zero
    for m, c in f.terms.items():
        for i, e in enumerate(m):
            if not e:
                continue
            if eps[i] == field.zero and e > 1:
                continue
            s = field.mul(field.coerce(e), _scalar_pow(field, eps[i], e - 1))
            for j, ej in enumerate(m):
                if j != i and ej:
                    s = field.mul(s, _scalar_pow(field, eps[j], ej))
            if s != field.zero:
                out = out + vals[group.gens[i]].scale(field.mul(c, s))
    return out


def lie_point_from_coordinates(lie: LieModule, coords) -> LiePoint:
    """coords[(b, j)] -> target ring elements, ordered (b major, j minor)."""
    group = lie.group
    r = lie.iota.rank
    sample = coords[0]
    zero = DualPoly.zero(sample.field, sample.nvars, sample.rank)
    values = {}
    for i, g in enumerate(group.gens):
        tup = []
        for j in range(r):
            acc = zero
            for b, vec in enumerate(lie.vectors):
                c = vec[g]
                if c != group.field.zero:
                    acc = acc + coords[b * r + j].scale(c)
            tup.append(acc)
        values[g] = tuple(tup)
    return LiePoint(group, lie.iota, values)


def exp_point(group: HopfPresentation, point: LiePoint, target=None) -> PointValue:
    """Infinitesimal translation: a |-> eps(a) + x_R(a).

    The Lie point lives over a k[I]-algebra (a dual ring of the same rank
    as I); composing I (x) R -> R multiplies part j by eps_j.
    """
    if not point.is_derivation():
        raise InvalidPointError("values do not define a pointed derivation")
    sample = point.sample()
    values = {}
    for g in group.gens:
        acc = DualPoly.const(sample.field, sample.nvars, sample.rank, group.counit_scalar(g))
        for j, v in enumerate(point.values[g]):
            acc = acc + v.eps_mul(j)
        values[g] = acc
    return PointValue(group, values, target)


# ---------------------------------------------------------------------------
# constructions


def product_group(G: HopfPresentation, H: HopfPresentation) -> HopfPresentation:
    """Tensor-product presentation with componentwise Hopf structure."""
    assert G.field == H.field and G.iota == H.iota
    field = G.field
    rank = G.rank
    collide = set(G.gens) & set(H.gens)
    g_names = [f"{g}_1" if g in collide else g for g in G.gens]
    h_names = [f"{g}_2" if g in collide else g for g in H.gens]
    gens = g_names + h_names
    nG, nH = G.nvars, H.nvars
    n = nG + nH

    rels = [r.embed(n, 0) for r in G.algebra.relations]
    rels += [r.embed(n, nG) for r in H.algebra.relations]
    strategy = "free"
    rules = None
    if rels:
        strategy = "rules"
        rules = [r.embed(n, 0) for r in G.algebra._rules]
        rules += [r.embed(n, nG) for r in H.algebra._rules]
    algebra = PresentedAlgebra(field, gens, rels, strategy=strategy, iota=G.iota, rules=rules)

    # tensor square of the product: [G(1), H(1), G(2), H(2)]
    def remap_comul(value: DualPoly, offset, src_n):
        vals = []
        for i in range(src_n):
            vals.append(DualPoly.of_poly(Poly.var(field, 2 * n, offset + i), rank))
        for i in range(src_n):
            vals.append(DualPoly.of_poly(Poly.var(field, 2 * n, n + offset + i), rank))
        return value.subs(vals)

    comul = {}
    counit = {}
    antipode = {}
    for old, new in zip(G.gens, g_names):
        comul[new] = remap_comul(G.comul[old], 0, nG)
        counit[new] = G.counit[old]
        antipode[new] = G.antipode[old].embed(n, 0)
    for old, new in zip(H.gens, h_names):
        comul[new] = remap_comul(H.comul[old], nG, nH)
        counit[new] = H.counit[old]
        antipode[new] = H.antipode[old].embed(n, nG)

    smooth = None
    if G.smooth is not None and H.smooth is not None:
        smooth = G.smooth and H.smooth
    return HopfPresentation(f"{G.name}x{H.name}", algebra, comul, counit, antipode, smooth)


def vector_group(field, names, iota=TRIVIAL_I, name="vector") -> HopfPresentation:
    """Affine space with componentwise addition."""
    n = len(names)
    algebra = PresentedAlgebra(field, names, (), strategy="free", iota=iota)
    rank = iota.rank
    comul = {}
    counit = {}
    antipode = {}
    for i, g in enumerate(names):
        comul[g] = DualPoly.of_poly(
            Poly.var(field, 2 * n, i) + Poly.var(field, 2 * n, n + i), rank
        )
        counit[g] = DualPoly.const(field, 0, rank, 0)
        antipode[g] = DualPoly.of_poly(-Poly.var(field, n, i), rank)
    return HopfPresentation(name, algebra, comul, counit, antipode, smooth=True)


def lie_group_presentation(lie: LieModule, names=None) -> HopfPresentation:
    """Lie(G, I) as a vector group with the pinned coordinate order."""
    r = lie.iota.rank
    if names is None:
        names = [
            f"L{b+1}e{j+1}" for b in range(lie.base_dim) for j in range(r)
        ]
    return vector_group(lie.group.field, names, name=f"Lie({lie.group.name})")


def is_hopf_morphism(src: HopfPresentation, dst: HopfPresentation, values: dict) -> bool:
    """values: src generator -> DualPoly over dst's ring; checks the full contract."""
    vals = [values[g] for g in src.gens]
    for rel in src.algebra.relations:
        if not dst.algebra.normal_form_dual(rel.subs(vals)).is_zero():
            return False
    nd = dst.nvars
    dst2 = dst.tensor(2)
    slot2 = [v.embed(2 * nd, nd) for v in vals]
    slot1 = [v.embed(2 * nd, 0) for v in vals]
    for g in src.gens:
        lhs = values[g].subs([dst.comul[h] for h in dst.gens])
        rhs = src.comul[g].subs(slot1 + slot2)
        if dst2.normal_form_dual(lhs - rhs) != DualPoly.zero(dst.field, 2 * nd, dst.rank):
            return False
    for g in src.gens:
        lhs = values[g].subs([dst.counit_const(h, 0, dst.rank) for h in dst.gens])
        if lhs != src.counit[g]:
            return False
    for g in src.gens:
        lhs = values[g].subs([dst.antipode[h] for h in dst.gens])
        rhs = src.antipode[g].subs(vals)
        if not dst.algebra.normal_form_dual(lhs - rhs).is_zero():
            return False
    return True
