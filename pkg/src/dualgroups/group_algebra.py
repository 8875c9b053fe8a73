"""The group algebra of an affine group scheme as a computable convolution
algebra: linear functionals on the function ring with product
(u * v)(a) = sum u(a_(1)) v(a_(2)).

For finite locally free groups the monomial basis of the quotient ring is a
full module basis and the arithmetic is exact; infinite-dimensional groups
are truncated to functionals supported on a finite list of normal-form
monomials (degree bound for unipotent coordinates, index window for tori).
"""

from __future__ import annotations

from dataclasses import dataclass

from .hopf import HopfPresentation, PointValue, _scalar_pow
from .linalg import det
from .poly import DualPoly, Poly, grevlex_key


class TruncationError(Exception):
    pass


class UnsupportedGroupError(Exception):
    pass


class Truncation:
    """Finite list of normal-form monomials carrying functional supports."""

    __slots__ = ("group", "monomials", "index", "tag", "_comul_cache")

    def __init__(self, group: HopfPresentation, monomials, tag):
        self.group = group
        self.monomials = tuple(monomials)
        self.index = {m: i for i, m in enumerate(self.monomials)}
        self.tag = tag
        self._comul_cache = {}

    @classmethod
    def exact(cls, group: HopfPresentation):
        """Full monomial basis of a finite locally free group."""
        monomials = group.algebra.standard_monomials()
        return cls(group, monomials, ("exact", len(monomials)))

    @classmethod
    def degree(cls, group: HopfPresentation, bound: int):
        monomials = group.algebra.standard_monomials(max_degree=bound)
        return cls(group, monomials, ("degree", bound))

    @property
    def rank(self):
        return len(self.monomials)

    def comul_of(self, mono):
        """Normal form of Delta(x^mono) in the tensor square, cached."""
        dp = self._comul_cache.get(mono)
        if dp is None:
            group = self.group
            vals = [group.comul[g] for g in group.gens]
            n = group.nvars
            term = DualPoly.const(group.field, 2 * n, group.rank, 1)
            for i, e in enumerate(mono):
                if e:
                    term = term * vals[i].power(e)
            dp = group.tensor(2).normal_form_dual(term)
            self._comul_cache[mono] = dp
        return dp

    def compatible(self, other) -> bool:
        return self.group is other.group and self.tag == other.tag


@dataclass
class GroupAlgebraElement:
    """Functional supported on the truncation basis, values in the base field."""

    basis: Truncation
    coeffs: dict

    def __post_init__(self):
        field = self.basis.group.field
        self.coeffs = {m: c for m, c in self.coeffs.items() if c != field.zero}

    @property
    def group(self):
        return self.basis.group

    def value(self, mono):
        return self.coeffs.get(mono, self.group.field.zero)

    def __add__(self, other):
        assert self.basis.compatible(other.basis)
        field = self.group.field
        coeffs = dict(self.coeffs)
        for m, c in other.coeffs.items():
            coeffs[m] = field.add(coeffs.get(m, field.zero), c)
        return GroupAlgebraElement(self.basis, coeffs)

    def __neg__(self):
        field = self.group.field
        return GroupAlgebraElement(self.basis, {m: field.neg(c) for m, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        field = self.group.field
        c = field.coerce(c)
        return GroupAlgebraElement(self.basis, {m: field.mul(v, c) for m, v in self.coeffs.items()})

    def __eq__(self, other):
        return (
            isinstance(other, GroupAlgebraElement)
            and self.basis.compatible(other.basis)
            and self.coeffs == other.coeffs
        )

    def render(self):
        group = self.group
        names = group.gens
        items = sorted(self.coeffs.items(), key=lambda t: grevlex_key(t[0]))
        out = []
        for m, c in items:
            mono = "*".join(
                f"{names[i]}^{e}" if e > 1 else names[i] for i, e in enumerate(m) if e
            ) or "1"
            out.append(f"{c}*d[{mono}]")
        return " + ".join(out) if out else "0"


def convolve(u: GroupAlgebraElement, v: GroupAlgebraElement) -> GroupAlgebraElement:
    """(u * v)(m) = sum u(m_(1)) v(m_(2)) over the Sweedler expansion of m."""
    if not u.basis.compatible(v.basis):
        raise TruncationError(f"incompatible truncations {u.basis.tag} vs {v.basis.tag}")
    basis = u.basis
    group = basis.group
    field = group.field
    n = group.nvars
    out = {}
    for m in basis.monomials:
        dp = basis.comul_of(m)
        acc = field.zero
        for mm, c in dp.body.terms.items():
            a = u.value(mm[:n])
            if a == field.zero:
                continue
            b = v.value(mm[n:])
            if b == field.zero:
                continue
            acc = field.add(acc, field.mul(c, field.mul(a, b)))
        if acc != field.zero:
            out[m] = acc
    return GroupAlgebraElement(basis, out)


def counit_element(basis: Truncation) -> GroupAlgebraElement:
    """The convolution unit: m -> eps(m)."""
    group = basis.group
    field = group.field
    eps = [group.counit_scalar(g) for g in group.gens]
    coeffs = {}
    for m in basis.monomials:
        c = field.one
        for i, e in enumerate(m):
            if e:
                c = field.mul(c, _scalar_pow(field, eps[i], e))
                if c == field.zero:
                    break
        if c != field.zero:
            coeffs[m] = c
    return GroupAlgebraElement(basis, coeffs)


def delta_element(basis: Truncation, mono) -> GroupAlgebraElement:
    """Dual-basis functional of a single basis monomial."""
    assert mono in basis.index
    return GroupAlgebraElement(basis, {mono: basis.group.field.one})


def embed_point(basis: Truncation, values: dict) -> GroupAlgebraElement:
    """Evaluation functional m -> g(m) of a k-point given on generators."""
    group = basis.group
    field = group.field
    vals = [field.coerce(values[g]) for g in group.gens]
    coeffs = {}
    for m in basis.monomials:
        c = field.one
        for i, e in enumerate(m):
            if e:
                c = field.mul(c, _scalar_pow(field, vals[i], e))
                if c == field.zero:
                    break
        if c != field.zero:
            coeffs[m] = c
    return GroupAlgebraElement(basis, coeffs)


def u_derivation_element(basis: Truncation, point: dict, dvals: dict) -> GroupAlgebraElement:
    """The u-derivation with given generator values, as a supported functional."""
    group = basis.group
    field = group.field
    u = [field.coerce(point[g]) for g in group.gens]
    d = [field.coerce(dvals[g]) for g in group.gens]
    coeffs = {}
    for m in basis.monomials:
        acc = field.zero
        for i, e in enumerate(m):
            if not e:
                continue
            if u[i] == field.zero and e > 1:
                continue
            s = field.mul(field.coerce(e), _scalar_pow(field, u[i], e - 1))
            for j, ej in enumerate(m):
                if j != i and ej:
                    s = field.mul(s, _scalar_pow(field, u[j], ej))
            acc = field.add(acc, field.mul(s, d[i]))
        if acc != field.zero:
            coeffs[m] = acc
    return GroupAlgebraElement(basis, coeffs)


def satisfies_derivation_rule(d: GroupAlgebraElement, u: GroupAlgebraElement) -> bool:
    """Check d(mn) = u(m) d(n) + u(n) d(m) on basis pairs with mn in the span."""
    basis = d.basis
    group = basis.group
    field = group.field
    algebra = group.algebra
    for m1 in basis.monomials:
        for m2 in basis.monomials:
            prod = Poly(field, group.nvars, {tuple(a + b for a, b in zip(m1, m2)): field.one})
            nf = algebra.reduce_poly(prod)
            if any(mm not in basis.index for mm in nf.terms):
                continue
            lhs = _eval_on_poly(d, nf)
            rhs = field.add(
                field.mul(_eval_on_poly(u, _nf_mono(algebra, basis, m1)), _eval_on_poly(d, _nf_mono(algebra, basis, m2))),
                field.mul(_eval_on_poly(u, _nf_mono(algebra, basis, m2)), _eval_on_poly(d, _nf_mono(algebra, basis, m1))),
            )
            if lhs != rhs:
                return False
    return True


def _nf_mono(algebra, basis, m):
    return algebra.reduce_poly(Poly(algebra.field, len(m), {m: algebra.field.one}))


def _eval_on_poly(u: GroupAlgebraElement, p: Poly):
    field = u.group.field
    acc = field.zero
    for m, c in p.terms.items():
        acc = field.add(acc, field.mul(c, u.value(m)))
    return acc


# ---------------------------------------------------------------------------
# finite locally free groups: regular representation and units


def regular_representation(u: GroupAlgebraElement):
    """Matrix of left convolution by u in the dual basis (finite groups only)."""
    basis = u.basis
    if basis.tag[0] != "exact":
        raise UnsupportedGroupError("regular representation needs a finite locally free group")
    cols = []
    for m in basis.monomials:
        col = convolve(u, delta_element(basis, m))
        cols.append(col)
    return [
        [cols[j].value(m) for j in range(basis.rank)]
        for m in basis.monomials
    ]


def unit_test_finite(u: GroupAlgebraElement) -> bool:
    """True iff det of the left regular representation is invertible in k."""
    field = u.basis.group.field
    return det(regular_representation(u), field) != field.zero


def alpha_p_subalgebra(field):
    """Exact group algebra of the Frobenius kernel: rank p, generator t with t^p = 0."""
    from .catalog import frobenius_kernel

    if field.p == 0:
        raise UnsupportedGroupError("alpha_p needs characteristic p")
    group = frobenius_kernel(field)
    basis = Truncation.exact(group)
    t = delta_element(basis, (1,))
    return basis, t, counit_element(basis)


# ---------------------------------------------------------------------------
# adjointness: algebra maps O_k[G] -> D from group maps G -> D^x


class NotAHomomorphismError(Exception):
    pass


@dataclass
class MatrixTransport:
    """The algebra map O_k[G] -> Mat_d(k) induced by a matrix representation.

    The representation is a d x d matrix of function-ring elements M with
    Delta(M_ij) = sum_l M_il (x) M_lj and eps(M_ij) = delta_ij; a functional
    u is sent to the numeric matrix [u(M_ij)].
    """

    basis: Truncation
    matrix: list

    @property
    def dim(self):
        return len(self.matrix)

    def apply(self, u: GroupAlgebraElement):
        algebra = self.basis.group.algebra
        return [
            [
                _eval_on_poly(u, algebra.reduce_poly(entry))
                for entry in row
            ]
            for row in self.matrix
        ]


def adjoint_transport(basis: Truncation, matrix) -> MatrixTransport:
    """Validate the comodule identities and build the transport map."""
    group = basis.group
    field = group.field
    algebra = group.algebra
    tensor2 = group.tensor(2)
    n = group.nvars
    d = len(matrix)
    comul_vals = [group.comul[g] for g in group.gens]
    for i in range(d):
        for j in range(d):
            entry = matrix[i][j]
            # counit condition
            eps_val = _counit_of_poly(group, entry)
            want = field.one if i == j else field.zero
            if eps_val != want:
                raise NotAHomomorphismError(f"eps(M[{i}][{j}]) = {eps_val} != {want}")
            # comodule condition
            lhs = DualPoly.of_poly(entry, group.rank).subs(comul_vals)
            rhs = DualPoly.zero(field, 2 * n, group.rank)
            for l in range(d):
                rhs = rhs + DualPoly.of_poly(
                    matrix[i][l].embed(2 * n, 0) * matrix[l][j].embed(2 * n, n),
                    group.rank,
                )
            if not tensor2.normal_form_dual(lhs - rhs).is_zero():
                raise NotAHomomorphismError(f"Delta(M[{i}][{j}]) is not the matrix comultiplication")
    return MatrixTransport(basis, [[algebra.reduce_poly(e) for e in row] for row in matrix])


def _counit_of_poly(group, p: Poly):
    field = group.field
    eps = [group.counit_scalar(g) for g in group.gens]
    acc = field.zero
    for m, c in p.terms.items():
        s = field.one
        for i, e in enumerate(m):
            if e:
                s = field.mul(s, _scalar_pow(field, eps[i], e))
        acc = field.add(acc, field.mul(c, s))
    return acc
