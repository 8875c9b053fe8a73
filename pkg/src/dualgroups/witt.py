"""Witt vector arithmetic via the universal Witt polynomials.

The addition/multiplication/negation polynomials are computed once over the
rationals by inverting the ghost map (all divisions by powers of p are
exact, which is asserted), then reduced mod p on demand.  WittVector
components may be field scalars or polynomials over an F_p-algebra, so the
same engine drives both concrete arithmetic and the Hopf presentations of
the Witt group schemes.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .fields import GF, QQ, Field
from .poly import Poly


def ghost_poly(p: int, k: int, nvars: int, offset: int) -> Poly:
    """w_k = sum_{i<=k} p^i * x_i^(p^(k-i)) in variables offset..offset+k."""
    out = Poly.zero(QQ, nvars)
    for i in range(k + 1):
        e = [0] * nvars
        e[offset + i] = p ** (k - i)
        out = out + Poly(QQ, nvars, {tuple(e): Fraction(p**i)})
    return out


@lru_cache(maxsize=None)
def witt_structure_polys(p: int, n: int):
    """Universal polynomials for length-n Witt vectors over Z.

    Returns (sums, prods, negs): sums/prods are lists of n Polys in 2n
    rational variables (x block then y block), negs in n variables.  All
    coefficients are integers (exactness of the p-divisions is asserted).
    """
    sums, prods, negs = [], [], []
    for k in range(n):
        wx = ghost_poly(p, k, 2 * n, 0)
        wy = ghost_poly(p, k, 2 * n, n)
        # addition: solve w_k(S_0..S_k) = w_k(x) + w_k(y)
        acc = wx + wy
        for i in range(k):
            acc = acc - (sums[i] ** (p ** (k - i))).scale(Fraction(p**i))
        sums.append(_exact_divide(acc, p**k))
        # multiplication: w_k(P_0..P_k) = w_k(x) * w_k(y)
        acc = wx * wy
        for i in range(k):
            acc = acc - (prods[i] ** (p ** (k - i))).scale(Fraction(p**i))
        prods.append(_exact_divide(acc, p**k))
        # negation: w_k(N_0..N_k) = -w_k(x)
        acc = -ghost_poly(p, k, n, 0)
        for i in range(k):
            acc = acc - (negs[i] ** (p ** (k - i))).scale(Fraction(p**i))
        negs.append(_exact_divide(acc, p**k))
    for fam in (sums, prods, negs):
        for f in fam:
            assert all(c.denominator == 1 for c in f.terms.values())
    return tuple(sums), tuple(prods), tuple(negs)


def _exact_divide(f: Poly, d: int) -> Poly:
    out = Poly(QQ, f.nvars)
    out.terms = {m: c / d for m, c in f.terms.items()}
    for c in out.terms.values():
        assert c.denominator == 1, "Witt structure polynomial not integral"
    return out


@lru_cache(maxsize=None)
def witt_structure_polys_mod_p(p: int, n: int):
    sums, prods, negs = witt_structure_polys(p, n)
    k = GF(p)
    return (
        tuple(f.map_field(k) for f in sums),
        tuple(f.map_field(k) for f in prods),
        tuple(f.map_field(k) for f in negs),
    )


class LengthMismatch(Exception):
    pass


class WittVector:
    """Length-n Witt vector with components in an F_p-algebra (Polys or scalars)."""

    __slots__ = ("p", "components")

    def __init__(self, p: int, components):
        self.p = p
        comps = []
        for c in components:
            if not isinstance(c, Poly):
                c = Poly.const(GF(p), 0, c)
            comps.append(c)
        self.components = tuple(comps)

    @property
    def length(self):
        return len(self.components)

    def _check(self, other):
        if self.length != other.length:
            raise LengthMismatch(f"lengths {self.length} != {other.length}")
        assert self.p == other.p

    def _binary(self, other, which):
        self._check(other)
        polys = witt_structure_polys_mod_p(self.p, self.length)[which]
        vals = list(self.components) + list(other.components)
        return WittVector(self.p, [f.subs(vals) for f in polys])

    def __add__(self, other):
        return self._binary(other, 0)

    def __mul__(self, other):
        return self._binary(other, 1)

    def __neg__(self):
        polys = witt_structure_polys_mod_p(self.p, self.length)[2]
        return WittVector(self.p, [f.subs(list(self.components)) for f in polys])

    def __sub__(self, other):
        return self + (-other)

    def frobenius(self):
        """Componentwise p-th power (Witt Frobenius over F_p-algebras)."""
        return WittVector(self.p, [c**self.p for c in self.components])

    def verschiebung(self):
        zero = Poly.zero(self.components[0].field, self.components[0].nvars)
        return WittVector(self.p, (zero,) + self.components[:-1])

    def __eq__(self, other):
        return (
            isinstance(other, WittVector)
            and self.p == other.p
            and self.components == other.components
        )

    def __repr__(self):
        return "W(" + ", ".join(repr(c.terms) for c in self.components) + ")"


def ghost_components(p: int, components):
    """Ghost map of an integer (or rational) component vector."""
    n = len(components)
    out = []
    for k in range(n):
        w = Fraction(0)
        for i in range(k + 1):
            w += Fraction(p**i) * Fraction(components[i]) ** (p ** (k - i))
        out.append(w)
    return out


def from_ghost(p: int, ghosts):
    """Inverse ghost map over Q (exact; raises if not in the image over Z lifts)."""
    comps = []
    for k, wk in enumerate(ghosts):
        acc = Fraction(wk)
        for i in range(k):
            acc -= Fraction(p**i) * comps[i] ** (p ** (k - i))
        comps.append(acc / (p**k))
    return comps
