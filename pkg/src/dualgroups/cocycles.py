"""Stock 2-cocycles used throughout the test catalog and the CLI fixtures."""

from __future__ import annotations

from math import comb

from .extensions import Cocycle2
from .fields import Field
from .hopf import HopfPresentation
from .poly import DualPoly, IModule, Poly


def witt_cocycle_poly(field: Field, p: int) -> Poly:
    """sum_{0<i<p} (1/p) C(p, i) x^i y^(p-i) on the additive group, mod p."""
    terms = {}
    for i in range(1, p):
        c = field.coerce(comb(p, i) // p)
        if c != field.zero:
            terms[(i, p - i)] = c
    return Poly(field, 2, terms)


def witt_cocycle(G: HopfPresentation, iota: IModule, part=0) -> Cocycle2:
    """The additive-to-Witt cocycle in a chosen component of I, on a 1-dim G."""
    p = G.field.p
    assert p, "Witt cocycle needs positive characteristic"
    assert G.nvars == 1
    w = witt_cocycle_poly(G.field, p)
    zero2 = Poly.zero(G.field, 2)
    parts = [zero2] * iota.rank
    parts[part] = w
    return Cocycle2(G, iota, {G.gens[0]: DualPoly(zero2, parts)})


def bilinear_cocycle(G: HopfPresentation, iota: IModule, entries) -> Cocycle2:
    """c(g, g') = sum over (gen, j, i1, i2, coeff): coeff * x_{i1} (x) y_{i2},
    valued in the Lie direction dual to the named generator.

    Bilinear maps are 2-cocycles for any commutative G acting trivially.
    """
    n = G.nvars
    field = G.field
    values = {
        g: DualPoly.zero(field, 2 * n, iota.rank) for g in G.gens
    }
    for (gen, j, i1, i2, coeff) in entries:
        mono = [0] * (2 * n)
        mono[i1] += 1
        mono[n + i2] += 1
        add = DualPoly(
            Poly.zero(field, 2 * n),
            tuple(
                Poly(field, 2 * n, {tuple(mono): field.coerce(coeff)}) if jj == j
                else Poly.zero(field, 2 * n)
                for jj in range(iota.rank)
            ),
        )
        values[gen] = values[gen] + add
    return Cocycle2(G, iota, values)
