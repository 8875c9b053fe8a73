"""Built-in group scheme presentations.

Every entry ships confluent rewrite rules (or no relations), bypassing the
Groebner path, except the constant cyclic groups which exercise it.  The
smooth flag is declared, not computed.
"""

from __future__ import annotations

from .fields import GF, QQ, Field
from .hopf import HopfPresentation, product_group
from .poly import DualPoly, IModule, Poly, PresentedAlgebra, TRIVIAL_I
from .witt import witt_structure_polys, witt_structure_polys_mod_p


def _mk(field, name, gens, relations, comul, counit, antipode, smooth, strategy=None):
    strategy = strategy or ("rules" if relations else "free")
    algebra = PresentedAlgebra(field, gens, relations, strategy=strategy)
    n = len(gens)
    comul = {g: DualPoly.of_poly(v, 0) for g, v in comul.items()}
    counit = {g: DualPoly.of_poly(Poly.const(field, 0, v), 0) for g, v in counit.items()}
    antipode = {g: DualPoly.of_poly(v, 0) for g, v in antipode.items()}
    return HopfPresentation(name, algebra, comul, counit, antipode, smooth)


def additive_group(field: Field) -> HopfPresentation:
    x1 = Poly.var(field, 2, 0)
    x2 = Poly.var(field, 2, 1)
    return _mk(
        field, "Ga", ["x"], [],
        {"x": x1 + x2}, {"x": 0}, {"x": -Poly.var(field, 1, 0)},
        smooth=True,
    )


def multiplicative_group(field: Field) -> HopfPresentation:
    x = Poly.var(field, 2, 0)
    y = Poly.var(field, 2, 1)
    rel = x * y - Poly.const(field, 2, 1)
    x1, y1 = Poly.var(field, 4, 0), Poly.var(field, 4, 1)
    x2, y2 = Poly.var(field, 4, 2), Poly.var(field, 4, 3)
    return _mk(
        field, "Gm", ["x", "y"], [rel],
        {"x": x1 * x2, "y": y1 * y2},
        {"x": 1, "y": 1},
        {"x": Poly.var(field, 2, 1), "y": Poly.var(field, 2, 0)},
        smooth=True,
    )


def roots_of_unity(field: Field, n: int) -> HopfPresentation:
    assert n >= 1
    x = Poly.var(field, 1, 0)
    rel = x**n - Poly.const(field, 1, 1)
    x1, x2 = Poly.var(field, 2, 0), Poly.var(field, 2, 1)
    smooth = field.p == 0 or n % field.p != 0
    return _mk(
        field, f"mu{n}", ["x"], [rel],
        {"x": x1 * x2}, {"x": 1}, {"x": x ** (n - 1)},
        smooth=smooth,
    )


def frobenius_kernel(field: Field) -> HopfPresentation:
    """alpha_p: the kernel of Frobenius on the additive group, char p only."""
    p = field.p
    if p == 0:
        raise ValueError("alpha_p requires positive characteristic")
    t = Poly.var(field, 1, 0)
    t1, t2 = Poly.var(field, 2, 0), Poly.var(field, 2, 1)
    return _mk(
        field, f"alpha{p}", ["t"], [t**p],
        {"t": t1 + t2}, {"t": 0}, {"t": -t},
        smooth=False,
    )


def witt_group(field: Field, n: int) -> HopfPresentation:
    """W_n with the universal addition law (integral coefficients over Q)."""
    p = field.p if field.p else 2
    if field.p:
        sums, _, negs = witt_structure_polys_mod_p(field.p, n)
        sums = list(sums)
        negs = list(negs)
    else:
        s_q, _, n_q = witt_structure_polys(p, n)
        sums = [f.map_field(field) for f in s_q]
        negs = [f.map_field(field) for f in n_q]
    gens = [f"w{i}" for i in range(n)]
    comul = {g: sums[i] for i, g in enumerate(gens)}
    counit = {g: 0 for g in gens}
    antipode = {g: negs[i] for i, g in enumerate(gens)}
    return _mk(field, f"W{n}", gens, [], comul, counit, antipode, smooth=True)


def ga_times_ga(field: Field) -> HopfPresentation:
    return product_group(additive_group(field), additive_group(field))


def ga_semidirect_gm(field: Field) -> HopfPresentation:
    """(a, t)(a', t') = (a + t a', t t'), with s the inverse of t."""
    gens = ["a", "t", "s"]
    t = Poly.var(field, 3, 1)
    s = Poly.var(field, 3, 2)
    rel = t * s - Poly.const(field, 3, 1)
    a1, t1, s1 = (Poly.var(field, 6, i) for i in range(3))
    a2, t2, s2 = (Poly.var(field, 6, i) for i in range(3, 6))
    a = Poly.var(field, 3, 0)
    return _mk(
        field, "GaGm", gens, [rel],
        {"a": a1 + t1 * a2, "t": t1 * t2, "s": s1 * s2},
        {"a": 0, "t": 1, "s": 1},
        {"a": -(s * a), "t": s, "s": t},
        smooth=True,
    )


def heisenberg(field: Field) -> HopfPresentation:
    """Upper triangular unipotent 3x3: (u,v,w)(u',v',w') = (u+u', v+v', w+w'+u v')."""
    gens = ["u", "v", "w"]
    u = Poly.var(field, 3, 0)
    v = Poly.var(field, 3, 1)
    w = Poly.var(field, 3, 2)
    u1, v1, w1 = (Poly.var(field, 6, i) for i in range(3))
    u2, v2, w2 = (Poly.var(field, 6, i) for i in range(3, 6))
    return _mk(
        field, "U3", gens, [],
        {"u": u1 + u2, "v": v1 + v2, "w": w1 + w2 + u1 * v2},
        {"u": 0, "v": 0, "w": 0},
        {"u": -u, "v": -v, "w": -w + u * v},
        smooth=True,
    )


def constant_cyclic(field: Field, n: int) -> HopfPresentation:
    """The constant group Z/nZ, presented by its indicator functions."""
    gens = [f"d{i}" for i in range(n)]
    one = Poly.const(field, n, 1)
    rels = []
    for i in range(n):
        for j in range(i, n):
            di = Poly.var(field, n, i)
            dj = Poly.var(field, n, j)
            if i == j:
                rels.append(di * dj - di)
            else:
                rels.append(di * dj)
    rels.append(sum((Poly.var(field, n, i) for i in range(1, n)), Poly.var(field, n, 0)) - one)
    comul = {}
    for c in range(n):
        acc = Poly.zero(field, 2 * n)
        for a in range(n):
            b = (c - a) % n
            acc = acc + Poly.var(field, 2 * n, a) * Poly.var(field, 2 * n, n + b)
        comul[gens[c]] = acc
    counit = {gens[c]: (1 if c == 0 else 0) for c in range(n)}
    antipode = {gens[c]: Poly.var(field, n, (-c) % n) for c in range(n)}
    return _mk(field, f"Z{n}", gens, rels, comul, counit, antipode,
               smooth=True, strategy="groebner")


def base_extend(G: HopfPresentation, iota: IModule) -> HopfPresentation:
    """h^* G: the same presentation with coefficients in k[I] (trivial parts)."""
    if G.rank:
        raise ValueError("base_extend expects a group over the base field")
    algebra = PresentedAlgebra(
        G.field, G.gens,
        [DualPoly.of_poly(r.body, iota.rank) for r in G.algebra.relations],
        strategy=G.algebra.strategy if G.algebra.strategy != "groebner" else "rules",
        iota=iota,
        rules=[DualPoly.of_poly(r.body, iota.rank) for r in G.algebra._rules] or None,
    )
    lift = lambda v: DualPoly.of_poly(v.body, iota.rank)
    return HopfPresentation(
        f"h*{G.name}", algebra,
        {g: lift(v) for g, v in G.comul.items()},
        {g: lift(v) for g, v in G.counit.items()},
        {g: lift(v) for g, v in G.antipode.items()},
        G.smooth,
    )


def nonrigid_frobenius_twist(p: int) -> HopfPresentation:
    """Kernel of x -> x^p - eps x inside the additive group over F_p[eps].

    The standard negative fixture: a flat k[I]-group scheme that admits no
    rigidification; its restriction of scalars degenerates.
    """
    field = GF(p)
    iota = IModule(1)
    x = Poly.var(field, 1, 0)
    rel = DualPoly(x**p, (-x,))
    algebra = PresentedAlgebra(field, ["x"], [rel], strategy="rules", iota=iota)
    x1, x2 = Poly.var(field, 2, 0), Poly.var(field, 2, 1)
    return HopfPresentation(
        f"nonrigid{p}", algebra,
        {"x": DualPoly.of_poly(x1 + x2, 1)},
        {"x": DualPoly.const(field, 0, 1, 0)},
        {"x": DualPoly.of_poly(-x, 1)},
        smooth=False,
    )


CATALOG = {
    "ga": additive_group,
    "gm": multiplicative_group,
    "mu2": lambda f: roots_of_unity(f, 2),
    "mu3": lambda f: roots_of_unity(f, 3),
    "mu4": lambda f: roots_of_unity(f, 4),
    "mu5": lambda f: roots_of_unity(f, 5),
    "mu6": lambda f: roots_of_unity(f, 6),
    "alpha_p": frobenius_kernel,
    "w2": lambda f: witt_group(f, 2),
    "w3": lambda f: witt_group(f, 3),
    "ga_x_ga": ga_times_ga,
    "ga_gm": ga_semidirect_gm,
    "u3": heisenberg,
    "z2": lambda f: constant_cyclic(f, 2),
    "z3": lambda f: constant_cyclic(f, 3),
}
