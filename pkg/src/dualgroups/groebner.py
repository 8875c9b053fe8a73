"""Buchberger's algorithm under grevlex, over an exact coefficient field.

Termination is guaranteed over a field; the returned basis is reduced
(monic, autoreduced, sorted), so normal forms against it are canonical.
"""

from __future__ import annotations

from .poly import Poly, grevlex_key, mono_div, mono_divides, mono_lcm, mono_mul, _reduce


def _spoly(f: Poly, g: Poly) -> Poly:
    (mf, cf), (mg, cg) = f.leading(), g.leading()
    lcm = mono_lcm(mf, mg)
    field = f.field
    a = f.mono_shift(mono_div(lcm, mf), field.inv(cf))
    b = g.mono_shift(mono_div(lcm, mg), field.inv(cg))
    return a - b


def reduce_by(p: Poly, basis) -> Poly:
    rules = [(g.leading()[0], g.leading()[1], g) for g in basis if not g.is_zero()]
    return _reduce(p, rules, p.field)


def buchberger(relations) -> list:
    """Reduced Groebner basis of the ideal generated by relations (grevlex)."""
    basis = [p for p in relations if not p.is_zero()]
    if not basis:
        return []
    field = basis[0].field
    basis = [p.scale(field.inv(p.leading()[1])) for p in basis]

    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
    while pairs:
        i, j = pairs.pop()
        f, g = basis[i], basis[j]
        mf, mg = f.leading()[0], g.leading()[0]
        # coprime leading monomials: S-polynomial reduces to zero
        if mono_mul(mf, mg) == mono_lcm(mf, mg):
            continue
        r = reduce_by(_spoly(f, g), basis)
        if not r.is_zero():
            r = r.scale(field.inv(r.leading()[1]))
            basis.append(r)
            pairs.extend((k, len(basis) - 1) for k in range(len(basis) - 1))

    # autoreduce: drop redundant leading terms, reduce tails
    basis.sort(key=lambda p: grevlex_key(p.leading()[0]))
    minimal = []
    for p in basis:
        lt = p.leading()[0]
        if not any(mono_divides(q.leading()[0], lt) for q in minimal):
            minimal.append(p)
    reduced = []
    for idx, p in enumerate(minimal):
        rest = minimal[:idx] + minimal[idx + 1:]
        r = reduce_by(p, rest) if rest else p
        if not r.is_zero():
            reduced.append(r.scale(field.inv(r.leading()[1])))
    reduced.sort(key=lambda p: grevlex_key(p.leading()[0]))
    return reduced
