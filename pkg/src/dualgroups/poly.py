"""Exact multivariate polynomial arithmetic and quotient-ring normal forms.

Polynomials are sparse dicts from exponent tuples to nonzero coefficients,
under the graded reverse lexicographic order fixed by generator-declaration
order.  DualPoly layers generalized dual numbers on top: an element of
A[I] = A + I*A with I^2 = 0 is a body polynomial plus one infinitesimal
part per basis vector of I, and all arithmetic kills products of parts.

PresentedAlgebra is a finitely presented commutative algebra with a
normal-form strategy (free / confluent rewrite rules / computed Groebner
basis); normal forms are canonical representatives, so equality in the
quotient is string equality of normal forms.
"""

from __future__ import annotations

import itertools

from .fields import Field


# ---------------------------------------------------------------------------
# monomials: plain exponent tuples


def grevlex_key(exps):
    """Sort key: ascending order is grevlex ascending (max() gives the leading term)."""
    return (sum(exps), tuple(-e for e in reversed(exps)))


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_deg(a):
    return sum(a)


class Poly:
    """Sparse exact polynomial over a Field, in a fixed number of variables."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: Field, nvars: int, terms=None):
        self.field = field
        self.nvars = nvars
        if terms is None:
            self.terms = {}
        else:
            zero = field.zero
            self.terms = {m: c for m, c in terms.items() if c != zero}

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, field, nvars):
        return cls(field, nvars)

    @classmethod
    def const(cls, field, nvars, c):
        c = field.coerce(c)
        if c == field.zero:
            return cls(field, nvars)
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, field, nvars, i, power=1):
        e = [0] * nvars
        e[i] = power
        return cls(field, nvars, {tuple(e): field.one})

    # -- predicates -----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and (0,) * self.nvars in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, self.field.zero)

    def degree(self):
        return max((mono_deg(m) for m in self.terms), default=-1)

    def leading(self):
        m = max(self.terms, key=grevlex_key)
        return m, self.terms[m]

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        assert self.field == other.field and self.nvars == other.nvars
        terms = dict(self.terms)
        zero = self.field.zero
        add = self.field.add
        for m, c in other.terms.items():
            s = add(terms.get(m, zero), c)
            if s == zero:
                terms.pop(m, None)
            else:
                terms[m] = s
        out = Poly(self.field, self.nvars)
        out.terms = terms
        return out

    def __neg__(self):
        neg = self.field.neg
        out = Poly(self.field, self.nvars)
        out.terms = {m: neg(c) for m, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        assert self.field == other.field and self.nvars == other.nvars
        p = self.field.p
        terms = {}
        if p:
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = tuple(x + y for x, y in zip(m1, m2))
                    terms[m] = (terms.get(m, 0) + c1 * c2) % p
            terms = {m: c for m, c in terms.items() if c}
        else:
            for m1, c1 in self.terms.items():
                for m2, c2 in other.terms.items():
                    m = tuple(x + y for x, y in zip(m1, m2))
                    v = terms.get(m)
                    terms[m] = c1 * c2 if v is None else v + c1 * c2
            terms = {m: c for m, c in terms.items() if c != 0}
        out = Poly(self.field, self.nvars)
        out.terms = terms
        return out

    def scale(self, c):
        c = self.field.coerce(c)
        if c == self.field.zero:
            return Poly(self.field, self.nvars)
        mul = self.field.mul
        out = Poly(self.field, self.nvars)
        out.terms = {m: mul(cc, c) for m, cc in self.terms.items()}
        return out

    def mono_shift(self, mono, c):
        """self * c*x^mono without building the one-term factor."""
        mul = self.field.mul
        out = Poly(self.field, self.nvars)
        out.terms = {mono_mul(m, mono): mul(cc, c) for m, cc in self.terms.items()}
        return out

    def __pow__(self, n: int):
        result = Poly.const(self.field, self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.field == other.field
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.field, self.nvars, frozenset(self.terms.items())))

    # -- substitution ----------------------------------------------------

    def subs(self, values: list) -> "Poly":
        """Evaluate at values[i] (Polys over a common target ring)."""
        assert len(values) == self.nvars
        if not self.terms:
            tgt = values[0] if values else None
            if tgt is None:
                return Poly(self.field, 0)
            return Poly.zero(tgt.field, tgt.nvars)
        if not values:
            return Poly(self.field, 0, dict(self.terms))
        tgt_field, tgt_n = values[0].field, values[0].nvars
        pow_cache = [{} for _ in range(self.nvars)]

        def power(i, e):
            cache = pow_cache[i]
            if e not in cache:
                cache[e] = values[i] ** e
            return cache[e]

        total = Poly.zero(tgt_field, tgt_n)
        for m, c in sorted(self.terms.items(), key=lambda t: grevlex_key(t[0])):
            term = Poly.const(tgt_field, tgt_n, c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            total = total + term
        return total

    def subs_dual(self, values: list) -> "DualPoly":
        """Evaluate at DualPoly values (I^2 = 0 is applied throughout)."""
        assert len(values) == self.nvars and values
        rank = values[0].rank
        tgt_field, tgt_n = values[0].body.field, values[0].body.nvars
        pow_cache = [{} for _ in range(self.nvars)]

        def power(i, e):
            cache = pow_cache[i]
            if e not in cache:
                cache[e] = values[i].power(e)
            return cache[e]

        total = DualPoly.zero(tgt_field, tgt_n, rank)
        for m, c in sorted(self.terms.items(), key=lambda t: grevlex_key(t[0])):
            term = DualPoly.const(tgt_field, tgt_n, rank, c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            total = total + term
        return total

    def map_field(self, field: Field) -> "Poly":
        """Push coefficients into another field (e.g. reduce Q -> GF(p))."""
        out = Poly(field, self.nvars)
        terms = {}
        for m, c in self.terms.items():
            cc = field.coerce(c)
            if cc != field.zero:
                terms[m] = cc
        out.terms = terms
        return out

    def embed(self, nvars: int, offset: int) -> "Poly":
        """View in a larger ring, variables shifted by offset (tensor slots)."""
        out = Poly(self.field, nvars)
        pad_l = offset
        pad_r = nvars - offset - self.nvars
        assert pad_r >= 0
        out.terms = {
            (0,) * pad_l + m + (0,) * pad_r: c for m, c in self.terms.items()
        }
        return out

    def reindex(self, nvars: int, mapping) -> "Poly":
        """Variable i of self becomes variable mapping[i] of the target ring."""
        out = Poly(self.field, nvars)
        terms = {}
        for m, c in self.terms.items():
            e = [0] * nvars
            for i, ei in enumerate(m):
                if ei:
                    e[mapping[i]] += ei
            terms[tuple(e)] = c
        out.terms = terms
        return out

    # -- text -------------------------------------------------------------

    def render(self, names) -> str:
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)
        parts = []
        for m, c in items:
            factors = []
            for i, e in enumerate(m):
                if e == 1:
                    factors.append(names[i])
                elif e > 1:
                    factors.append(f"{names[i]}^{e}")
            mono = "*".join(factors)
            neg = c < 0
            ca = -c if neg else c
            if not mono:
                text = str(ca)
            elif ca == self.field.one:
                text = mono
            else:
                text = f"{ca}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + text)
            else:
                parts.append(("- " if neg else "+ ") + text)
        return " ".join(parts)

    def __repr__(self):
        return f"Poly({self.render([f'x{i}' for i in range(self.nvars)])})"


class DualPoly:
    """Element of A[I] = A + I*A: a body Poly and one part Poly per basis of I."""

    __slots__ = ("body", "parts")

    def __init__(self, body: Poly, parts=()):
        self.body = body
        self.parts = tuple(parts)

    @property
    def rank(self):
        return len(self.parts)

    @property
    def field(self):
        return self.body.field

    @property
    def nvars(self):
        return self.body.nvars

    @classmethod
    def zero(cls, field, nvars, rank):
        z = Poly.zero(field, nvars)
        return cls(z, (z,) * rank)

    @classmethod
    def const(cls, field, nvars, rank, c):
        z = Poly.zero(field, nvars)
        return cls(Poly.const(field, nvars, c), (z,) * rank)

    @classmethod
    def of_poly(cls, p: Poly, rank):
        z = Poly.zero(p.field, p.nvars)
        return cls(p, (z,) * rank)

    @classmethod
    def eps(cls, field, nvars, rank, j, value=None):
        """value * eps_j (value defaults to 1)."""
        z = Poly.zero(field, nvars)
        if value is None:
            value = Poly.const(field, nvars, 1)
        parts = [z] * rank
        parts[j] = value
        return cls(z, parts)

    def is_zero(self):
        return self.body.is_zero() and all(q.is_zero() for q in self.parts)

    def __add__(self, other):
        assert self.rank == other.rank
        return DualPoly(
            self.body + other.body,
            tuple(a + b for a, b in zip(self.parts, other.parts)),
        )

    def __neg__(self):
        return DualPoly(-self.body, tuple(-q for q in self.parts))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        assert self.rank == other.rank
        body = self.body * other.body
        parts = tuple(
            self.body * q + p * other.body for p, q in zip(self.parts, other.parts)
        )
        return DualPoly(body, parts)

    def power(self, n: int):
        if n == 0:
            return DualPoly.const(self.field, self.nvars, self.rank, 1)
        # (b + i)^n = b^n + n b^(n-1) i  with i the infinitesimal half
        bn1 = self.body ** (n - 1)
        bn = bn1 * self.body
        nc = self.field.coerce(n)
        return DualPoly(bn, tuple((bn1 * q).scale(nc) for q in self.parts))

    def scale(self, c):
        return DualPoly(self.body.scale(c), tuple(q.scale(c) for q in self.parts))

    def scale_dual(self, c_body, c_parts):
        """Multiply by the k[I]-scalar c_body + sum_j c_parts[j] eps_j."""
        body = self.body.scale(c_body)
        parts = tuple(
            q.scale(c_body) + self.body.scale(cj)
            for q, cj in zip(self.parts, c_parts)
        )
        return DualPoly(body, parts)

    def eps_mul(self, j):
        """Multiply by eps_j: shifts the body into part j, kills all parts."""
        z = Poly.zero(self.field, self.nvars)
        parts = [z] * self.rank
        parts[j] = self.body
        return DualPoly(z, parts)

    def __eq__(self, other):
        return (
            isinstance(other, DualPoly)
            and self.body == other.body
            and self.parts == other.parts
        )

    def __hash__(self):
        return hash((self.body, self.parts))

    def subs(self, values: list) -> "DualPoly":
        """Evaluate at DualPoly values; parts only see value bodies (I^2 = 0)."""
        assert values
        rank = self.rank
        out = self.body.subs_dual(values)
        bodies = [v.body for v in values]
        for j, q in enumerate(self.parts):
            if not q.is_zero():
                out = out + q.subs(bodies).eps_mul_into(rank, j)
        return out

    def map_field(self, field: Field) -> "DualPoly":
        return DualPoly(self.body.map_field(field), tuple(q.map_field(field) for q in self.parts))

    def embed(self, nvars, offset) -> "DualPoly":
        return DualPoly(
            self.body.embed(nvars, offset),
            tuple(q.embed(nvars, offset) for q in self.parts),
        )

    def reindex(self, nvars, mapping) -> "DualPoly":
        return DualPoly(
            self.body.reindex(nvars, mapping),
            tuple(q.reindex(nvars, mapping) for q in self.parts),
        )

    def lift_rank(self, rank) -> "DualPoly":
        assert rank >= self.rank
        z = Poly.zero(self.field, self.nvars)
        return DualPoly(self.body, self.parts + (z,) * (rank - self.rank))

    def render(self, names, eps_names=None) -> str:
        eps_names = eps_names or [f"e{j+1}" for j in range(self.rank)]
        chunks = []
        if not self.body.is_zero():
            chunks.append(self.body.render(names))
        for j, q in enumerate(self.parts):
            if not q.is_zero():
                if q.is_constant():
                    chunks.append(f"{eps_names[j]}*{q.render(names)}"
                                  if q.constant_term() != self.field.one
                                  else eps_names[j])
                else:
                    chunks.append(f"{eps_names[j]}*({q.render(names)})")
        return " + ".join(chunks) if chunks else "0"

    def __repr__(self):
        return f"DualPoly({self.render([f'x{i}' for i in range(self.nvars)])})"


def _poly_eps_mul_into(p: Poly, rank: int, j: int) -> DualPoly:
    z = Poly.zero(p.field, p.nvars)
    parts = [z] * rank
    parts[j] = p
    return DualPoly(z, parts)


# attach as method used by DualPoly.subs
Poly.eps_mul_into = _poly_eps_mul_into


class IModule:
    """Finite free k-module I with ordered basis labels; k[I] has I^2 = 0."""

    __slots__ = ("rank", "labels")

    def __init__(self, rank: int, labels=None):
        assert rank >= 0
        self.rank = rank
        self.labels = tuple(labels) if labels else tuple(f"e{j+1}" for j in range(rank))
        assert len(set(self.labels)) == len(self.labels)
        assert len(self.labels) == rank

    def __eq__(self, other):
        return isinstance(other, IModule) and self.labels == other.labels

    def __hash__(self):
        return hash(self.labels)

    def __repr__(self):
        return f"IModule(rank={self.rank})"


TRIVIAL_I = IModule(0)


class ConfigurationError(Exception):
    pass


class PresentedAlgebra:
    """Finitely presented commutative algebra over k or k[I].

    Relations are DualPolys (rank 0 over plain k).  Normal forms reduce the
    body against the body-leading rewrite system, propagating infinitesimal
    corrections for relations with nonzero parts, then reduce each part.
    """

    __slots__ = ("field", "iota", "gens", "relations", "strategy", "_rules", "_cache")

    def __init__(self, field, gens, relations=(), strategy="free", iota=TRIVIAL_I, rules=None):
        self.field = field
        self.iota = iota
        self.gens = tuple(gens)
        rels = []
        for r in relations:
            if isinstance(r, Poly):
                r = DualPoly.of_poly(r, iota.rank)
            assert r.rank == iota.rank
            rels.append(r)
        self.relations = tuple(rels)
        self.strategy = strategy
        if strategy == "free":
            if self.relations:
                raise ConfigurationError("free strategy with nonempty relations")
            self._rules = ()
        elif strategy == "rules":
            self._rules = tuple(rules) if rules is not None else self.relations
        elif strategy == "groebner":
            from .groebner import buchberger

            bodies = [r.body for r in self.relations if not r.body.is_zero()]
            basis = buchberger(bodies)
            # relations whose body leads carry their parts as corrections
            by_body = {}
            for r in self.relations:
                if not r.body.is_zero():
                    by_body.setdefault(r.body.leading()[0], r)
            rules = []
            for g in basis:
                r = by_body.get(g.leading()[0])
                if r is not None and r.body == g:
                    rules.append(r)
                else:
                    rules.append(DualPoly.of_poly(g, iota.rank))
            self._rules = tuple(rules)
        else:
            raise ConfigurationError(f"unknown strategy {strategy!r}")
        self._cache = {}

    @property
    def nvars(self):
        return len(self.gens)

    @property
    def rank(self):
        return self.iota.rank

    def var(self, name_or_index, power=1) -> Poly:
        i = name_or_index if isinstance(name_or_index, int) else self.gens.index(name_or_index)
        return Poly.var(self.field, self.nvars, i, power)

    def const(self, c) -> Poly:
        return Poly.const(self.field, self.nvars, c)

    # -- normal forms ----------------------------------------------------

    def _body_rules(self):
        return [
            (r.body.leading(), r)
            for r in self._rules
            if not r.body.is_zero()
        ]

    def normal_form(self, p):
        """Canonical representative; accepts Poly (same arity) or DualPoly."""
        if isinstance(p, Poly):
            assert p.nvars == self.nvars
            dp = self.normal_form_dual(DualPoly.of_poly(p, self.rank))
            if self.rank == 0:
                return dp.body
            return dp
        return self.normal_form_dual(p)

    def reduce_poly(self, p: Poly) -> Poly:
        """Reduce a plain Poly by body rules only (no part corrections)."""
        rules = self._body_rules()
        if not rules:
            return p
        return _reduce(p, [(lm, lc, r.body) for (lm, lc), r in rules], self.field)

    def normal_form_dual(self, p: DualPoly) -> DualPoly:
        rules = self._body_rules()
        if not rules:
            return p
        rank = self.rank
        field = self.field
        body = p.body
        parts = list(p.parts)
        # phase 1: reduce body by full dual relations, corrections flow to parts
        changed = True
        while changed and not body.is_zero():
            changed = False
            for m in sorted(body.terms, key=grevlex_key, reverse=True):
                c = body.terms.get(m)
                if c is None:
                    continue
                for (lm, lc), rel in rules:
                    if mono_divides(lm, m):
                        q = mono_div(m, lm)
                        factor = field.div(c, lc)
                        body = body - rel.body.mono_shift(q, factor)
                        for j in range(rank):
                            if not rel.parts[j].is_zero():
                                parts[j] = parts[j] - rel.parts[j].mono_shift(q, factor)
                        changed = True
                        break
                if changed:
                    break
        # phase 2: parts reduce by body rules alone (eps * rel = eps * rel.body)
        body_rules = [(lm, lc, rel.body) for (lm, lc), rel in rules]
        parts = [_reduce(q, body_rules, field) for q in parts]
        return DualPoly(body, parts)

    def is_zero_mod(self, p) -> bool:
        nf = self.normal_form(p)
        return nf.is_zero()

    # -- derived rings ----------------------------------------------------

    def tensor_power(self, m: int) -> "PresentedAlgebra":
        """A^(tensor m): slot s gets variables [s*n, (s+1)*n), relations copied."""
        key = ("tensor", m)
        if key in self._cache:
            return self._cache[key]
        n = self.nvars
        gens = []
        for s in range(m):
            gens.extend(f"{g}({s+1})" for g in self.gens)
        rels = []
        for s in range(m):
            for r in self.relations:
                rels.append(r.embed(n * m, s * n))
        strategy = self.strategy if self.strategy != "groebner" else "rules"
        rules = None
        if strategy == "rules":
            rules = [r.embed(n * m, s * n) for s in range(m) for r in self._rules]
        out = PresentedAlgebra(
            self.field, gens, rels, strategy=strategy if rels else "free",
            iota=self.iota, rules=rules if rels else None,
        )
        self._cache[key] = out
        return out

    def standard_monomials(self, max_degree=None):
        """Monomials irreducible under the rewrite rules, grevlex ascending.

        With max_degree=None the quotient must be finite dimensional.
        """
        lts = [r.body.leading()[0] for r in self._rules if not r.body.is_zero()]
        n = self.nvars

        if max_degree is None:
            # finite staircase: every variable must appear in some pure-power LT
            bounds = []
            for i in range(n):
                b = None
                for lt in lts:
                    if lt[i] and all(e == 0 for j, e in enumerate(lt) if j != i):
                        b = lt[i] if b is None else min(b, lt[i])
                if b is None:
                    raise ConfigurationError(
                        f"quotient not visibly finite over generator {self.gens[i]}"
                    )
                bounds.append(b)
            candidates = itertools.product(*[range(b) for b in bounds])
        else:
            def up_to(deg):
                for m in itertools.product(*[range(deg + 1)] * n):
                    if sum(m) <= deg:
                        yield m
            candidates = up_to(max_degree)

        out = [
            m
            for m in candidates
            if not any(mono_divides(lt, m) for lt in lts)
        ]
        out.sort(key=grevlex_key)
        return out

    def render(self, p) -> str:
        if isinstance(p, DualPoly):
            return p.render(self.gens, self.iota.labels if self.iota.rank else None)
        return p.render(self.gens)

    def __repr__(self):
        base = repr(self.field) + (f"[I rank {self.rank}]" if self.rank else "")
        return f"PresentedAlgebra({base}; gens={list(self.gens)}; {len(self.relations)} relations)"


def _reduce(p: Poly, rules, field) -> Poly:
    """Reduce p by rules = [(leading_mono, leading_coeff, full_poly)]."""
    if not rules or p.is_zero():
        return p
    work = p
    while True:
        hit = False
        for m in sorted(work.terms, key=grevlex_key, reverse=True):
            c = work.terms.get(m)
            if c is None:
                continue
            for lm, lc, g in rules:
                if mono_divides(lm, m):
                    work = work - g.mono_shift(mono_div(m, lm), field.div(c, lc))
                    hit = True
                    break
            if hit:
                break
        if not hit:
            return work


def dual_split(algebra: PresentedAlgebra, values: dict):
    """Split generator values of a map A -> R[I] into body and part maps.

    values maps generator names to DualPolys over the target ring.  Returns
    (bodies, parts) with parts[j] the eps_j component.  When the source
    algebra has relations they must be preserved; otherwise the data does
    not define a k[I]-algebra morphism.
    """
    rank = None
    for g in algebra.gens:
        v = values[g]
        if rank is None:
            rank = v.rank
        assert v.rank == rank
    bodies = {g: values[g].body for g in algebra.gens}
    parts = [{g: values[g].parts[j] for g in algebra.gens} for j in range(rank)]
    vals = [values[g] for g in algebra.gens]
    for rel in algebra.relations:
        image = rel.subs(vals) if vals else rel
        if not image.is_zero():
            raise NotKAlgebraMapError(
                f"relation {algebra.render(rel)} not preserved"
            )
    return bodies, parts


def dual_join(bodies: dict, parts: list) -> dict:
    """Inverse of dual_split: reassemble generator values v_bar + v."""
    out = {}
    for g, b in bodies.items():
        out[g] = DualPoly(b, tuple(ps[g] for ps in parts))
    return out


class NotKAlgebraMapError(Exception):
    pass
