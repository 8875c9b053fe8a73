"""Text format for group presentations.

Sections: BASE (field Fp <p> | field Q; optional `I rank <r>`), GENERATORS,
RELATIONS, COMUL, COUNIT, ANTIPODE, and optional COCYCLE and RIGIDIFICATION.
Polynomials are sums of terms `c*x^e*...`; tensor-slot variables are written
`x(1)`, `x(2)`; infinitesimal basis elements are `e1`, `e2`, ...  The printer
emits grevlex-descending normal forms, and parse o print is the identity on
them.  Unknown sections are rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .fields import GF, QQ, Field
from .hopf import HopfPresentation
from .poly import DualPoly, IModule, Poly, PresentedAlgebra

SECTIONS = (
    "BASE", "GENERATORS", "RELATIONS", "COMUL", "COUNIT", "ANTIPODE",
    "COCYCLE", "RIGIDIFICATION",
)


class ParseError(Exception):
    pass


_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9']*|\d+|[()+\-*/^=])")


def _tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ParseError(f"cannot tokenize {text[pos:]!r}")
            break
        out.append(m.group(1))
        pos = m.end()
    return out


class _ExprParser:
    """Recursive-descent parser for dual polynomial expressions."""

    def __init__(self, tokens, field, gens, rank, nslots, eps_labels):
        self.tokens = tokens
        self.pos = 0
        self.field = field
        self.gens = list(gens)
        self.rank = rank
        self.nslots = nslots
        self.nvars = len(gens) * max(nslots, 1) if nslots else 0
        self.eps_labels = list(eps_labels)

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        t = self.peek()
        if t is None:
            raise ParseError("unexpected end of expression")
        self.pos += 1
        return t

    def const(self, c) -> DualPoly:
        return DualPoly.const(self.field, self.nvars, self.rank, c)

    def parse(self) -> DualPoly:
        e = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing tokens: {self.tokens[self.pos:]}")
        return e

    def expr(self) -> DualPoly:
        sign = 1
        t = self.peek()
        if t in ("+", "-"):
            self.take()
            sign = -1 if t == "-" else 1
        e = self.term()
        if sign < 0:
            e = -e
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            e = e - rhs if op == "-" else e + rhs
        return e

    def term(self) -> DualPoly:
        e = self.factor()
        while self.peek() == "*":
            self.take()
            e = e * self.factor()
        return e

    def factor(self) -> DualPoly:
        e = self.atom()
        if self.peek() == "^":
            self.take()
            n = self.take()
            if not n.isdigit():
                raise ParseError(f"exponent must be an integer, got {n!r}")
            e = e.power(int(n))
        return e

    def atom(self) -> DualPoly:
        t = self.take()
        if t == "(":
            e = self.expr()
            if self.take() != ")":
                raise ParseError("expected ')'")
            return e
        if t == "-":
            return -self.atom()
        if t.isdigit():
            value = Fraction(int(t))
            if self.peek() == "/":
                self.take()
                d = self.take()
                if not d.isdigit():
                    raise ParseError("expected denominator")
                value = value / int(d)
            return self.const(self.field.coerce(value))
        if t in self.eps_labels:
            j = self.eps_labels.index(t)
            return DualPoly.eps(self.field, self.nvars, self.rank, j)
        if t in self.gens:
            i = self.gens.index(t)
            slot = 1
            if self.peek() == "(":
                self.take()
                s = self.take()
                if not s.isdigit():
                    raise ParseError("expected slot number")
                slot = int(s)
                if self.take() != ")":
                    raise ParseError("expected ')' after slot")
            if self.nslots == 0:
                raise ParseError(f"variable {t!r} not allowed in a scalar value")
            if not (1 <= slot <= self.nslots):
                raise ParseError(f"slot {slot} out of range")
            idx = (slot - 1) * len(self.gens) + i
            return DualPoly.of_poly(Poly.var(self.field, self.nvars, idx), self.rank)
        raise ParseError(f"unknown name {t!r}")


@dataclass
class PresentationFile:
    """Parsed contents of a .grp file."""

    field: Field
    iota: IModule
    group: HopfPresentation
    is_dual: bool                      # presentation itself lives over k[I]
    cocycle_values: dict | None        # generator -> DualPoly over 2n vars
    rigidification: dict | None        # generator -> DualPoly over n vars


def parse_presentation(text: str) -> PresentationFile:
    sections = {}
    current = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        head = line.strip()
        if not line[0].isspace() and head.upper() == head and head.isalpha():
            if head not in SECTIONS:
                raise ParseError(f"unknown section {head!r}")
            if head in sections:
                raise ParseError(f"duplicate section {head!r}")
            current = head
            sections[head] = []
            continue
        if current is None:
            raise ParseError(f"content before first section: {line!r}")
        sections[current].append(line.strip())

    for required in ("BASE", "GENERATORS", "COMUL", "COUNIT", "ANTIPODE"):
        if required not in sections:
            raise ParseError(f"missing section {required}")

    field = None
    rank = 0
    for line in sections["BASE"]:
        words = line.split()
        if words[:2] == ["field", "Fp"]:
            field = GF(int(words[2]))
        elif words[:2] == ["field", "Q"]:
            field = QQ
        elif words[:2] == ["I", "rank"]:
            rank = int(words[2])
        else:
            raise ParseError(f"bad BASE line {line!r}")
    if field is None:
        raise ParseError("BASE must declare the field")
    iota = IModule(rank)

    gens = []
    for line in sections["GENERATORS"]:
        gens.extend(line.split())
    if len(set(gens)) != len(gens) or not gens:
        raise ParseError("generators must be distinct and nonempty")

    def parse_value(text_, nslots):
        tokens = _tokenize(text_)
        return _ExprParser(tokens, field, gens, rank, nslots, iota.labels).parse()

    def parse_map(lines, nslots):
        out = {}
        for line in lines:
            if "=" not in line:
                raise ParseError(f"expected 'gen = value': {line!r}")
            name, _, value = line.partition("=")
            name = name.strip()
            if name not in gens:
                raise ParseError(f"unknown generator {name!r}")
            out[name] = parse_value(value, nslots)
        missing = [g for g in gens if g not in out]
        if missing:
            raise ParseError(f"missing values for {missing}")
        return out

    relations = [parse_value(line, 1) for line in sections.get("RELATIONS", [])]
    comul = parse_map(sections["COMUL"], 2)
    counit = parse_map(sections["COUNIT"], 0)
    antipode = parse_map(sections["ANTIPODE"], 1)

    cocycle_values = None
    if "COCYCLE" in sections:
        cocycle_values = parse_map(sections["COCYCLE"], 2)
    rigidification = None
    if "RIGIDIFICATION" in sections:
        rigidification = parse_map(sections["RIGIDIFICATION"], 1)

    parts_used = any(
        any(not q.is_zero() for q in v.parts)
        for v in (list(relations) + list(comul.values())
                  + list(counit.values()) + list(antipode.values()))
    )
    is_dual = rank >= 1 and (parts_used or cocycle_values is None and rigidification is not None)
    group_rank = rank if is_dual else 0

    def at_rank(v: DualPoly) -> DualPoly:
        if group_rank == 0:
            return DualPoly.of_poly(v.body, 0)
        return v

    algebra = PresentedAlgebra(
        field, gens, [at_rank(r) for r in relations],
        strategy="groebner" if relations else "free",
        iota=IModule(group_rank, iota.labels[:group_rank]),
    )
    group = HopfPresentation(
        "file", algebra,
        {g: at_rank(comul[g]) for g in gens},
        {g: at_rank(counit[g]) for g in gens},
        {g: at_rank(antipode[g]) for g in gens},
    )
    return PresentationFile(field, iota, group, is_dual, cocycle_values, rigidification)


# ---------------------------------------------------------------------------
# printing


def _slot_names(gens, nslots):
    if nslots == 1:
        return list(gens)
    out = []
    for s in range(nslots):
        out.extend(f"{g}({s+1})" for g in gens)
    return out


def render_value(group_or_gens, value: DualPoly, nslots, eps_labels) -> str:
    gens = group_or_gens if isinstance(group_or_gens, (list, tuple)) else group_or_gens.gens
    names = _slot_names(list(gens), nslots) if nslots else []
    return value.render(names, list(eps_labels) if eps_labels else None)


def print_presentation(pf_or_group, iota=None, cocycle=None, rigidification=None) -> str:
    """Canonical text of a presentation (+ optional cocycle/rigidification)."""
    if isinstance(pf_or_group, PresentationFile):
        group = pf_or_group.group
        iota = pf_or_group.iota
        cocycle = pf_or_group.cocycle_values
        rigidification = pf_or_group.rigidification
    else:
        group = pf_or_group
        iota = iota if iota is not None else group.iota
    field = group.field
    lines = ["BASE"]
    lines.append(f"  field Fp {field.p}" if field.p else "  field Q")
    if iota.rank:
        lines.append(f"  I rank {iota.rank}")
    lines.append("GENERATORS")
    lines.append("  " + " ".join(group.gens))
    lines.append("RELATIONS")
    for rel in group.algebra.relations:
        lines.append("  " + render_value(group, rel, 1, iota.labels))
    lines.append("COMUL")
    for g in group.gens:
        lines.append(f"  {g} = " + render_value(group, group.comul[g], 2, iota.labels))
    lines.append("COUNIT")
    for g in group.gens:
        lines.append(f"  {g} = " + render_value(group, group.counit[g], 0, iota.labels))
    lines.append("ANTIPODE")
    for g in group.gens:
        lines.append(f"  {g} = " + render_value(group, group.antipode[g], 1, iota.labels))
    if cocycle is not None:
        values = cocycle if isinstance(cocycle, dict) else cocycle.values
        lines.append("COCYCLE")
        for g in group.gens:
            lines.append(f"  {g} = " + render_value(group, values[g], 2, iota.labels))
    if rigidification is not None:
        lines.append("RIGIDIFICATION")
        for g in group.gens:
            lines.append(f"  {g} = " + render_value(group, rigidification[g], 1, iota.labels))
    return "\n".join(lines) + "\n"
