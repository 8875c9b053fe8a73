"""Exact coefficient fields: GF(p) for prime p, and the rationals.

GF(p) elements are plain ints reduced into [0, p); rational elements are
`fractions.Fraction` (always in lowest terms with positive denominator).
All arithmetic is routed through a Field instance so polynomial code can
stay agnostic of the concrete representation.
"""

from __future__ import annotations

from fractions import Fraction


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Field:
    """GF(p) when p is a prime, the rationals when p == 0."""

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p != 0 and not _is_prime(p):
            raise ValueError(f"characteristic must be 0 or a prime, got {p}")
        if p > 2**31:
            raise ValueError(f"prime too large: {p}")
        self.p = p

    # -- construction ------------------------------------------------

    @property
    def zero(self):
        return 0 if self.p else Fraction(0)

    @property
    def one(self):
        return 1 if self.p else Fraction(1)

    def coerce(self, n):
        """Bring an int / Fraction / field element into canonical form."""
        if self.p:
            if isinstance(n, Fraction):
                return self.mul(n.numerator % self.p, self.inv(n.denominator % self.p))
            return int(n) % self.p
        return Fraction(n)

    # -- arithmetic --------------------------------------------------

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.p else a * b

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def inv(self, a):
        if self.p:
            if a % self.p == 0:
                raise ZeroDivisionError("inverse of 0 in GF(p)")
            return pow(a, self.p - 2, self.p)
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in Q")
        return Fraction(1) / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    # -- text --------------------------------------------------------

    def format_scalar(self, a) -> str:
        """Standalone coefficient serialization: `a/b` over Q, `a mod p` over GF(p)."""
        if self.p:
            return f"{a % self.p} mod {self.p}"
        return str(Fraction(a))

    def parse_scalar(self, text: str):
        text = text.strip()
        if text.endswith(f"mod {self.p}") and self.p:
            return int(text.split("mod")[0].strip()) % self.p
        return self.coerce(Fraction(text))

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return f"GF({self.p})" if self.p else "QQ"


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)
