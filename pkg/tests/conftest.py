import random

import pytest

from dualgroups.fields import GF, QQ


@pytest.fixture
def rng():
    return random.Random(20260809)


def random_coeff(rng, field, span=9):
    if field.p:
        return rng.randrange(field.p)
    from fractions import Fraction

    return Fraction(rng.randint(-span, span), rng.randint(1, span))


def random_poly(rng, field, nvars, deg=3, terms=4):
    from dualgroups.poly import Poly

    out = Poly.zero(field, nvars)
    for _ in range(terms):
        mono = tuple(rng.randint(0, deg) for _ in range(nvars))
        out = out + Poly(field, nvars, {mono: field.coerce(random_coeff(rng, field))})
    return out
