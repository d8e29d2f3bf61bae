"""Shared helpers for the test suite: random polynomial generation and the
two worked families used as regression anchors."""

import random
from fractions import Fraction

from cuspcount.polyring import Poly

EX1 = ("x1^3 + x2^2 + t*x1", "x1*x2")
EX2 = ("x1^4 + x2^4 + x1^2*x2^2 + t*x1", "x1*x2 + t*x2")

# families that pass every hypothesis, used by the property suites
CRAFTED_FAMILIES = [
    ("x1^3 + x2^2 - t*x1", "x1*x2"),          # parameter-reversed cubic
    ("x1^3 - x2^2 + t*x1", "x1*x2"),          # sign variant
    ("x1^2 - x2^2 + t*x1", "x1*x2"),          # quadratic fold circle
    ("x1", "x2^3 - x1*x2 - t*x2"),            # single traveling cusp
    ("x1", "x2^3 - x1^2*x2 + t^2*x2"),        # symmetric cusp pair
    ("x1^3 + x2^2 + t*x1", "2*x1*x2"),        # rescaled cubic
]


def random_poly(rng: random.Random, vars, max_deg=3, n_terms=5,
                coeff_range=3, rational=False) -> Poly:
    """Random sparse polynomial; may be zero."""
    nv = len(vars)
    terms = {}
    for _ in range(n_terms):
        while True:
            mono = tuple(rng.randint(0, max_deg) for _ in range(nv))
            if sum(mono) <= max_deg:
                break
        c = rng.randint(-coeff_range, coeff_range)
        if c == 0:
            continue
        coeff = Fraction(c, rng.randint(1, 4)) if rational else Fraction(c)
        terms[mono] = terms.get(mono, Fraction(0)) + coeff
    return Poly(vars, {m: c for m, c in terms.items() if c})


def random_nonzero_poly(rng, vars, **kw) -> Poly:
    while True:
        p = random_poly(rng, vars, **kw)
        if not p.is_zero():
            return p


def random_origin_poly(rng, vars, **kw) -> Poly:
    """Random polynomial vanishing at the origin."""
    while True:
        p = random_poly(rng, vars, **kw)
        p = p - Poly.constant(p.constant_term(), vars)
        if not p.is_zero():
            return p
