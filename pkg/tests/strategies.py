"""Random exponential-polynomials and fields for property tests."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from liefield.coeffring import ExpMonomial, ExpPoly, GaussianRational
from liefield.vfield import VectorField

SMALL = [Fraction(p, q) for p in range(-5, 6) for q in (1, 2, 3, 5) if p]
FREQS = [Fraction(0), Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2)]


def rand_coeff(rng: random.Random, complex_ok: bool = True) -> GaussianRational:
    re = rng.choice(SMALL)
    im = rng.choice(SMALL) if complex_ok and rng.random() < 0.25 else 0
    return GaussianRational(re, im)


def rand_mono(rng: random.Random, dim: int, max_pow: int = 2, exp_vars=None, poly_vars=None) -> ExpMonomial:
    exp_vars = range(dim) if exp_vars is None else exp_vars
    poly_vars = range(dim) if poly_vars is None else poly_vars
    freq = tuple(rng.choice(FREQS) if k in exp_vars else Fraction(0) for k in range(dim))
    pow = tuple(rng.randint(0, max_pow) if k in poly_vars and rng.random() < 0.5 else 0 for k in range(dim))
    return ExpMonomial(freq, pow)


def rand_exppoly(rng: random.Random, dim: int, max_terms: int = 3, **kw) -> ExpPoly:
    n = rng.randint(0, max_terms)
    return ExpPoly(dim, [(rand_mono(rng, dim, **kw), rand_coeff(rng)) for _ in range(n)])


def rand_field(rng: random.Random, dim: int, max_terms: int = 3, **kw) -> VectorField:
    return VectorField([rand_exppoly(rng, dim, max_terms, **kw) for _ in range(dim)])


def rand_projectable(rng: random.Random, dim: int, k: int) -> VectorField:
    """Coefficients only in ``x_1 .. x_k``; every slot may be nonzero."""
    keep = range(k)
    return VectorField([rand_exppoly(rng, dim, 3, exp_vars=keep, poly_vars=keep) for _ in range(dim)])


# -- hypothesis versions ---------------------------------------------------------------

rationals = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 5))
gaussian = st.builds(GaussianRational, rationals, st.one_of(st.just(0), rationals))


@st.composite
def monomials(draw, dim: int):
    freq = tuple(draw(st.sampled_from(FREQS)) for _ in range(dim))
    pow = tuple(draw(st.integers(0, 2)) for _ in range(dim))
    return ExpMonomial(freq, pow)


@st.composite
def exppolys(draw, dim: int, max_terms: int = 3):
    terms = draw(st.lists(st.tuples(monomials(dim), gaussian), max_size=max_terms))
    return ExpPoly(dim, terms)


@st.composite
def fields(draw, dim: int, max_terms: int = 3):
    return VectorField([draw(exppolys(dim, max_terms)) for _ in range(dim)])
