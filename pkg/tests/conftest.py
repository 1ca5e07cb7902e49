"""
Shared fixtures: the two worked systems, the published decomposition of the
first one, and a seeded random-system factory.
"""

import os

import numpy as np
import pytest

from src.algebra import Context, Polynomial, parse_polynomial
from src.chains.triset import TriangularSet
from src.tools.systemfile import load_decomposition, load_system


DATA_DIR = os.path.join(os.path.dirname(__file__), "..", "data")


@pytest.fixture
def data_dir():
    return DATA_DIR


@pytest.fixture
def ex1_context():
    return Context(("u", "v", "w"), ("x", "y", "z"))


@pytest.fixture
def parse(ex1_context):
    """Parser bound to a context; defaults to the Example 1 context."""
    def _parse(text, context=None):
        return parse_polynomial(context or ex1_context, text)
    return _parse


@pytest.fixture
def ex1_system(parse):
    return [
        parse("(u*x+1)*z^3 + (v*y+1)*z^2 + w*x*z + 1"),
        parse("u*x + 1"),
    ]


@pytest.fixture
def ex1_chains(parse, ex1_context):
    c1 = TriangularSet(ex1_context, (parse("u*x + 1"), parse("u*v*y*z^2 + u*z^2 - w*z + u")))
    c2 = TriangularSet(ex1_context, (parse("u*x + 1"), parse("v*y + 1"), parse("w*z - u")))
    return c1, c2


@pytest.fixture
def published_ex1(ex1_context):
    doc = load_decomposition(os.path.join(DATA_DIR, "decompositions", "example1_published.json"))
    return doc.to_systems(ex1_context)


@pytest.fixture
def ex2_file():
    return load_system(os.path.join(DATA_DIR, "systems", "example2.txt"))


def _random_poly(rng, context, max_degree=3, max_terms=4, coeff_bound=5):
    """Nonzero polynomial with up to `max_terms` terms of total degree <= max_degree."""
    n = len(context.names)
    terms = {}
    for _ in range(int(rng.integers(1, max_terms + 1))):
        total = int(rng.integers(0, max_degree + 1))
        exps = [0] * n
        for _ in range(total):
            exps[int(rng.integers(0, n))] += 1
        coeff = 0
        while coeff == 0:
            coeff = int(rng.integers(-coeff_bound, coeff_bound + 1))
        terms[tuple(exps)] = coeff
    return Polynomial.from_terms(context, terms)


@pytest.fixture
def random_system():
    """Factory: random_system(seed, nvars, nparams) -> (context, polys)."""
    def _make(seed, nvars=2, nparams=1, npolys=None, max_degree=3):
        rng = np.random.default_rng(seed)
        context = Context(tuple(f"u{i}" for i in range(1, nparams + 1)), tuple(f"x{i}" for i in range(1, nvars + 1)))
        count = npolys or int(rng.integers(1, 4))
        polys = []
        while len(polys) < count:
            p = _random_poly(rng, context, max_degree)
            if not p.is_zero:
                polys.append(p)
        return context, polys
    return _make


@pytest.fixture
def random_poly():
    """random_poly(rng, context, max_degree=3, max_terms=4, coeff_bound=5) -> Polynomial."""
    return _random_poly
