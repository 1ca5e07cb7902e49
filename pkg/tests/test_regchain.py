"""
Tests for regular chains, regular systems and good specialization.
"""

import pytest

from src.chains.regchain import (
    RegularChain,
    RegularSystem,
    in_saturation,
    is_regular_chain,
    is_regular_system,
    is_zero_dimensional,
    specializes_well,
)
from src.chains.triset import TriangularSet
from src.errors import ChainError, ContextMismatchError


def test_example_chains_are_regular(ex1_chains):
    c1, c2 = ex1_chains
    assert is_regular_chain(c1)
    assert is_regular_chain(c2)


def test_vanishing_initial_is_not_regular(parse, ex1_context):
    good = TriangularSet(ex1_context, (parse("x^2 - u"), parse("x*y - 1")))
    bad = TriangularSet(ex1_context, (parse("x^2"), parse("x*y - 1")))
    assert is_regular_chain(good)
    assert not is_regular_chain(bad)
    with pytest.raises(ChainError):
        RegularChain(bad)
    assert len(RegularChain(good)) == 2


def test_zero_dimensional(ex1_chains):
    c1, c2 = ex1_chains
    assert is_zero_dimensional(c2)
    assert not is_zero_dimensional(c1)
    assert is_zero_dimensional(c1, ["x", "z"])


def test_saturation_membership(ex1_chains, parse):
    _, c2 = ex1_chains
    assert in_saturation(parse("(u*x + 1)*(v*y + 1)"), c2)
    assert in_saturation(parse("(w*z - u)*x^3 + (u*x + 1)*y"), c2)
    assert not in_saturation(parse("x"), c2)


def test_regular_system(ex1_chains, parse):
    _, c2 = ex1_chains
    system = RegularSystem(c2, parse("u*v*w"))
    assert system.is_regular
    assert system.to_text() == "[{u*x + 1, v*y + 1, w*z - u}, u*v*w]"
    assert is_regular_system(c2, parse("x - 1"))
    assert not is_regular_system(c2, parse("u*x + 1"))


def test_specializes_well(ex1_chains, parse):
    _, c2 = ex1_chains
    system = RegularSystem(c2, parse("u*v*w"))
    assert specializes_well(system, {"u": 1, "v": 1, "w": 1})
    assert specializes_well(system, {"u": 2, "v": -3, "w": 5})
    assert not specializes_well(system, {"u": 0, "v": 1, "w": 1})
    assert not specializes_well(system, {"u": 1, "v": 1, "w": 0})
    with pytest.raises(ContextMismatchError):
        specializes_well(system, {"u": 1, "v": 1})


def test_specializes_well_checks_inequation(ex1_chains, parse):
    """A rank-preserving point can still make H vanish on T(a)."""
    _, c2 = ex1_chains
    system = RegularSystem(c2, parse("x - 1"))
    assert specializes_well(system, {"u": 1, "v": 1, "w": 1})
    assert not specializes_well(system, {"u": -1, "v": 1, "w": 1})


if __name__ == "__main__":
    pytest.main([__file__])
