"""
Tests for the finite-field oracle: enumeration, per-point decomposition
checks and stability sampling.
"""

import pytest
from pydantic import ValidationError

from src.algebra import Context, parse_polynomial
from src.chains.regchain import RegularSystem
from src.chains.triset import AscendingChain
from src.chains.wu import WuDecomposition
from src.errors import BadPrimeError, BudgetExceededError, ContextMismatchError, SamplingError
from src.oracle.enumerate import FiniteFieldGrid, enumerate_variety_mod_p
from src.oracle.verify import OracleConfig, TrialRecord, VerifyReport, check_decomposition_at, check_stability, check_wu_at


def test_enumerate_circle_mod_5():
    ctx = Context((), ("x", "y"))
    circle = parse_polynomial(ctx, "x^2 + y^2 - 1")
    assert enumerate_variety_mod_p([circle], 5) == {(0, 1), (0, 4), (1, 0), (4, 0)}
    x = parse_polynomial(ctx, "x")
    assert enumerate_variety_mod_p([circle], 5, inequation=x) == {(1, 0), (4, 0)}


def test_grid_budget_and_parameters():
    ctx = Context(("a",), ("x", "y"))
    with pytest.raises(BudgetExceededError):
        FiniteFieldGrid(ctx, 101, budget=100)
    grid = FiniteFieldGrid(ctx, 5)
    with pytest.raises(ContextMismatchError):
        grid.evaluate(parse_polynomial(ctx, "x - a"))
    values = grid.evaluate(parse_polynomial(ctx, "x*y + 3"))
    assert values.shape == (25,)
    assert values.max() < 5


def test_published_decomposition_passes(ex1_system, published_ex1):
    systems, b = published_ex1
    record = check_decomposition_at(ex1_system, systems, {"u": 1, "v": 1, "w": 1}, 7, b)
    assert record.status == "pass"
    assert record.decomposition
    assert record.specializes_well


def test_missing_component_is_caught(ex1_system, published_ex1):
    systems, b = published_ex1
    record = check_decomposition_at(ex1_system, systems[:1], {"u": 1, "v": 1, "w": 1}, 7, b)
    assert record.status == "fail"
    assert record.decomposition is False
    assert record.witness == [6, 6, 1]
    assert "witness=(6, 6, 1)" in record.to_line()


def test_points_on_rdu_variety_are_skipped(ex1_system, published_ex1):
    systems, b = published_ex1
    record = check_decomposition_at(ex1_system, systems, {"u": 0, "v": 1, "w": 1}, 7, b)
    assert record.status == "skipped"
    assert record.note == "on RDU variety, skipped"


def test_prime_dividing_a_denominator(parse, ex1_chains):
    _, c2 = ex1_chains
    systems = [RegularSystem(c2, parse("u*v*w"))]
    with pytest.raises(BadPrimeError):
        check_decomposition_at([parse("x/7 + 1")], systems, {"u": 1, "v": 1, "w": 1}, 7)


def test_stability_of_published_decomposition(ex1_system, published_ex1):
    systems, b = published_ex1
    config = OracleConfig(prime=11, alternate_prime=13, trials=4, bound=30, seed=3)
    report = check_stability(ex1_system, systems, b, config)
    assert len(report.trials) == 4
    assert report.verdict == "pass"
    assert report.to_text().endswith("verdict: pass (4/4 passed)")


def test_irregular_system_fails_every_trial(ex1_system, parse, published_ex1):
    """Replacing an inequation by 0 breaks the regular-system invariant."""
    systems, b = published_ex1
    broken = [systems[0], RegularSystem(systems[1].chain, parse("0"))]
    config = OracleConfig(prime=11, alternate_prime=13, trials=2, bound=30, seed=3)
    report = check_stability(ex1_system, broken, b, config)
    assert report.verdict == "fail"
    assert all(t.note == "a system violates sres(H, T) != 0" for t in report.trials)


def test_same_seed_same_report(ex1_system, published_ex1):
    systems, b = published_ex1
    config = OracleConfig(prime=11, alternate_prime=13, trials=3, bound=30, seed=42)
    first = check_stability(ex1_system, systems, b, config)
    second = check_stability(ex1_system, systems, b, config)
    assert first.model_dump() == second.model_dump()


def test_redundant_component_keeps_pass(ex1_system, published_ex1, parse, ex1_chains):
    """Adding a system whose zeros already lie in V(P) does not flip the verdict."""
    systems, b = published_ex1
    _, c2 = ex1_chains
    extra = RegularSystem(c2, parse("u*v*w*(x - 2)"))
    config = OracleConfig(prime=11, alternate_prime=13, trials=3, bound=30, seed=9)
    assert check_stability(ex1_system, systems + [extra], b, config).verdict == "pass"


def test_enumeration_small_cases():
    ctx = Context((), ("x",))
    assert enumerate_variety_mod_p([parse_polynomial(ctx, "x^2 - 1")], 5) == {(1,), (4,)}
    assert enumerate_variety_mod_p([parse_polynomial(ctx, "1")], 7) == set()
    assert enumerate_variety_mod_p([parse_polynomial(ctx, "0")], 3) == {(0,), (1,), (2,)}


def test_wu_check_on_a_line():
    ctx = Context(("u",), ("x",))
    line = parse_polynomial(ctx, "x - u")
    decomposition = WuDecomposition((AscendingChain.from_polys([line]),))
    for a in (0, 3, -8):
        assert check_wu_at([line], decomposition, {"u": a}, 5).status == "pass"


def test_zero_b_cannot_be_sampled(ex1_system, published_ex1, parse):
    systems, _ = published_ex1
    with pytest.raises(SamplingError):
        check_stability(ex1_system, systems, parse("0"), OracleConfig(trials=1))


def test_config_validation():
    with pytest.raises(ValidationError):
        OracleConfig(prime=100)
    with pytest.raises(ValidationError):
        OracleConfig(trials=0)
    assert OracleConfig().prime == 101


def test_verdict_needs_a_passing_trial():
    skipped = TrialRecord(point={"u": 0}, prime=7, status="skipped")
    assert VerifyReport(trials=[skipped]).verdict == "fail"
    passed = TrialRecord(point={"u": 1}, prime=7, status="pass")
    assert VerifyReport(trials=[skipped, passed]).verdict == "pass"
    assert VerifyReport().verdict == "fail"


if __name__ == "__main__":
    pytest.main([__file__])
