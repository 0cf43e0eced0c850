import pytest

from noether_forge.cli import curve_for_semigroup
from noether_forge.curve import CurveSpec, SheafModel, curve_invariants, h0_sheaf, sheaf_degree
from noether_forge.errors import BudgetExhausted, Inconclusive
from noether_forge.koszul import family_Cp
from noether_forge.linear_systems import (
    clifford_classify,
    clifford_upper,
    curve_gonality_bounds,
    gonality_bounds,
    gonality_upper,
    is_hyperelliptic_like,
    monomial_h0,
    monomial_h1,
    monomial_pencil,
    pencil_sheaf,
    semigroup_ideals,
)
from noether_forge.semigroup import classify, from_numerical_generators

GENUS6 = CurveSpec.monomial([4, 7, 10, 12, 13])
NONMONO = CurveSpec.parametrized(["t^4", "t^5+t^7", "t^10", "t^11"], [[0]])
CLIFF = CurveSpec.parametrized(["t*(t-1)^5", "t^2*(t-1)^3", "t^2*(t-1)^6", "t^2*(t-1)^7"], [[0, 1]])


def test_genus6_gonality():
    res = gonality_upper(GENUS6)
    assert res.bound == 4 and res.exact
    w = res.witness
    assert (w.degree_at_P, w.degree_at_infinity, w.h0) == (3, 1, 2)
    assert w.chain == (0, 1, 4, 5, 7, 8, 9, 10)


def test_non_monomial_gonality():
    res = gonality_upper(NONMONO)
    assert res.bound == 4 and res.exact


def test_smooth_gonality():
    assert gonality_upper(CurveSpec.parametrized(["t"], [])).bound == 1


def test_multibranch_is_only_an_upper_bound():
    res = gonality_upper(CLIFF)
    assert not res.exact and res.bound <= 5


def test_budget():
    with pytest.raises(BudgetExhausted) as exc:
        gonality_upper(GENUS6, budget=3)
    assert exc.value.best is not None


def test_bounds():
    b = curve_gonality_bounds(GENUS6)
    assert b.upper_rational_unibranch == 4 and b.upper_general == 6 and b.lower == 2
    assert gonality_bounds(5, 2, 0, True).upper_rational_unibranch == 4
    assert gonality_bounds(9, 1).upper_refined == 9
    assert gonality_bounds(9, 1).upper_rational_unibranch is None


def test_clifford_upper_examples():
    assert clifford_upper(CurveSpec.monomial([2, 7])).value == 0
    assert clifford_upper(family_Cp(1)).value == 1


def test_clifford_classify():
    assert clifford_classify(CurveSpec.monomial([2, 9])).clifford == 0
    for p in (1, 2, 3):
        res = clifford_classify(family_Cp(p))
        assert res.clifford == 1 and res.gonality == 3


def test_clifford_classify_genus5_reports_witness_search():
    F = SheafModel.make(CLIFF, ["t*(t-1)^3", "t^2*(t-1)^3"])
    res = clifford_classify(CLIFF, candidates=[F], witness_budget=4)
    req = res.required_witness
    assert req is not None and (req["degree"], req["h0"]) == (5, 3)
    assert req["supplied"][0]["h0"] == 3


def test_clifford_inconclusive():
    with pytest.raises(Inconclusive):
        clifford_classify(CurveSpec.monomial([3, 5, 7]))


def test_hyperelliptic_like():
    assert is_hyperelliptic_like(CurveSpec.monomial([4, 5, 6, 7])).as_dict() == {
        "gon2": True,
        "reason": "rational_nearly_normal",
    }
    assert is_hyperelliptic_like(CurveSpec.monomial([2, 11])).reason == "hyperelliptic"
    assert not is_hyperelliptic_like(GENUS6).gon2


@pytest.mark.parametrize("gens", [[3, 7, 10, 11], [4, 7, 10, 12, 13], [4, 6, 7, 8, 9], [3, 5, 7]])
def test_monomial_pencils_match_analytic_engine(gens):
    S = from_numerical_generators(gens)
    curve = CurveSpec.parametrized([f"t^{g}" for g in gens], [[0]])
    g = classify(S).delta
    for r in (-2, -1, 1, 2, 3, 5):
        cand = monomial_pencil(S, r)
        gen = f"t^{r}" if r > 0 else f"1/t^{-r}"
        F = SheafModel.make(curve, [gen])
        assert sheaf_degree(F).total == cand.degree
        assert h0_sheaf(F) == cand.h0
        # duality count agrees with Riemann-Roch
        M = pencil_sheaf(S, r)
        assert monomial_h1(S, M) == monomial_h0(M) - cand.degree - 1 + g


def test_ideal_enumeration():
    S = from_numerical_generators([3, 5, 7])
    ideals = semigroup_ideals(S)
    assert frozenset({0, 3}) in ideals
    assert frozenset({0, 1, 2, 3, 4}) in ideals
    assert frozenset({0, 1, 3}) not in ideals  # 1 + 3 = 4 must be there


def test_corpus_gonality_theorems(non_gor8):
    for S in non_gor8:
        curve = curve_for_semigroup(S)
        g = len(S.gaps())
        res = gonality_upper(curve)
        assert res.exact and 2 <= res.bound <= g
        assert res.bound <= (g + 3) // 2
        if res.bound == g:
            assert classify(S).eta == 1
        w = res.witness
        assert w.h0 >= 2


def test_corpus_clifford_propositions(corpus8):
    for S in corpus8:
        g = len(S.gaps())
        if g < 3:
            continue
        curve = curve_for_semigroup(S)
        gon = gonality_upper(curve)
        cu = clifford_upper(curve)
        if gon.bound < g:
            assert cu.value is not None and cu.value <= gon.bound - 2
        if gon.bound == 2:
            assert cu.value == 0


def test_witness_soundness_sample(non_gor8):
    for S in non_gor8[::15]:
        gens = curve_for_semigroup(S).exponents
        curve = CurveSpec.parametrized([f"t^{g}" for g in gens], [[0]])
        w = gonality_upper(curve_for_semigroup(S)).witness
        gen = f"t^{w.r}" if w.r > 0 else f"1/t^{-w.r}"
        F = SheafModel.make(curve, [gen])
        assert sheaf_degree(F).total == w.degree and h0_sheaf(F) == 2
