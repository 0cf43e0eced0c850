import pytest

from noether_forge.cli import curve_for_semigroup
from noether_forge.curve import CurveSpec
from noether_forge.errors import BudgetExhausted, UnsupportedModel
from noether_forge.koszul import (
    blowup_embedding,
    dim_I2_closed,
    dim_I2_hat_closed,
    dim_Ir,
    dim_Ir_hat,
    direct_Ir,
    family_Cp,
    ir_hat_record,
    ir_record,
    koszul_dimension,
    star_semigroup,
)
from noether_forge.linear_systems import is_hyperelliptic_like
from noether_forge.noether import max_noether_level
from noether_forge.semigroup import blowup_semigroup, classify, from_numerical_generators, natural_numbers

S5 = from_numerical_generators([3, 7, 10, 11])


def test_koszul_small_cases():
    c = CurveSpec.monomial([3, 7, 10, 11])
    assert koszul_dimension(c, 0, 2).dim_Kpq == 0
    assert koszul_dimension(c, 0, 1).dim_Kpq == 0
    rep = koszul_dimension(c, 2, 2)
    assert rep.composition_zero and rep.dim_Kpq >= 0


def test_koszul_hyperelliptic():
    assert koszul_dimension(CurveSpec.monomial([2, 7]), 0, 2).dim_Kpq == 1


@pytest.mark.parametrize("p", [1, 2, 3])
def test_family_cp_koszul(p):
    c = family_Cp(p)
    dims = [koszul_dimension(c, j, 2).dim_Kpq for j in range(p + 2)]
    assert dims[: p + 1] == [0] * (p + 1)
    assert dims[p + 1] == 1


def test_family_cp_constructor():
    assert family_Cp(1).exponents == (4, 6, 7, 8, 9)
    assert family_Cp(2).exponents == (5, 7, 8, 9, 10, 11)
    c = classify(from_numerical_generators(family_Cp(2).exponents))
    assert c.eta == 3
    with pytest.raises(ValueError):
        family_Cp(0)


def test_koszul_rejects_parametrized_and_budget():
    with pytest.raises(UnsupportedModel):
        koszul_dimension(CurveSpec.parametrized(["t^2", "t^3"], [[0]]), 0, 2)
    with pytest.raises(BudgetExhausted):
        koszul_dimension(family_Cp(3), 2, 2, budget=10)


def test_formula_values():
    assert dim_Ir_hat(5, 1, 1, 2) == 3 == dim_I2_hat_closed(5, 1, 1)
    for g, d in [(3, 2), (5, 4), (7, 1)]:
        assert dim_Ir(g, d, 2) == dim_I2_closed(g, d)
        assert dim_Ir(g, d, 1) == 0


def test_direct_count_example():
    assert blowup_embedding(S5) == (0, 3, 4, 6, 7)
    assert direct_Ir((0, 3, 4, 6, 7), 2) == 3
    assert direct_Ir((0, 3, 4, 6, 7), 1) == 0


def test_star_examples():
    rep = star_semigroup(from_numerical_generators([3, 5, 7]))
    assert [a[0] for a in rep.semigroup.small_elements] == [0, 6, 8, 9, 11]
    assert rep.blowup_matches and (rep.g_star, rep.eta_star, rep.mu_star) == (7, 3, 1)
    assert star_semigroup(natural_numbers(1)).semigroup == natural_numbers(1)
    rep = star_semigroup(S5)
    assert (rep.g_star, rep.eta_star) == (13, 7)


def test_star_record_357():
    for r in (2, 3, 4):
        assert ir_record(from_numerical_generators([3, 5, 7]), r).agrees


def test_formulas_over_corpus(non_gor8):
    for S in non_gor8:
        for r in (2, 3, 4):
            assert ir_hat_record(S, r).agrees, (S, r)
            assert ir_record(S, r).agrees, (S, r)
        st = star_semigroup(S)
        assert st.blowup_matches and st.closed_forms_match
        assert blowup_semigroup(st.semigroup).same_members(S)


def test_equivalence_k02_noether(corpus8):
    for S in corpus8:
        if len(S.gaps()) < 3:
            continue
        curve = curve_for_semigroup(S)
        k02 = koszul_dimension(curve, 0, 2).dim_Kpq == 0
        assert k02 == max_noether_level(S, 2).surjective
        assert k02 == (is_hyperelliptic_like(curve).reason != "hyperelliptic")
