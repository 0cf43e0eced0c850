import pytest

from noether_forge.errors import GorensteinInput, UnsupportedBranchCount
from noether_forge.noether import (
    build_noether_sequence,
    find_lemma_witness,
    max_noether_level,
    section_exponents,
    verify_theorem1,
)
from noether_forge.semigroup import (
    GoodSemigroup,
    canonical_K,
    from_numerical_generators,
    interior,
    numerical_semigroup_from_set,
)

S5 = from_numerical_generators([3, 7, 10, 11])


def test_lemma_witness_3_7_10_11():
    w = find_lemma_witness(S5)
    assert w.d == (4,) and w.ell == 0 and w.complement == (4,)


def test_lemma_gorenstein():
    with pytest.raises(GorensteinInput):
        find_lemma_witness(from_numerical_generators([2, 3]))


def test_sequence_3_7_10_11():
    cert = build_noether_sequence(S5)
    assert [a[0] for a in cert.sequence] == [9, 10, 11, 12, 13, 14]
    decs = dict((a[0], (x[0], y[0])) for a, (x, y) in zip(cert.sequence, cert.decompositions))
    assert decs[9] == (3, 6) and decs[14] == (7, 7)
    kint = set(interior(canonical_K(S5), S5.conductor))
    for a, (x, y) in zip(cert.sequence, cert.decompositions):
        assert x in kint and y in kint and x[0] + y[0] == a[0]


def test_sequence_4_6_7_8_9():
    cert = build_noether_sequence(from_numerical_generators([4, 6, 7, 8, 9]))
    assert [a[0] for a in cert.sequence] == [6, 7]
    assert cert.decompositions[0][0][0] + cert.decompositions[0][1][0] == 6


def test_alpha_equals_beta_gives_empty_sequence():
    # {0} plus everything from 3 on: alpha = beta = 3, K° = {0, 1}
    S = numerical_semigroup_from_set([0], 3)
    assert S.alpha == S.conductor
    ok, cert = verify_theorem1(S)
    assert ok and cert.sequence == ()


def test_verify_theorem1():
    ok, _ = verify_theorem1(S5)
    assert ok
    with pytest.raises(GorensteinInput):
        verify_theorem1(from_numerical_generators([3, 4]))


def test_level_two_example():
    rep = max_noether_level(S5, 2)
    assert rep.surjective
    assert (rep.degree, rep.degree_at_P, rep.degree_at_infinity, rep.h0) == (16, 2, 14, 12)
    assert set(range(8, 15)) <= set(rep.products)
    assert rep.products[14] == (7, 7)
    assert rep.riemann_roch_ok


def test_level_one_and_small_cases():
    rep = max_noether_level(S5, 1)
    assert rep.surjective and rep.h0 == 5
    T = from_numerical_generators([3, 5, 7])
    assert max_noether_level(T, 2).surjective and max_noether_level(T, 3).surjective


def test_section_exponents():
    assert section_exponents(S5, 0) == (0,)
    assert section_exponents(S5, 1) == (0, 3, 4, 6, 7)


def test_two_branch_rejected_for_levels():
    S = GoodSemigroup.from_elements((1, 2), [(0, 0), (1, 2)])
    with pytest.raises(UnsupportedBranchCount):
        max_noether_level(S, 2)


def test_corpus_lemma_and_theorem1(non_gor8):
    for S in non_gor8:
        find_lemma_witness(S)
        ok, cert = verify_theorem1(S)
        assert ok, S


def test_corpus_levels(non_gor8):
    for S in non_gor8:
        for n in (2, 3, 4):
            rep = max_noether_level(S, n)
            assert rep.surjective and rep.riemann_roch_ok, (S, n)
