import numpy as np
import pytest

from noether_forge.errors import EmptyGenerators, NonCoprimeGenerators, NotNested
from noether_forge.semigroup import (
    GoodSemigroup,
    IdealValueSet,
    blowup_semigroup,
    canonical_K,
    classify,
    delta_set,
    distance,
    from_gaps,
    from_numerical_generators,
    interior,
    n_fold_sumset,
    natural_numbers,
    numerical_semigroup_from_set,
    sumset,
    sumset_points,
    validate,
)


def small(S):
    return [p[0] for p in S.small_elements]


def test_generators_3_7_10_11():
    S = from_numerical_generators([3, 7, 10, 11])
    assert S.conductor == (9,)
    assert small(S) == [0, 3, 6, 7, 9]


def test_generator_one_is_smooth():
    S = from_numerical_generators([1])
    assert S.conductor == (0,)
    assert (5,) in S


def test_generators_3_5_7():
    S = from_numerical_generators([3, 5, 7])
    assert S.conductor == (5,)
    assert small(S) == [0, 3, 5]
    assert S.gaps() == (1, 2, 4)


def test_generator_errors():
    with pytest.raises(NonCoprimeGenerators):
        from_numerical_generators([4, 6])
    with pytest.raises(EmptyGenerators):
        from_numerical_generators([])


def test_membership_beyond_box():
    S = from_numerical_generators([3, 5, 7])
    assert (1000,) in S
    assert (4,) not in S
    assert (-1,) not in S


def test_validate_numerical():
    assert validate(from_numerical_generators([3, 5, 7])).passed


def test_validate_min_closure_failure():
    S = GoodSemigroup.from_elements((2, 2), [(0, 0), (1, 2), (2, 1), (2, 2)])
    rep = validate(S)
    assert not rep.passed
    res = rep.results["min_closure"]
    assert not res.passed and res.witness is not None


def test_delta_set_unibranch():
    S = from_numerical_generators([3, 5, 7])
    assert delta_set(S, (4,)) == ()
    assert delta_set(S, (5,)) == ((5,),)


def test_delta_set_two_branches():
    S = GoodSemigroup.from_elements((3, 3), [(0, 0), (2, 3), (3, 2), (3, 3)])
    assert delta_set(S, (2, 2)) == ((2, 3), (3, 2))
    # (2, 4) clamps to (2, 3) under the box rule
    assert delta_set(S, (2, 3)) == ((2, 4), (3, 3))


def test_canonical_examples():
    S = from_numerical_generators([3, 7, 10, 11])
    assert [a[0] for a in interior(canonical_K(S), S.conductor)] == [0, 3, 4, 6, 7]
    T = from_numerical_generators([3, 5, 7])
    assert [a[0] for a in interior(canonical_K(T), T.conductor)] == [0, 2, 3]
    N = natural_numbers(1)
    assert canonical_K(N).same_members(N)


def test_distance_examples():
    S = from_gaps([1, 2, 3, 5, 6, 9])  # <4,7,10>
    assert S.same_members(from_numerical_generators([4, 7, 10, 12, 13]))
    lo, hi = 0, S.conductor[0]
    mask = np.array([(a,) in S or (a - 1,) in S for a in range(lo, hi + 1)])
    A = IdealValueSet((lo,), (hi,), mask, base=S)
    assert distance(A, S) == 3
    assert distance(S, S) == 0
    T = from_numerical_generators([3, 5, 7])
    assert distance(canonical_K(T), T) == 1


def test_distance_not_nested():
    S = from_numerical_generators([3, 5, 7])
    with pytest.raises(NotNested):
        distance(S, canonical_K(S))


def test_sumset_examples():
    S = from_numerical_generators([3, 7, 10, 11])
    kint = interior(canonical_K(S), S.conductor)
    G = {a[0] for a in sumset_points(kint, kint)}
    assert set(range(9, 15)) <= G
    assert {a[0] for a in sumset_points([(0,), (2,), (3,)], [(0,), (2,), (3,)])} == {0, 2, 3, 4, 5, 6}
    E = canonical_K(S)
    assert sumset(E, natural_numbers(1)).same_members(natural_numbers(1))
    assert n_fold_sumset(E, 1).same_members(E)


def test_classify_examples():
    c = classify(from_numerical_generators([3, 7, 10, 11]))
    assert (c.delta, c.eta, c.mu) == (5, 1, 1)
    assert c.kunz and not c.gorenstein
    assert classify(from_numerical_generators([2, 3])).gorenstein
    assert classify(from_numerical_generators([4, 6, 7, 8, 9])).eta == 2


def test_blowup_examples():
    St = numerical_semigroup_from_set([0, 6, 8, 9], 11)
    assert blowup_semigroup(St).same_members(from_numerical_generators([3, 5, 7]))
    S = from_numerical_generators([3, 7, 10, 11])
    B = blowup_semigroup(S)
    assert small(B.normalized()) == [0, 3, 4, 6]
    G = from_numerical_generators([2, 3])
    assert all(p in blowup_semigroup(G) for p in G.small_elements)


def test_equality_and_hash():
    a = from_numerical_generators([3, 5, 7])
    b = from_gaps([1, 2, 4])
    assert a == b and hash(a) == hash(b)
