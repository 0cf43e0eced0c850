"""Numerical semigroups of bounded genus via the gap tree.

Children of S are ``S \\ {x}`` for minimal generators ``x`` above the
Frobenius number; every semigroup of genus g appears exactly once at depth g.
"""
from __future__ import annotations

from typing import Iterator

from noether_forge.errors import GuardExceeded
from noether_forge.semigroup import GoodSemigroup, from_gaps

GENUS_GUARD = 12


def _minimal_generators(gaps: frozenset, conductor: int) -> list:
    # minimal generators lie in [m, conductor + m]
    mem = [x for x in range(1, 2 * conductor + 3) if x not in gaps]
    m = mem[0]
    memset = set(mem)
    return [
        x
        for x in mem
        if x <= conductor + m and not any((x - y) in memset for y in mem if y < x)
    ]


def iter_gap_sets(genus_max: int) -> Iterator[tuple]:
    """Gap sets of all numerical semigroups with genus <= genus_max, breadth first."""
    if genus_max > GENUS_GUARD:
        raise GuardExceeded(f"genus bound {genus_max} exceeds the guard {GENUS_GUARD}")
    if genus_max < 0:
        return
    level = [frozenset()]
    for g in range(genus_max + 1):
        nxt = []
        for gaps in sorted(level, key=lambda x: sorted(x)):
            yield tuple(sorted(gaps))
            if g == genus_max:
                continue
            frob = max(gaps, default=-1)
            conductor = frob + 1
            for x in _minimal_generators(gaps, conductor):
                if x > frob:
                    nxt.append(gaps | {x})
        level = nxt


def numerical_corpus(genus_max: int) -> list:
    """All numerical semigroups of genus <= genus_max, ordered by genus then gap set."""
    return [from_gaps(g) for g in iter_gap_sets(genus_max)]


def corpus_counts(genus_max: int) -> list:
    counts = [0] * (genus_max + 1)
    for gaps in iter_gap_sets(genus_max):
        counts[len(gaps)] += 1
    return counts


def non_gorenstein(corpus: list) -> list:
    from noether_forge.semigroup import canonical_K

    return [S for S in corpus if not canonical_K(S).same_members(S)]


def is_symmetric(S: GoodSemigroup) -> bool:
    """``a in S  <=>  gamma - a not in S`` for s = 1."""
    gamma = S.conductor[0] - 1
    return all(((a,) in S) != ((gamma - a,) in S) for a in range(gamma + 1))
