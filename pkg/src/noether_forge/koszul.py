"""Koszul cohomology of the canonical model, quadric counts and the S_* construction."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from math import comb

import numpy as np

from noether_forge.curve import CurveSpec, local_value_semigroup
from noether_forge.errors import BudgetExhausted, SemigroupAxiomFailure, UnsupportedModel
from noether_forge.kernels import exact_rank
from noether_forge.noether import section_exponents
from noether_forge.semigroup import (
    GoodSemigroup,
    blowup_semigroup,
    classify,
    numerical_semigroup_from_set,
)

MAX_MATRIX_SIDE = 20000


def _monomial_semigroup(curve: CurveSpec) -> GoodSemigroup:
    if curve.kind != "monomial":
        raise UnsupportedModel("Koszul ranks are modelled for monomial curves only")
    if not curve.singular_fibers:
        return numerical_semigroup_from_set([0], 0)
    return local_value_semigroup(curve)


@dataclass(frozen=True)
class KoszulReport:
    p: int
    q: int
    dim_domain: int
    dim_middle: int
    dim_codomain: int
    rank_phi1: int
    rank_phi2: int
    composition_zero: bool

    @property
    def dim_Kpq(self) -> int:
        return self.dim_middle - self.rank_phi2 - self.rank_phi1

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "dim_domain": self.dim_domain,
            "dim_middle": self.dim_middle,
            "dim_codomain": self.dim_codomain,
            "rank_phi1": self.rank_phi1,
            "rank_phi2": self.rank_phi2,
            "dim_Kpq": self.dim_Kpq,
            "composition_zero": self.composition_zero,
        }


def _basis(V: tuple, W: tuple, p: int) -> list:
    # lexicographic: wedge index tuple, then section exponent
    if p < 0:
        return []
    return [(I, w) for I in combinations(range(len(V)), p) for w in W]


def _differential(V: tuple, src: list, dst: list) -> dict:
    """Sparse matrix of ``e_I (x) w -> sum_j (-1)^j e_{I - i_j} (x) v_{i_j} w`` as {(row, col): coeff}."""
    index = {b: k for k, b in enumerate(dst)}
    out = {}
    for col, (I, w) in enumerate(src):
        for j, i in enumerate(I):
            key = (I[:j] + I[j + 1:], w + V[i])
            row = index.get(key)
            if row is None:
                raise SemigroupAxiomFailure(f"product x^{w + V[i]} missing from the next section space")
            out[(row, col)] = out.get((row, col), 0) + (-1 if j % 2 else 1)
    return out


def _weight(V: tuple, b) -> int:
    I, w = b
    return w + sum(V[i] for i in I)


def _block_rank(V: tuple, src: list, dst: list, entries: dict) -> int:
    # the differential preserves total weight, so rank splits over weight blocks
    if not src or not dst:
        return 0
    rows_by_w = defaultdict(list)
    cols_by_w = defaultdict(list)
    for k, b in enumerate(dst):
        rows_by_w[_weight(V, b)].append(k)
    for k, b in enumerate(src):
        cols_by_w[_weight(V, b)].append(k)
    total = 0
    for wt, cols in cols_by_w.items():
        rows = rows_by_w.get(wt)
        if not rows:
            continue
        rpos = {r: i for i, r in enumerate(rows)}
        cpos = {c: i for i, c in enumerate(cols)}
        m = np.zeros((len(rows), len(cols)), dtype=np.int64)
        for (r, c), v in entries.items():
            if r in rpos and c in cpos:
                m[rpos[r], cpos[c]] = v
        total += exact_rank(m)
    return total


def _compose_zero(d2: dict, d1: dict) -> bool:
    acc = defaultdict(int)
    by_row = defaultdict(list)
    for (r, c), v in d2.items():
        by_row[c].append((r, v))
    for (m, c), v in d1.items():
        for r, w in by_row.get(m, ()):
            acc[(r, c)] += w * v
    return all(v == 0 for v in acc.values())


def koszul_dimension(curve: CurveSpec, p: int, q: int, budget: int = MAX_MATRIX_SIDE) -> KoszulReport:
    """``dim K_{p,q}(C, w)`` on monomial bases of ``H^0(w^k)``."""
    if p < 0 or q < 0:
        raise ValueError("p and q must be non-negative")
    S = _monomial_semigroup(curve)
    V = section_exponents(S, 1)
    W = {k: section_exponents(S, k) for k in (q - 1, q, q + 1) if k >= 0}
    dom = _basis(V, W.get(q - 1, ()), p + 1) if q >= 1 else []
    mid = _basis(V, W[q], p)
    cod = _basis(V, W[q + 1], p - 1)
    if max(len(dom), len(mid), len(cod)) > budget:
        raise BudgetExhausted(f"matrix side exceeds {budget}")
    d1 = _differential(V, dom, mid)
    d2 = _differential(V, mid, cod)
    r1 = _block_rank(V, dom, mid, d1)
    r2 = _block_rank(V, mid, cod, d2)
    return KoszulReport(p, q, len(dom), len(mid), len(cod), r1, r2, _compose_zero(d2, d1))


# ------------------------------------------------------------- quadrics


@dataclass(frozen=True)
class IrDimensionRecord:
    r: int
    formula_value: int
    direct_value: int | None
    N: int
    closed_form: int | None = None

    @property
    def agrees(self) -> bool:
        return self.direct_value is None or self.direct_value == self.formula_value

    def as_dict(self) -> dict:
        out = {"r": self.r, "formula": self.formula_value, "direct": self.direct_value, "N": self.N, "agrees": self.agrees}
        if self.closed_form is not None:
            out["closed_form"] = self.closed_form
        return out


def dim_Ir_hat(g: int, eta: int, mu: int, r: int) -> int:
    return comb(r + g - 2 + mu, r) - r * (2 * g - 2 - eta) + (g - eta - mu - 1)


def dim_I2_hat_closed(g: int, eta: int, mu: int) -> int:
    num = g * g + (2 * mu - 7) * g + mu * mu - 3 * mu + 2 * eta + 6
    return num // 2


def dim_Ir(g: int, rho_minus_sigma: int, r: int) -> int:
    d = rho_minus_sigma
    return comb(r + g + 2 * d - 1, r) + g * (1 - 2 * r) - 2 * r * d + r - 1


def dim_I2_closed(g: int, rho_minus_sigma: int) -> int:
    d = rho_minus_sigma
    return ((g + 2 * d - 1) * (g + 2 * d - 2) - 2 * g) // 2


def direct_Ir(exponents, r: int) -> int:
    """``C(r+N, r)`` minus the number of distinct r-fold sums of the embedding exponents."""
    ex = sorted(set(int(a) for a in exponents))
    n = len(ex) - 1
    sums = {sum(c) for c in combinations_with_replacement(ex, r)}
    return comb(r + n, r) - len(sums)


def blowup_embedding(S: GoodSemigroup) -> tuple:
    """Exponents spanning ``H^0(O_Ĉ w)``: ``Ŝ ∩ [0, beta - 2]``."""
    beta = S.conductor[0]
    B = blowup_semigroup(S)
    return tuple(a for a in range(0, beta - 1) if (a,) in B)


def ir_hat_record(S: GoodSemigroup, r: int) -> IrDimensionRecord:
    c = classify(S)
    emb = blowup_embedding(S)
    closed = dim_I2_hat_closed(c.delta, c.eta, c.mu) if r == 2 else None
    return IrDimensionRecord(r, dim_Ir_hat(c.delta, c.eta, c.mu, r), direct_Ir(emb, r), len(emb) - 1, closed)


def ir_record(S: GoodSemigroup, r: int) -> IrDimensionRecord:
    """``dim I_r(C)`` for the unibranch non-Gorenstein point ``S``, with the S_* embedding as direct count."""
    c = classify(S)
    d = S.conductor[0] - c.delta
    st = star_semigroup(S)
    emb = tuple(a for a in range(0, st.semigroup.conductor[0] - 1) if (a,) in S)
    closed = dim_I2_closed(c.delta, d) if r == 2 else None
    return IrDimensionRecord(r, dim_Ir(c.delta, d, r), direct_Ir(emb, r), len(emb) - 1, closed)


# -------------------------------------------------------------------- S_*


@dataclass(frozen=True)
class StarReport:
    semigroup: GoodSemigroup
    g_star: int
    eta_star: int
    mu_star: int
    blowup_matches: bool
    expected: tuple  # closed forms (g_*, eta_*, mu_*)

    @property
    def closed_forms_match(self) -> bool:
        return (self.g_star, self.eta_star, self.mu_star) == self.expected

    def as_dict(self) -> dict:
        return {
            "elements": list(self.semigroup.small_elements),
            "conductor": self.semigroup.conductor[0],
            "g_star": self.g_star,
            "eta_star": self.eta_star,
            "mu_star": self.mu_star,
            "expected": list(self.expected),
            "blowup_matches": self.blowup_matches,
            "closed_forms_match": self.closed_forms_match,
        }


def star_set(S: GoodSemigroup) -> tuple:
    """``({0} ∪ {2|beta| - l}, 2|beta| + 1)`` with ``l`` running over the gaps."""
    if S.s != 1:
        raise UnsupportedModel("S_* is defined for numerical semigroups")
    beta = S.conductor[0]
    gaps = [a for a in range(beta) if (a,) not in S]
    if not gaps:
        return (0,), 0
    return tuple(sorted({0} | {2 * beta - l for l in gaps})), 2 * beta + 1


def star_semigroup(S: GoodSemigroup) -> StarReport:
    elems, cond = star_set(S)
    small = set(elems)
    for a in elems:
        for b in elems:
            if a + b < cond and a + b not in small:
                raise SemigroupAxiomFailure(f"{a} + {b} falls in a gap of S_*")
    St = numerical_semigroup_from_set(elems, cond)
    St = St.normalized()
    cs = classify(St)
    c = classify(S)
    d = S.conductor[0] - c.delta
    expected = (c.delta + 2 * d, 2 * d - 1, 1) if c.delta else (0, 0, 0)
    matches = blowup_semigroup(St).same_members(S.normalized())
    return StarReport(St, cs.delta, cs.eta, cs.mu, matches, expected)


def family_Cp(p: int) -> CurveSpec:
    """``k[t^{p+3}, t^{p+5}, t^{p+6}, ..., t^{2p+7}]``."""
    if p < 1:
        raise ValueError("p must be at least 1")
    exps = (p + 3,) + tuple(range(p + 5, 2 * p + 8))
    return CurveSpec.monomial(exps, name=f"C_{p}")
