"""Pencils, gonality and Clifford index on rational curves with one singular fiber.

On a monomial curve (singular point over t = 0, smooth at oo) a monomial
sheaf is a pair ``(A, N)``: ``A ⊇ S`` is the value set at P and ``N`` the pole
order allowed at oo.  Then

* ``deg = |A \\ S| + N``,
* ``h^0 = |A ∩ (-oo, N]|``,
* ``h^1 = |(K - A) ∩ [0, beta - 2 - N]|`` with ``K - A = {b : b + A ⊆ K}``.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from noether_forge.curve import (
    CurveSpec,
    SheafModel,
    curve_invariants,
    h0_sheaf,
    local_value_semigroup,
    sheaf_degree,
)
from noether_forge.errors import BudgetExhausted, Inconclusive
from noether_forge.semigroup import (
    GoodSemigroup,
    IdealValueSet,
    canonical_K,
    classify,
    distance,
    saturated_chain,
)

# ------------------------------------------------------------ monomial sheaves


@dataclass(frozen=True)
class MonomialSheaf:
    """Value set ``A`` (a frozenset of exponents below the conductor, plus everything >= beta) and pole order N."""

    small: frozenset  # members of A below beta
    N: int
    beta: int

    def members(self, lo: int, hi: int) -> list:
        return [a for a in range(lo, hi + 1) if a in self.small or a >= self.beta]

    @property
    def minimum(self) -> int:
        return min(self.small) if self.small else self.beta

    def as_value_set(self, S: GoodSemigroup) -> IdealValueSet:
        lo = min(self.minimum, 0)
        mask = np.array([a in self.small or a >= self.beta for a in range(lo, self.beta + 1)])
        return IdealValueSet((lo,), (self.beta,), mask, base=S)

    def describe(self) -> dict:
        return {"A_below_conductor": sorted(self.small), "N": self.N, "beta": self.beta}


def pencil_sheaf(S: GoodSemigroup, r: int) -> MonomialSheaf:
    """``O<1, x^r>`` on the monomial model."""
    beta = S.conductor[0]
    small = {a for a in range(beta) if (a,) in S}
    small |= {r + a for a in range(min(0, -r), beta - r) if (a,) in S and r + a < beta}
    return MonomialSheaf(frozenset(small), max(0, r), beta)


def monomial_degree(S: GoodSemigroup, F: MonomialSheaf) -> int:
    extra = sum(1 for a in F.small if (a,) not in S)
    return extra + F.N


def monomial_h0(F: MonomialSheaf) -> int:
    return len(F.members(F.minimum, F.N)) if F.N >= F.minimum else 0


def monomial_h1(S: GoodSemigroup, F: MonomialSheaf) -> int:
    beta = F.beta
    top = beta - 2 - F.N
    if top < 0:
        return 0
    K = canonical_K(S)
    A = F.members(F.minimum, beta)
    count = 0
    for b in range(0, top + 1):
        if all((b + a,) in K for a in A):
            count += 1
    return count


@dataclass(frozen=True)
class PencilCandidate:
    descriptor: str
    degree: int
    h0: int
    degree_at_P: int
    degree_at_infinity: int
    r: int | None = None
    chain: tuple = ()

    def as_dict(self) -> dict:
        out = {
            "sheaf": self.descriptor,
            "degree": self.degree,
            "h0": self.h0,
            "degree_at_P": self.degree_at_P,
            "degree_at_infinity": self.degree_at_infinity,
        }
        if self.r is not None:
            out["r"] = self.r
        if self.chain:
            out["chain"] = list(self.chain)
        return out


@dataclass(frozen=True)
class GonalityResult:
    bound: int
    exact: bool
    witness: PencilCandidate
    scanned: int

    def as_dict(self) -> dict:
        return {"gonality_upper": self.bound, "exact": self.exact, "witness": self.witness.as_dict(), "scanned": self.scanned}


def _r_order(r: int):
    # prefer small positive exponents, then small negative ones
    return (0 if r > 0 else 1, abs(r))


def monomial_pencil(S: GoodSemigroup, r: int) -> PencilCandidate:
    F = pencil_sheaf(S, r)
    A = F.as_value_set(S)
    dp = distance(A, S)
    chain = tuple(a[0] for a in saturated_chain(A, S.conductor))
    return PencilCandidate(f"O<1, x^{r}>", dp + F.N, monomial_h0(F), dp, F.N, r, chain)


def _unibranch_fiber(curve: CurveSpec):
    if len(curve.singular_fibers) == 1 and len(curve.singular_fibers[0]) == 1:
        return curve.singular_fibers[0][0]
    return None


def _parametrized_pencil(curve: CurveSpec, c: Fraction, r: int) -> PencilCandidate:
    x = "t" if c == 0 else f"(t-({c.numerator}/{c.denominator}))"
    gen = f"{x}^{r}" if r > 0 else f"1/{x}^{-r}"
    F = SheafModel.make(curve, ["1", gen])
    tab = sheaf_degree(F)
    at_p = sum(tab.at_points.values())
    return PencilCandidate(f"O<1, {gen}>", tab.total, h0_sheaf(F), at_p, tab.at_infinity + tab.smooth_finite, r)


def sheaf_candidate(F: SheafModel) -> PencilCandidate:
    tab = sheaf_degree(F)
    gens = ", ".join(F.generator_texts)
    return PencilCandidate(f"O<{gens}>", tab.total, h0_sheaf(F), sum(tab.at_points.values()), tab.at_infinity + tab.smooth_finite)


def gonality_upper(curve: CurveSpec, budget: int | None = None, extra: list | None = None) -> GonalityResult:
    """Least degree over pencils ``O<1, x^r>``, ``-beta <= r <= g+1``, plus any supplied sheaves.

    ``x`` is the local coordinate at the singular fiber point.  The result is
    flagged exact for curves with one unibranch singular point, where this
    family suffices; otherwise it is an upper bound.
    """
    fibers = curve.singular_fibers
    if not fibers:
        w = PencilCandidate("O<1, x>", 1, 2, 0, 1, 1)
        return GonalityResult(1, True, w, 1)
    sems = [local_value_semigroup(curve, f) for f in fibers]
    g = sum(classify(S).delta for S in sems)
    beta = max(max(S.conductor) for S in sems)
    rs = sorted((r for r in range(-beta, g + 2) if r != 0), key=_r_order)
    centers = [fibers[0][0]] if len(fibers) == 1 else [fib[0] for fib in fibers]
    jobs = [(c, r) for c in centers for r in rs]
    best = None
    scanned = 0
    for c, r in jobs:
        if budget is not None and scanned >= budget:
            raise BudgetExhausted(f"budget of {budget} pencils exhausted", best)
        if curve.kind == "monomial":
            cand = monomial_pencil(sems[0], r)
        else:
            cand = _parametrized_pencil(curve, c, r)
        scanned += 1
        if cand.h0 >= 2 and (best is None or cand.degree < best.degree):
            best = cand
    for F in extra or []:
        cand = sheaf_candidate(F)
        scanned += 1
        if cand.h0 >= 2 and (best is None or cand.degree < best.degree):
            best = cand
    exact = _unibranch_fiber(curve) is not None
    return GonalityResult(best.degree, exact, best, scanned)


def has_degree_two_pencil(curve: CurveSpec) -> bool:
    return gonality_upper(curve).bound <= 2


# ------------------------------------------------------------------ bounds


@dataclass(frozen=True)
class GonalityBounds:
    lower: int
    upper_general: int
    upper_refined: int
    upper_rational_unibranch: int | None

    def as_dict(self) -> dict:
        out = {"lower": self.lower, "upper_general": self.upper_general, "upper_refined": self.upper_refined}
        if self.upper_rational_unibranch is not None:
            out["upper_rational_unibranch"] = self.upper_rational_unibranch
        return out


def gonality_bounds(g: int, eta: int, normal_genus: int = 0, unique_unibranch_non_gorenstein: bool = False) -> GonalityBounds:
    """Bounds for a non-Gorenstein curve: ``2 <= gon <= g``, ``g + 1 - [g~/2] - eta``, ``[(g+3)/2]``."""
    refined = g + 1 - normal_genus // 2 - eta
    rational = (g + 3) // 2 if (normal_genus == 0 and unique_unibranch_non_gorenstein) else None
    return GonalityBounds(2 if g > 0 else 1, g, refined, rational)


def curve_gonality_bounds(curve: CurveSpec) -> GonalityBounds:
    inv = curve_invariants(curve)
    non_gor = [p for p in inv.points if not p.gorenstein]
    unique = len(non_gor) == 1 and non_gor[0].branches == 1
    return gonality_bounds(inv.genus, inv.eta, 0, unique)


# -------------------------------------------------------------- Clifford


@dataclass(frozen=True)
class CliffordRecord:
    descriptor: str
    degree: int
    h0: int
    h1: int

    @property
    def index(self) -> int:
        return self.degree - 2 * (self.h0 - 1)

    @property
    def contributes(self) -> bool:
        return self.h0 >= 2 and self.h1 >= 2

    def as_dict(self) -> dict:
        return {
            "sheaf": self.descriptor,
            "degree": self.degree,
            "h0": self.h0,
            "h1": self.h1,
            "index": self.index,
            "contributes": self.contributes,
        }


@dataclass(frozen=True)
class CliffordResult:
    value: int | None
    record: CliffordRecord | None
    exact: bool
    scanned: int
    candidates: tuple = field(default=())

    def as_dict(self) -> dict:
        return {
            "clifford_upper": self.value,
            "exact": self.exact,
            "witness": self.record.as_dict() if self.record else None,
            "scanned": self.scanned,
            "candidates": [c.as_dict() for c in self.candidates],
        }


def semigroup_ideals(S: GoodSemigroup) -> list:
    """All relative ideals ``E ⊇ S`` with ``min E = 0`` (as frozensets of members below beta)."""
    beta = S.conductor[0]
    gaps = [a for a in range(beta) if (a,) not in S]
    svals = [a for a in range(1, beta) if (a,) in S]
    base = frozenset(a for a in range(beta) if (a,) in S)
    out = []
    for k in range(len(gaps) + 1):
        for X in combinations(gaps, k):
            Xs = set(X)
            ok = all((x + s >= beta) or (x + s in Xs) or ((x + s,) in S) for x in Xs for s in svals)
            if ok:
                out.append(base | frozenset(Xs))
    return out


def monomial_clifford_records(S: GoodSemigroup, budget: int | None = None) -> tuple:
    beta = S.conductor[0]
    genus = classify(S).delta
    recs = []
    scanned = 0
    for E in semigroup_ideals(S):
        for N in range(0, max(beta - 1, 1)):
            if budget is not None and scanned >= budget:
                return recs, scanned, True
            F = MonomialSheaf(E, N, beta)
            scanned += 1
            h0 = monomial_h0(F)
            if h0 < 2:
                continue
            deg = monomial_degree(S, F)
            h1 = h0 - deg - 1 + genus
            if h1 < 2:
                continue
            recs.append(CliffordRecord(f"A={sorted(E)}, N={N}", deg, h0, h1))
    return recs, scanned, False


def clifford_upper(curve: CurveSpec, budget: int | None = None, candidates: list | None = None) -> CliffordResult:
    """Least ``deg - 2(h^0 - 1)`` over contributing monomial sheaves and supplied candidates."""
    inv = curve_invariants(curve)
    recs = []
    scanned = 0
    exhausted = False
    if curve.kind == "monomial" and curve.singular_fibers:
        S = local_value_semigroup(curve)
        recs, scanned, exhausted = monomial_clifford_records(S, budget)
    supplied = []
    for F in candidates or []:
        tab = sheaf_degree(F)
        h0 = h0_sheaf(F)
        h1 = h0 - tab.total - 1 + inv.genus
        rec = CliffordRecord("O<" + ", ".join(F.generator_texts) + ">", tab.total, h0, h1)
        supplied.append(rec)
        scanned += 1
        if rec.contributes:
            recs.append(rec)
    best = min(recs, key=lambda r: (r.index, r.degree, r.descriptor)) if recs else None
    if exhausted and best is None:
        raise BudgetExhausted("Clifford budget exhausted before any contributing sheaf was found", None)
    return CliffordResult(best.index if best else None, best, False, scanned, tuple(supplied))


@dataclass(frozen=True)
class CliffordClassification:
    clifford: int | None
    reason: str
    gonality: int
    gonality_exact: bool
    witness: dict | None = None
    required_witness: dict | None = None

    def as_dict(self) -> dict:
        out = {
            "clifford": self.clifford,
            "reason": self.reason,
            "gonality": self.gonality,
            "gonality_exact": self.gonality_exact,
            "witness": self.witness,
        }
        if self.required_witness is not None:
            out["required_witness"] = self.required_witness
        return out


def _fiber_monomials(curve: CurveSpec, max_degree: int) -> list:
    points = sorted({c for fib in curve.singular_fibers for c in fib})
    if not points:
        points = [Fraction(0)]

    def factor(c, e):
        base = "t" if c == 0 else f"(t-({c.numerator}/{c.denominator}))"
        return f"{base}^{e}"

    out = []

    def rec(i, left, parts):
        if i == len(points):
            if parts:
                out.append("*".join(parts))
            return
        for e in range(left + 1):
            rec(i + 1, left - e, parts + ([factor(points[i], e)] if e else []))

    rec(0, max_degree, [])
    return out


def find_sheaf(curve: CurveSpec, degree: int, h0: int, budget: int = 50, candidates: list | None = None) -> dict:
    """Look for ``F = O<1, f, g>`` with the given degree and h^0.

    Supplied sheaves are tried first, then pairs of products of ``(t - c)^e``
    over singular fiber points with total exponent at most ``degree``.
    """
    tried = []
    pool = list(candidates or [])
    mons = _fiber_monomials(curve, degree)
    for a, b in combinations(mons, 2):
        pool.append((a, b))
    scanned = 0
    for item in pool:
        if scanned >= budget:
            break
        F = item if isinstance(item, SheafModel) else SheafModel.make(curve, list(item))
        scanned += 1
        d = sheaf_degree(F).total
        h = h0_sheaf(F) if (d == degree or isinstance(item, SheafModel)) else None
        rec = {"sheaf": "O<" + ", ".join(F.generator_texts) + ">", "degree": d, "h0": h}
        if isinstance(item, SheafModel):
            tried.append(rec)
        if d == degree and h == h0:
            return {"degree": degree, "h0": h0, "found": True, "witness": rec, "scanned": scanned, "supplied": tried}
    return {"degree": degree, "h0": h0, "found": False, "witness": None, "scanned": scanned, "supplied": tried}


def clifford_classify(
    curve: CurveSpec, budget: int | None = None, candidates: list | None = None, witness_budget: int = 50
) -> CliffordClassification:
    """Clifford index where the propositions force it.

    * ``gon = 2`` gives ``Cliff = 0``;
    * ``gon = 3`` and ``g >= 4`` gives ``Cliff = 1``;
    * ``gon > 2`` plus a contributing sheaf of index 1 gives ``Cliff = 1``;
    * for ``g = 5`` a sheaf of degree 5 with ``h^0 = 3`` is searched for and reported.
    """
    inv = curve_invariants(curve)
    gon = gonality_upper(curve)
    wit = gon.witness.as_dict()
    if inv.genus >= 1 and gon.bound <= 2:
        return CliffordClassification(0, "gonality 2", 2, True, wit)
    # gonality 2 means hyperelliptic (Gorenstein) or rational nearly normal
    above_two = gon.exact or (not inv.gorenstein and not inv.nearly_normal)
    if gon.exact and gon.bound == 3 and inv.genus >= 4:
        return CliffordClassification(1, "trigonal with g >= 4", 3, True, wit)
    cu = clifford_upper(curve, budget, candidates)
    if cu.value == 1 and above_two:
        return CliffordClassification(1, "index-1 sheaf and gonality > 2", gon.bound, gon.exact, cu.record.as_dict())
    if inv.genus == 5 and above_two:
        req = find_sheaf(curve, 5, 3, witness_budget, candidates)
        if req["found"]:
            return CliffordClassification(1, "degree-5 sheaf with h0 = 3", gon.bound, gon.exact, req["witness"], req)
        return CliffordClassification(None, "degree-5 h0 = 3 sheaf not found", gon.bound, gon.exact, wit, req)
    raise Inconclusive("no proposition pins down the Clifford index")


@dataclass(frozen=True)
class HyperellipticCheck:
    gon2: bool
    reason: str  # hyperelliptic | rational_nearly_normal | none

    def as_dict(self) -> dict:
        return {"gon2": self.gon2, "reason": self.reason}


def is_hyperelliptic_like(curve: CurveSpec) -> HyperellipticCheck:
    inv = curve_invariants(curve, check=False)
    if inv.genus < 1 or not has_degree_two_pencil(curve):
        return HyperellipticCheck(False, "none")
    if inv.nearly_normal and not inv.gorenstein:
        return HyperellipticCheck(True, "rational_nearly_normal")
    if inv.gorenstein:
        return HyperellipticCheck(True, "hyperelliptic")
    return HyperellipticCheck(True, "none")


def search_pool_map(func, items, threads: int):
    """Order-preserving map, in a process pool when ``threads > 1``."""
    if threads <= 1:
        return [func(x) for x in items]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(func, items))
