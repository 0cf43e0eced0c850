"""Parametrized rational curves: local value semigroups, invariants, sheaf degrees.

A curve is the image of ``t -> (g_1(t), ..., g_n(t))`` with a smooth point at
``t = oo``.  A singular point P is given by its fiber ``{c_1, ..., c_s}`` of
rational parameter values.  Locally everything is computed in the truncated
jet algebra ``⊕_j Q[tau]/(tau^{B+1})`` with ``tau = t - c_j``:

* the image of ``O_P`` is the subalgebra generated by ``g_i - g_i(P)``;
* ``a`` is a value iff ``dim V_{>=a} > dim V_{>=a+e_i}`` for every ``i``,
  where ``V_{>=a}`` is the subspace of jets with ``ord_j >= a_j``.

Those dimensions are ranks of column subsets of the basis matrix, obtained by
inserting columns one at a time.  All arithmetic is over Python integers.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd
from typing import Sequence

import numpy as np
import sympy as sp

from noether_forge.errors import (
    InvalidCurve,
    NoStabilization,
    NotSingular,
    UndeclaredSingularity,
)
from noether_forge.poly import (
    ONE,
    T,
    U,
    RationalFunction,
    order_at,
    parse_polynomial,
    parse_rational,
    parse_rational_function,
    poly,
    taylor,
    to_text,
)
from noether_forge.semigroup import (
    GoodSemigroup,
    IdealValueSet,
    classify,
    distance,
    from_numerical_generators,
    natural_numbers,
    vnorm,
)

MAX_DOUBLINGS = 5


# ---------------------------------------------------------------- curve spec


@dataclass(frozen=True)
class CurveSpec:
    kind: str  # "monomial" | "parametrized"
    exponents: tuple = ()
    generator_texts: tuple = ()
    singular_fibers: tuple = ()  # tuple of tuples of Fraction
    infinity: bool = True
    name: str | None = None

    @classmethod
    def monomial(cls, exponents: Sequence[int], name=None) -> "CurveSpec":
        exps = tuple(sorted({int(e) for e in exponents}))
        if not exps or exps[0] <= 0:
            raise InvalidCurve("monomial exponents must be positive")
        if reduce(gcd, exps) != 1:
            raise InvalidCurve(f"exponents {exps} have a common factor: the map is not birational")
        fibers = () if 1 in exps else ((Fraction(0),),)
        return cls("monomial", exps, tuple(f"t^{e}" for e in exps), fibers, True, name)

    @classmethod
    def parametrized(cls, generators: Sequence[str], fibers, name=None) -> "CurveSpec":
        texts = tuple(str(g) for g in generators)
        for g in texts:
            p = parse_polynomial(g)
            if p.degree() < 1:
                raise InvalidCurve(f"generator {g!r} is constant")
        fibs = tuple(tuple(parse_rational(c) for c in fib) for fib in fibers)
        for fib in fibs:
            if not fib or len(set(fib)) != len(fib):
                raise InvalidCurve(f"fiber {fib} is empty or repeats a point")
        return cls("parametrized", (), texts, fibs, True, name)

    @classmethod
    def from_dict(cls, doc: dict) -> "CurveSpec":
        if not doc.get("infinity", True):
            raise InvalidCurve("only curves with a smooth point at t = oo are supported")
        kind = doc.get("kind", "parametrized")
        if kind == "monomial":
            return cls.monomial(doc["exponents"], doc.get("name"))
        if kind != "parametrized":
            raise InvalidCurve(f"unknown curve kind {kind!r}")
        return cls.parametrized(doc["generators"], doc.get("singular_fibers", []), doc.get("name"))

    def to_dict(self) -> dict:
        out = {"kind": self.kind}
        if self.name:
            out["name"] = self.name
        if self.kind == "monomial":
            out["exponents"] = list(self.exponents)
        else:
            out["generators"] = list(self.generator_texts)
            out["singular_fibers"] = [[_frac_out(c) for c in fib] for fib in self.singular_fibers]
        out["infinity"] = True
        return out

    @property
    def generators(self) -> tuple:
        return _parsed(self.generator_texts)


@lru_cache(maxsize=None)
def _parsed(texts: tuple) -> tuple:
    return tuple(parse_polynomial(g) for g in texts)


def _frac_out(c: Fraction):
    return int(c) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


# ---------------------------------------------------------- jets, echelon


class Jets:
    """Truncated jets at the points of one fiber, stored as primitive integer vectors."""

    def __init__(self, centers: Sequence[Fraction], B: int):
        self.centers = tuple(centers)
        self.B = B
        self.s = len(self.centers)
        self.width = B + 1

    @property
    def length(self) -> int:
        return self.s * self.width

    def of(self, p: sp.Poly) -> list:
        coeffs = []
        for c in self.centers:
            coeffs.extend(taylor(p, c, self.B))
        return primitive(coeffs)

    def one(self) -> list:
        return primitive([Fraction(1) if k == 0 else Fraction(0) for _ in range(self.s) for k in range(self.width)])

    def mul(self, a: list, b: list) -> list:
        w = self.width
        out = [0] * self.length
        for j in range(self.s):
            base = j * w
            for x in range(w):
                ax = a[base + x]
                if not ax:
                    continue
                for y in range(w - x):
                    by = b[base + y]
                    if by:
                        out[base + x + y] += ax * by
        return primitive(out)


def primitive(vec) -> list:
    """Scale a rational vector to a primitive integer vector (zero stays zero)."""
    den = 1
    for x in vec:
        if isinstance(x, Fraction) and x.denominator != 1:
            den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        if x:
            g = gcd(g, x)
            if g == 1:
                break
    if g > 1:
        ints = [x // g for x in ints]
    return ints


class Echelon:
    """Row echelon basis with distinct pivots (pivot = first nonzero index)."""

    __slots__ = ("rows", "length")

    def __init__(self, length: int, rows: dict | None = None):
        self.length = length
        self.rows = {} if rows is None else rows

    def copy(self) -> "Echelon":
        return Echelon(self.length, dict(self.rows))

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, v: list) -> tuple:
        v = list(v)
        start = 0
        while True:
            p = next((i for i in range(start, len(v)) if v[i]), None)
            if p is None:
                return None, v
            row = self.rows.get(p)
            if row is None:
                return p, v
            a, b = row[p], v[p]
            g = gcd(a, b)
            a, b = a // g, b // g
            v = [a * x - b * y for x, y in zip(v, row)]
            v = primitive(v)
            start = p + 1

    def add(self, v: list) -> bool:
        p, r = self.reduce(v)
        if p is None:
            return False
        self.rows[p] = r
        return True

    def contains(self, v: list) -> bool:
        return self.reduce(v)[0] is None


# ------------------------------------------------------------ local rings


@dataclass
class LocalData:
    fiber: tuple
    B: int
    jets: Jets
    basis: list  # vectors spanning the image of O_P (each an element of the image)
    echelon: Echelon
    mask: np.ndarray  # value mask over [0, B]^s
    semigroup: GoodSemigroup


def _subalgebra(jets: Jets, gens: list) -> tuple:
    ech = Echelon(jets.length)
    basis = []
    frontier = []
    for v in [jets.one()] + gens:
        if ech.add(v):
            basis.append(v)
            frontier.append(v)
    while frontier:
        new = []
        for f in frontier:
            for y in gens:
                prod = jets.mul(f, y)
                if ech.add(prod):
                    basis.append(prod)
                    new.append(prod)
        frontier = new
    return basis, ech


def _module(jets: Jets, o_basis: list, gens: list) -> tuple:
    ech = Echelon(jets.length)
    basis = []
    for m in gens:
        for o in o_basis:
            prod = jets.mul(o, m)
            if ech.add(prod):
                basis.append(prod)
    return basis, ech


def rank_profile(ech: Echelon, s: int, B: int) -> np.ndarray:
    """``R[a] = rank`` of the columns ``{(j, k) : k < a_j}``, for ``a`` in ``{0..B+1}^s``."""
    rows = list(ech.rows.values())
    n = len(rows)
    w = B + 1
    cols = [[[row[j * w + k] for row in rows] for k in range(w)] for j in range(s)]
    R = np.zeros((B + 2,) * s, dtype=np.int64)

    def rec(j, state: Echelon, idx: tuple):
        cur = state.copy()
        for k in range(B + 2):
            if k > 0:
                cur.add(cols[j][k - 1])
            if j == s - 1:
                R[idx + (k,)] = cur.rank
            else:
                rec(j + 1, cur, idx + (k,))

    rec(0, Echelon(n), ())
    return R


def value_mask_from_echelon(ech: Echelon, s: int, B: int) -> np.ndarray:
    """Mask over ``[0, B]^s`` of the values of the span of ``ech``."""
    if s == 1:
        mask = np.zeros(B + 1, dtype=bool)
        for p in ech.rows:
            mask[p] = True
        return mask
    R = rank_profile(ech, s, B)
    core = tuple(slice(0, B + 1) for _ in range(s))
    base = R[core]
    mask = np.ones(base.shape, dtype=bool)
    for i in range(s):
        sl = tuple(slice(1, B + 2) if k == i else slice(0, B + 1) for k in range(s))
        mask &= R[sl] > base
    return mask


def _conductor(mask: np.ndarray):
    """Smallest ``a`` with everything above it (inside the box) a member, or None."""
    s = mask.ndim
    region = mask.copy()
    for k in range(s):
        # suffix-AND along each axis
        region = np.flip(np.logical_and.accumulate(np.flip(region, axis=k), axis=k), axis=k)
    pts = np.argwhere(region)
    if len(pts) == 0:
        return None
    beta = tuple(int(x) for x in pts.min(axis=0))
    return beta if region[beta] else None


def _fiber_values(curve: CurveSpec, fiber: tuple) -> tuple:
    vals = []
    for g in curve.generators:
        vs = {g.eval(sp.Rational(c.numerator, c.denominator)) for c in fiber}
        if len(vs) != 1:
            raise InvalidCurve(f"fiber {tuple(str(c) for c in fiber)} is not mapped to a single point")
        vals.append(vs.pop())
    return tuple(vals)


def _local_generators(curve: CurveSpec, fiber: tuple) -> list:
    vals = _fiber_values(curve, fiber)
    return [g - poly(v) for g, v in zip(curve.generators, vals)]


def _initial_box(gens: list, fiber: tuple) -> int:
    # branch-wise conductor of the single branch through c, a cheap lower estimate
    best = 2
    for c in fiber:
        orders = []
        for g in gens:
            if not g.is_zero:
                orders.append(order_at(g, c))
        m = min(orders)
        if m == 0:
            raise NotSingular(f"a generator is a local unit at t = {c}")
        best = max(best, 2 * m)
    return best


def compute_local(curve: CurveSpec, fiber: tuple, B: int) -> LocalData:
    fiber = tuple(fiber)
    gens = _local_generators(curve, fiber)
    jets = Jets(fiber, B)
    gjets = [jets.of(g) for g in gens if not g.is_zero]
    basis, ech = _subalgebra(jets, gjets)
    mask = value_mask_from_echelon(ech, len(fiber), B)
    beta = _conductor(mask)
    S = None
    if beta is not None:
        sl = tuple(slice(0, b + 1) for b in beta)
        S = GoodSemigroup(beta, mask[sl], provenance={"fiber": [str(c) for c in fiber]})
    return LocalData(fiber, B, jets, basis, ech, mask, S)


@lru_cache(maxsize=256)
def _stable_local(curve: CurveSpec, fiber: tuple) -> LocalData:
    gens = _local_generators(curve, fiber)
    B = _initial_box(gens, fiber)
    prev = None
    for _ in range(MAX_DOUBLINGS + 1):
        cur = compute_local(curve, fiber, B)
        S = cur.semigroup
        ok = S is not None and max(S.conductor) * 2 <= B
        if ok and prev is not None and prev.semigroup is not None and prev.semigroup == S:
            return cur
        prev = cur if ok else None
        B *= 2
    raise NoStabilization(f"value semigroup at fiber {fiber} did not stabilize")


def local_data(curve: CurveSpec, fiber, min_box: int = 0) -> LocalData:
    fiber = tuple(parse_rational(c) for c in fiber)
    base = _stable_local(curve, fiber)
    if base.B >= min_box:
        return base
    return compute_local(curve, fiber, min_box)


def local_value_semigroup(curve: CurveSpec, fiber=None, analytic: bool | None = None) -> GoodSemigroup:
    """``v_P(O_P)`` at the point with the given parameter fiber.

    Monomial curves use the numerical-semigroup fast path unless
    ``analytic=True``.
    """
    if fiber is None:
        if len(curve.singular_fibers) != 1:
            raise InvalidCurve("curve has several singular fibers; name one")
        fiber = curve.singular_fibers[0]
    fiber = tuple(parse_rational(c) for c in fiber)
    if curve.kind == "monomial" and not analytic:
        if fiber != (Fraction(0),):
            raise NotSingular("a monomial curve is smooth away from t = 0")
        S = from_numerical_generators(curve.exponents)
        if S.conductor == (0,):
            raise NotSingular("the monomial curve is smooth")
        return S
    S = local_data(curve, fiber).semigroup
    if S == natural_numbers(S.s) and S.s == 1:
        raise NotSingular(f"the point at fiber {fiber} is smooth")
    return S


def expand_at(f, c, order: int) -> list:
    """Coefficients of ``(t - c)^0 .. (t - c)^order`` of ``f`` (a polynomial or its text)."""
    if order < 1:
        raise ValueError("order must be at least 1")
    p = parse_polynomial(f) if isinstance(f, str) else f
    return taylor(p, parse_rational(c), order)


def value_witness(curve: CurveSpec, fiber, a, retries: int = 3, seed: int = 0):
    """A random element of the local ring image with value exactly ``a``, or None.

    Returns the coefficient vector (over the stored basis) of the witness.
    """
    ld = local_data(curve, fiber)
    s, w = len(ld.fiber), ld.B + 1
    a = tuple(int(x) for x in a)
    cols = [j * w + k for j in range(s) for k in range(a[j])]
    M = sp.Matrix([[row[c] for c in cols] for row in ld.basis]) if cols else None
    n = len(ld.basis)
    if M is None:
        null = [sp.eye(n).col(i) for i in range(n)]
    else:
        null = M.T.nullspace()
    if not null:
        return None
    rng = random.Random(seed)
    for _ in range(retries):
        lam = [Fraction(0)] * n
        for v in null:
            k = rng.randint(-50, 50)
            for i in range(n):
                lam[i] += k * Fraction(int(v[i].p), int(v[i].q))
        f = [sum(lam[i] * ld.basis[i][c] for i in range(n)) for c in range(s * w)]
        orders = tuple(next((k for k in range(w) if f[j * w + k] != 0), None) for j in range(s))
        if orders == a:
            return lam
    return None


# ----------------------------------------------------------------- sheaves


@dataclass(frozen=True)
class SheafModel:
    """``F = O + sum f_j O`` for rational functions ``f_j`` on the curve."""

    curve: CurveSpec
    generator_texts: tuple = ("1",)

    @classmethod
    def make(cls, curve: CurveSpec, generators: Sequence[str]) -> "SheafModel":
        texts = tuple(str(g) for g in generators)
        for g in texts:
            parse_rational_function(g)
        if "1" not in texts:
            texts = ("1",) + texts
        return cls(curve, texts)

    @property
    def functions(self) -> tuple:
        return tuple(parse_rational_function(g) for g in self.generator_texts)

    def to_dict(self) -> dict:
        return {"curve": self.curve.to_dict(), "generators": list(self.generator_texts)}


def _common_denominator(funcs) -> sp.Poly:
    h = ONE
    for f in funcs:
        h = sp.lcm(h, f.den)
    return h.monic()


@lru_cache(maxsize=256)
def _sheaf_local(F: SheafModel, fiber: tuple):
    funcs = F.functions
    h = _common_denominator(funcs)
    w = tuple(order_at(h, c) for c in fiber)
    base = _stable_local(F.curve, fiber)
    beta = base.semigroup.conductor
    Bp = max(base.B, max(b + x for b, x in zip(beta, w)) + 1)
    ld = base if Bp == base.B else compute_local(F.curve, fiber, Bp)
    jets = ld.jets
    gens = []
    for f in funcs:
        num = f.num * sp.div(h, f.den)[0]
        gens.append(jets.of(num))
    basis, ech = _module(jets, ld.basis, gens)
    mask = value_mask_from_echelon(ech, len(fiber), Bp)
    sl = tuple(slice(0, b + x + 1) for b, x in zip(beta, w))
    lo = tuple(-x for x in w)
    values = IdealValueSet(lo, beta, mask[sl], base=base.semigroup)
    return values, ech, jets, w


def sheaf_local_values(F: SheafModel, fiber) -> IdealValueSet:
    """``v_P(F_P)`` as a box-truncated ideal value set."""
    fiber = tuple(parse_rational(c) for c in fiber)
    return _sheaf_local(F, fiber)[0]


@dataclass(frozen=True)
class DegreeTable:
    at_points: dict  # fiber (as strings) -> dim F_P / O_P
    smooth_finite: int
    at_infinity: int

    @property
    def total(self) -> int:
        return sum(self.at_points.values()) + self.smooth_finite + self.at_infinity

    def as_dict(self) -> dict:
        return {
            "at_points": {k: v for k, v in sorted(self.at_points.items())},
            "smooth_finite": self.smooth_finite,
            "at_infinity": self.at_infinity,
            "total": self.total,
        }


def _fiber_key(fiber) -> str:
    return ",".join(str(c) for c in fiber)


def _pole_at_infinity(funcs) -> int:
    return max([0] + [f.pole_order_at_infinity() for f in funcs if not f.num.is_zero])


def sheaf_degree(F: SheafModel) -> DegreeTable:
    funcs = F.functions
    h = _common_denominator(funcs)
    fiber_roots = 0
    per = {}
    for fib in F.curve.singular_fibers:
        vals = sheaf_local_values(F, fib)
        S = local_value_semigroup(F.curve, fib)
        per[_fiber_key(fib)] = distance(vals, S)
        fiber_roots += sum(order_at(h, c) for c in fib)
    return DegreeTable(per, h.degree() - fiber_roots, _pole_at_infinity(funcs))


def h0_sheaf(F: SheafModel) -> int:
    """``dim H^0(F)``: polynomials ``p`` with ``p / h`` in every stalk, h the common denominator."""
    funcs = F.functions
    h = _common_denominator(funcs)
    D = h.degree() + _pole_at_infinity(funcs)
    blocks = []
    for fib in F.curve.singular_fibers:
        _, ech, jets, _ = _sheaf_local(F, tuple(fib))
        blocks.append((ech, jets))
    total = sum(j.length for _, j in blocks)
    big = Echelon(total)
    offset = 0
    for ech, jets in blocks:
        for row in ech.rows.values():
            v = [0] * total
            v[offset : offset + jets.length] = row
            big.add(v)
        offset += jets.length
    dim_u = big.rank
    for k in range(D + 1):
        mono = poly(T**k)
        v = []
        for _, jets in blocks:
            v.extend(_raw_jet(jets, mono))
        big.add(primitive(v))
    return (D + 1) - (big.rank - dim_u)


def _raw_jet(jets: Jets, p: sp.Poly) -> list:
    out = []
    for c in jets.centers:
        out.extend(taylor(p, c, jets.B))
    return out


def h1_sheaf(F: SheafModel, genus: int | None = None) -> int:
    """By Riemann-Roch, ``h^1 = h^0 - deg - 1 + g``."""
    g = curve_genus(F.curve) if genus is None else genus
    return h0_sheaf(F) - sheaf_degree(F).total - 1 + g


# -------------------------------------------------------------- invariants


def curve_semigroups(curve: CurveSpec) -> list:
    return [(fib, local_value_semigroup(curve, fib)) for fib in curve.singular_fibers]


def curve_genus(curve: CurveSpec) -> int:
    return sum(classify(S).delta for _, S in curve_semigroups(curve))


@dataclass(frozen=True)
class PointInvariants:
    fiber: tuple
    branches: int
    conductor: tuple
    delta: int
    eta: int
    mu: int
    conductor_codim: int
    gorenstein: bool
    kunz: bool
    almost_gorenstein: bool

    def as_dict(self) -> dict:
        return {
            "fiber": [_frac_out(c) for c in self.fiber],
            "branches": self.branches,
            "conductor": list(self.conductor),
            "delta": self.delta,
            "eta": self.eta,
            "mu": self.mu,
            "conductor_codim": self.conductor_codim,
            "gorenstein": self.gorenstein,
            "kunz": self.kunz,
            "almost_gorenstein": self.almost_gorenstein,
        }


@dataclass(frozen=True)
class CurveInvariants:
    genus: int
    eta: int
    mu: int
    conductor_codim: int
    nearly_normal: bool
    nearly_gorenstein: bool
    nonhyperelliptic: bool
    gorenstein: bool
    rho_minus_sigma: int
    rho_minus_sigma_hom_reading: int
    points: tuple = field(default=())

    def as_dict(self) -> dict:
        out = {
            "genus": self.genus,
            "eta": self.eta,
            "mu": self.mu if self.nonhyperelliptic else None,
            "conductor_codim": self.conductor_codim,
            "nearly_normal": self.nearly_normal,
            "nearly_gorenstein": self.nearly_gorenstein,
            "nonhyperelliptic": self.nonhyperelliptic,
            "gorenstein": self.gorenstein,
            "rho_minus_sigma": self.rho_minus_sigma,
            "points": [p.as_dict() for p in self.points],
        }
        if self.rho_minus_sigma_hom_reading != self.rho_minus_sigma:
            out["rho_minus_sigma_hom_reading"] = self.rho_minus_sigma_hom_reading
        return out


def point_invariants(fiber, S: GoodSemigroup) -> PointInvariants:
    c = classify(S)
    return PointInvariants(
        fiber=tuple(fiber),
        branches=S.s,
        conductor=S.conductor,
        delta=c.delta,
        eta=c.eta,
        mu=c.mu,
        conductor_codim=vnorm(S.conductor) - c.delta,
        gorenstein=c.gorenstein,
        kunz=c.kunz,
        almost_gorenstein=c.almost_gorenstein,
    )


def curve_invariants(curve: CurveSpec, check: bool = True) -> CurveInvariants:
    if check:
        check_singularities(curve)
    pts = tuple(point_invariants(fib, S) for fib, S in curve_semigroups(curve))
    g = sum(p.delta for p in pts)
    gorenstein = all(p.gorenstein for p in pts)
    non_gor = [p for p in pts if not p.gorenstein]
    rms = sum(vnorm(p.conductor) - p.delta for p in non_gor)
    hom = sum(vnorm(p.conductor) for p in pts if p.gorenstein) - sum(p.delta for p in non_gor)
    codim = sum(p.conductor_codim for p in pts)
    mu = sum(p.mu for p in pts)
    if g < 2:
        nonhyp = False
    elif not gorenstein:
        nonhyp = True
    else:
        from noether_forge.linear_systems import has_degree_two_pencil

        nonhyp = not has_degree_two_pencil(curve)
    return CurveInvariants(
        genus=g,
        eta=sum(p.eta for p in pts),
        mu=mu,
        conductor_codim=codim,
        nearly_normal=codim == 1,
        nearly_gorenstein=mu == 1,
        nonhyperelliptic=nonhyp,
        gorenstein=gorenstein,
        rho_minus_sigma=rms,
        rho_minus_sigma_hom_reading=hom,
        points=pts,
    )


# ------------------------------------------------------ singularity checks


def _bivariate(p: sp.Poly) -> sp.Poly:
    e = p.as_expr()
    num = sp.Poly(e, T) - sp.Poly(e.subs(T, U), T)
    q = sp.Poly(num.as_expr(), T, U, domain=sp.QQ)
    quo, rem = sp.div(q, sp.Poly(T - U, T, U, domain=sp.QQ))
    assert rem.is_zero
    return quo


def _declared_points(curve: CurveSpec) -> list:
    return [c for fib in curve.singular_fibers for c in fib]


def _strip_declared(E: sp.Poly, points) -> sp.Poly:
    for c in points:
        lin = poly(T - sp.Rational(c.numerator, c.denominator))
        while E.degree() > 0:
            q, r = sp.div(E, lin)
            if not r.is_zero:
                break
            E = q
    return E


def check_singularities(curve: CurveSpec) -> None:
    """Raise if the parametrization has singular points outside the declared fibers.

    Also checks that each fiber maps to one point, that distinct fibers map
    to distinct points, and that the map is birational onto its image.
    """
    if curve.kind == "monomial":
        return
    images = [_fiber_values(curve, fib) for fib in curve.singular_fibers]
    if len(set(images)) != len(images):
        raise UndeclaredSingularity("two declared fibers map to the same point")
    gens = list(curve.generators)
    H = [_bivariate(g) for g in gens]
    common = reduce(lambda a, b: sp.gcd(a, b), H)
    if common.total_degree() > 0:
        raise InvalidCurve("the parametrization is not birational onto its image")
    declared = _declared_points(curve)

    # cusps: common zeros of all derivatives
    dg = reduce(lambda a, b: sp.gcd(a, b), [g.diff(T) for g in gens])
    rest = _strip_declared(dg.monic() if dg.degree() > 0 else dg, declared)
    if rest.degree() > 0:
        raise UndeclaredSingularity(f"cusp-like point at roots of {rest.as_expr()}")

    if len(H) == 1:
        return
    # nodes: t-coordinates of common zeros of the divided differences
    E = None
    for i in range(len(H)):
        for j in range(i + 1, len(H)):
            r = sp.Poly(sp.resultant(H[i].as_expr(), H[j].as_expr(), U), T, domain=sp.QQ)
            if r.is_zero:
                continue
            E = r if E is None else sp.gcd(E, r)
            if _strip_declared(E.monic(), declared).degree() <= 0:
                return
    if E is None:
        E = _eliminate(H)
    if E.is_zero:
        raise InvalidCurve("the parametrization is not birational onto its image")
    rest = _strip_declared(E.monic() if E.degree() > 0 else E, declared)
    if rest.degree() <= 0:
        return
    # confirm the extra candidates really carry a common zero
    G = sp.groebner([h.as_expr() for h in H] + [rest.as_expr()], U, T, order="lex", domain=sp.QQ)
    if not (len(G.exprs) == 1 and G.exprs[0] == 1):
        raise UndeclaredSingularity(f"undeclared singular point over roots of {rest.as_expr()}")


def _eliminate(H) -> sp.Poly:
    G = sp.groebner([h.as_expr() for h in H], U, T, order="lex", domain=sp.QQ)
    only_t = [g for g in G.exprs if not g.has(U)]
    if not only_t:
        return poly(0)
    return reduce(sp.gcd, [sp.Poly(g, T, domain=sp.QQ) for g in only_t])
