"""Good semigroups of Z^s, their relative ideals, and the canonical set K.

Every set here is *box-determined*: it lives in ``lo + N^s`` and there is a
corner ``hi`` with ``a in X  <=>  min(a, hi) in X``.  Such a set is stored as
a boolean mask over the box ``[lo, hi]``.  For a semigroup ``lo = 0`` and
``hi`` is the conductor.

Vectors are plain tuples of ints, compared componentwise.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from noether_forge import kernels
from noether_forge.errors import (
    ChainLengthMismatch,
    EmptyGenerators,
    NonCoprimeGenerators,
    NoStabilization,
    NotNested,
)

ValueVector = tuple  # tuple[int, ...]


def vnorm(a: Sequence[int]) -> int:
    """``|a|``, the sum of the coordinates."""
    return int(sum(a))


def vle(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def vlt(a, b) -> bool:
    return vle(a, b) and tuple(a) != tuple(b)


def vmin(a, b) -> tuple:
    return tuple(min(x, y) for x, y in zip(a, b))


def vmax(a, b) -> tuple:
    return tuple(max(x, y) for x, y in zip(a, b))


def vadd(a, b) -> tuple:
    return tuple(int(x) + int(y) for x, y in zip(a, b))


def vsub(a, b) -> tuple:
    return tuple(int(x) - int(y) for x, y in zip(a, b))


def unit(s: int, i: int) -> tuple:
    return tuple(1 if k == i else 0 for k in range(s))


def ones(s: int) -> tuple:
    return (1,) * s


def _as_points(points: Iterable[Sequence[int]], s: int) -> np.ndarray:
    arr = np.array([tuple(int(x) for x in p) for p in points], dtype=np.int64)
    return arr.reshape(-1, s)


def _tuples(arr: np.ndarray) -> tuple:
    return tuple(tuple(int(x) for x in row) for row in arr)


class ValueSet:
    """A box-determined subset of Z^s (see module docstring)."""

    def __init__(self, lo, hi, mask):
        lo = tuple(int(x) for x in lo)
        hi = tuple(int(x) for x in hi)
        if len(lo) != len(hi) or not lo:
            raise ValueError("lo and hi must be nonempty and of equal length")
        if not vle(lo, hi):
            raise ValueError(f"empty box: lo={lo} hi={hi}")
        mask = np.array(mask, dtype=bool).reshape(tuple(h - l + 1 for l, h in zip(lo, hi)))
        mask.flags.writeable = False
        self._lo, self._hi, self._mask = lo, hi, mask

    # -- basic accessors
    @property
    def lo(self) -> tuple:
        return self._lo

    @property
    def hi(self) -> tuple:
        return self._hi

    @property
    def mask(self) -> np.ndarray:
        return self._mask

    @property
    def s(self) -> int:
        return len(self._lo)

    def __contains__(self, a) -> bool:
        a = tuple(int(x) for x in a)
        if len(a) != self.s or not vle(self._lo, a):
            return False
        idx = tuple(min(x, h) - l for x, h, l in zip(a, self._hi, self._lo))
        return bool(self._mask[idx])

    def mask_in_box(self, lo, hi) -> np.ndarray:
        """Membership mask of this set over an arbitrary box ``[lo, hi]``."""
        axes_idx, axes_ok = [], []
        for k in range(self.s):
            coords = np.arange(lo[k], hi[k] + 1)
            axes_ok.append(coords >= self._lo[k])
            axes_idx.append(np.clip(coords, self._lo[k], self._hi[k]) - self._lo[k])
        out = self._mask[np.ix_(*axes_idx)].copy()
        for k, ok in enumerate(axes_ok):
            shape = [1] * self.s
            shape[k] = -1
            out &= ok.reshape(shape)
        return out

    def points(self, lo=None, hi=None) -> np.ndarray:
        """Members inside ``[lo, hi]`` (default: the stored box) as an (n, s) array."""
        lo = self._lo if lo is None else tuple(lo)
        hi = self._hi if hi is None else tuple(hi)
        m = self.mask if (lo == self._lo and hi == self._hi) else self.mask_in_box(lo, hi)
        return np.argwhere(m).astype(np.int64) + np.array(lo, dtype=np.int64)

    @property
    def elements(self) -> tuple:
        """Members inside the stored box, lexicographically sorted."""
        return _tuples(self.points())

    def minimum(self) -> tuple:
        """Componentwise minimum of the set (raises if the set is empty)."""
        pts = self.points()
        if len(pts) == 0:
            raise ValueError("empty value set")
        return tuple(int(x) for x in pts.min(axis=0))

    def normalized_hi(self) -> tuple:
        """Smallest corner that still determines the set by clamping."""
        mask = self._mask
        hi = list(self._hi)
        changed = True
        while changed:
            changed = False
            for k in range(self.s):
                n = mask.shape[k]
                if n < 2:
                    continue
                last = np.take(mask, n - 1, axis=k)
                prev = np.take(mask, n - 2, axis=k)
                if np.array_equal(last, prev):
                    mask = np.take(mask, range(n - 1), axis=k)
                    hi[k] -= 1
                    changed = True
        return tuple(hi)

    def issubset(self, other: "ValueSet") -> bool:
        lo = vmin(self.lo, other.lo)
        hi = vmax(self.hi, other.hi)
        a = self.mask_in_box(lo, hi)
        b = other.mask_in_box(lo, hi)
        return not np.any(a & ~b)

    def same_members(self, other: "ValueSet") -> bool:
        if self.s != other.s:
            return False
        lo = vmin(self.lo, other.lo)
        hi = vmax(self.hi, other.hi)
        return bool(np.array_equal(self.mask_in_box(lo, hi), other.mask_in_box(lo, hi)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ValueSet):
            return NotImplemented
        return self.same_members(other)

    def __hash__(self) -> int:
        hi = self.normalized_hi()
        pts = self.points(self._lo, hi)
        lo = tuple(int(x) for x in pts.min(axis=0)) if len(pts) else self._lo
        return hash((hi, lo, _tuples(self.points(lo, hi))))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(lo={self.lo}, hi={self.hi}, n={int(self.mask.sum())})"


class GoodSemigroup(ValueSet):
    """Value semigroup S of an s-branch point, truncated at its conductor."""

    def __init__(self, conductor, mask, provenance=None):
        conductor = tuple(int(x) for x in conductor)
        super().__init__((0,) * len(conductor), conductor, mask)
        self.provenance = provenance

    @classmethod
    def from_elements(cls, conductor, small_elements, provenance=None) -> "GoodSemigroup":
        conductor = tuple(int(x) for x in conductor)
        mask = np.zeros(tuple(c + 1 for c in conductor), dtype=bool)
        for e in small_elements:
            e = tuple(int(x) for x in e)
            if len(e) != len(conductor) or not vle((0,) * len(e), e) or not vle(e, conductor):
                raise ValueError(f"element {e} outside the box [0, {conductor}]")
            mask[e] = True
        return cls(conductor, mask, provenance)

    @classmethod
    def from_value_set(cls, vs: ValueSet, provenance=None) -> "GoodSemigroup":
        hi = vs.normalized_hi()
        return cls(hi, vs.mask_in_box((0,) * vs.s, hi), provenance)

    @property
    def branches(self) -> int:
        return self.s

    @property
    def conductor(self) -> tuple:
        return self.hi

    @property
    def small_elements(self) -> tuple:
        return self.elements

    @property
    def gamma(self) -> tuple:
        """Frobenius vector ``beta - (1, ..., 1)``."""
        return vsub(self.conductor, ones(self.s))

    @property
    def alpha(self) -> tuple:
        """``min(S \\ {0})``; equals the conductor when S has nothing else below it."""
        pts = [p for p in self.elements if any(p)]
        if not pts:
            return self.conductor
        return tuple(min(p[k] for p in pts) for k in range(self.s))

    def gaps(self) -> tuple:
        """Gaps of a numerical semigroup (s = 1 only)."""
        if self.s != 1:
            raise ValueError("gaps are only listed for numerical semigroups")
        return tuple(i for i in range(self.conductor[0]) if not self.mask[i])

    def __repr__(self) -> str:
        if self.s == 1:
            return f"GoodSemigroup(conductor={self.conductor[0]}, small={[p[0] for p in self.elements]})"
        return f"GoodSemigroup(conductor={self.conductor}, n_small={int(self.mask.sum())})"


class IdealValueSet(ValueSet):
    """A relative ideal ``E`` of a good semigroup (``E + S ⊆ E``), box-truncated."""

    def __init__(self, lo, hi, mask, base: GoodSemigroup | None = None):
        super().__init__(lo, hi, mask)
        self.base = base

    @classmethod
    def from_value_set(cls, vs: ValueSet, base=None) -> "IdealValueSet":
        return cls(vs.lo, vs.hi, vs.mask, base)

    @property
    def conductor(self) -> tuple:
        return self.normalized_hi()


def natural_numbers(s: int) -> GoodSemigroup:
    """N^s, the value semigroup of a smooth s-branch point set (conductor 0)."""
    return GoodSemigroup((0,) * s, np.ones((1,) * s, dtype=bool))


# --------------------------------------------------------------- builders


def from_numerical_generators(gens: Iterable[int]) -> GoodSemigroup:
    """Numerical semigroup generated by ``gens``, truncated at its conductor."""
    gens = sorted({int(g) for g in gens})
    if not gens:
        raise EmptyGenerators("no generators given")
    if gens[0] <= 0:
        raise ValueError("generators must be positive integers")
    g = 0
    for x in gens:
        g = gcd(g, x)
    if g != 1:
        raise NonCoprimeGenerators(f"gcd of {gens} is {g}; the complement is infinite")
    m = gens[0]
    member = [True]
    run = 1 if m == 1 else 0
    n = 0
    # stop once m consecutive members are seen: everything after is in S
    while run < m:
        n += 1
        hit = any(n - x >= 0 and member[n - x] for x in gens)
        member.append(hit)
        run = run + 1 if hit else 0
    last_gap = max((i for i, x in enumerate(member) if not x), default=-1)
    beta = last_gap + 1
    return GoodSemigroup((beta,), np.array(member[: beta + 1], dtype=bool), provenance={"numerical_generators": gens})


def from_gaps(gaps: Iterable[int]) -> GoodSemigroup:
    gaps = sorted({int(x) for x in gaps})
    beta = gaps[-1] + 1 if gaps else 0
    mask = np.ones(beta + 1, dtype=bool)
    mask[gaps] = False
    return GoodSemigroup((beta,), mask)


def numerical_semigroup_from_set(elements: Iterable[int], conductor: int) -> GoodSemigroup:
    # everything from the conductor on is a member
    small = {int(e) for e in elements if e < conductor} | {int(conductor)}
    return GoodSemigroup.from_elements((conductor,), [(e,) for e in sorted(small)])


# ------------------------------------------------------------- validation


@dataclass(frozen=True)
class AxiomResult:
    passed: bool
    witness: tuple | None = None


@dataclass(frozen=True)
class AxiomReport:
    results: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results.values())

    def failures(self) -> dict:
        return {k: v for k, v in self.results.items() if not v.passed}


def _e2_witness(S: ValueSet, pts: np.ndarray, beta: tuple):
    s = S.s
    for x in range(len(pts)):
        a = pts[x]
        for y in range(x + 1, len(pts)):
            b = pts[y]
            same = a == b
            for i in np.flatnonzero(same):
                lower = np.minimum(a, b)
                ok = np.ones(len(pts), dtype=bool)
                if a[i] < beta[i]:
                    ok &= pts[:, i] > a[i]
                else:
                    ok &= pts[:, i] == beta[i]
                for j in range(s):
                    if j == i:
                        continue
                    if a[j] != b[j]:
                        ok &= pts[:, j] == lower[j]
                    else:
                        ok &= pts[:, j] >= lower[j]
                if not ok.any():
                    return (tuple(int(v) for v in a), tuple(int(v) for v in b), int(i))
    return None


def validate(S: GoodSemigroup) -> AxiomReport:
    """Check the good-semigroup axioms inside the conductor box.

    Reports ``zero``, ``addition``, ``min_closure``, ``e2`` and ``conductor``;
    a failing axiom carries a violating tuple as witness.
    """
    beta = S.conductor
    s = S.s
    pts = S.points()
    res = {}
    res["zero"] = AxiomResult((0,) * s in S, None if (0,) * s in S else ((0,) * s,))

    add_w = None
    for a in pts:
        sums = np.minimum(pts + a, np.array(beta))
        for b, c in zip(pts, sums):
            if tuple(c) not in S:
                add_w = (tuple(int(v) for v in a), tuple(int(v) for v in b))
                break
        if add_w:
            break
    res["addition"] = AxiomResult(add_w is None, add_w)

    min_w = None
    for idx, a in enumerate(pts):
        mins = np.minimum(pts[idx + 1 :], a)
        for b, c in zip(pts[idx + 1 :], mins):
            if tuple(c) not in S:
                min_w = (tuple(int(v) for v in a), tuple(int(v) for v in b))
                break
        if min_w:
            break
    res["min_closure"] = AxiomResult(min_w is None, min_w)

    e2_w = _e2_witness(S, pts, beta) if s > 1 else None
    res["e2"] = AxiomResult(e2_w is None, e2_w)

    cond_w = None
    if beta not in S:
        cond_w = (beta,)
    else:
        for i in range(s):
            if beta[i] > 0 and vsub(beta, unit(s, i)) in S:
                cond_w = (vsub(beta, unit(s, i)),)
                break
    res["conductor"] = AxiomResult(cond_w is None, cond_w)
    return AxiomReport(res)


# ------------------------------------------------------------- Delta and K


def delta_set(E: ValueSet, a) -> tuple:
    """``Delta^E(a)``: members b with ``b_i = a_i`` for some i and ``b_j > a_j`` otherwise.

    Coordinates at or beyond the box corner are reported at their least
    admissible value, so the result is finite and exact up to clamping.
    """
    a = tuple(int(x) for x in a)
    s = E.s
    hi = vmax(E.hi, vadd(a, ones(s)))
    lo = vmin(E.lo, a)
    pts = E.points(lo, hi)
    if len(pts) == 0:
        return ()
    av = np.array(a)
    eq = pts == av
    gt = pts > av
    keep = np.zeros(len(pts), dtype=bool)
    for i in range(s):
        others = np.ones(len(pts), dtype=bool)
        for j in range(s):
            if j != i:
                others &= gt[:, j]
        keep |= eq[:, i] & others
    return _tuples(pts[keep])


def canonical_K(S: GoodSemigroup) -> IdealValueSet:
    """``K = {a : Delta^S(gamma - a) is empty}``, stored over ``[0, beta]``."""
    beta = S.conductor
    mask = kernels.canonical_mask(S.points(), np.array(beta))
    return IdealValueSet((0,) * S.s, beta, mask, base=S)


def interior(E: ValueSet, beta) -> tuple:
    """``E° = {a in E : a < beta}`` (strict in the product order)."""
    beta = tuple(beta)
    pts = E.points(E.lo, beta)
    return tuple(p for p in _tuples(pts) if p != beta)


def star(E: ValueSet, beta) -> tuple:
    """``E* = {a in E : a <= beta}``."""
    return _tuples(E.points(E.lo, tuple(beta)))


# --------------------------------------------------------------- distance


def _chain_length(X: ValueSet, start: tuple, end: tuple, pick_max: bool) -> int:
    pts = X.points(start, end)
    cur = np.array(start)
    endv = np.array(end)
    steps = 0
    while not np.array_equal(cur, endv):
        cand = pts[np.all(pts >= cur, axis=1) & np.any(pts != cur, axis=1)]
        if len(cand) == 0:
            raise ChainLengthMismatch(f"no element of the set above {tuple(cur)} below {end}")
        le = np.all(cand[:, None, :] <= cand[None, :, :], axis=2)
        np.fill_diagonal(le, False)
        minimal = cand[~le.any(axis=0)]
        order = np.lexsort(minimal.T[::-1])
        cur = minimal[order[-1] if pick_max else order[0]]
        steps += 1
    return steps


def chain_length(X: ValueSet, end=None) -> int:
    """Length of a saturated chain in X from ``min X`` to ``end`` (default: its corner).

    Two chains are built with opposite lexicographic tie-breaks; unequal
    lengths mean X is not a good set.
    """
    end = X.hi if end is None else tuple(end)
    start = X.minimum()
    if start not in X:
        raise ChainLengthMismatch(f"componentwise minimum {start} is not a member")
    n1 = _chain_length(X, start, end, pick_max=False)
    n2 = _chain_length(X, start, end, pick_max=True)
    if n1 != n2:
        raise ChainLengthMismatch(f"saturated chains of lengths {n1} and {n2}")
    return n1


def saturated_chain(X: ValueSet, end=None) -> tuple:
    """A saturated chain from ``min X`` to ``end``; ties go to the lexicographic minimum."""
    end = X.hi if end is None else tuple(end)
    start = X.minimum()
    pts = X.points(start, end)
    chain = [start]
    cur = np.array(start)
    while tuple(int(x) for x in cur) != end:
        cand = pts[np.all(pts >= cur, axis=1) & np.any(pts != cur, axis=1)]
        le = np.all(cand[:, None, :] <= cand[None, :, :], axis=2)
        np.fill_diagonal(le, False)
        minimal = cand[~le.any(axis=0)]
        cur = minimal[np.lexsort(minimal.T[::-1])[0]]
        chain.append(tuple(int(x) for x in cur))
    return tuple(chain)


def distance(E: ValueSet, F: ValueSet) -> int:
    """``d(E) - d(F)`` for ``F ⊆ E``; the dimension of the module quotient."""
    if E.s != F.s:
        raise NotNested("sets live in different Z^s")
    if not F.issubset(E):
        raise NotNested("second argument is not contained in the first")
    end = vmax(E.hi, F.hi)
    return chain_length(E, end) - chain_length(F, end)


# ----------------------------------------------------------------- sumsets


def _is_value_set(x) -> bool:
    return isinstance(x, ValueSet)


def sumset_points(A, B, box=None) -> tuple:
    """Sumset of two finite point collections, optionally cut to ``box = (lo, hi)``."""
    A = list(A)
    B = list(B)
    if not A or not B:
        return ()
    s = len(A[0])
    a = _as_points(A, s)
    b = _as_points(B, s)
    sums = (a[:, None, :] + b[None, :, :]).reshape(-1, s)
    sums = np.unique(sums, axis=0)
    if box is not None:
        lo, hi = box
        keep = np.all(sums >= np.array(lo), axis=1) & np.all(sums <= np.array(hi), axis=1)
        sums = sums[keep]
    return _tuples(sums)


def sumset(E, F, box=None):
    """``{e + f}``.

    Two :class:`ValueSet` operands give a :class:`ValueSet` (exact, corner
    ``hi_E + hi_F``).  Finite point collections, or an explicit ``box``,
    give a sorted tuple of points.
    """
    if _is_value_set(E) and _is_value_set(F):
        lo = vadd(E.lo, F.lo)
        hi = vadd(E.hi, F.hi)
        a = E.points(E.lo, vsub(hi, F.lo))
        b = F.points(F.lo, vsub(hi, E.lo))
        mask = kernels.sumset_mask(a, b, np.array(lo), np.array(hi))
        out = IdealValueSet(lo, hi, mask, base=getattr(E, "base", None) or getattr(F, "base", None))
        if box is None:
            return out
        return _tuples(out.points(*box))
    A = E.elements if _is_value_set(E) else E
    B = F.elements if _is_value_set(F) else F
    return sumset_points(A, B, box)


def n_fold_sumset(E, n: int, box=None):
    if n < 1:
        raise ValueError("n must be at least 1")
    out = E
    for _ in range(n - 1):
        out = sumset(out, E, box)
    if box is not None and _is_value_set(out):
        return _tuples(out.points(*box))
    if box is not None and not _is_value_set(out):
        return sumset_points(out, [(0,) * len(box[0])], box)
    return out


# ---------------------------------------------------------- classification


def blowup_semigroup(S: GoodSemigroup, max_rounds: int | None = None) -> GoodSemigroup:
    """Value set of the blowup along the canonical module.

    The union of all n-fold sums of K, closed under componentwise min,
    computed inside the conductor box of S.
    """
    beta = S.conductor
    K = canonical_K(S)
    cur = K.mask.copy()
    kpts = K.points()
    zero = np.zeros(S.s, dtype=np.int64)
    bv = np.array(beta, dtype=np.int64)
    rounds = max_rounds if max_rounds is not None else vnorm(beta) + 2
    for _ in range(rounds + 1):
        pts = np.argwhere(cur).astype(np.int64)
        nxt = cur | kernels.sumset_mask(pts, kpts, zero, bv)
        if S.s > 1:
            p2 = np.argwhere(nxt)
            mins = np.minimum(p2[:, None, :], p2[None, :, :]).reshape(-1, S.s)
            nxt[tuple(mins.T)] = True
        if np.array_equal(nxt, cur):
            return GoodSemigroup(beta, cur, provenance={"blowup_of": S.conductor}).normalized()
        cur = nxt
    raise NoStabilization("blowup closure did not stabilize inside the guard")


def _normalized(self: GoodSemigroup) -> GoodSemigroup:
    hi = self.normalized_hi()
    if hi == self.hi:
        return self
    return GoodSemigroup(hi, self.mask_in_box((0,) * self.s, hi), self.provenance)


GoodSemigroup.normalized = _normalized


def delta_invariant(S: GoodSemigroup) -> int:
    """``delta = distance(N^s, S)``; the gap count when s = 1."""
    return distance(natural_numbers(S.s), S)


def conductor_codimension(S: GoodSemigroup) -> int:
    """``dim O_P / C_P = |beta| - delta``."""
    return vnorm(S.conductor) - delta_invariant(S)


@dataclass(frozen=True)
class Classification:
    delta: int
    eta: int
    mu: int
    gorenstein: bool
    kunz: bool
    almost_gorenstein: bool
    K: IdealValueSet = field(repr=False)
    blowup: GoodSemigroup = field(repr=False)

    def as_dict(self) -> dict:
        return {
            "delta": self.delta,
            "eta": self.eta,
            "mu": self.mu,
            "gorenstein": self.gorenstein,
            "kunz": self.kunz,
            "almost_gorenstein": self.almost_gorenstein,
        }


def classify(S: GoodSemigroup) -> Classification:
    K = canonical_K(S)
    delta = delta_invariant(S)
    eta = distance(K, S)
    B = blowup_semigroup(S)
    mu = distance(B, K)
    return Classification(
        delta=delta,
        eta=eta,
        mu=mu,
        gorenstein=eta == 0,
        kunz=eta == 1,
        almost_gorenstein=eta > 0 and mu == 1,
        K=K,
        blowup=B,
    )
