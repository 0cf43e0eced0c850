"""Hot inner loops, each in a numba flavour and a numpy flavour.

Box conventions: a box ``[lo, hi]`` in Z^s is stored as a C-ordered boolean
array of shape ``hi - lo + 1``.  Point sets are ``(n, s)`` int64 arrays.
"""
from __future__ import annotations

import numpy as np

from noether_forge import _accel
from noether_forge._accel import njit

# ---------------------------------------------------------------- sumsets


@njit(cache=True)
def _sumset_nb(a_pts, b_pts, lo, hi):
    s = lo.shape[0]
    shape = hi - lo + 1
    strides = np.ones(s, dtype=np.int64)
    for k in range(s - 2, -1, -1):
        strides[k] = strides[k + 1] * shape[k + 1]
    total = 1
    for k in range(s):
        total *= shape[k]
    out = np.zeros(total, dtype=np.bool_)
    for i in range(a_pts.shape[0]):
        for j in range(b_pts.shape[0]):
            flat = 0
            ok = True
            for k in range(s):
                x = a_pts[i, k] + b_pts[j, k]
                if x > hi[k]:
                    x = hi[k]
                if x < lo[k]:
                    ok = False
                    break
                flat += (x - lo[k]) * strides[k]
            if ok:
                out[flat] = True
    return out


def _sumset_np(a_pts, b_pts, lo, hi):
    shape = tuple(int(x) for x in hi - lo + 1)
    out = np.zeros(shape, dtype=bool)
    if a_pts.shape[0] == 0 or b_pts.shape[0] == 0:
        return out
    sums = (a_pts[:, None, :] + b_pts[None, :, :]).reshape(-1, lo.shape[0])
    sums = np.minimum(sums, hi)
    keep = np.all(sums >= lo, axis=1)
    idx = sums[keep] - lo
    out[tuple(idx.T)] = True
    return out


def sumset_mask(a_pts, b_pts, lo, hi) -> np.ndarray:
    """Mask of ``{a + b}`` clamped at ``hi`` and cut below ``lo``."""
    a_pts = np.ascontiguousarray(a_pts, dtype=np.int64).reshape(-1, len(lo))
    b_pts = np.ascontiguousarray(b_pts, dtype=np.int64).reshape(-1, len(lo))
    lo = np.asarray(lo, dtype=np.int64)
    hi = np.asarray(hi, dtype=np.int64)
    if _accel.backend() == "numba":
        return _sumset_nb(a_pts, b_pts, lo, hi).reshape(tuple(int(x) for x in hi - lo + 1))
    return _sumset_np(a_pts, b_pts, lo, hi)


# ---------------------------------------------------------- canonical set


@njit(cache=True)
def _canonical_nb(s_pts, beta):
    s = beta.shape[0]
    shape = beta + 1
    total = 1
    for k in range(s):
        total *= shape[k]
    out = np.ones(total, dtype=np.bool_)
    coords = np.zeros(s, dtype=np.int64)
    c = np.zeros(s, dtype=np.int64)
    for flat in range(total):
        rem = flat
        for k in range(s - 1, -1, -1):
            coords[k] = rem % shape[k]
            rem //= shape[k]
        for k in range(s):
            c[k] = beta[k] - 1 - coords[k]
        hit = False
        for n in range(s_pts.shape[0]):
            for i in range(s):
                if s_pts[n, i] != c[i]:
                    continue
                good = True
                for j in range(s):
                    if j != i and s_pts[n, j] <= c[j]:
                        good = False
                        break
                if good:
                    hit = True
                    break
            if hit:
                break
        if hit:
            out[flat] = False
    return out


def _canonical_np(s_pts, beta):
    shape = tuple(int(x) for x in beta + 1)
    grid = np.indices(shape).reshape(len(shape), -1).T
    c = (beta - 1) - grid
    eq = s_pts[None, :, :] == c[:, None, :]
    gt = s_pts[None, :, :] > c[:, None, :]
    s = len(shape)
    hit = np.zeros(eq.shape[:2], dtype=bool)
    for i in range(s):
        others = np.ones(eq.shape[:2], dtype=bool)
        for j in range(s):
            if j != i:
                others &= gt[:, :, j]
        hit |= eq[:, :, i] & others
    return ~hit.any(axis=1).reshape(shape)


def canonical_mask(s_pts, beta) -> np.ndarray:
    """Mask over ``[0, beta]`` of ``{a : Delta^S(beta - 1 - a) is empty}``.

    ``s_pts`` lists the members of S inside ``[0, beta]``; a coordinate equal
    to ``beta_j`` stands for every value ``>= beta_j``.
    """
    beta = np.asarray(beta, dtype=np.int64)
    s_pts = np.ascontiguousarray(s_pts, dtype=np.int64).reshape(-1, len(beta))
    if _accel.backend() == "numba":
        return _canonical_nb(s_pts, beta).reshape(tuple(int(x) for x in beta + 1))
    return _canonical_np(s_pts, beta)


# ------------------------------------------------------------------- rank

_GUARD = float(2**62)


@njit(cache=True)
def _bareiss_rank_nb(m):
    a = m.copy()
    rows, cols = a.shape
    rank = 0
    prev = 1
    for col in range(cols):
        if rank == rows:
            break
        piv = -1
        for r in range(rank, rows):
            if a[r, col] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for k in range(cols):
                tmp = a[piv, k]
                a[piv, k] = a[rank, k]
                a[rank, k] = tmp
        p = a[rank, col]
        for r in range(rank + 1, rows):
            f = a[r, col]
            for k in range(col + 1, cols):
                x = float(p) * float(a[r, k])
                y = float(f) * float(a[rank, k])
                if abs(x) >= 4.6e18 or abs(y) >= 4.6e18 or abs(x - y) >= 4.6e18:
                    return -1
                a[r, k] = (p * a[r, k] - f * a[rank, k]) // prev
            a[r, col] = 0
        prev = p
        rank += 1
    return rank


def _bareiss_rank_py(rows_in) -> int:
    a = [[int(x) for x in row] for row in rows_in]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    rank = 0
    prev = 1
    for col in range(cols):
        if rank == rows:
            break
        piv = next((r for r in range(rank, rows) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[piv], a[rank] = a[rank], a[piv]
        p = a[rank][col]
        prow = a[rank]
        for r in range(rank + 1, rows):
            row = a[r]
            f = row[col]
            for k in range(col + 1, cols):
                row[k] = (p * row[k] - f * prow[k]) // prev
            row[col] = 0
        prev = p
        rank += 1
    return rank


def exact_rank(m) -> int:
    """Rank over Q of an integer matrix by fraction-free (Bareiss) elimination.

    The numba kernel works in int64 and bails out with -1 when an
    intermediate could overflow; the Python big-integer path then takes over.
    """
    if isinstance(m, np.ndarray) and m.dtype != object:
        if m.size == 0:
            return 0
        if _accel.backend() == "numba" and np.abs(m).max() < 2**31:
            r = _bareiss_rank_nb(np.ascontiguousarray(m, dtype=np.int64))
            if r >= 0:
                return int(r)
        return _bareiss_rank_py(m.tolist())
    rows = [list(r) for r in m]
    if not rows or not rows[0]:
        return 0
    return _bareiss_rank_py(rows)
