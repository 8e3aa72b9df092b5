"""Formula engine: block matrices, anchor radii, and exact bandwidth values.

The adjacency matrix of the binary distance-t graph under the
boundary-greedy order decomposes into an (n+1) x (n+1) grid of
weight-slice blocks. Everything here is computed three independent
ways so the test suite can cross-check them:

* directly, from the 0/1 block entries (:func:`assemble_block`,
  :func:`manhattan_radius`, :func:`matrix_bandwidth`);
* recursively, via the 2x2 sub-block split of each slice block with
  anchor-shift offsets (:func:`radius_recursive`, :func:`bw_recursion`);
* in closed form (:func:`radius_closed`, :func:`bw_closed`).

All arithmetic is exact (python integers); ``NEG_INF`` is the lattice
bottom for radii of zero or empty blocks so maxima stay total. The
closed radius form returns ``NEG_INF`` for the degenerate 1x1 diagonal
blocks (gap 0 with a single-row slice), where the literal four-branch
expression would give 1 for an all-zero matrix; the recursive and
direct routes force the corrected value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import hales
from ._bits import popcount_u32
from .errors import InfeasibleError, ParameterError, SizeCapError, UndefinedValueError

__all__ = [
    "NEG_INF",
    "BooleanBlock",
    "binom_ext",
    "assemble_block",
    "assemble_full",
    "matrix_bandwidth",
    "manhattan_radius",
    "radius_closed",
    "radius_recursive",
    "diagonal_distance",
    "bw_closed",
    "bw_recursion",
    "johnson_slice_bandwidth",
    "harper_lower_bound",
]

NEG_INF = float("-inf")

FULL_MATRIX_MAX_N = 14
BLOCK_MAX_N = 20
BLOCK_MAX_ELEMS = 1 << 27


def binom_ext(x: int, y: int) -> int:
    """Binomial coefficient with the zero convention for y < 0 or y > x."""
    if y < 0 or y > x:
        return 0
    return math.comb(x, y)


@dataclass(frozen=True)
class BooleanBlock:
    """0/1 matrix slice of the ordered adjacency matrix.

    ``row_slice``/``col_slice`` record the (t, n, weight) provenance;
    weight ``None`` marks the full matrix. An empty block (out-of-range
    weight) has a zero dimension.
    """

    bits: np.ndarray
    row_slice: tuple
    col_slice: tuple

    @property
    def shape(self) -> tuple:
        return self.bits.shape

    @property
    def is_empty(self) -> bool:
        return self.bits.size == 0

    def is_zero(self) -> bool:
        return self.is_empty or not self.bits.any()


def _block_bits(t: int, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
    d = popcount_u32(rows[:, None] ^ cols[None, :])
    return ((d >= 1) & (d <= t)).astype(np.uint8)


def assemble_block(t: int, n: int, k: int, kp: int) -> BooleanBlock:
    """Weight-k rows versus weight-kp columns of the ordered distance matrix.

    Out-of-range weights give the empty block, matching the bookkeeping
    convention used by the recursive split.
    """
    if n < 1 or t < 0:
        raise ParameterError(f"assemble_block needs n >= 1 and t >= 0, got t={t} n={n}")
    if n > BLOCK_MAX_N:
        raise SizeCapError(f"block assembly capped at n={BLOCK_MAX_N}, got n={n}")
    if not (0 <= k <= n) or not (0 <= kp <= n):
        return BooleanBlock(np.zeros((0, 0), dtype=np.uint8), (t, n, k), (t, n, kp))
    rows = hales.slice_order(n, k).rows
    cols = hales.slice_order(n, kp).rows
    if len(rows) * len(cols) > BLOCK_MAX_ELEMS:
        raise SizeCapError(f"block with {len(rows)}x{len(cols)} entries exceeds the dense cap")
    return BooleanBlock(_block_bits(t, rows, cols), (t, n, k), (t, n, kp))


def assemble_full(t: int, n: int) -> BooleanBlock:
    """Full 2^n x 2^n ordered adjacency matrix of the binary distance-t graph."""
    if n < 1 or t < 1:
        raise ParameterError(f"assemble_full needs n >= 1 and t >= 1, got t={t} n={n}")
    if n > FULL_MATRIX_MAX_N:
        raise SizeCapError(f"full matrix capped at n={FULL_MATRIX_MAX_N}, got n={n}")
    rows = hales.hales_order(n).rows
    size = 1 << n
    bits = np.empty((size, size), dtype=np.uint8)
    chunk = max(1, (1 << 24) // size)
    for start in range(0, size, chunk):
        bits[start : start + chunk] = _block_bits(t, rows[start : start + chunk], rows)
    return BooleanBlock(bits, (t, n, None), (t, n, None))


def _as_bits(m) -> np.ndarray:
    return m.bits if isinstance(m, BooleanBlock) else np.asarray(m)


def matrix_bandwidth(m) -> int:
    """Max |i - j| over nonzero entries of a square matrix."""
    bits = _as_bits(m)
    if bits.ndim != 2 or bits.shape[0] != bits.shape[1]:
        raise ParameterError("matrix bandwidth needs a square matrix")
    ii, jj = np.nonzero(bits)
    if not ii.size:
        raise UndefinedValueError("bandwidth of a zero or empty matrix is undefined")
    return int(np.abs(ii - jj).max())


def manhattan_radius(m):
    """Max (rows - i + j) over nonzero entries; NEG_INF for zero/empty matrices.

    The reference point is the imaginary cell just left of the
    bottom-left corner, so on a symmetric s x s block the radius equals
    the bandwidth plus s.
    """
    bits = _as_bits(m)
    if bits.size == 0:
        return NEG_INF
    ii, jj = np.nonzero(bits)
    if not ii.size:
        return NEG_INF
    return int(bits.shape[0] + (jj - ii).max())


# ----------------------------------------------------------------------
# closed form
# ----------------------------------------------------------------------


def _sum_ballgrowth(t: int, s: int, terms: int) -> int:
    return sum(
        binom_ext(t - s + 2 * a, t - s + a - 1) - binom_ext(t - s + 2 * a, a - 1)
        for a in range(terms)
    )


def radius_closed(t: int, n: int, k: int, s: int):
    """Closed-form anchor radius of the block with row weight k, gap t - 2s.

    Branches on k - s against 0, floor((n-t)/2) and n - t; overlapping
    branch values are asserted to agree. Returns NEG_INF for the
    degenerate 1x1 zero diagonal blocks (see module notes).
    """
    if t < 1 or s < 0 or t < 2 * s or n < 1 or k < 0 or k + t - 2 * s > n:
        raise ParameterError(f"invalid radius parameters t={t} n={n} k={k} s={s}")
    kp = k + t - 2 * s
    if kp == k and binom_ext(n, k) == 1:
        return NEG_INF
    if t >= n - 1:
        return binom_ext(n, k) + binom_ext(n, kp) - 1
    vals = []
    if 0 <= k - s <= (n - t) // 2:
        a2 = sum(
            binom_ext(m - 1, kp - 1) - binom_ext(m - 1, k - s - 1)
            for m in range(t - 3 * s + 1 + 2 * k, n - s + 1)
        )
        c = binom_ext(n, kp) - binom_ext(n - s, kp)
        vals.append(binom_ext(n, k) + _sum_ballgrowth(t, s, k - s) + a2 + c)
    if (n - t) // 2 <= k - s <= n - t:
        c = binom_ext(n, kp) - binom_ext(n - s, kp)
        vals.append(binom_ext(n, k) + _sum_ballgrowth(t, s, n - t - k + s) + c)
    if k - s <= 0 or k - s >= n - t:
        d = sum(binom_ext(m - 1, kp - 1) for m in range(kp + 1, n + 1))
        vals.append(binom_ext(n, k) + d)
    assert vals and all(v == vals[0] for v in vals), (
        f"closed-form branches disagree at t={t} n={n} k={k} s={s}: {vals}"
    )
    return vals[0]


# ----------------------------------------------------------------------
# recursion over the 2x2 sub-block split
# ----------------------------------------------------------------------


@lru_cache(maxsize=None)
def _radius_rec(t: int, n: int, k: int, p: int):
    kp = k + p
    if k < 0 or kp < 0 or k > n or kp > n:
        return NEG_INF  # empty block
    if t < 1 or abs(p) > t:
        return NEG_INF  # zero block
    if p == 0 and binom_ext(n, k) == 1:
        return NEG_INF  # 1x1 diagonal block has a zero entry
    if n == 1:
        return 1
    terms = []
    r1 = _radius_rec(t, n - 1, k - 1, p)
    if r1 != NEG_INF:
        terms.append(r1 + binom_ext(n - 1, k))
    r2 = _radius_rec(t - 1, n - 1, k - 1, p + 1)
    if r2 != NEG_INF:
        terms.append(r2 + binom_ext(n - 1, k) + binom_ext(n - 1, kp - 1))
    r3 = _radius_rec(t - 1, n - 1, k, p - 1)
    if r3 != NEG_INF:
        terms.append(r3)
    r4 = _radius_rec(t, n - 1, k, p)
    if r4 != NEG_INF:
        terms.append(r4 + binom_ext(n - 1, kp - 1))
    return max(terms) if terms else NEG_INF


def radius_recursive(t: int, n: int, k: int, p: int):
    """Anchor radius via the 2x2 sub-block recursion with shift offsets.

    Memoized over (t, n, k, p); empty and zero blocks resolve to
    NEG_INF directly from the definition, so the outer max stays total.
    """
    if n < 1 or k + p > n:
        raise ParameterError(f"invalid recursion parameters t={t} n={n} k={k} p={p}")
    return _radius_rec(t, n, k, p)


def diagonal_distance(t: int, n: int, k: int, p: int):
    """Max Manhattan distance from the (k, k+p) block's entries to the main diagonal.

    For p = 0 this is the block bandwidth; for p >= 1 it adds the
    intervening slice sizes to the block radius.
    """
    r = _radius_rec(t, n, k, p)
    if r == NEG_INF:
        return NEG_INF
    if p == 0:
        return r - binom_ext(n, k)
    return sum(binom_ext(n, k + q) for q in range(1, p)) + r


def bw_closed(t: int, n: int) -> int:
    """Exact bandwidth of the ordered distance-t matrix, closed form."""
    if t < 1 or n < 1:
        raise ParameterError(f"bw_closed needs t >= 1 and n >= 1, got t={t} n={n}")
    if t >= n:
        return (1 << n) - 1
    lo = (n - t) // 2
    first = sum(binom_ext(n, k) for k in range(lo, lo + t))
    second = sum(
        binom_ext(t + 2 * a, t + a - 1) - binom_ext(t + 2 * a, a - 1)
        for a in range((n - t - 1) // 2 + 1)
    )
    return first + second


def bw_recursion(t: int, n: int) -> int:
    """Exact bandwidth as the max diagonal distance over all slice blocks."""
    if t < 1 or n < 1:
        raise ParameterError(f"bw_recursion needs t >= 1 and n >= 1, got t={t} n={n}")
    best = NEG_INF
    for k in range(n):
        for p in range(0, min(t, n - k) + 1):
            v = diagonal_distance(t, n, k, p)
            if v != NEG_INF and v > best:
                best = v
    return int(best)


def johnson_slice_bandwidth(n: int, k: int) -> int:
    """Bandwidth of the weight-k diagonal block at distance threshold 2.

    This is the ordered-adjacency bandwidth of the k-subset
    intersection graph, an upper bound for its treewidth.
    """
    if not (n > k >= 1):
        raise ParameterError(f"johnson_slice_bandwidth needs n > k >= 1, got n={n} k={k}")
    return radius_closed(2, n, k, 1) - binom_ext(n, k)


# ----------------------------------------------------------------------
# isoperimetric lower bound
# ----------------------------------------------------------------------


def _shell_weight(n: int, x: float, i: int) -> float:
    return binom_ext(n, i) * x ** (n - i) * (1.0 - x) ** i


def harper_lower_bound(t: int, q: int, n: int, m: int) -> float:
    """Continuous lower bound on the minimum outer boundary of m-subsets.

    For each integer shell index r, solves
    ``q^n * sum_{i<=r} C(n,i) x^(n-i) (1-x)^i = m`` for x in (0, 1) by
    bisection (the left side is increasing in x), evaluates the next t
    shells at that x, and returns the minimum over all feasible r,
    rounded down slightly so the result never over-claims. Scans every
    integer r rather than trusting any asymptotic window.
    """
    if q < 2 or n < 1 or t < 1:
        raise ParameterError(f"harper_lower_bound needs q >= 2, n >= 1, t >= 1, got q={q} n={n} t={t}")
    total = q**n
    if not (1 <= m <= total):
        raise ParameterError(f"m must lie in 1..q^n, got m={m}")
    target = m / total
    best = None
    for r in range(n + 1):
        if r == n:
            if m != total:
                continue
            candidate = 0.0
        else:
            if m == total:
                continue  # the partial shell sum never reaches 1 on (0, 1)
            lo, hi = 0.0, 1.0
            for _ in range(100):
                mid = 0.5 * (lo + hi)
                if sum(_shell_weight(n, mid, i) for i in range(r + 1)) < target:
                    lo = mid
                else:
                    hi = mid
            vals = []
            for x in (lo, hi):
                vals.append(total * sum(_shell_weight(n, x, r + i) for i in range(1, t + 1)))
            candidate = min(vals)
        if best is None or candidate < best:
            best = candidate
    if best is None:
        raise InfeasibleError(f"no feasible shell index for m={m}, q={q}, n={n}")
    return max(0.0, best - 1e-9 * max(1.0, abs(best)))
