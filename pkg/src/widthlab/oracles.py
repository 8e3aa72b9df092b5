"""Independent exact computations used as ground truth on small instances.

Every oracle here enumerates or searches exhaustively and refuses
oversized inputs with a hard error; nothing falls back to a heuristic.
Subset dynamic programs run over all 2^n vertex subsets (bitmask
state), so the caps are absolute. Tie-breaking is deterministic: the
reported optimal orders are the lexicographically smallest ones
achieving the optimum.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from . import _kernels
from ._bits import popcount_u32
from .errors import ParameterError, PreconditionError, SizeCapError
from .graphs import Graph
from .hales import slice_order

__all__ = [
    "exact_treewidth",
    "exact_pathwidth",
    "exact_bandwidth",
    "phi",
    "b_v",
    "bv_table",
    "min_balanced_separator",
    "max_cross_intersecting_sum",
    "ksubsets_meeting_all",
    "bipartite_perfect_matching",
    "exact_transversal",
]

TW_CAP = 25
PW_CAP = 25
BW_CAP = 12
BV_CAP = 20
SEPARATOR_CAP = 18
CROSS_CAP = 21
TRANSVERSAL_CAP = 25


def _masks_u64(g: Graph) -> np.ndarray:
    return np.asarray(g.neighbor_masks(), dtype=np.uint64)


def _check_cap(name: str, n: int, cap: int) -> None:
    if n > cap:
        raise SizeCapError(f"{name} is capped at {cap} vertices, got {n}")


def _elim_degree(masks, s: int, v: int) -> int:
    """Degree of v when eliminated after the vertex set s (fill-aware)."""
    comp = 1 << v
    stack = comp
    reach = 0
    while stack:
        b = stack & -stack
        stack ^= b
        nv = masks[b.bit_length() - 1]
        reach |= nv
        grow = nv & s & ~comp
        comp |= grow
        stack |= grow
    return (reach & ~(s | (1 << v))).bit_count()


def exact_treewidth(g: Graph, cap: int = TW_CAP):
    """Exact treewidth via the eliminated-set subset DP.

    Returns ``(tw, order)`` where eliminating along ``order`` keeps
    every elimination degree at most ``tw`` (so the fill-in of that
    order certifies the value).
    """
    n = g.num_vertices
    _check_cap("exact treewidth", n, cap)
    if n == 0:
        raise ParameterError("treewidth of the empty graph is undefined")
    table = _kernels.elim_table(_masks_u64(g), n)
    width = int(table[0])
    masks = g.neighbor_masks()
    order = []
    s = 0
    for _ in range(n):
        for v in range(n):
            bit = 1 << v
            if s & bit:
                continue
            if max(_elim_degree(masks, s, v), int(table[s | bit])) <= width:
                order.append(v)
                s |= bit
                break
    return width, order


def exact_pathwidth(g: Graph, cap: int = PW_CAP):
    """Exact pathwidth as the vertex separation number, by subset DP.

    Returns ``(pw, order)``: placing vertices in ``order`` keeps every
    prefix's inner boundary at most ``pw``.
    """
    n = g.num_vertices
    _check_cap("exact pathwidth", n, cap)
    if n == 0:
        raise ParameterError("pathwidth of the empty graph is undefined")
    boundary = _kernels.boundary_table(_masks_u64(g), n)
    table = _kernels.sep_table(boundary, n)
    width = int(table[0])
    order = []
    s = 0
    for _ in range(n):
        for v in range(n):
            bit = 1 << v
            if s & bit:
                continue
            nxt = s | bit
            if max(int(boundary[nxt]), int(table[nxt])) <= width:
                order.append(v)
                s = nxt
                break
    return width, order


def _order_bandwidth(masks, order) -> int:
    pos = {v: i for i, v in enumerate(order)}
    worst = 0
    for v in order:
        m = masks[v]
        while m:
            b = m & -m
            m ^= b
            u = b.bit_length() - 1
            if u < v:
                continue
            worst = max(worst, abs(pos[u] - pos[v]))
    return worst


def exact_bandwidth(g: Graph, cap: int = BW_CAP):
    """Exact bandwidth by depth-first branch and bound over orderings.

    Prunes a partial layout once some placed vertex with an unplaced
    neighbor already forces a gap at least as large as the incumbent.
    Returns ``(bw, order)``.
    """
    n = g.num_vertices
    _check_cap("exact bandwidth", n, cap)
    if n == 0:
        raise ParameterError("bandwidth of the empty graph is undefined")
    masks = g.neighbor_masks()
    if g.num_edges == 0:
        return 0, list(range(n))

    best = None
    best_order = None
    for start in range(n):
        seen = [start]
        mask = 1 << start
        for v in seen:
            m = masks[v] & ~mask
            while m:
                b = m & -m
                m ^= b
                seen.append(b.bit_length() - 1)
                mask |= b
        for v in range(n):
            if not (mask >> v) & 1:
                seen.append(v)
                mask |= 1 << v
        w = _order_bandwidth(masks, seen)
        if best is None or w < best:
            best, best_order = w, list(seen)

    pos = [-1] * n
    layout = [0] * n

    def dfs(i: int, placed: int, curmax: int) -> None:
        nonlocal best, best_order
        if i == n:
            if curmax < best:
                best, best_order = curmax, list(layout)
            return
        m = placed
        while m:
            b = m & -m
            m ^= b
            u = b.bit_length() - 1
            if masks[u] & ~placed and i - pos[u] >= best:
                return
        for v in range(n):
            bit = 1 << v
            if placed & bit:
                continue
            gap = curmax
            m = masks[v] & placed
            while m:
                b = m & -m
                m ^= b
                gap = max(gap, i - pos[b.bit_length() - 1])
            if gap >= best:
                continue
            pos[v] = i
            layout[i] = v
            dfs(i + 1, placed | bit, gap)
            pos[v] = -1

    dfs(0, 0, 0)
    return best, best_order


def phi(g: Graph, subset) -> int:
    """Outer boundary size |N(S)|: vertices outside S adjacent to S."""
    masks = g.neighbor_masks()
    s = 0
    for v in subset:
        s |= 1 << v
    nb = 0
    m = s
    while m:
        b = m & -m
        m ^= b
        nb |= masks[b.bit_length() - 1]
    return (nb & ~s).bit_count()


def bv_table(g: Graph, cap: int = BV_CAP) -> np.ndarray:
    """Minimum outer boundary per subset size, exhaustive over all 2^n subsets."""
    n = g.num_vertices
    _check_cap("exhaustive boundary minimization", n, cap)
    return _kernels.bv_table(_masks_u64(g), n)


def b_v(g: Graph, size: int, cap: int = BV_CAP) -> int:
    """Minimum outer boundary over all vertex subsets of the given size."""
    if not (0 <= size <= g.num_vertices):
        raise ParameterError(f"subset size {size} out of range")
    return int(bv_table(g, cap=cap)[size])


def min_balanced_separator(g: Graph, size_cap: int, cap: int = SEPARATOR_CAP):
    """Smallest separator X splitting the rest into parts of at most 2/3 each.

    Exhaustive over all candidate sets of size <= size_cap, smallest
    first; within one size the lexicographically first separator wins.
    Returns ``(X, A, B)`` with no edge between A and B, or None.
    """
    n = g.num_vertices
    _check_cap("balanced separator search", n, cap)
    masks = g.neighbor_masks()
    full = (1 << n) - 1
    for size in range(0, min(size_cap, n) + 1):
        for xs in combinations(range(n), size):
            xmask = 0
            for v in xs:
                xmask |= 1 << v
            rest = full & ~xmask
            m = rest.bit_count()
            comps = []
            rem = rest
            while rem:
                seed = rem & -rem
                comp = seed
                stack = seed
                while stack:
                    b = stack & -stack
                    stack ^= b
                    grow = masks[b.bit_length() - 1] & rest & ~comp
                    comp |= grow
                    stack |= grow
                comps.append(comp)
                rem &= ~comp
            sizes = [c.bit_count() for c in comps]
            # subset-sum over component sizes: need a part size a with
            # m <= 3a <= 2m; reconstruct the chosen components
            reachable = {0: None}
            for idx, csz in enumerate(sizes):
                nxt = dict(reachable)
                for total, _ in reachable.items():
                    if total + csz not in nxt:
                        nxt[total + csz] = (total, idx)
                reachable = nxt
            choice = None
            for total, parent in reachable.items():
                if 3 * total >= m and 3 * total <= 2 * m:
                    choice = total
                    break
            if choice is None:
                continue
            amask = 0
            cur = choice
            while reachable[cur] is not None:
                prev, idx = reachable[cur]
                amask |= comps[idx]
                cur = prev
            bmask = rest & ~amask
            to_list = lambda mm: [v for v in range(n) if (mm >> v) & 1]
            return to_list(xmask), to_list(amask), to_list(bmask)
    return None


def ksubsets_meeting_all(n: int, k: int, family) -> list:
    """All k-subsets of [n] (as sorted tuples) intersecting every member of family."""
    members = [frozenset(a) for a in family]
    out = []
    for comb in combinations(range(1, n + 1), k):
        cs = set(comb)
        if all(cs & a for a in members):
            out.append(comb)
    return out


def max_cross_intersecting_sum(n: int, k: int, cap: int = CROSS_CAP) -> int:
    """Max |A| + |C| over nonempty cross-intersecting pairs of k-subset families.

    For a fixed family A the largest partner C is forced (all k-subsets
    meeting every member of A), so only the 2^C(n,k) choices of A are
    enumerated; C is computed, never enumerated.
    """
    subsets = [int(r) for r in slice_order(n, k).rows]
    m = len(subsets)
    if m > cap:
        raise SizeCapError(f"cross-intersecting scan capped at {cap} subsets, got {m}")
    disjoint = np.zeros(m, dtype=np.uint32)
    for i, a in enumerate(subsets):
        mask = 0
        for j, b in enumerate(subsets):
            if not (a & b):
                mask |= 1 << j
        disjoint[i] = mask
    size = 1 << m
    union = np.zeros(size, dtype=np.uint32)
    for bit in range(m):
        lo = 1 << bit
        union[lo : 2 * lo] = union[:lo] | disjoint[bit]
    pop_a = popcount_u32(np.arange(size, dtype=np.uint32))
    pop_u = popcount_u32(union)
    valid = pop_u < m  # partner family nonempty
    valid[0] = False  # A nonempty
    totals = np.where(valid, pop_a + (m - pop_u), -1)
    return int(totals.max())


def _bipartition(g: Graph):
    n = g.num_vertices
    color = [-1] * n
    for root in range(n):
        if color[root] >= 0:
            continue
        color[root] = 0
        queue = [root]
        for v in queue:
            for u in g.neighbors(v):
                u = int(u)
                if color[u] < 0:
                    color[u] = 1 - color[v]
                    queue.append(u)
                elif color[u] == color[v]:
                    raise PreconditionError("graph is not bipartite")
    return color


def bipartite_perfect_matching(g: Graph):
    """Perfect matching of a bipartite graph via augmenting paths, or None."""
    color = _bipartition(g)
    n = g.num_vertices
    left = [v for v in range(n) if color[v] == 0]
    match = {}

    def augment(v: int, seen: set) -> bool:
        for u in g.neighbors(v):
            u = int(u)
            if u in seen:
                continue
            seen.add(u)
            if u not in match or augment(match[u], seen):
                match[u] = v
                return True
        return False

    size = 0
    for v in left:
        if augment(v, set()):
            size += 1
    if n % 2 or 2 * size != n:
        return None
    return sorted((v, u) for u, v in match.items())


def exact_transversal(hypergraph, cap: int = TRANSVERSAL_CAP) -> int:
    """Minimum hitting-set size by branch and bound on uncovered edges.

    Accepts any object with an ``edges`` attribute (iterable of vertex
    collections); empty edges are rejected. Branches on the smallest
    uncovered edge; a greedy disjoint-edge packing supplies the lower
    bound for pruning.
    """
    edges = [frozenset(e) for e in hypergraph.edges]
    if any(not e for e in edges):
        raise ParameterError("hyperedges must be non-empty")
    if not edges:
        return 0
    vertices = set().union(*edges)
    if len(edges) > cap and len(vertices) > cap:
        raise SizeCapError(
            f"transversal search capped at {cap} vertices or {cap} edges, "
            f"got {len(vertices)} and {len(edges)}"
        )

    def packing_bound(uncovered) -> int:
        used = set()
        count = 0
        for e in sorted(uncovered, key=len):
            if not (e & used):
                count += 1
                used |= e
        return count

    # greedy cover as the starting incumbent
    cover = set()
    remaining = list(edges)
    while remaining:
        counts = {}
        for e in remaining:
            for v in e:
                counts[v] = counts.get(v, 0) + 1
        v = max(sorted(counts), key=lambda u: counts[u])
        cover.add(v)
        remaining = [e for e in remaining if v not in e]
    best = len(cover)

    def branch(size: int, uncovered) -> None:
        nonlocal best
        if not uncovered:
            best = min(best, size)
            return
        if size + packing_bound(uncovered) >= best:
            return
        pivot = min(uncovered, key=lambda e: (len(e), sorted(e)))
        for v in sorted(pivot):
            branch(size + 1, [e for e in uncovered if v not in e])

    branch(0, edges)
    return best
