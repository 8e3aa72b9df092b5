"""Graph container and the four structured graph families.

Vertices are integers ``0..n-1``. Every generated vertex carries a
combinatorial label: a 0/1 or q-ary coordinate tuple for the distance
graphs, a sorted ground-set tuple for the subset graphs, or a
``("v"|"u", index)`` pair for the double-cycle family. Vertex order is
part of the contract: binary distance graphs are emitted in the
boundary-greedy order of :func:`widthlab.hales.hales_order`, subset
graphs in slice order, so the graph's adjacency matrix under the
identity ordering is directly the structured matrix studied elsewhere
in the package.

Graphs are immutable after construction and safe to share across
workers.
"""

from __future__ import annotations

import ast
import itertools
from dataclasses import dataclass

import numpy as np

from . import hales
from ._bits import popcount_u32
from .errors import ParameterError, ParseError, SizeCapError

__all__ = [
    "Graph",
    "FamilySpec",
    "gen_hamming",
    "gen_johnson",
    "gen_bipartite_kneser",
    "gen_petersen",
    "generate",
    "labeled_equal",
    "read_graph",
    "write_graph",
    "dump_graph",
]

# dense per-vertex bitmasks are kept only up to this many vertices
BITSET_MAX_VERTICES = 4096


class Graph:
    """Immutable simple undirected graph with distinct vertex labels."""

    def __init__(self, num_vertices: int, edges, labels=None):
        self.n = int(num_vertices)
        e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if e.size:
            lo = np.minimum(e[:, 0], e[:, 1])
            hi = np.maximum(e[:, 0], e[:, 1])
            if np.any(lo == hi):
                raise ParameterError("self-loops are not allowed")
            if lo.min() < 0 or hi.max() >= self.n:
                raise ParameterError("edge endpoint out of range")
            e = np.unique(np.column_stack([lo, hi]), axis=0)
        self.edges = e
        if labels is None:
            labels = tuple(range(self.n))
        else:
            labels = tuple(labels)
        if len(labels) != self.n:
            raise ParameterError("one label per vertex required")
        if len(set(labels)) != self.n:
            raise ParameterError("vertex labels must be pairwise distinct")
        self.labels = labels
        self._indptr = None
        self._indices = None
        self._masks = None
        self._label_index = None

    # -- basic queries -------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return self.n

    @property
    def num_edges(self) -> int:
        return int(self.edges.shape[0])

    def _csr(self):
        if self._indptr is None:
            both = np.concatenate([self.edges, self.edges[:, ::-1]]) if self.num_edges else np.zeros((0, 2), np.int64)
            order = np.lexsort((both[:, 1], both[:, 0]))
            both = both[order]
            counts = np.bincount(both[:, 0], minlength=self.n)
            indptr = np.zeros(self.n + 1, dtype=np.int64)
            np.cumsum(counts, out=indptr[1:])
            self._indptr, self._indices = indptr, both[:, 1].copy()
        return self._indptr, self._indices

    def neighbors(self, v: int) -> np.ndarray:
        indptr, indices = self._csr()
        return indices[indptr[v] : indptr[v + 1]]

    def degrees(self) -> np.ndarray:
        indptr, _ = self._csr()
        return np.diff(indptr)

    def degree(self, v: int) -> int:
        return int(self.degrees()[v])

    def min_degree(self) -> int:
        return int(self.degrees().min()) if self.n else 0

    def max_degree(self) -> int:
        return int(self.degrees().max()) if self.n else 0

    def is_regular(self) -> bool:
        d = self.degrees()
        return bool(self.n == 0 or (d == d[0]).all())

    def has_edge(self, u: int, v: int) -> bool:
        if self.n <= BITSET_MAX_VERTICES:
            return bool((self.neighbor_masks()[u] >> v) & 1)
        return v in self.neighbors(u)

    def neighbor_masks(self) -> list:
        """Per-vertex neighborhoods as python int bitmasks (small graphs only)."""
        if self.n > BITSET_MAX_VERTICES:
            raise SizeCapError(
                f"bitmask adjacency capped at {BITSET_MAX_VERTICES} vertices, graph has {self.n}"
            )
        if self._masks is None:
            masks = [0] * self.n
            for u, v in self.edges:
                masks[u] |= 1 << int(v)
                masks[v] |= 1 << int(u)
            self._masks = masks
        return self._masks

    def adjacency_matrix(self, dtype=np.int64) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=dtype)
        if self.num_edges:
            a[self.edges[:, 0], self.edges[:, 1]] = 1
            a[self.edges[:, 1], self.edges[:, 0]] = 1
        return a

    # -- labels ----------------------------------------------------------

    def label_of(self, v: int):
        return self.labels[v]

    def index_of_label(self, label) -> int:
        if self._label_index is None:
            self._label_index = {lab: i for i, lab in enumerate(self.labels)}
        return self._label_index[label]

    def induced(self, vertices) -> "Graph":
        """Induced subgraph; vertices keep their labels, ids are re-packed."""
        vs = [int(v) for v in vertices]
        remap = {v: i for i, v in enumerate(vs)}
        keep = np.isin(self.edges[:, 0], vs) & np.isin(self.edges[:, 1], vs)
        sub = self.edges[keep]
        edges = [(remap[int(u)], remap[int(v)]) for u, v in sub]
        return Graph(len(vs), edges, labels=[self.labels[v] for v in vs])

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"


@dataclass(frozen=True)
class FamilySpec:
    """Parameter bundle naming one concrete member of a graph family."""

    family: str
    t: int = 1
    q: int = 2
    n: int = 1
    k: int = 1

    def validate(self) -> None:
        f = self.family
        if f == "hamming":
            if self.t < 1 or self.q < 2 or self.n < 1:
                raise ParameterError(f"invalid hamming parameters {self}")
        elif f == "johnson":
            if not (self.n > self.k >= 1):
                raise ParameterError(f"invalid johnson parameters {self}")
        elif f == "bipartite_kneser":
            if not (self.k >= 1 and self.n >= 2 * self.k + 1):
                raise ParameterError(f"invalid bipartite_kneser parameters {self}")
        elif f == "petersen":
            if not (self.n >= 3 and 1 <= self.k and 2 * self.k < self.n):
                raise ParameterError(f"invalid petersen parameters {self}")
        else:
            raise ParameterError(f"unknown family {f!r}")


def generate(spec: FamilySpec) -> Graph:
    """Build the graph named by a :class:`FamilySpec`."""
    spec.validate()
    if spec.family == "hamming":
        return gen_hamming(spec.t, spec.q, spec.n)
    if spec.family == "johnson":
        return gen_johnson(spec.n, spec.k)
    if spec.family == "bipartite_kneser":
        return gen_bipartite_kneser(spec.n, spec.k)
    return gen_petersen(spec.n, spec.k)


# ----------------------------------------------------------------------
# families
# ----------------------------------------------------------------------


def _edges_within_distance(codes: np.ndarray, t: int) -> np.ndarray:
    """Edges {i<j} whose codeword XOR-popcount lies in [1, t]. codes: uint32."""
    nverts = len(codes)
    out = []
    chunk = max(1, (1 << 22) // max(nverts, 1))
    for start in range(0, nverts, chunk):
        block = codes[start : start + chunk]
        d = popcount_u32(block[:, None] ^ codes[None, :])
        ii, jj = np.nonzero((d >= 1) & (d <= t))
        keep = (ii + start) < jj
        out.append(np.column_stack([ii[keep] + start, jj[keep]]))
    return np.concatenate(out) if out else np.zeros((0, 2), np.int64)


def gen_hamming(t: int, q: int, n: int) -> Graph:
    """Distance-at-most-t graph on q-ary length-n words.

    For q = 2 the vertex order is the boundary-greedy binary order of
    :func:`widthlab.hales.hales_order`; for q > 2 it is lexicographic
    over the alphabet {1..q}.
    """
    FamilySpec("hamming", t=t, q=q, n=n).validate()
    if q == 2:
        rows = hales.hales_order(n).rows
        edges = _edges_within_distance(rows, t)
        labels = [hales.vector_of(int(r), n) for r in rows]
        return Graph(1 << n, edges, labels=labels)
    words = list(itertools.product(range(1, q + 1), repeat=n))
    arr = np.asarray(words, dtype=np.int16)
    nverts = len(words)
    out = []
    chunk = max(1, (1 << 22) // max(nverts * n, 1))
    for start in range(0, nverts, chunk):
        diff = (arr[start : start + chunk, None, :] != arr[None, :, :]).sum(axis=2)
        ii, jj = np.nonzero((diff >= 1) & (diff <= t))
        keep = (ii + start) < jj
        out.append(np.column_stack([ii[keep] + start, jj[keep]]))
    edges = np.concatenate(out) if out else np.zeros((0, 2), np.int64)
    return Graph(nverts, edges, labels=words)


def _subset_label(mask: int) -> tuple:
    return tuple(i + 1 for i in range(mask.bit_length()) if (mask >> i) & 1)


def gen_johnson(n: int, k: int) -> Graph:
    """k-subsets of [n], adjacent when the intersection has k-1 elements."""
    FamilySpec("johnson", n=n, k=k).validate()
    rows = hales.slice_order(n, k).rows
    edges_mask = popcount_u32(rows[:, None] ^ rows[None, :]) == 2
    ii, jj = np.nonzero(edges_mask)
    keep = ii < jj
    edges = np.column_stack([ii[keep], jj[keep]])
    return Graph(len(rows), edges, labels=[_subset_label(int(r)) for r in rows])


def gen_bipartite_kneser(n: int, k: int) -> Graph:
    """k-subsets versus (n-k)-subsets of [n], adjacent under inclusion."""
    FamilySpec("bipartite_kneser", n=n, k=k).validate()
    left = hales.slice_order(n, k).rows
    right = hales.slice_order(n, n - k).rows
    incl = (left[:, None] & ~right[None, :]) == 0
    ii, jj = np.nonzero(incl)
    nl = len(left)
    edges = np.column_stack([ii, jj + nl])
    labels = [_subset_label(int(r)) for r in left] + [_subset_label(int(r)) for r in right]
    return Graph(nl + len(right), edges, labels=labels)


def gen_petersen(n: int, k: int) -> Graph:
    """Double cycle on v_1..v_n, u_1..u_n with spokes v_i u_i and inner skip k.

    Vertex ids: v_i -> i-1 and u_i -> n+i-1 (indices are 1-based in the
    labels, arithmetic modulo n mapped back into 1..n).
    """
    FamilySpec("petersen", n=n, k=k).validate()
    i = np.arange(n, dtype=np.int64)
    spokes = np.column_stack([i, i + n])
    outer = np.column_stack([i, (i + 1) % n])
    inner = np.column_stack([i + n, (i + k) % n + n])
    edges = np.concatenate([spokes, outer, inner])
    labels = [("v", int(j) + 1) for j in i] + [("u", int(j) + 1) for j in i]
    return Graph(2 * n, edges, labels=labels)


def labeled_equal(a: Graph, b: Graph) -> bool:
    """Same labeled graph: identical label sets and label-level edge sets."""
    if a.n != b.n or set(a.labels) != set(b.labels):
        return False
    ea = {frozenset((a.labels[int(u)], a.labels[int(v)])) for u, v in a.edges}
    eb = {frozenset((b.labels[int(u)], b.labels[int(v)])) for u, v in b.edges}
    return ea == eb


# ----------------------------------------------------------------------
# PACE 2017 graph format
# ----------------------------------------------------------------------


def dump_graph(g: Graph, stream) -> None:
    """Write the PACE .gr form to an open stream (see :func:`write_graph`)."""
    for v in range(g.n):
        stream.write(f"c label {v + 1} {g.labels[v]!r}\n")
    stream.write(f"p tw {g.n} {g.num_edges}\n")
    for u, v in g.edges:
        stream.write(f"{int(u) + 1} {int(v) + 1}\n")


def write_graph(g: Graph, path) -> None:
    """Write the PACE .gr form: header ``p tw n m``, 1-based edge lines.

    The label map rides along in leading ``c label <v> <repr>`` comments
    so a round trip restores the labeled graph.
    """
    with open(path, "w") as fh:
        dump_graph(g, fh)


def read_graph(path) -> Graph:
    """Parse a PACE .gr file written by :func:`write_graph` (or plain ones)."""
    nverts = None
    medges = None
    edges = []
    labels = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("c"):
                parts = line.split(maxsplit=3)
                if len(parts) == 4 and parts[1] == "label":
                    try:
                        labels[int(parts[2]) - 1] = ast.literal_eval(parts[3])
                    except (ValueError, SyntaxError) as exc:
                        raise ParseError(f"bad label comment: {exc}", lineno)
                continue
            if line.startswith("p"):
                parts = line.split()
                if len(parts) != 4 or parts[1] != "tw":
                    raise ParseError("malformed problem line, expected 'p tw <n> <m>'", lineno)
                if nverts is not None:
                    raise ParseError("duplicate problem line", lineno)
                try:
                    nverts, medges = int(parts[2]), int(parts[3])
                except ValueError:
                    raise ParseError("non-integer counts in problem line", lineno)
                continue
            if nverts is None:
                raise ParseError("edge line before problem line", lineno)
            parts = line.split()
            if len(parts) != 2:
                raise ParseError("edge line must hold exactly two endpoints", lineno)
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError("non-integer endpoint", lineno)
            if not (1 <= u <= nverts and 1 <= v <= nverts):
                raise ParseError("endpoint out of range", lineno)
            edges.append((u - 1, v - 1))
    if nverts is None:
        raise ParseError("missing problem line", 1)
    if medges is not None and medges != len(edges):
        raise ParseError(f"header declares {medges} edges, found {len(edges)}", 1)
    lab = [labels.get(i, i) for i in range(nverts)] if labels else None
    return Graph(nverts, edges, labels=lab)
