"""Lower-bound engines: brambles, transversal fractions, integer spectra.

The double-cycle bramble puts, at every start position i, a window of
t+1 consecutive outer vertices plus the t+1 inner vertices reachable by
skip steps from the window's end, with t = ceil(n / (2k+2)). Spectra
are certified exactly by integer trace moments rather than by floating
point eigensolvers, so the spectral treewidth bound carries no
tolerance at all.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .errors import HypothesisError, ParameterError, PreconditionError, SizeCapError
from .graphs import Graph
from .widthcalc import binom_ext

__all__ = [
    "Bramble",
    "BrambleReport",
    "Hypergraph",
    "Spectrum",
    "MomentReport",
    "petersen_bramble",
    "validate_bramble",
    "bramble_hypergraph",
    "transversal_fraction_bound",
    "petersen_order_lower_bound",
    "bk_spectrum",
    "verify_spectrum_moments",
    "spectral_lower_bound",
    "spectral_bound_value",
    "bk_spectral_lb",
    "degree_lower_bound",
]

SPECTRUM_CAP = 400


@dataclass(frozen=True)
class Bramble:
    """Family of vertex sets over a host graph, candidates for pairwise touching."""

    sets: tuple  # tuple of frozensets of vertex ids


@dataclass(frozen=True)
class BrambleReport:
    ok: bool
    first_disconnected: int | None = None  # set index
    first_nontouching: tuple | None = None  # pair of set indices


@dataclass(frozen=True)
class Hypergraph:
    num_vertices: int
    edges: tuple  # tuple of frozensets

    def __post_init__(self):
        if any(not e for e in self.edges):
            raise ParameterError("hyperedges must be non-empty")

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def max_degree(self) -> int:
        deg = {}
        for e in self.edges:
            for v in e:
                deg[v] = deg.get(v, 0) + 1
        return max(deg.values(), default=0)


def petersen_bramble(n: int, k: int) -> Bramble:
    """Window bramble of the double-cycle graph on v_1..v_n, u_1..u_n.

    Set i holds v_i..v_{i+t} and u_{i+t+jk} for j = 0..t (indices mod
    n), with t = ceil(n / (2k+2)); every set has 2t+2 vertices.
    """
    if not (k >= 1 and 2 * k < n):
        raise ParameterError(f"need 1 <= k < n/2, got n={n} k={k}")
    t = -(-n // (2 * k + 2))
    sets = []
    for i in range(1, n + 1):
        members = {(j - 1) % n for j in range(i, i + t + 1)}
        members |= {n + (i + t + j * k - 1) % n for j in range(t + 1)}
        sets.append(frozenset(members))
    return Bramble(tuple(sets))


def _pack_rows(rows, num_vertices: int) -> np.ndarray:
    """Pack vertex-id collections into (len(rows), words) uint64 bitmask rows."""
    words = max(1, (num_vertices + 63) // 64)
    m = len(rows)
    sizes = np.fromiter((len(s) for s in rows), dtype=np.int64, count=m)
    total = int(sizes.sum())
    cols = np.fromiter((v for s in rows for v in s), dtype=np.int64, count=total)
    if total and (cols.min() < 0 or cols.max() >= num_vertices):
        raise ParameterError("vertex id out of range")
    member = np.zeros((m, words * 64), dtype=np.uint8)
    member[np.repeat(np.arange(m), sizes), cols] = 1
    return np.ascontiguousarray(np.packbits(member, axis=1, bitorder="little")).view(np.uint64)


def validate_bramble(g: Graph, bramble: Bramble) -> BrambleReport:
    """Connectivity of every set, then pairwise touching over all pairs.

    Touching means intersecting or joined by an edge; both checks run
    on packed bitmask rows (a set's closure is the set plus its
    neighborhood).
    """
    packed = _pack_rows(bramble.sets, g.num_vertices)
    nbr_words = _pack_rows([g.neighbors(v) for v in range(g.num_vertices)], g.num_vertices)
    bad = _kernels.connected_rows(packed, nbr_words)
    if bad >= 0:
        return BrambleReport(False, first_disconnected=bad)
    closures = _kernels.closure_rows(packed, g.edges[:, 0], g.edges[:, 1])
    i, j = _kernels.touch_scan(closures, packed)
    if i >= 0:
        return BrambleReport(False, first_nontouching=(int(i), int(j)))
    return BrambleReport(True)


def bramble_hypergraph(g: Graph, bramble: Bramble) -> Hypergraph:
    """Hypergraph on the host's vertices whose edges are the bramble sets."""
    return Hypergraph(g.num_vertices, tuple(bramble.sets))


def transversal_fraction_bound(h: Hypergraph) -> Fraction:
    """Edges-over-max-degree lower bound on the transversal number."""
    if h.num_edges == 0:
        raise ParameterError("transversal bound needs a non-empty hypergraph")
    return Fraction(h.num_edges, h.max_degree())


def petersen_order_lower_bound(n: int, k: int) -> int:
    """Certified bramble-order bound ceil(n / (t+1)) for the window bramble.

    Only claimed under the hypothesis n >= 8(2k+2)^2, where it is at
    least 2k+2 (asserted), hence a treewidth bound of 2k+1.
    """
    if not (k >= 1 and 2 * k < n):
        raise ParameterError(f"need 1 <= k < n/2, got n={n} k={k}")
    if n < 8 * (2 * k + 2) ** 2:
        raise HypothesisError(
            f"bound needs n >= 8(2k+2)^2 = {8 * (2 * k + 2) ** 2}, got n={n}"
        )
    t = -(-n // (2 * k + 2))
    value = -(-n // (t + 1))
    assert value >= 2 * k + 2, (n, k, t, value)
    return value


# ----------------------------------------------------------------------
# spectra
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class Spectrum:
    """Integer eigenvalues with multiplicities, sorted by decreasing eigenvalue."""

    pairs: tuple  # ((eigenvalue, multiplicity), ...)

    def num_vertices(self) -> int:
        return sum(m for _, m in self.pairs)

    def sorted_pairs(self) -> tuple:
        return tuple(sorted(self.pairs, key=lambda p: -p[0]))

    def second_largest(self) -> int:
        expanded = []
        for lam, mult in self.sorted_pairs():
            expanded.append((lam, mult))
        top, mult = expanded[0]
        if mult >= 2:
            return top
        return expanded[1][0]


def bk_spectrum(k: int) -> Spectrum:
    """Closed-form adjacency spectrum of the middle inclusion graph.

    Eigenvalues are +-i for i = 1..k+1 with multiplicity
    C(2k+1, k+1-i) - C(2k+1, k-i) each.
    """
    if k < 1:
        raise ParameterError(f"k must be at least 1, got {k}")
    n = 2 * k + 1
    pairs = []
    for i in range(1, k + 2):
        mult = binom_ext(n, k + 1 - i) - binom_ext(n, k - i)
        pairs.append((i, mult))
        pairs.append((-i, mult))
    return Spectrum(tuple(sorted(pairs, key=lambda p: -p[0])))


@dataclass(frozen=True)
class MomentReport:
    ok: bool
    failed_p: int | None = None
    expected: int | None = None  # trace of A^p
    actual: int | None = None  # spectrum moment


def verify_spectrum_moments(g: Graph, spectrum: Spectrum, p_max: int) -> MomentReport:
    """Check sum(mult * eig^p) == trace(A^p) for p = 0..p_max, exactly.

    Runs in int64 when the path-count bound allows it, otherwise in
    unbounded python integers, so a pass is an exact certificate.
    """
    if p_max < 2:
        raise ParameterError(f"p_max must be at least 2, got {p_max}")
    n = g.num_vertices
    if n > SPECTRUM_CAP:
        raise SizeCapError(f"moment verification capped at {SPECTRUM_CAP} vertices, got {n}")
    bound = n * max(g.max_degree(), 1) ** p_max
    dtype = np.int64 if bound < 2**62 else object
    adj = g.adjacency_matrix(dtype=dtype)
    power = np.eye(n, dtype=dtype)
    for p in range(p_max + 1):
        trace = int(np.trace(power))
        moment = sum(mult * lam**p for lam, mult in spectrum.pairs)
        if trace != moment:
            return MomentReport(False, failed_p=p, expected=trace, actual=moment)
        if p < p_max:
            power = power @ adj
    return MomentReport(True)


def spectral_bound_value(num_vertices: int, degree: int, lambda2: int) -> int:
    """floor((3n/4) * mu / (degree + 2 mu)) - 1 with mu = degree - lambda2, exact."""
    mu = degree - lambda2
    if mu <= 0:
        return -1
    value = Fraction(3 * num_vertices, 4) * Fraction(mu, degree + 2 * mu)
    return math.floor(value) - 1


def spectral_lower_bound(g: Graph, spectrum: Spectrum, p_max: int = 4) -> int:
    """Treewidth lower bound from the spectral gap of a regular graph.

    The spectrum is re-certified by trace moments up to p_max before
    use; non-regular graphs and mismatching spectra are refused.
    """
    if not g.is_regular():
        raise PreconditionError("spectral bound needs a regular graph")
    degree = g.max_degree()
    if spectrum.num_vertices() != g.num_vertices:
        raise PreconditionError("spectrum multiplicities do not sum to the vertex count")
    report = verify_spectrum_moments(g, spectrum, p_max)
    if not report.ok:
        raise PreconditionError(f"spectrum fails the moment check at p={report.failed_p}")
    top = spectrum.sorted_pairs()[0][0]
    if top != degree:
        raise PreconditionError(f"largest eigenvalue {top} differs from the degree {degree}")
    return spectral_bound_value(g.num_vertices, degree, spectrum.second_largest())


def bk_spectral_lb(k: int) -> int:
    """Closed-form spectral treewidth bound for the middle inclusion graph."""
    if k < 1:
        raise ParameterError(f"k must be at least 1, got {k}")
    value = Fraction(3, 2) * Fraction(binom_ext(2 * k + 1, k), k + 3)
    return math.floor(value) - 1


def degree_lower_bound(g: Graph) -> int:
    """Minimum degree, a treewidth lower bound."""
    return g.min_degree()
