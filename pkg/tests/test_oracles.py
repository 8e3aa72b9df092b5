"""Exhaustive baseline computations and their certificates."""

import math

import pytest

from widthlab import bounds, decomp, graphs, oracles, widthcalc
from widthlab.errors import ParameterError, PreconditionError, SizeCapError


def path(n):
    return graphs.Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return graphs.Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n):
    return graphs.Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def test_treewidth_small():
    assert oracles.exact_treewidth(complete(4))[0] == 3
    assert oracles.exact_treewidth(cycle(5))[0] == 2
    assert oracles.exact_treewidth(path(6))[0] == 1


def test_treewidth_petersen():
    tw, order = oracles.exact_treewidth(graphs.gen_petersen(5, 2))
    assert tw == 4
    assert sorted(order) == list(range(10))


def test_treewidth_order_certifies_value():
    for g in [cycle(6), graphs.gen_petersen(5, 2), graphs.gen_johnson(5, 2)]:
        tw, order = oracles.exact_treewidth(g)
        cert = decomp.fillin_chordal(g, order)
        assert cert.omega - 1 == tw


def test_treewidth_deterministic():
    g = graphs.gen_petersen(7, 2)
    assert oracles.exact_treewidth(g) == oracles.exact_treewidth(g)


def test_pathwidth_small():
    assert oracles.exact_pathwidth(path(5))[0] == 1
    assert oracles.exact_pathwidth(cycle(5))[0] == 2
    assert oracles.exact_pathwidth(complete(4))[0] == 3


def test_pathwidth_binary_distance_graphs():
    assert oracles.exact_pathwidth(graphs.gen_hamming(1, 2, 3))[0] == widthcalc.bw_closed(1, 3) == 4
    assert oracles.exact_pathwidth(graphs.gen_hamming(2, 2, 4))[0] == widthcalc.bw_closed(2, 4) == 12


def test_pathwidth_order_certifies_value():
    g = graphs.gen_hamming(1, 2, 3)
    pw, order = oracles.exact_pathwidth(g)
    masks = g.neighbor_masks()
    placed = 0
    worst = 0
    for v in order:
        placed |= 1 << v
        boundary = sum(1 for u in range(g.n) if (placed >> u) & 1 and masks[u] & ~placed)
        worst = max(worst, boundary)
    assert worst == pw


def test_bandwidth_small():
    assert oracles.exact_bandwidth(path(4))[0] == 1
    assert oracles.exact_bandwidth(cycle(4))[0] == 2
    assert oracles.exact_bandwidth(graphs.gen_hamming(2, 2, 3))[0] == widthcalc.bw_closed(2, 3) == 6


def test_bandwidth_order_certifies_value():
    g = graphs.gen_petersen(5, 2)
    bw, order = oracles.exact_bandwidth(g)
    pos = {v: i for i, v in enumerate(order)}
    realized = max(abs(pos[int(u)] - pos[int(v)]) for u, v in g.edges)
    assert realized == bw


def test_boundary_oracles():
    g = cycle(4)
    assert oracles.phi(g, [0]) == 2
    assert oracles.b_v(g, 1) == 2
    assert oracles.b_v(g, 2) == 2
    q4 = graphs.gen_hamming(1, 2, 4)
    assert oracles.b_v(q4, 1) == 4  # single vertex boundary = degree
    assert oracles.b_v(q4, 8) == 6
    for g in [cycle(5), graphs.gen_petersen(5, 2)]:
        assert oracles.b_v(g, 1) == g.min_degree()


def test_size_caps():
    big = graphs.gen_hamming(1, 2, 5)  # 32 vertices
    with pytest.raises(SizeCapError):
        oracles.exact_treewidth(big)
    with pytest.raises(SizeCapError):
        oracles.exact_bandwidth(graphs.gen_hamming(1, 2, 4))
    with pytest.raises(SizeCapError):
        oracles.bv_table(big)
    with pytest.raises(SizeCapError):
        oracles.min_balanced_separator(graphs.gen_bipartite_kneser(5, 2), 5)


def test_balanced_separator_examples():
    x, a, b = oracles.min_balanced_separator(path(5), 4)
    assert len(x) == 1
    x, a, b = oracles.min_balanced_separator(cycle(6), 4)
    assert len(x) == 2
    assert oracles.min_balanced_separator(complete(5), 1) is None


def test_balanced_separator_is_valid_partition():
    g = graphs.gen_petersen(5, 2)
    tw, _ = oracles.exact_treewidth(g)
    found = oracles.min_balanced_separator(g, tw + 1)
    assert found is not None
    x, a, b = found
    assert len(x) <= tw + 1
    rest = len(a) + len(b)
    assert 3 * len(a) <= 2 * rest and 3 * len(b) <= 2 * rest
    aset, bset = set(a), set(b)
    for u, v in g.edges:
        assert not (int(u) in aset and int(v) in bset)
        assert not (int(v) in aset and int(u) in bset)


@pytest.mark.parametrize(
    "n,expected",
    [(4, 6), (5, 8), (6, 10), (7, 12)],
)
def test_cross_intersecting_sums(n, expected):
    # frozen from this exhaustive scan itself; the closed form
    # C(n,2) - C(n-2,2) + 1 gives the same numbers
    value = oracles.max_cross_intersecting_sum(n, 2)
    assert value == expected
    assert value == math.comb(n, 2) - math.comb(n - 2, 2) + 1


def test_cross_intersecting_forced_partner():
    partner = oracles.ksubsets_meeting_all(5, 2, [(1, 2)])
    assert set(partner) == {c for c in partner if set(c) & {1, 2}}
    assert len(partner) == 7  # all 2-subsets meeting {1,2}


def test_cross_intersecting_cap():
    with pytest.raises(SizeCapError):
        oracles.max_cross_intersecting_sum(8, 2)  # 28 subsets


def test_matching_examples():
    assert oracles.bipartite_perfect_matching(cycle(4)) is not None
    star = graphs.Graph(3, [(0, 1), (0, 2)])
    assert oracles.bipartite_perfect_matching(star) is None
    with pytest.raises(PreconditionError):
        oracles.bipartite_perfect_matching(cycle(5))


@pytest.mark.parametrize("n,k", [(5, 2), (7, 3)])
def test_matching_kneser(n, k):
    g = graphs.gen_bipartite_kneser(n, k)
    matching = oracles.bipartite_perfect_matching(g)
    assert matching is not None and len(matching) == g.num_vertices // 2
    used = {v for pair in matching for v in pair}
    assert len(used) == g.num_vertices
    for u, v in matching:
        assert g.has_edge(u, v)


def test_transversal_examples():
    single = bounds.Hypergraph(4, (frozenset({1, 2}),))
    assert oracles.exact_transversal(single) == 1
    disjoint = bounds.Hypergraph(9, tuple(frozenset({3 * i, 3 * i + 1}) for i in range(3)))
    assert oracles.exact_transversal(disjoint) == 3
    g = graphs.gen_petersen(5, 2)
    h = bounds.bramble_hypergraph(g, bounds.petersen_bramble(5, 2))
    assert oracles.exact_transversal(h) == 3


def test_transversal_rejects_empty_edge():
    with pytest.raises(ParameterError):
        oracles.exact_transversal(bounds.Hypergraph(2, (frozenset(),)))


ZOO = [
    path(5),
    cycle(4),
    cycle(5),
    complete(4),
    graphs.gen_petersen(5, 2),
    graphs.gen_johnson(5, 2),
    graphs.gen_hamming(1, 2, 3),
    graphs.gen_hamming(2, 2, 3),
    graphs.gen_hamming(1, 3, 2),
]


@pytest.mark.parametrize("g", ZOO, ids=lambda g: f"n{g.n}m{g.num_edges}")
def test_width_parameter_sandwich(g):
    tw, _ = oracles.exact_treewidth(g)
    pw, _ = oracles.exact_pathwidth(g)
    assert tw <= pw
    assert g.min_degree() <= tw
    if g.num_vertices <= oracles.BW_CAP:
        bw, _ = oracles.exact_bandwidth(g)
        assert pw <= bw
        table = oracles.bv_table(g)
        assert max(int(x) for x in table[1:]) <= bw
        assert all(pw >= int(table[s]) for s in range(1, g.num_vertices + 1))
    sep = oracles.min_balanced_separator(g, tw + 1)
    assert sep is not None


# ----------------------------------------------------------------------
# oracle-vs-oracle: subset DPs against full permutation enumeration
# ----------------------------------------------------------------------

import itertools

from hypothesis import given, settings
from hypothesis import strategies as st


def _random_graph(n, picks):
    pairs = list(itertools.combinations(range(n), 2))
    edges = [pairs[i % len(pairs)] for i in picks]
    return graphs.Graph(n, edges)


def _elim_width_of_order(g, order):
    adj = [set(map(int, g.neighbors(v))) for v in range(g.num_vertices)]
    width = 0
    for v in order:
        width = max(width, len(adj[v]))
        for a in adj[v]:
            adj[a].discard(v)
            adj[a].update(adj[v] - {a, v})
        adj[v] = set()
    return width


def _separation_of_order(g, order):
    masks = g.neighbor_masks()
    placed = 0
    worst = 0
    for v in order:
        placed |= 1 << v
        worst = max(
            worst,
            sum(1 for u in range(g.num_vertices) if (placed >> u) & 1 and masks[u] & ~placed),
        )
    return worst


small_graphs = st.tuples(
    st.integers(2, 6), st.lists(st.integers(0, 30), min_size=0, max_size=12)
).map(lambda args: _random_graph(*args))


@settings(max_examples=25, deadline=None)
@given(small_graphs)
def test_treewidth_matches_permutation_enumeration(g):
    tw, _ = oracles.exact_treewidth(g)
    brute = min(
        _elim_width_of_order(g, order)
        for order in itertools.permutations(range(g.num_vertices))
    )
    assert tw == brute


@settings(max_examples=25, deadline=None)
@given(small_graphs)
def test_pathwidth_matches_permutation_enumeration(g):
    pw, _ = oracles.exact_pathwidth(g)
    brute = min(
        _separation_of_order(g, order)
        for order in itertools.permutations(range(g.num_vertices))
    )
    assert pw == brute


@settings(max_examples=25, deadline=None)
@given(small_graphs)
def test_bandwidth_matches_permutation_enumeration(g):
    if g.num_edges == 0:
        return
    bw, _ = oracles.exact_bandwidth(g)
    pairs = [(int(u), int(v)) for u, v in g.edges]
    brute = min(
        max(abs(pos[u] - pos[v]) for u, v in pairs)
        for order in itertools.permutations(range(g.num_vertices))
        for pos in [{v: i for i, v in enumerate(order)}]
    )
    assert bw == brute


def test_treewidth_disconnected():
    g = graphs.Graph(6, [(0, 1), (1, 2), (0, 2), (4, 5)])  # triangle + edge + isolate
    assert oracles.exact_treewidth(g)[0] == 2
    assert oracles.exact_pathwidth(g)[0] == 2


@settings(max_examples=15, deadline=None)
@given(small_graphs)
def test_treewidth_order_is_lexicographically_smallest_optimum(g):
    tw, order = oracles.exact_treewidth(g)
    best = min(
        (list(p) for p in itertools.permutations(range(g.num_vertices))
         if _elim_width_of_order(g, p) == tw),
    )
    assert order == best


@settings(max_examples=15, deadline=None)
@given(small_graphs)
def test_pathwidth_order_is_lexicographically_smallest_optimum(g):
    pw, order = oracles.exact_pathwidth(g)
    best = min(
        (list(p) for p in itertools.permutations(range(g.num_vertices))
         if _separation_of_order(g, p) == pw),
    )
    assert order == best
