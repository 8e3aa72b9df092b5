"""Block matrices, radii, bandwidth formulas, and the boundary bound."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from widthlab import graphs, oracles, widthcalc as wc
from widthlab.errors import ParameterError, SizeCapError, UndefinedValueError

NEG = wc.NEG_INF


def valid_tuples(n_max):
    for n in range(1, n_max + 1):
        for t in range(1, n - 1):
            for s in range(0, t // 2 + 1):
                for k in range(0, n - (t - 2 * s) + 1):
                    yield (t, n, k, s)


def test_binom_ext_examples():
    assert wc.binom_ext(5, 2) == 10
    assert wc.binom_ext(3, -1) == 0
    assert wc.binom_ext(4, 6) == 0


@given(st.integers(-10, 40), st.integers(-10, 50))
def test_binom_ext_matches_comb(x, y):
    expected = math.comb(x, y) if 0 <= y <= x else 0
    assert wc.binom_ext(x, y) == expected


def test_matrix_bandwidth_examples():
    diag = np.eye(4, dtype=np.uint8)
    assert wc.matrix_bandwidth(diag) == 0
    c4 = wc.assemble_full(1, 2)
    assert wc.matrix_bandwidth(c4) == 2
    ones = np.ones((5, 5), dtype=np.uint8) - np.eye(5, dtype=np.uint8)
    assert wc.matrix_bandwidth(ones) == 4
    with pytest.raises(UndefinedValueError):
        wc.matrix_bandwidth(np.zeros((3, 3), dtype=np.uint8))
    with pytest.raises(ParameterError):
        wc.matrix_bandwidth(np.ones((2, 3), dtype=np.uint8))


def test_manhattan_radius_examples():
    assert wc.manhattan_radius(np.asarray([[1]], dtype=np.uint8)) == 1
    assert wc.manhattan_radius(np.zeros((2, 2), dtype=np.uint8)) == NEG
    assert wc.manhattan_radius(wc.assemble_block(1, 3, 0, 1)) == 3


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5).flatmap(lambda s: st.lists(
    st.tuples(st.integers(0, 4), st.integers(0, 4)), max_size=8).map(lambda es: (s, es))))
def test_radius_bandwidth_relation_on_symmetric_matrices(args):
    s, entries = args
    m = np.zeros((s, s), dtype=np.uint8)
    for i, j in entries:
        if i < s and j < s:
            m[i, j] = m[j, i] = 1
    if not m.any():
        assert wc.manhattan_radius(m) == NEG
    else:
        assert wc.manhattan_radius(m) == wc.matrix_bandwidth(m) + s


def test_assemble_block_examples():
    assert wc.assemble_block(1, 2, 0, 1).bits.tolist() == [[1, 1]]
    empty = wc.assemble_block(2, 5, 2, 6)
    assert empty.is_empty and wc.manhattan_radius(empty) == NEG
    far = wc.assemble_block(2, 5, 2, 5)  # distance 3 > t: zero but not empty
    assert not far.is_empty and far.is_zero()
    zeros = wc.assemble_block(1, 4, 0, 2)
    assert zeros.shape == (1, 6) and zeros.is_zero()


def test_assemble_block_parity_collapse():
    # gap parity different from t: lowering t by one changes nothing
    for n in range(2, 10):
        for t in range(2, n + 1):
            for k in range(0, n + 1):
                for kp in range(k, min(n, k + t) + 1):
                    if (kp - k) % 2 == t % 2:
                        continue
                    a = wc.assemble_block(t, n, k, kp)
                    b = wc.assemble_block(t - 1, n, k, kp)
                    assert np.array_equal(a.bits, b.bits), (t, n, k, kp)


def test_assemble_full_small_and_caps():
    full = wc.assemble_full(1, 2)
    assert full.shape == (4, 4)
    assert wc.matrix_bandwidth(full) == 2
    assert wc.matrix_bandwidth(wc.assemble_full(5, 4)) == 15  # complete minus diagonal
    with pytest.raises(SizeCapError):
        wc.assemble_full(1, wc.FULL_MATRIX_MAX_N + 1)
    with pytest.raises(SizeCapError):
        wc.assemble_block(1, wc.BLOCK_MAX_N + 1, 1, 2)


def test_assemble_full_equals_block_grid():
    for (t, n) in [(1, 3), (2, 4), (3, 5)]:
        full = wc.assemble_full(t, n).bits
        sizes = [math.comb(n, k) for k in range(n + 1)]
        starts = np.cumsum([0] + sizes)
        for k in range(n + 1):
            for kp in range(n + 1):
                block = wc.assemble_block(t, n, k, kp).bits
                view = full[starts[k] : starts[k + 1], starts[kp] : starts[kp + 1]]
                assert np.array_equal(view, block), (t, n, k, kp)
                if abs(k - kp) > t:
                    assert not block.any()


def test_assemble_full_matches_graph_adjacency():
    for (t, n) in [(1, 3), (2, 4)]:
        g = graphs.gen_hamming(t, 2, n)
        assert np.array_equal(wc.assemble_full(t, n).bits, g.adjacency_matrix(np.uint8))


def test_radius_closed_examples():
    assert wc.radius_closed(3, 4, 0, 0) == 4
    assert wc.radius_closed(2, 5, 2, 1) == 17
    # 1x1 diagonal blocks are zero matrices, so the radius is the
    # lattice bottom (the literal branch expression would say 1)
    assert wc.radius_closed(2, 5, 0, 1) == NEG
    assert wc.radius_closed(2, 5, 5, 1) == NEG
    with pytest.raises(ParameterError):
        wc.radius_closed(2, 5, 4, 0)  # k + t - 2s > n
    with pytest.raises(ParameterError):
        wc.radius_closed(1, 5, 1, 1)  # t < 2s


def test_radius_recursive_examples():
    assert wc.radius_recursive(1, 3, 0, 1) == 3
    assert wc.radius_recursive(2, 5, 2, 0) == 17
    assert wc.radius_recursive(3, 6, 1, 5) == NEG  # |gap| > t: zero block
    with pytest.raises(ParameterError):
        wc.radius_recursive(1, 3, 2, 2)


def test_radius_identities_exhaustive():
    for (t, n, k, s) in valid_tuples(8):
        closed = wc.radius_closed(t, n, k, s)
        rec = wc.radius_recursive(t, n, k, t - 2 * s)
        direct = wc.manhattan_radius(wc.assemble_block(t, n, k, k + t - 2 * s))
        assert closed == rec == direct, (t, n, k, s, closed, rec, direct)


def test_radius_branch_overlap_points_agree():
    # overlap tuples evaluate two branch expressions; the internal
    # assertion fires if they ever disagree
    hits = 0
    for (t, n, k, s) in valid_tuples(10):
        if k - s in (0, (n - t) // 2, n - t):
            wc.radius_closed(t, n, k, s)
            hits += 1
    assert hits > 50


def test_diagonal_radius_vs_bandwidth_relation():
    for n in range(1, 8):
        for t in range(1, n + 1):
            for k in range(n + 1):
                block = wc.assemble_block(t, n, k, k)
                if block.is_zero():
                    continue
                r = wc.manhattan_radius(block)
                assert r == wc.matrix_bandwidth(block) + math.comb(n, k)


def test_bw_closed_examples():
    assert wc.bw_closed(1, 3) == 4
    assert wc.bw_closed(2, 4) == 12
    assert wc.bw_closed(5, 4) == 15
    assert wc.bw_recursion(1, 3) == 4
    assert wc.bw_recursion(2, 4) == 12
    assert wc.bw_recursion(5, 4) == 15


def test_bw_closed_equals_recursion():
    for t in range(1, 7):
        for n in range(1, 11):
            assert wc.bw_closed(t, n) == wc.bw_recursion(t, n), (t, n)


def test_bw_t1_halving_sum():
    for n in range(1, 31):
        assert wc.bw_closed(1, n) == sum(wc.binom_ext(m, m // 2) for m in range(n))


def test_bw_identity_chain_direct():
    for t in range(1, 5):
        for n in range(t + 1, 11):
            direct = wc.matrix_bandwidth(wc.assemble_full(t, n))
            assert wc.bw_closed(t, n) == direct, (t, n)


def test_gap_term_maximizer():
    for n in range(2, 11):
        for t in range(1, n):
            values = {k: wc.diagonal_distance(t, n, k, t) for k in range(0, n - t + 1)}
            finite = {k: v for k, v in values.items() if v != NEG}
            best = max(finite.values())
            assert finite[(n - t) // 2] == best, (t, n, values)


def test_johnson_slice_bandwidth():
    assert wc.johnson_slice_bandwidth(5, 2) == 7
    for n in range(2, 9):
        assert wc.johnson_slice_bandwidth(n, 1) == n - 1
    with pytest.raises(ParameterError):
        wc.johnson_slice_bandwidth(3, 3)


def test_johnson_slice_bandwidth_matches_direct_block():
    for n in range(2, 13):
        for k in range(1, n):
            direct = wc.matrix_bandwidth(wc.assemble_block(2, n, k, k))
            assert wc.johnson_slice_bandwidth(n, k) == direct, (n, k)


def test_harper_bound_examples():
    g = graphs.gen_hamming(1, 2, 4)
    bv = oracles.bv_table(g)
    value = wc.harper_lower_bound(1, 2, 4, 8)
    assert 0 < value <= int(bv[8]) == 6
    assert wc.harper_lower_bound(1, 2, 4, 16) == 0.0
    with pytest.raises(ParameterError):
        wc.harper_lower_bound(1, 2, 4, 0)
    with pytest.raises(ParameterError):
        wc.harper_lower_bound(1, 2, 4, 17)


@pytest.mark.parametrize("t,q,n", [(1, 2, 3), (2, 2, 3), (1, 3, 2)])
def test_harper_bound_never_exceeds_exhaustive_minimum(t, q, n):
    g = graphs.gen_hamming(t, q, n)
    bv = oracles.bv_table(g)
    for m in range(1, q**n + 1):
        bound = wc.harper_lower_bound(t, q, n, m)
        assert bound >= 0.0
        assert bound <= int(bv[m]), (m, bound, int(bv[m]))
