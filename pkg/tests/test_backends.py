"""The jitted kernels and the pure fallbacks must agree bit for bit."""

import numpy as np
import pytest

from widthlab import _backend, _kernels, bounds, decomp, graphs, oracles


@pytest.fixture
def force_python(monkeypatch):
    monkeypatch.setenv("WIDTHLAB_BACKEND", "python")


def test_env_flag_selects_fallback(monkeypatch):
    monkeypatch.setenv("WIDTHLAB_BACKEND", "python")
    assert not _backend.use_numba()
    monkeypatch.setenv("WIDTHLAB_BACKEND", "numba")
    assert _backend.use_numba() == _backend.HAVE_NUMBA
    monkeypatch.delenv("WIDTHLAB_BACKEND")
    assert _backend.use_numba() == _backend.HAVE_NUMBA


def _graph_bundle():
    return [
        graphs.gen_petersen(5, 2),
        graphs.gen_hamming(2, 2, 3),
        graphs.gen_johnson(5, 2),
        graphs.Graph(6, [(0, 1), (2, 3), (3, 4)]),  # disconnected
    ]


def test_subset_tables_match(monkeypatch):
    for g in _graph_bundle():
        masks = np.asarray(g.neighbor_masks(), dtype=np.uint64)
        n = g.num_vertices
        monkeypatch.setenv("WIDTHLAB_BACKEND", "numba")
        fast = (
            _kernels.elim_table(masks, n),
            _kernels.boundary_table(masks, n),
            _kernels.bv_table(masks, n),
        )
        fast = fast + (_kernels.sep_table(fast[1], n),)
        monkeypatch.setenv("WIDTHLAB_BACKEND", "python")
        slow = (
            _kernels.elim_table(masks, n),
            _kernels.boundary_table(masks, n),
            _kernels.bv_table(masks, n),
        )
        slow = slow + (_kernels.sep_table(slow[1], n),)
        for a, b in zip(fast, slow):
            assert np.array_equal(a, b)


def test_oracles_match_across_backends(monkeypatch):
    g = graphs.gen_petersen(5, 2)
    monkeypatch.setenv("WIDTHLAB_BACKEND", "numba")
    fast = (oracles.exact_treewidth(g), oracles.exact_pathwidth(g), list(oracles.bv_table(g)))
    monkeypatch.setenv("WIDTHLAB_BACKEND", "python")
    slow = (oracles.exact_treewidth(g), oracles.exact_pathwidth(g), list(oracles.bv_table(g)))
    assert fast == slow


def test_decomposition_validator_matches(force_python):
    g = graphs.gen_petersen(9, 2)
    for mode in ("verbatim", "repaired"):
        d = decomp.petersen_pd(9, 2, mode)
        report = decomp.validate_decomposition(g, d)
        if mode == "repaired":
            assert report.ok and report.width == 6
        else:
            assert set(report.uncovered_edges) == {(2, 11)}


def test_bramble_validator_matches(force_python):
    for (n, k, ok) in [(5, 2, True), (30, 3, True), (10, 4, False)]:
        g = graphs.gen_petersen(n, k)
        report = bounds.validate_bramble(g, bounds.petersen_bramble(n, k))
        assert report.ok is ok


def test_bag_occurrence_matches(monkeypatch):
    d = decomp.petersen_pd(40, 3, "repaired")
    monkeypatch.setenv("WIDTHLAB_BACKEND", "numba")
    fast = _kernels.bag_occurrence(d.flat, d.offsets, 80)
    monkeypatch.setenv("WIDTHLAB_BACKEND", "python")
    slow = _kernels.bag_occurrence(d.flat, d.offsets, 80)
    for a, b in zip(fast, slow):
        assert np.array_equal(a, b)
