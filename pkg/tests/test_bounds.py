"""Brambles, transversal fractions, and integer-certified spectra."""

import math
from fractions import Fraction

import pytest

from widthlab import bounds, graphs, oracles
from widthlab.errors import HypothesisError, ParameterError, PreconditionError


def test_bramble_shape_small():
    b = bounds.petersen_bramble(5, 2)
    assert len(b.sets) == 5
    assert all(len(s) == 4 for s in b.sets)  # t = 1, sizes 2t+2


def test_bramble_shape_large():
    b = bounds.petersen_bramble(288, 1)
    assert all(len(s) == 146 for s in b.sets)  # t = 72


@pytest.mark.parametrize("n,k", [(5, 2), (7, 2), (9, 3), (30, 4), (61, 2)])
def test_bramble_valid_on_spot_checks(n, k):
    g = graphs.gen_petersen(n, k)
    report = bounds.validate_bramble(g, bounds.petersen_bramble(n, k))
    assert report.ok, (n, k, report)


def test_bramble_known_failures_small_grid():
    # frozen from the exhaustive scan over 2k+2 <= n <= 500, k <= 4:
    # only these four window brambles miss a touching pair
    fails = []
    for k in range(1, 5):
        for n in range(2 * k + 2, 61):
            g = graphs.gen_petersen(n, k)
            report = bounds.validate_bramble(g, bounds.petersen_bramble(n, k))
            if not report.ok:
                assert report.first_nontouching is not None
                fails.append((n, k))
    assert fails == [(10, 4), (14, 4), (18, 4), (20, 4)]


def test_bramble_validator_detects_problems():
    g = graphs.gen_petersen(5, 2)
    disconnected = bounds.Bramble((frozenset({0, 2}),))  # v_1 and v_3
    rep = bounds.validate_bramble(g, disconnected)
    assert not rep.ok and rep.first_disconnected == 0
    nontouching = bounds.Bramble((frozenset({0}), frozenset({7})))  # v_1 vs u_3
    rep = bounds.validate_bramble(g, nontouching)
    assert not rep.ok and rep.first_nontouching == (0, 1)
    with pytest.raises(ParameterError):
        bounds.validate_bramble(g, bounds.Bramble((frozenset({99}),)))


def test_transversal_fraction_examples():
    single = bounds.Hypergraph(3, (frozenset({0, 1}),))
    assert bounds.transversal_fraction_bound(single) == 1
    g = graphs.gen_petersen(288, 1)
    h = bounds.bramble_hypergraph(g, bounds.petersen_bramble(288, 1))
    assert bounds.transversal_fraction_bound(h) == Fraction(288, 73)
    with pytest.raises(ParameterError):
        bounds.transversal_fraction_bound(bounds.Hypergraph(3, ()))


@pytest.mark.parametrize("n,k", [(5, 2), (7, 2), (8, 3)])
def test_fraction_bound_below_exact_transversal(n, k):
    g = graphs.gen_petersen(n, k)
    h = bounds.bramble_hypergraph(g, bounds.petersen_bramble(n, k))
    assert bounds.transversal_fraction_bound(h) <= oracles.exact_transversal(h)


def test_order_lower_bound():
    assert bounds.petersen_order_lower_bound(288, 1) == 4
    assert bounds.petersen_order_lower_bound(800, 2) == 6
    with pytest.raises(HypothesisError):
        bounds.petersen_order_lower_bound(5, 2)


def test_order_lower_bound_meets_target_on_hypothesis_range():
    for k in (1, 2):
        threshold = 8 * (2 * k + 2) ** 2
        for n in range(threshold, threshold + 40):
            assert bounds.petersen_order_lower_bound(n, k) >= 2 * k + 2


def test_bk_spectrum_small():
    spectrum = bounds.bk_spectrum(2)
    assert dict(spectrum.pairs) == {3: 1, -3: 1, 2: 4, -2: 4, 1: 5, -1: 5}
    assert spectrum.num_vertices() == 20


@pytest.mark.parametrize("k", range(1, 11))
def test_bk_spectrum_multiplicities(k):
    spectrum = bounds.bk_spectrum(k)
    assert spectrum.num_vertices() == 2 * math.comb(2 * k + 1, k)
    assert spectrum.sorted_pairs()[0] == (k + 1, 1)
    assert sum(m * lam for lam, m in spectrum.pairs) == 0


def test_moments_trivial_cases():
    g = graphs.gen_bipartite_kneser(5, 2)
    spectrum = bounds.bk_spectrum(2)
    report = bounds.verify_spectrum_moments(g, spectrum, 2)
    assert report.ok
    # p = 0 counts vertices, p = 2 counts closed 2-walks = degree sum
    assert sum(m for _, m in spectrum.pairs) == 20
    assert sum(m * lam**2 for lam, m in spectrum.pairs) == 60


def test_moments_catch_wrong_spectrum():
    g = graphs.gen_bipartite_kneser(5, 2)
    wrong = bounds.Spectrum(((3, 1), (-3, 1), (2, 4), (-2, 4), (1, 6), (-1, 4)))
    report = bounds.verify_spectrum_moments(g, wrong, 4)
    assert not report.ok
    assert report.failed_p is not None


def test_moments_deeper():
    g = graphs.gen_bipartite_kneser(7, 3)
    assert bounds.verify_spectrum_moments(g, bounds.bk_spectrum(3), 8).ok


def test_spectral_lower_bound_examples():
    g = graphs.gen_bipartite_kneser(5, 2)
    assert bounds.spectral_lower_bound(g, bounds.bk_spectrum(2)) == 2
    petersen = graphs.gen_petersen(5, 2)
    spectrum = bounds.Spectrum(((3, 1), (1, 5), (-2, 4)))
    assert bounds.verify_spectrum_moments(petersen, spectrum, 6).ok
    assert bounds.spectral_lower_bound(petersen, spectrum) == 1


def test_spectral_lower_bound_preconditions():
    star = graphs.Graph(3, [(0, 1), (0, 2)])
    with pytest.raises(PreconditionError):
        bounds.spectral_lower_bound(star, bounds.Spectrum(((1, 3),)))
    g = graphs.gen_bipartite_kneser(5, 2)
    wrong = bounds.Spectrum(((3, 1), (-3, 1), (2, 4), (-2, 4), (1, 6), (-1, 4)))
    with pytest.raises(PreconditionError):
        bounds.spectral_lower_bound(g, wrong)


def test_bk_spectral_lb_values():
    assert bounds.bk_spectral_lb(1) == 0
    assert bounds.bk_spectral_lb(2) == 2
    assert bounds.bk_spectral_lb(3) == 7


@pytest.mark.parametrize("k", [1, 2, 3])
def test_bk_spectral_lb_composition_graph_backed(k):
    g = graphs.gen_bipartite_kneser(2 * k + 1, k)
    assert bounds.spectral_lower_bound(g, bounds.bk_spectrum(k)) == bounds.bk_spectral_lb(k)


def test_bk_spectral_lb_composition_formula_only():
    for k in range(1, 21):
        spectrum = bounds.bk_spectrum(k)
        n = 2 * math.comb(2 * k + 1, k)
        composed = bounds.spectral_bound_value(n, k + 1, spectrum.second_largest())
        assert composed == bounds.bk_spectral_lb(k)


def test_spectral_bounds_below_exact_treewidth():
    g = graphs.gen_bipartite_kneser(5, 2)
    tw, _ = oracles.exact_treewidth(g)
    assert bounds.spectral_lower_bound(g, bounds.bk_spectrum(2)) <= tw
    petersen = graphs.gen_petersen(5, 2)
    spectrum = bounds.Spectrum(((3, 1), (1, 5), (-2, 4)))
    twp, _ = oracles.exact_treewidth(petersen)
    assert bounds.spectral_lower_bound(petersen, spectrum) <= twp


def test_degree_lower_bound():
    k4 = graphs.Graph(4, [(i, j) for i in range(4) for j in range(i + 1, 4)])
    assert bounds.degree_lower_bound(k4) == 3
    assert bounds.degree_lower_bound(graphs.gen_johnson(5, 2)) == 6
    for g in [k4, graphs.gen_johnson(5, 2), graphs.gen_petersen(5, 2)]:
        tw, _ = oracles.exact_treewidth(g)
        assert bounds.degree_lower_bound(g) <= tw
