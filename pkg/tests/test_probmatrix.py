import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings

from eigm.graphs import Graph
from eigm.probmatrix import (
    CapacityError,
    ProbMatrix,
    ZeroVolumeError,
    convex_combine,
    empirical_overlap,
    expected_kcycles_exact,
    expected_kcycles_trace,
    expected_triangles,
    load_probmatrix,
    overlap,
    sample,
    save_probmatrix,
    to_dense,
    volume,
)
from eigm.bounds import er_construction

from conftest import complete_graph, prob_matrices


def brute_force_expected_triangles(p: ProbMatrix) -> float:
    """Independent oracle: enumerate all graphs on n nodes.

    Sums P(G) * triangles(G) over all 2^(n(n-1)/2) graphs; usable for
    n <= 6 only.
    """
    n = p.n
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    total = 0.0
    for mask in itertools.product((0, 1), repeat=len(pairs)):
        prob = 1.0
        adj = np.zeros((n, n))
        for bit, (i, j) in zip(mask, pairs):
            q = p.mat[i, j]
            prob *= q if bit else (1.0 - q)
            if bit:
                adj[i, j] = adj[j, i] = 1
        if prob == 0.0:
            continue
        tri = np.trace(adj @ adj @ adj) / 6.0
        total += prob * tri
    return total


def test_volume_examples():
    p = ProbMatrix.from_array([[0.0, 0.5], [0.5, 0.0]])
    assert volume(p) == 0.5
    er = er_construction(10, 0.3)
    assert volume(er) == pytest.approx(0.3 * 45)
    tri = to_dense(Graph.from_edges(3, [(0, 1), (1, 2), (2, 0)]))
    assert volume(tri) == 3.0


def test_overlap_examples(triangle):
    assert overlap(to_dense(triangle)) == 1.0
    assert overlap(er_construction(8, 0.37)) == pytest.approx(0.37)
    p = ProbMatrix.from_array([[0.0, 0.5], [0.5, 0.0]])
    assert overlap(p) == pytest.approx(0.5)


def test_overlap_zero_volume_error():
    p = ProbMatrix.from_array(np.zeros((3, 3)))
    with pytest.raises(ZeroVolumeError):
        overlap(p)
    with pytest.raises(ZeroVolumeError):
        empirical_overlap(p, seed=0, trials=2)


def test_constructor_validation():
    with pytest.raises(ValueError):
        ProbMatrix.from_array([[0.0, 1.5], [1.5, 0.0]])
    with pytest.raises(ValueError):
        ProbMatrix.from_array([[0.0, 0.2], [0.3, 0.0]])
    with pytest.warns(UserWarning):
        p = ProbMatrix.from_array([[0.5, 0.2], [0.2, 0.5]])
    assert np.all(np.diagonal(p.mat) == 0.0)


def test_to_dense_examples(triangle):
    single = Graph.from_edges(2, [(0, 1)])
    assert np.array_equal(to_dense(single).mat, [[0, 1], [1, 0]])
    empty = Graph.from_edges(3, [])
    assert np.array_equal(to_dense(empty).mat, np.zeros((3, 3)))
    assert np.array_equal(to_dense(triangle).mat, np.ones((3, 3)) - np.eye(3))
    with pytest.raises(CapacityError):
        to_dense(single, cap=1)


def test_sample_determinism_and_limits(triangle):
    a = to_dense(triangle)
    for seed in (0, 1, 12345):
        assert sample(a, seed) == triangle
    zero = ProbMatrix.from_array(np.zeros((4, 4)))
    assert sample(zero, 7).m == 0
    er = er_construction(30, 0.4)
    assert sample(er, 99) == sample(er, 99)
    assert sample(er, 99) != sample(er, 100)


def test_sample_draw_order_contract():
    # pair (i, j) consumes draw number rank(i, j) in row-major i<j order;
    # for n=4 the pairs are (0,1),(0,2),(0,3),(1,2),(1,3),(2,3)
    from eigm.rng import make_rng

    n = 4
    for seed in range(20):
        p = np.zeros((n, n))
        p[1, 2] = p[2, 1] = 0.5  # row-major rank 3
        g = sample(ProbMatrix.from_array(p), seed=seed)
        u = make_rng(seed).random(6)
        expect = {(1, 2)} if u[3] < 0.5 else set()
        got = {(int(a), int(b)) for a, b in g.edge_array()}
        assert got == expect


def test_sample_edge_count_moments():
    n, gamma = 1000, 0.3
    er = er_construction(n, gamma)
    npairs = n * (n - 1) // 2
    counts = [sample(er, seed).m for seed in range(5)]
    mean = np.mean(counts)
    sigma = math.sqrt(npairs * gamma * (1 - gamma) / 5)
    assert abs(mean - gamma * npairs) <= 3 * sigma


def test_empirical_overlap_binary(triangle):
    assert empirical_overlap(to_dense(triangle), seed=3, trials=4) == 1.0


def test_empirical_overlap_er():
    er = er_construction(200, 0.5)
    trials = 20
    est = empirical_overlap(er, seed=11, trials=trials)
    npairs = 200 * 199 // 2
    vol = 0.5 * npairs
    # per-trial variance of |E1 ∩ E2| / vol: binomial(npairs, 0.25) / vol^2
    se = math.sqrt(npairs * 0.25 * 0.75 / vol**2 / trials)
    assert abs(est - 0.5) <= 3 * se


def test_expected_triangles_examples(triangle):
    assert expected_triangles(to_dense(triangle)) == pytest.approx(1.0)
    er = er_construction(7, 0.4)
    assert expected_triangles(er) == pytest.approx(0.4**3 * math.comb(7, 3))
    # brute-force oracle value for n=4, gamma=0.5: 0.5
    er4 = er_construction(4, 0.5)
    assert expected_triangles(er4) == pytest.approx(0.5)
    assert brute_force_expected_triangles(er4) == pytest.approx(0.5)


@given(prob_matrices(max_n=5))
@settings(max_examples=20, deadline=None)
def test_expected_triangles_matches_brute_force(p):
    assert expected_triangles(p) == pytest.approx(
        brute_force_expected_triangles(p), rel=1e-9, abs=1e-12
    )


def test_kcycles_trace_examples(triangle):
    p = to_dense(triangle)
    assert expected_kcycles_trace(p, 3) == pytest.approx(expected_triangles(p))
    c4 = to_dense(Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]))
    # closed-walk oracle: 8 closed 4-walks per start node on a 4-cycle
    assert expected_kcycles_trace(c4, 4) == pytest.approx(32 / 8)
    assert expected_kcycles_trace(c4, 4) >= 1.0
    zero = ProbMatrix.from_array(np.zeros((5, 5)))
    for k in range(3, 9):
        assert expected_kcycles_trace(zero, k) == 0.0
    with pytest.raises(ValueError):
        expected_kcycles_trace(p, 2)
    with pytest.raises(ValueError):
        expected_kcycles_trace(p, 9)


def test_kcycles_exact_examples():
    c4 = to_dense(Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]))
    assert expected_kcycles_exact(c4, 4) == pytest.approx(1.0)
    k4 = to_dense(complete_graph(4))
    assert expected_kcycles_exact(k4, 4) == pytest.approx(3.0)
    er = er_construction(6, 0.5)
    assert expected_kcycles_exact(er, 4) == pytest.approx(0.0625 * 45)
    with pytest.raises(ValueError):
        expected_kcycles_exact(er_construction(15, 0.5), 4)


@given(prob_matrices(max_n=8))
@settings(max_examples=20, deadline=None)
def test_kcycles_exact_below_trace(p):
    for k in (4, 5):
        assert expected_kcycles_exact(p, k) <= expected_kcycles_trace(p, k) + 1e-12


@given(prob_matrices(max_n=12))
@settings(max_examples=50, deadline=None)
def test_lemma_overlap_volume_identity(p):
    ov_v = overlap(p) * volume(p)
    frob_half = float((p.mat**2).sum()) / 2.0
    assert ov_v == pytest.approx(frob_half, rel=1e-9)


@given(prob_matrices(max_n=12))
@settings(max_examples=40, deadline=None)
def test_overlap_bounded_by_support(p):
    # overlap is a p-weighted average of the support entries
    ov = overlap(p)
    support = p.mat[p.mat > 0]
    assert support.min() - 1e-12 <= ov <= 1.0 + 1e-12


def test_convex_combine(triangle):
    a = to_dense(triangle)
    base = er_construction(3, 0.25)
    assert convex_combine(base, a, 0.0) == base
    both = convex_combine(base, a, 1.0)
    assert both == a
    assert overlap(both) == 1.0
    zero = ProbMatrix.from_array(np.zeros((3, 3)))
    half = convex_combine(zero, a, 0.5)
    assert half.mat[0, 1] == 0.5
    assert volume(half) == pytest.approx(0.5 * volume(a))
    with pytest.raises(ValueError):
        convex_combine(base, a, 1.5)
    with pytest.raises(ValueError):
        convex_combine(er_construction(4, 0.5), a, 0.5)


def test_volume_linearity_under_combination(triangle):
    a = to_dense(triangle)
    p = er_construction(3, 0.2)
    for omega in (0.0, 0.3, 0.7, 1.0):
        combined = convex_combine(p, a, omega)
        assert volume(combined) == pytest.approx(
            (1 - omega) * volume(p) + omega * volume(a)
        )


def test_persistence_round_trip(tmp_path):
    p = er_construction(6, 0.375)
    path = tmp_path / "p.pmat"
    save_probmatrix(p, path)
    q = load_probmatrix(path)
    assert p == q
    text = path.read_text()
    assert text.splitlines()[0] == "n=6"


def test_persistence_rejects_bad_input(tmp_path):
    path = tmp_path / "bad.pmat"
    path.write_text("n=3\n0 1 1.5\n")
    with pytest.raises(ValueError):
        load_probmatrix(path)
    path.write_text("n=3\n1 0 0.5\n")
    with pytest.raises(ValueError):
        load_probmatrix(path)
    path.write_text("0 1 0.5\n")
    with pytest.raises(ValueError):
        load_probmatrix(path)
