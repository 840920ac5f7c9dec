import itertools

import pytest

from invring import group as grp
from invring.hilbert import (InfeasibleDegrees, connected_multigraph_counts,
                             conjectured_sop_degrees, dominance_certificate,
                             elementary_sop_degrees, hilbert_series, limit_connected_counts,
                             limit_hilbert_series, multigraph_counts_exact_vertices, mu_formula,
                             quasi_connected_generator_degrees, secondary_degrees,
                             secondary_stats, simple_digraph_counts, simple_graph_counts,
                             simple_graph_generator_degrees)
from invring.kernel import dominates, is_palindromic

import oracles


def H(n, bound):
    return hilbert_series(grp.graph_edges(n), bound).integers()


def test_hilbert_examples():
    assert H(4, 3) == [1, 1, 3, 6]
    assert H(5, 10)[10] == 974


def test_natural_action_counts_partitions():
    got = hilbert_series(grp.natural(4), 8).integers()
    parts = [sum(1 for lam in grp.partitions(d) if len(lam) <= 4) for d in range(9)]
    assert got == parts


def test_simple_counts():
    assert simple_graph_counts(3, 3).integers() == [1, 1, 1, 1]
    assert sum(simple_graph_counts(4, 6).integers()) == 11
    assert simple_digraph_counts(3, 0).integers() == [1]
    vecs = itertools.product((0, 1), repeat=6)
    assert sum(simple_graph_counts(4, 6).integers()) == len({frozenset(oracles.orbit(v, 4)) for v in vecs})


def test_exact_vertex_counts():
    assert multigraph_counts_exact_vertices(2, 6)[1:] == [1] * 6
    assert multigraph_counts_exact_vertices(3, 2)[2] == 1
    assert multigraph_counts_exact_vertices(4, 2)[2] == 1


def _connected_brute(k, d):
    if k < 2:
        return 0
    m = k * (k - 1) // 2
    ps = oracles.pairs(k)
    seen = set()
    for v in itertools.product(range(d + 1), repeat=m):
        if sum(v) != d:
            continue
        touched = {x for e, c in zip(ps, v) if c for x in e}
        if len(touched) != k:
            continue
        parent = list(range(k))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x
        for (i, j), c in zip(ps, v):
            if c:
                parent[find(i)] = find(j)
        if len({find(x) for x in range(k)}) == 1:
            seen.add(frozenset(oracles.orbit(v, k)))
    return len(seen)


def test_connected_counts_against_brute_force():
    table = connected_multigraph_counts(4, 4)
    for k in range(1, 5):
        for d in range(1, 5):
            assert table[k, d] == _connected_brute(k, d), (k, d)
    assert table[2, 1] == table[2, 2] == 1


def test_limit_counts():
    nd = limit_connected_counts(6)
    assert nd[2] == 2 and nd[3] == 5
    assert limit_hilbert_series(3).integers() == [1, 1, 3, 8]


def test_connected_counts_stabilize():
    table = connected_multigraph_counts(10, 5)
    for d in range(1, 6):
        partial = [table.n_d(d, K) for K in range(11)]
        assert partial == sorted(partial)
        assert partial[2 * d] == partial[10]


@pytest.mark.parametrize("n", range(2, 11))
def test_limit_agreement(n):
    k = n // 2
    finite, limit = H(n, k + 1), limit_hilbert_series(k + 1).integers()
    assert finite[:k + 1] == limit[:k + 1]
    assert finite[k + 1] != limit[k + 1]


def test_limit_inv4_degree2():
    assert H(4, 2)[2] == limit_hilbert_series(2).integers()[2] == 3


def test_secondary_degree_examples():
    assert secondary_degrees(hilbert_series(grp.graph_edges(3), 6), [1, 2, 3]).coefficients == (1,)
    p4 = secondary_degrees(hilbert_series(grp.graph_edges(4), 21), elementary_sop_degrees(4))
    assert p4.value_at_one() == 30 and p4.degree == 15
    assert p4.coefficients == (1, 0, 1, 2, 2, 2, 4, 3, 3, 4, 2, 2, 2, 1, 0, 1)
    assert is_palindromic(p4)
    p5 = secondary_degrees(hilbert_series(grp.graph_edges(5), 55), elementary_sop_degrees(5))
    assert p5.value_at_one() == 30240 and p5.degree == 42


def test_infeasible_degrees():
    with pytest.raises(InfeasibleDegrees) as exc:
        secondary_degrees(hilbert_series(grp.graph_edges(4), 6), [1] * 6)
    assert exc.value.degree == 1


def test_secondary_stats():
    s4 = secondary_stats(elementary_sop_degrees(4), 24, mu_formula(4))
    assert (s4.count, s4.top_degree, s4.degree_bound) == (30, 15, 15)
    assert secondary_stats(elementary_sop_degrees(5), 120, mu_formula(5)).top_degree == 42
    assert secondary_stats(conjectured_sop_degrees(6), 720, mu_formula(6)).degree_bound == 60


def test_mu_formula():
    assert [mu_formula(n) for n in (4, 5, 6, 7)] == [0, 3, 0, 5]


def test_conjectured_degrees():
    assert conjectured_sop_degrees(4) == [1, 2, 2, 3, 3, 4]
    assert conjectured_sop_degrees(5) == sorted(list(range(1, 6)) + list(range(2, 7)))
    assert len(conjectured_sop_degrees(8)) == 28


@pytest.mark.parametrize("n", range(3, 11))
def test_conjectured_degrees_give_nonnegative_polynomial(n):
    degs = conjectured_sop_degrees(n)
    poly = secondary_degrees(hilbert_series(grp.graph_edges(n), sum(degs)), degs)
    assert all(c >= 0 for c in poly.coefficients)


@pytest.mark.parametrize("n", [4, 6])
def test_gorenstein_palindromy(n):
    degs = elementary_sop_degrees(n)
    assert is_palindromic(secondary_degrees(hilbert_series(grp.graph_edges(n), sum(degs)), degs))


@pytest.mark.parametrize("n", [5, 6, 7, 8])
def test_simple_graphs_fail_at_degree_four(n):
    cert = dominance_certificate(hilbert_series(grp.graph_edges(n), 6),
                                 simple_graph_generator_degrees(n, 6), 6)
    assert cert.first_failure == 4


def test_simple_graphs_dominate_for_n4():
    assert dominance_certificate(hilbert_series(grp.graph_edges(4), 6),
                                 simple_graph_generator_degrees(4, 6), 6).dominated


def test_quasi_connected_failure_for_n11():
    cert = dominance_certificate(hilbert_series(grp.graph_edges(11), 24),
                                 quasi_connected_generator_degrees(11, 24), 24)
    assert cert.first_failure is not None and cert.first_failure <= 24


def test_parameters_with_secondaries_dominate():
    H4 = hilbert_series(grp.graph_edges(4), 21)
    poly = secondary_degrees(H4, elementary_sop_degrees(4))
    free = dominance_certificate(H4, range(1, 7), 15)
    assert free.first_failure == 2
    gens = list(range(1, 7)) + [d for d in poly.degrees() if d > 0]
    assert dominance_certificate(H4, gens, 15).dominated


@pytest.mark.parametrize("n", [3, 4, 5])
def test_simple_counts_dominated_by_hilbert(n):
    assert dominates(simple_graph_counts(n, 8), hilbert_series(grp.graph_edges(n), 8)).dominated
