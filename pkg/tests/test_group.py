import itertools
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from invring import group as grp


def test_edge_positions_are_lexicographic():
    assert grp.edge_positions(4) == ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


def test_identity_induces_identity():
    assert grp.induced_edge_permutation((0, 1, 2, 3)) == tuple(range(6))
    assert grp.induced_arc_permutation((0, 1, 2)) == tuple(range(9))


def test_transposition_on_edges():
    p = grp.induced_edge_permutation((1, 0, 2, 3))
    pos = grp.edge_index(4)
    assert p[pos[0, 1]] == pos[0, 1] and p[pos[2, 3]] == pos[2, 3]
    assert p[pos[0, 2]] == pos[1, 2] and p[pos[0, 3]] == pos[1, 3]


def test_four_cycle_on_edges():
    p = grp.induced_edge_permutation((1, 2, 3, 0))
    assert grp.cycle_type(p) == {4: 1, 2: 1}


def test_transposition_on_arcs():
    p = grp.induced_arc_permutation((1, 0, 2))
    at = lambda i, j: i * 3 + j
    for a, b in [((0, 0), (1, 1)), ((0, 2), (1, 2)), ((2, 0), (2, 1)), ((0, 1), (1, 0))]:
        assert p[at(*a)] == at(*b) and p[at(*b)] == at(*a)
    assert p[at(2, 2)] == at(2, 2)


def test_three_cycle_on_arcs():
    p = grp.induced_arc_permutation((1, 2, 0))
    assert grp.cycle_type(p) == {3: 3}


def test_conjugacy_classes():
    assert dict(grp.conjugacy_classes(3)) == {(3,): 2, (2, 1): 3, (1, 1, 1): 1}
    assert dict(grp.conjugacy_classes(4))[(2, 1, 1)] == 6
    assert sum(size for _, size in grp.conjugacy_classes(5)) == 120


def test_cycle_type_examples():
    assert grp.edge_cycle_type((1, 1, 1, 1, 1)) == {1: 10}
    assert grp.edge_cycle_type((4,)) == {4: 1, 2: 1}
    assert grp.edge_cycle_type((2, 1, 1)) == {1: 2, 2: 2}
    assert grp.arc_cycle_type((1, 1, 1)) == {1: 9}
    assert grp.arc_cycle_type((3,)) == {3: 3}
    assert grp.arc_cycle_type((2, 1)) == {1: 1, 2: 4}


@pytest.mark.parametrize("n", range(1, 9))
def test_edge_cycle_type_matches_brute_force(n):
    for lam, _ in grp.conjugacy_classes(n):
        p = grp.induced_edge_permutation(grp.representative(lam))
        assert dict(grp.cycle_type(p)) == grp.edge_cycle_type(lam)


@pytest.mark.parametrize("n", range(1, 7))
def test_arc_cycle_type_matches_brute_force(n):
    for lam, _ in grp.conjugacy_classes(n):
        p = grp.induced_arc_permutation(grp.representative(lam))
        assert dict(grp.cycle_type(p)) == grp.arc_cycle_type(lam)


@pytest.mark.parametrize("n", range(1, 9))
def test_class_sizes_sum_to_group_order(n):
    assert sum(size for _, size in grp.conjugacy_classes(n)) == factorial(n)


def test_group_table_orders():
    assert grp.group_table(grp.graph_edges(4)).order == 24
    assert grp.group_table(grp.explicit(4, grp.alternating_generators(4))).order == 12
    assert grp.group_table(grp.digraph_arcs(3)).order == 6


def test_order_cap():
    with pytest.raises(grp.GroupError):
        grp.group_table(grp.graph_edges(5), cap=100)
    with pytest.raises(grp.GroupError):
        grp.group_table(grp.explicit(6, [(1, 0, 2, 3, 4, 5), (1, 2, 3, 4, 5, 0)]), cap=100)


def test_sign_examples():
    assert grp.sign((0, 1, 2, 3)) == 1
    assert grp.sign(grp.induced_edge_permutation((1, 0, 2, 3))) == 1
    assert grp.sign(grp.induced_edge_permutation((1, 0, 2, 3, 4))) == -1


@pytest.mark.parametrize("n", range(2, 8))
def test_sign_lemma(n):
    assert grp.sign_lemma_holds(n)


def test_invalid_inputs():
    with pytest.raises(grp.GroupError):
        grp.check_permutation((0, 0, 1))
    with pytest.raises(grp.GroupError):
        grp.ActionSpec("hypergraph", 3)
    with pytest.raises(grp.GroupError):
        grp.explicit(4, [(1, 0, 2)])


perms = st.integers(2, 6).flatmap(lambda n: st.permutations(range(n)))


@settings(max_examples=50, deadline=None)
@given(perms, perms)
def test_induced_action_is_a_homomorphism(p, q):
    if len(p) != len(q):
        return
    lhs = grp.induced_edge_permutation(grp.compose(p, q))
    rhs = grp.compose(grp.induced_edge_permutation(p), grp.induced_edge_permutation(q))
    assert lhs == rhs
    assert grp.compose(p, grp.inverse(p)) == tuple(range(len(p)))
