import random

import pytest
from hypothesis import given, settings, strategies as st

from invring import group as grp
from invring.chain import (MultiChain, chain_mul, chain_power, chain_transfer_check,
                           is_finely_homogeneous, layers, merged_shape, mergeable, shape,
                           shape_component)
from invring.orbits import (InvariantPolynomial, context, elementary_symmetric, graph_from_edges,
                            power_sum)

G4, G5 = grp.graph_edges(4), grp.graph_edges(5)


def exps(action, v):
    return InvariantPolynomial.orbit_sum(action, v)


def test_layers_and_shapes():
    simple = graph_from_edges(5, [(0, 1), (1, 2), (2, 3)])
    assert shape(simple) == (3,)
    assert shape((1, 3, 0, 0, 0, 0, 3, 0, 3, 1)) == (5, 3, 3)
    double = (2, 0, 0, 0, 0, 0)
    assert layers(double).layers == (frozenset({0}), frozenset({0}))
    assert shape(double) == (1, 1)
    with pytest.raises(ValueError):
        MultiChain((frozenset({0}), frozenset({1})))


def test_mergeable_examples():
    e = (1, 0, 0, 0, 0, 0)
    assert mergeable(e, e)
    assert not mergeable(e, (0, 1, 0, 0, 0, 0))
    triangle = graph_from_edges(4, [(0, 1), (0, 2), (1, 2)])
    assert mergeable(layers(e), layers(triangle))


def test_edge_star_edge():
    e = exps(G4, (1, 0, 0, 0, 0, 0))
    assert chain_mul(e, e) == exps(G4, (2, 0, 0, 0, 0, 0))


@pytest.mark.parametrize("k", range(1, 6))
def test_power_collapse(k):
    assert chain_power(elementary_symmetric(1, G5), k) == power_sum(k, G5)


def _random_orbit(action, rng, d):
    return InvariantPolynomial(action, {rng.choice(context(action).level(d)): 1})


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_chain_product_laws_and_shape(seed):
    rng = random.Random(seed)
    p, q, r = (_random_orbit(G4, rng, rng.randint(1, 3)) for _ in range(3))
    assert chain_mul(p, q) == chain_mul(q, p)
    assert chain_mul(chain_mul(p, q), r) == chain_mul(p, chain_mul(q, r))
    (g,), (h,) = p.terms, q.terms
    lam = merged_shape(g, h)
    pq = chain_mul(p, q)
    assert all(shape(k) == lam for k in pq.terms)
    assert pq == shape_component(p * q, lam)
    assert is_finely_homogeneous(pq)


def test_brute_force_monomial_rule():
    """Chain product of orbit sums agrees with the monomial-level definition."""
    import oracles
    ctx = context(G4)
    for g in ctx.level(2):
        for h in ctx.level(2):
            prod = {}
            for a in oracles.orbit(g, 4):
                for b in oracles.orbit(h, 4):
                    if mergeable(a, b):
                        key = tuple(x + y for x, y in zip(a, b))
                        prod[key] = prod.get(key, 0) + 1
            got = chain_mul(exps(G4, g), exps(G4, h))
            for k, c in got.terms.items():
                assert prod[k] == c
            assert sum(c * ctx.orbit_size(k) for k, c in got.terms.items()) == sum(prod.values())


@pytest.mark.parametrize("n,cap", [(3, 3), (4, 5)])
def test_chain_transfer(n, cap):
    rep = chain_transfer_check(n, cap)
    assert rep.generates_usual and rep.first_gap is None
    assert len(rep.chain_degrees) >= len(rep.usual_degrees)
    assert rep.passed
