"""Cycle-index enumeration: Hilbert series and graph counts.

Series are accumulated with Python integers (all class contributions are
integral before the final division by the group order) and returned as
:class:`~invring.kernel.TruncatedSeries`.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, prod
from typing import Iterable, Mapping, Sequence

from . import group as grp
from .group import ActionSpec
from .kernel import (DegreePolynomial, Dominance, SeriesError, TruncatedSeries,
                     dominates)


class InfeasibleDegrees(ValueError):
    """The parameter degrees cannot belong to a system of parameters."""

    def __init__(self, msg: str, degree: int):
        super().__init__(msg)
        self.degree = degree


# -- integer series helpers ---------------------------------------------------

def _divide_geometric(c: list[int], a: int, times: int = 1):
    """In place: c <- c / (1 - z**a)**times."""
    n = len(c)
    for _ in range(times):
        for d in range(a, n):
            c[d] += c[d - a]


def _multiply_one_plus(c: list[int], a: int, times: int = 1):
    """In place: c <- c * (1 + z**a)**times."""
    for _ in range(times):
        for d in range(len(c) - 1, a - 1, -1):
            c[d] += c[d - a]


def _multiply_one_minus(c: list[int], a: int, times: int = 1):
    """In place: c <- c * (1 - z**a)**times."""
    for _ in range(times):
        for d in range(len(c) - 1, a - 1, -1):
            c[d] -= c[d - a]


def _class_types(action: ActionSpec) -> list[tuple[int, dict]]:
    """(weight, position cycle type) pairs summing to the group order."""
    if action.kind == grp.GRAPH:
        return [(size, grp.edge_cycle_type(lam)) for lam, size in grp.conjugacy_classes(action.n)]
    if action.kind == grp.DIGRAPH:
        return [(size, grp.arc_cycle_type(lam)) for lam, size in grp.conjugacy_classes(action.n)]
    if action.kind == grp.NATURAL:
        return [(size, dict(Counter(lam))) for lam, size in grp.conjugacy_classes(action.n)]
    table = grp.group_table(action)
    counts = Counter(tuple(sorted(grp.cycle_type(p).items())) for p in table.elements)
    return [(w, dict(t)) for t, w in sorted(counts.items())]


def group_order(action: ActionSpec) -> int:
    if action.kind in (grp.GRAPH, grp.DIGRAPH, grp.NATURAL):
        return factorial(action.n)
    return grp.group_table(action).order


def hilbert_series(action: ActionSpec, bound: int) -> TruncatedSeries:
    """Dimensions of the homogeneous components of the invariant ring."""
    if bound < 0:
        raise SeriesError("bound must be nonnegative")
    total = [0] * (bound + 1)
    for weight, ctype in _class_types(action):
        c = [1] + [0] * bound
        for length, mult in ctype.items():
            _divide_geometric(c, length, mult)
        for d in range(bound + 1):
            total[d] += weight * c[d]
    order = group_order(action)
    for d, x in enumerate(total):
        if x % order:
            raise AssertionError(f"cycle index sum not divisible at degree {d}")
    return TruncatedSeries([x // order for x in total])


def _subset_counts(action: ActionSpec, bound: int) -> TruncatedSeries:
    total = [0] * (bound + 1)
    for weight, ctype in _class_types(action):
        c = [1] + [0] * bound
        for length, mult in ctype.items():
            _multiply_one_plus(c, length, mult)
        for d in range(bound + 1):
            total[d] += weight * c[d]
    order = group_order(action)
    return TruncatedSeries([x // order for x in total])


def simple_graph_counts(n: int, bound: int) -> TruncatedSeries:
    """Simple graphs on n vertices up to isomorphism, by number of edges."""
    return _subset_counts(grp.graph_edges(n), bound)


def simple_digraph_counts(n: int, bound: int) -> TruncatedSeries:
    """Simple digraphs with loops on n vertices up to isomorphism, by arcs."""
    return _subset_counts(grp.digraph_arcs(n), bound)


def _graph_hilbert_ints(k: int, bound: int) -> list[int]:
    if k <= 1:
        return [1] + [0] * bound
    return hilbert_series(grp.graph_edges(k), bound).integers()


def multigraph_counts_exact_vertices(k: int, bound: int) -> list[int]:
    """Multigraphs with exactly k non-isolated vertices, by number of edges."""
    if k < 1:
        raise ValueError("k must be positive")
    hi = _graph_hilbert_ints(k, bound)
    lo = _graph_hilbert_ints(k - 1, bound)
    return [a - b for a, b in zip(hi, lo)]


@dataclass
class CountTable:
    """Connected multigraph counts ``c(k, d)`` (k vertices, d edges)."""

    max_k: int
    max_d: int
    rows: dict = field(default_factory=dict)

    def __getitem__(self, key) -> int:
        return self.rows.get(key, 0)

    def n_d(self, d: int, max_vertices: int | None = None) -> int:
        top = self.max_k if max_vertices is None else min(max_vertices, self.max_k)
        return sum(self.rows.get((k, d), 0) for k in range(top + 1))


def connected_multigraph_counts(max_k: int, max_d: int) -> CountTable:
    """Invert the multiset relation between all and connected multigraphs.

    ``sum N[k,d] y^k z^d = prod (1 - y^k z^d)^(-c[k,d])`` where ``N`` counts
    multigraphs without isolated vertices.  Cells are solved in increasing k:
    every factor other than ``(k, d)`` that reaches ``y^k z^d`` has fewer
    vertices.
    """
    N = [[0] * (max_d + 1) for _ in range(max_k + 1)]
    N[0][0] = 1
    for k in range(1, max_k + 1):
        N[k] = multigraph_counts_exact_vertices(k, max_d)
    P = [[0] * (max_d + 1) for _ in range(max_k + 1)]
    P[0][0] = 1
    table = CountTable(max_k, max_d)
    for k in range(1, max_k + 1):
        for d in range(1, max_d + 1):
            c = N[k][d] - P[k][d]
            if c < 0:
                raise AssertionError(f"negative connected count at {(k, d)}")
            if c:
                table.rows[k, d] = c
                _multiply_2d_geometric(P, k, d, c)
    return table


def _multiply_2d_geometric(P: list[list[int]], a: int, b: int, c: int):
    """In place: P <- P * (1 - y^a z^b)^(-c), truncated to P's shape."""
    K, D = len(P) - 1, len(P[0]) - 1
    jmax = min(K // a, D // b)
    coefs = [comb(c + j - 1, j) for j in range(jmax + 1)]
    for k in range(K, -1, -1):
        for d in range(D, -1, -1):
            acc = 0
            for j in range(1, jmax + 1):
                kk, dd = k - j * a, d - j * b
                if kk < 0 or dd < 0:
                    break
                acc += coefs[j] * P[kk][dd]
            if acc:
                P[k][d] += acc


def limit_connected_counts(bound: int) -> list[int]:
    """``n_d``: connected multigraphs with d edges, for d <= bound."""
    table = connected_multigraph_counts(max(2, 2 * bound), bound)
    return [0] + [table.n_d(d) for d in range(1, bound + 1)]


def product_series(degree_mults: Mapping[int, int], bound: int) -> TruncatedSeries:
    """``prod 1/(1 - z^d)^mult`` truncated at ``bound``."""
    c = [1] + [0] * bound
    for d, mult in sorted(degree_mults.items()):
        if d < 1:
            raise SeriesError("generator degrees must be positive")
        if mult and d <= bound:
            coefs = [comb(mult + j - 1, j) for j in range(bound // d + 1)]
            new = [0] * (bound + 1)
            for i, x in enumerate(c):
                if x:
                    for j, y in enumerate(coefs):
                        if i + j * d > bound:
                            break
                        new[i + j * d] += x * y
            c = new
    return TruncatedSeries(c)


def limit_hilbert_series(bound: int) -> TruncatedSeries:
    nd = limit_connected_counts(bound)
    return product_series({d: nd[d] for d in range(1, bound + 1)}, bound)


# -- systems of parameters ----------------------------------------------------

def secondary_degrees(H: TruncatedSeries, sop: Sequence[int]) -> DegreePolynomial:
    """``(1 - z^d_1)...(1 - z^d_m) H(z)`` as a polynomial, validated."""
    sop = sorted(sop)
    total = sum(sop)
    if H.bound < total:
        raise SeriesError(f"series known to degree {H.bound}, need {total}")
    c = H.truncate(total).integers()
    for d in sop:
        _multiply_one_minus(c, d)
    top = total - len(sop)
    for d, x in enumerate(c):
        if x < 0:
            raise InfeasibleDegrees(f"infeasible degree sequence: negative coefficient at {d}", d)
        if d > top and x:
            raise InfeasibleDegrees(f"infeasible degree sequence: nonzero coefficient at {d}", d)
    return DegreePolynomial(c)


@dataclass(frozen=True)
class SecondaryStats:
    count: int
    top_degree: int
    degree_bound: int


def secondary_stats(sop: Sequence[int], group_order: int, mu: int) -> SecondaryStats:
    sop = sorted(sop)
    p = prod(sop)
    if p % group_order:
        raise ValueError("product of parameter degrees is not divisible by the group order")
    top = sum(sop) - len(sop) - mu
    return SecondaryStats(p // group_order, top, max(sop[-1], top))


def mu_formula(n: int) -> int:
    """Smallest degree of a determinant-relative invariant of the edge action."""
    if n < 4:
        raise ValueError("formula stated for n >= 4")
    return 0 if n % 2 == 0 else min_edges_formula(n)


def min_edges_formula(n: int) -> int:
    """Fewest edges of a multigraph on n >= 4 vertices with no odd automorphism."""
    return -(-3 * (n - 1) // 4)


def elementary_sop_degrees(n: int) -> list[int]:
    return list(range(1, n * (n - 1) // 2 + 1))


def conjectured_sop_degrees(n: int) -> list[int]:
    if n < 3:
        raise ValueError("n must be at least 3")
    out = sorted(list(range(1, n + 1)) + list(range(2, (n - 1) * (n - 2) // 2 + 1)))
    if len(out) != n * (n - 1) // 2:
        raise AssertionError("degree sequence has the wrong size")
    return out


# -- dominance certificates ---------------------------------------------------

@dataclass(frozen=True)
class Certificate:
    dominated: bool
    first_failure: int | None
    hilbert: tuple
    free_bound: tuple

    def __bool__(self):
        return self.dominated


def _mults(generator_degrees) -> dict:
    if isinstance(generator_degrees, Mapping):
        return {int(d): int(c) for d, c in generator_degrees.items() if c}
    return dict(Counter(int(d) for d in generator_degrees))


def dominance_certificate(H: TruncatedSeries, generator_degrees, bound: int) -> Certificate:
    """Compare ``H`` with the free algebra series on the candidate generator degrees.

    A failure degree proves the candidates cannot generate.
    """
    H = H.truncate(bound)
    F = product_series(_mults(generator_degrees), bound)
    verdict = dominates(H, F)
    return Certificate(verdict.dominated, verdict.first_failure,
                       tuple(H.integers()), tuple(F.integers()))


def simple_graph_generator_degrees(n: int, bound: int) -> dict:
    counts = simple_graph_counts(n, bound).integers()
    return {d: c for d, c in enumerate(counts) if d and c}


def simple_digraph_generator_degrees(n: int, bound: int) -> dict:
    counts = simple_digraph_counts(n, bound).integers()
    return {d: c for d, c in enumerate(counts) if d and c}


def quasi_connected_generator_degrees(n: int, bound: int) -> dict:
    """Degrees of orbit sums of connected multigraphs on fewer than n vertices."""
    table = connected_multigraph_counts(n - 1, bound)
    return {d: table.n_d(d, n - 1) for d in range(1, bound + 1) if table.n_d(d, n - 1)}
