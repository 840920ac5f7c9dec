"""Permutations, partitions and the induced actions of S_n on edges and arcs.

Positions are fixed integers.  For graphs the pair ``{i, j}`` (``i < j``,
vertices numbered from 0) sits at its index in lexicographic order
``{0,1} < {0,2} < ... < {n-2,n-1}``; for digraphs the arc ``(i, j)`` sits at
``i * n + j``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial, gcd
from typing import Iterator, Sequence

import numpy as np

DEFAULT_ORDER_CAP = 50_000

Permutation = tuple  # images of 0..m-1


class GroupError(ValueError):
    pass


def check_permutation(p: Sequence[int]) -> Permutation:
    p = tuple(int(x) for x in p)
    if sorted(p) != list(range(len(p))):
        raise GroupError(f"not a permutation: {p}")
    return p


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``p after q``: position i goes to ``p[q[i]]``."""
    return tuple(p[i] for i in q)


def inverse(p: Permutation) -> Permutation:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def cycles(p: Permutation) -> list[tuple]:
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i]:
            continue
        c = []
        j = i
        while not seen[j]:
            seen[j] = True
            c.append(j)
            j = p[j]
        out.append(tuple(c))
    return out


def cycle_type(p: Permutation) -> Counter:
    """Map cycle length -> number of cycles of that length."""
    return Counter(len(c) for c in cycles(p))


def sign(p: Permutation) -> int:
    return -1 if sum(len(c) - 1 for c in cycles(p)) % 2 else 1


def from_cycles(m: int, *cyc: Sequence[int]) -> Permutation:
    images = list(range(m))
    for c in cyc:
        for a, b in zip(c, c[1:] + c[:1]):
            images[a] = b
    return check_permutation(images)


# --- positions ---------------------------------------------------------------

@lru_cache(maxsize=None)
def edge_positions(n: int) -> tuple:
    """The pairs ``(i, j)``, ``i < j``, in position order."""
    return tuple(itertools.combinations(range(n), 2))


@lru_cache(maxsize=None)
def edge_index(n: int) -> dict:
    idx = {}
    for k, (i, j) in enumerate(edge_positions(n)):
        idx[i, j] = idx[j, i] = k
    return idx


def arc_positions(n: int) -> tuple:
    return tuple(itertools.product(range(n), repeat=2))


def induced_edge_permutation(vertex_perm: Sequence[int], n: int | None = None) -> Permutation:
    p = check_permutation(vertex_perm)
    n = len(p) if n is None else n
    if len(p) != n:
        raise GroupError("vertex permutation has the wrong size")
    idx = edge_index(n)
    return tuple(idx[p[i], p[j]] for i, j in edge_positions(n))


def induced_arc_permutation(vertex_perm: Sequence[int], n: int | None = None) -> Permutation:
    p = check_permutation(vertex_perm)
    n = len(p) if n is None else n
    if len(p) != n:
        raise GroupError("vertex permutation has the wrong size")
    return tuple(p[i] * n + p[j] for i, j in arc_positions(n))


# --- partitions and conjugacy classes ----------------------------------------

def partitions(n: int, largest: int | None = None) -> Iterator[tuple]:
    """Partitions of ``n`` as weakly decreasing tuples, reverse-lex order."""
    largest = n if largest is None else min(largest, n)
    if n == 0:
        yield ()
        return
    for k in range(largest, 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def z_lambda(partition: Sequence[int]) -> int:
    out = 1
    for part, mult in Counter(partition).items():
        out *= part ** mult * factorial(mult)
    return out


def conjugacy_classes(n: int) -> list[tuple[tuple, int]]:
    if n < 0:
        raise GroupError("n must be nonnegative")
    return [(lam, factorial(n) // z_lambda(lam)) for lam in partitions(n)]


def representative(partition: Sequence[int]) -> Permutation:
    """A vertex permutation with the given cycle type (consecutive cycles)."""
    n = sum(partition)
    images = list(range(n))
    start = 0
    for part in partition:
        for k in range(part):
            images[start + k] = start + (k + 1) % part
        start += part
    return tuple(images)


def edge_cycle_type(partition: Sequence[int]) -> dict[int, int]:
    """Cycle type ``{length: count}`` of the edge permutation induced by C_lambda."""
    out: Counter = Counter()
    parts = list(partition)
    for x, a in enumerate(parts):
        if a % 2:
            out[a] += (a - 1) // 2
        else:
            out[a] += (a - 2) // 2
            out[a // 2] += 1
        for b in parts[x + 1:]:
            g = gcd(a, b)
            out[a * b // g] += g
    return {k: v for k, v in sorted(out.items()) if v}


def arc_cycle_type(partition: Sequence[int]) -> dict[int, int]:
    """Cycle type of the arc permutation (loops included) induced by C_lambda."""
    out: Counter = Counter()
    parts = list(partition)
    for x, a in enumerate(parts):
        out[a] += a
        for b in parts[x + 1:]:
            g = gcd(a, b)
            out[a * b // g] += 2 * g
    return {k: v for k, v in sorted(out.items()) if v}


def sign_lemma_holds(n: int) -> bool:
    """Edge-permutation sign is sign(sigma) for odd n and +1 for even n."""
    for p in itertools.permutations(range(n)):
        expected = sign(p) if n % 2 else 1
        if sign(induced_edge_permutation(p, n)) != expected:
            return False
    return True


# --- actions and group tables ------------------------------------------------

GRAPH = "graph"
DIGRAPH = "digraph"
NATURAL = "natural"
EXPLICIT = "explicit"


@dataclass(frozen=True)
class ActionSpec:
    """Which permutation group acts, and on how many positions.

    ``n`` is the vertex count for graph and digraph actions and the number of
    points for the natural and explicit actions.
    """

    kind: str
    n: int
    generators: tuple = field(default=())

    def __post_init__(self):
        if self.kind not in (GRAPH, DIGRAPH, NATURAL, EXPLICIT):
            raise GroupError(f"unknown action kind {self.kind!r}")
        if self.n < 0:
            raise GroupError("size must be nonnegative")
        if self.kind == EXPLICIT:
            gens = tuple(check_permutation(g) for g in self.generators)
            for g in gens:
                if len(g) != self.n:
                    raise GroupError("generator acts on the wrong number of points")
            object.__setattr__(self, "generators", gens)

    @property
    def m(self) -> int:
        if self.kind == GRAPH:
            return self.n * (self.n - 1) // 2
        if self.kind == DIGRAPH:
            return self.n * self.n
        return self.n

    @property
    def has_vertices(self) -> bool:
        return self.kind in (GRAPH, DIGRAPH)

    def induced(self, vertex_perm: Sequence[int]) -> Permutation:
        if self.kind == GRAPH:
            return induced_edge_permutation(vertex_perm, self.n)
        if self.kind == DIGRAPH:
            return induced_arc_permutation(vertex_perm, self.n)
        return check_permutation(vertex_perm)

    def label(self) -> str:
        if self.kind == EXPLICIT:
            return f"explicit({self.n};{len(self.generators)} gens)"
        return f"{self.kind}({self.n})"


def graph_edges(n: int) -> ActionSpec:
    return ActionSpec(GRAPH, n)


def digraph_arcs(n: int) -> ActionSpec:
    return ActionSpec(DIGRAPH, n)


def natural(m: int) -> ActionSpec:
    return ActionSpec(NATURAL, m)


def explicit(m: int, generators: Sequence[Sequence[int]]) -> ActionSpec:
    return ActionSpec(EXPLICIT, m, tuple(tuple(g) for g in generators))


def alternating_generators(m: int) -> list[Permutation]:
    """3-cycles (0 1 k) generate the alternating group on m >= 3 points."""
    return [from_cycles(m, (0, 1, k)) for k in range(2, m)]


@dataclass(frozen=True)
class GroupTable:
    """Every element of the acting group as a permutation of positions.

    For graph and digraph actions ``vertex_perms[i]`` is the vertex
    permutation inducing ``elements[i]``.
    """

    elements: tuple
    vertex_perms: tuple | None = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def array(self) -> np.ndarray:
        return np.array(self.elements, dtype=np.intp).reshape(self.order, -1)


def _close(m: int, gens: Sequence[Permutation], cap: int) -> list[Permutation]:
    identity = tuple(range(m))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = compose(g, p)
                if q not in seen:
                    seen.add(q)
                    if len(seen) > cap:
                        raise GroupError(f"group order exceeds cap {cap}")
                    nxt.append(q)
        frontier = nxt
    return sorted(seen)


@lru_cache(maxsize=32)
def group_table(action: ActionSpec, cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
    if action.kind in (GRAPH, DIGRAPH, NATURAL):
        if factorial(action.n) > cap:
            raise GroupError(f"S_{action.n} exceeds the order cap {cap}")
        vperms = tuple(itertools.permutations(range(action.n)))
        elements = tuple(action.induced(p) for p in vperms)
        return GroupTable(elements, vperms if action.has_vertices else None)
    return GroupTable(tuple(_close(action.m, action.generators, cap)))
