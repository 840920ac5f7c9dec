"""The orbit-sum basis of an invariant ring of a permutation group.

A monomial is an exponent vector over the positions of an action (a labelled
multigraph for the graph action).  Its orbit sum ``exps(g)`` is the sum of the
distinct monomials in its orbit; these form a vector space basis of the
invariant ring, and products of them have nonnegative integer structure
constants.

The canonical representative of an orbit is its lexicographically greatest
image as a tuple, so the single edge on four vertices is ``(1,0,0,0,0,0)``.
"""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from . import group as grp
from .group import ActionSpec

Vector = tuple  # exponent vector, one nonnegative int per position

_CHUNK = 4_000_000  # max elements in one batched image array


class OrbitError(ValueError):
    pass


@dataclass(frozen=True)
class CanonicalGraph:
    rep: Vector
    orbit_size: int
    stabilizer_order: int

    @property
    def degree(self) -> int:
        return sum(self.rep)


class ActionContext:
    """Group table plus the caches that make orbit computations cheap.

    One context exists per :class:`ActionSpec`; get it with :func:`context`.
    """

    def __init__(self, spec: ActionSpec):
        self.spec = spec
        self.m = spec.m
        table = grp.group_table(spec)
        self.order = table.order
        self.table = table.array()
        self.vertex_perms = table.vertex_perms
        if table.vertex_perms is not None:
            self.vertex_signs = np.array([grp.sign(p) for p in table.vertex_perms])
        else:
            self.vertex_signs = None
        self._canon: dict = {}
        self._stab: dict = {}
        self._orbits: dict = {}
        self._consts: dict = {}
        self._levels: dict = {}

    # -- canonical forms --------------------------------------------------

    def _lexmax(self, images: np.ndarray):
        """Row-wise lexicographic maximum over axis 1 of a (k, G, m) array."""
        k, g, m = images.shape
        top = int(images.max()) + 1 if images.size else 1
        if top ** m < 2 ** 62:
            powers = np.array([top ** (m - 1 - i) for i in range(m)], dtype=np.int64)
            keys = images.astype(np.int64) @ powers
            best = keys.argmax(axis=1)
            stab = (keys == keys[np.arange(k), best][:, None]).sum(axis=1)
            return images[np.arange(k), best], stab
        reps = np.empty((k, m), dtype=images.dtype)
        stab = np.empty(k, dtype=np.int64)
        for r in range(k):
            cand = images[r]
            for col in range(m):
                column = cand[:, col]
                cand = cand[column == column.max()]
                if len(cand) == 1:
                    break
            reps[r] = cand[0]
            stab[r] = (images[r] == cand[0]).all(axis=1).sum()
        return reps, stab

    def canonical_batch(self, vectors: np.ndarray):
        """Canonical forms and stabilizer orders for the rows of ``vectors``."""
        vectors = np.asarray(vectors, dtype=np.int64).reshape(-1, self.m)
        if self.m == 0:
            return [()] * len(vectors), [self.order] * len(vectors)
        per = max(1, _CHUNK // (self.order * self.m))
        reps, stabs = [], []
        for start in range(0, len(vectors), per):
            block = vectors[start:start + per]
            r, s = self._lexmax(block[:, self.table])
            reps.extend(tuple(x) for x in r.tolist())
            stabs.extend(s.tolist())
        for r, s in zip(reps, stabs):
            self._stab[r] = s
        return reps, stabs

    def canonical(self, v: Sequence[int]) -> Vector:
        v = tuple(int(x) for x in v)
        if len(v) != self.m:
            raise OrbitError(f"vector of length {len(v)} for an action on {self.m} positions")
        if any(x < 0 for x in v):
            raise OrbitError("exponents must be nonnegative")
        c = self._canon.get(v)
        if c is None:
            (c,), _ = self.canonical_batch(np.array([v]))
            self._canon[v] = c
        return c

    def stabilizer_order(self, rep: Vector) -> int:
        s = self._stab.get(rep)
        if s is None:
            self.canonical_batch(np.array([rep]))
            s = self._stab[rep]
        return s

    def orbit_size(self, rep: Vector) -> int:
        return self.order // self.stabilizer_order(rep)

    def orbit(self, rep: Vector) -> np.ndarray:
        """All distinct images of ``rep`` as an (orbit size, m) array."""
        o = self._orbits.get(rep)
        if o is None:
            v = np.array(rep, dtype=np.int64)
            o = np.unique(v[self.table], axis=0) if self.m else v.reshape(1, 0)
            self._orbits[rep] = o
        return o

    def data(self, v: Sequence[int]) -> CanonicalGraph:
        rep = self.canonical(v)
        stab = self.stabilizer_order(rep)
        return CanonicalGraph(rep, self.order // stab, stab)

    # -- enumeration ------------------------------------------------------

    def level(self, d: int, max_mult: int | None = None) -> tuple:
        """Canonical representatives of degree ``d``, greatest first."""
        if d < 0:
            raise OrbitError("degree must be nonnegative")
        key = (d, max_mult)
        if key in self._levels:
            return self._levels[key]
        if d == 0:
            out = ((0,) * self.m,)
        else:
            prev = self.level(d - 1, max_mult)
            cand = set()
            if prev and self.m:
                base = np.array(prev, dtype=np.int64)
                rows = []
                for i in range(self.m):
                    b = base.copy()
                    b[:, i] += 1
                    if max_mult is not None:
                        b = b[b[:, i] <= max_mult]
                    rows.append(b)
                allrows = np.unique(np.concatenate(rows), axis=0)
                reps, _ = self.canonical_batch(allrows)
                cand = set(reps)
            out = tuple(sorted(cand, reverse=True))
        self._levels[key] = out
        return out

    # -- products ---------------------------------------------------------

    def constants(self, g: Vector, h: Vector, chain: bool = False) -> dict:
        """Coefficients of ``exps(g) * exps(h)`` (or the chain product)."""
        if g > h:
            g, h = h, g
        key = (g, h, chain)
        hit = self._consts.get(key)
        if hit is not None:
            return hit
        og, oh = self.orbit(g), self.orbit(h)
        if len(og) <= len(oh):
            small, rep, big_size = og, np.array(h, dtype=np.int64), len(oh)
        else:
            small, rep, big_size = oh, np.array(g, dtype=np.int64), len(og)
        if chain:
            small = small[comonotone(small, rep)]
        out: dict = {}
        if len(small):
            reps, stabs = self.canonical_batch(small + rep)
            counts = Counter(reps)
            stab_of = dict(zip(reps, stabs))
            for H, cnt in counts.items():
                orbit_h = self.order // stab_of[H]
                num = big_size * cnt
                if num % orbit_h:
                    raise AssertionError("non-integral structure constant")
                out[H] = num // orbit_h
        self._consts[key] = out
        return out


@lru_cache(maxsize=64)
def context(spec: ActionSpec) -> ActionContext:
    return ActionContext(spec)


def comonotone(rows: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Mask of rows whose layer chains merge with the layer chain of ``v``.

    Two multichains of level sets merge exactly when no pair of positions is
    ordered one way by the first vector and the other way by the second.
    """
    rows = np.asarray(rows).reshape(-1, len(v))
    dv = np.sign(v[:, None] - v[None, :])
    dr = np.sign(rows[:, :, None] - rows[:, None, :])
    return ~((dr * dv[None]) < 0).any(axis=(1, 2))


# -- invariant polynomials ----------------------------------------------------

class InvariantPolynomial:
    """Finite combination of orbit sums, keyed by canonical representative."""

    __slots__ = ("action", "terms")

    def __init__(self, action: ActionSpec, terms: Mapping | None = None):
        self.action = action
        clean = {}
        for g, c in (terms or {}).items():
            c = c if isinstance(c, Fraction) else Fraction(c)
            if c:
                clean[tuple(g)] = c
        self.terms = clean

    @classmethod
    def orbit_sum(cls, action: ActionSpec, v: Sequence[int]) -> "InvariantPolynomial":
        return cls(action, {context(action).canonical(v): 1})

    @classmethod
    def one(cls, action: ActionSpec) -> "InvariantPolynomial":
        return cls(action, {(0,) * action.m: 1})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, InvariantPolynomial):
            return NotImplemented
        return self.action == other.action and self.terms == other.terms

    def __hash__(self):
        return hash((self.action, frozenset(self.terms.items())))

    def __repr__(self):
        inner = " + ".join(f"{c}*exps{g}" for g, c in sorted(self.terms.items(), reverse=True))
        return f"InvariantPolynomial({inner or '0'})"

    def _same(self, other: "InvariantPolynomial"):
        if self.action != other.action:
            raise OrbitError("invariants live in different actions")

    def __add__(self, other: "InvariantPolynomial") -> "InvariantPolynomial":
        self._same(other)
        out = dict(self.terms)
        for g, c in other.terms.items():
            out[g] = out.get(g, 0) + c
        return InvariantPolynomial(self.action, out)

    def __neg__(self):
        return InvariantPolynomial(self.action, {g: -c for g, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "InvariantPolynomial":
        return InvariantPolynomial(self.action, {g: c * x for g, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, InvariantPolynomial):
            return invariant_mul(self, other)
        return self.scale(Fraction(other))

    __rmul__ = scale

    def __pow__(self, k: int):
        out = InvariantPolynomial.one(self.action)
        for _ in range(k):
            out = out * self
        return out

    def degrees(self) -> set:
        return {sum(g) for g in self.terms}

    @property
    def degree(self) -> int:
        """Degree of a homogeneous invariant."""
        ds = self.degrees()
        if len(ds) != 1:
            raise OrbitError(f"not homogeneous (degrees {sorted(ds)})")
        return ds.pop()

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def leading(self) -> Vector:
        return max(self.terms, key=lambda g: (sum(g), g))

    def graphs(self) -> dict:
        ctx = context(self.action)
        return {CanonicalGraph(g, ctx.orbit_size(g), ctx.stabilizer_order(g)): c
                for g, c in self.terms.items()}

    def homogeneous_part(self, d: int) -> "InvariantPolynomial":
        return InvariantPolynomial(self.action, {g: c for g, c in self.terms.items() if sum(g) == d})

    def evaluate(self, w: Sequence) -> Fraction:
        return evaluate(self, w)


def _multiply(p: InvariantPolynomial, q: InvariantPolynomial, chain: bool) -> InvariantPolynomial:
    p._same(q)
    ctx = context(p.action)
    out: dict = defaultdict(Fraction)
    for g, a in p.terms.items():
        for h, b in q.terms.items():
            ab = a * b
            for H, c in ctx.constants(g, h, chain).items():
                out[H] += ab * c
    return InvariantPolynomial(p.action, out)


def invariant_mul(p: InvariantPolynomial, q: InvariantPolynomial) -> InvariantPolynomial:
    return _multiply(p, q, chain=False)


def canonical_form(v: Sequence[int], action: ActionSpec) -> Vector:
    return context(action).canonical(v)


def orbit_data(v: Sequence[int], action: ActionSpec) -> CanonicalGraph:
    return context(action).data(v)


def enumerate_canonical(d: int, action: ActionSpec, max_mult: int | None = None) -> list[CanonicalGraph]:
    ctx = context(action)
    return [CanonicalGraph(g, ctx.orbit_size(g), ctx.stabilizer_order(g))
            for g in ctx.level(d, max_mult)]


def basis(d: int, action: ActionSpec, max_mult: int | None = None) -> list[InvariantPolynomial]:
    return [InvariantPolynomial(action, {g: 1}) for g in context(action).level(d, max_mult)]


# -- evaluation and separation ------------------------------------------------

def _weights(w: Sequence, m: int) -> list[Fraction]:
    w = [x if isinstance(x, Fraction) else Fraction(x) for x in w]
    if len(w) != m:
        raise OrbitError(f"weight vector of length {len(w)} for {m} positions")
    return w


def evaluate(p: InvariantPolynomial, w: Sequence) -> Fraction:
    """Value of ``p`` at the weighted graph ``w``."""
    ctx = context(p.action)
    w = _weights(w, ctx.m)
    zero = np.array([x == 0 for x in w], dtype=bool)
    total = Fraction(0)
    for g, c in p.terms.items():
        orb = ctx.orbit(g)
        alive = orb[~(orb[:, zero] > 0).any(axis=1)] if zero.any() else orb
        s = Fraction(0)
        for row in alive.tolist():
            term = Fraction(1)
            for x, e in zip(w, row):
                if e:
                    term *= x ** e
            s += term
        total += c * s
    return total


@dataclass(frozen=True)
class Elementary:
    """The k-th elementary symmetric polynomial of all m position variables.

    Evaluates directly, without expanding into orbit sums; use
    :func:`elementary_symmetric` for the expanded invariant.
    """

    k: int
    m: int

    def evaluate(self, w: Sequence) -> Fraction:
        w = _weights(w, self.m)
        e = [Fraction(1)] + [Fraction(0)] * self.k
        for x in w:
            for j in range(self.k, 0, -1):
                e[j] += e[j - 1] * x
        return e[self.k]


def separates(S: Iterable, a: Sequence, b: Sequence) -> bool:
    """True iff some member of ``S`` takes different values at ``a`` and ``b``."""
    for p in S:
        f = p.evaluate if hasattr(p, "evaluate") else (lambda w, p=p: p(w))
        if f(a) != f(b):
            return True
    return False


# -- named invariants ---------------------------------------------------------

def simple_graph_orbit_sums(d: int, action: ActionSpec) -> list[InvariantPolynomial]:
    """Orbit sums of 0/1 vectors with ``d`` ones."""
    return basis(d, action, max_mult=1)


def elementary_symmetric(k: int, action: ActionSpec) -> InvariantPolynomial:
    if not 1 <= k <= action.m:
        raise OrbitError(f"k={k} out of range 1..{action.m}")
    return InvariantPolynomial(action, {g: 1 for g in context(action).level(k, 1)})


def power_sum(k: int, action: ActionSpec) -> InvariantPolynomial:
    if not 1 <= k <= action.m:
        raise OrbitError(f"k={k} out of range 1..{action.m}")
    ctx = context(action)
    reps = {ctx.canonical(tuple(k if j == i else 0 for j in range(ctx.m))) for i in range(ctx.m)}
    return InvariantPolynomial(action, {g: 1 for g in reps})


def _compositions(k: int, parts: int):
    if parts == 0:
        if k == 0:
            yield ()
        return
    for first in range(k, -1, -1):
        for rest in _compositions(k - first, parts - 1):
            yield (first,) + rest


def vertex_power_sum(k: int, action: ActionSpec) -> InvariantPolynomial:
    """``X_1**k + ... + X_n**k`` where ``X_i`` sums the edges at vertex i."""
    if action.kind != grp.GRAPH:
        raise OrbitError("vertex power sums are defined for the graph action")
    if k < 1:
        raise OrbitError("k must be positive")
    n = action.n
    ctx = context(action)
    idx = grp.edge_index(n)
    star = [idx[0, j] for j in range(1, n)]
    mass: dict = defaultdict(int)
    for comp in _compositions(k, len(star)):
        coef = factorial(k) // prod(factorial(c) for c in comp)
        v = [0] * ctx.m
        for pos, c in zip(star, comp):
            v[pos] = c
        mass[ctx.canonical(v)] += coef
    terms = {}
    for g, mval in mass.items():
        terms[g] = Fraction(n * mval, ctx.orbit_size(g))
    return InvariantPolynomial(action, terms)


# -- graph structure ----------------------------------------------------------

def graph_from_edges(n: int, edges: Iterable) -> Vector:
    """Exponent vector of a multigraph given as 0-based vertex pairs (repeats add)."""
    idx = grp.edge_index(n)
    v = [0] * (n * (n - 1) // 2)
    for i, j in edges:
        if i == j:
            raise OrbitError("graphs have no loops")
        v[idx[i, j]] += 1
    return tuple(v)


def edges_of(v: Sequence[int], n: int) -> list[tuple[int, int, int]]:
    return [(i, j, c) for (i, j), c in zip(grp.edge_positions(n), v) if c]


def non_isolated(v: Sequence[int], n: int) -> list[int]:
    return sorted({x for i, j, _ in edges_of(v, n) for x in (i, j)})


def components(v: Sequence[int], n: int) -> list[Vector]:
    """Non-trivial connected components, each as a vector on all n vertices."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    es = edges_of(v, n)
    for i, j, _ in es:
        parent[find(i)] = find(j)
    groups: dict = defaultdict(list)
    idx = grp.edge_index(n)
    for i, j, c in es:
        groups[find(i)].append((idx[i, j], c))
    out = []
    for items in groups.values():
        w = [0] * len(v)
        for pos, c in items:
            w[pos] = c
        out.append(tuple(w))
    return sorted(out, reverse=True)


def is_quasi_connected(v: Sequence[int], n: int) -> bool:
    return len(components(v, n)) <= 1


def automorphism_scan(v: Sequence[int], action: ActionSpec) -> tuple[int, bool]:
    """Order of the stabilizer of ``v`` and whether it holds an odd vertex permutation."""
    ctx = context(action)
    if ctx.vertex_signs is None:
        raise OrbitError("automorphism scan needs a vertex action")
    vec = np.array(v, dtype=np.int64)
    fixed = (vec[ctx.table] == vec).all(axis=1)
    return int(fixed.sum()), bool((ctx.vertex_signs[fixed] == -1).any())


def project(p: InvariantPolynomial, n_small: int) -> InvariantPolynomial:
    """Drop orbit sums needing more than ``n_small`` vertices; relabel the rest."""
    if p.action.kind != grp.GRAPH:
        raise OrbitError("projection is defined for the graph action")
    n = p.action.n
    if n_small > n:
        raise OrbitError("projection target must not have more vertices")
    target = grp.graph_edges(n_small)
    ctx = context(target)
    out: dict = defaultdict(Fraction)
    for g, c in p.terms.items():
        verts = non_isolated(g, n)
        if len(verts) > n_small:
            continue
        relabel = {x: k for k, x in enumerate(verts)}
        w = graph_from_edges(n_small, [(relabel[i], relabel[j])
                                       for i, j, mult in edges_of(g, n) for _ in range(mult)])
        out[ctx.canonical(w)] += c
    return InvariantPolynomial(target, out)


def quasi_connected_decomposition(g: Sequence[int], action: ActionSpec) -> dict:
    """Write ``exps(g)`` as a polynomial in orbit sums of quasi-connected graphs.

    Returns ``{(c_1, ..., c_k): coefficient}`` where each key is a sorted tuple
    of canonical quasi-connected representatives standing for the product of
    their orbit sums.
    """
    if action.kind != grp.GRAPH:
        raise OrbitError("quasi-connected decomposition needs the graph action")
    ctx = context(action)
    memo: dict = {}

    def rec(h: Vector) -> dict:
        if h in memo:
            return memo[h]
        comps = components(h, action.n)
        if len(comps) <= 1:
            res = {(h,): Fraction(1)}
        else:
            prod_poly = InvariantPolynomial.one(action)
            for c in comps:
                prod_poly = prod_poly * InvariantPolynomial.orbit_sum(action, c)
            lead = prod_poly.terms.pop(h)
            res = defaultdict(Fraction)
            res[tuple(sorted((ctx.canonical(c) for c in comps), reverse=True))] += 1 / lead
            for other, coef in prod_poly.terms.items():
                if len(components(other, action.n)) >= len(comps):
                    raise AssertionError("superposition did not lose a component")
                for key, val in rec(other).items():
                    res[key] -= coef * val / lead
            res = {k: v for k, v in res.items() if v}
        memo[h] = res
        return res

    return rec(ctx.canonical(g))


def expand_decomposition(decomp: Mapping, action: ActionSpec) -> InvariantPolynomial:
    total = InvariantPolynomial(action)
    for factors, coef in decomp.items():
        term = InvariantPolynomial.one(action)
        for c in factors:
            term = term * InvariantPolynomial(action, {c: 1})
        total = total + term.scale(coef)
    return total
