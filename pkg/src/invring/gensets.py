"""Generating sets, secondary invariants and subalgebra membership.

Everything works degree by degree inside homogeneous components, in the
orbit-sum basis.  Two facts keep the spanning sets small:

* if ``S`` generates every component below ``d`` then ``K[I_<d]_d`` is spanned
  by ``g * exps(h)`` for generators ``g`` of degree ``k < d`` and orbit sums
  ``h`` of degree ``d - k``;
* the ideal generated by parameters ``theta_i`` has degree-``d`` part spanned
  by ``theta_i * exps(h)`` with ``deg h = d - deg theta_i``.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .group import ActionSpec
from .hilbert import hilbert_series, secondary_degrees
from .kernel import DegreePolynomial
from .linalg import RowBasis
from .orbits import InvariantPolynomial, _multiply, context

log = logging.getLogger(__name__)

USUAL = "usual"
CHAIN = "chain"


class EnumerationExhausted(RuntimeError):
    pass


def multiply(p: InvariantPolynomial, q: InvariantPolynomial, product: str = USUAL) -> InvariantPolynomial:
    if product not in (USUAL, CHAIN):
        raise ValueError(f"unknown product {product!r}")
    return _multiply(p, q, chain=product == CHAIN)


def _times_orbit(g: InvariantPolynomial, h, product: str) -> dict:
    """Terms of ``g * exps(h)`` as a rational dict."""
    ctx = context(g.action)
    chain = product == CHAIN
    out: dict = defaultdict(int)
    for k, a in g.terms.items():
        for H, c in ctx.constants(k, h, chain).items():
            out[H] += a * c
    return {k: v for k, v in out.items() if v}


def default_next_invariant(action: ActionSpec) -> Callable[[int], Iterable[InvariantPolynomial]]:
    ctx = context(action)

    def nxt(d):
        for g in ctx.level(d):
            yield InvariantPolynomial(action, {g: 1})
    return nxt


def reversed_next_invariant(action: ActionSpec) -> Callable[[int], Iterable[InvariantPolynomial]]:
    ctx = context(action)

    def nxt(d):
        for g in reversed(ctx.level(d)):
            yield InvariantPolynomial(action, {g: 1})
    return nxt


def dimension(action: ActionSpec, d: int) -> int:
    return len(context(action).level(d))


@dataclass
class Generator:
    poly: InvariantPolynomial
    degree: int
    kind: str  # "primary-kept", "irreducible-secondary" or "direct"


@dataclass
class MgsReport:
    action: ActionSpec
    generators: list
    s_d: DegreePolynomial
    degree_cap: int
    product: str = USUAL
    complete: bool = False
    dims: list = field(default_factory=list)

    @property
    def beta_observed(self) -> int:
        return max((g.degree for g in self.generators), default=0)

    @property
    def degrees(self) -> list[int]:
        return sorted(g.degree for g in self.generators)

    def to_json(self) -> dict:
        from .encoding import action_to_json, invariant_to_json
        return {
            "action": action_to_json(self.action),
            "product": self.product,
            "degree_cap": self.degree_cap,
            "complete": self.complete,
            "beta_observed": self.beta_observed,
            "s_d": list(self.s_d.coefficients),
            "dimensions": list(self.dims),
            "generators": [{"degree": g.degree, "kind": g.kind,
                            "invariant": invariant_to_json(g.poly)} for g in self.generators],
        }


def _complete_bound(action: ActionSpec) -> int:
    m = action.m
    return max(m, m * (m - 1) // 2)


def _lower_products(L: RowBasis, gens: Sequence[Generator], d: int, dim: int, product: str):
    """Insert ``g * exps(h)`` into ``L`` for generators below degree d until full."""
    ctx = context(gens[0].poly.action) if gens else None
    for g in gens:
        if g.degree >= d:
            continue
        for h in ctx.level(d - g.degree):
            if L.rank == dim:
                return
            v = _times_orbit(g.poly, h, product)
            if v:
                L.insert(v, strict=False)


def minimal_generating_set(action: ActionSpec, degree_cap: int, product: str = USUAL,
                           next_invariant: Callable | None = None) -> MgsReport:
    """Homogeneous minimal generating set up to ``degree_cap``, as orbit sums.

    At each degree the products of earlier generators are spanned first, then
    candidates from ``next_invariant`` (orbit sums in enumeration order by
    default) are added whenever they are independent.
    """
    nxt = next_invariant or default_next_invariant(action)
    gens: list[Generator] = []
    s = [0] * (degree_cap + 1)
    dims = [1]
    for d in range(1, degree_cap + 1):
        dim = dimension(action, d)
        dims.append(dim)
        L = RowBasis()
        _lower_products(L, gens, d, dim, product)
        added = 0
        if L.rank < dim:
            for p in nxt(d):
                if L.rank == dim:
                    break
                if L.insert(p.terms, strict=False):
                    gens.append(Generator(p, d, "direct"))
                    added += 1
        if L.rank != dim:
            raise EnumerationExhausted(f"candidates do not span degree {d}")
        s[d] = added
        log.info("degree %d: dim %d, %d new generators", d, dim, added)
    return MgsReport(action, gens, DegreePolynomial(s), degree_cap, product,
                     degree_cap >= _complete_bound(action), dims)


def s_d_by_definition(action: ActionSpec, degree_cap: int, product: str = USUAL) -> list[int]:
    """``dim I_d - dim K[I_<d]_d`` from all products of two lower-degree orbit sums."""
    ctx = context(action)
    out = [0]
    for d in range(1, degree_cap + 1):
        dim = len(ctx.level(d))
        L = RowBasis()
        for k in range(1, d // 2 + 1):
            for g in ctx.level(k):
                for h in ctx.level(d - k):
                    v = ctx.constants(g, h, product == CHAIN)
                    if v:
                        L.insert(v, strict=False)
        out.append(dim - L.rank)
    return out


# -- subalgebra membership ----------------------------------------------------

class Subalgebra:
    """The subalgebra generated by homogeneous invariants, one degree at a time."""

    def __init__(self, generators: Iterable[InvariantPolynomial], product: str = USUAL):
        gens = [g for g in generators if g]
        if not gens:
            raise ValueError("no generators")
        self.action = gens[0].action
        self.product = product
        self.by_degree: dict = defaultdict(list)
        for g in gens:
            d = g.degree
            if d > 0:
                self.by_degree[d].append(g)
        self._spans: dict = {}

    def span(self, d: int) -> RowBasis:
        if d in self._spans:
            return self._spans[d]
        L = RowBasis()
        dim = dimension(self.action, d)
        for g in self.by_degree.get(d, []):
            L.insert(g.terms, strict=False)
        for k in sorted(self.by_degree):
            if k >= d or L.rank == dim:
                continue
            lower = self.span(d - k)
            rows = [InvariantPolynomial(self.action, lower.monic_row(key)) for key in lower.leading_keys()]
            for g in self.by_degree[k]:
                for r in rows:
                    if L.rank == dim:
                        break
                    v = multiply(g, r, self.product).terms
                    if v:
                        L.insert(v, strict=False)
        self._spans[d] = L
        return L

    def contains(self, p: InvariantPolynomial):
        """(membership, residue) for a homogeneous invariant."""
        if not p:
            return True, p
        d = p.degree
        if d == 0:
            return True, InvariantPolynomial(p.action)
        res = InvariantPolynomial(p.action, self.span(d).reduce_vector(p.terms))
        return not res, res


def subalgebra_membership(p: InvariantPolynomial, generators: Iterable[InvariantPolynomial],
                          degree_cap: int | None = None, product: str = USUAL):
    if degree_cap is not None and p and p.degree > degree_cap:
        raise ValueError("invariant degree exceeds the cap")
    return Subalgebra(generators, product).contains(p)


def generates_up_to(generators: Iterable[InvariantPolynomial], action: ActionSpec,
                    degree_cap: int, product: str = USUAL) -> tuple[bool, int | None]:
    """Whether the generators span every component up to the cap; first gap otherwise."""
    A = Subalgebra(generators, product)
    for d in range(1, degree_cap + 1):
        if A.span(d).rank != dimension(action, d):
            return False, d
    return True, None


# -- secondary invariants -----------------------------------------------------

@dataclass
class SecondaryReport:
    secondaries: dict          # degree -> list of InvariantPolynomial
    irreducibles: dict         # degree -> list of InvariantPolynomial
    expected: DegreePolynomial
    theta_ranks: dict          # degree -> dim <theta>_d
    dims: dict                 # degree -> dim I_d
    kept_primaries: list
    removable_primaries: list
    degree_cap: int

    @property
    def count(self) -> int:
        return sum(len(v) for v in self.secondaries.values())

    def counts(self) -> list[int]:
        return [len(self.secondaries.get(d, [])) for d in range(self.degree_cap + 1)]

    @property
    def generators(self) -> list[tuple[InvariantPolynomial, int, str]]:
        out = [(p, p.degree, "primary-kept") for p in self.kept_primaries]
        for d in sorted(self.irreducibles):
            out += [(p, d, "irreducible-secondary") for p in self.irreducibles[d]]
        return sorted(out, key=lambda t: t[1])

    def to_json(self) -> dict:
        from .encoding import invariant_to_json
        return {
            "degree_cap": self.degree_cap,
            "count": self.count,
            "counts": self.counts(),
            "expected": list(self.expected.coefficients),
            "theta_ranks": self.theta_ranks,
            "dimensions": self.dims,
            "irreducibles": {d: [invariant_to_json(p) for p in ps] for d, ps in self.irreducibles.items()},
            "removable_primaries": [p.degree for p in self.removable_primaries],
            "generator_degrees": [d for _, d, _ in self.generators],
        }


def algorithm1_secondaries(sop: Sequence[InvariantPolynomial], degree_cap: int,
                           next_invariant: Callable | None = None,
                           product: str = USUAL) -> SecondaryReport:
    """Secondary invariants over a homogeneous system of parameters.

    The number of secondaries in each degree is read off the Hilbert series
    and used as the stopping rule for the candidate loop.
    """
    if not sop:
        raise ValueError("empty system of parameters")
    action = sop[0].action
    if len(sop) != action.m:
        raise ValueError(f"need {action.m} parameters, got {len(sop)}")
    degs = [p.degree for p in sop]
    H = hilbert_series(action, sum(degs))
    expected = secondary_degrees(H, degs)
    if degree_cap < 0:
        raise ValueError("degree cap must be nonnegative")
    nxt = next_invariant or default_next_invariant(action)
    ctx = context(action)
    one = InvariantPolynomial.one(action)
    secondaries = {0: [one]}
    irreducibles: dict = {}
    theta_ranks, dims = {}, {0: 1}
    for d in range(1, degree_cap + 1):
        dim = len(ctx.level(d))
        dims[d] = dim
        L = RowBasis()
        for theta, k in zip(sop, degs):
            if k > d:
                continue
            for h in ctx.level(d - k):
                v = _times_orbit(theta, h, product)
                if v:
                    L.insert(v, strict=False)
        theta_ranks[d] = L.rank
        want = expected[d]
        found = []
        for a in sorted(irreducibles):
            if a >= d:
                break
            for irr in irreducibles[a]:
                for eta in secondaries.get(d - a, []):
                    if len(found) == want:
                        continue
                    p = multiply(irr, eta, product)
                    if p and L.insert(p.terms, strict=False):
                        found.append(p)
        irr_d = []
        if len(found) < want:
            for p in nxt(d):
                if L.insert(p.terms, strict=False):
                    found.append(p)
                    irr_d.append(p)
                    if len(found) == want:
                        break
        if len(found) != want:
            raise EnumerationExhausted(
                f"degree {d}: found {len(found)} secondaries, expected {want}")
        secondaries[d] = found
        if irr_d:
            irreducibles[d] = irr_d
    kept, removable = _prune_primaries(action, sop, irreducibles, degree_cap, product)
    return SecondaryReport(secondaries, irreducibles, expected, theta_ranks, dims,
                           kept, removable, degree_cap)


def _prune_primaries(action, sop, irreducibles, degree_cap, product):
    """Keep a primary only if it is independent of lower-degree products."""
    ctx = context(action)
    kept_gens: list[Generator] = []
    kept, removable = [], []
    top = max(max((p.degree for p in sop), default=0), max(irreducibles, default=0))
    for d in range(1, min(top, degree_cap) + 1):
        dim = len(ctx.level(d))
        L = RowBasis()
        _lower_products(L, kept_gens, d, dim, product)
        for p in (q for q in sop if q.degree == d):
            if L.insert(p.terms, strict=False):
                kept.append(p)
                kept_gens.append(Generator(p, d, "primary-kept"))
            else:
                removable.append(p)
        for p in irreducibles.get(d, []):
            if not L.insert(p.terms, strict=False):
                raise AssertionError("irreducible secondary became dependent")
            kept_gens.append(Generator(p, d, "irreducible-secondary"))
    return kept, removable


def elementary_parameters(action: ActionSpec) -> list[InvariantPolynomial]:
    from .orbits import elementary_symmetric
    return [elementary_symmetric(k, action) for k in range(1, action.m + 1)]
