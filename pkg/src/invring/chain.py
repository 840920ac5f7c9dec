"""Shape grading and the chain product on the edge-action invariant ring.

A multigraph with edge multiplicities ``v`` is the superposition of the
simple graphs ``L_i = {e : v_e >= i}``, a chain ``L_1 ⊇ L_2 ⊇ ...``.  Its
shape is the list of layer sizes.  The chain product of two monomials is
their usual product when the two chains merge into one chain, and zero
otherwise; orbit-level structure constants come from
:meth:`invring.orbits.ActionContext.constants` with ``chain=True``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import group as grp
from .gensets import CHAIN, USUAL, generates_up_to, minimal_generating_set
from .orbits import InvariantPolynomial, _multiply


@dataclass(frozen=True)
class MultiChain:
    layers: tuple  # frozensets of positions, weakly decreasing by inclusion

    def __post_init__(self):
        for a, b in zip(self.layers, self.layers[1:]):
            if not b <= a:
                raise ValueError("layers must be nested")

    @property
    def shape(self) -> tuple:
        return tuple(len(layer) for layer in self.layers)


def layers(v: Sequence[int]) -> MultiChain:
    v = [int(x) for x in v]
    top = max(v, default=0)
    return MultiChain(tuple(frozenset(i for i, x in enumerate(v) if x >= k)
                            for k in range(1, top + 1)))


def shape(v: Sequence[int]) -> tuple:
    return layers(v).shape


def merged_shape(a: Sequence[int], b: Sequence[int]) -> tuple:
    return tuple(sorted(shape(a) + shape(b), reverse=True))


def mergeable(a, b) -> bool:
    """Every layer of ``a`` is comparable with every layer of ``b``.

    Accepts :class:`MultiChain` objects or exponent vectors.
    """
    if not isinstance(a, MultiChain):
        a = layers(a)
    if not isinstance(b, MultiChain):
        b = layers(b)
    return all(x <= y or y <= x for x in a.layers for y in b.layers)


def chain_mul(p: InvariantPolynomial, q: InvariantPolynomial) -> InvariantPolynomial:
    return _multiply(p, q, chain=True)


def chain_power(p: InvariantPolynomial, k: int) -> InvariantPolynomial:
    if k < 1:
        raise ValueError("power must be positive")
    out = p
    for _ in range(k - 1):
        out = chain_mul(out, p)
    return out


def is_finely_homogeneous(p: InvariantPolynomial) -> bool:
    return len({shape(g) for g in p.terms}) <= 1


def shape_component(p: InvariantPolynomial, lam: Sequence[int]) -> InvariantPolynomial:
    lam = tuple(lam)
    return InvariantPolynomial(p.action, {g: c for g, c in p.terms.items() if shape(g) == lam})


@dataclass
class TransferReport:
    n: int
    degree_cap: int
    chain_degrees: list
    usual_degrees: list
    generates_usual: bool
    first_gap: int | None

    @property
    def passed(self) -> bool:
        return self.generates_usual and len(self.chain_degrees) >= len(self.usual_degrees)


def chain_transfer_check(n: int, degree_cap: int) -> TransferReport:
    """A chain-product generating set also generates under the usual product."""
    action = grp.graph_edges(n)
    chain = minimal_generating_set(action, degree_cap, product=CHAIN)
    usual = minimal_generating_set(action, degree_cap, product=USUAL)
    ok, gap = generates_up_to([g.poly for g in chain.generators], action, degree_cap, USUAL)
    return TransferReport(n, degree_cap, chain.degrees, usual.degrees, ok, gap)
