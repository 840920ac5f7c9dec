"""Sparse exact row reduction over the rationals.

Rows are stored as integer dicts with content 1 and a positive leading
coefficient (fraction-free); the basis is kept fully reduced, so a pivot key
appears in exactly one row.  The leading key of a vector is its greatest key.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Hashable, Mapping

from .group import ActionSpec
from .orbits import InvariantPolynomial


class ReductionError(ValueError):
    pass


def to_int_vector(terms: Mapping) -> dict:
    """Clear denominators of a rational vector; returns an integer dict."""
    den = 1
    for c in terms.values():
        if isinstance(c, Fraction):
            den = lcm(den, c.denominator)
    out = {}
    for k, c in terms.items():
        x = c * den
        x = x.numerator if isinstance(x, Fraction) else int(x)
        if x:
            out[k] = x
    return out


def _content(v: dict) -> int:
    g = 0
    for x in v.values():
        g = gcd(g, x)
        if g == 1:
            break
    return g


class RowBasis:
    """Reduced echelon basis of a subspace, keyed by leading monomial.

    With ``track=True`` every row also carries the rational combination of
    inserted inputs (by tag) that it equals, for auditing.
    """

    def __init__(self, track: bool = False):
        self.rows: dict = {}
        self.tags: dict = {}
        self.track = track
        self.combos: dict = {}
        self.inputs: dict = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def __len__(self):
        return len(self.rows)

    def _reduce(self, v: dict, combo: dict | None = None):
        """Reduce an integer vector in place semantics; returns (vector, scale, combo).

        The result equals ``scale * (v - sum c_i row_i)`` for some rational c_i.
        """
        v = dict(v)
        scale = Fraction(1)
        rows = self.rows
        for k in [k for k in v if k in rows]:
            a = v[k]
            r = rows[k]
            p = r[k]
            g = gcd(a, p)
            mv, mr = p // g, a // g
            if mv != 1:
                for x in v:
                    v[x] *= mv
                scale *= mv
                if combo is not None:
                    combo = {t: c * mv for t, c in combo.items()}
            for x, y in r.items():
                nv = v.get(x, 0) - mr * y
                if nv:
                    v[x] = nv
                else:
                    v.pop(x, None)
            if combo is not None:
                for t, c in self.combos[k].items():
                    combo[t] = combo.get(t, 0) - mr * c
            if v:
                g = _content(v)
                if g > 1:
                    for x in v:
                        v[x] //= g
                    scale /= g
                    if combo is not None:
                        combo = {t: c / g for t, c in combo.items()}
        return v, scale, combo

    def reduce_vector(self, v: Mapping) -> dict:
        """Residue of a rational vector modulo the span (exact, unscaled)."""
        iv = to_int_vector(v)
        if not iv:
            return {}
        den = Fraction(next(iter(iv.values())), next(iter(v[k] for k in iv)))
        res, scale, _ = self._reduce(iv)
        factor = 1 / (scale * den)
        return {k: x * factor for k, x in res.items()}

    def contains(self, v: Mapping) -> bool:
        iv = to_int_vector(v)
        return not iv or not self._reduce(iv)[0]

    def insert(self, v: Mapping, tag: Hashable = None, strict: bool = True) -> bool:
        """Add ``v`` to the span.  Returns False (or raises if strict) when dependent."""
        iv = to_int_vector(v)
        combo = None
        if self.track:
            den = Fraction(next(iter(iv.values())), next(iter(v[k] for k in iv))) if iv else 1
            combo = {tag: den}
            self.inputs[tag] = dict(v)
        res, scale, combo = self._reduce(iv, combo)
        if not res:
            if strict:
                raise ReductionError("vector reduces to zero")
            return False
        lead = max(res)
        g = _content(res)
        if res[lead] < 0:
            g = -g
        if g != 1:
            res = {k: x // g for k, x in res.items()}
            if combo is not None:
                combo = {t: c / g for t, c in combo.items()}
        p = res[lead]
        for k, r in list(self.rows.items()):
            a = r.get(lead)
            if not a:
                continue
            gg = gcd(a, p)
            mv, mr = p // gg, a // gg
            new = {x: y * mv for x, y in r.items()}
            for x, y in res.items():
                nv = new.get(x, 0) - mr * y
                if nv:
                    new[x] = nv
                else:
                    new.pop(x, None)
            c = _content(new)
            if new[k] < 0:
                c = -c
            self.rows[k] = {x: y // c for x, y in new.items()}
            if self.track:
                old = self.combos[k]
                merged = {t: cc * mv for t, cc in old.items()}
                for t, cc in combo.items():
                    merged[t] = merged.get(t, 0) - mr * cc
                self.combos[k] = {t: cc / c for t, cc in merged.items() if cc}
        self.rows[lead] = res
        self.tags[lead] = tag
        if self.track:
            self.combos[lead] = {t: c for t, c in combo.items() if c}
        return True

    def leading_keys(self) -> list:
        return sorted(self.rows, reverse=True)

    def monic_row(self, key) -> dict:
        r = self.rows[key]
        p = r[key]
        return {k: Fraction(x, p) for k, x in r.items()}


# -- invariant-polynomial wrappers --------------------------------------------

def reduce(p: InvariantPolynomial, L: RowBasis) -> InvariantPolynomial:
    """Residue of ``p`` modulo ``span(L)``; zero iff ``p`` lies in the span."""
    return InvariantPolynomial(p.action, L.reduce_vector(p.terms))


def insert(L: RowBasis, p: InvariantPolynomial, tag: Hashable = None) -> RowBasis:
    """Gauss step: add ``p`` to ``L`` (raises if ``p`` is already in the span)."""
    L.insert(p.terms, tag)
    return L


def row_polynomial(L: RowBasis, key, action: ActionSpec) -> InvariantPolynomial:
    return InvariantPolynomial(action, L.monic_row(key))
