"""Exact truncated power series and small polynomial predicates.

Coefficients are :class:`fractions.Fraction` throughout; callers that know
their series are integral use :meth:`TruncatedSeries.integers`, which checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence


class SeriesError(ValueError):
    pass


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series in one variable, known exactly up to ``z**bound``."""

    coefficients: tuple

    def __init__(self, coefficients: Iterable, bound: int | None = None):
        coeffs = [_frac(c) for c in coefficients]
        if bound is not None:
            if bound < 0:
                raise SeriesError("truncation bound must be nonnegative")
            coeffs = coeffs[: bound + 1] + [Fraction(0)] * (bound + 1 - len(coeffs))
        if not coeffs:
            raise SeriesError("a series needs at least the constant coefficient")
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def bound(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, d: int) -> Fraction:
        if d < 0 or d > self.bound:
            raise IndexError(f"degree {d} outside truncation bound {self.bound}")
        return self.coefficients[d]

    def __len__(self):
        return len(self.coefficients)

    def __iter__(self):
        return iter(self.coefficients)

    def integers(self) -> list[int]:
        out = []
        for d, c in enumerate(self.coefficients):
            if c.denominator != 1:
                raise SeriesError(f"coefficient of degree {d} is not integral: {c}")
            out.append(c.numerator)
        return out

    def _check(self, other: "TruncatedSeries"):
        if self.bound != other.bound:
            raise SeriesError(
                f"mismatched truncation bounds {self.bound} and {other.bound}")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(a + b for a, b in zip(self, other))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._check(other)
        return TruncatedSeries(a - b for a, b in zip(self, other))

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return series_mul(self, other)

    def scale(self, c) -> "TruncatedSeries":
        c = _frac(c)
        return TruncatedSeries(c * a for a in self)

    def truncate(self, bound: int) -> "TruncatedSeries":
        if bound > self.bound:
            raise SeriesError("cannot extend a truncated series")
        return TruncatedSeries(self.coefficients[: bound + 1])

    def __repr__(self):
        return f"TruncatedSeries({[str(c) for c in self.coefficients]})"


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    a._check(b)
    n = a.bound
    out = [Fraction(0)] * (n + 1)
    bc = b.coefficients
    for i, x in enumerate(a.coefficients):
        if not x:
            continue
        for j in range(n + 1 - i):
            y = bc[j]
            if y:
                out[i + j] += x * y
    return TruncatedSeries(out)


def geometric_factor(a: int, b: int, bound: int) -> TruncatedSeries:
    """Expansion of ``(1 - z**a) ** -b`` truncated at ``bound``."""
    if a < 1:
        raise SeriesError("degree of a geometric factor must be positive")
    if b < 0:
        raise SeriesError("multiplicity must be nonnegative")
    out = [0] * (bound + 1)
    for j in range(bound // a + 1):
        out[j * a] = comb(b + j - 1, j) if b else int(j == 0)
    return TruncatedSeries(out)


def one_minus_power(a: int, b: int, bound: int) -> TruncatedSeries:
    """Expansion of ``(1 - z**a) ** b`` (a polynomial) truncated at ``bound``."""
    out = [0] * (bound + 1)
    for j in range(b + 1):
        if j * a > bound:
            break
        out[j * a] = (-1) ** j * comb(b, j)
    return TruncatedSeries(out)


@dataclass(frozen=True)
class Dominance:
    dominated: bool
    first_failure: int | None = None

    def __bool__(self):
        return self.dominated


def dominates(a: TruncatedSeries, b: TruncatedSeries) -> Dominance:
    """Check that ``a`` is bounded coefficient-wise by ``b``.

    Returns the first degree where ``a[d] > b[d]`` when there is one.
    """
    a._check(b)
    for d, (x, y) in enumerate(zip(a, b)):
        if x > y:
            return Dominance(False, d)
    return Dominance(True, None)


@dataclass(frozen=True)
class DegreePolynomial:
    """Integer polynomial stored by degree, trailing zeros stripped."""

    coefficients: tuple

    def __init__(self, coefficients: Iterable[int]):
        coeffs = list(coefficients)
        for c in coeffs:
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise SeriesError(f"non-integral coefficient {c}")
            elif not isinstance(c, int):
                raise SeriesError(f"non-integer coefficient {c!r}")
        coeffs = [int(c) for c in coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def from_degrees(cls, degrees: Iterable[int]) -> "DegreePolynomial":
        degrees = list(degrees)
        out = [0] * (max(degrees, default=-1) + 1)
        for d in degrees:
            out[d] += 1
        return cls(out)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def low_degree(self) -> int:
        for d, c in enumerate(self.coefficients):
            if c:
                return d
        return -1

    def __getitem__(self, d: int) -> int:
        return self.coefficients[d] if 0 <= d < len(self.coefficients) else 0

    def __iter__(self):
        return iter(self.coefficients)

    def __len__(self):
        return len(self.coefficients)

    def value_at_one(self) -> int:
        return sum(self.coefficients)

    def degrees(self) -> list[int]:
        """The multiset of degrees, each repeated by its coefficient."""
        out = []
        for d, c in enumerate(self.coefficients):
            if c < 0:
                raise SeriesError("negative coefficient has no degree multiset")
            out.extend([d] * c)
        return out


def _as_list(p) -> list[int]:
    return list(p.coefficients) if isinstance(p, DegreePolynomial) else list(p)


def is_unimodal(p: DegreePolynomial | Sequence[int], skip_ends: bool = False) -> bool:
    """Coefficients weakly rise then weakly fall.

    Leading and trailing zeros are ignored, but an interior zero followed by a
    rise breaks unimodality.  With ``skip_ends`` the degree-0 coefficient and
    the top coefficient are excluded before testing.
    """
    c = _as_list(p)
    if skip_ends:
        c = c[1:-1]
    while c and c[0] == 0:
        c.pop(0)
    while c and c[-1] == 0:
        c.pop()
    i = 0
    while i + 1 < len(c) and c[i] <= c[i + 1]:
        i += 1
    while i + 1 < len(c) and c[i] >= c[i + 1]:
        i += 1
    return i >= len(c) - 1


def is_palindromic(p: DegreePolynomial | Sequence[int]) -> bool:
    c = _as_list(p)
    while c and c[-1] == 0:
        c.pop()
    return c == c[::-1]
