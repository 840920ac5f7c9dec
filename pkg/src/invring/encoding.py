"""Text and JSON encodings of exponent vectors, actions and invariants.

Vectors are written ``g:<n>:<c1,c2,...>`` (graph edges, lexicographic pair
order) or ``d:<n>:<...>`` (digraph arcs, row-major, loops included).  When
every entry is below 10 the commas may be dropped: ``g:5:1100000000``.
Actions without vertices use ``v:<m>:<...>`` and take the action from context.

An invariant is a ``+``-separated list of terms ``[coef*]vector``, for example
``g:4:200000+2*g:4:110000``; coefficients may be rationals like ``3/2``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Sequence

from . import group as grp
from .group import ActionSpec
from .orbits import InvariantPolynomial, context


class EncodingError(ValueError):
    pass


_PREFIX = {grp.GRAPH: "g", grp.DIGRAPH: "d"}
_KIND = {"g": grp.GRAPH, "d": grp.DIGRAPH}


def _parse_entries(body: str) -> list[int]:
    try:
        if "," in body or not body.isdigit():
            return [int(x) for x in body.split(",")]
        return [int(c) for c in body]
    except ValueError:
        raise EncodingError(f"malformed entries {body!r}") from None


def parse_vector(text: str, action: ActionSpec | None = None) -> tuple[ActionSpec, tuple]:
    """Parse a vector encoding; returns the action it lives in and the vector."""
    parts = text.strip().split(":")
    if len(parts) != 3:
        raise EncodingError(f"expected <kind>:<n>:<entries>, got {text!r}")
    tag, size, body = parts
    try:
        size = int(size)
    except ValueError:
        raise EncodingError(f"bad size in {text!r}") from None
    if tag in _KIND:
        parsed = ActionSpec(_KIND[tag], size)
        if action is not None and action != parsed:
            raise EncodingError(f"{text!r} does not belong to {action.label()}")
        action = parsed
    elif tag == "v":
        if action is None:
            raise EncodingError("'v:' vectors need an action from context")
        if action.m != size:
            raise EncodingError(f"{text!r} has {size} positions, action has {action.m}")
    else:
        raise EncodingError(f"unknown vector kind {tag!r}")
    v = _parse_entries(body)
    if len(v) != action.m:
        raise EncodingError(f"{text!r}: expected {action.m} entries, got {len(v)}")
    if any(x < 0 for x in v):
        raise EncodingError("multiplicities must be nonnegative")
    return action, tuple(v)


def format_vector(v: Sequence[int], action: ActionSpec) -> str:
    tag = _PREFIX.get(action.kind, "v")
    size = action.n if tag != "v" else action.m
    v = [int(x) for x in v]
    body = "".join(map(str, v)) if all(x < 10 for x in v) else ",".join(map(str, v))
    return f"{tag}:{size}:{body}"


def parse_invariant(text: str, action: ActionSpec | None = None) -> InvariantPolynomial:
    """Parse ``[coef*]vector + ...``; each vector stands for its orbit sum."""
    terms = [t.strip() for t in text.split("+") if t.strip()]
    if not terms:
        raise EncodingError("empty invariant")
    out = None
    for t in terms:
        coef = Fraction(1)
        if "*" in t:
            c, t = t.split("*", 1)
            try:
                coef = Fraction(c.strip())
            except ValueError:
                raise EncodingError(f"bad coefficient {c!r}") from None
        action, v = parse_vector(t, action)
        p = InvariantPolynomial.orbit_sum(action, v).scale(coef)
        out = p if out is None else out + p
    return out


def format_invariant(p: InvariantPolynomial) -> str:
    if not p:
        return "0"
    parts = []
    for g in sorted(p.terms, key=lambda g: (sum(g), g), reverse=True):
        c = p.terms[g]
        enc = format_vector(g, p.action)
        parts.append(enc if c == 1 else f"{c}*{enc}")
    return " + ".join(parts)


# -- JSON ---------------------------------------------------------------------

def action_to_json(action: ActionSpec) -> dict:
    out = {"kind": action.kind, "n": action.n}
    if action.generators:
        out["generators"] = [list(g) for g in action.generators]
    return out


def action_from_json(obj: dict) -> ActionSpec:
    try:
        return ActionSpec(obj["kind"], int(obj["n"]),
                          tuple(tuple(g) for g in obj.get("generators", ())))
    except (KeyError, TypeError) as exc:
        raise EncodingError(f"bad action object: {exc}") from None


def invariant_to_json(p: InvariantPolynomial) -> dict:
    terms = sorted(p.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)
    return {"action": action_to_json(p.action),
            "terms": [[format_vector(g, p.action), str(c)] for g, c in terms]}


def invariant_from_json(obj: dict) -> InvariantPolynomial:
    action = action_from_json(obj["action"])
    ctx = context(action)
    terms = {}
    for enc, c in obj["terms"]:
        _, v = parse_vector(enc, action)
        if ctx.canonical(v) != v:
            raise EncodingError(f"{enc} is not a canonical representative")
        terms[v] = Fraction(c)
    return InvariantPolynomial(action, terms)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)
