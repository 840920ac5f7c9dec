"""Reproduction suites: each returns a :class:`Verdict` with enough evidence to re-audit.

Suites are registered in :data:`SUITES` under a short name.  Runs flagged
slow are skipped by :func:`run_suites` unless asked for.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from typing import Callable

from . import group as grp
from .chain import chain_mul, chain_power, chain_transfer_check
from .encoding import format_vector
from .gensets import (Subalgebra, algorithm1_secondaries, elementary_parameters,
                      minimal_generating_set)
from .hilbert import (InfeasibleDegrees, conjectured_sop_degrees, dominance_certificate,
                      elementary_sop_degrees, group_order, hilbert_series,
                      limit_hilbert_series, min_edges_formula, mu_formula,
                      quasi_connected_generator_degrees, secondary_degrees,
                      secondary_stats, simple_digraph_generator_degrees,
                      simple_graph_generator_degrees)
from .kernel import is_palindromic, is_unimodal
from .orbits import (Elementary, InvariantPolynomial, automorphism_scan, canonical_form,
                     context, elementary_symmetric, graph_from_edges, power_sum,
                     separates, simple_graph_orbit_sums)


@dataclass
class Verdict:
    suite_name: str
    passed: bool
    evidence: dict = field(default_factory=dict)
    runtime: float = 0.0

    def to_json(self) -> dict:
        return asdict(self)

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.suite_name} ({self.runtime:.2f}s)"


def _timed(name: str, fn: Callable[[], tuple[bool, dict]]) -> Verdict:
    t = time.perf_counter()
    ok, evidence = fn()
    return Verdict(name, bool(ok), evidence, round(time.perf_counter() - t, 3))


# -- generating sets ----------------------------------------------------------

ASLAKSEN_DEGREES = [1, 2, 2, 3, 3, 3, 4, 4, 5]


def verify_aslaksen(keep_removable: bool = False) -> Verdict:
    """n=4: nine generators of degrees 1,2,2,3,3,3,4,4,5.

    ``keep_removable=True`` is a negative control: the redundant elementary
    symmetric polynomial is kept, which must make the suite fail.
    """
    def run():
        A = grp.graph_edges(4)
        mgs = minimal_generating_set(A, 15)
        sec = algorithm1_secondaries(elementary_parameters(A), 15)
        alg_degrees = sorted(d for _, d, _ in sec.generators)
        if keep_removable:
            alg_degrees = sorted(alg_degrees + [p.degree for p in sec.removable_primaries])
        s = list(mgs.s_d.coefficients)
        ok = (mgs.degrees == ASLAKSEN_DEGREES and alg_degrees == ASLAKSEN_DEGREES
              and mgs.beta_observed == 5 and is_unimodal(s[1:]))
        return ok, {"mgs_degrees": mgs.degrees, "secondary_route_degrees": alg_degrees,
                    "s_d": s, "beta": mgs.beta_observed, "complete": mgs.complete,
                    "removable_primary_degrees": [p.degree for p in sec.removable_primaries]}
    name = "aslaksen" + ("[negative-control]" if keep_removable else "")
    return _timed(name, run)


def verify_n5_partial(cap: int = 9) -> Verdict:
    def run():
        A = grp.graph_edges(5)
        mgs = minimal_generating_set(A, cap)
        s = list(mgs.s_d.coefficients) + [0] * (cap + 1 - len(mgs.s_d.coefficients))
        upto9 = sum(s[:10])
        ok = upto9 == 57
        ev = {"s_d": s, "generators_deg_le_9": upto9, "dimensions": mgs.dims}
        if cap >= 10:
            ev["s_10"] = s[10]
            ev["dim_10"] = mgs.dims[10]
            ok = ok and s[10] == 0 and mgs.dims[10] == 974
        return ok, ev
    return _timed(f"n5-partial[cap={cap}]", run)


# -- dominance certificates ---------------------------------------------------

def verify_simple_not_generating(n: int, bound: int = 6) -> Verdict:
    def run():
        H = hilbert_series(grp.graph_edges(n), bound)
        cert = dominance_certificate(H, simple_graph_generator_degrees(n, bound), bound)
        ok = cert.dominated if n <= 4 else cert.first_failure == 4
        return ok, {"hilbert": cert.hilbert, "free_bound": cert.free_bound,
                    "first_failure": cert.first_failure}
    return _timed(f"simple-not-generating[n={n}]", run)


def verify_pouzet_disproof(n: int = 11, bound: int = 24) -> Verdict:
    def run():
        H = hilbert_series(grp.graph_edges(n), bound)
        cert = dominance_certificate(H, quasi_connected_generator_degrees(n, bound), bound)
        ev = {"first_failure": cert.first_failure, "bound": bound,
              "hilbert": cert.hilbert, "free_bound": cert.free_bound}
        if n < 11:
            ev["claim"] = "none (recorded only)"
            return True, ev
        return cert.first_failure is not None, ev
    return _timed(f"pouzet[n={n}]", run)


GRIGORIEV_WITNESSES = ((0, 2, 0, 0, 0, 1, 0, 0, 0), (0, 1, 0, 0, 0, 2, 0, 0, 0))


def verify_grigoriev(bound: int = 12) -> Verdict:
    """Digraphs on 3 vertices: simple-digraph orbit sums do not generate."""
    def run():
        A = grp.digraph_arcs(3)
        H = hilbert_series(A, bound)
        cert = dominance_certificate(H, simple_digraph_generator_degrees(3, bound), bound)
        gens = [p for d in range(1, 4) for p in simple_graph_orbit_sums(d, A)]
        algebra = Subalgebra(gens)
        witnesses = {}
        for w in GRIGORIEV_WITNESSES:
            inside, residue = algebra.contains(InvariantPolynomial.orbit_sum(A, w))
            witnesses[format_vector(w, A)] = {"member": inside, "residue_terms": len(residue.terms)}
        outside = all(not v["member"] for v in witnesses.values())
        ok = cert.first_failure == 5 and outside
        return ok, {"first_failure": cert.first_failure, "hilbert": cert.hilbert,
                    "free_bound": cert.free_bound, "witnesses": witnesses,
                    "witnesses_outside": outside}
    return _timed("grigoriev", run)


# -- counting and degree statistics -------------------------------------------

def min_edges_no_odd_automorphism(n: int, max_degree: int = 12) -> int:
    """Fewest edges of a multigraph on n vertices whose automorphisms are all even."""
    A = grp.graph_edges(n)
    ctx = context(A)
    for d in range(0, max_degree + 1):
        for g in ctx.level(d):
            if not automorphism_scan(g, A)[1]:
                return d
    raise RuntimeError(f"no such multigraph with at most {max_degree} edges")


def verify_mu(ns=(4, 5, 6, 7)) -> Verdict:
    def run():
        found = {n: min_edges_no_odd_automorphism(n) for n in ns}
        expected = {n: min_edges_formula(n) for n in ns}
        return found == expected, {"brute_force": found, "formula": expected,
                                   "mu": {n: mu_formula(n) for n in ns}}
    return _timed("mu", run)


def verify_sign_lemma(max_n: int = 7) -> Verdict:
    def run():
        res = {n: grp.sign_lemma_holds(n) for n in range(2, max_n + 1)}
        return all(res.values()), {"holds": res}
    return _timed("sign-lemma", run)


def verify_secondary_counts() -> Verdict:
    """Elementary parameters: t=30 and top degree 15 at n=4, top degree 42 at n=5."""
    def run():
        ev = {}
        for n in (4, 5):
            A = grp.graph_edges(n)
            degs = elementary_sop_degrees(n)
            st = secondary_stats(degs, group_order(A), mu_formula(n))
            poly = secondary_degrees(hilbert_series(A, sum(degs)), degs)
            ev[n] = {"t": st.count, "e_t": st.top_degree, "poly_degree": poly.degree,
                     "poly_sum": poly.value_at_one()}
        A = grp.graph_edges(4)
        sec = algorithm1_secondaries(elementary_parameters(A), 15)
        ev["constructed_counts"] = sec.counts()
        ev["hilbert_counts"] = list(sec.expected.coefficients)
        ok = (ev[4]["t"] == 30 and ev[4]["e_t"] == 15 and ev[5]["e_t"] == 42
              and ev[4]["poly_sum"] == 30 and ev[5]["poly_degree"] == 42
              and sec.count == 30 and sec.counts() == ev["hilbert_counts"])
        return ok, ev
    return _timed("secondary-counts", run)


def verify_gorenstein(n: int) -> Verdict:
    def run():
        degs = elementary_sop_degrees(n)
        poly = secondary_degrees(hilbert_series(grp.graph_edges(n), sum(degs)), degs)
        pal = is_palindromic(poly)
        ev = {"palindromic": pal, "degree": poly.degree, "count": poly.value_at_one()}
        if n <= 5:
            ev["coefficients"] = list(poly.coefficients)
        if n % 2:
            ev["claim"] = "none (recorded only)"
            return True, ev
        return pal, ev
    return _timed(f"gorenstein[n={n}]", run)


def verify_limit(n: int) -> Verdict:
    def run():
        k = n // 2
        H = hilbert_series(grp.graph_edges(n), k + 1).integers()
        L = limit_hilbert_series(k + 1).integers()
        ok = H[:k + 1] == L[:k + 1] and H[k + 1] != L[k + 1]
        return ok, {"agree_through": k, "finite": H, "limit": L}
    return _timed(f"limit[n={n}]", run)


def verify_conjectured_degrees(n: int) -> Verdict:
    def run():
        degs = conjectured_sop_degrees(n)
        try:
            poly = secondary_degrees(hilbert_series(grp.graph_edges(n), sum(degs)), degs)
        except InfeasibleDegrees as exc:
            return False, {"degrees": degs, "infeasible_at": exc.degree}
        return True, {"degrees": degs, "top_degree": poly.degree, "count": poly.value_at_one()}
    return _timed(f"conjectured-degrees[n={n}]", run)


# -- separation, unimodality, chain product -----------------------------------

def field_counterexample_pairs():
    G = grp.graph_edges(5)
    star = graph_from_edges(5, [(0, 1), (0, 2), (0, 3)])
    triangle = graph_from_edges(5, [(0, 1), (0, 2), (1, 2)])
    D = grp.digraph_arcs(5)
    arcs = lambda pairs: tuple(1 if (i, j) in pairs else 0 for i, j in grp.arc_positions(5))
    d1 = arcs({(0, 1), (0, 2), (2, 3), (2, 4)})
    d2 = arcs({(0, 1), (0, 2), (4, 2), (4, 3)})
    p_graph = InvariantPolynomial.orbit_sum(G, graph_from_edges(5, [(0, 1), (0, 2)]))
    p_digraph = InvariantPolynomial.orbit_sum(D, arcs({(0, 1), (0, 2)}))
    return [(G, star, triangle, p_graph), (D, d1, d2, p_digraph)]


def verify_field_counterexamples() -> Verdict:
    def run():
        ev = {}
        ok = True
        for action, a, b, p in field_counterexample_pairs():
            S = [Elementary(k, action.m) for k in range(1, action.m + 1)] + [p]
            unsep = not separates(S, a, b)
            distinct = canonical_form(a, action) != canonical_form(b, action)
            ev[action.kind] = {"a": format_vector(a, action), "b": format_vector(b, action),
                               "unseparated": unsep, "non_isomorphic": distinct,
                               "p_values": [str(p.evaluate(a)), str(p.evaluate(b))]}
            ok = ok and unsep and distinct
        return ok, ev
    return _timed("field-counterexamples", run)


def verify_unimodality() -> Verdict:
    def run():
        s4 = list(minimal_generating_set(grp.graph_edges(4), 9).s_d.coefficients)
        A4 = grp.explicit(4, grp.alternating_generators(4))
        mgs = minimal_generating_set(A4, 6)
        sa = list(mgs.s_d.coefficients)
        ok = (is_unimodal(s4[1:]) and mgs.degrees == [1, 2, 3, 4, 6]
              and not is_unimodal(sa[1:]))
        return ok, {"inv4_s_d": s4, "a4_s_d": sa, "a4_degrees": mgs.degrees,
                    "a4_order": group_order(A4)}
    return _timed("unimodality", run)


def verify_chain_product() -> Verdict:
    def run():
        A = grp.graph_edges(4)
        e1 = elementary_symmetric(1, A)
        double = InvariantPolynomial.orbit_sum(A, (2, 0, 0, 0, 0, 0))
        square_ok = chain_mul(e1, e1) == double
        powers = {k: chain_power(e1, k) == power_sum(k, A) for k in range(1, 6)}
        transfers = {n: chain_transfer_check(n, cap) for n, cap in ((3, 3), (4, 5))}
        ok = square_ok and all(powers.values()) and all(r.passed for r in transfers.values())
        return ok, {"edge_star_edge_is_double_edge": square_ok, "power_collapse": powers,
                    "transfer": {n: {"generates_usual": r.generates_usual,
                                     "chain_degrees": r.chain_degrees,
                                     "usual_degrees": r.usual_degrees}
                                 for n, r in transfers.items()}}
    return _timed("chain-product", run)


# -- registry -----------------------------------------------------------------

@dataclass(frozen=True)
class Suite:
    name: str
    run: Callable[[], list]
    slow: bool = False


def _many(*fns):
    return lambda: [f() for f in fns]


SUITES = {s.name: s for s in [
    Suite("aslaksen", _many(verify_aslaksen)),
    Suite("aslaksen-control", _many(lambda: verify_aslaksen(keep_removable=True))),
    Suite("n5-partial", _many(lambda: verify_n5_partial(9))),
    Suite("n5-cap10", _many(lambda: verify_n5_partial(10)), slow=True),
    Suite("simple-not-generating",
          _many(*[lambda n=n: verify_simple_not_generating(n) for n in (4, 5, 6, 7, 8)])),
    Suite("pouzet", _many(lambda: verify_pouzet_disproof(10, 24),
                          lambda: verify_pouzet_disproof(11, 24)), slow=True),
    Suite("grigoriev", _many(verify_grigoriev)),
    Suite("mu", _many(verify_mu)),
    Suite("sign-lemma", _many(verify_sign_lemma)),
    Suite("secondary-counts", _many(verify_secondary_counts)),
    Suite("gorenstein", _many(*[lambda n=n: verify_gorenstein(n) for n in (4, 5, 6)])),
    Suite("limit", _many(*[lambda n=n: verify_limit(n) for n in range(2, 11)])),
    Suite("conjectured-degrees",
          _many(*[lambda n=n: verify_conjectured_degrees(n) for n in range(3, 11)])),
    Suite("field-counterexamples", _many(verify_field_counterexamples)),
    Suite("unimodality", _many(verify_unimodality)),
    Suite("chain-product", _many(verify_chain_product)),
]}

CONTROLS = {"aslaksen-control"}


def run_suites(names, slow: bool = False, threads: int = 1) -> list[Verdict]:
    """Run suites by name (``"all"`` for every non-control suite), in registry order."""
    if names in ("all", ["all"]):
        chosen = [s for s in SUITES.values() if s.name not in CONTROLS and (slow or not s.slow)]
    else:
        names = [names] if isinstance(names, str) else list(names)
        unknown = [n for n in names if n not in SUITES]
        if unknown:
            raise KeyError(f"unknown suite(s): {', '.join(unknown)}")
        chosen = [SUITES[n] for n in names]
    if threads > 1 and len(chosen) > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda s: s.run(), chosen))
    else:
        results = [s.run() for s in chosen]
    return [v for batch in results for v in batch]
