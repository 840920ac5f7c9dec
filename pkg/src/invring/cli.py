"""``invring`` command-line front end.

Exit codes: 0 on success, 1 when a mathematical check fails (for instance
``dominance --expect dominated`` on a failing certificate), 2 on usage errors.
Results can be cached on disk, keyed by a hash of the engine version, the
subcommand and its full configuration.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
from pathlib import Path

from . import __version__
from . import group as grp
from .chain import chain_mul
from .encoding import (EncodingError, format_invariant, format_vector, invariant_to_json,
                       parse_invariant, parse_vector)
from .gensets import algorithm1_secondaries, elementary_parameters, minimal_generating_set
from .hilbert import (InfeasibleDegrees, connected_multigraph_counts, conjectured_sop_degrees,
                      dominance_certificate, elementary_sop_degrees, hilbert_series,
                      limit_hilbert_series, mu_formula, quasi_connected_generator_degrees,
                      secondary_degrees, simple_digraph_generator_degrees,
                      simple_graph_generator_degrees)
from .orbits import Elementary, context, evaluate, invariant_mul, separates

log = logging.getLogger("invring")

CACHE_ENV = "INVRING_CACHE_DIR"
THREADS_ENV = "INVRING_THREADS"


class UsageError(Exception):
    pass


class Outcome:
    """Text and JSON renderings of a result plus the exit code."""

    def __init__(self, text: str, data, code: int = 0):
        self.text, self.data, self.code = text, data, code


# -- actions ------------------------------------------------------------------

def make_action(kind: str, n: int) -> grp.ActionSpec:
    if n < 1:
        raise UsageError("--n must be positive")
    if kind == "graph":
        return grp.graph_edges(n)
    if kind == "digraph":
        return grp.digraph_arcs(n)
    if kind == "natural":
        return grp.natural(n)
    if kind == "alternating":
        if n < 3:
            raise UsageError("the alternating action needs at least 3 points")
        return grp.explicit(n, grp.alternating_generators(n))
    raise UsageError(f"unknown kind {kind}")


def _invariant(text, action):
    return parse_invariant(text, action)


def _series_text(coeffs) -> str:
    return " ".join(str(c) for c in coeffs)


# -- subcommands --------------------------------------------------------------

def cmd_hilbert(a):
    H = hilbert_series(make_action(a.kind, a.n), a.bound).integers()
    return Outcome(_series_text(H), {"coefficients": H})


def cmd_dimension(a):
    action = make_action(a.kind, a.n)
    by_series = hilbert_series(action, a.degree).integers()[a.degree]
    data = {"degree": a.degree, "hilbert": by_series}
    if not a.series_only:
        data["enumeration"] = len(context(action).level(a.degree))
    code = 0 if data.get("enumeration", by_series) == by_series else 1
    return Outcome(str(by_series), data, code)


def cmd_enumerate(a):
    action = make_action(a.kind, a.n)
    ctx = context(action)
    rows = [{"graph": format_vector(g, action), "orbit_size": ctx.orbit_size(g)}
            for g in ctx.level(a.degree, a.max_mult)]
    text = "\n".join(f"{r['graph']} {r['orbit_size']}" for r in rows)
    return Outcome(text, {"count": len(rows), "orbits": rows})


def _binary(a, op):
    action = make_action(a.kind, a.n)
    p = _invariant(a.left, action)
    q = _invariant(a.right, action)
    r = op(p, q)
    return Outcome(format_invariant(r), invariant_to_json(r))


def cmd_mul(a):
    return _binary(a, chain_mul if a.product == "chain" else invariant_mul)


def cmd_chain_mul(a):
    return _binary(a, chain_mul)


def cmd_eval(a):
    action = make_action(a.kind, a.n)
    p = _invariant(a.invariant, action)
    _, w = parse_vector(a.graph, action)
    val = evaluate(p, w)
    return Outcome(str(val), {"value": str(val)})


def cmd_separate(a):
    action = make_action(a.kind, a.n)
    if len(a.graph) != 2:
        raise UsageError("give exactly two --graph values")
    x, y = (parse_vector(g, action)[1] for g in a.graph)
    S = [_invariant(t, action) for t in a.invariant]
    if a.elementary:
        S += [Elementary(k, action.m) for k in range(1, action.m + 1)]
    if not S:
        raise UsageError("no invariants given")
    sep = separates(S, x, y)
    code = 0
    if a.expect is not None and (a.expect == "separated") != sep:
        code = 1
    return Outcome("separated" if sep else "not separated", {"separated": sep}, code)


def _sop(a, n):
    if a.degrees:
        return [int(x) for x in a.degrees.split(",")]
    return elementary_sop_degrees(n) if a.sop == "elementary" else conjectured_sop_degrees(n)


def cmd_secondary_degrees(a):
    action = make_action(a.kind, a.n)
    degs = _sop(a, a.n)
    try:
        poly = secondary_degrees(hilbert_series(action, sum(degs)), degs)
    except InfeasibleDegrees as exc:
        return Outcome(f"infeasible: {exc}", {"feasible": False, "degree": exc.degree}, 1)
    c = list(poly.coefficients)
    return Outcome(_series_text(c), {"feasible": True, "coefficients": c,
                                     "count": poly.value_at_one(), "top_degree": poly.degree})


def cmd_mu(a):
    from .studies import min_edges_no_odd_automorphism
    found = min_edges_no_odd_automorphism(a.n)
    data = {"min_edges": found}
    if a.n >= 4:
        data["mu"] = mu_formula(a.n)
    return Outcome(str(found), data)


def cmd_connected_counts(a):
    table = connected_multigraph_counts(a.max_k, a.max_d)
    rows = [[table[k, d] for d in range(a.max_d + 1)] for k in range(a.max_k + 1)]
    nd = [table.n_d(d) for d in range(a.max_d + 1)]
    text = "\n".join(f"k={k}: {_series_text(r)}" for k, r in enumerate(rows))
    return Outcome(text, {"c": rows, "n_d": nd})


def cmd_limit_hilbert(a):
    H = limit_hilbert_series(a.bound).integers()
    return Outcome(_series_text(H), {"coefficients": H})


def cmd_dominance(a):
    action = make_action(a.kind, a.n)
    if a.generators == "simple":
        gens = (simple_digraph_generator_degrees if a.kind == "digraph"
                else simple_graph_generator_degrees)(a.n, a.bound)
    elif a.generators == "quasi-connected":
        if a.kind != "graph":
            raise UsageError("quasi-connected generators need --kind graph")
        gens = quasi_connected_generator_degrees(a.n, a.bound)
    else:
        try:
            gens = [int(x) for x in a.generators.split(",")]
        except ValueError:
            raise UsageError("--generators takes simple, quasi-connected or a degree list") from None
    cert = dominance_certificate(hilbert_series(action, a.bound), gens, a.bound)
    code = 0
    if a.expect == "dominated" and not cert.dominated:
        code = 1
    if a.expect == "fails" and cert.dominated:
        code = 1
    text = "dominated" if cert.dominated else f"fails at degree {cert.first_failure}"
    return Outcome(text, {"dominated": cert.dominated, "first_failure": cert.first_failure,
                          "hilbert": list(cert.hilbert), "free_bound": list(cert.free_bound)}, code)


def cmd_mgs(a):
    rep = minimal_generating_set(make_action(a.kind, a.n), a.cap, product=a.product)
    s = list(rep.s_d.coefficients)
    text = (f"generators: {len(rep.generators)}\ndegrees: {rep.degrees}\n"
            f"s_d: {_series_text(s)}\nbeta_observed: {rep.beta_observed}\n"
            f"complete: {rep.complete}")
    return Outcome(text, rep.to_json())


def cmd_secondaries(a):
    action = make_action(a.kind, a.n)
    if a.sop != "elementary":
        raise UsageError("only elementary parameters can be built automatically")
    rep = algorithm1_secondaries(elementary_parameters(action), a.cap, product=a.product)
    text = (f"secondaries: {rep.count}\nper degree: {_series_text(rep.counts())}\n"
            f"generator degrees: {[d for _, d, _ in rep.generators]}\n"
            f"removable primaries (degrees): {[p.degree for p in rep.removable_primaries]}")
    return Outcome(text, rep.to_json())


def cmd_verify(a):
    from .studies import run_suites
    try:
        verdicts = run_suites(a.suite, slow=a.slow, threads=a.threads)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    code = 0 if all(v.passed for v in verdicts) else 1
    if a.json:
        text = "\n".join(json.dumps(v.to_json(), sort_keys=True, default=str) for v in verdicts)
    else:
        text = "\n".join(v.line() for v in verdicts)
    return Outcome(text, None, code)


# -- parser -------------------------------------------------------------------

def _positive(x: str) -> int:
    v = int(x)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonnegative(x: str) -> int:
    v = int(x)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--cache-dir", default=None,
                        help=f"result cache directory (default: ${CACHE_ENV})")
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--threads", type=_positive, default=None,
                        help=f"worker threads (default: ${THREADS_ENV} or CPU count)")
    common.add_argument("-v", "--verbose", action="store_true")

    action = argparse.ArgumentParser(add_help=False)
    action.add_argument("--n", type=_positive, required=True,
                        help="vertices (graph, digraph) or points (natural, alternating)")
    action.add_argument("--kind", default="graph",
                        choices=["graph", "digraph", "natural", "alternating"])

    parser = argparse.ArgumentParser(prog="invring",
                                     description="Invariants of graphs under vertex relabelling.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, *parents, help=None):
        p = sub.add_parser(name, parents=[common, *parents], help=help)
        # dispatch by name so the handler is looked up when the command runs
        p.set_defaults(func="cmd_" + name.replace("-", "_"))
        return p

    p = add("hilbert", action, help="Hilbert series coefficients")
    p.add_argument("--bound", type=_nonnegative, required=True)

    p = add("dimension", action, help="dimension of one homogeneous component")
    p.add_argument("--degree", type=_nonnegative, required=True)
    p.add_argument("--series-only", action="store_true", help="skip the enumeration cross-check")

    p = add("enumerate", action, help="canonical representatives of a degree")
    p.add_argument("--degree", type=_nonnegative, required=True)
    p.add_argument("--max-mult", type=_positive, default=None)

    for name in ("mul", "chain-mul"):
        p = add(name, action, help=("chain product" if name == "chain-mul" else "product") + " of two invariants")
        p.add_argument("--left", required=True)
        p.add_argument("--right", required=True)
        if name == "mul":
            p.add_argument("--product", choices=["usual", "chain"], default="usual")

    p = add("eval", action, help="evaluate an invariant on a weighted graph")
    p.add_argument("--invariant", required=True)
    p.add_argument("--graph", required=True)

    p = add("separate", action, help="do the invariants tell two graphs apart")
    p.add_argument("--graph", action="append", default=[])
    p.add_argument("--invariant", action="append", default=[])
    p.add_argument("--elementary", action="store_true",
                   help="include all elementary symmetric polynomials")
    p.add_argument("--expect", choices=["separated", "unseparated"])

    p = add("secondary-degrees", action,
            help="secondary degree polynomial for parameter degrees")
    p.add_argument("--sop", choices=["elementary", "conjectured"], default="elementary")
    p.add_argument("--degrees", help="comma-separated parameter degrees (overrides --sop)")

    p = add("mu", help="fewest edges of a multigraph with only even automorphisms")
    p.add_argument("--n", type=_positive, required=True)

    p = add("connected-counts", help="connected multigraph counts c(k,d)")
    p.add_argument("--max-k", type=_positive, required=True)
    p.add_argument("--max-d", type=_positive, required=True)

    p = add("limit-hilbert", help="Hilbert series of the limit ring")
    p.add_argument("--bound", type=_nonnegative, required=True)

    p = add("dominance", action, help="dominance certificate")
    p.add_argument("--generators", default="simple",
                   help="simple, quasi-connected, or comma-separated degrees")
    p.add_argument("--bound", type=_positive, required=True)
    p.add_argument("--expect", choices=["dominated", "fails"])

    p = add("mgs", action, help="minimal generating set up to a degree")
    p.add_argument("--cap", type=_positive, required=True)
    p.add_argument("--product", choices=["usual", "chain"], default="usual")

    p = add("secondaries", action, help="secondary invariants (Hironaka basis)")
    p.add_argument("--cap", type=_nonnegative, required=True)
    p.add_argument("--sop", choices=["elementary"], default="elementary")
    p.add_argument("--product", choices=["usual", "chain"], default="usual")

    p = add("verify", help="run reproduction suites")
    p.add_argument("--suite", default="all")
    p.add_argument("--slow", action="store_true")
    return parser


# -- cache --------------------------------------------------------------------

UNCACHED = {"verify"}
_IGNORED = {"json", "cache_dir", "no_cache", "threads", "verbose", "func"}


def cache_key(args: argparse.Namespace) -> str:
    config = {k: v for k, v in sorted(vars(args).items()) if k not in _IGNORED}
    blob = json.dumps({"version": __version__, "config": config}, sort_keys=True, default=str)
    return hashlib.sha256(blob.encode()).hexdigest()


def cache_lookup(directory: Path, key: str):
    path = directory / f"{key}.json"
    try:
        entry = json.loads(path.read_text())
        if entry.get("key") != key:
            raise ValueError("key mismatch")
        return entry["text"], entry["data"], int(entry["code"])
    except FileNotFoundError:
        return None
    except (ValueError, KeyError, TypeError, OSError):
        log.warning("discarding corrupt cache entry %s", path)
        return None


def cache_store(directory: Path, key: str, out: Outcome):
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / f"{key}.json"
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps({"key": key, "text": out.text, "data": out.data, "code": out.code},
                              sort_keys=True))
    os.replace(tmp, path)


def resolve_threads(args) -> int:
    if args.threads:
        return args.threads
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"{THREADS_ENV} must be an integer") from None
    return os.cpu_count() or 1


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.threads = resolve_threads(args)
        cache_dir = None
        if not args.no_cache and args.command not in UNCACHED:
            d = args.cache_dir or os.environ.get(CACHE_ENV)
            cache_dir = Path(d) if d else None
        out = None
        key = cache_key(args) if cache_dir else None
        if cache_dir:
            hit = cache_lookup(cache_dir, key)
            if hit:
                out = Outcome(*hit)
        if out is None:
            out = globals()[args.func](args)
            if cache_dir:
                cache_store(cache_dir, key, out)
    except (UsageError, EncodingError, grp.GroupError) as exc:
        print(f"invring: error: {exc}", file=sys.stderr)
        return 2
    if args.json and out.data is not None:
        print(json.dumps(out.data, sort_keys=True, default=str), file=stdout)
    else:
        print(out.text, file=stdout)
    return out.code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
