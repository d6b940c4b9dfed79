"""Command-line front door: ``artifact verify|atlas|oracle|axioms``.

Exit codes: 0 when everything checked holds, 1 on a verification failure,
2 on usage or input errors.  JSON output carries rationals as "p/q" strings.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Mapping

from . import atlas, counting, inequalities, oracle, structures
from .errors import (
    ArtifactError,
    CMViolated,
    CycleDetected,
    NotAdmissible,
    SubmodViolated,
    ZeroMiddleTerm,
)
from .poset import Poset, builtin_posets, poset_from_dict
from .rational import Q, parse_range, to_jsonable

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
# side conditions whose violation is a finding about the input, not a usage error
FAILURES = (CMViolated, NotAdmissible, SubmodViolated, ZeroMiddleTerm)
EXTRA_KEYS = ("weights", "scale", "t", "z", "name")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# loading


def load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from exc


def split_doc(doc) -> tuple[dict, dict]:
    """Structure description and the extras (weights, scale, t, z) riding along."""
    if not isinstance(doc, Mapping):
        raise UsageError("input must be a JSON object")
    if "data" in doc and "kind" in doc:
        extras = dict(doc.get("params", {}))
        if doc.get("weights") is not None:
            extras["weights"] = doc["weights"]
        return dict(doc["data"]), extras
    extras = {k: doc[k] for k in EXTRA_KEYS if k in doc}
    return {k: v for k, v in doc.items() if k not in EXTRA_KEYS}, extras


def parse_weights(text: str | None, extras: Mapping):
    if text is None:
        return extras.get("weights")
    if text in ("uniform", "canonical"):
        return text
    if text.lstrip().startswith("{"):
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"--weights: malformed JSON ({exc.msg})") from exc
    return load_json(text)


def load_poset(data: Mapping) -> Poset:
    if "builtin" in data:
        return builtin_posets(data["builtin"], {k: v for k, v in data.items() if k != "builtin"})
    return poset_from_dict(data)


def parse_grid(text: str | None):
    if text is None:
        return None
    return [Q(x) for x in text.split(",") if x.strip()]


def parse_scale(text: str | None, extras: Mapping):
    if text is None:
        return extras.get("scale")
    return [Q(x) for x in text.split(",") if x.strip()]


# ---------------------------------------------------------------------------
# output


def emit(args, payload: dict, lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(to_jsonable(payload), indent=2))
    else:
        print("\n".join(lines))


def _fmt(x) -> str:
    return str(to_jsonable(x))


def suite_lines(suite: inequalities.Suite) -> list[str]:
    out = [f"[{suite.kind} k={suite.k}] {'ok' if suite.ok else 'FAIL'}"]
    for r in suite.reports.values():
        if not r.applicable:
            out.append(f"  {r.name}: not applicable ({'; '.join(r.notes)})")
            continue
        rel = "=" if r.equality else (">" if r.holds else "<")
        flag = "equality" if r.equality else ("strict" if r.holds else "VIOLATED")
        out.append(f"  {r.name}: {_fmt(r.lhs)} {rel} {_fmt(r.rhs)}  factor {_fmt(r.factor)}  {flag}")
        for name, c in r.conditions.items():
            mark = "pass" if c.passed else "fail"
            extra = " (vacuous)" if c.vacuous else ""
            wit = f" witness={_fmt(c.witness)}" if c.witness is not None and not c.passed else ""
            out.append(f"    {name}: {mark}{extra}{wit}")
        for note in r.notes:
            out.append(f"    note: {note}")
    for name, ok in suite.consistency.items():
        out.append(f"  consistency {name}: {'ok' if ok else 'FAIL'}")
    return out


# ---------------------------------------------------------------------------
# verify


def _k_range(args, lo: int, hi: int) -> list[int]:
    ks = parse_range(args.k) if args.k else list(range(lo, hi + 1))
    if not ks:
        raise UsageError(f"empty k-range; valid values are {lo}..{hi}")
    return ks


def _verify_suites(args, kind: str, data: dict, extras: dict) -> list[inequalities.Suite]:
    weights = parse_weights(args.weights, extras)
    if kind == "matroid":
        M = structures.matroid_from_dict(data)
        return [inequalities.matroid_suite(M, weights, k) for k in _k_range(args, 1, M.rank - 1)]
    if kind == "polymatroid":
        D = structures.polymatroid_from_dict(data)
        t = args.t if args.t is not None else extras.get("t", 1)
        return [inequalities.polymatroid_suite(D, weights, t, k) for k in _k_range(args, 1, D.rank - 1)]
    if kind == "antimatroid":
        P = load_poset(data)
        return [inequalities.antimatroid_suite(P, weights, k) for k in _k_range(args, 1, len(P) - 1)]
    if kind == "greedoid":
        G = structures.greedoid_from_dict(data)
        t = args.t if args.t is not None else extras.get("t")
        W = counting.product_weight(G, weights, parse_scale(args.scale, extras), t=t)
        return [inequalities.greedoid_suite(W, k) for k in _k_range(args, 1, G.rank - 1)]
    if kind == "morphism":
        phi = structures.morphism_from_dict(data)
        return [inequalities.morphism_suite(phi, weights, k) for k in _k_range(args, 1, phi.source.rank - 1)]
    if kind in ("stanley", "stanley-belt"):
        P = load_poset(data)
        z = args.z if args.z is not None else extras.get("z")
        if z is None:
            raise UsageError(f"verify {kind} needs --z")
        ks = _k_range(args, 2, len(P) - 1)
        if kind == "stanley":
            return [inequalities.stanley_suite(P, weights, str(z), k) for k in ks]
        return [inequalities.stanley_belt_suite(P, str(z), k, mode=args.mode, weights=weights) for k in ks]
    if kind == "graphical":
        graph = data.get("graph", data)
        return [inequalities.graphical_special(graph)]
    raise UsageError(f"unknown kind {kind!r}")


def _series_lines(kind: str, data: dict, extras: dict, args) -> tuple[list, list[str]]:
    """Plain log-concavity of the series; reported alongside a side-condition failure."""
    if kind != "antimatroid":
        return [], []
    P = load_poset(data)
    weights = parse_weights(args.weights, extras)
    vals = counting.antimatroid_series(P, None if weights in (None, "uniform") else weights).values
    bad = [k for k in range(1, len(vals) - 1) if vals[k] ** 2 < vals[k - 1] * vals[k + 1]]
    lines = [f"  series: {', '.join(_fmt(v) for v in vals)}"]
    lines += [f"  log-concavity fails at k={k}: {_fmt(vals[k] ** 2)} < {_fmt(vals[k - 1] * vals[k + 1])}" for k in bad]
    return bad, lines


def cmd_verify(args) -> int:
    data, extras = split_doc(load_json(args.input))
    try:
        suites = _verify_suites(args, args.kind, data, extras)
    except FAILURES as exc:
        bad, lines = _series_lines(args.kind, data, extras, args)
        payload = {
            "kind": args.kind,
            "ok": False,
            "error": type(exc).__name__,
            "message": str(exc),
            "witness": exc.witness,
            "log_concavity_failures": bad,
        }
        emit(args, payload, [f"[{args.kind}] FAIL {type(exc).__name__}: {exc}"] + lines)
        return EXIT_FAIL
    ok = all(s.ok for s in suites)
    payload = {"kind": args.kind, "ok": ok, "suites": [s.to_dict() for s in suites]}
    lines = [line for s in suites for line in suite_lines(s)]
    emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# atlas


def _global_pair(slice_: atlas.AtlasSlice) -> tuple[dict, dict]:
    if slice_.kind == "greedoid":
        f = {x: (0 if x == atlas.STAR else 1) for x in slice_.labels}
        g = {x: (1 if x == atlas.STAR else 0) for x in slice_.labels}
    else:
        f = {x: (1 if x.endswith("_down") else 0) for x in slice_.labels}
        g = {x: (1 if x.endswith("_up") else 0) for x in slice_.labels}
    return f, g


def cmd_atlas(args) -> int:
    data, extras = split_doc(load_json(args.input))
    weights = parse_weights(args.weights, extras)
    grid = parse_grid(args.t_grid)
    if args.k is None:
        raise UsageError("atlas needs --k")
    k = int(args.k)
    lines: list[str] = []
    if args.kind == "greedoid":
        G = structures.greedoid_from_dict(data)
        t = args.t if args.t is not None else extras.get("t")
        W = counting.product_weight(G, weights, parse_scale(args.scale, extras), t=t)
        sl = atlas.build_greedoid_atlas(W, k, grid)
    else:
        P = load_poset(data)
        z = args.z if args.z is not None else extras.get("z")
        if z is None:
            raise UsageError("atlas stanley needs --z")
        w = None if weights in (None, "uniform") else weights
        sl = atlas.build_stanley_atlas(P, str(z), k, grid, weights=w, cap=args.cap)
        W = None
    lg = atlas.check_local_global(sl)
    def regular(r) -> bool:
        # irreducibility and positivity of h are only claimed strictly inside (0, 1)
        skip = ("Irr", "hPos") if r.id.t in (0, 1) else ()
        return all(getattr(r, p) in (True, None) for p in r.PROPS if p not in skip)

    prop_ok = all(regular(r) for r in lg.reports.values())
    sinks = []
    if W is not None:
        sinks = [atlas.sink_normal_form(v, W) for v in sl.sinks()]
    sink_ok = all(s.star == s.ope_original and s.agrees for s in sinks)
    f, g = _global_pair(sl)
    sequ = atlas.check_sEqu_propagation(sl, f, g, args.s)
    payload: dict = {
        "kind": sl.kind,
        "k": k,
        "vertices": len(sl.vertices),
        "sinks": len(sl.sinks()),
        "properties_ok": prop_ok,
        "local_global": lg.to_dict(),
        "sink_normal_form": [s.to_dict() for s in sinks],
        "sEqu": sequ.to_dict(),
    }
    lines += [
        f"[atlas {sl.kind} k={k}] vertices={len(sl.vertices)} sinks={len(sl.sinks())} t-grid={','.join(map(_fmt, sl.t_grid))}",
        f"  vertex properties: {'ok' if prop_ok else 'FAIL'}",
        f"  local-global: {'ok' if lg.ok else 'FAIL'} (Hyp checked {lg.checked_hyp}, Pull checked {lg.checked_pull})",
    ]
    for vid, r in lg.reports.items():
        if not regular(r):
            bad = [p for p in r.PROPS if getattr(r, p) is False and not (p in ("Irr", "hPos") and r.id.t in (0, 1))]
            lines.append(f"    {vid}: fails {', '.join(bad)}")
    if sinks:
        lines.append(f"  sink normal form: {'ok' if sink_ok else 'FAIL'} ({len(sinks)} sinks)")
    lines.append(
        f"  s-Equ: s={_fmt(sequ.s)} root={'holds' if sequ.root_holds else 'no'}"
        f" propagation={'ok' if sequ.propagation_ok else 'FAIL'} kernel={'ok' if sequ.kernel_ok else 'FAIL'}"
    )
    ok = prop_ok and lg.ok and sink_ok and sequ.propagation_ok and sequ.kernel_ok
    if sl.kind == "stanley":
        try:
            lgc = atlas.line_graph_connectivity(load_poset(data), str(args.z or extras.get("z")), k, weights=w, cap=args.cap)
            payload["line_graph"] = lgc.to_dict()
            lines.append(f"  line graph: {lgc.n_edges} edges, {'connected' if lgc.connected else 'DISCONNECTED'}")
            ok = ok and lgc.connected and lgc.adjacency_matches and lgc.transposition_adjacency
        except ArtifactError as exc:
            lines.append(f"  line graph: {exc}")
    if args.dump_matrices:
        payload["matrices"] = sl.to_dict()
        if args.format != "json":
            lines.append(json.dumps(to_jsonable(sl.to_dict()), indent=2))
    payload["ok"] = ok
    emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# oracle and axioms


def cmd_oracle(args) -> int:
    if args.manifest:
        if not Path(args.manifest).exists():
            raise UsageError(f"manifest {args.manifest} not found")
        corpus = oracle.load_manifest(args.manifest)
    else:
        corpus = oracle.default_corpus(args.seed)
    rep = oracle.crosscheck(corpus, matrices=not args.no_matrices)
    lines = [f"[oracle] instances={rep.instances} comparisons={rep.comparisons} mismatches={len(rep.mismatches)}"]
    for m in rep.mismatches:
        lines.append(f"  {m['instance']['name']}: {m['quantity']}")
        lines.append(f"    oracle: {json.dumps(to_jsonable(m['oracle']))}")
        other = "core" if "core" in m else "expected"
        lines.append(f"    {other}: {json.dumps(to_jsonable(m[other]))}")
        lines.append(f"    instance: {json.dumps(to_jsonable(m['instance']))}")
    emit(args, rep.to_dict(), lines)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_axioms(args) -> int:
    data, _ = split_doc(load_json(args.input))
    kind = args.kind
    if kind == "matroid":
        if data.get("type") == "explicit":
            rep = structures.check_matroid_axioms(data["independents"], data["ground"])
            checks, wit = rep.checks, rep.witnesses
        else:
            structures.matroid_from_dict(data)
            checks, wit = {"builder": True}, {}
    elif kind == "polymatroid":
        if data.get("type") == "explicit":
            D = structures.DiscretePolymatroid(int(data["n"]), data["independents"])
            rep = structures.check_polymatroid_axioms(D)
            checks, wit = rep.checks, rep.witnesses
        else:
            structures.polymatroid_from_dict(data)
            checks, wit = {"builder": True}, {}
    elif kind == "greedoid":
        if data.get("type") == "explicit":
            fl = structures.check_greedoid_axioms([tuple(map(str, w)) for w in data["words"]], data.get("alphabet"))
        else:
            fl = structures.greedoid_from_dict(data).flags
        checks = {
            "greedoid": fl.is_greedoid,
            "interval": fl.is_interval,
            "weak_local": fl.is_weak_local,
            "antimatroid": fl.is_antimatroid,
        }
        wit = fl.witnesses
    elif kind == "poset":
        try:
            load_poset(data)
            checks, wit = {"acyclic": True}, {}
        except CycleDetected as exc:
            checks, wit = {"acyclic": False}, {"acyclic": exc.witness}
    else:
        raise UsageError(f"unknown kind {kind!r}")
    # interval/antimatroid flags describe the language; only the axioms decide the exit code
    required = {k: v for k, v in checks.items() if k not in ("interval", "weak_local", "antimatroid")}
    ok = all(required.values())
    lines = [f"[axioms {kind}] {'ok' if ok else 'FAIL'}"]
    lines += [f"  {name}: {val}" + (f" witness={_fmt(wit[name])}" if name in wit else "") for name, val in checks.items()]
    emit(args, {"kind": kind, "ok": ok, "checks": checks, "witnesses": wit}, lines)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--t-grid", dest="t_grid", help="comma-separated rationals, e.g. 0,1/2,1")
    common.add_argument("--cap", type=int, default=12, help="enumeration cap on poset size")

    p = _Parser(prog="artifact", description="Exact verification of log-concavity inequalities.", parents=[common])
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    v = sub.add_parser("verify", parents=[common], help="run an inequality suite over a k-range")
    v.add_argument(
        "kind",
        choices=("matroid", "polymatroid", "antimatroid", "greedoid", "morphism", "stanley", "stanley-belt", "graphical"),
    )
    v.add_argument("input")
    v.add_argument("--k", help='k or inclusive range "a..b"')
    v.add_argument("--z")
    v.add_argument("--t", type=Q)
    v.add_argument("--weights", help='"uniform", "canonical", a JSON file or inline JSON object')
    v.add_argument("--scale", help="comma-separated scale c_0,c_1,...")
    v.add_argument("--mode", choices=("tropical", "submodular"), default="tropical")
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("atlas", parents=[common], help="build an atlas slice and check its properties")
    a.add_argument("kind", choices=("greedoid", "stanley"))
    a.add_argument("input")
    a.add_argument("--k")
    a.add_argument("--z")
    a.add_argument("--t", type=Q)
    a.add_argument("--s", type=Q, help="equality ratio; detected from the root when omitted")
    a.add_argument("--weights")
    a.add_argument("--scale")
    a.add_argument("--dump-matrices", dest="dump_matrices", action="store_true")
    a.set_defaults(func=cmd_atlas)

    o = sub.add_parser("oracle", parents=[common], help="cross-check the counting and atlas modules")
    o.add_argument("manifest", nargs="?")
    o.add_argument("--no-matrices", dest="no_matrices", action="store_true")
    o.set_defaults(func=cmd_oracle)

    x = sub.add_parser("axioms", parents=[common], help="check the structure axioms of an input")
    x.add_argument("kind", choices=("matroid", "polymatroid", "greedoid", "poset"))
    x.add_argument("input")
    x.set_defaults(func=cmd_axioms)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            parser.print_help()
            return EXIT_USAGE
        return args.func(args)
    except UsageError as exc:
        print(f"artifact: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArtifactError as exc:
        wit = f" (witness: {_fmt(exc.witness)})" if getattr(exc, "witness", None) is not None else ""
        print(f"artifact: {type(exc).__name__}: {exc}{wit}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
