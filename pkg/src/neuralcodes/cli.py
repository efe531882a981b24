"""``nc`` command line interface.

Every subcommand builds one result dict; ``--json`` dumps it, otherwise it is
rendered as plain text.  Exit status: 0 success, 1 domain failure (infeasible
walk, failed certificate, predicate false), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import algebra, certificates, core, families, geometry, graph
from .errors import InfeasibleWalk, NeuralCodeError, NoFeasiblePath, NotAWalk, UnknownCode

WALK_BOUND_ENV = "NC_WALK_BOUND"


class UsageError(Exception):
    pass


# -- input helpers -------------------------------------------------------------


def load_code(arg, base: Path | None = None) -> core.Code:
    """A code from a file path, an inline JSON object, or a registry name."""
    if isinstance(arg, dict):
        return core.code_from_json(arg)
    path = Path(arg)
    if base is not None and not path.is_absolute():
        path = base / path
    if path.is_file():
        return core.parse_code(path.read_text())
    try:
        return families.registry(arg).code
    except UnknownCode:
        raise UsageError(f"no such file or registry code: {arg}") from None


def parse_seq(code: core.Code, text: str) -> list[int]:
    return [code.codeword(t) for t in text.split(";") if t.strip()]


def walk_bound(code: core.Code, explicit: int | None = None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get(WALK_BOUND_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{WALK_BOUND_ENV} must be an integer, got {env!r}") from None
    return graph.default_walk_bound(code)


def fmt_words(code, words):
    return [code.fmt(w) for w in words]


def jsonable(obj):
    if isinstance(obj, Fraction):
        return geometry.fmt_rational(obj)
    if isinstance(obj, dict):
        return {k: jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj


# -- commands ------------------------------------------------------------------


def cmd_parse(args):
    code = load_code(args.code)
    return {"ok": True, "neurons": list(code.labels), "size": len(code), "code": core.format_code(code)}


def cmd_max(args):
    code = load_code(args.code)
    return {"ok": True, "maximal": fmt_words(code, core.maximal_codewords(code))}


def cmd_iscomplete(args):
    code = load_code(args.code)
    v = core.is_intersection_complete(code)
    return {"ok": v, "intersection_complete": v}


def cmd_sunflower(args):
    code = load_code(args.code)
    if args.restrict:
        code = core.restrict(code, args.restrict.split(","))
    v = core.is_sunflower_code(code)
    return {"ok": v, "sunflower": v}


def cmd_iso(args):
    a, b = load_code(args.a), load_code(args.b)
    m = core.is_isomorphic(a, b)
    return {"ok": m is not None, "isomorphic": m is not None, "bijection": m}


def cmd_family(args):
    if args.family == "Ln":
        if args.n is None:
            raise UsageError("family Ln needs --n")
        code = families.gen_Ln(args.n)
    else:
        if args.d is None:
            raise UsageError("family Pd needs --d")
        code = families.gen_Pd(args.d)
    doc = core.code_to_json(code)
    if args.out:
        Path(args.out).write_text(json.dumps(doc, indent=2) + "\n")
    return {"ok": True, "size": len(code), "code": doc if not args.out else args.out}


def cmd_registry(args):
    if args.list or not args.name:
        return {"ok": True, "names": families.registry_names()}
    try:
        entry = families.registry(args.name)
    except UnknownCode as e:
        raise UsageError(str(e)) from None
    return {"ok": True, **entry.to_json()}


def cmd_graph(args):
    code = load_code(args.code)
    g = graph.codeword_graph(code)
    return {
        "ok": True,
        "vertices": len(code),
        "edges": [[code.fmt(a), code.fmt(b)] for a, b in g.edges()],
    }


def cmd_feasible(args):
    code = load_code(args.code)
    walk = parse_seq(code, args.walk)
    rep = graph.is_feasible_walk(code, walk)
    return {"ok": rep.feasible, "feasible": rep.feasible, "witness": rep.witness_violation, "detail": rep.describe(code, walk)}


def cmd_paths(args):
    code = load_code(args.code)
    paths = graph.enumerate_feasible_paths(code, code.codeword(args.source), code.codeword(args.target))
    return {"ok": True, "count": len(paths), "paths": [fmt_words(code, p) for p in paths]}


def cmd_forced(args):
    code = load_code(args.code)
    s, t = code.codeword(args.source), code.codeword(args.target)
    common = graph.forced_between(code, s, t)
    ordered = [w for w in code.codewords if w in common]
    interior = [w for w in ordered if w not in (s, t)]
    return {"ok": True, "forced": fmt_words(code, ordered), "interior": fmt_words(code, interior)}


def cmd_order_forced(args):
    code = load_code(args.code)
    seq = parse_seq(code, args.seq)
    v = graph.is_order_forced(code, seq)
    out = {"ok": v, "order_forced": v}
    if not v:
        out["counterexample"] = fmt_words(code, graph.order_forcing_counterexample(code, seq))
    return out


def cmd_strong(args):
    code = load_code(args.code)
    path = parse_seq(code, args.path)
    rep = graph.strong_order_forcing(code, path, walk_bound(code, args.bound))
    return {
        "ok": rep.strong,
        "strong": rep.strong,
        "walk_bound": rep.bound,
        "bound_conclusive": rep.complete,
        "simple_paths": rep.simple_paths,
        "feasible_walks": rep.walk_count,
        "longest_feasible_walk": rep.longest_walk,
        "deviation": fmt_words(code, rep.deviation) if rep.deviation else None,
    }


def cmd_reduce_walk(args):
    code = load_code(args.code)
    path = graph.reduce_walk_to_path(code, parse_seq(code, args.walk))
    return {"ok": True, "path": fmt_words(code, path)}


def cmd_trunk(args):
    code = load_code(args.code)
    sigma = code.universe.parse_word(args.sigma)
    tk = algebra.trunk(code, sigma)
    return {"ok": True, "base": code.fmt(sigma), "trunk": [code.fmt(w) for w in code.codewords if w in tk.members]}


def _load_map(path):
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"no such map file: {path}")
    doc = json.loads(p.read_text())
    src = load_code(doc["source"], p.parent)
    tgt = load_code(doc["target"], p.parent)
    assignment = {}
    for a, b in doc["assignment"]:
        assignment[src.codeword(list(a))] = tgt.codeword(list(b))
    return algebra.CodeMap(src, tgt, assignment)


def cmd_morphism(args):
    f = _load_map(args.map)
    m = algebra.is_morphism(f)
    surj = f.image() == frozenset(f.target.codewords)
    return {"ok": m, "morphism": m, "surjective": surj, "minor_witness": m and surj}


def cmd_minor(args):
    big, small = load_code(args.big), load_code(args.small)
    if not args.exhaustive:
        raise UsageError("minor search is exhaustive and slow; pass --exhaustive to run it")
    f = algebra.find_minor_witness(big, small)
    out = {"ok": f is not None, "minor": f is not None}
    if f is not None:
        out["assignment"] = [[big.fmt(c), small.fmt(f(c))] for c in big.codewords]
    return out


def cmd_covered(args):
    code = load_code(args.code)
    f = algebra.covering_map(code, args.i)
    out = {"ok": True, "covered": core.code_to_json(f.target), "minor_witness": algebra.is_minor_witness(f)}
    if args.reduce:
        red, log = algebra.reduce_code(f.target)
        out["reduced"] = core.code_to_json(red)
        out["removed"] = [[r.neuron, r.reason, list(r.witness)] for r in log]
    return out


def cmd_reduce(args):
    code = load_code(args.code)
    red, log = algebra.reduce_code(code)
    return {"ok": True, "reduced": core.code_to_json(red), "removed": [[r.neuron, r.reason, list(r.witness)] for r in log]}


def _realization(path):
    if not Path(path).is_file():
        raise UsageError(f"no such realization file: {path}")
    return geometry.load_realization(path)


def cmd_geom_member(args):
    R = _realization(args.realization)
    w = geometry.membership(R, args.point)
    return {"ok": True, "point": list(geometry.point(args.point)), "codeword": list(R.universe.labels_of(w))}


def cmd_geom_witnesses(args):
    R = _realization(args.realization)
    doc = json.loads(Path(args.witnesses).read_text())
    if isinstance(doc, dict) and "claims" in doc:
        claims = [(c["codeword"], c["point"]) for c in doc["claims"]]
    else:
        claims = list(doc.items())
    rep = geometry.verify_witnesses(R, claims)
    return {
        "ok": rep.ok,
        "checked": len(rep.results),
        "failures": [
            {"claimed": list(r.claimed), "point": list(r.point), "actual": list(r.actual)} for r in rep.failures
        ],
    }


def cmd_geom_code1d(args):
    R = _realization(args.realization)
    code = geometry.code_of_1d_realization(R)
    return {"ok": True, "code": core.code_to_json(code)}


def cmd_geom_trace(args):
    R = _realization(args.realization)
    tr = geometry.segment_atom_trace(R, args.source, args.target)
    u = R.universe
    return {
        "ok": True,
        "runs": [
            {
                "codeword": list(u.labels_of(r.codeword)),
                "interval": ("[" if r.start_closed else "(")
                + f"{geometry.fmt_rational(r.start)}, {geometry.fmt_rational(r.end)}"
                + ("]" if r.end_closed else ")"),
            }
            for r in tr.runs
        ],
    }


def cmd_cert_verify(args):
    code = load_code(args.code)
    p = Path(args.cert)
    if p.is_file():
        cert = certificates.load_certificate(p)
    else:
        builtin = certificates.builtin_certificates()
        if args.cert not in builtin:
            raise UsageError(f"no such certificate file or builtin: {args.cert}")
        cert = builtin[args.cert]
    rep = certificates.verify_certificate(code, cert, walk_bound(code, None))
    return rep.to_json()


def cmd_cert_builtin(args):
    builtin = certificates.builtin_certificates()
    if args.list or not args.name:
        return {"ok": True, "names": list(builtin)}
    if args.name not in builtin:
        raise UsageError(f"no builtin certificate {args.name!r}")
    return {"ok": True, "certificate": builtin[args.name].to_json()}


def cmd_report(args):
    try:
        entry = families.registry(args.name)
    except UnknownCode as e:
        raise UsageError(str(e)) from None
    code = entry.code
    g = graph.codeword_graph(code)
    out = {
        "name": args.name,
        "neurons": len(code.labels),
        "codewords": len(code),
        "edges": len(g.edges()),
        "maximal": fmt_words(code, core.maximal_codewords(code)),
        "intersection_complete": core.is_intersection_complete(code),
        "sunflower": core.is_sunflower_code(code),
        "metadata": list(entry.metadata),
    }
    cert = certificates.builtin_certificates().get(args.name)
    ok = True
    if cert is not None:
        rep = certificates.verify_certificate(code, cert, walk_bound(code, None))
        out["certificate"] = rep.to_json()
        ok = rep.ok
    out["ok"] = ok
    return out


# which library operations each subcommand exercises
OPERATIONS = {
    "parse": ["parse_code"],
    "max": ["maximal_codewords"],
    "iscomplete": ["is_intersection_complete"],
    "sunflower": ["is_sunflower_code"],
    "iso": ["is_isomorphic"],
    "family": ["gen_Ln", "gen_Pd"],
    "registry": ["registry"],
    "graph": ["codeword_graph"],
    "feasible": ["is_feasible_walk"],
    "paths": ["enumerate_feasible_paths"],
    "forced": ["forced_between"],
    "order-forced": ["is_order_forced"],
    "strong": ["is_strongly_order_forced"],
    "reduce-walk": ["reduce_walk_to_path"],
    "trunk": ["trunk"],
    "morphism": ["is_morphism", "is_minor_witness"],
    "minor": ["find_minor_witness"],
    "covered": ["covered_code"],
    "reduce": ["reduce_code"],
    "geom member": ["membership"],
    "geom witnesses": ["verify_witnesses"],
    "geom code1d": ["code_of_1d_realization"],
    "geom trace": ["segment_atom_trace"],
    "cert verify": ["verify_certificate"],
    "cert builtin": ["builtin_certificates"],
    "report": ["codeword_graph", "maximal_codewords", "is_intersection_complete", "verify_certificate"],
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nc", description="Combinatorics of convex neural codes.")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--quiet", action="store_true", help="no output, exit status only")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, code=True):
        p = sub.add_parser(name, help=help_)
        if code:
            p.add_argument("code", help="code file (JSON or compact text) or registry name")
        p.set_defaults(func=func)
        return p

    add("parse", cmd_parse, "canonical form of a code")
    add("max", cmd_max, "maximal codewords")
    add("iscomplete", cmd_iscomplete, "intersection completeness")
    add("sunflower", cmd_sunflower, "sunflower code test").add_argument("--restrict", help="comma separated labels to project onto first")
    p = add("iso", cmd_iso, "neuron bijection between two codes", code=False)
    p.add_argument("a")
    p.add_argument("b")
    p = add("family", cmd_family, "generate L_n or P_d", code=False)
    p.add_argument("family", choices=["Ln", "Pd"])
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--out")
    p = add("registry", cmd_registry, "named codes", code=False)
    p.add_argument("name", nargs="?")
    p.add_argument("--list", action="store_true")
    add("graph", cmd_graph, "codeword graph edges")
    add("feasible", cmd_feasible, "check a walk").add_argument("--walk", required=True, help="codewords separated by ';'")
    for name, func, help_ in (("paths", cmd_paths, "all feasible paths"), ("forced", cmd_forced, "codewords forced between two codewords")):
        p = add(name, func, help_)
        p.add_argument("--from", dest="source", required=True)
        p.add_argument("--to", dest="target", required=True)
    add("order-forced", cmd_order_forced, "order-forcing test").add_argument("--seq", required=True)
    p = add("strong", cmd_strong, "strong order-forcing test")
    p.add_argument("--path", required=True)
    p.add_argument("--bound", type=int, help=f"walk bound in edges (default 2|C| or ${WALK_BOUND_ENV})")
    add("reduce-walk", cmd_reduce_walk, "cut a feasible walk down to a path").add_argument("--walk", required=True)
    add("trunk", cmd_trunk, "trunk of a neuron set").add_argument("--sigma", required=True)
    add("morphism", cmd_morphism, "check a code map", code=False).add_argument("--map", required=True)
    p = add("minor", cmd_minor, "search for a surjective morphism BIG -> SMALL", code=False)
    p.add_argument("big")
    p.add_argument("small")
    p.add_argument("--exhaustive", action="store_true")
    p = add("covered", cmd_covered, "covered code for a neuron")
    p.add_argument("--i", required=True)
    p.add_argument("--reduce", action="store_true")
    add("reduce", cmd_reduce, "remove trivial and redundant neurons")

    geom = sub.add_parser("geom", help="exact half-space realizations")
    gsub = geom.add_subparsers(dest="geom_command", required=True)
    p = gsub.add_parser("member")
    p.add_argument("realization")
    p.add_argument("--point", required=True)
    p.set_defaults(func=cmd_geom_member)
    p = gsub.add_parser("witnesses")
    p.add_argument("realization")
    p.add_argument("witnesses")
    p.set_defaults(func=cmd_geom_witnesses)
    p = gsub.add_parser("code1d")
    p.add_argument("realization")
    p.set_defaults(func=cmd_geom_code1d)
    p = gsub.add_parser("trace")
    p.add_argument("realization")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.set_defaults(func=cmd_geom_trace)

    cert = sub.add_parser("cert", help="non-convexity certificates")
    csub = cert.add_subparsers(dest="cert_command", required=True)
    p = csub.add_parser("verify")
    p.add_argument("code")
    p.add_argument("cert", help="certificate JSON file or builtin name")
    p.set_defaults(func=cmd_cert_verify)
    p = csub.add_parser("builtin")
    p.add_argument("name", nargs="?")
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_cert_builtin)

    add("report", cmd_report, "full analysis of a registry code", code=False).add_argument("name")
    return parser


def render_text(out, indent=0) -> list[str]:
    pad = "  " * indent
    lines = []
    for key, value in out.items():
        if key == "ok":
            continue
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.extend(render_text(value, indent + 1))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{pad}{key}:")
            for item in value:
                lines.append(f"{pad}  - " + "  ".join(f"{k}={_flat(v)}" for k, v in item.items()))
        elif isinstance(value, list) and value and isinstance(value[0], list):
            lines.append(f"{pad}{key}:")
            for item in value:
                lines.append(f"{pad}  " + " -> ".join(_flat(v) for v in item))
        else:
            lines.append(f"{pad}{key}: {_flat(value)}")
    return lines


def _flat(v):
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_flat(x) for x in v) + "]"
    if v is None:
        return "-"
    return str(v)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else 0
    try:
        out = args.func(args)
        status = 0 if out.get("ok", True) else 1
    except UsageError as e:
        print(f"nc: {e}", file=sys.stderr)
        return 2
    except (NoFeasiblePath, NotAWalk, InfeasibleWalk) as e:
        out = {"ok": False, "error": type(e).__name__, "detail": str(e)}
        status = 1
    except (NeuralCodeError, json.JSONDecodeError, OSError, KeyError) as e:
        print(f"nc: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    out = jsonable(out)
    if args.quiet:
        return status
    if args.json:
        print(json.dumps(out, indent=2))
    else:
        print("ok" if out.get("ok", True) else "FAIL")
        print("\n".join(render_text(out)))
    return status


if __name__ == "__main__":
    sys.exit(main())
