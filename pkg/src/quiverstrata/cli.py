"""Command line interface.

Every subcommand prints one document: JSON with sorted keys by default, or
TSV with ``--format tsv``. Rationals are written as ``p/q`` strings. Exit
codes: 0 success, 2 parse error, 3 precondition violation, 4 depth
inconclusive, 5 internal consistency failure.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from typing import Sequence

import yaml

from . import crystal, levelrank, modrep, mult, nonempty, stability, strata, verify
from .errors import ParseError, PreconditionError, QuiverError
from .kmcore import (
    AffineWeight,
    QuiverGraph,
    affine_d_graph,
    cartan_from_graph,
    cartan_type,
    cycle_graph,
    expected_dim,
    jordan_quiver,
    path_graph,
)


# ---------------------------------------------------------------------------
# parsing


def _mark(node) -> str:
    m = node.start_mark
    return f"line {m.line + 1}, column {m.column + 1}"


def _mapping_get(node, key: str):
    for k, v in node.value:
        if getattr(k, "value", None) == key:
            return v
    return None


def parse_quiver_file(text: str) -> QuiverGraph:
    """Parse a quiver document.

    The document is YAML (so also JSON) with ``vertices`` (labels),
    ``edges`` (label pairs; repeats are multiplicities, equal pairs loops) and
    an optional ``orientation`` (one directed pair per edge).

    Raises
    ------
    ParseError
        With the line and column of the offending element.
    """
    try:
        root = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f"line {mark.line + 1}, column {mark.column + 1}: " if mark else ""
        raise ParseError(f"{where}{getattr(exc, 'problem', None) or exc}") from None
    if not isinstance(root, yaml.MappingNode):
        where = _mark(root) if root is not None else "line 1, column 1"
        raise ParseError(f"{where}: expected a mapping with 'vertices' and 'edges'")
    data = yaml.safe_load(text)
    known = {"vertices", "edges", "orientation"}
    for k, _ in root.value:
        if k.value not in known:
            raise ParseError(f"{_mark(k)}: unknown field {k.value!r}")
    vnode = _mapping_get(root, "vertices")
    if vnode is None:
        raise ParseError(f"{_mark(root)}: missing field 'vertices'")
    if not isinstance(vnode, yaml.SequenceNode) or not vnode.value:
        raise ParseError(f"{_mark(vnode)}: 'vertices' must be a nonempty list")
    labels = [str(x) for x in data["vertices"]]
    for k, item in enumerate(vnode.value):
        if not isinstance(item, yaml.ScalarNode):
            raise ParseError(f"{_mark(item)}: vertices[{k}] must be a label")
    if len(set(labels)) != len(labels):
        raise ParseError(f"{_mark(vnode)}: duplicate vertex labels")

    def pairs(field_name: str) -> list:
        node = _mapping_get(root, field_name)
        if node is None:
            return []
        if not isinstance(node, yaml.SequenceNode):
            raise ParseError(f"{_mark(node)}: '{field_name}' must be a list of pairs")
        out = []
        for k, item in enumerate(node.value):
            if not isinstance(item, yaml.SequenceNode) or len(item.value) != 2:
                raise ParseError(f"{_mark(item)}: {field_name}[{k}] must be a pair of labels")
            pair = []
            for end in item.value:
                if not isinstance(end, yaml.ScalarNode) or str(yaml.safe_load(yaml.serialize(end))) not in labels:
                    raise ParseError(f"{_mark(end)}: {field_name}[{k}] names a missing vertex {end.value!r}")
                pair.append(str(yaml.safe_load(yaml.serialize(end))))
            out.append(tuple(pair))
        return out

    edges = pairs("edges")
    orient = pairs("orientation") if _mapping_get(root, "orientation") is not None else None
    try:
        return QuiverGraph(tuple(labels), tuple(edges), None if orient is None else tuple(orient))
    except PreconditionError as exc:
        raise ParseError(f"{_mark(root)}: {exc}") from None


def parse_int_vector(text: str, name: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(",")) if text.strip() else ()
    except ValueError:
        raise ParseError(f"--{name}: expected comma-separated integers, got {text!r}") from None


def parse_rational_vector(text: str, name: str) -> tuple:
    try:
        return tuple(Fraction(x.strip()) for x in text.split(","))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"--{name}: expected comma-separated p/q rationals, got {text!r}") from None


def parse_index_set(text: str | None, graph: QuiverGraph, name: str) -> frozenset:
    """Vertex labels separated by commas; empty string means the empty set."""
    if text is None or not text.strip():
        return frozenset()
    try:
        return graph.indices(x.strip() for x in text.split(","))
    except PreconditionError as exc:
        raise ParseError(f"--{name}: {exc}") from None


def named_graph(name: str) -> QuiverGraph:
    """``A<n>``, ``affineA<n>``, ``affineD<n>`` or ``jordan``."""
    try:
        if name == "jordan":
            return jordan_quiver()
        if name.startswith("affineA"):
            return cycle_graph(int(name[7:]) + 1)
        if name.startswith("affineD"):
            return affine_d_graph(int(name[7:]))
        if name.startswith("A"):
            return path_graph(int(name[1:]))
    except ValueError:
        pass
    raise ParseError(f"--graph: unknown graph name {name!r}")


def _graph(args) -> QuiverGraph:
    if args.quiver and args.graph:
        raise ParseError("give either --quiver or --graph, not both")
    if args.quiver:
        try:
            with open(args.quiver, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"--quiver: {exc}") from None
        return parse_quiver_file(text)
    if args.graph:
        return named_graph(args.graph)
    raise ParseError("a quiver is required: use --quiver FILE or --graph NAME")


def _vec(args, name: str, graph: QuiverGraph | None = None, required: bool = True):
    raw = getattr(args, name)
    if raw is None:
        if required:
            raise ParseError(f"--{name} is required")
        return None
    out = parse_int_vector(raw, name)
    if graph is not None and len(out) != graph.n:
        raise ParseError(f"--{name}: expected {graph.n} entries, got {len(out)}")
    return out


def _zeta(args, graph: QuiverGraph) -> stability.StabilityParam:
    if args.zeta is None:
        raise ParseError("--zeta is required")
    z = parse_rational_vector(args.zeta, "zeta")
    if len(z) != graph.n:
        raise ParseError(f"--zeta: expected {graph.n} entries, got {len(z)}")
    return stability.StabilityParam(z)


# ---------------------------------------------------------------------------
# output


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (frozenset, set)):
        return sorted(_jsonable(v) for v in x)
    return x


def render(doc, fmt: str) -> str:
    doc = _jsonable(doc)
    if fmt == "json":
        return json.dumps(doc, sort_keys=True)
    rows = doc.get("rows") if isinstance(doc, dict) else None
    lines = []
    if isinstance(rows, list) and rows and all(isinstance(r, dict) for r in rows):
        cols = sorted({k for r in rows for k in r})
        lines.append("\t".join(cols))
        for r in rows:
            lines.append("\t".join(_cell(r.get(c)) for c in cols))
        return "\n".join(lines)
    if isinstance(doc, dict):
        return "\n".join(f"{k}\t{_cell(doc[k])}" for k in sorted(doc))
    return _cell(doc)


def _cell(x) -> str:
    if isinstance(x, str):
        return x
    return json.dumps(x, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# subcommands


def cmd_cartan(args) -> dict:
    g = _graph(args)
    C = cartan_from_graph(g)
    return {"vertices": list(g.vertices), "cartan": C.tolist(), "type": cartan_type(C)}


def cmd_face(args) -> dict:
    g = _graph(args)
    C = cartan_from_graph(g)
    v, w = _vec(args, "v", g), _vec(args, "w", g)
    f = stability.face_of(_zeta(args, g), v, w, C)
    out = f.to_dict()
    out["isChamber"] = stability.is_chamber(f)
    return out


def _face_zeta(args, g, C):
    if args.ale is not None:
        return stability.ale_face(C, parse_index_set(args.ale, g, "ale")).sample_zeta
    if args.levi is not None:
        return stability.levi_face(parse_index_set(args.levi, g, "levi"), g.n).sample_zeta
    return _zeta(args, g)


def cmd_nonempty(args) -> dict:
    g = _graph(args)
    C = cartan_from_graph(g)
    v, w = _vec(args, "v", g), _vec(args, "w", g)
    verdict = nonempty.cb_stable_nonempty(C, v, w, _face_zeta(args, g, C), args.depth)
    out = {"nonempty": verdict.nonempty, "witness": verdict.witness}
    if args.audit:
        out["decompositionsChecked"] = verdict.decompositions_checked
    return out


def cmd_strata(args) -> dict:
    g = _graph(args)
    C = cartan_from_graph(g)
    v, w = _vec(args, "v", g), _vec(args, "w", g)
    if args.levi is not None:
        I0 = parse_index_set(args.levi, g, "levi")
        rows = [{"v0": list(v0), "residual": None if res is None else list(res)}
                for v0, res in strata.enumerate_strata_levi(C, v, w, I0, args.depth)]
        return {"face": "levi", "rows": rows}
    if args.ale is None:
        raise ParseError("strata needs --ale I00 or --levi I0")
    I00 = parse_index_set(args.ale, g, "ale")
    amb = expected_dim(v, w, C)
    rows = []
    for s in strata.enumerate_strata_ale(C, v, w, I00, args.depth):
        rec = s.to_dict()
        lm = strata.stratum_local_model(C, s, w)
        rec["localModel"] = lm.to_dict()
        rec["blockTypes"] = lm.block_types()
        rec["stratumDim"] = strata.stratum_dim(C, s, w)
        rows.append(rec)
    return {"face": "ale", "ambientDim": amb, "rows": rows}


def cmd_mult(args) -> dict:
    g = _graph(args)
    C = cartan_from_graph(g)
    if args.depth is None:
        raise ParseError("--depth is required")
    if args.kind == "root":
        data = mult.positive_roots(C, args.depth)
        rows = [{"v": list(b), "mult": m} for b, m in sorted(data.roots.items(), key=lambda x: (sum(x[0]), x[0]))]
        return {"kind": "root", "depth": args.depth, "rows": rows}
    w = _vec(args, "w", g)
    table = mult.freudenthal(w, C, args.depth)
    v = _vec(args, "v", g, required=False)
    if v is not None:
        out = {"kind": "weight", "w": list(w), "v": list(v), "mult": table(v)}
        if args.kind == "extended":
            out["extendedRootMult"] = mult.root_mult_extended(C, v, w)
        return out
    rows = [{"v": list(x), "mult": table.mults[x]} for x in table.support()]
    return {"kind": "weight", "w": list(w), "depth": args.depth, "rows": rows}


def cmd_crystal(args) -> dict:
    if args.r is None or args.depth is None:
        raise ParseError("crystal needs --r and --depth")
    r = args.r
    if args.residues is None:
        i0 = args.i0 if args.i0 is not None else 0
        els = crystal.crystal_b_lambda(r, i0, args.depth)
        rows = [{"parts": e.to_list(), "v": list(e.content()),
                 "epsilon": [crystal.epsilon(e, i) for i in range(r)],
                 "phi": [crystal.phi(e, i) for i in range(r)]} for e in els]
        return {"r": r, "i0": i0 % r, "depth": args.depth, "rows": rows}
    residues = parse_int_vector(args.residues, "residues")
    if args.v is not None:
        v = parse_int_vector(args.v, "v")
        return {"r": r, "residues": list(residues), "v": list(v),
                "mvCount": crystal.mv_count(r, residues, v, args.depth)}
    cr = crystal.tensor_crystal(r, residues, args.depth)
    if args.levi is not None:
        I0 = [int(x) for x in args.levi.split(",")] if args.levi.strip() else []
        picked = crystal.levi_highest(cr, I0)
    else:
        picked = [(x, x.weight()) for x in cr.elements]
    rows = [dict(x.to_dict(), weight=wt.to_dict()) for x, wt in picked]
    return {"r": r, "residues": list(residues), "depth": args.depth, "rows": rows}


def _gyd(text: str | None, r: int | None, name: str) -> levelrank.GYD:
    if text is None or r is None:
        raise ParseError(f"--{name} and its level are required")
    return levelrank.GYD(parse_int_vector(text, name), r)


def cmd_levelrank(args) -> dict:
    lam = _gyd(args.lam, args.r, "lam")
    if args.action == "maya":
        M = levelrank.gyd_to_maya(lam)
        t = levelrank.transpose(lam)
        return {
            "lambda": lam.to_dict(),
            "weight": list(levelrank.gyd_to_weight(lam).framing),
            "deviations": sorted([i, p, str(n)] for i, p, n in M.deviations),
            "charge": levelrank.charge(M),
            "degree": levelrank.degree(M),
            "transpose": t.to_dict(),
        }
    if args.depth is None:
        raise ParseError("--depth is required")
    if args.action == "duality":
        if args.mu is None:
            raise ParseError("--mu is required")
        mu = parse_int_vector(args.mu, "mu")
        dval = Fraction(args.dval) if args.dval is not None else Fraction(0)
        rep = levelrank.duality_dims(lam, AffineWeight(mu, (0,) * len(mu), dval), args.depth)
        return rep.to_dict()
    lam1 = _gyd(args.lam1, args.r1, "lam1")
    lam2 = _gyd(args.lam2, args.r2, "lam2")
    shift = args.shift or 0
    return {"multiplicity": levelrank.tensor_multiplicity(lam, lam1, lam2, args.depth, shift),
            "deltaShift": shift}


def cmd_modrep(args) -> dict:
    g = _graph(args)
    v, w = _vec(args, "v", g), _vec(args, "w", g)
    q = args.field or 2
    rng = random.Random(args.seed or 0)
    m = modrep.random_module(g, v, w, q, rng, mu_zero=not args.any_mu)
    zt = stability.normalize(_zeta(args, g), v, w)
    verdict = modrep.stability_verdict(m, zt)
    out = {"module": m.to_dict(), "verdict": verdict, "hn": modrep.hn_filtration(m, zt).to_dict()}
    if modrep.is_semistable(verdict):
        out["jh"] = [{"dims": list(d), "wFlag": fl} for d, fl, _ in modrep.jh_factors(m, zt)]
    return out


def cmd_verify(args) -> dict:
    results = verify.run_suite(args.suite, args.depth, args.seed or 0)
    rows = [r.to_dict() for r in results]
    return {"suite": args.suite, "passed": all(r.passed for r in results), "rows": rows}


COMMANDS = {
    "cartan": cmd_cartan,
    "face": cmd_face,
    "nonempty": cmd_nonempty,
    "strata": cmd_strata,
    "mult": cmd_mult,
    "crystal": cmd_crystal,
    "levelrank": cmd_levelrank,
    "modrep": cmd_modrep,
    "verify": cmd_verify,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiver", help="quiver file (YAML or JSON)")
    common.add_argument("--graph", help="named graph: A<n>, affineA<n>, affineD<n>, jordan")
    common.add_argument("--v", help="dimension vector, comma separated")
    common.add_argument("--w", help="framing vector, comma separated")
    common.add_argument("--zeta", help="stability parameter, comma separated p/q")
    common.add_argument("--i0", type=int, help="residue of the fundamental weight")
    common.add_argument("--depth", type=int)
    common.add_argument("--field", type=int, choices=(2, 3))
    common.add_argument("--seed", type=int)
    common.add_argument("--format", choices=("json", "tsv"), default="json")

    p = _Parser(prog="quiverstrata", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("cartan", parents=[common])
    sub.add_parser("face", parents=[common])
    s = sub.add_parser("nonempty", parents=[common])
    s.add_argument("--ale", help="use the ALE face sample for this I00")
    s.add_argument("--levi", help="use the Levi face sample for this I0")
    s.add_argument("--audit", action="store_true", help="also report the number of decompositions checked")
    s = sub.add_parser("strata", parents=[common])
    s.add_argument("--ale")
    s.add_argument("--levi")
    s = sub.add_parser("mult", parents=[common])
    s.add_argument("--kind", choices=("weight", "root", "extended"), default="weight")
    s = sub.add_parser("crystal", parents=[common])
    s.add_argument("--r", type=int)
    s.add_argument("--residues", help="one residue per tensor factor")
    s.add_argument("--levi", help="residues i with epsilon_i = 0 required")
    s = sub.add_parser("levelrank", parents=[common])
    s.add_argument("action", choices=("maya", "duality", "tensor"))
    s.add_argument("--lam")
    s.add_argument("--r", type=int, help="level of --lam")
    s.add_argument("--mu", help="dominant coefficients of mu_bar")
    s.add_argument("--dval", help="pairing of mu_bar with d")
    s.add_argument("--lam1")
    s.add_argument("--r1", type=int)
    s.add_argument("--lam2")
    s.add_argument("--r2", type=int)
    s.add_argument("--shift", type=int, help="delta shift of the target")
    s = sub.add_parser("modrep", parents=[common])
    s.add_argument("--any-mu", action="store_true", help="do not require the moment map to vanish")
    s = sub.add_parser("verify", parents=[common])
    s.add_argument("--suite", choices=sorted(verify.SUITES), default="all")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    fmt = "json"
    try:
        args = build_parser().parse_args(argv)
        fmt = args.format
        doc = COMMANDS[args.command](args)
    except QuiverError as exc:
        err = {"error": type(exc).__name__, "message": str(exc), "exitCode": exc.exit_code}
        print(json.dumps(err, sort_keys=True), file=sys.stderr)
        return exc.exit_code
    print(render(doc, fmt))
    if args.command == "verify" and not doc["passed"]:
        return 1
    return 0


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
