"""Command-line front end.

Exit codes: 0 success, 1 check failed (violations, uncertified witness,
non-automorphism), 2 malformed input, 3 inconclusive refutation.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

from . import graph as graphmod
from .catalog import CatalogId, catalog_ids, expected_aut_dim, make
from .degeneration import Inconclusive, format_tuple, format_vector, refute, verify_witness
from .errors import FilippovError, InconsistentAutomorphismCheck, IncompleteClassification, MalformedInput
from .exact import parse_scalar
from .invariants import ProfileConfig, aut_dim, profile
from .io import algebra_from_json, algebra_to_json, load_json, matrix_from_json, witness_from_json
from .structure import NAryStructure, check_filippov, is_automorphism

EXIT_OK, EXIT_FAIL, EXIT_MALFORMED, EXIT_INCONCLUSIVE = 0, 1, 2, 3


def _out(text: str = "") -> None:
    sys.stdout.write(text + "\n")


def _catalog_id(name: str, n: Optional[int], r: Optional[int] = None, alpha: Optional[str] = None) -> CatalogId:
    if n is None:
        raise MalformedInput("--n is required with a catalog name")
    if name == "D" and r is not None:
        return CatalogId("D", n, r=r)
    if name == "C2" and alpha is not None:
        val = parse_scalar(alpha)
        if not isinstance(val, Fraction):
            raise MalformedInput("--alpha must be a rational literal")
        return CatalogId("C2", n, alpha=val)
    if r is not None and name != "D":
        raise MalformedInput("--r only applies to D")
    return CatalogId.parse(name, n)


def _algebra(args) -> NAryStructure:
    if getattr(args, "file", None):
        return algebra_from_json(load_json(args.file))
    if getattr(args, "catalog", None):
        return make(_catalog_id(args.catalog, args.n, args.r, args.alpha))
    raise MalformedInput("give an algebra with --catalog NAME --n N or --file algebra.json")


def _operand(text: str, n: Optional[int]) -> NAryStructure:
    if text.endswith(".json") or Path(text).is_file():
        return algebra_from_json(load_json(text))
    return make(_catalog_id(text, n))


def _config(args) -> ProfileConfig:
    cfg = ProfileConfig()
    if getattr(args, "config", None):
        doc = load_json(args.config)
        if not isinstance(doc, dict):
            raise MalformedInput("config must be a JSON object")
        known = {"slot_sets", "centers", "weights", "pairs", "term_budget", "seed", "socle"}
        extra = set(doc) - known
        if extra:
            raise MalformedInput(f"unknown config keys {sorted(extra)}")
        try:
            kw = {}
            if "slot_sets" in doc:
                kw["slot_sets"] = tuple(tuple(int(i) - 1 for i in s) for s in doc["slot_sets"])
            if "centers" in doc:
                kw["centers"] = tuple(int(t) for t in doc["centers"])
            if "weights" in doc:
                kw["weights"] = tuple(tuple(Fraction(str(x)) for x in w) for w in doc["weights"])
            if "pairs" in doc:
                kw["pairs"] = tuple((int(i), int(j)) for i, j in doc["pairs"])
            for key in ("term_budget", "seed"):
                if key in doc:
                    kw[key] = int(doc[key])
            if "socle" in doc:
                kw["socle"] = bool(doc["socle"])
        except (TypeError, ValueError) as e:
            raise MalformedInput(f"bad config: {e}") from None
        cfg = ProfileConfig(**{**cfg.__dict__, **kw})
    overrides = {}
    if getattr(args, "seed", None) is not None:
        overrides["seed"] = args.seed
    if getattr(args, "term_budget", None) is not None:
        overrides["term_budget"] = args.term_budget
    if overrides:
        cfg = ProfileConfig(**{**cfg.__dict__, **overrides})
    return cfg


# -- commands ------------------------------------------------------------------------------


def cmd_check(args) -> int:
    mu = _algebra(args)
    bad = check_filippov(mu)
    if not bad:
        _out("Pass")
        return EXIT_OK
    _out(f"Fail: {len(bad)} violation(s)")
    limit = args.max_violations
    for v in bad[:limit]:
        _out(f"  x={format_tuple(v.x)} y={format_tuple(v.y)} residual={format_vector(v.residual, 'e')}")
    if len(bad) > limit:
        _out(f"  ... {len(bad) - limit} more")
    return EXIT_FAIL


def cmd_invariants(args) -> int:
    mu = _algebra(args)
    p = profile(mu, _config(args))
    doc = graphmod.profile_json(p)
    if args.json:
        sys.stdout.write(graphmod.dumps(doc))
        return EXIT_OK
    for key in sorted(doc):
        _out(f"{key}: {doc[key]}")
    for key, msg in sorted(p.errors.items()):
        _out(f"note: {key} fell back to random evaluation ({msg})")
    return EXIT_OK


def cmd_aut(args) -> int:
    mu = _algebra(args)
    d = aut_dim(mu)
    _out(f"aut_dim: {d}")
    if args.catalog:
        cid = _catalog_id(args.catalog, args.n, args.r, args.alpha)
        _out(f"expected: {expected_aut_dim(cid)}")
    if args.matrix:
        s = matrix_from_json(load_json(args.matrix), mu.k)
        ok = is_automorphism(mu, s)
        _out("automorphism: yes" if ok else "automorphism: no")
        return EXIT_OK if ok else EXIT_FAIL
    return EXIT_OK


def cmd_degenerate(args) -> int:
    w = witness_from_json(load_json(args.witness))
    rep = verify_witness(w)
    if args.json:
        doc = {"verdict": rep.verdict, "constants": rep.formatted()}
        if rep.where is not None:
            doc["where"] = format_tuple(rep.where)
        if rep.pole_order is not None:
            doc["pole_order"] = rep.pole_order
        sys.stdout.write(graphmod.dumps(doc))
    else:
        for line in rep.lines():
            _out(line)
    return EXIT_OK if rep.certified else EXIT_FAIL


def cmd_refute(args) -> int:
    cfg = _config(args)
    family = args.a in (graphmod.FAMILY, "C2(*)")
    if family:
        if args.n is None:
            raise MalformedInput("--n is required with a catalog name")
        a = make(CatalogId("C2", args.n))
    else:
        a = _operand(args.a, args.n)
    b = _operand(args.b, args.n)
    if (a.n, a.k) != (b.n, b.k):
        raise MalformedInput("the two algebras have different shapes")
    res = refute(profile(a, cfg), profile(b, cfg), family=family, target_family=args.b == graphmod.FAMILY)
    if args.json:
        doc = {"inconclusive": True, "hints": list(res.hints)} if isinstance(res, Inconclusive) else graphmod.certificate_json(res)
        sys.stdout.write(graphmod.dumps(doc))
    else:
        _out(f"{args.a} -/-> {args.b}: {res.describe()}" if not isinstance(res, Inconclusive) else res.describe())
    return EXIT_INCONCLUSIVE if isinstance(res, Inconclusive) else EXIT_OK


def cmd_graph(args) -> int:
    if args.n is None or args.n < 2:
        raise MalformedInput("graph needs --n N with N >= 2")
    g = graphmod.build_graph(args.n, config=_config(args))
    if args.dot:
        Path(args.dot).write_text(graphmod.to_dot(g))
    if args.report:
        Path(args.report).write_text(graphmod.dumps(graphmod.report_json(g)))
    if not args.dot and not args.report:
        sys.stdout.write(graphmod.to_dot(g))
        return EXIT_OK
    _out(f"n={g.n}: {len(g.nodes)} nodes, {len(g.proper_edges())} proper degenerations, {len(g.refuted)} refuted pairs")
    for a, b in sorted(graphmod.figure_edges(g)):
        _out(f"  {a} -> {b}")
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.n is None or args.n < 2:
        raise MalformedInput("catalog needs --n N with N >= 2")
    if args.action == "list":
        _out(f"{'name':<10} {'dim':>3} {'aut_dim':>7}")
        for cid in catalog_ids(args.n):
            _out(f"{cid.name:<10} {args.n + 1:>3} {aut_dim(make(cid)):>7}")
        return EXIT_OK
    if not args.catalog:
        raise MalformedInput("catalog emit needs --catalog NAME")
    mu = make(_catalog_id(args.catalog, args.n, args.r, args.alpha))
    sys.stdout.write(graphmod.dumps(algebra_to_json(mu)))
    return EXIT_OK


# -- parser --------------------------------------------------------------------------------


def _add_algebra_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--catalog", help="catalog name: 0, B, C1, C2, C3, D (with --r), D4, C2(-1/4)")
    p.add_argument("--r", type=int, help="index r of D_r")
    p.add_argument("--alpha", help="rational parameter of C2; omit for the symbolic family")
    p.add_argument("--file", help="algebra JSON file")
    p.add_argument("--n", type=int, help="arity n (dimension n+1)")


def _add_profile_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, help="seed for randomized steps (default 0)")
    p.add_argument("--config", help="profile configuration JSON")
    p.add_argument("--term-budget", type=int, dest="term_budget", help="term budget for symbolic trace expansion")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="filippov", description="Degenerations of Filippov n-Lie algebras of dimension n+1")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="verify the fundamental identity")
    _add_algebra_flags(p)
    p.add_argument("--max-violations", type=int, default=20, dest="max_violations")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("invariants", help="print the invariant profile")
    _add_algebra_flags(p)
    _add_profile_flags(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("aut", help="automorphism group dimension and membership test")
    _add_algebra_flags(p)
    p.add_argument("--matrix", help="JSON square matrix (column j is the image of e_j)")
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("degenerate", help="verify a degeneration witness")
    p.add_argument("--witness", required=True, help="witness JSON file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_degenerate)

    p = sub.add_parser("refute", help="search for a non-degeneration certificate A -/-> B")
    p.add_argument("--a", required=True, help="catalog name, C2(*) for the family, or algebra JSON file")
    p.add_argument("--b", required=True, help="catalog name or algebra JSON file")
    p.add_argument("--n", type=int)
    p.add_argument("--json", action="store_true")
    _add_profile_flags(p)
    p.set_defaults(func=cmd_refute)

    p = sub.add_parser("graph", help="build the degeneration graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--dot", help="write DOT here")
    p.add_argument("--report", help="write the JSON report here")
    _add_profile_flags(p)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("catalog", help="list or emit catalog algebras")
    p.add_argument("action", choices=("list", "emit"))
    _add_algebra_flags(p)
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (IncompleteClassification, InconsistentAutomorphismCheck) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_FAIL
    except (FilippovError, ValueError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
