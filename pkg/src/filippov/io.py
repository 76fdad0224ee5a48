"""JSON formats for algebras, catalog references and witnesses (1-based indices)."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Mapping, Union

from .catalog import CatalogId, make
from .degeneration import Witness
from .errors import FilippovError, MalformedInput
from .exact import format_scalar, parse_scalar, scalar_vars
from .structure import NAryStructure

_CATALOG_TAGS = {"0": "Zero", "zero": "Zero", "Zero": "Zero", "B": "B", "C1": "C1", "C2": "C2", "C3": "C3", "D": "D"}


def load_json(path: Union[str, Path]):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as e:
        raise MalformedInput(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise MalformedInput(f"{path} is not valid JSON: {e}") from None


def _int(doc, key) -> int:
    v = doc.get(key)
    if isinstance(v, bool) or not isinstance(v, int):
        raise MalformedInput(f"field {key!r} must be an integer")
    return v


def algebra_from_json(doc: Mapping) -> NAryStructure:
    if not isinstance(doc, Mapping):
        raise MalformedInput("algebra must be a JSON object")
    if "catalog" in doc:
        return make(catalog_ref_from_json(doc))
    n, k = _int(doc, "n"), _int(doc, "dim")
    params = doc.get("params", [])
    if not isinstance(params, list) or not all(isinstance(p, str) for p in params):
        raise MalformedInput("params must be a list of names")
    products = doc.get("products", [])
    if not isinstance(products, list):
        raise MalformedInput("products must be a list")
    consts = {}
    for item in products:
        if not isinstance(item, Mapping) or "args" not in item or "value" not in item:
            raise MalformedInput("each product needs 'args' and 'value'")
        args = item["args"]
        if not isinstance(args, list) or not all(isinstance(a, int) and not isinstance(a, bool) for a in args):
            raise MalformedInput("args must be a list of integers")
        if len(args) != n or any(b <= a for a, b in zip(args, args[1:])):
            raise MalformedInput(f"args {args} must be {n} strictly increasing indices")
        if args[0] < 1 or args[-1] > k:
            raise MalformedInput(f"args {args} outside 1..{k}")
        idx = tuple(a - 1 for a in args)
        if idx in consts:
            raise MalformedInput(f"duplicate product {args}")
        value = item["value"]
        if not isinstance(value, Mapping):
            raise MalformedInput("value must map output indices to scalars")
        vec = [Fraction(0)] * k
        for j, lit in value.items():
            try:
                jj = int(j)
            except (TypeError, ValueError):
                raise MalformedInput(f"output index {j!r} is not an integer") from None
            if not 1 <= jj <= k:
                raise MalformedInput(f"output index {jj} outside 1..{k}")
            c = parse_scalar(lit)
            extra = set(scalar_vars(c)) - set(params)
            if extra:
                raise MalformedInput(f"undeclared parameters {sorted(extra)} in {lit!r}")
            vec[jj - 1] = c
        consts[idx] = tuple(vec)
    try:
        return NAryStructure(n, k, consts, doc.get("name", ""))
    except (ValueError, FilippovError) as e:
        raise MalformedInput(str(e)) from None


def algebra_to_json(mu: NAryStructure) -> dict:
    products = []
    for idx, vec in sorted(mu.constants.items()):
        value = {str(j + 1): format_scalar(c) for j, c in enumerate(vec) if c != 0}
        products.append({"args": [i + 1 for i in idx], "value": value})
    out = {"n": mu.n, "dim": mu.k, "params": list(mu.params), "products": products}
    if mu.name:
        out["name"] = mu.name
    return out


def catalog_ref_from_json(doc: Mapping) -> CatalogId:
    tag = _CATALOG_TAGS.get(str(doc.get("catalog")))
    if tag is None:
        # also accept full names such as "D4" or "C2(-1/4)"
        return CatalogId.parse(str(doc.get("catalog")), _int(doc, "n"))
    n = _int(doc, "n")
    r = doc.get("r")
    alpha = doc.get("alpha")
    if alpha is not None and alpha != "alpha":
        alpha = parse_scalar(alpha)
        if not isinstance(alpha, Fraction):
            raise MalformedInput("catalog alpha must be rational (or omitted for the symbolic family)")
    else:
        alpha = None
    return CatalogId(tag, n, r=r, alpha=alpha)


def catalog_ref_to_json(cid: CatalogId) -> dict:
    out = {"catalog": cid.tag, "n": cid.n}
    if cid.r is not None:
        out["r"] = cid.r
    if cid.alpha is not None:
        out["alpha"] = str(cid.alpha)
    return out


def _label(doc) -> str:
    if isinstance(doc, Mapping) and "catalog" in doc:
        try:
            return catalog_ref_from_json(doc).name
        except FilippovError:
            return ""
    return doc.get("name", "") if isinstance(doc, Mapping) else ""


def witness_from_json(doc: Mapping) -> Witness:
    if not isinstance(doc, Mapping):
        raise MalformedInput("witness must be a JSON object")
    for key in ("source", "basis", "target"):
        if key not in doc:
            raise MalformedInput(f"witness lacks {key!r}")
    source = algebra_from_json(doc["source"])
    target = algebra_from_json(doc["target"])
    subst_doc = doc.get("param_subst", {}) or {}
    if not isinstance(subst_doc, Mapping):
        raise MalformedInput("param_subst must be an object")
    subst = {name: parse_scalar(lit) for name, lit in subst_doc.items()}
    basis = doc["basis"]
    k = source.k
    if not isinstance(basis, list) or len(basis) != k or any(not isinstance(r, list) or len(r) != k for r in basis):
        raise MalformedInput(f"basis must be a {k}x{k} array of scalar literals")
    rows = tuple(tuple(parse_scalar(x) for x in row) for row in basis)
    return Witness(source, rows, target, subst, _label(doc["source"]), _label(doc["target"]))


def witness_to_json(w: Witness, source_ref=None, target_ref=None) -> dict:
    return {
        "source": source_ref or algebra_to_json(w.source),
        "target": target_ref or algebra_to_json(w.target),
        "param_subst": {k: format_scalar(v) for k, v in sorted(w.param_subst.items())},
        "basis": [[format_scalar(x) for x in row] for row in w.basis],
    }


def matrix_from_json(doc, k: int):
    if not isinstance(doc, list) or len(doc) != k or any(not isinstance(r, list) or len(r) != k for r in doc):
        raise MalformedInput(f"matrix must be a {k}x{k} array of scalar literals")
    return [[parse_scalar(x) for x in row] for row in doc]
