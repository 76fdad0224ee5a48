"""Degeneration graph of the (n+1)-dimensional n-ary Filippov algebras.

Nodes are catalog names.  ``C2(alpha)`` stands for a generic member of the
family (alpha symbolic), ``C2(-1/4)`` for the distinguished member, and
``C2(*)`` for the family as a whole.  Edges from ``C2(*)`` to its members are
recorded with tag ``Member``: they take part in transitivity but are not proper
degenerations.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Set, Tuple

from .catalog import CatalogId, builtin_witnesses, make, witness_c2_b
from .degeneration import (
    Inconclusive,
    NonDegenerationCertificate,
    Witness,
    format_vector,
    refute,
    verify_witness,
)
from .errors import IncompleteClassification
from .invariants import InvariantProfile, ProfileConfig, TraceInvariantValue, profile

FAMILY = "C2(*)"
GENERIC = "C2(alpha)"
SPECIAL = "C2(-1/4)"
ZERO_NODE = "0"

Pair = Tuple[str, str]


def node_ids(n: int) -> Dict[str, CatalogId]:
    """Catalog nodes keyed by name (the family node maps to the symbolic C2)."""
    out = {
        ZERO_NODE: CatalogId("Zero", n),
        "B": CatalogId("B", n),
        "C1": CatalogId("C1", n),
        GENERIC: CatalogId("C2", n),
        SPECIAL: CatalogId("C2", n, alpha=Fraction(-1, 4)),
        "C3": CatalogId("C3", n),
    }
    for r in range(3, n + 2):
        out[f"D{r}"] = CatalogId("D", n, r=r)
    out[FAMILY] = CatalogId("C2", n)
    return out


@dataclass
class Edge:
    source: str
    target: str
    tag: str  # Witness | Member | Axiom | Transitive
    witness: Optional[Witness] = None
    via: Optional[str] = None


@dataclass
class DegenerationGraph:
    n: int
    nodes: List[str]
    profiles: Dict[str, InvariantProfile]
    edges: Dict[Pair, Edge]  # transitively closed, proper or member
    refuted: Dict[Pair, NonDegenerationCertificate]
    primary: Set[Pair]
    family_nodes: Set[str] = field(default_factory=lambda: {FAMILY})
    witness_reports: Dict[str, object] = field(default_factory=dict)

    def degenerates(self, a: str, b: str) -> bool:
        return a == b or (a, b) in self.edges

    def proper_edges(self) -> Set[Pair]:
        return {p for p, e in self.edges.items() if e.tag != "Member"}


def _closure(edges: Dict[Pair, Edge], nodes: Sequence[str]) -> Dict[Pair, Edge]:
    out = dict(edges)
    changed = True
    while changed:
        changed = False
        for (a, b) in list(out):
            for c in nodes:
                if (b, c) in out and a != c and (a, c) not in out:
                    member = out[(a, b)].tag == "Member" and out[(b, c)].tag == "Member"
                    out[(a, c)] = Edge(a, c, "Member" if member else "Transitive", via=b)
                    changed = True
    return out


def _sort_key(profiles, a, b):
    return (profiles[a].aut_dim, -profiles[b].aut_dim, a, b)


def _rule_certificate(a, b, edges, refuted, nodes) -> Optional[NonDegenerationCertificate]:
    """A -/-> B from D -> A, D -/-> B, or from B -> E, A -/-> E."""
    for d in nodes:
        if d not in (a, b) and (d, a) in edges and (d, b) in refuted:
            return NonDegenerationCertificate("Transitive", d, (), f"{d} -> {a} and {d} -/-> {b}")
    for e in nodes:
        if e not in (a, b) and (b, e) in edges and (a, e) in refuted:
            return NonDegenerationCertificate("Transitive", e, (), f"{b} -> {e} and {a} -/-> {e}")
    return None


def standard_witnesses(n: int) -> List[Witness]:
    """Shipped witnesses plus the C2 -> B witness specialized at the distinguished member."""
    ws = builtin_witnesses(n)
    special = witness_c2_b(n, Fraction(-1, 4))
    ws.insert(2, special)
    return ws


def _node_of(w: Witness) -> Tuple[str, str]:
    src = w.source_id
    if src == "C2(-1/4)" or src == SPECIAL:
        src = SPECIAL
    return src, w.target_id


def build_graph(
    n: int,
    witnesses: Optional[Sequence[Witness]] = None,
    profiles: Optional[Mapping[str, InvariantProfile]] = None,
    config: Optional[ProfileConfig] = None,
    nodes: Optional[Mapping[str, CatalogId]] = None,
) -> DegenerationGraph:
    ids = dict(nodes) if nodes is not None else node_ids(n)
    names = list(ids)
    profs = dict(profiles or {})
    cache: Dict[CatalogId, InvariantProfile] = {}
    for name, cid in ids.items():
        if name not in profs:
            if cid not in cache:
                cache[cid] = profile(make(cid), config)
            profs[name] = cache[cid]
    edges: Dict[Pair, Edge] = {}
    reports = {}
    for w in witnesses if witnesses is not None else standard_witnesses(n):
        src, tgt = _node_of(w)
        rep = verify_witness(w)
        reports[f"{src} -> {tgt}"] = rep
        if rep.certified and src in ids and tgt in ids:
            edges[(src, tgt)] = Edge(src, tgt, "Witness", witness=w)
    if FAMILY in ids:
        for member in (GENERIC, SPECIAL):
            if member in ids:
                edges[(FAMILY, member)] = Edge(FAMILY, member, "Member")
    for name in names:
        if name != ZERO_NODE and ZERO_NODE in ids:
            edges.setdefault((name, ZERO_NODE), Edge(name, ZERO_NODE, "Axiom"))
    edges = _closure(edges, names)

    refuted: Dict[Pair, NonDegenerationCertificate] = {}
    pairs = sorted(
        ((a, b) for a in names for b in names if a != b and (a, b) not in edges),
        key=lambda p: _sort_key(profs, *p),
    )
    pending = []
    for a, b in pairs:
        cert = _rule_certificate(a, b, edges, refuted, names)
        if cert is None:
            res = refute(profs[a], profs[b], family=a == FAMILY, target_family=b == FAMILY)
            cert = res if isinstance(res, NonDegenerationCertificate) else None
        if cert is None:
            pending.append((a, b))
        else:
            refuted[(a, b)] = cert
    changed = True
    while pending and changed:
        changed = False
        rest = []
        for a, b in pending:
            cert = _rule_certificate(a, b, edges, refuted, names)
            if cert is None:
                rest.append((a, b))
            else:
                refuted[(a, b)] = cert
                changed = True
        pending = rest
    if pending:
        raise IncompleteClassification(pending)

    return DegenerationGraph(
        n=n,
        nodes=names,
        profiles=profs,
        edges=edges,
        refuted=refuted,
        primary=transitive_reduction(edges, names),
        witness_reports=reports,
    )


def transitive_reduction(edges: Mapping[Pair, Edge], nodes: Sequence[str]) -> Set[Pair]:
    """Proper edges with no intermediate node; member edges count as paths but are never primary."""
    out = set()
    for (a, b), e in edges.items():
        if e.tag == "Member":
            continue
        if any(c not in (a, b) and (a, c) in edges and (c, b) in edges for c in nodes):
            continue
        out.add((a, b))
    return out


def figure_edges(g: DegenerationGraph) -> Set[Pair]:
    """Primary edges as drawn for the family: C2(-1/4) -> Y is folded into C2(alpha) -> Y."""
    return {(a, b) for (a, b) in g.primary if not (a == SPECIAL and (GENERIC, b) in g.primary)}


def _fold(name: str) -> str:
    return GENERIC if name in (FAMILY, SPECIAL) else name


def sources(g: DegenerationGraph) -> List[str]:
    return [v for v in g.nodes if not any((u, v) in g.edges for u in g.nodes if u != v)]


def components(g: DegenerationGraph) -> List[Set[str]]:
    """Downsets of the source nodes, with the family and its members shown as C2(alpha)."""
    out = []
    for s in sources(g):
        down = {s} | {b for (a, b) in g.edges if a == s}
        out.append({_fold(x) for x in down})
    maximal = [c for c in out if not any(c < d for d in out)]
    uniq = []
    for c in maximal:
        if c not in uniq:
            uniq.append(c)
    return sorted(uniq, key=lambda c: sorted(c))


def rigid_nodes(g: DegenerationGraph) -> List[str]:
    return [s for s in sources(g) if s not in g.family_nodes]


def levels(g: DegenerationGraph) -> Dict[str, int]:
    """Longest chain of proper degenerations from each node down to the zero algebra."""
    proper = g.proper_edges()
    memo: Dict[str, int] = {}

    def level(v: str) -> int:
        if v in memo:
            return memo[v]
        succ = [b for (a, b) in proper if a == v]
        memo[v] = 0 if not succ else 1 + max(level(b) for b in succ)
        return memo[v]

    return {v: level(v) for v in g.nodes}


# -- output -------------------------------------------------------------------------------


def _value_json(v) -> object:
    if isinstance(v, TraceInvariantValue):
        out = {"tag": v.tag}
        if v.tag == "Value":
            out["value"] = str(v.value)
        if v.probabilistic:
            out["probabilistic"] = True
        return out
    if isinstance(v, (int, str)):
        return v
    if isinstance(v, tuple):
        return [_value_json(x) for x in v]
    return str(v)


def certificate_json(c: NonDegenerationCertificate) -> dict:
    out = {"criterion": c.criterion}
    if c.detail is not None:
        d = c.detail
        out["detail"] = [str(x) for x in d] if isinstance(d, tuple) else str(d)
    if c.values:
        out["values"] = [_value_json(x) for x in c.values]
    if c.note:
        out["note"] = c.note
    return out


def to_dot(g: DegenerationGraph) -> str:
    fig = figure_edges(g)
    lines = ["digraph degenerations {", "  rankdir=TB;", "  node [shape=box];"]
    lv = levels(g)
    order = sorted((v for v in g.nodes if v != SPECIAL), key=lambda v: (-lv[v], v))
    for v in order:
        label = v if v != FAMILY else "C2(*)"
        lines.append(f'  "{v}" [label="{label}\\ndim Aut = {g.profiles[v].aut_dim}"];')
    if SPECIAL in g.nodes:
        lines.append(f'  "{SPECIAL}" [label="{SPECIAL}\\ndim Aut = {g.profiles[SPECIAL].aut_dim}", style=dashed];')
    for a, b in sorted(fig):
        attrs = []
        if a == SPECIAL:
            attrs.append('label="$\\alpha=-1/4$"')
        if a == FAMILY:
            attrs.append("style=dashed")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f'  "{a}" -> "{b}"{suffix};')
    lines.append("}")
    return "\n".join(lines) + "\n"


def profile_json(p: InvariantProfile) -> dict:
    out = {
        "n": p.n,
        "dim": p.k,
        "dim_derived": p.dim_derived,
        "dim_ann": p.dim_ann,
        "dim_ann_I": {",".join(str(i + 1) for i in s): d for s, d in sorted(p.dim_ann_I.items())},
        "dim_center_t": {str(t): d for t, d in sorted(p.dim_center_t.items())},
        "dim_der_alpha": {",".join(str(x) for x in w): d for w, d in sorted(p.dim_der_alpha.items())},
        "socle_dim": p.socle_dim if isinstance(p.socle_dim, int) else {"tag": "Unavailable", "reason": p.socle_dim.reason},
        "aut_dim": p.aut_dim,
    }
    for (i, j), v in sorted(p.c_invariants.items()):
        out[f"c_{i}_{j}"] = _value_json(v)
    if p.params:
        out["params"] = list(p.params)
    return out


def report_json(g: DegenerationGraph) -> dict:
    lv = levels(g)
    edges = []
    for (a, b), e in sorted(g.edges.items()):
        item = {"source": a, "target": b, "tag": e.tag, "primary": (a, b) in g.primary}
        if e.via:
            item["via"] = e.via
        if e.witness is not None:
            rep = g.witness_reports.get(f"{a} -> {b}")
            if rep is not None:
                item["constants"] = rep.formatted()
        edges.append(item)
    refuted = [
        {"source": a, "target": b, **certificate_json(c)} for (a, b), c in sorted(g.refuted.items())
    ]
    return {
        "n": g.n,
        "nodes": g.nodes,
        "profiles": {v: profile_json(g.profiles[v]) for v in g.nodes},
        "edges": edges,
        "refuted": refuted,
        "primary_edges": [list(p) for p in sorted(g.primary)],
        "figure_edges": [list(p) for p in sorted(figure_edges(g))],
        "components": [sorted(c) for c in components(g)],
        "rigid": rigid_nodes(g),
        "levels": lv,
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
