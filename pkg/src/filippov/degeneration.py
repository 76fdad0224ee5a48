"""Degeneration certificates (parameterized bases) and non-degeneration criteria."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from . import linalg
from .errors import Pole, SingularBasis
from .exact import format_scalar, limit_at_zero, simplify
from .structure import NAryStructure, change_of_basis

CERTIFIED = "Certified"
POLE_FOUND = "PoleFound"
LIMIT_MISMATCH = "LimitMismatch"


@dataclass(frozen=True, eq=False)
class Witness:
    """Basis family ``E_i(t) = sum_j basis[i][j] e_j`` taking ``source`` to ``target`` as t -> 0.

    ``param_subst`` maps source parameters to functions of ``t`` (a parameterized
    index); parameters it leaves free are treated generically.
    """

    source: NAryStructure
    basis: Tuple[Tuple, ...]
    target: NAryStructure
    param_subst: Mapping[str, object] = field(default_factory=dict)
    source_id: str = ""
    target_id: str = ""
    label: str = ""

    @property
    def is_family(self) -> bool:
        return bool(self.param_subst)


def format_tuple(idx: Sequence[int]) -> str:
    return "(" + ",".join(str(i + 1) for i in idx) + ")"


def format_vector(vec: Sequence, symbol: str = "E") -> str:
    """Render a coefficient vector as e.g. ``t*E1 + alpha*t^2*E2``."""
    parts = []
    for j, c in enumerate(vec):
        c = simplify(c)
        if c == 0:
            continue
        basis = f"{symbol}{j + 1}"
        neg = False
        if isinstance(c, Fraction):
            neg = c < 0
            mag = -c if neg else c
            text = basis if mag == 1 else f"{format_scalar(mag)}*{basis}"
        else:
            s = format_scalar(c)
            if len(c.num) == 1 and c.num.lc() < 0:
                neg = True
                s = format_scalar(-c)
            multi = len(c.num) > 1 and not c.den.vars
            text = f"({s})*{basis}" if multi else f"{s}*{basis}"
        if not parts:
            parts.append(("-" if neg else "") + text)
        else:
            parts.append((" - " if neg else " + ") + text)
    return "".join(parts) if parts else "0"


@dataclass
class WitnessReport:
    constants: Dict[Tuple[int, ...], Tuple]
    regular: bool
    limit: Optional[NAryStructure]
    verdict: str
    where: Optional[Tuple[int, ...]] = None
    pole_order: Optional[int] = None

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED

    def formatted(self) -> Dict[str, str]:
        """Per-tuple constants in the new basis, keyed by 1-based tuples."""
        return {format_tuple(idx): format_vector(vec) for idx, vec in sorted(self.constants.items())}

    def lines(self) -> List[str]:
        out = []
        for idx, vec in sorted(self.constants.items()):
            args = ", ".join(f"E{i + 1}" for i in idx)
            out.append(f"[{args}] = {format_vector(vec)}")
        tail = self.verdict
        if self.where is not None:
            tail += f" at {format_tuple(self.where)}"
        if self.pole_order is not None:
            tail += f" (pole of order {self.pole_order})"
        return out + [tail]


def _substitute(mu: NAryStructure, subst: Mapping[str, object]) -> NAryStructure:
    if not subst:
        return mu
    return mu.subs(dict(subst))


def verify_witness(w: Witness) -> WitnessReport:
    """Compute the constants in the t-basis, their t -> 0 limits, and compare with the target."""
    src = _substitute(w.source, w.param_subst)
    if src.k != w.target.k or src.n != w.target.n:
        raise ValueError("source and target have different shapes")
    basis = [list(row) for row in w.basis]
    if simplify(linalg.det(basis)) == 0:
        raise SingularBasis("basis determinant vanishes identically")
    moved = change_of_basis(src, basis)
    consts = dict(moved.constants)
    limits = {}
    for idx in sorted(set(consts) | set(w.target.constants)):
        vec = consts.get(idx, (Fraction(0),) * src.k)
        lim = []
        for c in vec:
            try:
                lim.append(limit_at_zero(c))
            except Pole as p:
                return WitnessReport(consts, False, None, POLE_FOUND, idx, p.order)
        limits[idx] = tuple(lim)
    limit = NAryStructure(src.n, src.k, limits, w.target.name)
    for idx in sorted(set(limit.constants) | set(w.target.constants)):
        zero = (Fraction(0),) * src.k
        if limit.constants.get(idx, zero) != w.target.constants.get(idx, zero):
            return WitnessReport(consts, True, limit, LIMIT_MISMATCH, idx)
    return WitnessReport(consts, True, limit, CERTIFIED)


def verify_family_witness(w: Witness) -> WitnessReport:
    """Same contract as :func:`verify_witness`, for a source family with a parameterized index."""
    if not w.param_subst:
        raise ValueError("family witness needs a parameter substitution")
    missing = set(w.source.params) - set(w.param_subst)
    if missing:
        raise ValueError(f"parameter substitution misses {sorted(missing)}")
    return verify_witness(w)


# -- non-degeneration criteria -------------------------------------------------------------

CRITERIA_ORDER = ("AutDim", "Derived", "Ann", "AnnI", "Center", "DerAlpha", "TraceInv", "Socle")


@dataclass(frozen=True)
class NonDegenerationCertificate:
    """Reason why ``source`` cannot degenerate to ``target``.

    ``detail`` names the instance of the criterion (slot set, t, weight vector,
    exponent pair, or the intermediate node for Transitive), and ``values`` holds
    the two compared quantities in (source, target) order.
    """

    criterion: str
    detail: object = None
    values: Tuple = ()
    note: str = ""

    def describe(self) -> str:
        head = self.criterion if self.detail is None else f"{self.criterion}({_fmt(self.detail)})"
        if self.values:
            head += f": {_fmt(self.values[0])} vs {_fmt(self.values[1])}"
        if self.note:
            head += f" [{self.note}]"
        return head


@dataclass(frozen=True)
class Inconclusive:
    hints: Tuple[str, ...] = ()

    def describe(self) -> str:
        return "Inconclusive" + (f" ({'; '.join(self.hints)})" if self.hints else "")


def _fmt(x) -> str:
    if isinstance(x, tuple) and all(isinstance(y, (int, Fraction)) for y in x):
        return "(" + ",".join(str(y) for y in x) + ")"
    return str(x)


def trace_compatible(a, b) -> bool:
    """Whether c_{i,j}(A) = a allows c_{i,j}(B) = b along a degeneration A -> B.

    The conditions "L = c R identically", "R = 0 identically" and "L = R = 0
    identically" each cut out a closed GL-stable set, so they pass from A to B.
    """
    if a.tag == "None":
        return True
    if b.tag == "Indeterminate":
        return True
    if a.tag == "Indeterminate":
        return False
    if a.tag == "Infinity":
        return b.tag == "Infinity"
    # a is Value(c): b must be Value(c)
    return b.tag == "Value" and simplify(a.value - b.value) == 0


def refute(pa, pb, family: bool = False, target_family: bool = False):
    """First violated criterion for ``A -> B`` in :data:`CRITERIA_ORDER`, or ``Inconclusive``.

    With ``family=True``, ``pa`` is the generic profile of a one-parameter family
    and a criterion is used only when it holds for every member: dimension
    criteria compare the generic value (kernel dimensions can only grow and ranks
    only drop at special members), trace invariants must be parameter-free, and
    the socle is not used.
    """
    if target_family:
        return Inconclusive(("target is a family",))
    hints = []
    if family:
        if pa.aut_dim > pb.aut_dim:
            return NonDegenerationCertificate("AutDim", None, (pa.aut_dim, pb.aut_dim), "generic member")
    elif pa.aut_dim >= pb.aut_dim and pa.comparable() != pb.comparable():
        return NonDegenerationCertificate("AutDim", None, (pa.aut_dim, pb.aut_dim))
    if pa.dim_derived < pb.dim_derived:
        return NonDegenerationCertificate("Derived", None, (pa.dim_derived, pb.dim_derived))
    if pa.dim_ann > pb.dim_ann:
        return NonDegenerationCertificate("Ann", None, (pa.dim_ann, pb.dim_ann))
    for s in sorted(set(pa.dim_ann_I) & set(pb.dim_ann_I)):
        if pa.dim_ann_I[s] > pb.dim_ann_I[s]:
            return NonDegenerationCertificate("AnnI", tuple(i + 1 for i in s), (pa.dim_ann_I[s], pb.dim_ann_I[s]))
    for t in sorted(set(pa.dim_center_t) & set(pb.dim_center_t)):
        if pa.dim_center_t[t] > pb.dim_center_t[t]:
            return NonDegenerationCertificate("Center", t, (pa.dim_center_t[t], pb.dim_center_t[t]))
    for w in sorted(set(pa.dim_der_alpha) & set(pb.dim_der_alpha)):
        if pa.dim_der_alpha[w] > pb.dim_der_alpha[w]:
            return NonDegenerationCertificate("DerAlpha", w, (pa.dim_der_alpha[w], pb.dim_der_alpha[w]))
    for ij in sorted(set(pa.c_invariants) & set(pb.c_invariants)):
        a, b = pa.c_invariants[ij], pb.c_invariants[ij]
        if a.probabilistic or b.probabilistic:
            if not trace_compatible(a, b):
                hints.append(f"probabilistic c_{ij[0]}_{ij[1]} differs")
            continue
        if family and not a.is_parameter_free():
            continue
        if not trace_compatible(a, b):
            return NonDegenerationCertificate("TraceInv", ij, (a, b))
    if not family:
        sa, sb = pa.socle_dim, pb.socle_dim
        if isinstance(sa, int) and isinstance(sb, int) and sa > sb:
            return NonDegenerationCertificate("Socle", None, (sa, sb))
    return Inconclusive(tuple(hints))


def holds_along_degeneration(pa, pb, proper: bool) -> List[str]:
    """Every monotonicity condition that fails for a certified ``A -> B`` (empty means all hold)."""
    bad = []
    if proper and not pa.aut_dim < pb.aut_dim:
        bad.append("aut_dim")
    if pa.dim_derived < pb.dim_derived:
        bad.append("dim_derived")
    if pa.dim_ann > pb.dim_ann:
        bad.append("dim_ann")
    bad += [f"ann_I{s}" for s in pa.dim_ann_I if s in pb.dim_ann_I and pa.dim_ann_I[s] > pb.dim_ann_I[s]]
    bad += [f"center_{t}" for t in pa.dim_center_t if t in pb.dim_center_t and pa.dim_center_t[t] > pb.dim_center_t[t]]
    bad += [f"der_{w}" for w in pa.dim_der_alpha if w in pb.dim_der_alpha and pa.dim_der_alpha[w] > pb.dim_der_alpha[w]]
    for ij, a in pa.c_invariants.items():
        b = pb.c_invariants.get(ij)
        if b is not None and not (a.probabilistic or b.probabilistic) and not trace_compatible(a, b):
            bad.append(f"c_{ij}")
    if isinstance(pa.socle_dim, int) and isinstance(pb.socle_dim, int) and pa.socle_dim > pb.socle_dim:
        bad.append("socle")
    return bad
