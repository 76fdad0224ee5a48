"""The ten acceptance criteria, one test (or test group) per criterion.

Each test carries ``@pytest.mark.criterion``; the conftest hook aggregates the
outcomes and prints one PASS/FAIL line per criterion at the end of the run.
Run ``pytest tests/test_acceptance.py`` to see only these.
"""

import random
import re
from fractions import Fraction

import pytest

import oracle
from conftest import cached_graph
from filippov import linalg
from filippov.catalog import (
    CatalogId,
    automorphism_sample,
    builtin_witnesses,
    catalog_ids,
    expected_aut_dim,
    make,
    random_automorphism_params,
    violating_automorphism_params,
    witness_c1_b,
    witness_c2_b,
    witness_d_chain,
    witness_family_c1,
)
from filippov.degeneration import (
    CERTIFIED,
    Inconclusive,
    holds_along_degeneration,
    refute,
    trace_compatible,
    verify_family_witness,
    verify_witness,
)
from filippov.errors import ConstraintViolated
from filippov.exact import RatFunc, simplify
from filippov.graph import FAMILY, components, figure_edges, levels, node_ids, rigid_nodes
from filippov.invariants import aut_dim, profile, trace_invariant
from filippov.structure import NAryStructure, change_of_basis, check_filippov, filippov_residual, is_automorphism

F = Fraction
ALPHA = RatFunc.var("alpha")


def rational_ids(n, alphas=(F(0), F(1), F(-1, 4))):
    return [c for c in catalog_ids(n, alphas) if c.tag != "C2" or c.alpha is not None]


# -- 1 ------------------------------------------------------------------------------------


@pytest.mark.criterion(1, "identity suite: catalog passes for n = 2..6, perturbations are located")
@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_c1_catalog_passes(n):
    for cid in catalog_ids(n, [F(0), F(1), F(-1, 4), F(-1, 2)]):
        assert check_filippov(make(cid)) == [], cid.name


def _perturb(rng, n):
    # a single product on the zero algebra is often itself Filippov (B is one), so it is no perturbation
    cid = rng.choice([c for c in rational_ids(n) if c.tag != "Zero"])
    mu = make(cid)
    k = mu.k
    idx = tuple(sorted(rng.sample(range(k), n)))
    extra = tuple(F(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3)) for _ in range(k))
    consts = dict(mu.constants)
    old = consts.get(idx, (0,) * k)
    consts[idx] = tuple(a + b for a, b in zip(old, extra))
    return cid, NAryStructure(n, k, consts)


@pytest.mark.criterion(1, "identity suite: catalog passes for n = 2..6, perturbations are located")
def test_c1_perturbations_fail_with_located_tuple():
    rng = random.Random(2024)
    for trial in range(20):
        n = (2, 3, 4)[trial % 3]
        cid, bad = _perturb(rng, n)
        violations = check_filippov(bad)
        assert violations, (trial, cid.name)
        for v in violations[:10]:
            # the reported tuple really fails: recomputed residual is nonzero
            assert any(x != 0 for x in filippov_residual(bad, v.x, v.y))
            assert tuple(filippov_residual(bad, v.x, v.y)) == tuple(v.residual)
        if n <= 3:
            ref = {(x, y) for x, y in oracle.filippov_violations(bad) if list(x) == sorted(set(x)) and list(y) == sorted(set(y))}
            assert {(v.x, v.y) for v in violations} == ref


# -- 2 ------------------------------------------------------------------------------------


def _aut_formula(cid):
    n = cid.n
    if cid.tag == "B":
        return n * n + n
    if cid.tag in ("C1", "C2"):
        return n * n
    if cid.tag == "C3":
        return n * n + 2
    r = cid.r
    return (n + 1 - r) * (n + 1) + r * (r - 1) // 2


@pytest.mark.criterion(2, "automorphism dimensions match the closed formulas for n = 2..5")
@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_c2_aut_dims(n):
    for cid in catalog_ids(n, [F(0), F(1), F(-1, 4)]):
        if cid.tag == "Zero":
            continue
        assert aut_dim(make(cid)) == _aut_formula(cid) == expected_aut_dim(cid), cid.name
    if n == 3:
        got = [aut_dim(make(CatalogId.parse(x, 3))) for x in ("B", "C1", "C2", "C3", "D3", "D4")]
        assert got == [12, 9, 9, 11, 7, 6]


# -- 3 ------------------------------------------------------------------------------------


SAMPLED = [c for n in (2, 3, 4) for c in rational_ids(n, (F(0), F(2), F(-1, 4))) if c.tag != "Zero"]


@pytest.mark.criterion(3, "automorphism families: 50 admissible samples pass, 10 violating samples are rejected")
@pytest.mark.parametrize("cid", SAMPLED, ids=lambda c: f"{c.name}-n{c.n}")
def test_c3_automorphism_families(cid):
    rng = random.Random(sum(map(ord, cid.name)) * 31 + cid.n)
    mu = make(cid)
    for _ in range(50):
        s = automorphism_sample(cid, random_automorphism_params(cid, rng))
        assert linalg.det(s) != 0 and is_automorphism(mu, s)
    for _ in range(10):
        params, condition = violating_automorphism_params(cid, rng)
        with pytest.raises(ConstraintViolated) as info:
            automorphism_sample(cid, params)
        assert info.value.condition == condition


# -- 4 ------------------------------------------------------------------------------------


@pytest.mark.criterion(4, "c11(C3) = 2, c11(D_{n+1}) = 0, c11(C2(alpha)) = 1/(2 alpha + 1) for n = 2..4")
@pytest.mark.parametrize("n", [2, 3, 4])
def test_c4_trace_invariants(n):
    v = trace_invariant(make(CatalogId("C3", n)), 1, 1)
    assert (v.tag, v.value) == ("Value", 2)
    v = trace_invariant(make(CatalogId("D", n, r=n + 1)), 1, 1)
    assert (v.tag, v.value) == ("Value", 0)
    v = trace_invariant(make(CatalogId("C2", n)), 1, 1)
    assert v.tag == "Value" and not v.probabilistic
    assert simplify(v.value - 1 / (2 * ALPHA + 1)) == 0
    assert str(v.value) == "1/(2*alpha + 1)"


# -- 5 ------------------------------------------------------------------------------------


_SUP = str.maketrans("⁰¹²³⁴⁵⁶⁷⁸⁹₀₁₂₃₄₅₆₇₈₉α", "01234567890123456789a")


def canon(s: str) -> str:
    s = s.replace("alpha", "α").translate(_SUP)
    return re.sub(r"[\s*^{}_]", "", s)


@pytest.mark.criterion(5, "all witness families certify for n = 2..5 with the displayed constants")
@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_c5_witness_suite(n):
    for w in builtin_witnesses(n):
        rep = (verify_family_witness if w.is_family else verify_witness)(w)
        assert rep.verdict == CERTIFIED and rep.limit == w.target, w.label
    all_but_2 = "(" + ",".join(str(i) for i in range(1, n + 2) if i != 2) + ")"
    assert canon(verify_witness(witness_c1_b(n)).formatted()[all_but_2]) == canon("t²E₂")
    assert canon(verify_witness(witness_c2_b(n)).formatted()[all_but_2]) == canon("tE₁+αt²E₂")
    for r in range(4, n + 2):
        key = "(" + ",".join(str(i) for i in range(1, n + 2) if i != r) + ")"
        shown = "t^{2r-4}E_r".replace("2r-4", str(2 * r - 4)).replace("_r", str(r))
        assert canon(verify_witness(witness_d_chain(n, r)).formatted()[key]) == canon(shown)


# -- 6 ------------------------------------------------------------------------------------


@pytest.mark.criterion(6, "the family witness C2(*) -> C1 certifies for n = 2..4")
@pytest.mark.parametrize("n", [2, 3, 4])
def test_c6_family_witness(n):
    w = witness_family_c1(n)
    rep = verify_family_witness(w)
    assert rep.verdict == CERTIFIED
    assert rep.limit == make(CatalogId("C1", n))
    # the index really moves: alpha depends on t
    assert any(not isinstance(f, (int, Fraction)) for f in w.param_subst.values())


# -- 7 ------------------------------------------------------------------------------------


def _figure(n):
    edges = {("B", "0"), ("C1", "B"), ("C2(alpha)", "B"), ("C2(-1/4)", "C3"), ("C3", "0"), ("D3", "C1"), ("C2(*)", "C1")}
    return edges | {(f"D{r}", f"D{r - 1}") for r in range(4, n + 2)}


@pytest.mark.criterion(7, "graph: every pair classified, figure edges, components, rigid node, levels")
@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_c7_graph(n):
    g = cached_graph(n)
    for a in g.nodes:
        for b in g.nodes:
            if a != b:
                assert ((a, b) in g.edges) != ((a, b) in g.refuted), (a, b)
    assert figure_edges(g) == _figure(n)
    assert sorted(map(sorted, components(g))) == sorted(
        [sorted({"0", "B", "C1", "C2(alpha)", "C3"}), sorted({"0", "B", "C1"} | {f"D{r}" for r in range(3, n + 2)})]
    )
    assert rigid_nodes(g) == [f"D{n + 1}"]
    lv = levels(g)
    assert lv["B"] == lv["C3"] == 1


# -- 8 ------------------------------------------------------------------------------------


def _certificate_holds(cert, pa, pb, family):
    """Re-check a recorded certificate against freshly computed profiles."""
    c, d, vals = cert.criterion, cert.detail, cert.values
    if c == "AutDim":
        if vals != (pa.aut_dim, pb.aut_dim):
            return False
        return pa.aut_dim > pb.aut_dim if family else pa.aut_dim >= pb.aut_dim and pa.comparable() != pb.comparable()
    if c == "Derived":
        return vals == (pa.dim_derived, pb.dim_derived) and pa.dim_derived < pb.dim_derived
    if c == "Ann":
        return vals == (pa.dim_ann, pb.dim_ann) and pa.dim_ann > pb.dim_ann
    if c == "AnnI":
        s = tuple(i - 1 for i in d)
        return vals == (pa.dim_ann_I[s], pb.dim_ann_I[s]) and vals[0] > vals[1]
    if c == "Center":
        return vals == (pa.dim_center_t[d], pb.dim_center_t[d]) and vals[0] > vals[1]
    if c == "DerAlpha":
        return vals == (pa.dim_der_alpha[d], pb.dim_der_alpha[d]) and vals[0] > vals[1]
    if c == "TraceInv":
        a, b = pa.c_invariants[d], pb.c_invariants[d]
        if a.probabilistic or b.probabilistic or (family and not a.is_parameter_free()):
            return False
        return (a.tag, b.tag) == (vals[0].tag, vals[1].tag) and not trace_compatible(a, b)
    if c == "Socle":
        return not family and vals == (pa.socle_dim, pb.socle_dim) and vals[0] > vals[1]
    raise AssertionError(f"unknown criterion {c}")


@pytest.mark.criterion(8, "monotonicity holds along certified edges and recorded refutations re-derive")
@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_c8_monotonicity(n):
    g = cached_graph(n)
    ids = node_ids(n)
    fresh = {v: profile(make(ids[v])) for v in g.nodes}
    for (a, b), e in g.edges.items():
        if a == FAMILY:
            continue
        assert holds_along_degeneration(fresh[a], fresh[b], proper=e.tag != "Member") == [], (a, b)
    for (a, b), cert in g.refuted.items():
        if cert.criterion == "Transitive":
            d = cert.detail
            assert ((d, a) in g.edges and (d, b) in g.refuted) or ((b, d) in g.edges and (a, d) in g.refuted), (a, b)
        else:
            assert _certificate_holds(cert, fresh[a], fresh[b], a == FAMILY), (a, b, cert)
            assert refute(fresh[a], fresh[b], family=a == FAMILY) == cert


# -- 9 ------------------------------------------------------------------------------------


def _random_basis(rng, k):
    while True:
        m = [[F(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(k)] for _ in range(k)]
        if linalg.det(m) != 0:
            return m


@pytest.mark.criterion(9, "the invariant profile is unchanged by 20 random rational basis changes")
@pytest.mark.parametrize("n", [2, 3])
def test_c9_isomorphism_invariance(n):
    rng = random.Random(90 + n)
    for cid in catalog_ids(n, [F(0), F(-1, 4), F(-1, 2)]):
        mu = make(cid)
        ref = profile(mu).comparable()
        for _ in range(20):
            assert profile(change_of_basis(mu, _random_basis(rng, mu.k))).comparable() == ref, cid.name


# -- 10 -----------------------------------------------------------------------------------


@pytest.mark.criterion(10, "n = 2: subspace invariants agree with a dense oracle and the graph matches the Lie picture")
@pytest.mark.parametrize("cid", rational_ids(2, (F(0), F(1), F(2), F(-1, 4), F(-1, 2))), ids=lambda c: c.name)
def test_c10_oracle_n2(cid):
    mu = make(cid)
    p = profile(mu)
    assert p.dim_derived == oracle.derived_dim(mu)
    assert p.dim_ann == oracle.annihilator_dim(mu)
    for s, d in p.dim_ann_I.items():
        assert d == oracle.ann_I_dim(mu, s), s
    for t, d in p.dim_center_t.items():
        assert d == oracle.t_center_dim(mu, t), t
    for w, d in p.dim_der_alpha.items():
        assert d == oracle.alpha_derivations_dim(mu, w), w
    assert p.aut_dim == oracle.aut_dim(mu)


@pytest.mark.criterion(10, "n = 2: subspace invariants agree with a dense oracle and the graph matches the Lie picture")
def test_c10_graph_n2():
    # sl2 -> r(3,-1) -> heis -> abelian, r(3,beta) -> heis, r3 -> r(3,1) -> abelian
    g = cached_graph(2)
    assert figure_edges(g) == _figure(2)
    assert ("C3", "B") in g.refuted and ("B", "C3") in g.refuted
    assert isinstance(refute(g.profiles["C1"], g.profiles["B"]), Inconclusive)
