from dataclasses import replace
from fractions import Fraction

import pytest

from conftest import cached_profile
from filippov.catalog import (
    CatalogId,
    builtin_witnesses,
    make,
    witness_c1_b,
    witness_c2_b,
    witness_c2_c3,
    witness_d3_c1,
    witness_d_chain,
    witness_family_c1,
)
from filippov.degeneration import (
    CERTIFIED,
    LIMIT_MISMATCH,
    POLE_FOUND,
    Inconclusive,
    NonDegenerationCertificate,
    Witness,
    format_vector,
    refute,
    trace_compatible,
    verify_family_witness,
    verify_witness,
)
from filippov.errors import SingularBasis
from filippov.exact import RatFunc
from filippov.invariants import TraceInvariantValue

F = Fraction
T = RatFunc.var("t")


def cid(name, n=3):
    return CatalogId.parse(name, n)


# -- witnesses ---------------------------------------------------------------------------


def test_c1_b_constants():
    rep = verify_witness(witness_c1_b(3))
    assert rep.certified
    assert rep.formatted() == {"(1,3,4)": "t^2*E2", "(2,3,4)": "E1"}


def test_c2_b_constants_and_basis():
    w = witness_c2_b(3)
    assert [[str(x) for x in row] for row in w.basis[:3]] == [["0", "t", "0", "0"], ["1", "0", "0", "0"], ["0", "0", "t", "0"]]
    rep = verify_witness(w)
    assert rep.certified
    assert rep.formatted()["(1,3,4)"] == "t*E1 + alpha*t^2*E2"


def test_c2_c3_and_d3_c1_constants():
    rep = verify_witness(witness_c2_c3(3))
    assert rep.certified and rep.formatted()["(2,3,4)"] == "t*E1 + E2"
    rep = verify_witness(witness_d3_c1(3))
    assert rep.certified and rep.formatted()["(1,2,4)"] == "t^2*E3"


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_d_chain_constant(n):
    for r in range(4, n + 2):
        rep = verify_witness(witness_d_chain(n, r))
        assert rep.certified
        all_but_r = "(" + ",".join(str(i) for i in range(1, n + 2) if i != r) + ")"
        assert rep.formatted()[all_but_r] == f"t^{2 * r - 4}*E{r}"
        # the other products are untouched by the scaling
        for i in range(1, r):
            key = "(" + ",".join(str(j) for j in range(1, n + 2) if j != i) + ")"
            assert rep.formatted()[key] == f"E{i}"


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_all_builtin_witnesses_certify(n):
    for w in builtin_witnesses(n):
        verify = verify_family_witness if w.is_family else verify_witness
        rep = verify(w)
        assert rep.verdict == CERTIFIED, w.label
        assert rep.limit == w.target


def test_family_witness_constants():
    rep = verify_family_witness(witness_family_c1(3))
    assert rep.formatted() == {"(1,3,4)": "E2", "(2,3,4)": "E1 + t*E2"}


def test_wrong_witness_regression_anchor():
    w = witness_c1_b(3)
    rows = [list(r) for r in w.basis]
    rows[0][0] = 1 / T
    rows[2][2] = F(1)
    bad = replace(w, basis=tuple(tuple(r) for r in rows))
    rep = verify_witness(bad)
    assert (rep.verdict, rep.where, rep.pole_order) == (POLE_FOUND, (0, 2, 3), 1)
    assert not rep.certified


def test_limit_mismatch_and_singular_basis():
    w = witness_c1_b(3)
    rep = verify_witness(replace(w, target=make(cid("C3"))))
    assert rep.verdict == LIMIT_MISMATCH
    zero_row = replace(w, basis=((F(0),) * 4,) + w.basis[1:])
    with pytest.raises(SingularBasis):
        verify_witness(zero_row)


def test_family_index_must_be_constant_for_c3():
    base = witness_c2_c3(3)
    sym = make(cid("C2"))
    verdicts = {}
    for label, f in (("t", T), ("t - 1/4", T - F(1, 4)), ("t^2 - 1/4", T * T - F(1, 4))):
        verdicts[label] = verify_family_witness(Witness(sym, base.basis, base.target, {"alpha": f})).verdict
    # regression anchors: E2 = -2t e2 divides the alpha term by t, so f = t leaves a pole;
    # a first-order drift from -1/4 survives in the limit; a second-order drift does not
    assert verdicts == {"t": POLE_FOUND, "t - 1/4": LIMIT_MISMATCH, "t^2 - 1/4": CERTIFIED}
    fixed = Witness(sym, base.basis, base.target, {"alpha": F(-1, 4)})
    a, b = verify_family_witness(fixed), verify_witness(base)
    assert a.verdict == b.verdict == CERTIFIED
    assert a.constants == b.constants
    with pytest.raises(ValueError):
        verify_family_witness(Witness(sym, base.basis, base.target, {}))


def test_format_vector():
    a = RatFunc.var("alpha")
    assert format_vector([T, a * T * T, 0]) == "t*E1 + alpha*t^2*E2"
    assert format_vector([F(-1), 0, 2 * T]) == "-E1 + 2*t*E3"
    assert format_vector([1 + T, -T]) == "(t + 1)*E1 - t*E2"
    assert format_vector([0, 0]) == "0"


# -- refutation ----------------------------------------------------------------------------


def test_refute_d4_c3():
    res = refute(cached_profile(cid("D4")), cached_profile(cid("C3")))
    assert isinstance(res, NonDegenerationCertificate)
    assert (res.criterion, res.detail) == ("TraceInv", (1, 1))
    assert [(v.tag, v.value) for v in res.values] == [("Value", 0), ("Value", 2)]


def test_refute_c2_generic_c3():
    res = refute(cached_profile(cid("C2")), cached_profile(cid("C3")))
    assert (res.criterion, res.detail) == ("TraceInv", (1, 1))
    assert str(res.values[0].value) == "1/(2*alpha + 1)"


def test_refute_c3_b_by_socle():
    res = refute(cached_profile(cid("C3")), cached_profile(cid("B")))
    assert (res.criterion, res.values) == ("Socle", (2, 1))


def test_refute_b_c3_by_aut_dim():
    res = refute(cached_profile(cid("B")), cached_profile(cid("C3")))
    assert (res.criterion, res.values) == ("AutDim", (12, 11))


def test_certified_pairs_are_never_refuted():
    for n in (2, 3, 4):
        for w in builtin_witnesses(n):
            src = cached_profile(CatalogId("C2", n) if w.is_family else _id_of(w.source_id, n))
            res = refute(src, cached_profile(_id_of(w.target_id, n)), family=w.is_family)
            assert isinstance(res, Inconclusive), w.label


def _id_of(name, n):
    return CatalogId.parse(name, n)


def test_family_mode():
    fam = cached_profile(cid("C2"))
    # C2(-1/4) -> C3 exists, so the family may not be refuted against C3
    assert isinstance(refute(fam, cached_profile(cid("C3")), family=True), Inconclusive)
    res = refute(fam, cached_profile(cid("D3")), family=True)
    assert res.criterion == "AutDim" and res.note == "generic member"
    assert isinstance(refute(fam, fam, target_family=True), Inconclusive)


def test_probabilistic_values_are_hints_only():
    a = cached_profile(cid("D4"))
    b = cached_profile(cid("C3"))
    prob = {k: replace(v, probabilistic=True) for k, v in a.c_invariants.items()}
    res = refute(replace(a, c_invariants=prob), b)
    assert isinstance(res, Inconclusive)
    assert any("probabilistic" in h for h in res.hints)


V = TraceInvariantValue


@pytest.mark.parametrize(
    "a, b, ok",
    [
        (V("None"), V("Value", F(3)), True),
        (V("Value", F(2)), V("Indeterminate"), True),
        (V("Indeterminate"), V("Value", F(2)), False),
        (V("Indeterminate"), V("Indeterminate"), True),
        (V("Infinity"), V("Infinity"), True),
        (V("Infinity"), V("Value", F(1)), False),
        (V("Value", F(2)), V("Value", F(2)), True),
        (V("Value", F(2)), V("Value", F(0)), False),
        (V("Value", F(2)), V("Infinity"), False),
        (V("Value", F(2)), V("None"), False),
    ],
)
def test_trace_compatible_table(a, b, ok):
    assert trace_compatible(a, b) is ok
