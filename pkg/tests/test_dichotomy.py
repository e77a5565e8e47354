import json

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from matchkit.classification import classify
from matchkit.dichotomy import (
    VARIANT_CLASSES,
    DichotomyVerdict,
    ProblemVariant,
    decide,
    permutation_closure,
    verify,
)
from matchkit.errors import DBelowThree, PreconditionViolated
from matchkit.exactnum import I, W
from matchkit.signature import Signature, permute

from conftest import signatures

VARIANTS = [
    ProblemVariant("CSP"),
    ProblemVariant("RD_CSP", 3),
    ProblemVariant("PL_CSP"),
    ProblemVariant("PL_RD_CSP", 4),
    ProblemVariant("CSP_PL"),
    ProblemVariant("RD_CSP_PL", 3),
]

small_sets = st.lists(signatures(min_arity=1, max_arity=3, values=[0, 1, -1, 2, I, W]), min_size=1, max_size=3)


def test_variant_parsing():
    assert ProblemVariant.parse("pl-csp").kind == "PL_CSP"
    assert ProblemVariant.parse("rd-csp-pl", 5) == ProblemVariant("RD_CSP_PL", 5)
    with pytest.raises(DBelowThree):
        ProblemVariant.parse("rd-csp", 2)
    with pytest.raises(DBelowThree):
        ProblemVariant("PL_RD_CSP")
    with pytest.raises(PreconditionViolated):
        ProblemVariant("CSP", 3)
    with pytest.raises(PreconditionViolated):
        ProblemVariant("HOLANT")


@pytest.mark.parametrize("v", VARIANTS, ids=lambda v: v.kind)
def test_equality_is_affine_everywhere(v):
    d = decide([Signature.equality(3)], v)
    assert (d.outcome, d.cls) == ("poly", "A")
    assert d.membership[0]["P"]


@pytest.mark.parametrize("v", VARIANTS, ids=lambda v: v.kind)
def test_product_example(v):
    d = decide([Signature.symmetric([1, 0, 2])], v)
    assert (d.outcome, d.cls) == ("poly", "P")


@pytest.mark.parametrize(
    "v, outcome, cls",
    [
        (VARIANTS[0], "sharp_p_hard", None),
        (VARIANTS[1], "sharp_p_hard", None),
        (VARIANTS[2], "poly", "M_hat"),
        (VARIANTS[3], "poly", "M_hat"),
        (VARIANTS[4], "poly", "MP_hat"),
        (VARIANTS[5], "poly", "MP_hat"),
    ],
)
def test_not_all_equal(v, outcome, cls):
    F = [Signature.symmetric([0, 1, 1, 0])]
    d = decide(F, v)
    assert (d.outcome, d.cls) == (outcome, cls)
    assert verify(F, d)
    if outcome == "sharp_p_hard":
        assert d.counterexamples == {"A": 0, "P": 0}


def test_hard_mix():
    F = [Signature.symmetric([1, 1, -1]), Signature.symmetric([1, 0, 2])]
    d = decide(F, ProblemVariant("CSP"))
    assert d.outcome == "sharp_p_hard"
    assert d.counterexamples == {"A": 1, "P": 0}
    assert verify(F, d)


def test_verify_rejects_tampered():
    F = [Signature.symmetric([1, 0, 2])]
    d = decide(F, ProblemVariant("CSP"))
    bad = DichotomyVerdict("poly", "A", d.variant, d.membership)
    assert not verify(F, bad)
    bad = DichotomyVerdict("sharp_p_hard", None, d.variant, d.membership, {"A": 0, "P": 0})
    assert not verify(F, bad)


@settings(max_examples=40)
@given(small_sets)
def test_verdicts_verify(F):
    for v in VARIANTS:
        assert verify(F, decide(F, v))


@settings(max_examples=40)
@given(small_sets, signatures(min_arity=1, max_arity=3, values=[0, 1, 2, I, W]))
def test_monotone_under_growth(F, extra):
    for v in VARIANTS:
        if decide(F + [extra], v).outcome == "poly":
            assert decide(F, v).outcome == "poly"


@settings(max_examples=30)
@given(small_sets)
def test_variant_order(F):
    # a wider class list can only help
    for a, b in (("CSP", "PL_CSP"), ("CSP", "CSP_PL"), ("CSP_PL", "PL_CSP")):
        if decide(F, ProblemVariant(a)).outcome == "poly":
            assert decide(F, ProblemVariant(b)).outcome == "poly"


@settings(max_examples=30)
@given(small_sets)
def test_permutation_closed_variant_matches_closure(F):
    mine = decide(F, ProblemVariant("CSP_PL")).outcome
    closed = decide(permutation_closure(F), ProblemVariant("PL_CSP")).outcome
    assert mine == closed


def test_permutation_closure_contents():
    f = Signature([0, 1, 2, 3])
    closure = permutation_closure([f])
    assert len(closure) == 2 and permute(f, [2, 1]) in closure
    assert permutation_closure([Signature.equality(3)]) == [Signature.equality(3)]


def test_membership_matches_classify():
    F = [Signature.symmetric([0, 1, 1, 0]), Signature.symmetric([1, 0, W])]
    d = decide(F, ProblemVariant("PL_CSP"))
    assert d.membership == [classify(f).flags() for f in F]


def test_json_is_deterministic():
    F = [Signature.symmetric([0, 1, 1, 0]), Signature.symmetric([1, 0, 2])]
    a = decide(F, ProblemVariant("PL_RD_CSP", 3)).to_json()
    b = decide(list(F), ProblemVariant("PL_RD_CSP", 3)).to_json()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert a["format"] == 1 and a["D"] == 3
    assert set(a["membership"][0]) == set(VARIANT_CLASSES["PL_RD_CSP"])


def test_mixed_set_is_product():
    d = decide([Signature.equality(3), Signature.symmetric([1, 0, 2])], ProblemVariant("CSP"))
    assert (d.outcome, d.cls) == ("poly", "P")


@pytest.mark.parametrize("v", VARIANTS, ids=lambda v: v.kind)
def test_even_parity_is_affine(v):
    assert decide([Signature.symmetric([1, 0, 1, 0])], v).cls == "A"
