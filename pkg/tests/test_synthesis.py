import pytest
from hypothesis import assume, given, settings
import hypothesis.strategies as st

from matchkit.classification import is_affine, m_minus_a_form
from matchkit.errors import DegenerateInput, PreconditionViolated
from matchkit.exactnum import I, W, coerce
from matchkit.gadget import contract
from matchkit.matchgate import generate_from_pairs, is_matchgate
from matchkit.signature import Signature, detect_symmetric, is_degenerate, proportional, tensor
from matchkit.synthesis import (
    left_side_over,
    realize_binary_or_001,
    realize_nondeg_binary,
    realize_symmetric_from_mp,
)

from conftest import matching_signature, parity_signature, permutable_matchgates, signatures


def check_sym(F, r):
    assert contract(r.gadget) == r.g
    assert left_side_over(r.gadget, F)
    assert detect_symmetric(r.g) is not None
    assert is_matchgate(r.g).ok
    assert is_affine(r.g) is None
    assert r.form == m_minus_a_form(r.g)[0]


@settings(max_examples=80)
@given(permutable_matchgates(max_arity=5))
def test_symmetric_realization_properties(F):
    assume(is_affine(F) is None)
    check_sym(F, realize_symmetric_from_mp(F))


@pytest.mark.parametrize(
    "F, case, g",
    [
        (parity_signature([2, 1, 1]), "parity1", None),
        (parity_signature([W, 1], odd=True), "parity2_n2", [0, (-coerce(W) ** 3) ** 2, 0, 1]),
        (parity_signature([2, 1, 1], odd=True), "parity2", None),
        (matching_signature([1, 2, 3], [0, 0, 0]), "matching_l0", None),
        (matching_signature([1, 2, 3], [1, 0, 0]), "matching_l1", None),
        (matching_signature([1, 2, 3], [0, 1, 1]), "matching_l2", None),
        (matching_signature([1, 2, 3, 2], [1, 1, 1, 0]), "matching_l3+", None),
    ],
)
def test_symmetric_cases(F, case, g):
    r = realize_symmetric_from_mp(F)
    assert r.case == case
    check_sym(F, r)
    if g is not None:
        assert proportional(Signature.symmetric(g), r.g) is not None


def test_parity_alignment_with_corrections():
    # every pair ratio is a unit; only the aligned form is outside the affine class
    F = parity_signature([W, W * I, W, W * I * I])
    assume_ok = is_affine(F) is None
    if assume_ok:
        r = realize_symmetric_from_mp(F)
        assert r.case == "parity1"
        check_sym(F, r)


def test_constant_variables_are_split_off():
    core = parity_signature([2, 1, 1])
    F = tensor(tensor(Signature([1, 0]), core), Signature([0, 1]))
    r = realize_symmetric_from_mp(F)
    assert r.info["constant_zero"] == [0] and r.info["constant_one"] == [4]
    check_sym(F, r)


@pytest.mark.parametrize(
    "F",
    [
        Signature.equality(3),
        Signature.symmetric([1, 0, 1, 0]),
        Signature.symmetric([0, 1, 0]),
    ],
)
def test_affine_input_rejected(F):
    with pytest.raises(PreconditionViolated):
        realize_symmetric_from_mp(F)


def test_non_permutable_rejected():
    F = generate_from_pairs(4, {(1, 2): 2, (3, 4): 3})
    with pytest.raises(PreconditionViolated):
        realize_symmetric_from_mp(F)


def test_core_too_small_rejected():
    F = tensor(Signature([1, 2]), Signature([0, 1]))
    with pytest.raises(PreconditionViolated):
        realize_symmetric_from_mp(F)


NONDEG_VALUES = [0, 1, -1, 2, I, W]


@settings(max_examples=60)
@given(signatures(min_arity=2, max_arity=4, values=NONDEG_VALUES))
def test_nondeg_binary(f):
    assume(is_degenerate(f) is None)
    gg = realize_nondeg_binary(f)
    g = contract(gg)
    assert g.arity == 2 and is_degenerate(g) is None
    assert g.table[1] == g.table[2]
    assert all(v.sig.same_as(f) for v in gg.vertices if v.side == "left")


@settings(max_examples=60)
@given(signatures(min_arity=2, max_arity=4, values=NONDEG_VALUES))
def test_binary_or_point(f):
    assume(is_degenerate(f) is None)
    r = realize_binary_or_001(f)
    assert contract(r.gadget) == r.signature
    allowed = {Signature([1, 0]), Signature.symmetric([1, 0, 1])}
    for v in r.gadget.vertices:
        assert v.sig.same_as(f) or v.sig in allowed
    if r.kind == "nondeg_binary":
        assert r.signature.arity == 2 and is_degenerate(r.signature) is None
    else:
        assert r.signature.scale(r.scale) == Signature([0, 0, 0, 1])


def test_binary_or_point_examples():
    # every b_j is 0 here, so absorbing any variable would kill the corner term
    for k in (3, 4, 5):
        r = realize_binary_or_001(Signature.equality(k))
        assert r.kind == "nondeg_binary"
        assert r.signature == Signature([1, 0, 0, 1])
    f = Signature([1, 1, 1, 1, 1, 1, 1, 2])
    r = realize_binary_or_001(f)
    assert r.kind == "nondeg_binary" and is_degenerate(r.signature) is None
    f = Signature([1, I, 1, I, 1, I, 1, 0])
    r = realize_binary_or_001(f)
    assert r.kind == "point_001"
    assert r.signature.scale(r.scale) == Signature([0, 0, 0, 1])


@pytest.mark.parametrize("f", [tensor(Signature([1, 2]), Signature([3, 1])), Signature([1, 2])])
def test_degenerate_rejected(f):
    with pytest.raises(DegenerateInput):
        realize_nondeg_binary(f)
    with pytest.raises(DegenerateInput):
        realize_binary_or_001(f)
