from itertools import permutations, product

import pytest
from hypothesis import given
import hypothesis.strategies as st

from matchkit.errors import ArityCapExceeded, ArityMismatch, DuplicateIndex, IndexOutOfRange, NotAPermutation
from matchkit.exactnum import I, W, coerce
from matchkit.signature import (
    H2,
    BinaryMatrix,
    Signature,
    detect_symmetric,
    hat,
    inverse_perm,
    is_degenerate,
    permute,
    pin,
    proportional,
    tensor,
    tensor_all,
    transform,
)
from matchkit.config import override

from conftest import signatures


def bits(k, n):
    return tuple((k >> (n - 1 - i)) & 1 for i in range(n))


def lookup(f):
    return {bits(k, f.arity): v for k, v in enumerate(f.table)}


def test_symmetric_expansion():
    f = Signature.symmetric([1, 0, 2])
    assert f.table == tuple(coerce(x) for x in (1, 0, 0, 2))
    assert Signature.equality(3).table[0] == 1 and Signature.equality(3).table[7] == 1
    assert detect_symmetric(Signature([0, 1, 1, 0])).values == (0, 1, 0)
    assert detect_symmetric(Signature([0, 1, 2, 0])) is None


def test_bad_lengths():
    with pytest.raises(ArityMismatch):
        Signature([1, 2, 3])
    with override(arity_cap=3):
        with pytest.raises(ArityCapExceeded):
            Signature([0] * 16)


def test_eval_msb_first():
    f = Signature([0, 1, 2, 3])
    assert f.eval("01") == 1 and f.eval("10") == 2


@given(signatures(min_arity=1, max_arity=4), st.data())
def test_pin_matches_definition(f, data):
    n = f.arity
    i = data.draw(st.integers(1, n))
    c = data.draw(st.integers(0, 1))
    g = pin(f, [(i, c)])
    table = lookup(f)
    for rest in product((0, 1), repeat=n - 1):
        full = rest[: i - 1] + (c,) + rest[i - 1 :]
        assert g.table[int("".join(map(str, rest)) or "0", 2)] == table[full]


def test_pin_errors():
    f = Signature.equality(3)
    with pytest.raises(IndexOutOfRange):
        pin(f, [(4, 0)])
    with pytest.raises(DuplicateIndex):
        pin(f, [(1, 0), (1, 1)])


@given(signatures(min_arity=1, max_arity=4), st.data())
def test_permute_matches_definition(f, data):
    n = f.arity
    perm = data.draw(st.permutations(list(range(1, n + 1))))
    g = permute(f, perm)
    tf = lookup(f)
    for alpha, v in lookup(g).items():
        beta = [0] * n
        for i in range(n):
            beta[perm[i] - 1] = alpha[i]
        assert v == tf[tuple(beta)]
    assert permute(g, inverse_perm(perm)) == f


def test_permute_rejects_non_permutation():
    with pytest.raises(NotAPermutation):
        permute(Signature.equality(3), [1, 1, 2])


@given(signatures(max_arity=2), signatures(max_arity=2))
def test_tensor_matches_definition(f, g):
    h = tensor(f, g)
    tf, tg = lookup(f), lookup(g)
    for a, v in lookup(h).items():
        assert v == tf[a[: f.arity]] * tg[a[f.arity :]]


def transform_oracle(T, f):
    n = f.arity
    out = []
    for y in product((0, 1), repeat=n):
        s = coerce(0)
        for x, v in lookup(f).items():
            term = v
            for yi, xi in zip(y, x):
                term = term * T[yi, xi]
            s = s + term
        out.append(s)
    return Signature(out)


@given(signatures(max_arity=3), st.lists(st.sampled_from([0, 1, -1, I, W, 2]), min_size=4, max_size=4))
def test_transform_matches_sum_definition(f, m):
    T = BinaryMatrix.of([m[:2], m[2:]])
    assert transform(T, f) == transform_oracle(T, f)


def test_hat_examples():
    assert hat(Signature.symmetric([0, 1, 1, 0])) == Signature.symmetric([6, 0, -2, 0])
    assert hat(Signature.equality(2)) == Signature.symmetric([2, 0, 2])


@given(signatures(max_arity=3))
def test_hat_inverse(f):
    Hinv = H2.inverse()
    assert transform(Hinv, hat(f)) == f


def test_matrix_algebra():
    T = BinaryMatrix.of([[1, 2], [3, 4]])
    assert T.det() == coerce(-2)
    assert (T @ T.inverse()).rows == ((1, 0), (0, 1))
    assert T.transpose()[0, 1] == 3


@given(signatures(min_arity=1, max_arity=3))
def test_degenerate_factors_reproduce(f):
    factors = is_degenerate(f)
    if factors is not None:
        assert tensor_all(factors) == f


def test_degenerate_examples():
    assert is_degenerate(tensor(Signature([1, 2]), Signature([3, W]))) is not None
    assert is_degenerate(Signature.equality(2)) is None


def test_proportional():
    f = Signature([1, 0, 0, I])
    assert proportional(f.scale(coerce(3)), f) == 3
    assert proportional(Signature([1, 0]), Signature([0, 1])) is None
    assert proportional(Signature.zero(1), Signature.zero(1)) == 1
