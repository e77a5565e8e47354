from itertools import combinations, product

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from matchkit.classification import is_permutable_matchgate
from matchkit.errors import ArityMismatch, MissingRotation, MultipleDangling, NoDangling, NotPermutableMatchgate
from matchkit.exactnum import I, W, coerce
from matchkit.gadget import (
    GadgetGraph,
    MatingSpec,
    StarGadget,
    check_rotation_planar,
    contract,
    matchgate_signature_from_graph,
    mating_gadget,
    synthesize_star,
)
from matchkit.holant import HolantInstance, WeightedGraph, eval_holant
from matchkit.matchgate import generate_from_pairs, is_matchgate, mgi_check
from matchkit.signature import Signature, tensor

from conftest import permutable_matchgates, random_outerplanar, rng

VALUES = [0, 1, 2, -1, I, W]


def pinned_holant_value(gg, alpha):
    """Oracle: close each dangling edge with [1,0] or [0,1] and evaluate."""
    sigs, incs = [], []
    slot = {}
    for k, (a, b) in enumerate(gg.edges):
        slot[a] = k
        slot[b] = k
    m = len(gg.edges)
    for j, p in enumerate(gg.dangling):
        slot[p] = m + j
        sigs.append(Signature([0, 1] if alpha[j] else [1, 0]))
        incs.append([m + j])
    for v, x in enumerate(gg.vertices):
        sigs.append(x.sig)
        incs.append([slot[(v, i)] for i in range(x.sig.arity)])
    return eval_holant(HolantInstance(sigs, incs, m + len(gg.dangling)))


def random_gadget(r, n_vertices=4):
    gg = GadgetGraph()
    ports = []
    for _ in range(n_vertices):
        k = r.randint(1, 3)
        v = gg.add(Signature([r.choice(VALUES) for _ in range(1 << k)]))
        ports += [(v, i) for i in range(k)]
    r.shuffle(ports)
    n_dangling = r.randint(0, min(3, len(ports)))
    if (len(ports) - n_dangling) % 2:
        n_dangling += 1 if n_dangling < len(ports) else -1
    for p in ports[:n_dangling]:
        gg.dangle(p)
    rest = ports[n_dangling:]
    for a, b in zip(rest[::2], rest[1::2]):
        gg.connect(a, b)
    return gg


@settings(max_examples=40)
@given(st.integers(0, 10**6))
def test_contraction_matches_pinned_holant(seed):
    gg = random_gadget(rng(seed))
    g = contract(gg)
    for k, alpha in enumerate(product((0, 1), repeat=len(gg.dangling))):
        assert g.table[k] == pinned_holant_value(gg, alpha)


@settings(max_examples=40)
@given(st.integers(0, 10**6))
def test_contraction_order_independent(seed):
    r = rng(seed)
    gg = random_gadget(r)
    order = list(range(len(gg.edges)))
    r.shuffle(order)
    assert contract(gg) == contract(gg, order=order)


def test_contract_examples():
    gg = GadgetGraph()
    a, b = gg.add(Signature([1, 0])), gg.add(Signature([1, 0]))
    gg.connect((a, 0), (b, 0))
    assert contract(gg) == Signature.constant(1)
    gg = GadgetGraph()
    vs = [gg.add(Signature.symmetric([0, 1, 0])) for _ in range(3)]
    for j in range(3):
        gg.connect((vs[j], 1), (vs[(j + 1) % 3], 0))
    assert contract(gg) == Signature.constant(0)


def test_self_loop_traced():
    gg = GadgetGraph()
    v = gg.add(Signature.equality(3))
    gg.connect((v, 0), (v, 1))
    gg.dangle((v, 2))
    assert contract(gg) == Signature([1, 1])


def test_validate_catches_unused_port():
    gg = GadgetGraph()
    gg.add(Signature.equality(2))
    with pytest.raises(ArityMismatch):
        contract(gg)


@pytest.mark.parametrize(
    "f, roles, expected",
    [
        (Signature.equality(2), ("D", "S"), [1, 0, 0, 1]),
        (Signature.equality(3), ("D", "S", "F0"), [1, 0, 0, 0]),
        (Signature.equality(3), ("D", "S", "S"), [1, 0, 0, 1]),
    ],
)
def test_mating_examples(f, roles, expected):
    assert contract(mating_gadget(f, MatingSpec(roles))) == Signature(expected)


def test_mating_spec_validation():
    with pytest.raises(NoDangling):
        MatingSpec(("S", "S"))
    with pytest.raises(MultipleDangling):
        MatingSpec(("D", "D"))


@given(st.integers(1, 3), st.data())
def test_mating_is_symmetric(n, data):
    f = Signature([data.draw(st.sampled_from(VALUES)) for _ in range(1 << n)])
    roles = [data.draw(st.sampled_from(["S", "F0", "F1"])) for _ in range(n)]
    roles[data.draw(st.integers(0, n - 1))] = "D"
    g = contract(mating_gadget(f, MatingSpec(tuple(roles))))
    assert g.table[1] == g.table[2]


def test_graph_signature_path():
    path = WeightedGraph(3, [(0, 1, 1), (1, 2, 1)])
    assert matchgate_signature_from_graph(path, [0, 2]) == Signature([0, 1, 1, 0])
    assert matchgate_signature_from_graph(WeightedGraph(2, [(0, 1, 1)]), [0]) == Signature([1, 0])


@settings(max_examples=30)
@given(st.integers(0, 10**6))
def test_graph_signatures_are_matchgates(seed):
    G, ext = random_outerplanar(rng(seed))
    assert mgi_check(matchgate_signature_from_graph(G, ext)).ok


def test_star_examples():
    s = synthesize_star(tensor(Signature([1, 0]), Signature([0, 1])))
    assert s.kind == "Pinning" and s.chains[0] == [] and s.chains[1] == [Signature.symmetric([0, 1, 0])]
    F = generate_from_pairs(3, {(1, 2): 4, (1, 3): 6, (2, 3): 6})
    s = synthesize_star(F)
    assert s.kind == "Parity" and s.h == Signature.symmetric([1, 0, 1, 0])
    assert [c[0] for c in s.chains] == [Signature.symmetric(v) for v in ([1, 0, 2], [1, 0, 2], [1, 0, 3])]
    F = generate_from_pairs(4, {(1, 2): 2, (1, 3): W, (1, 4): 3})
    s = synthesize_star(F)
    assert s.kind == "Matching" and s.h == Signature.symmetric([0, 1, 0, 0, 0])
    assert s.chains[0] == [Signature.symmetric([0, 1, 0])]
    assert s.realized() == F


@settings(max_examples=60)
@given(permutable_matchgates(max_arity=6))
def test_star_round_trip(F):
    s = synthesize_star(F)
    assert s.realized() == F
    assert is_matchgate(s.h).ok
    for chain in s.chains:
        assert all(is_matchgate(b).ok for b in chain)
    assert check_rotation_planar(s.to_gadget())


def test_star_rejects_non_permutable():
    with pytest.raises(NotPermutableMatchgate):
        synthesize_star(generate_from_pairs(4, {(1, 2): 1, (3, 4): 1}))


def test_planarity():
    tri = GadgetGraph(rotation={})
    vs = [tri.add(Signature.symmetric([0, 1, 0])) for _ in range(3)]
    for j in range(3):
        tri.connect((vs[j], 1), (vs[(j + 1) % 3], 0))
    assert check_rotation_planar(tri)
    k5 = GadgetGraph(rotation={})
    vs = [k5.add(Signature.equality(4)) for _ in range(5)]
    used = [0] * 5
    for a, b in combinations(range(5), 2):
        k5.connect((vs[a], used[a]), (vs[b], used[b]))
        used[a] += 1
        used[b] += 1
    assert not check_rotation_planar(k5)
    with pytest.raises(MissingRotation):
        check_rotation_planar(GadgetGraph())
