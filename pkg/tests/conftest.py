import random
from fractions import Fraction

import hypothesis.strategies as st
from hypothesis import HealthCheck, settings

from matchkit.exactnum import Cyclo, I, W, coerce
from matchkit.holant import HolantInstance, WeightedGraph
from matchkit.matchgate import generate_from_pairs, xor_shift
from matchkit.signature import Signature

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile("default")

small_fractions = st.fractions(min_value=-4, max_value=4, max_denominator=4)


@st.composite
def cyclos(draw, nonzero=False):
    c = Cyclo(*[draw(small_fractions) for _ in range(4)])
    if nonzero and c.is_zero():
        c = Cyclo(1)
    return c


UNIT_VALUES = [0, 1, -1, 2, I, -I, W, 1 + I]


@st.composite
def signatures(draw, min_arity=0, max_arity=4, values=None):
    n = draw(st.integers(min_arity, max_arity))
    pool = values if values is not None else UNIT_VALUES
    return Signature([draw(st.sampled_from(pool)) for _ in range(1 << n)], "exact")


@st.composite
def pair_matchgates(draw, min_arity=2, max_arity=5, parity=None):
    """Matchgates built from arbitrary weight-2 values."""
    n = draw(st.integers(min_arity, max_arity))
    par = parity or draw(st.sampled_from(["even", "odd"]))
    vals = {}
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            vals[(a, b)] = draw(st.sampled_from([0, 1, -1, 2, I]))
    f = generate_from_pairs(n, vals, mode="exact")
    if par == "odd":
        f = xor_shift(f, 1 << (n - 1))
    return f


def parity_signature(ys, odd=False):
    """h * prod y_a^{x_a} with h supported on one parity class."""
    k = len(ys)
    table = []
    for x in range(1 << k):
        if x.bit_count() % 2 != int(odd):
            table.append(0)
            continue
        v = coerce(1)
        for j in range(k):
            if x >> (k - 1 - j) & 1:
                v = v * ys[j]
        table.append(v)
    return Signature(table, "exact")


def matching_signature(ys, reversed_bits):
    """Support {r xor e_a}: value y_a at the point where variable a flips."""
    k = len(ys)
    r = sum(b << (k - 1 - j) for j, b in enumerate(reversed_bits))
    table = [0] * (1 << k)
    for a in range(k):
        table[r ^ (1 << (k - 1 - a))] = ys[a]
    return Signature(table, "exact")


@st.composite
def permutable_matchgates(draw, min_arity=2, max_arity=5):
    """Parity or Matching shapes, xor-shifted and scaled."""
    n = draw(st.integers(min_arity, max_arity))
    kind = draw(st.sampled_from(["parity", "matching"]))
    ys = [draw(st.sampled_from([1, -1, 2, I, W, Fraction(1, 2)])) for _ in range(n)]
    if kind == "parity":
        f = parity_signature(ys, odd=draw(st.booleans()))
    else:
        f = matching_signature(ys, [draw(st.integers(0, 1)) for _ in range(n)])
    beta = draw(st.integers(0, (1 << n) - 1))
    table = [f.table[x ^ beta] for x in range(1 << n)]
    scale = draw(st.sampled_from([1, 3, I, W]))
    return Signature(table, "exact").scale(coerce(scale))


def rng(seed=0):
    return random.Random(seed)


def _crosses(e, f):
    (a, b), (c, d) = sorted(e), sorted(f)
    return a < c < b < d or c < a < d < b


def random_outerplanar(r, max_vertices=8, max_external=4, weights=(1, 2, I)):
    """Vertices 0..n-1 on a circle with non-crossing chords; external nodes
    are a subset taken in circular order, so every such graph is a planar
    matchgate with its external nodes on the outer face."""
    n = r.randint(2, max_vertices)
    edges = []
    for v in range(n):
        if n > 2 or v == 0:
            if r.random() < 0.8:
                edges.append((v, (v + 1) % n))
    chords = [(a, b) for a in range(n) for b in range(a + 2, n) if not (a == 0 and b == n - 1)]
    r.shuffle(chords)
    for c in chords:
        if r.random() < 0.5 and all(not _crosses(c, e) for e in edges):
            edges.append(c)
    G = WeightedGraph(n, [(u, v, r.choice(weights)) for u, v in edges])
    k = r.randint(0, min(max_external, n))
    ext = sorted(r.sample(range(n), k))
    return G, ext


def random_bipartite(r, max_edges=8, values=(0, 1, 2, -1, I, W)):
    """Left and right vertices, each edge joins one left and one right slot."""
    m = r.randint(1, max_edges)
    nl, nr = r.randint(1, 3), r.randint(1, 3)
    left = [[] for _ in range(nl)]
    right = [[] for _ in range(nr)]
    for e in range(m):
        left[r.randrange(nl)].append(e)
        right[r.randrange(nr)].append(e)
    sigs, incs, sides = [], [], []
    for group, side in ((left, "left"), (right, "right")):
        for inc in group:
            sigs.append(Signature([r.choice(values) for _ in range(1 << len(inc))]))
            incs.append(inc)
            sides.append(side)
    return HolantInstance(sigs, incs, m, sides)
