"""Brute-force partition functions: Holant, #CSP and weighted perfect matchings.

These evaluators enumerate assignments directly (with zero-pruning) and
share no code with gadget contraction, so they serve as oracles for it.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .config import get_config
from .errors import ArityMismatch, CapExceeded, NotBipartite, SingularMatrix
from .exactnum import coerce, is_zero
from .signature import BinaryMatrix, Signature, transform


@dataclass
class HolantInstance:
    """Vertices carry a signature and the ordered list of incident edge ids.

    Edge ids run over ``range(n_edges)``; each id must occur exactly twice
    (a self-loop occurs twice at one vertex).  ``sides`` optionally tags
    each vertex ``"left"`` or ``"right"``.
    """

    signatures: list
    incidence: list
    n_edges: int
    sides: list | None = None

    def __post_init__(self):
        if len(self.signatures) != len(self.incidence):
            raise ArityMismatch("one incidence list per vertex is required")
        count = [0] * self.n_edges
        for sig, inc in zip(self.signatures, self.incidence):
            if sig.arity != len(inc):
                raise ArityMismatch(f"vertex of degree {len(inc)} carries arity {sig.arity}")
            for e in inc:
                count[e] += 1
        if any(c != 2 for c in count):
            raise ArityMismatch("every edge needs exactly two endpoints")

    @property
    def mode(self) -> str:
        modes = {s.mode for s in self.signatures}
        return "float" if "float" in modes else "exact"

    def check_bipartite(self):
        if self.sides is None:
            raise NotBipartite("instance carries no bipartition")
        ends: dict[int, list] = {}
        for v, inc in enumerate(self.incidence):
            for e in inc:
                ends.setdefault(e, []).append(self.sides[v])
        for e, s in ends.items():
            if sorted(s) != ["left", "right"]:
                raise NotBipartite(f"edge {e} does not join left to right")


@dataclass
class CSPInstance:
    """``constraints`` holds ``(signature, variables)`` with 1-based variables."""

    n_vars: int
    constraints: list = field(default_factory=list)
    max_occurrence: int | None = None

    def __post_init__(self):
        occ = [0] * (self.n_vars + 1)
        for sig, vars_ in self.constraints:
            if sig.arity != len(vars_):
                raise ArityMismatch("constraint scope does not match signature arity")
            for x in vars_:
                if not 1 <= x <= self.n_vars:
                    raise ArityMismatch(f"variable {x} out of range")
                occ[x] += 1
        if self.max_occurrence is not None and max(occ, default=0) > self.max_occurrence:
            raise ArityMismatch("a variable exceeds the occurrence bound")

    def occurrences(self) -> list[int]:
        occ = [0] * self.n_vars
        for _, vars_ in self.constraints:
            for x in vars_:
                occ[x - 1] += 1
        return occ


@dataclass
class WeightedGraph:
    """Undirected graph on ``0..n-1`` with weighted edges ``(u, v, w)``."""

    n: int
    edges: list = field(default_factory=list)


def _factor_sum(n_slots, factors, mode):
    """Sum over assignments of ``n_slots`` bits of the product of factors.

    ``factors`` are ``(slots, table)``; each factor is evaluated as soon as
    its last slot is assigned and branches with a zero product are pruned.
    """
    zero, one = coerce(0, mode), coerce(1, mode)
    ready_at: list[list] = [[] for _ in range(n_slots)]
    constant = one
    for slots, table in factors:
        if not slots:
            constant = constant * table[0]
        else:
            ready_at[max(slots)].append((slots, table))
    if is_zero(constant):
        return zero
    bits = [0] * n_slots

    def rec(i, acc):
        if i == n_slots:
            return acc
        total = zero
        for b in (0, 1):
            bits[i] = b
            val = acc
            for slots, table in ready_at[i]:
                off = 0
                for s in slots:
                    off = (off << 1) | bits[s]
                val = val * table[off]
                if is_zero(val):
                    break
            if not is_zero(val):
                total = total + rec(i + 1, val)
        return total

    return rec(0, constant)


def eval_holant(inst: HolantInstance):
    """``Z = sum over edge assignments of the product of vertex values``."""
    cap = get_config().max_edges
    if inst.n_edges > cap:
        raise CapExceeded(f"{inst.n_edges} edges exceed the brute-force cap {cap}")
    mode = inst.mode
    factors = [(list(inc), sig.to_mode(mode).table) for sig, inc in zip(inst.signatures, inst.incidence)]
    return _factor_sum(inst.n_edges, factors, mode)


def eval_csp(inst: CSPInstance):
    """``Z = sum over variable assignments of the product of constraint values``."""
    cap = get_config().max_variables
    if inst.n_vars > cap:
        raise CapExceeded(f"{inst.n_vars} variables exceed the brute-force cap {cap}")
    modes = {s.mode for s, _ in inst.constraints}
    mode = "float" if "float" in modes else "exact"
    factors = [([x - 1 for x in vars_], sig.to_mode(mode).table) for sig, vars_ in inst.constraints]
    return _factor_sum(inst.n_vars, factors, mode)


def csp_to_holant(inst: CSPInstance) -> HolantInstance:
    """Constraints on the left, one equality vertex per variable on the right.

    A variable with no occurrence becomes an arity-0 vertex of value 2, the
    number of values it can take.
    """
    modes = {s.mode for s, _ in inst.constraints}
    mode = "float" if "float" in modes else "exact"
    sigs, incs, sides = [], [], []
    var_edges: list[list[int]] = [[] for _ in range(inst.n_vars)]
    e = 0
    for sig, vars_ in inst.constraints:
        inc = []
        for x in vars_:
            inc.append(e)
            var_edges[x - 1].append(e)
            e += 1
        sigs.append(sig)
        incs.append(inc)
        sides.append("left")
    for edges in var_edges:
        d = len(edges)
        sigs.append(Signature.equality(d, mode) if d else Signature.constant(2, mode))
        incs.append(edges)
        sides.append("right")
    return HolantInstance(sigs, incs, e, sides)


def count_pm(G: WeightedGraph):
    """Weighted count of perfect matchings by recursive enumeration."""
    cap = get_config().max_vertices
    if G.n > cap:
        raise CapExceeded(f"{G.n} vertices exceed the brute-force cap {cap}")
    ws = [w for _, _, w in G.edges]
    mode = "float" if any(isinstance(w, (float, complex)) for w in ws) else "exact"
    adj: list[list] = [[] for _ in range(G.n)]
    for u, v, w in G.edges:
        if u == v:
            continue
        w = coerce(w, mode)
        adj[u].append((v, w))
        adj[v].append((u, w))
    zero = coerce(0, mode)
    if G.n % 2:
        return zero
    matched = [False] * G.n

    def rec():
        try:
            u = matched.index(False)
        except ValueError:
            return coerce(1, mode)
        matched[u] = True
        total = zero
        for v, w in adj[u]:
            if not matched[v]:
                matched[v] = True
                total = total + w * rec()
                matched[v] = False
        matched[u] = False
        return total

    return rec()


def holographic_rewrite(inst: HolantInstance, T: BinaryMatrix) -> HolantInstance:
    """Left signatures become ``f T^-1``, right signatures ``T g``."""
    inst.check_bipartite()
    if not T.invertible:
        raise SingularMatrix("transformation matrix is singular")
    Tinv_t = T.inverse().transpose()
    sigs = []
    for sig, side in zip(inst.signatures, inst.sides):
        sigs.append(transform(Tinv_t if side == "left" else T, sig))
    return HolantInstance(sigs, [list(i) for i in inst.incidence], inst.n_edges, list(inst.sides))


def graph_to_holant(G: WeightedGraph) -> HolantInstance:
    """Every vertex gets the exact-one signature ``[0,1,0,...,0]``; weighted
    edges are subdivided by a binary ``[1,0,w]`` vertex."""
    ws = [w for _, _, w in G.edges]
    mode = "float" if any(isinstance(w, (float, complex)) for w in ws) else "exact"
    incs: list[list[int]] = [[] for _ in range(G.n)]
    extra_sigs, extra_incs = [], []
    e = 0
    for u, v, w in G.edges:
        a, b = e, e + 1
        e += 2
        incs[u].append(a)
        incs[v].append(b)
        extra_sigs.append(Signature.symmetric([1, 0, w], mode))
        extra_incs.append([a, b])
    sigs = []
    for inc in incs:
        d = len(inc)
        sigs.append(Signature.symmetric([0, 1] + [0] * (d - 1), mode) if d else Signature.constant(0, mode))
    return HolantInstance(sigs + extra_sigs, incs + extra_incs, e)


__all__ = [
    "HolantInstance",
    "CSPInstance",
    "WeightedGraph",
    "eval_holant",
    "eval_csp",
    "csp_to_holant",
    "count_pm",
    "holographic_rewrite",
    "graph_to_holant",
]
