"""Gadget graphs, contraction, planarity of rotation systems, matchgates from
graphs, generalized mating gadgets and star gadgets."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .classification import is_permutable_matchgate, mp_structure
from .config import get_config
from .errors import (
    ArityCapExceeded,
    ArityMismatch,
    Disconnected,
    MissingRotation,
    MultipleDangling,
    NoDangling,
    NotPermutableMatchgate,
    PreconditionViolated,
)
from .exactnum import coerce, is_zero
from .holant import WeightedGraph, count_pm
from .matchgate import normalize
from .signature import Signature

Port = tuple  # (vertex id, 0-based variable index)


@dataclass
class GVertex:
    sig: Signature
    side: str | None = None
    label: str = ""


@dataclass
class GadgetGraph:
    """Vertices with signatures; every variable slot (port) is either an
    endpoint of an internal edge or a dangling edge.

    ``rotation`` maps a vertex to the cyclic order of its ports.
    """

    vertices: list = field(default_factory=list)
    edges: list = field(default_factory=list)
    dangling: list = field(default_factory=list)
    rotation: dict | None = None

    def add(self, sig: Signature, side: str | None = None, label: str = "") -> int:
        self.vertices.append(GVertex(sig, side, label))
        if self.rotation is not None:
            self.rotation[len(self.vertices) - 1] = list(range(sig.arity))
        return len(self.vertices) - 1

    def connect(self, a: Port, b: Port) -> None:
        self.edges.append((tuple(a), tuple(b)))

    def dangle(self, p: Port) -> None:
        self.dangling.append(tuple(p))

    def with_default_rotation(self) -> GadgetGraph:
        self.rotation = {v: list(range(x.sig.arity)) for v, x in enumerate(self.vertices)}
        return self

    @property
    def mode(self) -> str:
        modes = {v.sig.mode for v in self.vertices}
        return "float" if "float" in modes else "exact"

    def validate(self) -> None:
        used: dict = {}
        for a, b in self.edges:
            for p in (a, b):
                used[p] = used.get(p, 0) + 1
        for p in self.dangling:
            used[p] = used.get(p, 0) + 1
        for v, x in enumerate(self.vertices):
            for i in range(x.sig.arity):
                if used.pop((v, i), 0) != 1:
                    raise ArityMismatch(f"port {(v, i)} must be used exactly once")
        if used:
            raise ArityMismatch(f"edges reference unknown ports {sorted(used)}")

    def is_left_side(self) -> bool:
        """Every edge joins left to right and every dangling edge ends on the left."""
        sides = [v.side for v in self.vertices]
        if any(s not in ("left", "right") for s in sides):
            return False
        for (u, _), (v, _) in self.edges:
            if sides[u] == sides[v]:
                return False
        return all(sides[v] == "left" for v, _ in self.dangling)

    def vertex_count(self, side: str | None = None) -> int:
        return sum(1 for v in self.vertices if side is None or v.side == side)


# ---------------------------------------------------------------------------
# contraction


def _as_array(sig: Signature):
    dtype = object if sig.mode == "exact" else complex
    return np.array(sig.table, dtype=dtype).reshape((2,) * sig.arity)


def _trace_repeated(labels: list, arr):
    """Sum out labels that occur twice within one factor (self-loops)."""
    while True:
        seen = {}
        for i, lab in enumerate(labels):
            if lab in seen:
                j = seen[lab]
                arr = np.trace(arr, axis1=j, axis2=i)
                labels = [x for k, x in enumerate(labels) if k not in (i, j)]
                break
            seen[lab] = i
        else:
            return labels, arr


def contract(gg: GadgetGraph, order: Sequence[int] | None = None) -> Signature:
    """Sum over internal edge assignments; arity equals the number of dangling edges.

    Edges are eliminated greedily (smallest merged arity first) unless an
    explicit edge ``order`` is given.
    """
    gg.validate()
    mode = gg.mode
    cap = get_config().arity_cap
    label_of: dict = {}
    for k, (a, b) in enumerate(gg.edges):
        label_of[a] = ("e", k)
        label_of[b] = ("e", k)
    for j, p in enumerate(gg.dangling):
        label_of[p] = ("d", j)
    factors = []
    const = coerce(1, mode)
    for v, x in enumerate(gg.vertices):
        sig = x.sig.to_mode(mode)
        labels = [label_of[(v, i)] for i in range(sig.arity)]
        labels, arr = _trace_repeated(labels, _as_array(sig))
        if labels:
            factors.append((labels, arr))
        else:
            const = const * (arr[()] if isinstance(arr, np.ndarray) else arr)
    pending = [("e", k) for k in range(len(gg.edges))]
    if order is not None:
        pending = [("e", k) for k in order] + [e for e in pending if e[1] not in set(order)]

    def holders(lab):
        return [i for i, (ls, _) in enumerate(factors) if lab in ls]

    while True:
        live = [lab for lab in pending if holders(lab)]
        if not live:
            break
        if order is None:
            best, best_cost = None, None
            for lab in live:
                hs = holders(lab)
                merged = set()
                for h in hs:
                    merged |= set(factors[h][0])
                shared = set(factors[hs[0]][0]) & set(factors[hs[-1]][0]) if len(hs) == 2 else {lab}
                cost = len(merged) - (2 * len(shared) if len(hs) == 2 else 2)
                if best_cost is None or cost < best_cost:
                    best, best_cost = lab, cost
            lab = best
        else:
            lab = live[0]
        hs = holders(lab)
        if len(hs) == 1:
            ls, arr = factors.pop(hs[0])
            ls, arr = _trace_repeated(ls, arr)
            new = (ls, arr)
        else:
            (la, A), (lb, B) = factors[hs[0]], factors[hs[1]]
            shared = [x for x in la if x in lb]
            ax_a = [la.index(x) for x in shared]
            ax_b = [lb.index(x) for x in shared]
            out_labels = [x for x in la if x not in shared] + [x for x in lb if x not in shared]
            if len(out_labels) > cap:
                raise ArityCapExceeded(f"intermediate arity {len(out_labels)} exceeds cap {cap}")
            arr = np.tensordot(A, B, axes=(ax_a, ax_b))
            for i in sorted(hs, reverse=True):
                factors.pop(i)
            new = (out_labels, arr)
        if new[0]:
            factors.append(new)
        else:
            const = const * new[1][()] if isinstance(new[1], np.ndarray) else const * new[1]
    # remaining factors carry only dangling labels
    labels: list = []
    arr = np.array(const, dtype=object if mode == "exact" else complex)
    for ls, a in factors:
        if len(labels) + len(ls) > cap:
            raise ArityCapExceeded("dangling arity exceeds cap")
        arr = np.multiply.outer(arr, a)
        labels += ls
    perm = [labels.index(("d", j)) for j in range(len(gg.dangling))]
    arr = np.transpose(arr, perm) if perm else arr
    flat = arr.reshape(-1).tolist() if perm else [arr.item() if hasattr(arr, "item") else arr]
    return Signature([coerce(v, mode) for v in flat], mode)


# ---------------------------------------------------------------------------
# planarity of a declared rotation system


def _faces(darts, twin, succ):
    seen = set()
    faces = 0
    for d in darts:
        if d in seen:
            continue
        faces += 1
        x = d
        while x not in seen:
            seen.add(x)
            x = succ[twin[x]]
    return faces


def check_rotation_planar(gg: GadgetGraph) -> bool:
    """Euler check ``V - E + F = 2`` on the faces traced from the rotation system.

    Dangling edges are joined to one extra outer vertex in their listed
    cyclic order, which forces them onto a common face; either orientation
    of that order is accepted.
    """
    if gg.rotation is None:
        raise MissingRotation("gadget has no rotation system")
    gg.validate()
    nv = len(gg.vertices)
    for v, x in enumerate(gg.vertices):
        if x.sig.arity and sorted(gg.rotation.get(v, [])) != list(range(x.sig.arity)):
            raise MissingRotation(f"rotation at vertex {v} is missing or not a permutation of its ports")
    outer = nv if gg.dangling else None
    parent = list(range(nv + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for (u, _), (v, _) in gg.edges:
        parent[find(u)] = find(v)
    for v, _ in gg.dangling:
        parent[find(v)] = find(outer)
    total_v = nv + (1 if outer is not None else 0)
    roots = {find(v) for v in range(total_v)}
    if len(roots) > 1:
        raise Disconnected("gadget graph is not connected")
    E = len(gg.edges) + len(gg.dangling)
    if E == 0:
        return True
    twin = {}
    for a, b in gg.edges:
        twin[a] = b
        twin[b] = a
    for j, p in enumerate(gg.dangling):
        twin[p] = ("outer", j)
        twin[("outer", j)] = p
    darts = list(twin)
    results = []
    orientations = [list(range(len(gg.dangling)))]
    if len(gg.dangling) > 2:
        orientations.append(list(reversed(orientations[0])))
    for outer_order in orientations:
        succ = {}
        for v in range(nv):
            rot = gg.rotation.get(v, [])
            for k, i in enumerate(rot):
                succ[(v, i)] = (v, rot[(k + 1) % len(rot)])
        for k, j in enumerate(outer_order):
            succ[("outer", j)] = ("outer", outer_order[(k + 1) % len(outer_order)])
        F = _faces(darts, twin, succ)
        results.append(total_v - E + F == 2)
    return any(results)


# ---------------------------------------------------------------------------
# matchgates from weighted graphs


def matchgate_signature_from_graph(G: WeightedGraph, external: Sequence[int]) -> Signature:
    """``f(a) = #PM(G - {external_i : a_i = 1})``."""
    ext = list(external)
    if len(set(ext)) != len(ext):
        raise ArityMismatch("external vertices must be distinct")
    n = len(ext)
    table = []
    for k in range(1 << n):
        removed = {ext[i] for i in range(n) if (k >> (n - 1 - i)) & 1}
        keep = [v for v in range(G.n) if v not in removed]
        idx = {v: j for j, v in enumerate(keep)}
        sub = WeightedGraph(
            len(keep), [(idx[u], idx[v], w) for u, v, w in G.edges if u in idx and v in idx]
        )
        table.append(count_pm(sub))
    ws = [w for _, _, w in G.edges]
    mode = "float" if any(isinstance(w, (float, complex)) for w in ws) else "exact"
    return Signature(table, mode)


# ---------------------------------------------------------------------------
# generalized mating gadget

ROLES = ("D", "S", "F0", "F1")
ROLE_SIGNATURES = {"S": (1, 0, 1), "F0": (1, 0, 0), "F1": (0, 0, 1)}


@dataclass(frozen=True)
class MatingSpec:
    """One role per variable: ``D`` (Dangling), ``S`` (Sum-up), ``F0``, ``F1``."""

    roles: tuple

    def __post_init__(self):
        bad = [r for r in self.roles if r not in ROLES]
        if bad:
            raise PreconditionViolated(f"unknown roles {bad}")
        count = self.roles.count("D")
        if count == 0:
            raise NoDangling("a mating gadget needs one dangling variable")
        if count > 1:
            raise MultipleDangling("a mating gadget has exactly one dangling variable")

    @property
    def dangling_index(self) -> int:
        return self.roles.index("D")


def mating_gadget(f: Signature, spec: MatingSpec) -> GadgetGraph:
    """Two copies of ``f``; each non-dangling variable pair is joined through a
    binary vertex ``[1,0,1]`` / ``[1,0,0]`` / ``[0,0,1]`` by role.  The two
    copies of the dangling variable are the output, first copy first."""
    if len(spec.roles) != f.arity:
        raise ArityMismatch("one role per variable is required")
    gg = GadgetGraph(rotation={})
    A = gg.add(f, "left", "A")
    B = gg.add(f, "left", "B")
    for a, role in enumerate(spec.roles):
        if role == "D":
            continue
        v = gg.add(Signature.symmetric(ROLE_SIGNATURES[role], f.mode), "right", role)
        gg.connect((A, a), (v, 0))
        gg.connect((v, 1), (B, a))
    d = spec.dangling_index
    gg.dangle((A, d))
    gg.dangle((B, d))
    return gg


# ---------------------------------------------------------------------------
# star gadgets


@dataclass
class StarGadget:
    """Central symmetric signature with a chain of binary signatures on each
    variable (listed from the centre outwards).  ``scale * contract = target``."""

    h: Signature
    chains: list
    scale: object
    kind: str = ""

    def to_gadget(self) -> GadgetGraph:
        gg = GadgetGraph(rotation={})
        c = gg.add(self.h, label="h")
        for a, chain in enumerate(self.chains):
            port = (c, a)
            for b in chain:
                v = gg.add(b, label="edge")
                gg.connect(port, (v, 0))
                port = (v, 1)
            gg.dangle(port)
        return gg

    def contract(self) -> Signature:
        return contract(self.to_gadget())

    def realized(self) -> Signature:
        return self.contract().scale(self.scale)

    def edge_signatures(self) -> list:
        """Each chain collapsed to one binary signature."""
        out = []
        for chain in self.chains:
            gg = GadgetGraph()
            if not chain:
                out.append(Signature.equality(2, self.h.mode))
                continue
            prev = None
            first = None
            for b in chain:
                v = gg.add(b)
                if prev is None:
                    first = v
                else:
                    gg.connect((prev, 1), (v, 0))
                prev = v
            gg.dangle((first, 0))
            gg.dangle((prev, 1))
            out.append(contract(gg))
        return out


def _sym(values, mode):
    return Signature.symmetric(values, mode)


def synthesize_star(Fp: Signature) -> StarGadget:
    """Star gadget realizing a non-trivial permutable matchgate up to ``scale``."""
    norm = normalize(Fp)
    if norm is None:
        raise PreconditionViolated("the zero signature has no star gadget")
    if not is_permutable_matchgate(Fp):
        raise NotPermutableMatchgate("input is not a permutable matchgate")
    F, cert = norm
    mode = Fp.mode
    n = Fp.arity
    beta = [int(c) for c in cert.shift]
    scale = cert.scale
    t = mp_structure(F)
    swap = _sym([0, 1, 0], mode)
    one = coerce(1, mode)
    zero = coerce(0, mode)
    if t.kind == "Pinning":
        h = _sym([1] + [0] * n, mode)
        chains = [[swap] if beta[a] else [] for a in range(n)]
    elif t.kind == "Parity":
        odd = sum(beta) % 2
        h = _sym([(j + odd + 1) % 2 for j in range(n + 1)], mode)
        chains = []
        for a in range(n):
            g = t.G[a]
            if not beta[a]:
                chains.append([_sym([one, zero, g], mode)])
            elif is_zero(g):
                chains.append([_sym([0, 0, 1], mode)])
            else:
                chains.append([_sym([one, zero, one / g], mode)])
                scale = scale * g
    else:
        x = t.hub - 1
        h = _sym([0, 1] + [0] * (n - 1), mode)
        chains = []
        for a in range(n):
            if a == x:
                chain = [] if beta[a] else [swap]
            else:
                chain = [_sym([one, zero, t.G[a]], mode)]
                if beta[a]:
                    chain.append(swap)
            chains.append(chain)
    return StarGadget(h, chains, scale, t.kind)


__all__ = [
    "GVertex",
    "GadgetGraph",
    "contract",
    "check_rotation_planar",
    "matchgate_signature_from_graph",
    "MatingSpec",
    "mating_gadget",
    "StarGadget",
    "synthesize_star",
]
