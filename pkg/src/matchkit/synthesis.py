"""Constructive gadget syntheses built on top of gadget contraction.

* ``realize_symmetric_from_mp``: from a permutable matchgate outside the
  affine family, a left-side gadget over ``{F} | {[1,0],[1,0,1],[1,0,1,0]}``
  whose signature is symmetric and still outside the affine family.
* ``realize_nondeg_binary``: a two-copy mating gadget with a non-degenerate
  binary signature.
* ``realize_binary_or_001``: either a non-degenerate binary signature or
  ``[0,0,1]`` over ``{f} | {[1,0],[1,0,1]}``.

Components are described by factories: a factory adds one instance of a
sub-gadget to a builder and returns its output ports in order.  All results
are checked by exact contraction before they are returned.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

from .classification import is_affine, is_permutable_matchgate, m_minus_a_form
from .errors import CaseExhaustion, DegenerateInput, PreconditionViolated
from .exactnum import I, W, coerce, eq, is_zero, sqrt_in_field
from .gadget import GadgetGraph, MatingSpec, contract, mating_gadget
from .matchgate import is_matchgate
from .signature import Signature, detect_symmetric, is_degenerate, pin, proportional

RIGHT_SIDE = {"pin0": (1, 0), "link": (1, 0, 1), "parity3": (1, 0, 1, 0)}


class _Builder:
    """Gadget under construction.

    ``ones`` holds ports known to carry the constant factor ``[0,1]``;
    ``demands`` holds ports that must be forced to 1.  ``finish`` links every
    demand to a forced port and pairs the leftovers, calling ``source`` for
    extra forced ports when needed.
    """

    def __init__(self, mode: str, source: Callable | None = None):
        self.gg = GadgetGraph(rotation={})
        self.mode = mode
        self.ones: list = []
        self.demands: list = []
        self.source = source

    def vertex(self, f: Signature) -> list:
        v = self.gg.add(f, "left", "F")
        return [(v, i) for i in range(f.arity)]

    def _right(self, kind: str) -> int:
        return self.gg.add(Signature.symmetric(RIGHT_SIDE[kind], self.mode), "right", kind)

    def pin0(self, port) -> None:
        self.gg.connect(port, (self._right("pin0"), 0))

    def link(self, p, q) -> None:
        v = self._right("link")
        self.gg.connect(p, (v, 0))
        self.gg.connect((v, 1), q)

    def parity3(self, ports) -> None:
        v = self._right("parity3")
        for j, p in enumerate(ports):
            self.gg.connect(p, (v, j))

    def finish(self, outputs) -> GadgetGraph:
        for _ in range(4):
            spare = len(self.ones) - len(self.demands)
            if spare >= 0 and spare % 2 == 0:
                break
            if self.source is None:
                raise CaseExhaustion("constant ports cannot be paired off")
            before = len(self.ones)
            self.source(self)
            if len(self.ones) == before:
                raise CaseExhaustion("source gadget supplies no forced ports")
        else:
            raise CaseExhaustion("constant ports cannot be paired off")
        ones = list(self.ones)
        for d in self.demands:
            self.link(d, ones.pop())
        while ones:
            self.link(ones.pop(), ones.pop())
        for p in outputs:
            self.gg.dangle(p)
        return self.gg


def _build(make: Callable, mode: str, source: Callable | None = None):
    b = _Builder(mode, source)
    gg = b.finish(make(b))
    return gg, contract(gg)


def left_side_over(gg: GadgetGraph, F: Signature) -> bool:
    """Left-side bipartite with ``F`` on the left and only ``[1,0]``,
    ``[1,0,1]``, ``[1,0,1,0]`` on the right."""
    if not gg.is_left_side():
        return False
    allowed = {Signature.symmetric(v, F.mode) for v in RIGHT_SIDE.values()}
    for v in gg.vertices:
        if v.side == "left" and not v.sig.same_as(F):
            return False
        if v.side == "right" and v.sig not in allowed:
            return False
    return True


def _outside_affine_form(g: Signature):
    """Form number if ``g`` is symmetric, a matchgate and not affine."""
    if g.is_zero() or detect_symmetric(g) is None:
        return None
    if is_affine(g) is not None or not is_matchgate(g).ok:
        return None
    res = m_minus_a_form(g)
    return None if res is None else res[0]


# ---------------------------------------------------------------------------
# symmetric signatures from permutable matchgates


@dataclass
class SymRealization:
    gadget: GadgetGraph
    g: Signature
    case: str
    form: int
    info: dict = field(default_factory=dict)


@dataclass
class _Split:
    """``F`` as a core ``Fp`` on variables ``R`` times constants: variables in
    ``P`` are always 0 and variables in ``Q`` always 1 (0-based)."""

    F: Signature
    P: list
    Q: list
    R: list
    Fp: Signature

    def base(self, b: _Builder) -> list:
        ports = b.vertex(self.F)
        for i in self.P:
            b.pin0(ports[i])
        b.ones.extend(ports[i] for i in self.Q)
        return [ports[i] for i in self.R]


def _split(F: Signature) -> _Split:
    n = F.arity
    P, Q, R = [], [], []
    for i in range(n):
        if pin(F, [(i + 1, 1)]).is_zero():
            P.append(i)
        elif pin(F, [(i + 1, 0)]).is_zero():
            Q.append(i)
        else:
            R.append(i)
    Fp = pin(F, [(i + 1, 0) for i in P] + [(i + 1, 1) for i in Q])
    return _Split(F, P, Q, R, Fp)


def _is_parity_shape(Fp: Signature) -> bool:
    k = Fp.arity
    supp = Fp.support()
    return len(supp) == 1 << (k - 1) and len({s.bit_count() % 2 for s in supp}) == 1


def _pair_factory(comp: Callable, k: int, a: int, b: int) -> Callable:
    def make(bld):
        ports = comp(bld)
        for j in range(k):
            if j not in (a, b):
                bld.pin0(ports[j])
        return [ports[a], ports[b]]

    return make


def _parity_even(comp: Callable, k: int, mode: str, source):
    """Component whose core has support on all even-weight points.

    Returns ``(gadget, g, info)`` or None when every pair ratio is a
    fourth root of unity and no alignment to ``[1,0,i,0,-1,...]`` exists.
    """
    pairs = {}
    for a, b in combinations(range(k), 2):
        make = _pair_factory(comp, k, a, b)
        gg, g = _build(make, mode, source)
        if is_zero(g.table[0]):
            raise CaseExhaustion("pair component vanishes at the all-zero input")
        P = g.table[3] / g.table[0]
        if _outside_affine_form(g) is not None:
            return gg, g, {"pair": (a, b), "ratio": P}
        pairs[(a, b)] = (P, make)
    if k < 3:
        return None
    P = {key: val[0] for key, val in pairs.items()}
    ysq = P[(0, 1)] * P[(0, 2)] / P[(1, 2)]
    if not eq(ysq * ysq, coerce(-1, mode)):
        return None
    y0 = sqrt_in_field(ysq)
    if y0 is None:
        return None
    ys = [y0] + [P[(0, j)] / y0 for j in range(1, k)]
    powers = []
    for y in ys:
        for e in range(4):
            if eq(y, coerce(W, mode) * coerce(I, mode) ** e):
                powers.append(e)
                break
        else:
            return None
    i_unit, mi_unit = coerce(I, mode), -coerce(I, mode)
    plus = next((m for p, m in pairs.values() if eq(p, i_unit)), None)
    minus = next((m for p, m in pairs.values() if eq(p, mi_unit)), None)
    if plus is None and minus is None:
        return None
    plan = []
    for e in powers:
        opts = []
        if plus is not None:
            opts.append(((-e) % 4, 0, plus))
        if minus is not None:
            opts.append((e % 4, 1, minus))
        m, _, make = min(opts, key=lambda t: (t[0], t[1]))
        plan.append((m, make))

    def aligned(bld):
        ports = comp(bld)
        outs = []
        for port, (m, make) in zip(ports, plan):
            for _ in range(m):
                pa, pb = make(bld)
                bld.link(port, pa)
                port = pb
            outs.append(port)
        return outs

    gg, g = _build(aligned, mode, source)
    if _outside_affine_form(g) is None:
        return None
    return gg, g, {"corrections": [m for m, _ in plan]}


def _realize_parity(sp: _Split, mode: str):
    k = len(sp.R)
    zero_ok = not is_zero(sp.Fp.table[0])

    def source(bld):
        for p in sp.base(bld):
            bld.pin0(p)

    src = source if zero_ok else None
    if zero_ok:
        res = _parity_even(sp.base, k, mode, src)
        if res is None:
            raise CaseExhaustion("no non-affine symmetric signature found (even parity core)")
        return res + ("parity1",)
    if k == 2:
        y = sp.Fp.table[1] / sp.Fp.table[2]

        def doubled(bld):
            c1, c2 = sp.base(bld), sp.base(bld)
            bld.link(c1[0], c2[0])
            return [c1[1], c2[1]]

        gg, g = _build(doubled, mode, src)
        if _outside_affine_form(g) is not None:
            return gg, g, {"y": y, "copies": 2}, "parity2_n2"

        def tripled(bld):
            cs = [sp.base(bld) for _ in range(3)]
            bld.parity3([c[1] for c in cs])
            return [c[0] for c in cs]

        gg, g = _build(tripled, mode, src)
        if _outside_affine_form(g) is not None:
            return gg, g, {"y": y, "copies": 3}, "parity2_n2"
        raise CaseExhaustion("odd parity binary core yields only affine signatures")
    for a, b in ((0, 1), (1, 0)):

        def comp(bld, a=a, b=b):
            X = sp.base(bld)
            for j in range(k):
                if j not in (a, b):
                    bld.pin0(X[j])
            A = sp.base(bld)
            bld.link(X[b], A[a])
            out = list(A)
            out[a] = X[a]
            return out

        res = _parity_even(comp, k, mode, src)
        if res is not None:
            gg, g, info = res
            info["flipped"] = a
            return gg, g, info, "parity2"
    raise CaseExhaustion("no non-affine symmetric signature found (odd parity core)")


def _realize_matching(sp: _Split, mode: str):
    Fp, R = sp.Fp, sp.R
    k = len(R)
    supp = Fp.support()
    r = []
    for j in range(k):
        bit = 1 << (k - 1 - j)
        ones = sum(1 for s in supp if s & bit)
        r.append(1 if 2 * ones > len(supp) else 0)
    rv = sum(b << (k - 1 - j) for j, b in enumerate(r))
    if sorted(supp) != sorted(rv ^ (1 << (k - 1 - j)) for j in range(k)):
        raise PreconditionViolated("core is neither of parity nor of matching shape")
    rev = [j for j in range(k) if r[j]]
    up = [j for j in range(k) if not r[j]]
    l = len(rev)
    if l == 0:
        a, b, c = 0, 1, 2
    elif l == 1:
        a = rev[0]
        b, c = [j for j in range(k) if j != a][:2]
    elif l == 2:
        b, c = rev
        a = up[0]
    else:
        a, b, c = rev[:3]
    candidates = [(a, {b}), (a, {c}), (a, {b, c}), (b, {a, c}), (c, {a, b})]

    def source(bld):
        ports = bld.vertex(sp.F)
        for i in sp.P:
            bld.pin0(ports[i])
        bld.ones.extend(ports[i] for i in sp.Q)
        for j in up:
            bld.pin0(ports[R[j]])
        bld.pin0(ports[R[rev[0]]])
        bld.ones.extend(ports[R[j]] for j in rev[1:])

    for d, S in candidates:
        roles = {}
        for j in range(k):
            roles[R[j]] = "D" if j == d else "S" if j in S else "F1" if r[j] else "F0"

        def make(bld, roles=roles, d=d):
            A, B = bld.vertex(sp.F), bld.vertex(sp.F)
            for i in range(sp.F.arity):
                role = roles.get(i, "S")
                if role == "S":
                    bld.link(A[i], B[i])
                elif role == "F0":
                    bld.pin0(A[i])
                    bld.pin0(B[i])
                elif role == "F1":
                    bld.demands.extend([A[i], B[i]])
            return [A[R[d]], B[R[d]]]

        gg, g = _build(make, mode, source if rev else None)
        if _outside_affine_form(g) is not None:
            info = {"dangling": d, "sum_up": sorted(S), "reversed": rev}
            return gg, g, info, "matching_l" + (str(l) if l < 3 else "3+")
    raise CaseExhaustion("no mating candidate yields a non-affine signature")


def realize_symmetric_from_mp(F: Signature) -> SymRealization:
    """Symmetric non-affine matchgate signature realized from ``F``.

    ``case`` is one of ``parity1``, ``parity2``, ``parity2_n2``,
    ``matching_l0`` .. ``matching_l3+``; ``g`` is the exact contraction.
    """
    if not is_permutable_matchgate(F):
        raise PreconditionViolated("input is not a permutable matchgate")
    if is_affine(F) is not None:
        raise PreconditionViolated("input is affine")
    sp = _split(F)
    k = len(sp.R)
    if k < 2:
        raise PreconditionViolated("core has arity below 2")
    if _is_parity_shape(sp.Fp):
        gg, g, info, case = _realize_parity(sp, F.mode)
    else:
        gg, g, info, case = _realize_matching(sp, F.mode)
    form = _outside_affine_form(g)
    info.update({"constant_zero": sp.P, "constant_one": sp.Q})
    return SymRealization(gg, g, case, form, info)


# ---------------------------------------------------------------------------
# non-degenerate binaries


def _roles_nondeg(f: Signature) -> tuple:
    k = f.arity
    if k == 2:
        return ("D", "S")
    for i in range(k):
        for c in (0, 1):
            sub = pin(f, [(i + 1, c)])
            if is_degenerate(sub) is None:
                inner = list(_roles_nondeg(sub))
                inner.insert(i, "F0" if c == 0 else "F1")
                return tuple(inner)
    return ("D",) + ("S",) * (k - 1)


def realize_nondeg_binary(f: Signature) -> GadgetGraph:
    """Two-copy mating gadget of ``f`` whose signature is a non-degenerate binary."""
    if f.arity < 2 or is_degenerate(f) is not None:
        raise DegenerateInput("input signature is degenerate")
    gg = mating_gadget(f, MatingSpec(_roles_nondeg(f)))
    if is_degenerate(contract(gg)) is not None:
        raise CaseExhaustion("mating gadget came out degenerate")
    return gg


@dataclass
class BinaryRealization:
    gadget: GadgetGraph
    kind: str  # "nondeg_binary" or "point_001"
    signature: Signature
    scale: object = None  # for point_001: scale * signature == [0,0,1]


def _pinned(comp: Callable, positions) -> Callable:
    drop = set(positions)

    def build(bld):
        ports = comp(bld)
        for j in sorted(drop):
            bld.pin0(ports[j])
        return [p for j, p in enumerate(ports) if j not in drop]

    return build


def _mate_all(comp: Callable) -> Callable:
    """Two instances; first output dangles, the rest are summed up."""

    def build(bld):
        A, B = comp(bld), comp(bld)
        for p, q in zip(A[1:], B[1:]):
            bld.link(p, q)
        return [A[0], B[0]]

    return build


def _binary_or_001(comp: Callable, sig: Signature, mode: str):
    k = sig.arity
    if k == 2:
        return comp, "nondeg_binary"
    for i in range(k):
        sub = pin(sig, [(i + 1, 0)])
        if is_degenerate(sub) is None:
            return _binary_or_001(_pinned(comp, [i]), sub, mode)
    i = next(i for i in range(k) if not pin(sig, [(i + 1, 0)]).is_zero())
    factors = is_degenerate(pin(sig, [(i + 1, 0)]))
    others = [j for j in range(k) if j != i]
    L = [j for j, u in zip(others, factors) if not is_zero(u.table[0])]
    if len(L) != k - 1:
        return _mate_all(_pinned(comp, [i] + L)), "point_001"
    f0 = sig.table[0]
    b = [sig.table[1 << (k - 1 - j)] / f0 for j in range(k)]
    d = sig.table[-1] / f0
    prod = coerce(1, mode)
    for bj in b:
        prod = prod * bj
    d = d - prod
    for off, val in enumerate(sig.table):
        expect = coerce(1, mode)
        for j in range(k):
            if off >> (k - 1 - j) & 1:
                expect = expect * b[j]
        if off == (1 << k) - 1:
            expect = expect + d
        if not eq(val, f0 * expect):
            raise CaseExhaustion("signature does not split as a product plus a corner term")
    unit = coerce(I, mode)
    for j in range(k):
        if eq(b[j], unit) or eq(b[j], -unit):

            def h(bld, j=j):
                ports = comp(bld)
                p = _pinned(comp, [x for x in range(k) if x != j])(bld)
                bld.link(p[0], ports[j])
                return [q for x, q in enumerate(ports) if x != j]

            return _mate_all(h), "point_001"
    # absorbing variable j multiplies the corner term by b_j, so variables
    # with b_j = 0 stay outputs; three or more of them are mated instead
    zeros = [j for j in range(k) if is_zero(b[j])]
    keep = zeros if len(zeros) > 2 else sorted(zeros + [j for j in range(k) if j not in zeros][: 2 - len(zeros)])

    def g(bld):
        ports = comp(bld)
        for j in range(k):
            if j not in keep:
                p = _pinned(comp, [x for x in range(k) if x != j])(bld)
                bld.link(p[0], ports[j])
        return [ports[j] for j in keep]

    return (_mate_all(g) if len(keep) > 2 else g), "nondeg_binary"


def realize_binary_or_001(f: Signature) -> BinaryRealization:
    """Either a non-degenerate binary or ``[0,0,1]`` over ``{f} | {[1,0],[1,0,1]}``."""
    if f.arity < 2 or is_degenerate(f) is not None:
        raise DegenerateInput("input signature is degenerate")

    def base(bld):
        return bld.vertex(f)

    make, kind = _binary_or_001(base, f, f.mode)
    gg, sig = _build(make, f.mode)
    if kind == "nondeg_binary":
        if is_degenerate(sig) is not None:
            raise CaseExhaustion("binary came out degenerate")
        return BinaryRealization(gg, kind, sig)
    target = Signature([0, 0, 0, 1], f.mode)
    c = proportional(target, sig)
    if c is None:
        raise CaseExhaustion("expected a multiple of [0,0,1]")
    return BinaryRealization(gg, kind, sig, c)


__all__ = [
    "SymRealization",
    "BinaryRealization",
    "realize_symmetric_from_mp",
    "realize_nondeg_binary",
    "realize_binary_or_001",
    "left_side_over",
]
