"""Membership tests for the affine, product and matchgate families.

Also types normalized permutable matchgates as Pinning, Parity or Matching
and produces the witnesses (``G``, hub) the gadget builders consume.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations

from .errors import NoHub, PreconditionViolated, SqrtNotInField
from .exactnum import I, coerce, eq, is_zero, sqrt_in_field
from .matchgate import Verdict, is_matchgate, mgi_check, normalize
from .signature import Signature, Symmetric, detect_symmetric, hat, permute

# ---------------------------------------------------------------------------
# affine family


@dataclass(frozen=True)
class AffineWitness:
    """``lam * chi(Ax = b) * i^(sum a_k x_k + 2 sum b_kl x_k x_l)``.

    ``a`` maps a variable to an exponent in Z_4 and ``b`` maps a pair of
    variables to 0/1; only free (pivot) variables of the support appear.
    ``A`` rows are bit masks over variables, ``rhs`` their right-hand sides.
    """

    arity: int
    lam: object
    A: tuple
    rhs: tuple
    a: dict
    b: dict
    mode: str = "exact"

    def evaluate(self) -> Signature:
        n = self.arity
        unit = _units(self.mode)
        zero = coerce(0, self.mode)
        table = []
        for k in range(1 << n):
            x = [(k >> (n - 1 - j)) & 1 for j in range(n)]
            if any(((row & k).bit_count() & 1) != r for row, r in zip(self.A, self.rhs)):
                table.append(zero)
                continue
            e = sum(c * x[v - 1] for v, c in self.a.items())
            e += sum(2 * c * x[u - 1] * x[v - 1] for (u, v), c in self.b.items())
            table.append(self.lam * unit[e % 4])
        return Signature(table, self.mode)


def _units(mode: str) -> tuple:
    if mode == "float":
        return (1 + 0j, 1j, -1 + 0j, -1j)
    return (I**0, I, I**2, I**3)


def _gf2_rref(vectors, n):
    """Row-reduce bit masks; returns (rows, pivot variables as 1-based indices)."""
    rows = []
    pivots = []
    for v in vectors:
        for r, p in zip(rows, pivots):
            if v & (1 << (n - p)):
                v ^= r
        if v:
            p = n - v.bit_length() + 1
            # clear this pivot from previous rows
            for idx, r in enumerate(rows):
                if r & (1 << (n - p)):
                    rows[idx] = r ^ v
            rows.append(v)
            pivots.append(p)
    return rows, pivots


def _nullspace(rows, pivots, n):
    """Basis of {v : <r, v> = 0 for all rows} as bit masks."""
    free = [j for j in range(1, n + 1) if j not in pivots]
    out = []
    for fj in free:
        v = 1 << (n - fj)
        for r, p in zip(rows, pivots):
            if r & (1 << (n - fj)):
                v |= 1 << (n - p)
        out.append(v)
    return out


def _power_of_i(r):
    for e, u in enumerate(_units("float" if isinstance(r, complex) else "exact")):
        if eq(r, u):
            return e
    return None


def is_affine(f: Signature):
    """Affine witness or None.  The zero signature is affine with ``lam = 0``."""
    n = f.arity
    supp = f.support()
    if not supp:
        return AffineWitness(n, coerce(0, f.mode), (), (), {}, {}, f.mode)
    s0 = supp[0]
    rows, pivots = _gf2_rref([s ^ s0 for s in supp], n)
    if len(supp) != 1 << len(rows):
        return None
    supp_set = set(supp)
    # the support point whose pivot coordinates are all zero
    base = s0
    for r, p in zip(rows, pivots):
        if base & (1 << (n - p)):
            base ^= r
    lam = f.table[base]

    def point(ts):
        x = base
        for t, r in zip(ts, rows):
            if t:
                x ^= r
        return x

    def eps_at(x):
        return _power_of_i(f.table[x] / lam)

    r = len(rows)
    a: dict = {}
    for k in range(r):
        e = eps_at(point([j == k for j in range(r)]))
        if e is None:
            return None
        if e:
            a[pivots[k]] = e
    b: dict = {}
    for k, l in combinations(range(r), 2):
        e = eps_at(point([j in (k, l) for j in range(r)]))
        if e is None:
            return None
        d = (e - a.get(pivots[k], 0) - a.get(pivots[l], 0)) % 4
        if d % 2:
            return None
        if d:
            b[(pivots[k], pivots[l])] = 1
    for mask in range(1 << r):
        ts = [(mask >> (r - 1 - j)) & 1 for j in range(r)]
        x = point(ts)
        if x not in supp_set:
            return None
        e = eps_at(x)
        want = sum(a.get(pivots[j], 0) for j in range(r) if ts[j])
        want += sum(2 for (u, v) in b if ts[pivots.index(u)] and ts[pivots.index(v)])
        if e is None or (e - want) % 4:
            return None
    A = tuple(_nullspace(rows, pivots, n))
    rhs = tuple((row & base).bit_count() & 1 for row in A)
    return AffineWitness(n, lam, A, rhs, a, b, f.mode)


# ---------------------------------------------------------------------------
# product family


@dataclass(frozen=True)
class ProductWitness:
    """Blocks of variables with an E-signature on each; tensor equals the input."""

    arity: int
    blocks: tuple  # ((vars...), Signature) pairs, vars 1-based
    mode: str = "exact"

    def evaluate(self) -> Signature:
        n = self.arity
        table = []
        for k in range(1 << n):
            v = coerce(1, self.mode)
            for vars_, g in self.blocks:
                off = 0
                for x in vars_:
                    off = (off << 1) | ((k >> (n - x)) & 1)
                v = v * g.table[off]
            table.append(v)
        return Signature(table, self.mode)


def is_E_signature(f: Signature) -> bool:
    supp = f.support()
    full = (1 << f.arity) - 1
    return len(supp) <= 1 or (len(supp) == 2 and supp[0] ^ supp[1] == full)


def is_product(f: Signature):
    """Product witness or None.  The zero signature counts as a product."""
    n = f.arity
    if f.is_zero():
        z = Signature.zero(n, f.mode) if n else Signature.constant(0, f.mode)
        return ProductWitness(n, (((tuple(range(1, n + 1))), z),), f.mode)
    if n == 0:
        return ProductWitness(0, (((), f),), f.mode)
    blocks = []
    remaining = list(range(1, n + 1))
    cur = f
    while cur.arity:
        found = _split_first(cur)
        if found is None:
            return None
        T, left, right = found
        blocks.append((tuple(remaining[t - 1] for t in T), left))
        remaining = [v for j, v in enumerate(remaining, start=1) if j not in T]
        cur = right
    # fold the leftover constant into the first block
    c = cur.table[0]
    v0, s0 = blocks[0]
    blocks[0] = (v0, s0.scale(c))
    return ProductWitness(n, tuple(blocks), f.mode)


def _split_first(f: Signature):
    """Smallest block T containing variable 1 with f = E_T (x) rest."""
    n = f.arity
    others = list(range(2, n + 1))
    for size in range(0, n):
        for extra in combinations(others, size):
            T = (1,) + extra
            R = [v for v in range(1, n + 1) if v not in T]
            split = _rank_one_split(f, T, R)
            if split is None:
                continue
            left, right = split
            if is_E_signature(left):
                return T, left, right
    return None


def _rank_one_split(f: Signature, T, R):
    n = f.arity
    tb = [1 << (n - v) for v in T]
    rb = [1 << (n - v) for v in R]

    def off(x, y):
        o = 0
        for j, b in enumerate(tb):
            if (x >> (len(tb) - 1 - j)) & 1:
                o |= b
        for j, b in enumerate(rb):
            if (y >> (len(rb) - 1 - j)) & 1:
                o |= b
        return o

    nt, nr = 1 << len(T), 1 << len(R)
    M = [[f.table[off(x, y)] for y in range(nr)] for x in range(nt)]
    x0 = y0 = None
    for x in range(nt):
        for y in range(nr):
            if not is_zero(M[x][y]):
                x0, y0 = x, y
                break
        if x0 is not None:
            break
    piv = M[x0][y0]
    for x in range(nt):
        for y in range(nr):
            if not eq(M[x][y] * piv, M[x][y0] * M[x0][y]):
                return None
    left = Signature._trusted(tuple(M[x][y0] for x in range(nt)), f.mode)
    right = Signature._trusted(tuple(M[x0][y] / piv for y in range(nr)), f.mode)
    return left, right


# ---------------------------------------------------------------------------
# permutable matchgates


def _pair(F: Signature, a: int, b: int):
    n = F.arity
    return F.table[(1 << (n - a)) | (1 << (n - b))]


def product_equalities(F: Signature) -> Verdict:
    """``F(ab)F(cd) = F(ac)F(bd) = F(ad)F(bc)`` for all ``a<b<c<d``."""
    n = F.arity
    for a, b, c, d in combinations(range(1, n + 1), 4):
        x = _pair(F, a, b) * _pair(F, c, d)
        y = _pair(F, a, c) * _pair(F, b, d)
        z = _pair(F, a, d) * _pair(F, b, c)
        if not (eq(x, y) and eq(y, z)):
            return Verdict(False, (a, b, c, d))
    return Verdict(True)


def is_permutable_matchgate(f: Signature) -> Verdict:
    """Whether every variable permutation of ``f`` is a matchgate.

    The witness of a failure is either ``("mgi", (beta, gamma))`` or
    ``("quadruple", (a, b, c, d))`` on the normalization.
    """
    norm = normalize(f)
    if norm is None:
        return Verdict(True)
    mg = is_matchgate(f)
    if not mg:
        return Verdict(False, ("mgi", mg.witness))
    F = norm[0]
    if F.arity < 4:
        return Verdict(True)
    v = product_equalities(F)
    return v if v else Verdict(False, ("quadruple", v.witness))


def is_permutable_matchgate_bruteforce(f: Signature) -> bool:
    return all(mgi_check(permute(f, p)).ok for p in permutations(range(1, f.arity + 1)))


@dataclass(frozen=True)
class MPType:
    kind: str  # "Pinning", "Parity", "Matching", "SmallArity"
    G: tuple | None = None  # per-index weights, index a at position a-1
    hub: int | None = None


def _triangle(F: Signature):
    n = F.arity
    for a, b, c in combinations(range(1, n + 1), 3):
        if not is_zero(_pair(F, a, b) * _pair(F, a, c) * _pair(F, b, c)):
            return a, b, c
    return None


def parity_witness(F: Signature) -> tuple:
    """``G`` with ``F(ab) = G(a)G(b)`` for all ``a != b``."""
    tri = _triangle(F)
    if tri is None:
        raise PreconditionViolated("no index triple with F(ab)F(ac)F(bc) != 0")
    a, b, c = tri
    ga = sqrt_in_field(_pair(F, a, b) * _pair(F, a, c) / _pair(F, b, c))
    if ga is None:
        raise SqrtNotInField("the parity weights need a square root outside the field")
    n = F.arity
    G = [None] * n
    G[a - 1] = ga
    for d in range(1, n + 1):
        if d != a:
            G[d - 1] = _pair(F, a, d) / ga
    for s, t in combinations(range(1, n + 1), 2):
        if not eq(G[s - 1] * G[t - 1], _pair(F, s, t)):
            raise PreconditionViolated(f"F({s}{t}) does not factor as G({s})G({t})")
    return tuple(G)


def matching_hub(F: Signature) -> int:
    n = F.arity
    nonzero = [(s, t) for s, t in combinations(range(1, n + 1), 2) if not is_zero(_pair(F, s, t))]
    if not nonzero:
        raise NoHub("no nonzero pair value")
    candidates = set(nonzero[0])
    for p in nonzero[1:]:
        candidates &= set(p)
    if not candidates:
        raise NoHub("nonzero pairs share no common index")
    x = min(candidates)
    for k in range(1 << n):
        if k.bit_count() >= 4 and k.bit_count() % 2 == 0 and not is_zero(F.table[k]):
            raise NoHub(f"nonzero entry of weight {k.bit_count()}")
    return x


def mp_structure(F: Signature) -> MPType:
    """Pinning / Parity / Matching structure of a normalized permutable
    matchgate of any arity (no small-arity cut-off)."""
    n = F.arity
    if all(is_zero(_pair(F, s, t)) for s, t in combinations(range(1, n + 1), 2)):
        return MPType("Pinning")
    if _triangle(F) is not None:
        return MPType("Parity", G=parity_witness(F))
    x = matching_hub(F)
    G = tuple(coerce(1, F.mode) if a == x else _pair(F, a, x) for a in range(1, n + 1))
    return MPType("Matching", G=G, hub=x)


def classify_mp_type(F: Signature) -> MPType:
    """Type of a normalized permutable matchgate.

    Below arity 4 a Matching shape is reported as ``SmallArity``.
    """
    if F.arity and not eq(F.table[0], 1):
        raise PreconditionViolated("signature is not normalized")
    if not is_permutable_matchgate(F):
        raise PreconditionViolated("signature is not a permutable matchgate")
    t = mp_structure(F)
    if t.kind == "Matching" and F.arity < 4:
        return MPType("SmallArity")
    return t


# ---------------------------------------------------------------------------
# hat classes and the symmetric non-affine matchgate forms


def hat_membership(f: Signature, cls: str) -> bool:
    g = hat(f)
    if cls == "M":
        return is_matchgate(g).ok
    if cls == "MP":
        return is_permutable_matchgate(g).ok
    raise ValueError(f"unknown class {cls!r}")


def m_minus_a_form(g):
    """Match a symmetric signature (up to scale) against the five
    symmetric matchgate shapes outside the affine family.

    Returns ``(form, {"k": arity, "r": ratio})`` or None.
    """
    if isinstance(g, Signature):
        sym = detect_symmetric(g)
        if sym is None:
            return None
        g = sym
    mode = "float" if any(isinstance(v, (float, complex)) for v in g.values) else "exact"
    vals = [coerce(v, mode) for v in g.values]
    k = len(vals) - 1
    nz = [j for j, v in enumerate(vals) if not is_zero(v)]
    if not nz:
        return None
    if k >= 3 and nz == [1]:
        return 1, {"k": k}
    if k >= 3 and nz == [k - 1]:
        return 2, {"k": k}
    if k == 2 and nz and nz[0] == 0 and is_zero(vals[1]) and not is_zero(vals[2]):
        r = vals[2] / vals[0]
        r4 = r**4
        if not eq(r4, 1):
            return 3, {"k": 2, "r": r}
        return None
    if k >= 3:
        for start, form in ((0, 4), (1, 5)):
            if is_zero(vals[start]):
                continue
            if any(not is_zero(vals[j]) for j in range(1 - start, k + 1, 2)):
                continue
            if start + 2 > k:
                continue
            r = vals[start + 2] / vals[start]
            ok = all(eq(vals[j], vals[start] * r ** ((j - start) // 2)) for j in range(start, k + 1, 2))
            if ok and not is_zero(r) and not eq(r * r, 1):
                return form, {"k": k, "r": r}
    return None


# ---------------------------------------------------------------------------
# summary


@dataclass
class ClassVerdict:
    in_A: bool
    in_P: bool
    in_M: bool
    in_M_hat: bool
    in_MP: bool
    in_MP_hat: bool
    witnesses: dict = field(default_factory=dict)

    def flags(self) -> dict:
        return {
            "A": self.in_A,
            "P": self.in_P,
            "M": self.in_M,
            "M_hat": self.in_M_hat,
            "MP": self.in_MP,
            "MP_hat": self.in_MP_hat,
        }


def classify(f: Signature) -> ClassVerdict:
    aff = is_affine(f)
    prod = is_product(f)
    mg = is_matchgate(f)
    mp = is_permutable_matchgate(f)
    h = hat(f)
    mgh = is_matchgate(h)
    mph = is_permutable_matchgate(h)
    return ClassVerdict(
        in_A=aff is not None,
        in_P=prod is not None,
        in_M=mg.ok,
        in_M_hat=mgh.ok,
        in_MP=mp.ok,
        in_MP_hat=mph.ok,
        witnesses={
            "A": aff,
            "P": prod,
            "M": mg.witness,
            "M_hat": mgh.witness,
            "MP": mp.witness,
            "MP_hat": mph.witness,
        },
    )


__all__ = [
    "AffineWitness",
    "ProductWitness",
    "is_affine",
    "is_product",
    "is_E_signature",
    "product_equalities",
    "is_permutable_matchgate",
    "is_permutable_matchgate_bruteforce",
    "MPType",
    "parity_witness",
    "matching_hub",
    "classify_mp_type",
    "mp_structure",
    "hat_membership",
    "m_minus_a_form",
    "ClassVerdict",
    "classify",
    "Symmetric",
]
