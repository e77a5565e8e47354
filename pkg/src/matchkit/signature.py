"""Dense Boolean-domain signatures.

An assignment ``a_1 ... a_n`` lives at offset ``sum a_i 2^(n-i)``, so
variable 1 is the most significant bit.  Tables hold :class:`Cyclo` values
in exact mode and ``complex`` values in float mode.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .config import get_config
from .errors import (
    ArityCapExceeded,
    ArityMismatch,
    DuplicateIndex,
    IndexOutOfRange,
    MixedModes,
    NotAPermutation,
    SingularMatrix,
)
from .exactnum import Cyclo, coerce, eq, format_scalar, is_zero


def _infer_mode(values, mode):
    has_float = any(isinstance(v, (float, complex)) for v in values)
    if mode is None:
        return "float" if has_float else "exact"
    if mode == "exact" and has_float:
        raise MixedModes("float entries in an exact signature")
    return mode


def _bits(offset: int, n: int) -> tuple[int, ...]:
    return tuple((offset >> (n - 1 - i)) & 1 for i in range(n))


def _offset(bits: Sequence[int]) -> int:
    out = 0
    for b in bits:
        out = (out << 1) | b
    return out


class Signature:
    """A function {0,1}^n -> scalars stored as a dense table."""

    __slots__ = ("arity", "table", "mode")

    def __init__(self, table: Iterable, mode: str | None = None):
        values = list(table)
        mode = _infer_mode(values, mode)
        size = len(values)
        n = size.bit_length() - 1
        if size == 0 or 1 << n != size:
            raise ArityMismatch(f"table length {size} is not a power of two")
        if n > get_config().arity_cap:
            raise ArityCapExceeded(f"arity {n} exceeds cap {get_config().arity_cap}")
        self.arity = n
        self.table = tuple(coerce(v, mode) for v in values)
        self.mode = mode

    @classmethod
    def _trusted(cls, table: tuple, mode: str) -> Signature:
        obj = cls.__new__(cls)
        obj.arity = len(table).bit_length() - 1
        obj.table = table
        obj.mode = mode
        return obj

    # -- constructors -----------------------------------------------------
    @classmethod
    def symmetric(cls, values: Sequence, mode: str | None = None) -> Signature:
        return Symmetric(tuple(values)).expand(mode)

    @classmethod
    def constant(cls, value, mode: str | None = None) -> Signature:
        return cls([value], mode)

    @classmethod
    def zero(cls, n: int, mode: str = "exact") -> Signature:
        z = coerce(0, mode)
        return cls._trusted((z,) * (1 << n), mode)

    @classmethod
    def equality(cls, n: int, mode: str = "exact") -> Signature:
        return cls.symmetric([1] + [0] * (n - 1) + [1] if n else [1], mode)

    # -- access -------------------------------------------------------------
    def __len__(self):
        return len(self.table)

    def __getitem__(self, alpha):
        return self.eval(alpha)

    def eval(self, alpha) -> object:
        if isinstance(alpha, int):
            if not 0 <= alpha < len(self.table):
                raise IndexOutOfRange(f"offset {alpha} out of range")
            return self.table[alpha]
        bits = [int(c) for c in alpha]
        if len(bits) != self.arity:
            raise ArityMismatch(f"assignment of length {len(bits)} for arity {self.arity}")
        return self.table[_offset(bits)]

    def items(self):
        n = self.arity
        for k, v in enumerate(self.table):
            yield _bits(k, n), v

    def support(self) -> list[int]:
        return [k for k, v in enumerate(self.table) if not is_zero(v)]

    def is_zero(self) -> bool:
        return all(is_zero(v) for v in self.table)

    def same_as(self, other: Signature, eps: float | None = None) -> bool:
        if self.arity != other.arity:
            return False
        return all(eq(a, b, eps) for a, b in zip(self.table, other.table))

    def __eq__(self, other):
        if not isinstance(other, Signature):
            return NotImplemented
        return self.same_as(other)

    def __hash__(self):
        return hash((self.arity, self.table)) if self.mode == "exact" else hash(self.arity)

    def __repr__(self):
        sym = detect_symmetric(self)
        if sym is not None and self.arity > 0:
            body = ",".join(format_scalar(v) for v in sym.values)
            return f"Signature.symmetric([{body}])"
        body = ",".join(format_scalar(v) for v in self.table)
        return f"Signature([{body}])"

    def to_mode(self, mode: str) -> Signature:
        if mode == self.mode:
            return self
        if mode == "exact":
            raise MixedModes("cannot convert a float signature to exact")
        return Signature._trusted(tuple(complex(v) for v in self.table), "float")

    # -- algebra ------------------------------------------------------------
    def scale(self, c) -> Signature:
        c = coerce(c, self.mode)
        return Signature._trusted(tuple(c * v for v in self.table), self.mode)

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def pin(self, positions) -> Signature:
        return pin(self, positions)

    def permute(self, perm) -> Signature:
        return permute(self, perm)

    def tensor(self, other) -> Signature:
        return tensor(self, other)

    def transform(self, T) -> Signature:
        return transform(T, self)


@dataclass(frozen=True)
class Symmetric:
    """Weight profile ``[f_0, ..., f_n]``."""

    values: tuple

    @property
    def arity(self) -> int:
        return len(self.values) - 1

    def expand(self, mode: str | None = None) -> Signature:
        mode = _infer_mode(self.values, mode)
        vals = [coerce(v, mode) for v in self.values]
        n = len(vals) - 1
        if n > get_config().arity_cap:
            raise ArityCapExceeded(f"arity {n} exceeds cap")
        return Signature._trusted(tuple(vals[k.bit_count()] for k in range(1 << n)), mode)


@dataclass(frozen=True)
class BinaryMatrix:
    """2x2 matrix ``[[t00, t01], [t10, t11]]``."""

    t00: object
    t01: object
    t10: object
    t11: object

    @classmethod
    def of(cls, rows, mode: str | None = None) -> BinaryMatrix:
        flat = [rows[0][0], rows[0][1], rows[1][0], rows[1][1]]
        mode = _infer_mode(flat, mode)
        return cls(*(coerce(v, mode) for v in flat))

    @property
    def rows(self):
        return ((self.t00, self.t01), (self.t10, self.t11))

    def __getitem__(self, ij):
        return self.rows[ij[0]][ij[1]]

    def det(self):
        return self.t00 * self.t11 - self.t01 * self.t10

    @property
    def invertible(self) -> bool:
        return not is_zero(self.det())

    def inverse(self) -> BinaryMatrix:
        d = self.det()
        if is_zero(d):
            raise SingularMatrix("matrix is singular")
        return BinaryMatrix(self.t11 / d, -self.t01 / d, -self.t10 / d, self.t00 / d)

    def transpose(self) -> BinaryMatrix:
        return BinaryMatrix(self.t00, self.t10, self.t01, self.t11)

    def __matmul__(self, o: BinaryMatrix) -> BinaryMatrix:
        a, b = self.rows, o.rows
        return BinaryMatrix(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )


H2 = BinaryMatrix.of([[1, 1], [1, -1]])
IDENTITY = BinaryMatrix.of([[1, 0], [0, 1]])


# ---------------------------------------------------------------------------
# operations


def eval_sig(f: Signature, alpha):
    return f.eval(alpha)


def pin(f: Signature, positions) -> Signature:
    """Fix variables; ``positions`` is an iterable of ``(index, bit)`` with 1-based indices."""
    positions = list(positions)
    n = f.arity
    fixed: dict[int, int] = {}
    for i, c in positions:
        if not 1 <= i <= n:
            raise IndexOutOfRange(f"variable {i} not in 1..{n}")
        if i in fixed:
            raise DuplicateIndex(f"variable {i} pinned twice")
        if c not in (0, 1):
            raise IndexOutOfRange(f"pin value {c} is not a bit")
        fixed[i] = c
    free = [i for i in range(1, n + 1) if i not in fixed]
    base = sum(c << (n - i) for i, c in fixed.items())
    m = len(free)
    shifts = [n - i for i in free]
    out = []
    for k in range(1 << m):
        off = base
        for j, s in enumerate(shifts):
            if (k >> (m - 1 - j)) & 1:
                off |= 1 << s
        out.append(f.table[off])
    return Signature._trusted(tuple(out), f.mode)


def _check_perm(perm, n) -> list[int]:
    perm = [int(p) for p in perm]
    if len(perm) != n or sorted(perm) != list(range(1, n + 1)):
        raise NotAPermutation(f"{perm} is not a permutation of 1..{n}")
    return perm


def permute(f: Signature, perm) -> Signature:
    """Return ``f_pi`` with ``f_pi(a) = f(b)`` where ``b[pi(i)] = a[i]``.

    ``perm`` is one-line notation: ``perm[i-1] = pi(i)``.  In index-set
    language a normalized ``F_pi(B)`` equals ``F(pi(B))``.
    """
    n = f.arity
    perm = _check_perm(perm, n)
    out = []
    for k in range(1 << n):
        off = 0
        for i in range(n):
            if (k >> (n - 1 - i)) & 1:
                off |= 1 << (n - perm[i])
        out.append(f.table[off])
    return Signature._trusted(tuple(out), f.mode)


def inverse_perm(perm) -> list[int]:
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p - 1] = i + 1
    return inv


def tensor(f: Signature, g: Signature) -> Signature:
    if f.mode != g.mode:
        raise MixedModes("tensor of signatures in different modes")
    if f.arity + g.arity > get_config().arity_cap:
        raise ArityCapExceeded("tensor product exceeds arity cap")
    return Signature._trusted(tuple(a * b for a in f.table for b in g.table), f.mode)


def tensor_all(sigs: Sequence[Signature], mode: str = "exact") -> Signature:
    out = Signature.constant(1, mode)
    for s in sigs:
        out = tensor(out, s)
    return out


def _apply_axis(table: list, n: int, axis: int, M) -> list:
    """Apply a 2x2 matrix on one variable (0-based axis)."""
    bit = 1 << (n - 1 - axis)
    (m00, m01), (m10, m11) = M
    out = list(table)
    for k in range(len(table)):
        if k & bit:
            continue
        a, b = table[k], table[k | bit]
        out[k] = m00 * a + m01 * b
        out[k | bit] = m10 * a + m11 * b
    return out


def transform(T: BinaryMatrix, f: Signature) -> Signature:
    """``(Tf)(a) = sum_b prod_i T[a_i, b_i] f(b)``, applied one variable at a time."""
    rows = tuple(tuple(coerce(x, f.mode) for x in r) for r in T.rows)
    table = list(f.table)
    for axis in range(f.arity):
        table = _apply_axis(table, f.arity, axis, rows)
    return Signature._trusted(tuple(table), f.mode)


def hat(f: Signature) -> Signature:
    return transform(H2, f)


def proportional(f: Signature, g: Signature):
    """Return ``lam`` with ``f = lam * g``, or None.  Two zero signatures give 1."""
    if f.arity != g.arity:
        raise ArityMismatch("signatures of different arity")
    lam = None
    for a, b in zip(f.table, g.table):
        za, zb = is_zero(a), is_zero(b)
        if za != zb:
            return None
        if za:
            continue
        if lam is None:
            lam = a / b
        elif not eq(a, lam * b):
            return None
    if lam is None:
        return coerce(1, f.mode)
    return lam


def unary(a, b, mode: str | None = None) -> Signature:
    return Signature([a, b], mode)


def is_degenerate(f: Signature):
    """Unary factors ``[a_i, b_i]`` with tensor product equal to ``f``, else None."""
    n = f.arity
    if n == 0:
        return []
    supp = f.support()
    zero = coerce(0, f.mode)
    if not supp:
        return [Signature._trusted((zero, zero), f.mode) for _ in range(n)]
    beta = supp[0]
    fb = f.table[beta]
    factors = []
    for i in range(n):
        bit = 1 << (n - 1 - i)
        u = (f.table[beta & ~bit], f.table[beta | bit])
        factors.append(u)
    # prod_i u_i(a_i) = f(a) * f(beta)^(n-1) for a product signature
    norm = fb ** (n - 1) if n > 1 else coerce(1, f.mode)
    u0 = factors[0]
    factors[0] = (u0[0] / norm, u0[1] / norm)
    sigs = [Signature._trusted(u, f.mode) for u in factors]
    if tensor_all(sigs, f.mode).same_as(f):
        return sigs
    return None


def detect_symmetric(f: Signature) -> Symmetric | None:
    vals: list = [None] * (f.arity + 1)
    for k, v in enumerate(f.table):
        w = k.bit_count()
        if vals[w] is None:
            vals[w] = v
        elif not eq(vals[w], v):
            return None
    return Symmetric(tuple(vals))


def all_assignments(n: int):
    return product((0, 1), repeat=n)


__all__ = [
    "Signature",
    "Symmetric",
    "BinaryMatrix",
    "H2",
    "IDENTITY",
    "eval_sig",
    "pin",
    "permute",
    "inverse_perm",
    "tensor",
    "tensor_all",
    "transform",
    "hat",
    "proportional",
    "unary",
    "is_degenerate",
    "detect_symmetric",
    "all_assignments",
    "Cyclo",
]
