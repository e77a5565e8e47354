"""Matchgate identities, normalization, pairings and the permutation test."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Mapping, Sequence

import numpy as np

from .config import get_config
from .errors import NotAMatchgate, NotDisjoint, OddSize, TooLarge
from .exactnum import Cyclo, coerce, eq, is_zero
from .signature import Signature, permute


@dataclass(frozen=True)
class Verdict:
    ok: bool
    witness: object = None

    def __bool__(self):
        return self.ok


# ---------------------------------------------------------------------------
# MGI


def _bitstr(k: int, n: int) -> str:
    return format(k, f"0{n}b") if n else ""


def _as_int_array(table):
    """Scale exact values to a common denominator and return an (N, 4) integer array."""
    den = 1
    for v in table:
        d = v.denominator
        den = den * d // math.gcd(den, d)
    rows = [[x * (den // v.denominator) for x in v.numerators] for v in table]
    biggest = max((abs(x) for r in rows for x in r), default=0)
    dtype = np.int64 if biggest < 2**20 else object
    return np.array(rows, dtype=dtype)


def _cyc_mul(a, b):
    a0, a1, a2, a3 = a[:, 0], a[:, 1], a[:, 2], a[:, 3]
    b0, b1, b2, b3 = b[:, 0], b[:, 1], b[:, 2], b[:, 3]
    return np.stack(
        [
            a0 * b0 - a1 * b3 - a2 * b2 - a3 * b1,
            a0 * b1 + a1 * b0 - a2 * b3 - a3 * b2,
            a0 * b2 + a1 * b1 + a2 * b0 - a3 * b3,
            a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0,
        ],
        axis=1,
    )


_PAIR_BLOCK = 1 << 16


def mgi_check(f: Signature) -> Verdict:
    """Check the matchgate identities for every pair of assignments.

    For ``beta, gamma`` let ``p_1 < ... < p_l`` be the positions where they
    differ; the identity is ``sum_j (-1)^j f(beta ^ e_pj) f(gamma ^ e_pj) = 0``.
    The witness of a failure is ``(beta, gamma)`` as bit strings: the first
    violating pair with ``gamma < beta``, scanning ``beta`` then ``gamma``
    in increasing order.
    """
    n = f.arity
    N = 1 << n
    if n == 0:
        return Verdict(True)
    exact = f.mode == "exact"
    if exact:
        vals = _as_int_array(f.table)
    else:
        vals = np.array(f.table, dtype=complex)
    eps = get_config().eps
    bits = [1 << (n - 1 - i) for i in range(n)]  # variable i+1
    # mask of positions more significant than variable i (smaller index)
    higher = [sum(bits[:i]) for i in range(n)]
    popcount = np.array([k.bit_count() for k in range(N)])
    beta_lo = 1
    while beta_lo < N:
        # a block of consecutive betas with all their gammas < beta, row-major
        beta_hi, count = beta_lo + 1, beta_lo
        while beta_hi < N and count + beta_hi <= _PAIR_BLOCK:
            count += beta_hi
            beta_hi += 1
        betas = np.arange(beta_lo, beta_hi)
        B = np.repeat(betas, betas)
        G = np.arange(count) - np.repeat(np.cumsum(betas) - betas, betas)
        P = B ^ G
        acc = np.zeros((count, 4), dtype=vals.dtype) if exact else np.zeros(count, dtype=complex)
        for i in range(n):
            b = bits[i]
            mask = (P & b) != 0
            if not mask.any():
                continue
            sign = np.where(popcount[P & higher[i]] % 2 == 0, -1, 1) * mask
            left, right = vals[B ^ b], vals[G ^ b]
            if exact:
                acc = acc + _cyc_mul(left, right) * sign[:, None]
            else:
                acc = acc + left * right * sign
        bad = np.flatnonzero(acc.any(axis=1)) if exact else np.flatnonzero(np.abs(acc) > eps)
        if bad.size:
            k = int(bad[0])
            return Verdict(False, (_bitstr(int(B[k]), n), _bitstr(int(G[k]), n)))
        beta_lo = beta_hi
    return Verdict(True)


def mgi_check_naive(f: Signature) -> Verdict:
    """Reference scan of the identities in pure Python, same witness order."""
    n = f.arity
    for beta in range(1 << n):
        for gamma in range(beta):
            P = [i for i in range(n) if ((beta ^ gamma) >> (n - 1 - i)) & 1]
            total = coerce(0, f.mode)
            for j, p in enumerate(P, start=1):
                e = 1 << (n - 1 - p)
                term = f.table[beta ^ e] * f.table[gamma ^ e]
                total = total - term if j % 2 else total + term
            if not is_zero(total):
                return Verdict(False, (_bitstr(beta, n), _bitstr(gamma, n)))
    return Verdict(True)


# ---------------------------------------------------------------------------
# normalization


@dataclass(frozen=True)
class NormalizationCertificate:
    shift: str
    scale: object


def xor_shift(g: Signature, beta: int) -> Signature:
    return Signature._trusted(tuple(g.table[k ^ beta] for k in range(len(g.table))), g.mode)


def normalize(g: Signature):
    """Return ``None`` for the zero signature, else ``(F, cert)`` with
    ``F(a) = g(a ^ beta) / g(beta)`` for the least support point ``beta``."""
    supp = g.support()
    if not supp:
        return None
    beta = supp[0]
    scale = g.table[beta]
    inv = 1 / scale
    F = Signature._trusted(tuple(g.table[k ^ beta] * inv for k in range(len(g.table))), g.mode)
    return F, NormalizationCertificate(_bitstr(beta, g.arity), scale)


def denormalize(F: Signature, cert: NormalizationCertificate) -> Signature:
    beta = int(cert.shift, 2) if cert.shift else 0
    return xor_shift(F, beta).scale(cert.scale)


class IndexExpression:
    """``F(b_1 ... b_k)``: the value at the indicator of a set of 1-based indices."""

    def __init__(self, F: Signature):
        self.F = F
        self.n = F.arity

    def offset(self, indices) -> int:
        off = 0
        for b in indices:
            off |= 1 << (self.n - b)
        return off

    def __call__(self, *indices):
        if len(indices) == 1 and not isinstance(indices[0], int):
            indices = tuple(indices[0])
        return self.F.table[self.offset(indices)]


# ---------------------------------------------------------------------------
# pairings


Pairing = tuple  # tuple of (a, b) with a < b, sorted by a


def enumerate_pairings(S: Sequence[int]) -> Iterator[Pairing]:
    S = sorted(S)
    if len(S) % 2:
        raise OddSize(f"index set of odd size {len(S)}")

    def rec(rest):
        if not rest:
            yield ()
            return
        a = rest[0]
        for j in range(1, len(rest)):
            b = rest[j]
            for tail in rec(rest[1:j] + rest[j + 1 :]):
                yield ((a, b),) + tail

    yield from rec(S)


def crossing_count(M) -> int:
    pairs = [tuple(sorted(p)) for p in M]
    count = 0
    for (a, c), (b, d) in combinations(pairs, 2):
        if a > b:
            (a, c), (b, d) = (b, d), (a, c)
        if a < b < c < d:
            count += 1
    return count


def crossings_between(M1, M2) -> int:
    count = 0
    for p in M1:
        for q in M2:
            (a, c), (b, d) = sorted(p), sorted(q)
            if a > b:
                (a, c), (b, d) = (b, d), (a, c)
            if a < b < c < d:
                count += 1
    return count


def cross_parity(S1, S2) -> int:
    """Parity of crossings between any pairing of ``S1`` and any pairing of ``S2``."""
    S1, S2 = set(S1), set(S2)
    if len(S1) % 2 or len(S2) % 2:
        raise OddSize("both index sets must have even size")
    if S1 & S2:
        raise NotDisjoint("index sets overlap")
    rank = {b: r for r, b in enumerate(sorted(S1 | S2), start=1)}
    q = len(S1) // 2
    return (q + sum(rank[b] for b in S1)) % 2


def _pair_value(F: Signature, a: int, b: int):
    n = F.arity
    return F.table[(1 << (n - a)) | (1 << (n - b))]


def pfaffian_expand(F: Signature, B: Sequence[int]):
    """Signed sum over all pairings of ``B`` of products of pair values."""
    B = sorted(B)
    if len(B) % 2:
        raise OddSize(f"index set of odd size {len(B)}")
    if len(B) > 12 and F.mode == "exact":
        raise TooLarge("pairing enumeration is limited to 12 indices")
    total = coerce(0, F.mode)
    for M in enumerate_pairings(B):
        term = coerce(1, F.mode)
        for a, b in M:
            term = term * _pair_value(F, a, b)
            if is_zero(term):
                break
        else:
            total = total - term if crossing_count(M) % 2 else total + term
    return total


def pfaffian_recurrence(F: Signature, B: Sequence[int]):
    """Expansion along the smallest index: ``sum_j (-1)^j F(b1 bj) Pf(B - b1 - bj)``."""
    B = tuple(sorted(B))
    if len(B) % 2:
        raise OddSize(f"index set of odd size {len(B)}")

    @lru_cache(maxsize=None)
    def pf(S):
        if not S:
            return coerce(1, F.mode)
        a = S[0]
        total = coerce(0, F.mode)
        for j in range(1, len(S)):
            v = _pair_value(F, a, S[j])
            if is_zero(v):
                continue
            term = v * pf(S[1:j] + S[j + 1 :])
            total = total - term if j % 2 == 0 else total + term
        return total

    return pf(B)


# ---------------------------------------------------------------------------
# matchgate tests


def has_even_parity(F: Signature) -> bool:
    return all(is_zero(v) for k, v in enumerate(F.table) if k.bit_count() % 2)


def check_by_pairs(F: Signature) -> Verdict:
    """Pair-value test for a normalized even-parity signature.

    The witness of a failure is the first offending index set.
    """
    n = F.arity
    for k in range(1 << n):
        if k.bit_count() % 2:
            if not is_zero(F.table[k]):
                return Verdict(False, _indices(k, n))
    for size in range(4, n + 1, 2):
        for B in combinations(range(1, n + 1), size):
            off = sum(1 << (n - b) for b in B)
            if not eq(F.table[off], pfaffian_expand(F, B)):
                return Verdict(False, B)
    return Verdict(True)


def _indices(k: int, n: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in range(n) if (k >> (n - 1 - i)) & 1)


def is_matchgate(f: Signature, strategy: str = "mgi") -> Verdict:
    """Matchgate test.

    ``strategy`` is ``"mgi"`` (the identity scan), ``"pairs"`` (pair-value
    test on the normalization; needs an even-parity normalization and
    otherwise falls back to ``"mgi"``) or ``"both"``, which runs the two and
    raises ``AssertionError`` if they disagree.
    """
    if strategy == "mgi":
        return mgi_check(f)
    norm = normalize(f)
    applicable = norm is not None and has_even_parity(norm[0])
    if strategy == "pairs":
        if not applicable:
            return mgi_check(f)
        return check_by_pairs(norm[0])
    if strategy == "both":
        a = mgi_check(f)
        if applicable:
            b = check_by_pairs(norm[0])
            if a.ok != b.ok:
                raise AssertionError(f"matchgate strategies disagree on {f!r}")
        return a
    raise ValueError(f"unknown strategy {strategy!r}")


def generate_from_pairs(n: int, pair_values: Mapping, parity: str = "even", mode: str | None = None):
    """Normalized even-parity matchgate with the given pair values."""
    if parity != "even":
        raise ValueError("only even parity is supported")
    if mode is None:
        mode = "float" if any(isinstance(v, (float, complex)) for v in pair_values.values()) else "exact"
    table = [coerce(0, mode)] * (1 << n)
    table[0] = coerce(1, mode)
    for (a, b), v in pair_values.items():
        a, b = sorted((a, b))
        table[(1 << (n - a)) | (1 << (n - b))] = coerce(v, mode)
    F = Signature._trusted(tuple(table), mode)
    full = list(table)
    expand = pfaffian_expand if n <= 12 else pfaffian_recurrence
    for size in range(4, n + 1, 2):
        for B in combinations(range(1, n + 1), size):
            full[sum(1 << (n - b) for b in B)] = expand(F, B)
    return Signature._trusted(tuple(full), mode)


def quadruple_check(F: Signature) -> Verdict:
    """``F(abcd) = F(ab)F(cd) - F(ac)F(bd) + F(ad)F(bc)`` for all ``a<b<c<d``."""
    n = F.arity
    for a, b, c, d in combinations(range(1, n + 1), 4):
        lhs = F.table[(1 << (n - a)) | (1 << (n - b)) | (1 << (n - c)) | (1 << (n - d))]
        p = lambda x, y: _pair_value(F, x, y)  # noqa: E731
        rhs = p(a, b) * p(c, d) - p(a, c) * p(b, d) + p(a, d) * p(b, c)
        if not eq(lhs, rhs):
            return Verdict(False, (a, b, c, d))
    return Verdict(True)


def permutation_preserves_matchgate(f: Signature, perm) -> bool:
    """Whether ``permute(f, perm)`` is still a matchgate; ``f`` must be one."""
    if not is_matchgate(f):
        raise NotAMatchgate("input is not a matchgate signature")
    norm = normalize(f)
    if norm is None:
        return True
    Fp = permute(norm[0], perm)
    if Fp.arity < 4:
        return True
    return quadruple_check(Fp).ok


__all__ = [
    "Verdict",
    "mgi_check",
    "mgi_check_naive",
    "NormalizationCertificate",
    "normalize",
    "denormalize",
    "xor_shift",
    "IndexExpression",
    "enumerate_pairings",
    "crossing_count",
    "crossings_between",
    "cross_parity",
    "pfaffian_expand",
    "pfaffian_recurrence",
    "has_even_parity",
    "check_by_pairs",
    "is_matchgate",
    "generate_from_pairs",
    "quadruple_check",
    "permutation_preserves_matchgate",
    "Cyclo",
]
