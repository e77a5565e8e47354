"""Scalars: exact elements of Q(zeta_8) or Python complex floats.

Exact values are :class:`Cyclo` instances, ``c0 + c1 w + c2 w^2 + c3 w^3``
with ``w = exp(2 pi i / 8)`` and ``w^4 = -1``.  Float values are plain
``complex``.  Plain ``int`` and ``Fraction`` are accepted wherever a scalar
is expected and are promoted to the mode of the other operand.
"""
from __future__ import annotations

import cmath
import math
import re
from fractions import Fraction
from numbers import Rational

from .config import get_config
from .errors import MixedModes, ParseError

_W_FLOAT = cmath.exp(1j * math.pi / 4)
_FLOAT_BASIS = (1 + 0j, _W_FLOAT, 1j, 1j * _W_FLOAT)


class Cyclo:
    """Element of Q(zeta_8) stored as integer numerators over a common denominator."""

    __slots__ = ("_num", "_den", "_hash")

    def __init__(self, c0=0, c1=0, c2=0, c3=0):
        coeffs = [Fraction(c) for c in (c0, c1, c2, c3)]
        den = 1
        for c in coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        self._set(tuple(int(c * den) for c in coeffs), den)

    @classmethod
    def _raw(cls, num, den) -> Cyclo:
        obj = cls.__new__(cls)
        obj._set(num, den)
        return obj

    def _set(self, num, den):
        g = den
        for x in num:
            g = math.gcd(g, x)
        if den < 0:
            g = -g
        if g != 1:
            num = tuple(x // g for x in num)
            den //= g
        self._num = num
        self._den = den
        self._hash = None

    @property
    def coeffs(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return tuple(Fraction(x, self._den) for x in self._num)

    @property
    def numerators(self) -> tuple[int, int, int, int]:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def conj(self) -> Cyclo:
        return self.galois(7)

    def galois(self, k: int) -> Cyclo:
        """Apply the automorphism w -> w^k (k odd)."""
        out = [0, 0, 0, 0]
        for i, x in enumerate(self._num):
            e = (i * k) % 8
            if e >= 4:
                out[e - 4] -= x
            else:
                out[e] += x
        return Cyclo._raw(tuple(out), self._den)

    def __complex__(self) -> complex:
        a0, a1, a2, a3 = self._num
        b = _FLOAT_BASIS
        return (a0 * b[0] + a1 * b[1] + a2 * b[2] + a3 * b[3]) / self._den

    @staticmethod
    def _coerce(other):
        if isinstance(other, Cyclo):
            return other
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            q = Fraction(other)
            return Cyclo._raw((q.numerator, 0, 0, 0), q.denominator)
        if isinstance(other, bool):
            return Cyclo._raw((int(other), 0, 0, 0), 1)
        if isinstance(other, (float, complex)):
            raise MixedModes("cannot combine an exact scalar with a float scalar")
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d1, d2 = self._den, o._den
        return Cyclo._raw(tuple(a * d2 + b * d1 for a, b in zip(self._num, o._num)), d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return Cyclo._raw(tuple(-a for a in self._num), self._den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a0, a1, a2, a3 = self._num
        b0, b1, b2, b3 = o._num
        c0 = a0 * b0 - a1 * b3 - a2 * b2 - a3 * b1
        c1 = a0 * b1 + a1 * b0 - a2 * b3 - a3 * b2
        c2 = a0 * b2 + a1 * b1 + a2 * b0 - a3 * b3
        c3 = a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0
        return Cyclo._raw((c0, c1, c2, c3), self._den * o._den)

    __rmul__ = __mul__

    def inverse(self) -> Cyclo:
        if self.is_zero():
            raise ZeroDivisionError("division by zero in Q(zeta_8)")
        # The product over the other three conjugates is the adjugate; the
        # full product is the (rational) field norm.
        adj = self.galois(3) * self.galois(5) * self.galois(7)
        norm = self * adj
        n = Fraction(norm._num[0], norm._den)
        return adj * (1 / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (float, complex)):
            return False
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._num == o._num and self._den == o._den

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self._num[0], self._den))
            else:
                self._hash = hash((self._num, self._den))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"Cyclo({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


ZERO = Cyclo._raw((0, 0, 0, 0), 1)
ONE = Cyclo._raw((1, 0, 0, 0), 1)
W = Cyclo._raw((0, 1, 0, 0), 1)
I = Cyclo._raw((0, 0, 1, 0), 1)
SQRT2 = Cyclo._raw((0, 1, 0, -1), 1)


# ---------------------------------------------------------------------------
# mode helpers


def is_exact(x) -> bool:
    return isinstance(x, Cyclo) or (isinstance(x, (int, Rational)) and not isinstance(x, float))


def coerce(x, mode: str | None = None):
    """Promote ``x`` to a Cyclo (exact) or complex (float) scalar."""
    if mode is None:
        mode = "float" if isinstance(x, (float, complex)) else "exact"
    if mode == "exact":
        if isinstance(x, Cyclo):
            return x
        if isinstance(x, (float, complex)):
            raise MixedModes(f"float value {x!r} where an exact scalar is required")
        return Cyclo._coerce(x)
    if isinstance(x, Cyclo):
        return complex(x)
    return complex(x)


def mode_of(x) -> str:
    return "float" if isinstance(x, (float, complex)) else "exact"


def to_complex(x) -> complex:
    return complex(x)


def is_zero(x, eps: float | None = None) -> bool:
    if isinstance(x, Cyclo):
        return x.is_zero()
    if isinstance(x, (float, complex)):
        return abs(x) <= (get_config().eps if eps is None else eps)
    return x == 0


def eq(a, b, eps: float | None = None) -> bool:
    if isinstance(a, (float, complex)) or isinstance(b, (float, complex)):
        if isinstance(a, Cyclo):
            a = complex(a)
        if isinstance(b, Cyclo):
            b = complex(b)
        return abs(a - b) <= (get_config().eps if eps is None else eps)
    return a == b


def field_ops(a, b, op: str):
    """Binary field operation ``op`` in {add, sub, mul, div}."""
    if mode_of(a) != mode_of(b) and (isinstance(a, Cyclo) or isinstance(b, Cyclo)):
        raise MixedModes("operands have different modes")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if is_zero(b):
            raise ZeroDivisionError("division by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def fourth_power_is_unit(a) -> str:
    """Classify ``a**4`` as ``'one'``, ``'minus_one'`` or ``'other_or_zero'``."""
    p = a * a
    p = p * p
    if eq(p, 1):
        return "one"
    if eq(p, -1):
        return "minus_one"
    return "other_or_zero"


# ---------------------------------------------------------------------------
# square roots


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _gauss_sqrt(p: Fraction, q: Fraction):
    """Square root of p + q i inside Q(i), or None."""
    if q == 0:
        if p >= 0:
            r = _rational_sqrt(p)
            return None if r is None else (r, Fraction(0))
        r = _rational_sqrt(-p)
        return None if r is None else (Fraction(0), r)
    m = _rational_sqrt(p * p + q * q)
    if m is None:
        return None
    a = _rational_sqrt((p + m) / 2)
    if a is None or a == 0:
        return None
    return a, q / (2 * a)


def _gmul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _gdiv(x, y):
    n = y[0] * y[0] + y[1] * y[1]
    return ((x[0] * y[0] + x[1] * y[1]) / n, (x[1] * y[0] - x[0] * y[1]) / n)


def _from_tower(u, v) -> Cyclo:
    # u + v*sqrt(2) with u, v in Q(i); sqrt(2) = w - w^3, i = w^2
    return Cyclo(u[0], v[0] + v[1], u[1], v[1] - v[0])


def _canonical_sign(s):
    z = complex(s)
    tol = 1e-12 * max(1.0, abs(z))
    if z.real < -tol or (abs(z.real) <= tol and z.imag < 0):
        return -s
    return s


def _exact_sqrt(a: Cyclo) -> Cyclo | None:
    if a.is_zero():
        return ZERO
    c0, c1, c2, c3 = a.coeffs
    x = (c0, c2)
    y = ((c1 - c3) / 2, (c1 + c3) / 2)
    candidates = []
    if y == (0, 0):
        u = _gauss_sqrt(*x)
        if u is not None:
            candidates.append((u, (Fraction(0), Fraction(0))))
        v = _gauss_sqrt(x[0] / 2, x[1] / 2)
        if v is not None:
            candidates.append(((Fraction(0), Fraction(0)), v))
    else:
        xx = _gmul(x, x)
        yy = _gmul(y, y)
        disc = (xx[0] - 2 * yy[0], xx[1] - 2 * yy[1])
        d = _gauss_sqrt(*disc)
        if d is not None:
            for sgn in (1, -1):
                u2 = ((x[0] + sgn * d[0]) / 2, (x[1] + sgn * d[1]) / 2)
                u = _gauss_sqrt(*u2)
                if u is None or u == (0, 0):
                    continue
                v = _gdiv(y, (2 * u[0], 2 * u[1]))
                candidates.append((u, v))
    for u, v in candidates:
        s = _from_tower(u, v)
        if s * s == a:
            return _canonical_sign(s)
    return None


def sqrt_in_field(a):
    """A square root of ``a`` in the active field, or None if none exists.

    Exact roots are complete for Q(zeta_8): write the field as Q(i)(sqrt 2)
    and solve the resulting quadratic system over Q(i).  Among the two roots
    the one with positive real part (or positive imaginary part) is returned.
    """
    if isinstance(a, (float, complex)):
        return cmath.sqrt(a)
    return _exact_sqrt(coerce(a, "exact"))


# ---------------------------------------------------------------------------
# text format

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?)|(?P<op>[-+*/^()])|(?P<atom>[wi]))"
)


def _tokens(text: str):
    pos = 0
    out = []
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        out.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


def parse_scalar(text: str, mode: str | None = None):
    """Parse ``"1/2+3i"``, ``"w-w^3"``, ``"-0.5+2i"`` and similar.

    Terms are ``[coefficient][*][w|i][^k]`` joined by ``+``/``-``; the
    coefficient is an integer, ``p/q``, or a decimal.  ``i`` means ``w^2``.
    """
    if mode is None:
        mode = get_config().mode
    toks = _tokens(text)
    if toks[0][0] == "end":
        raise ParseError("empty scalar", 0)
    coeffs = [Fraction(0)] * 4
    fcoeffs = [0j] * 4
    k = 0

    def peek():
        return toks[k]

    def take():
        nonlocal k
        t = toks[k]
        k += 1
        return t

    def number():
        kind, val, pos = take()
        if kind != "num":
            raise ParseError("expected a number", pos)
        return val

    first = True
    while True:
        sign = 1
        kind, val, pos = peek()
        if kind == "op" and val in "+-":
            take()
            sign = -1 if val == "-" else 1
        elif not first:
            raise ParseError("expected '+' or '-'", pos)
        first = False
        coef_text = None
        kind, val, pos = peek()
        if kind == "num":
            coef_text = number()
            if peek()[0] == "op" and peek()[1] == "/":
                take()
                coef_text = (coef_text, number())
            if peek()[0] == "op" and peek()[1] == "*":
                take()
                if peek()[0] != "atom":
                    raise ParseError("expected 'w' or 'i' after '*'", peek()[2])
        exponent = 0
        kind, val, pos = peek()
        if kind == "atom":
            take()
            power = 1
            if peek()[0] == "op" and peek()[1] == "^":
                take()
                etext = number()
                if not etext.isdigit():
                    raise ParseError("exponent must be a non-negative integer", pos)
                power = int(etext)
                if power > 3:
                    raise ParseError("exponent must be between 0 and 3", pos)
            exponent = power * (2 if val == "i" else 1)
        elif coef_text is None:
            raise ParseError("expected a term", pos)
        if coef_text is None:
            coef = Fraction(1)
        elif isinstance(coef_text, tuple):
            if Fraction(coef_text[1]) == 0:
                raise ParseError("zero denominator", pos)
            coef = Fraction(coef_text[0]) / Fraction(coef_text[1])
        else:
            coef = Fraction(coef_text)
        e = exponent % 8
        if e >= 4:
            sign, e = -sign, e - 4
        coeffs[e] += sign * coef
        if mode == "float":
            fcoeffs[e] += sign * (float(coef) if coef_text is not None else 1.0)
        if peek()[0] == "end":
            break
    if mode == "float":
        return sum(c * b for c, b in zip(fcoeffs, _FLOAT_BASIS))
    return Cyclo(*coeffs)


def _fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _fmt_float(x: float) -> str:
    s = repr(float(x))
    return s[:-2] if s.endswith(".0") else s


def format_scalar(s) -> str:
    """Canonical text form; ``parse_scalar(format_scalar(s)) == s``."""
    if isinstance(s, (float, complex)):
        z = complex(s)
        if z.imag == 0:
            return _fmt_float(z.real)
        im = _fmt_float(abs(z.imag))
        im_part = "i" if im == "1" else f"{im}i"
        if z.real == 0:
            return ("-" if z.imag < 0 else "") + im_part
        return f"{_fmt_float(z.real)}{'-' if z.imag < 0 else '+'}{im_part}"
    s = coerce(s, "exact")
    parts = []
    for e, c in enumerate(s.coeffs):
        if c == 0:
            continue
        atom = ["", "w", "w^2", "w^3"][e]
        mag = abs(c)
        body = atom if (mag == 1 and atom) else _fmt_rational(mag) + atom
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += sign + body
    return out
