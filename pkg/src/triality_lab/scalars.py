"""Exact scalars: rationals, the quadratic field Q(sqrt 3), and F_2 / F_3.

Rationals are plain :class:`fractions.Fraction` (or ``int``).  The two other
variants are small immutable classes.  Integers coerce into every field;
otherwise arithmetic between variants raises :class:`FieldMismatch`, except
for the embedding of Q into Q(sqrt 3).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import FieldMismatch

__all__ = [
    "QSqrt3",
    "GF",
    "SQRT3",
    "field_of",
    "is_zero",
    "format_scalar",
    "parse_scalar",
    "sign",
]


def _q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise FieldMismatch(f"expected a rational, got {type(x).__name__}")


class QSqrt3:
    """``r + s*sqrt(3)`` with rational ``r`` and ``s``."""

    __slots__ = ("r", "s")

    def __init__(self, r=0, s=0):
        object.__setattr__(self, "r", _q(r))
        object.__setattr__(self, "s", _q(s))

    def __setattr__(self, name, value):
        raise AttributeError("QSqrt3 is immutable")

    @staticmethod
    def _coerce(other):
        if isinstance(other, QSqrt3):
            return other
        if isinstance(other, (int, Fraction)):
            return QSqrt3(other, 0)
        if isinstance(other, GF):
            raise FieldMismatch("cannot mix Q(sqrt3) with a prime field")
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QSqrt3(self.r + o.r, self.s + o.s)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QSqrt3(self.r - o.r, self.s - o.s)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QSqrt3(self.r * o.r + 3 * self.s * o.s, self.r * o.s + self.s * o.r)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.r * self.r - 3 * self.s * self.s

    def conjugate(self) -> QSqrt3:
        return QSqrt3(self.r, -self.s)

    def inverse(self) -> QSqrt3:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt3)")
        return QSqrt3(self.r / n, -self.s / n)

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

    def __neg__(self):
        return QSqrt3(-self.r, -self.s)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = QSqrt3(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, QSqrt3):
            return self.r == other.r and self.s == other.s
        if isinstance(other, (int, Fraction)):
            return self.s == 0 and self.r == other
        return NotImplemented

    def __hash__(self):
        if self.s == 0:
            return hash(self.r)
        return hash((self.r, self.s))

    def __bool__(self):
        return bool(self.r) or bool(self.s)

    def is_rational(self) -> bool:
        return self.s == 0

    def __repr__(self):
        return f"QSqrt3({self.r}, {self.s})"

    def __str__(self):
        return format_scalar(self)


SQRT3 = QSqrt3(0, 1)


class GF:
    """Residue class modulo a small prime (only 2 and 3 are used)."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        if p not in (2, 3):
            raise ValueError(f"unsupported prime field F_{p}")
        if isinstance(value, GF):
            value = value.value
        if not isinstance(value, int):
            raise FieldMismatch(f"cannot build F_{p} element from {type(value).__name__}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "value", value % p)

    def __setattr__(self, name, value):
        raise AttributeError("GF is immutable")

    def _coerce(self, other):
        if isinstance(other, GF):
            if other.p != self.p:
                raise FieldMismatch(f"cannot mix F_{self.p} and F_{other.p}")
            return other
        if isinstance(other, int):
            return GF(other, self.p)
        if isinstance(other, (Fraction, QSqrt3)):
            raise FieldMismatch(f"cannot mix F_{self.p} with characteristic-zero scalars")
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GF(self.value + o.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GF(self.value - o.value, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GF(o.value - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GF(self.value * o.value, self.p)

    __rmul__ = __mul__

    def inverse(self) -> GF:
        if self.value == 0:
            raise ZeroDivisionError(f"inverse of zero in F_{self.p}")
        return GF(pow(self.value, self.p - 2, self.p), self.p)

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

    def __neg__(self):
        return GF(-self.value, self.p)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return GF(pow(self.value, n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, GF):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"GF({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


def reduce_mod(x, p: int) -> GF:
    """Reduce a rational with denominator prime to ``p`` into F_p."""
    x = _q(x)
    if x.denominator % p == 0:
        raise ZeroDivisionError(f"denominator of {x} divisible by {p}")
    return GF(x.numerator, p) / GF(x.denominator, p)


def field_of(x) -> str:
    if isinstance(x, QSqrt3):
        return "Q(sqrt3)"
    if isinstance(x, GF):
        return f"F{x.p}"
    if isinstance(x, (int, Fraction)):
        return "Q"
    raise FieldMismatch(f"not an exact scalar: {x!r}")


def is_zero(x) -> bool:
    return not x


def sign(x) -> int:
    """Real sign of a rational or an element of Q(sqrt3)."""
    if isinstance(x, (int, Fraction)):
        return (x > 0) - (x < 0)
    if isinstance(x, QSqrt3):
        sr = (x.r > 0) - (x.r < 0)
        ss = (x.s > 0) - (x.s < 0)
        if sr == ss or ss == 0:
            return sr
        if sr == 0:
            return ss
        # opposite signs: compare r^2 with 3 s^2
        d = x.r * x.r - 3 * x.s * x.s
        return sr if d > 0 else ss
    raise FieldMismatch(f"no real sign for {x!r}")


def _fmt_q(x: Fraction) -> str:
    x = _q(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_scalar(x) -> str:
    """Canonical text: ``a/b`` for rationals, ``a/b+c/d*r3`` for Q(sqrt3)."""
    if isinstance(x, GF):
        return str(x.value)
    if isinstance(x, QSqrt3):
        if x.s == 0:
            return _fmt_q(x.r)
        s_part = "r3" if x.s == 1 else "-r3" if x.s == -1 else f"{_fmt_q(x.s)}*r3"
        if x.r == 0:
            return s_part
        joiner = "" if s_part.startswith("-") else "+"
        return f"{_fmt_q(x.r)}{joiner}{s_part}"
    return _fmt_q(x)


def parse_scalar(text: str):
    """Inverse of :func:`format_scalar` for the characteristic-zero fields."""
    t = text.replace(" ", "")
    if not t:
        raise ValueError("empty scalar")
    if "r3" not in t:
        return Fraction(t)
    if not t.endswith("r3") or t.count("r3") != 1:
        raise ValueError(f"cannot parse scalar {text!r}")
    head = t[:-2]
    if head.endswith("*"):
        head = head[:-1]
    k = max(head.rfind("+"), head.rfind("-"))
    if k > 0:
        r_text, s_text = head[:k], head[k:]
    else:
        r_text, s_text = "0", head
    if s_text in ("", "+"):
        s = Fraction(1)
    elif s_text == "-":
        s = Fraction(-1)
    else:
        s = Fraction(s_text)
    return QSqrt3(Fraction(r_text), s)


def as_rational(x) -> Fraction:
    if isinstance(x, QSqrt3):
        if x.s != 0:
            raise FieldMismatch(f"{x} is not rational")
        return x.r
    return _q(x)


def is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, QSqrt3, GF)) and not isinstance(x, bool)

