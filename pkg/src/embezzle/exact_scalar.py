"""Exact arithmetic in the real quadratic field Q(sqrt 2), plus float helpers.

Amplitudes of the explicit protocol only ever involve 0, +-1, +-1/sqrt2 and
+-1/2, so every exact state lives in Q(sqrt 2).  Float-mode states use plain
Python ``complex`` values.
"""
from __future__ import annotations

import math
import numbers
from fractions import Fraction
from typing import Union

EPS_F = 1e-9

SQRT2_FLOAT = math.sqrt(2.0)


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, numbers.Rational)):
        return Fraction(v)
    if isinstance(v, str):
        return parse_rational(v)
    raise TypeError(f"cannot coerce {v!r} to an exact rational")


def format_rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip().replace("−", "-")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed rational {text!r}") from exc


class QSqrt2:
    """The real number ``a + b*sqrt(2)`` with rational ``a`` and ``b``.

    Instances are immutable and hashable.  Because sqrt(2) is irrational the
    pair ``(a, b)`` is unique, so ``==`` is exact structural equality.
    """

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", _frac(a))
        object.__setattr__(self, "b", _frac(b))

    def __setattr__(self, name, value):
        raise AttributeError("QSqrt2 is immutable")

    @staticmethod
    def _make(a: Fraction, b: Fraction) -> "QSqrt2":
        # skips coercion; callers pass Fractions
        q = object.__new__(QSqrt2)
        object.__setattr__(q, "a", a)
        object.__setattr__(q, "b", b)
        return q

    @classmethod
    def coerce(cls, v) -> "QSqrt2":
        if isinstance(v, QSqrt2):
            return v
        return cls(v, 0)

    # arithmetic
    def __add__(self, other):
        if isinstance(other, (complex, float)):
            return complex(self) + other
        o = QSqrt2.coerce(other)
        return QSqrt2._make(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt2._make(-self.a, -self.b)

    def __sub__(self, other):
        if isinstance(other, (complex, float)):
            return complex(self) - other
        return self + (-QSqrt2.coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (complex, float)):
            return complex(self) * other
        o = QSqrt2.coerce(other)
        # most amplitudes are purely rational or purely rational * sqrt2
        if not self.b:
            return QSqrt2._make(self.a * o.a, self.a * o.b)
        if not o.b:
            return QSqrt2._make(self.a * o.a, self.b * o.a)
        if not self.a:
            return QSqrt2._make(2 * self.b * o.b, self.b * o.a)
        if not o.a:
            return QSqrt2._make(2 * self.b * o.b, self.a * o.b)
        return QSqrt2._make(self.a * o.a + 2 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """Field norm ``a^2 - 2 b^2``; zero only for the zero element."""
        return self.a * self.a - 2 * self.b * self.b

    def conjugate_field(self) -> "QSqrt2":
        """Galois conjugate ``a - b*sqrt 2`` (not complex conjugation)."""
        return QSqrt2(self.a, -self.b)

    def conjugate(self) -> "QSqrt2":
        # real numbers: complex conjugation is the identity
        return self

    def inverse(self) -> "QSqrt2":
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(sqrt 2)")
        n = self.norm()
        return QSqrt2(self.a / n, -self.b / n)

    def __truediv__(self, other):
        if isinstance(other, (complex, float)):
            return complex(self) / other
        return self * QSqrt2.coerce(other).inverse()

    def __rtruediv__(self, other):
        return QSqrt2.coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out, base = QSqrt2(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # comparisons
    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, QSqrt2):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b))

    def sign(self) -> int:
        """Exact sign of the real number."""
        a, b = self.a, self.b
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sa == sb or sb == 0:
            return sa
        if sa == 0:
            return sb
        # opposite signs: compare a^2 with 2 b^2
        return sa if a * a > 2 * b * b else sb

    def __lt__(self, other):
        return (self - QSqrt2.coerce(other)).sign() < 0

    def __le__(self, other):
        return (self - QSqrt2.coerce(other)).sign() <= 0

    def __gt__(self, other):
        return (self - QSqrt2.coerce(other)).sign() > 0

    def __ge__(self, other):
        return (self - QSqrt2.coerce(other)).sign() >= 0

    # conversions
    def __float__(self):
        return float(self.a) + float(self.b) * SQRT2_FLOAT

    def __complex__(self):
        return complex(float(self), 0.0)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __repr__(self):
        return f"QSqrt2({format_rational(self.a)}, {format_rational(self.b)})"

    def __str__(self):
        if not self.b:
            return str(self.a)
        if not self.a:
            return f"{self.b}*sqrt2"
        return f"{self.a}{'+' if self.b > 0 else '-'}{abs(self.b)}*sqrt2"

    def to_json(self) -> dict:
        return {"a": format_rational(self.a), "b": format_rational(self.b)}

    @classmethod
    def from_json(cls, obj: dict) -> "QSqrt2":
        return cls(parse_rational(obj["a"]), parse_rational(obj["b"]))


Scalar = Union[QSqrt2, complex]

# names used for the scalar types elsewhere
Rational = Fraction
ExactScalar = QSqrt2
FloatScalar = complex

ZERO = QSqrt2(0)
ONE = QSqrt2(1)
HALF = QSqrt2(Fraction(1, 2))
SQRT2 = QSqrt2(0, 1)
INV_SQRT2 = QSqrt2(0, Fraction(1, 2))


def exact_add(x: QSqrt2, y: QSqrt2) -> QSqrt2:
    return x + y


def exact_mul(x: QSqrt2, y: QSqrt2) -> QSqrt2:
    return x * y


def exact_neg(x: QSqrt2) -> QSqrt2:
    return -x


def exact_inv(x: QSqrt2) -> QSqrt2:
    return x.inverse()


def exact_to_float(x: QSqrt2) -> complex:
    return complex(x)


def conj(v: Scalar) -> Scalar:
    return v.conjugate()


def is_zero(v: Scalar, tol: float = 0.0) -> bool:
    if isinstance(v, QSqrt2):
        return not v
    return abs(v) <= tol


def scalar_to_json(v: Scalar) -> dict:
    if isinstance(v, QSqrt2):
        return v.to_json()
    v = complex(v)
    return {"re": v.real, "im": v.imag}


def scalar_from_json(obj: dict) -> Scalar:
    if "a" in obj:
        return QSqrt2.from_json(obj)
    return complex(float(obj["re"]), float(obj.get("im", 0.0)))
