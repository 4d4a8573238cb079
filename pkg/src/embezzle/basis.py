"""Radix-d rationals (dyadic for d = 2) and the labels of the resource basis.

A resource basis vector is ``|r, x, y>`` where ``r`` is an integer offset of
Alice's logical qubits and ``x``, ``y`` are nonnegative numbers with finitely
many nonzero base-d digits on either side of the point.  Digit ``j`` of ``x``
is ``floor(x * d**-j) mod d``.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Tuple


@functools.total_ordering
class Adic:
    """Nonnegative number ``m / base**e`` with finitely many base-digits.

    Canonical form: ``m`` not divisible by ``base`` (or ``m == e == 0``), so
    equal values always share one encoding.  ``e`` may be negative.
    """

    __slots__ = ("m", "e", "base")

    def __init__(self, m: int, e: int = 0, base: int = 2):
        if m < 0:
            raise ValueError(f"radix-{base} labels are nonnegative; got m={m}")
        if base < 2:
            raise ValueError("base must be at least 2")
        if m == 0:
            e = 0
        else:
            while m % base == 0:
                m //= base
                e -= 1
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "e", e)
        object.__setattr__(self, "base", base)

    def __setattr__(self, name, value):
        raise AttributeError("Adic is immutable")

    @classmethod
    def from_value(cls, value, base: int = 2) -> "Adic":
        q = Fraction(value)
        if q < 0:
            raise ValueError(f"negative label value {q}")
        den, e = q.denominator, 0
        while den % base == 0:
            den //= base
            e += 1
        if den != 1:
            raise ValueError(f"{q} is not a radix-{base} rational")
        return cls(q.numerator * base**e // q.denominator, e, base)

    @property
    def value(self) -> Fraction:
        if self.e >= 0:
            return Fraction(self.m, self.base**self.e)
        return Fraction(self.m * self.base ** (-self.e))

    def digit(self, j: int) -> int:
        """``floor(x * base**-j) mod base``."""
        shift = self.e + j
        if shift <= 0:
            return (self.m * self.base ** (-shift)) % self.base
        return (self.m // self.base**shift) % self.base

    def with_digit(self, j: int, v: int) -> "Adic":
        """Copy with digit ``j`` replaced by ``v``; the value changes by a multiple of base**j."""
        if not 0 <= v < self.base:
            raise ValueError(f"digit {v} out of range for base {self.base}")
        delta = v - self.digit(j)
        if delta == 0:
            return self
        top = max(self.e, -j)
        m = self.m * self.base ** (top - self.e) + delta * self.base ** (j + top)
        return Adic(m, top, self.base)

    def times_base(self) -> "Adic":
        if self.m == 0:
            return self
        return Adic(self.m, self.e - 1, self.base)

    def div_base(self) -> "Adic":
        if self.m == 0:
            return self
        return Adic(self.m, self.e + 1, self.base)

    def digit_range(self) -> Tuple[int, int]:
        """(lowest, highest) positions that can hold a nonzero digit; (0, -1) for zero."""
        if self.m == 0:
            return (0, -1)
        hi = self.m.bit_length() if self.base == 2 else len(_to_digits(self.m, self.base))
        return (-self.e, hi - 1 - self.e)

    def digits_str(self) -> str:
        """Positional string with a point, e.g. ``"110.01"`` (digits > 9 unsupported)."""
        lo, hi = self.digit_range()
        lo, hi = min(lo, 0), max(hi, 0)
        whole = "".join(str(self.digit(j)) for j in range(hi, -1, -1))
        frac = "".join(str(self.digit(j)) for j in range(-1, lo - 1, -1))
        return f"{whole}.{frac}" if frac else whole

    @classmethod
    def parse_digits(cls, text: str, base: int = 2) -> "Adic":
        whole, _, frac = text.strip().partition(".")
        m = 0
        for ch in whole + frac:
            d = int(ch)
            if d >= base:
                raise ValueError(f"digit {ch!r} invalid in base {base}")
            m = m * base + d
        return cls(m, len(frac), base)

    def to_json(self) -> str:
        return f"{self.m}/{self.base}^{self.e}"

    @classmethod
    def from_json(cls, text: str) -> "Adic":
        try:
            m, rest = text.split("/")
            base, e = rest.split("^")
            return cls(int(m), int(e), int(base))
        except ValueError as exc:
            raise ValueError(f"malformed radix label {text!r}") from exc

    def _key(self):
        return (self.base, self.value)

    def __eq__(self, other):
        if not isinstance(other, Adic):
            return NotImplemented
        return self.m == other.m and self.e == other.e and self.base == other.base

    def __lt__(self, other):
        if not isinstance(other, Adic):
            return NotImplemented
        return self._key() < other._key()

    def __hash__(self):
        return hash((self.m, self.e, self.base))

    def __repr__(self):
        if self.base == 2:
            return f"Dyadic({self.digits_str()})"
        return f"Adic({self.digits_str()}, base={self.base})"


def _to_digits(m: int, base: int) -> list:
    out = []
    while m:
        m, d = divmod(m, base)
        out.append(d)
    return out


Dyadic = Adic


def dyadic(value) -> Adic:
    """Base-2 label from an int, Fraction or ``"p/q"`` string."""
    return Adic.from_value(Fraction(value), 2)


def bit(x: Adic, j: int) -> int:
    return x.digit(j)


def set_bit(x: Adic, j: int, v: int) -> Adic:
    return x.with_digit(j, v)


@dataclass(frozen=True, order=True)
class ResourceLabel:
    """Basis vector ``|r, x, y>`` of the resource space."""

    r: int
    x: Adic
    y: Adic

    @classmethod
    def of(cls, r: int, x, y, base: int = 2) -> "ResourceLabel":
        cx = x if isinstance(x, Adic) else Adic.from_value(Fraction(x), base)
        cy = y if isinstance(y, Adic) else Adic.from_value(Fraction(y), base)
        return cls(r, cx, cy)

    def __repr__(self):
        return f"|{self.r}, {self.x.digits_str()}, {self.y.digits_str()}>"


@dataclass(frozen=True, order=True)
class CompositeLabel:
    """Register digits followed by a resource label.

    ``res`` is a :class:`ResourceLabel` for the infinite construction, or a tuple
    of integers (a multi-index) for finite-dimensional resources.
    """

    regs: Tuple[int, ...]
    res: Hashable = field(default=())

    def with_reg(self, index: int, value: int) -> "CompositeLabel":
        regs = list(self.regs)
        regs[index] = value
        return CompositeLabel(tuple(regs), self.res)

    def with_res(self, res) -> "CompositeLabel":
        return CompositeLabel(self.regs, res)

    def __repr__(self):
        regs = "".join(str(v) for v in self.regs)
        return f"[{regs}]{self.res!r}" if regs else repr(self.res)
