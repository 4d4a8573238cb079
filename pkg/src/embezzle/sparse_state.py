"""Finitely supported vectors over composite basis labels."""
from __future__ import annotations

from typing import Dict, Iterable, Iterator, Mapping, Tuple

from .basis import CompositeLabel
from .exact_scalar import EPS_F, QSqrt2, Scalar, conj

EXACT = "exact"
FLOAT = "float"

SUPPORT_CAP = 10**6
# float amplitudes at or below this magnitude are rounding residue of cancellations
FLOAT_PRUNE = 1e-15


class StateMismatch(ValueError):
    """Two states with different scalar modes or register arity were combined."""


class SupportOverflow(RuntimeError):
    pass


def mode_of(v: Scalar) -> str:
    return EXACT if isinstance(v, QSqrt2) else FLOAT


def _to_mode(v, mode: str):
    if mode == EXACT:
        if isinstance(v, (complex, float)):
            raise StateMismatch("float amplitude in an exact-mode state")
        return QSqrt2.coerce(v)
    return complex(v)


class SparseState:
    """Immutable map ``CompositeLabel -> amplitude`` with no stored zeros.

    ``mode`` is ``"exact"`` (amplitudes in Q(sqrt 2)) or ``"float"`` (complex).
    Every label carries ``arity`` register digits.  States are never
    normalised implicitly.
    """

    __slots__ = ("_terms", "mode", "arity")

    def __init__(self, terms: Mapping[CompositeLabel, Scalar] | Iterable = (), *,
                 mode: str = EXACT, arity: int = 0, cap: int = SUPPORT_CAP):
        if mode not in (EXACT, FLOAT):
            raise ValueError(f"unknown mode {mode!r}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: Dict[CompositeLabel, Scalar] = {}
        for label, amp in items:
            if len(label.regs) != arity:
                raise StateMismatch(f"label {label!r} has arity {len(label.regs)}, expected {arity}")
            amp = _to_mode(amp, mode)
            prev = acc.get(label)
            acc[label] = amp if prev is None else prev + amp
        if mode == EXACT:
            self._terms = {k: v for k, v in acc.items() if v}
        else:
            self._terms = {k: v for k, v in acc.items() if abs(v) > FLOAT_PRUNE}
        if len(self._terms) > cap:
            raise SupportOverflow(f"state support {len(self._terms)} exceeds cap {cap}")
        self.mode = mode
        self.arity = arity

    @classmethod
    def basis(cls, label: CompositeLabel, mode: str = EXACT) -> "SparseState":
        one = QSqrt2(1) if mode == EXACT else 1.0 + 0j
        return cls({label: one}, mode=mode, arity=len(label.regs))

    @classmethod
    def zero(cls, mode: str = EXACT, arity: int = 0) -> "SparseState":
        return cls({}, mode=mode, arity=arity)

    def __iter__(self) -> Iterator[Tuple[CompositeLabel, Scalar]]:
        for label in sorted(self._terms):
            yield label, self._terms[label]

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __getitem__(self, label):
        if self.mode == EXACT:
            return self._terms.get(label, QSqrt2(0))
        return self._terms.get(label, 0j)

    def labels(self):
        return sorted(self._terms)

    def _check(self, other: "SparseState"):
        if self.mode != other.mode:
            raise StateMismatch(f"mode {self.mode} vs {other.mode}")
        if self.arity != other.arity:
            raise StateMismatch(f"arity {self.arity} vs {other.arity}")

    def __add__(self, other: "SparseState") -> "SparseState":
        self._check(other)
        return SparseState(list(self._terms.items()) + list(other._terms.items()),
                           mode=self.mode, arity=self.arity)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SparseState":
        c = _to_mode(c, self.mode)
        return SparseState({k: c * v for k, v in self._terms.items()},
                           mode=self.mode, arity=self.arity)

    def __rmul__(self, c):
        return self.scale(c)

    def inner(self, other: "SparseState") -> Scalar:
        """``sum conj(self[k]) * other[k]`` over shared labels."""
        self._check(other)
        small, big = (self._terms, other._terms)
        acc = QSqrt2(0) if self.mode == EXACT else 0j
        if len(small) > len(big):
            for k, v in big.items():
                u = small.get(k)
                if u is not None:
                    acc = acc + conj(u) * v
        else:
            for k, u in small.items():
                v = big.get(k)
                if v is not None:
                    acc = acc + conj(u) * v
        return acc

    def norm2(self) -> Scalar:
        n = self.inner(self)
        return n if self.mode == EXACT else n.real

    def equal(self, other: "SparseState", tol: float = EPS_F) -> bool:
        self._check(other)
        if self.mode == EXACT:
            return self._terms == other._terms
        return self.distance(other) < tol

    def distance(self, other: "SparseState") -> float:
        """Sup-norm of the amplitude difference."""
        self._check(other)
        keys = set(self._terms) | set(other._terms)
        return max((abs(complex(self[k]) - complex(other[k])) for k in keys), default=0.0)

    def __eq__(self, other):
        if not isinstance(other, SparseState):
            return NotImplemented
        return self.mode == other.mode and self.arity == other.arity and self.equal(other)

    __hash__ = None

    def to_float(self) -> "SparseState":
        if self.mode == FLOAT:
            return self
        return SparseState({k: complex(v) for k, v in self._terms.items()},
                           mode=FLOAT, arity=self.arity)

    def map_labels(self, fn, arity: int | None = None) -> "SparseState":
        """Relabel every term (a basis permutation or embedding)."""
        return SparseState([(fn(k), v) for k, v in self._terms.items()], mode=self.mode,
                           arity=self.arity if arity is None else arity)

    def project(self, index: int, value: int) -> "SparseState":
        """Keep the terms whose register ``index`` equals ``value``."""
        return SparseState({k: v for k, v in self._terms.items() if k.regs[index] == value},
                           mode=self.mode, arity=self.arity)

    def drop_registers(self, keep: Tuple[int, ...]) -> "SparseState":
        """Relabel onto the listed registers; caller guarantees no collisions matter."""
        return SparseState([(CompositeLabel(tuple(k.regs[i] for i in keep), k.res), v)
                            for k, v in self._terms.items()], mode=self.mode, arity=len(keep))

    def __repr__(self):
        body = " + ".join(f"{v}{k!r}" for k, v in self)
        return f"SparseState({body or '0'})"


def add(s: SparseState, t: SparseState) -> SparseState:
    return s + t


def scale(c, s: SparseState) -> SparseState:
    return s.scale(c)


def inner(s: SparseState, t: SparseState):
    return s.inner(t)


def equal(s: SparseState, t: SparseState, tol: float = EPS_F) -> bool:
    return s.equal(t, tol)


def tensor_registers(regs: Tuple[int, ...], psi: SparseState) -> SparseState:
    """``|regs> (x) psi`` for a resource-only state ``psi``."""
    if psi.arity != 0:
        raise StateMismatch("expected a resource-only state")
    return SparseState([(CompositeLabel(tuple(regs), k.res), v) for k, v in psi.items()],
                       mode=psi.mode, arity=len(regs))
