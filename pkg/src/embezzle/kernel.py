"""Linear operators given lazily by their action on basis keys.

A :class:`Kernel` maps one basis key to a short list of ``(key, amplitude)``
pairs and carries its adjoint in the same form.  Keys are whatever indexes
the space the operator acts on:

* resource kernels act on resource labels,
* local kernels act on ``(t, res)`` pairs (one register digit and a resource
  label), which is how a party's unitary on ``C^d (x) R`` is written,
* lifted kernels act on :class:`~embezzle.basis.CompositeLabel` and can be
  applied to a :class:`~embezzle.sparse_state.SparseState`.

Nothing is ever materialised as a matrix.
"""
from __future__ import annotations

from typing import Callable, Dict, Hashable, Iterable, List, Tuple

from .basis import CompositeLabel
from .sparse_state import SparseState

Terms = List[Tuple[Hashable, object]]
KeyMap = Callable[[Hashable], Terms]


def _accumulate(pairs: Iterable[Tuple[Hashable, object]]) -> Dict[Hashable, object]:
    acc: Dict[Hashable, object] = {}
    for k, v in pairs:
        prev = acc.get(k)
        acc[k] = v if prev is None else prev + v
    return acc


def apply_terms(fn: KeyMap, terms: Iterable[Tuple[Hashable, object]]) -> Dict[Hashable, object]:
    """Apply ``fn`` linearly to a weighted list of keys, cancelling zeros."""
    out: Dict[Hashable, object] = {}
    for k, amp in terms:
        for k2, a2 in fn(k):
            prev = out.get(k2)
            v = a2 * amp
            out[k2] = v if prev is None else prev + v
    return {k: v for k, v in out.items() if v}


class Kernel:
    """Operator defined by ``forward(key)`` and ``adjoint(key)``."""

    __slots__ = ("forward", "adjoint", "name")

    def __init__(self, forward: KeyMap, adjoint: KeyMap, name: str = "K"):
        self.forward = forward
        self.adjoint = adjoint
        self.name = name

    @property
    def H(self) -> "Kernel":
        return Kernel(self.adjoint, self.forward, _dagger(self.name))

    def __matmul__(self, other: "Kernel") -> "Kernel":
        """``self @ other`` applies ``other`` first."""
        f1, f2 = other.forward, self.forward
        a1, a2 = self.adjoint, other.adjoint

        def fwd(key):
            return list(apply_terms(f2, f1(key)).items())

        def adj(key):
            return list(apply_terms(a2, a1(key)).items())

        return Kernel(fwd, adj, f"{self.name}{other.name}")

    def __pow__(self, n: int) -> "Kernel":
        if n < 0:
            return self.H ** (-n)
        out = identity()
        for _ in range(n):
            out = self @ out
        return out

    def scaled(self, c) -> "Kernel":
        f, a = self.forward, self.adjoint
        cc = c.conjugate()
        return Kernel(lambda k: [(k2, c * v) for k2, v in f(k)],
                      lambda k: [(k2, cc * v) for k2, v in a(k)], f"({c}){self.name}")

    def apply_key(self, key) -> Dict[Hashable, object]:
        return apply_terms(self.forward, [(key, 1)])

    def __call__(self, state: SparseState) -> SparseState:
        out = apply_terms(self.forward, state.items())
        return SparseState(out, mode=state.mode, arity=state.arity)

    def __repr__(self):
        return f"Kernel({self.name})"


def _dagger(name: str) -> str:
    return name[:-1] if name.endswith("*") else name + "*"


def identity(name: str = "I") -> Kernel:
    return Kernel(lambda k: [(k, 1)], lambda k: [(k, 1)], name)


def zero_kernel(name: str = "0") -> Kernel:
    return Kernel(lambda k: [], lambda k: [], name)


def permutation(fwd_map: Callable, inv_map: Callable, name: str = "P") -> Kernel:
    """Kernel of a basis bijection given with its inverse."""
    return Kernel(lambda k: [(fwd_map(k), 1)], lambda k: [(inv_map(k), 1)], name)


# lifting between key spaces

def local_from_resource(k: Kernel) -> Kernel:
    """Resource kernel viewed as acting on ``(t, res)`` keys, identity on ``t``."""
    f, a = k.forward, k.adjoint
    return Kernel(lambda key: [((key[0], r2), v) for r2, v in f(key[1])],
                  lambda key: [((key[0], r2), v) for r2, v in a(key[1])], k.name)


def on_resource(k: Kernel) -> Kernel:
    """Resource kernel acting on the ``res`` field of composite labels."""
    f, a = k.forward, k.adjoint
    return Kernel(lambda lab: [(lab.with_res(r2), v) for r2, v in f(lab.res)],
                  lambda lab: [(lab.with_res(r2), v) for r2, v in a(lab.res)], k.name)


def on_register(k: Kernel, index: int) -> Kernel:
    """Local kernel acting on register ``index`` and the resource of composite labels."""
    f, a = k.forward, k.adjoint

    def lift(fn):
        def g(lab: CompositeLabel):
            return [(CompositeLabel(lab.regs[:index] + (t2,) + lab.regs[index + 1:], r2), v)
                    for (t2, r2), v in fn((lab.regs[index], lab.res))]
        return g

    return Kernel(lift(f), lift(a), f"{k.name}[{index}]")


def on_registers(k: Kernel, indices: Tuple[int, ...]) -> Kernel:
    """Kernel on tuples of register digits, lifted to the given register positions."""
    f, a = k.forward, k.adjoint

    def lift(fn):
        def g(lab: CompositeLabel):
            sub = tuple(lab.regs[i] for i in indices)
            out = []
            for sub2, v in fn(sub):
                regs = list(lab.regs)
                for i, t in zip(indices, sub2):
                    regs[i] = t
                out.append((CompositeLabel(tuple(regs), lab.res), v))
            return out
        return g

    return Kernel(lift(f), lift(a), f"{k.name}{list(indices)}")


def controlled(k: Kernel, control: int) -> Kernel:
    """Apply the composite-label kernel ``k`` only on labels whose ``control`` register is 1."""
    f, a = k.forward, k.adjoint

    def ctl(fn):
        return lambda lab: fn(lab) if lab.regs[control] == 1 else [(lab, 1)]

    return Kernel(ctl(f), ctl(a), f"c{control}-{k.name}")


def block(local: Kernel, i: int, j: int) -> Kernel:
    """Resource kernel ``U_ij`` of a local kernel: ``U(|j>h) = sum_i |i> U_ij h``.

    The adjoint of ``U_ij`` is the ``(j, i)`` block of ``U*``.
    """
    f, a = local.forward, local.adjoint

    def fwd(res):
        return [(r2, v) for (t2, r2), v in f((j, res)) if t2 == i]

    def adj(res):
        return [(r2, v) for (t2, r2), v in a((i, res)) if t2 == j]

    return Kernel(fwd, adj, f"{local.name}_{i}{j}")


def matrix_kernel(matrix, dims: Tuple[int, ...], name: str = "M") -> Kernel:
    """Kernel on tuples of digits from a dense unitary on ``prod(dims)`` (row-major)."""
    import numpy as np

    m = np.asarray(matrix, dtype=complex)
    n = int(np.prod(dims))
    if m.shape != (n, n):
        raise ValueError(f"matrix shape {m.shape} does not match dims {dims}")
    cols = []
    rows = []
    for c in range(n):
        nz = np.nonzero(m[:, c])[0]
        cols.append([(tuple(int(v) for v in np.unravel_index(r, dims)), complex(m[r, c])) for r in nz])
        nz = np.nonzero(m[c, :])[0]
        rows.append([(tuple(int(v) for v in np.unravel_index(r, dims)), complex(np.conj(m[c, r])))
                     for r in nz])

    def index(key):
        return int(np.ravel_multi_index(key, dims))

    return Kernel(lambda key: cols[index(key)], lambda key: rows[index(key)], name)
