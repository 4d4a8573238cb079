"""Finite-dimensional approximate embezzlement with the van Dam-Hayden catalyst.

Catalyst ``mu_n = sum_{j=1..n} |j>|j> / sqrt(H_n j)`` with ``H_n`` the n-th
harmonic number.  Each party applies the same permutation ``P`` of
``C^2 (x) C^n`` that sends the k-th largest amplitude of ``|0> mu_n`` to the
slot of the k-th largest amplitude of ``Phi+ (x) mu_n``.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, List, Tuple

import numpy as np

from .basis import CompositeLabel
from .kernel import Kernel
from .protocol import Protocol, run_protocol, state_functional, target_state
from .sparse_state import FLOAT, SparseState


def harmonic(n: int) -> float:
    return math.fsum(1.0 / j for j in range(1, n + 1))


def catalyst_amplitudes(n: int) -> np.ndarray:
    """``c_j = 1/sqrt(H_n j)`` for ``j = 1..n`` (index 0 holds ``c_1``)."""
    h = harmonic(n)
    return 1.0 / np.sqrt(h * np.arange(1, n + 1))


def catalyst_entropy(n: int) -> float:
    """Entanglement entropy (bits) of ``mu_n``."""
    p = catalyst_amplitudes(n) ** 2
    return float(-(p * np.log2(p)).sum())


@dataclass(frozen=True)
class VdhProtocol:
    n: int

    def slot_of_source(self, b: int, j: int) -> int:
        """Rank of ``|b, j>`` in ``|0> mu_n``: (0, j) ranks j; zero-amplitude (1, j) fill n+1..2n."""
        return j if b == 0 else self.n + j

    @staticmethod
    def target_of_slot(k: int) -> Tuple[int, int]:
        """Label of the k-th largest amplitude of ``Phi+ (x) mu_n``."""
        return ((k - 1) % 2, (k + 1) // 2)

    def source_of_slot(self, k: int) -> Tuple[int, int]:
        return (0, k) if k <= self.n else (1, k - self.n)

    def permute(self, b: int, j: int) -> Tuple[int, int]:
        return self.target_of_slot(self.slot_of_source(b, j))

    def unpermute(self, b: int, j: int) -> Tuple[int, int]:
        return self.source_of_slot(2 * j - 1 + b)

    def permutation_matrix(self) -> np.ndarray:
        """``P`` on ``C^2 (x) C^n``, row-major index ``b * n + (j - 1)``."""
        n = self.n
        m = np.zeros((2 * n, 2 * n))
        for b in (0, 1):
            for j in range(1, n + 1):
                b2, j2 = self.permute(b, j)
                m[b2 * n + j2 - 1, b * n + j - 1] = 1.0
        return m

    def is_bijection(self) -> bool:
        images = {self.permute(b, j) for b in (0, 1) for j in range(1, self.n + 1)}
        return len(images) == 2 * self.n and all(
            self.unpermute(*self.permute(b, j)) == (b, j) for b in (0, 1) for j in range(1, self.n + 1))

    def catalyst(self) -> SparseState:
        c = catalyst_amplitudes(self.n)
        return SparseState([(CompositeLabel((), (j, j)), complex(c[j - 1])) for j in range(1, self.n + 1)],
                           mode=FLOAT, arity=0)

    def local_kernel(self, side: int) -> Kernel:
        """``P`` acting on ``(t, (ja, jb))`` keys; ``side`` 0 touches ``ja``, 1 touches ``jb``."""
        one = 1.0 + 0j

        def make(fn):
            def f(key):
                t, res = key
                t2, j2 = fn(t, res[side])
                res2 = (j2, res[1]) if side == 0 else (res[0], j2)
                return [((t2, res2), one)]
            return f

        return Kernel(make(self.permute), make(self.unpermute), "P" if side == 0 else "Q")

    def sampler(self):
        n = self.n

        def sample(rng: random.Random):
            return (rng.randint(1, n), rng.randint(1, n))
        return sample


def vdh_as_protocol(n: int) -> Protocol:
    if n < 1:
        raise ValueError("n must be >= 1")
    v = VdhProtocol(n)
    return Protocol(v.local_kernel(0), v.local_kernel(1), v.catalyst(), 2, f"vdh-{n}", v.sampler())


def vdh_fidelity(n: int) -> float:
    """``|<Phi+ (x) mu_n, (P (x) P)(|00> (x) mu_n)>|``."""
    p = vdh_as_protocol(n)
    out = run_protocol(p)
    return abs(target_state(p).inner(out))


def functional_deviations(n: int) -> Tuple[float, float, float, float]:
    """``|s_ij - target_ij|`` in the order (00, 10, 01, 11), target ``(1/sqrt2, 0, 0, 1/sqrt2)``."""
    s = state_functional(vdh_as_protocol(n))
    t = (1 / math.sqrt(2), 0.0, 0.0, 1 / math.sqrt(2))
    return tuple(abs(complex(a) - b) for a, b in zip(s, t))


@dataclass
class SweepRow:
    n: int
    fidelity: float
    deviations: Tuple[float, float, float, float]

    def csv(self) -> str:
        return ",".join([str(self.n), repr(self.fidelity)] + [repr(float(d)) for d in self.deviations])


CSV_HEADER = "n,fidelity,s00_dev,s10_dev,s01_dev,s11_dev"


def vdh_sweep(ns: Iterable[int]) -> List[SweepRow]:
    return [SweepRow(n, vdh_fidelity(n), functional_deviations(n)) for n in ns]


def doubling(n_min: int, n_max: int) -> List[int]:
    out, n = [], max(1, n_min)
    while n <= n_max:
        out.append(n)
        n *= 2
    return out


def is_nondecreasing(values) -> bool:
    values = list(values)
    return all(b >= a for a, b in zip(values, values[1:]))
