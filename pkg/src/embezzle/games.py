"""The coherent embezzlement game: inputs, strategies, exact win probabilities, reductions.

Register layout of every game state: ``(A1, A2, B2, B1)`` followed by the
resource label.  Qutrits are encoded as qubit pairs, 0 = 00, 1 = 10 (Alice)
or 01 (Bob), 2 = 11.  Outputs are the measured bits ``a = A1`` and ``b = B1``;
the players win on input ``phi_c`` iff ``a xor b = c``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, Optional

import numpy as np

from .basis import CompositeLabel
from .kernel import Kernel, controlled, matrix_kernel, on_register, on_registers
from .protocol import Protocol, explicit_protocol
from .exact_scalar import HALF, INV_SQRT2, QSqrt2
from .sparse_state import EXACT, FLOAT, SparseState
from .vdh import vdh_as_protocol

A1, A2, B2, B1 = 0, 1, 2, 3


def _amp(v, mode):
    return v if mode == EXACT else complex(v)


def build_phi(c: int, mode: str = EXACT) -> SparseState:
    """``phi_c`` on ``A1 A2 B2 B1`` (no resource attached)."""
    if c not in (0, 1):
        raise ValueError("c must be 0 or 1")
    sign = 1 if c == 0 else -1
    terms = [
        (CompositeLabel((0, 0, 0, 0)), _amp(INV_SQRT2, mode)),
        (CompositeLabel((1, 0, 0, 1)), _amp(HALF * sign, mode)),
        (CompositeLabel((1, 1, 1, 1)), _amp(HALF * sign, mode)),
    ]
    return SparseState(terms, mode=mode, arity=4)


def attach(regs_state: SparseState, catalyst: SparseState) -> SparseState:
    """Tensor a register-only state with a resource-only state."""
    mode = catalyst.mode
    out = []
    for lab, a in regs_state.items():
        for clab, b in catalyst.items():
            out.append((CompositeLabel(lab.regs, clab.res), a * b))
    return SparseState(out, mode=mode, arity=regs_state.arity)


def _gate(table, mode: str, name: str) -> Kernel:
    tab = {k: [(k2, _amp(v, mode)) for k2, v in col] for k, col in table.items()}
    adj = {k: [] for k in tab}
    for src, col in tab.items():
        for dst, v in col:
            adj[dst].append((src, v.conjugate()))
    return Kernel(lambda key: tab[key], lambda key: adj[key], name)


def hadamard(index: int, mode: str = EXACT) -> Kernel:
    h = _gate({(0,): [((0,), INV_SQRT2), ((1,), INV_SQRT2)],
               (1,): [((0,), INV_SQRT2), ((1,), -INV_SQRT2)]}, mode, "H")
    return on_registers(h, (index,))


def pauli_z(index: int, mode: str = EXACT) -> Kernel:
    z = _gate({(0,): [((0,), QSqrt2(1))], (1,): [((1,), QSqrt2(-1))]}, mode, "Z")
    return on_registers(z, (index,))


def pauli_x(index: int, mode: str = EXACT) -> Kernel:
    x = _gate({(0,): [((1,), QSqrt2(1))], (1,): [((0,), QSqrt2(1))]}, mode, "X")
    return on_registers(x, (index,))


@dataclass
class Strategy:
    """Alice's and Bob's unitaries on the full game label, a catalyst, and the measured registers."""

    alice: Kernel
    bob: Kernel
    catalyst: SparseState
    name: str = "strategy"
    a_index: int = A1
    b_index: int = B1
    sampler: Optional[object] = None

    @property
    def mode(self) -> str:
        return self.catalyst.mode

    def evolve(self, state: SparseState) -> SparseState:
        return self.bob(self.alice(state))


def strategy_from_protocol(p: Protocol, name: Optional[str] = None) -> Strategy:
    """Controlled-``U_A*`` and controlled-``U_B*`` followed by Hadamards on ``A1`` and ``B1``."""
    mode = p.mode
    alice = hadamard(A1, mode) @ controlled(on_register(p.alice.H, A2), A1)
    bob = hadamard(B1, mode) @ controlled(on_register(p.bob.H, B2), B1)
    alice.name, bob.name = "HcUA*", "HcUB*"
    return Strategy(alice, bob, p.catalyst, name or f"from-{p.name}", sampler=p.sampler)


def perfect_strategy() -> Strategy:
    return strategy_from_protocol(explicit_protocol(EXACT), "perfect")


def vdh_strategy(n: int) -> Strategy:
    return strategy_from_protocol(vdh_as_protocol(n), f"vdh-{n}")


def finite_strategy(ua, ub, catalyst, dim_ra: int, dim_rb: int, name: str = "finite") -> Strategy:
    """Tensor-framework strategy from dense unitaries.

    ``ua`` acts on ``A1 (x) A2 (x) R_A`` (dims 2, 2, dim_ra) and ``ub`` on
    ``R_B (x) B2 (x) B1`` (dims dim_rb, 2, 2).  ``catalyst`` is a
    ``dim_ra x dim_rb`` amplitude matrix; resource labels are ``(ia, ib)``.
    """
    ka = matrix_kernel(ua, (2, 2, dim_ra), "UA")
    kb = matrix_kernel(ub, (dim_rb, 2, 2), "UB")

    def lift(k: Kernel, get, put):
        def go(fn):
            return lambda lab: [(put(lab, key2), v) for key2, v in fn(get(lab))]
        return Kernel(go(k.forward), go(k.adjoint), k.name)

    alice = lift(ka, lambda lab: (lab.regs[A1], lab.regs[A2], lab.res[0]),
                 lambda lab, k: CompositeLabel((k[0], k[1], lab.regs[B2], lab.regs[B1]), (k[2], lab.res[1])))
    bob = lift(kb, lambda lab: (lab.res[1], lab.regs[B2], lab.regs[B1]),
               lambda lab, k: CompositeLabel((lab.regs[A1], lab.regs[A2], k[1], k[2]), (lab.res[0], k[0])))
    cat = np.asarray(catalyst, dtype=complex).reshape(dim_ra, dim_rb)
    psi = SparseState([(CompositeLabel((), (i, j)), complex(cat[i, j]))
                       for i in range(dim_ra) for j in range(dim_rb) if cat[i, j] != 0],
                      mode=FLOAT, arity=0)

    def sample(rng: random.Random):
        return (rng.randrange(dim_ra), rng.randrange(dim_rb))

    return Strategy(alice, bob, psi, name, sampler=sample)


@dataclass
class GameResult:
    strategy: str
    c: int
    distribution: Dict[str, object]
    win_probability: object

    def to_json(self) -> dict:
        def num(v):
            if isinstance(v, QSqrt2):
                return {"exact": v.to_json(), "value": float(v)}
            return float(v.real if isinstance(v, complex) else v)
        return {
            "strategy": self.strategy,
            "c": self.c,
            "distribution": {k: num(v) for k, v in sorted(self.distribution.items())},
            "win_probability": num(self.win_probability),
        }


def outcome_distribution(st: Strategy, state: SparseState) -> Dict[str, object]:
    """Exact probabilities of the measured bits ``(a, b)``: squared norms of the four projections."""
    dist = {}
    for a in (0, 1):
        for b in (0, 1):
            proj = state.project(st.a_index, a).project(st.b_index, b)
            dist[f"{a}{b}"] = proj.norm2()
    return dist


def play(st: Strategy, c: int) -> GameResult:
    state = st.evolve(attach(build_phi(c, st.mode), st.catalyst))
    dist = outcome_distribution(st, state)
    win = dist["01"] + dist["10"] if c else dist["00"] + dist["11"]
    return GameResult(st.name, c, dist, win)


def reduction_to_embezzlement(st: Strategy) -> Kernel:
    """The circuit ``X X . U_A* U_B* . Z Z . U_A U_B`` as one kernel on game labels."""
    mode = st.mode
    k = (pauli_x(st.a_index, mode) @ pauli_x(st.b_index, mode)
         @ st.bob.H @ st.alice.H
         @ pauli_z(st.a_index, mode) @ pauli_z(st.b_index, mode)
         @ st.bob @ st.alice)
    k.name = "reduction"
    return k


def reduction_output(st: Strategy) -> SparseState:
    """Run the reduction on ``|00>|00> (x) catalyst``."""
    zero = SparseState.basis(CompositeLabel((0, 0, 0, 0)), st.mode)
    return reduction_to_embezzlement(st)(attach(zero, st.catalyst))


def embezzled_factor(out: SparseState) -> SparseState:
    """The ``A2 B2 (x) resource`` part of a reduction output, relabelled to registers ``(a, b)``.

    Raises if ``A1`` or ``B1`` ended anywhere but ``|0>``.
    """
    kept = out.project(A1, 0).project(B1, 0)
    if len(kept) != len(out):
        raise ValueError("reduction output has weight outside A1 = B1 = 0")
    return kept.drop_registers((A2, B2))


def strategy_commutation_check(st: Strategy, seed: int = 42, samples: int = 50) -> bool:
    """Alice's and Bob's game unitaries commute on sampled basis labels."""
    if st.sampler is None:
        raise ValueError("strategy has no resource sampler")
    rng = random.Random(seed)
    for _ in range(samples):
        regs = tuple(rng.randrange(2) for _ in range(4))
        s = SparseState.basis(CompositeLabel(regs, st.sampler(rng)), st.mode)
        if not st.alice(st.bob(s)).equal(st.bob(st.alice(s))):
            return False
    return True
