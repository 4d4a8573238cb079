"""The explicit commuting-operator construction on the resource space.

Resource basis: ``|r, x, y>`` with ``x, y`` radix-d labels.  Digit pair ``j``
holds Alice's logical qudit at position ``j + r`` and Bob's at position ``j``.
Pairs at ``j >= 0`` are in the computational basis; pairs at ``j < 0`` are
expressed in the basis obtained by applying the two-qudit block ``W`` (for
d = 2, the Bell basis ``|0 y> + (-1)^x |1 ~y>``, normalised).

All operators here are :class:`~embezzle.kernel.Kernel` objects on resource
labels (``L1``, ``L2``, ``L``, ``LA``, ``LB``, ``C``) or on ``(t, res)`` keys
(swaps and the parties' unitaries).
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .basis import Adic, CompositeLabel, ResourceLabel
from .kernel import Kernel, apply_terms, local_from_resource, on_register, on_resource
from .exact_scalar import INV_SQRT2, QSqrt2
from .sparse_state import EXACT, FLOAT, SparseState

Pair = Tuple[int, int]
BlockTable = Dict[Pair, List[Tuple[Pair, object]]]


def bell_block() -> BlockTable:
    """Exact columns of the d = 2 basis change: ``(x0, y0) -> |0 y0> + (-1)^x0 |1 ~y0>``."""
    table: BlockTable = {}
    for x0 in (0, 1):
        for y0 in (0, 1):
            sign = INV_SQRT2 if x0 == 0 else -INV_SQRT2
            table[(x0, y0)] = [((0, y0), INV_SQRT2), ((1, 1 - y0), sign)]
    return table


def block_from_matrix(m: np.ndarray, d: int) -> BlockTable:
    """Columns of a dense ``d^2 x d^2`` unitary, indexed by digit pairs (row-major)."""
    table: BlockTable = {}
    for x0 in range(d):
        for y0 in range(d):
            col = m[:, x0 * d + y0]
            table[(x0, y0)] = [((a, b), complex(col[a * d + b]))
                               for a in range(d) for b in range(d) if col[a * d + b] != 0]
    return table


def adjoint_table(table: BlockTable) -> BlockTable:
    out: BlockTable = {k: [] for k in table}
    for col, entries in table.items():
        for row, amp in entries:
            out[row].append((col, amp.conjugate()))
    return out


def completion(phi: Sequence[complex]) -> np.ndarray:
    """Unitary whose first column is ``phi``, completed by Gram-Schmidt on the standard basis."""
    phi = np.asarray(phi, dtype=complex)
    n = phi.size
    norm = np.linalg.norm(phi)
    if abs(norm - 1.0) > 1e-9:
        raise ValueError(f"target vector has norm {norm}, expected 1")
    cols = [phi / norm]
    for k in range(n):
        v = np.zeros(n, dtype=complex)
        v[k] = 1.0
        for _ in range(2):  # re-orthogonalise once for stability
            for c in cols:
                v = v - np.vdot(c, v) * c
        nv = np.linalg.norm(v)
        if nv > 1e-8:
            cols.append(v / nv)
        if len(cols) == n:
            break
    return np.column_stack(cols)


class Construction:
    """Shift and swap operators for a given radix and basis-change block."""

    def __init__(self, base: int = 2, table: BlockTable | None = None, mode: str = EXACT):
        if table is None:
            if base != 2:
                raise ValueError("the default block is only defined for base 2")
            table = bell_block()
        if mode == FLOAT:
            table = {k: [(r, complex(v)) for r, v in col] for k, col in table.items()}
        self.base = base
        self.mode = mode
        self.W = table
        self.Wt = adjoint_table(table)
        self.one = QSqrt2(1) if mode == EXACT else 1.0 + 0j
        self._build()

    # resource kernels ------------------------------------------------------

    def _build(self):
        one = self.one

        def l1(lab: ResourceLabel):
            return [(ResourceLabel(lab.r, lab.x.times_base(), lab.y.times_base()), one)]

        def l1_adj(lab: ResourceLabel):
            return [(ResourceLabel(lab.r, lab.x.div_base(), lab.y.div_base()), one)]

        def pair_op(table):
            def f(lab: ResourceLabel):
                key = (lab.x.digit(0), lab.y.digit(0))
                return [(ResourceLabel(lab.r, lab.x.with_digit(0, a), lab.y.with_digit(0, b)), v)
                        for (a, b), v in table[key]]
            return f

        self.L1 = Kernel(l1, l1_adj, "L1")
        self.L2 = Kernel(pair_op(self.W), pair_op(self.Wt), "L2")
        self.L = self.L2 @ self.L1
        self.L.name = "L"
        self.LA = Kernel(lambda lab: [(ResourceLabel(lab.r + 1, lab.x, lab.y), one)],
                         lambda lab: [(ResourceLabel(lab.r - 1, lab.x, lab.y), one)], "LA")
        self.LB = self.LA.H @ self.L
        self.LB.name = "LB"

        L_fwd, L_adj = self.L.forward, self.L.adjoint

        def power(fn, n):
            def go(lab):
                terms = [(lab, one)]
                for _ in range(n):
                    terms = list(apply_terms(fn, terms).items())
                return terms
            return go

        def c_fwd(lab: ResourceLabel):
            # C|r,x,y> = L^r |r,x,y>; negative powers use the adjoint
            return power(L_fwd if lab.r >= 0 else L_adj, abs(lab.r))(lab)

        def c_adj(lab: ResourceLabel):
            return power(L_adj if lab.r >= 0 else L_fwd, abs(lab.r))(lab)

        self.C = Kernel(c_fwd, c_adj, "C")

        # local kernels on (t, res) ---------------------------------------

        def swap_b(key):
            t, lab = key
            return [((lab.y.digit(0), ResourceLabel(lab.r, lab.x, lab.y.with_digit(0, t))), one)]

        def swap_a_naive(key):
            s, lab = key
            return [((lab.x.digit(0), ResourceLabel(lab.r, lab.x.with_digit(0, s), lab.y)), one)]

        self.SB = Kernel(swap_b, swap_b, "SB")
        self.SA_naive = Kernel(swap_a_naive, swap_a_naive, "SA~")
        swap = {(s, a): [((a, s), one)] for s in range(self.base) for a in range(self.base)}
        self.SA = self.alice_logical(0, swap, name="SA")

        C_local = local_from_resource(self.C)
        self.SA_conjugated = C_local.H @ self.SA_naive @ C_local
        self.SA_conjugated.name = "C*SA~C"
        self.SA_reverse_order = C_local @ self.SA_naive @ C_local.H
        self.SA_reverse_order.name = "CSA~C*"

        self.UA = self.SA @ local_from_resource(self.LA)
        self.UA.name = "UA"
        self.UB = self.SB @ local_from_resource(self.LB)
        self.UB.name = "UB"

    def alice_logical(self, position: int, op: Dict[Pair, list], name: str = "A") -> Kernel:
        """Local kernel acting as ``op`` on (register digit, Alice's logical qudit at ``position``).

        ``op`` maps ``(t, a)`` to a list of ``((t', a'), amp)``.  In ``|r, x, y>``
        that qudit is Alice's half of digit pair ``position - r``; negative
        pairs are rotated out of and back into the ``W`` basis around ``op``.
        """
        W, Wt = self.W, self.Wt
        op_adj: Dict[Pair, list] = {k: [] for k in op}
        for src, entries in op.items():
            for dst, amp in entries:
                op_adj[dst].append((src, amp.conjugate()))

        def make(table):
            def f(key):
                t, lab = key
                j = position - lab.r
                xj, yj = lab.x.digit(j), lab.y.digit(j)
                if j >= 0:
                    return [((t2, ResourceLabel(lab.r, lab.x.with_digit(j, a2), lab.y)), v)
                            for (t2, a2), v in table[(t, xj)]]
                out: Dict[Tuple[int, Pair], object] = {}
                for (a, b), w in W[(xj, yj)]:
                    for (t2, a2), v in table[(t, a)]:
                        for (x2, y2), wc in Wt[(a2, b)]:
                            k = (t2, (x2, y2))
                            amp = wc * v * w
                            out[k] = amp if k not in out else out[k] + amp
                return [((t2, ResourceLabel(lab.r, lab.x.with_digit(j, x2), lab.y.with_digit(j, y2))), v)
                        for (t2, (x2, y2)), v in out.items() if v]
            return f

        return Kernel(make(op), make(op_adj), name)

    # convenience -----------------------------------------------------------

    def origin(self) -> ResourceLabel:
        z = Adic(0, 0, self.base)
        return ResourceLabel(0, z, z)

    def catalyst(self) -> SparseState:
        return SparseState.basis(CompositeLabel((), self.origin()), mode=self.mode)

    def label(self, r: int, x, y) -> ResourceLabel:
        return ResourceLabel.of(r, x, y, base=self.base)


@lru_cache(maxsize=None)
def exact_construction() -> Construction:
    return Construction(2, None, EXACT)


# state-level helpers for the base-2 exact construction

def _res(kernel_name: str, adjoint: bool = False):
    def apply(state: SparseState) -> SparseState:
        k = getattr(exact_construction(), kernel_name)
        return on_resource(k.H if adjoint else k)(state)
    apply.__name__ = f"apply_{kernel_name}{'_adj' if adjoint else ''}"
    return apply


apply_L1 = _res("L1")
apply_L1_adj = _res("L1", True)
apply_L2 = _res("L2")
apply_L2_adj = _res("L2", True)
apply_L = _res("L")
apply_L_adj = _res("L", True)
apply_LA = _res("LA")
apply_LA_adj = _res("LA", True)
apply_LB = _res("LB")
apply_LB_adj = _res("LB", True)
apply_C = _res("C")
apply_C_adj = _res("C", True)


def _local(kernel_name: str, default_index: int):
    def apply(state: SparseState, index: int = default_index) -> SparseState:
        return on_register(getattr(exact_construction(), kernel_name), index)(state)
    apply.__name__ = f"apply_{kernel_name}"
    return apply


apply_SB = _local("SB", 1)
apply_SA_naive = _local("SA_naive", 0)
apply_SA = _local("SA", 0)
apply_UA = _local("UA", 0)
apply_UB = _local("UB", 1)


def resource_state(terms, mode: str = EXACT) -> SparseState:
    """Resource-only state from ``[(amp, (r, x, y)), ...]`` with base-2 labels."""
    return SparseState([(CompositeLabel((), ResourceLabel.of(r, x, y)), a) for a, (r, x, y) in terms],
                       mode=mode, arity=0)


def composite_state(terms, mode: str = EXACT) -> SparseState:
    """State from ``[(amp, regs, (r, x, y)), ...]`` with base-2 labels."""
    items = [(CompositeLabel(tuple(regs), ResourceLabel.of(r, x, y)), a) for a, regs, (r, x, y) in terms]
    arity = len(items[0][0].regs) if items else 0
    return SparseState(items, mode=mode, arity=arity)


HALF_SQRT2 = QSqrt2(0, Fraction(1, 2))
