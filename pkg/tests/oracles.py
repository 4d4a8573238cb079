"""Independent reference computations for the test suite.

Nothing here imports the package.  The truncated-grid oracle writes the
resource operators straight from their defining formulas over Fractions and
assembles them as sparse matrices; products are plain matrix products, so it
shares no code path with the lazy kernels.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np
import scipy.sparse as sp

R2 = 1 / math.sqrt(2)

# grid: 0 <= x, y < 8 with three fractional bits
FRAC_BITS = 3
GRID = [Fraction(k, 2**FRAC_BITS) for k in range(8 * 2**FRAC_BITS)]


def digit(v: Fraction, j: int) -> int:
    return math.floor(v * Fraction(2) ** (-j)) % 2


def l1(x, y):
    return [((2 * x, 2 * y), 1.0)]


def l2(x, y):
    x0, y0 = digit(x, 0), digit(y, 0)
    return [((x - x0, y), R2), ((x - x0 + 1, y - 2 * y0 + 1), (-1) ** x0 * R2)]


class Space:
    """Finite list of hashable labels with an index."""

    def __init__(self, labels):
        self.labels = list(labels)
        self.index = {lab: i for i, lab in enumerate(self.labels)}

    def __len__(self):
        return len(self.labels)

    def matrix(self, fn) -> sp.csr_matrix:
        rows, cols, vals = [], [], []
        for c, lab in enumerate(self.labels):
            for lab2, v in fn(lab):
                r = self.index.get(lab2)
                if r is not None:
                    rows.append(r)
                    cols.append(c)
                    vals.append(v)
        n = len(self.labels)
        return sp.csr_matrix((vals, (rows, cols)), shape=(n, n))

    def vector(self, terms) -> np.ndarray:
        v = np.zeros(len(self.labels))
        for lab, a in terms:
            v[self.index[lab]] += a
        return v

    def terms(self, v, tol=1e-12):
        return {self.labels[i]: float(v[i]) for i in np.flatnonzero(np.abs(v) > tol)}


XY = Space(itertools.product(GRID, GRID))


def xy_ops():
    L1 = XY.matrix(lambda lab: l1(*lab))
    L2 = XY.matrix(lambda lab: l2(*lab))
    return L1, L2, L2 @ L1


def _power(m, n):
    out = sp.identity(m.shape[0], format="csr")
    for _ in range(n):
        out = m @ out
    return out


class ProtocolOracle:
    """Truncated matrices for the whole construction on ``(a, r, x, y, b)``."""

    def __init__(self, r_max: int = 2):
        self.rs = list(range(-r_max, r_max + 1))
        _, _, L = xy_ops()
        self.L = L
        nxy = len(XY)
        self.res = Space((r, x, y) for r in self.rs for (x, y) in XY.labels)
        # C is block diagonal in r: L^r, adjoint powers for r < 0
        blocks = [_power(L, r) if r >= 0 else _power(L.T.tocsr(), -r) for r in self.rs]
        self.C_res = sp.block_diag(blocks, format="csr")
        self.L_res = sp.kron(sp.identity(len(self.rs)), L, format="csr")
        self.LA_res = self.res.matrix(lambda lab: [((lab[0] + 1,) + lab[1:], 1.0)])
        self.LB_res = self.LA_res.T @ self.L_res
        assert self.C_res.shape[0] == len(self.rs) * nxy

        self.full = Space((a,) + lab + (b,) for a in (0, 1) for lab in self.res.labels for b in (0, 1))
        lift = lambda m: sp.kron(sp.identity(2), sp.kron(m, sp.identity(2)), format="csr")
        self.C = lift(self.C_res)
        self.LA = lift(self.LA_res)
        self.LB = lift(self.LB_res)

        def swap_a(lab):
            a, r, x, y, b = lab
            x0 = digit(x, 0)
            return [((x0, r, x - x0 + a, y, b), 1.0)]

        def swap_b(lab):
            a, r, x, y, b = lab
            y0 = digit(y, 0)
            return [((a, r, x, y - y0 + b, y0), 1.0)]

        self.SA_naive = self.full.matrix(swap_a)
        self.SB = self.full.matrix(swap_b)
        self.SA = self.C.T @ self.SA_naive @ self.C
        self.SA_reverse_order = self.C @ self.SA_naive @ self.C.T
        self.UA = self.SA @ self.LA
        self.UB = self.SB @ self.LB


# Jacobi eigenvalues ----------------------------------------------------------

def jacobi_eigenvalues(m: np.ndarray, tol: float = 1e-14, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic two-sided Jacobi rotations."""
    a = np.array(m, dtype=float)
    n = a.shape[0]
    for _ in range(max_sweeps):
        off = math.sqrt(max(0.0, (a * a).sum() - (np.diag(a) ** 2).sum()))
        if off <= tol * max(1.0, abs(a).max()):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) < 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2 * a[p, q])
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1))
                c = 1 / math.sqrt(t * t + 1)
                s = t * c
                rot = np.eye(n)
                rot[p, p] = rot[q, q] = c
                rot[p, q], rot[q, p] = s, -s
                a = rot.T @ a @ rot
    return np.sort(np.diag(a))[::-1]


def singular_values_oracle(x) -> np.ndarray:
    """Singular values from the eigenvalues of ``X*X`` through its real 2n x 2n embedding."""
    x = np.asarray(x, dtype=complex)
    h = x.conj().T @ x
    emb = np.block([[h.real, -h.imag], [h.imag, h.real]])
    ev = jacobi_eigenvalues(emb)[::2]  # each eigenvalue appears twice
    return np.sqrt(np.clip(ev, 0.0, None))


# van Dam-Hayden ----------------------------------------------------------------

def vdh_dense(n: int):
    """(fidelity, P) from sorted amplitudes; state indices ``(b_A, j_A, j_B, b_B)``."""
    h = sum(1.0 / j for j in range(1, n + 1))
    c = np.array([1 / math.sqrt(h * j) for j in range(1, n + 1)])
    src = np.concatenate([c, np.zeros(n)])           # |0> mu  on (b, j)
    tgt = np.concatenate([c, c]) / math.sqrt(2)      # marginal amplitudes of Phi+ (x) mu
    so = np.argsort(-src, kind="stable")
    to = np.argsort(-tgt, kind="stable")
    P = np.zeros((2 * n, 2 * n))
    P[to, so] = 1.0
    start = np.zeros((2, n, n, 2))
    target = np.zeros((2, n, n, 2))
    for j in range(n):
        start[0, j, j, 0] = c[j]
        target[0, j, j, 0] = target[1, j, j, 1] = c[j] / math.sqrt(2)
    s = start.reshape(2 * n, 2 * n)            # rows (b_A, j_A), cols (j_B, b_B)
    # Bob's P acts on (b_B, j_B); reorder columns to (b_B, j_B) and back
    perm_cols = np.array([b * n + j for j in range(n) for b in range(2)])
    s_b = s[:, perm_cols]
    out = P @ s_b @ P.T
    inv = np.argsort(perm_cols)
    out = out[:, inv]
    fid = abs(np.vdot(target.reshape(-1), out.reshape(-1)))
    return fid, P


def vdh_closed_form(n: int) -> float:
    h = sum(1.0 / j for j in range(1, n + 1))
    return sum((h * k) ** -0.5 * (2 * h * math.ceil(k / 2)) ** -0.5 for k in range(1, n + 1))
