"""Small dense linear algebra: one-sided Jacobi SVD, polar and Schmidt decompositions."""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from .exact_scalar import EPS_F

JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


class NoConvergence(RuntimeError):
    pass


def _jacobi_columns(a: np.ndarray, tol: float, max_sweeps: int):
    """Orthogonalise the columns of ``a`` (m >= n) by plane rotations; returns (A V, V)."""
    a = a.astype(complex, copy=True)
    n = a.shape[1]
    v = np.eye(n, dtype=complex)
    for _ in range(max_sweeps):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                ap, aq = a[:, p], a[:, q]
                alpha = np.vdot(ap, ap).real
                beta = np.vdot(aq, aq).real
                gamma = np.vdot(ap, aq)
                g = abs(gamma)
                if g == 0.0 or g <= tol * np.sqrt(alpha * beta):
                    continue
                rotated = True
                phase = gamma / g
                zeta = (beta - alpha) / (2.0 * g)
                t = np.copysign(1.0, zeta) / (abs(zeta) + np.sqrt(1.0 + zeta * zeta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = c * t
                # rotate (a_p, e^{-i phi} a_q) as a real pair, then restore the phase
                aq_t = aq / phase
                a[:, p], a[:, q] = c * ap - s * aq_t, (s * ap + c * aq_t) * phase
                vp, vq_t = v[:, p].copy(), v[:, q] / phase
                v[:, p], v[:, q] = c * vp - s * vq_t, (s * vp + c * vq_t) * phase
        if not rotated:
            return a, v
    raise NoConvergence(f"one-sided Jacobi did not converge in {max_sweeps} sweeps")


def svd(x, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS):
    """Thin SVD ``x = U diag(s) Vh`` with ``s`` nonincreasing, via one-sided Jacobi.

    Columns of ``U`` paired with zero singular values are set to zero.
    """
    x = np.asarray(x, dtype=complex)
    m, n = x.shape
    if m < n:
        u, s, vh = svd(x.conj().T, tol, max_sweeps)
        return vh.conj().T, s, u.conj().T
    av, v = _jacobi_columns(x, tol, max_sweeps)
    s = np.linalg.norm(av, axis=0)
    order = np.argsort(-s, kind="stable")
    s = s[order]
    av = av[:, order]
    v = v[:, order]
    u = np.zeros_like(av)
    scale = s.max() if s.size else 0.0
    for k in range(n):
        if s[k] > scale * 1e-14 and s[k] > 0:
            u[:, k] = av[:, k] / s[k]
        else:
            s[k] = 0.0
    return u, s, v.conj().T


def singular_values(x) -> np.ndarray:
    return svd(x)[1]


@dataclass
class Polar:
    W: np.ndarray
    P: np.ndarray

    def __iter__(self):
        return iter((self.W, self.P))


def polar_decompose(x, tol: float = EPS_F) -> Polar:
    """``X = W |X|`` with ``|X| = (X*X)^(1/2)`` and ``W`` a partial isometry.

    ``W`` has initial space ``ran |X|`` (singular values above ``tol`` times the
    largest) and is zero on its complement, which makes it unique.
    """
    x = np.asarray(x, dtype=complex)
    u, s, vh = svd(x)
    v = vh.conj().T
    p = (v * s) @ vh
    keep = s > tol * max(s.max(initial=0.0), 1.0)
    w = u[:, keep] @ vh[keep, :]
    return Polar(w, p)


def coisometry_check(rows, tol: float = EPS_F) -> bool:
    """True iff the given rows are orthonormal, i.e. ``U U* = I``."""
    u = np.asarray(rows, dtype=complex)
    if u.ndim != 2:
        raise ValueError("rows must form a 2-d array")
    gram = u @ u.conj().T
    return bool(np.abs(gram - np.eye(u.shape[0])).max() < tol)


def is_unitary(m, tol: float = EPS_F) -> bool:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return bool(np.abs(m.conj().T @ m - np.eye(m.shape[0])).max() < tol)


@dataclass
class DenseState:
    """Amplitudes over a product of registers, row-major in ``dims``."""

    dims: Tuple[int, ...]
    amps: np.ndarray

    def __post_init__(self):
        self.dims = tuple(int(d) for d in self.dims)
        self.amps = np.asarray(self.amps, dtype=complex).reshape(-1)
        if self.amps.size != int(np.prod(self.dims)):
            raise ValueError(f"{self.amps.size} amplitudes do not fit dims {self.dims}")

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def tensor(self) -> np.ndarray:
        return self.amps.reshape(self.dims)

    def matricize(self, cut: Sequence[int]) -> Tuple[np.ndarray, Tuple[int, ...]]:
        """Matrix with rows indexed by registers in ``cut`` and columns by the rest."""
        left = list(cut)
        right = [i for i in range(len(self.dims)) if i not in left]
        if not left or not right:
            raise ValueError("both sides of the cut must be nonempty")
        if sorted(set(left)) != sorted(left) or any(i < 0 or i >= len(self.dims) for i in left):
            raise ValueError(f"invalid cut {cut!r} for {len(self.dims)} registers")
        t = np.transpose(self.tensor(), left + right)
        rows = int(np.prod([self.dims[i] for i in left]))
        return t.reshape(rows, -1), tuple(right)


@dataclass
class Schmidt:
    coefficients: np.ndarray
    left: List[np.ndarray]
    right: List[np.ndarray]

    def reconstruct(self) -> np.ndarray:
        out = 0
        for d, u, v in zip(self.coefficients, self.left, self.right):
            out = out + d * np.outer(u, v)
        return out


def schmidt_decompose(state: DenseState, cut: Sequence[int], tol: float = EPS_F) -> Schmidt:
    """``s = sum_k d_k u_k (x) v_k`` across ``cut``; ``d_k`` nonincreasing and positive.

    Phases are fixed so the first nonzero entry of each ``u_k`` is real positive.
    """
    x, _ = state.matricize(cut)
    u, s, vh = svd(x)
    scale = max(s.max(initial=0.0), 1.0)
    coeffs, lefts, rights = [], [], []
    for k in range(s.size):
        if s[k] <= tol * scale * 1e-3:
            continue
        uk, vk = u[:, k], vh[k, :]
        nz = np.flatnonzero(np.abs(uk) > 1e-12)
        if nz.size:
            ph = uk[nz[0]] / abs(uk[nz[0]])
            uk, vk = uk / ph, vk * ph
        coeffs.append(float(s[k]))
        lefts.append(uk)
        rights.append(vk)
    return Schmidt(np.array(coeffs), lefts, rights)


def schmidt_coefficients(state: DenseState, cut: Sequence[int]) -> np.ndarray:
    return schmidt_decompose(state, cut).coefficients


def apply_local(state: DenseState, cut: Sequence[int], u_left, v_right) -> DenseState:
    """``(U (x) V) s`` where ``U`` acts on the ``cut`` registers and ``V`` on the rest."""
    x, right = state.matricize(cut)
    y = np.asarray(u_left) @ x @ np.asarray(v_right).T
    left = list(cut)
    perm = left + list(right)
    t = y.reshape([state.dims[i] for i in perm])
    inv = np.argsort(perm)
    return DenseState(state.dims, np.transpose(t, inv).reshape(-1))


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unitary via QR with the phase correction."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


@dataclass
class InvarianceReport:
    before: np.ndarray
    after: np.ndarray
    max_difference: float
    invariant: bool
    top_coefficient: float
    embezzled_top_bound: float

    def to_json(self) -> dict:
        return {
            "before": [float(v) for v in self.before],
            "after": [float(v) for v in self.after],
            "max_difference": self.max_difference,
            "invariant": self.invariant,
            "top_coefficient": self.top_coefficient,
            "embezzled_top_bound": self.embezzled_top_bound,
        }


def schmidt_invariance_demo(state: DenseState, cut: Sequence[int], u_local, v_local,
                            tol: float = EPS_F) -> InvarianceReport:
    """Schmidt coefficients before and after local unitaries, plus the embezzlement gap.

    A Bell pair tensored onto the catalyst would have top coefficient at most
    ``alpha_0 / sqrt 2``; local unitaries keep it at ``alpha_0``.
    """
    if not is_unitary(u_local, tol) or not is_unitary(v_local, tol):
        raise ValueError("local operators must be unitary")
    before = schmidt_coefficients(state, cut)
    after = schmidt_coefficients(apply_local(state, cut, u_local, v_local), cut)
    k = max(before.size, after.size)
    b = np.pad(before, (0, k - before.size))
    a = np.pad(after, (0, k - after.size))
    diff = float(np.abs(a - b).max(initial=0.0))
    top = float(after[0]) if after.size else 0.0
    return InvarianceReport(before, after, diff, diff < tol, top, top / np.sqrt(2))
