"""Embezzlement protocols, their constituent blocks, and the checks that certify them."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

import numpy as np

from .basis import Adic, CompositeLabel, ResourceLabel
from .construction import Construction, block_from_matrix, completion, exact_construction
from .kernel import Kernel, block, identity, local_from_resource, on_register, on_resource, zero_kernel
from .exact_scalar import EPS_F, QSqrt2, SQRT2, INV_SQRT2, scalar_to_json
from .sparse_state import EXACT, FLOAT, SparseState, tensor_registers

Sampler = Callable[[random.Random], Hashable]


@dataclass(frozen=True)
class Bounds:
    max_r: int = 8
    max_bits: int = 8


def dyadic_sampler(base: int = 2, bounds: Bounds = Bounds()) -> Sampler:
    """Random ``|r, x, y>`` with ``|r| <= max_r`` and ``max_bits`` digits each side of the point."""
    span = base ** (2 * bounds.max_bits)

    def sample(rng: random.Random) -> ResourceLabel:
        r = rng.randint(-bounds.max_r, bounds.max_r)
        x = Adic(rng.randrange(span), bounds.max_bits, base)
        y = Adic(rng.randrange(span), bounds.max_bits, base)
        return ResourceLabel(r, x, y)

    return sample


@dataclass
class Protocol:
    """Alice's and Bob's local kernels on ``(register digit, resource)`` plus a catalyst.

    ``alice`` and ``bob`` act on keys ``(t, res)``; in a joint state
    ``|a> (x) psi (x) |b>`` Alice's register is index 0 and Bob's is index 1.
    """

    alice: Kernel
    bob: Kernel
    catalyst: SparseState
    dim: int = 2
    name: str = "protocol"
    sampler: Optional[Sampler] = None

    @property
    def mode(self) -> str:
        return self.catalyst.mode

    def UA(self) -> Kernel:
        return on_register(self.alice, 0)

    def UB(self) -> Kernel:
        return on_register(self.bob, 1)

    def U(self, i: int, j: int) -> Kernel:
        return block(self.alice, i, j)

    def V(self, k: int, l: int) -> Kernel:
        return block(self.bob, k, l)

    def sample_resource(self, rng: random.Random):
        if self.sampler is None:
            raise ValueError(f"protocol {self.name!r} has no label sampler")
        return self.sampler(rng)


def explicit_protocol(mode: str = EXACT) -> Protocol:
    """The shift-and-swap protocol: ``U_A = S_A L_A``, ``U_B = S_B L_B``, catalyst ``|0,0,0>``."""
    K = exact_construction() if mode == EXACT else Construction(2, None, FLOAT)
    return Protocol(K.UA, K.UB, K.catalyst(), 2, "explicit", dyadic_sampler(2))


def naive_swap_protocol() -> Protocol:
    """Deliberately broken variant using the naive Alice swap (does not commute with ``U_B``)."""
    K = exact_construction()
    UA = K.SA_naive @ local_from_resource(K.LA)
    UA.name = "SA~LA"
    return Protocol(UA, K.UB, K.catalyst(), 2, "naive-swap", dyadic_sampler(2))


def identity_protocol() -> Protocol:
    K = exact_construction()
    return Protocol(identity(), identity(), K.catalyst(), 2, "identity", dyadic_sampler(2))


def general_protocol(d: int, alpha) -> Protocol:
    """Float-mode radix-d protocol embezzling ``sum alpha_ij |i>|j>``.

    The position-0 basis change is any unitary whose first column is ``alpha``
    (Gram-Schmidt completion); the rest of the construction is unchanged.
    """
    if d < 2:
        raise ValueError("d must be at least 2")
    a = np.asarray(alpha, dtype=complex).reshape(-1)
    if a.size != d * d:
        raise ValueError(f"expected {d * d} coefficients, got {a.size}")
    if abs(np.vdot(a, a).real - 1.0) > EPS_F:
        raise ValueError("target coefficients are not normalised")
    table = block_from_matrix(completion(a), d)
    K = Construction(d, table, FLOAT)
    return Protocol(K.UA, K.UB, K.catalyst(), d, f"general-d{d}", dyadic_sampler(d, Bounds(4, 4)))


def extract_block(k: Kernel, i: int, j: int, which: str = "A") -> Kernel:
    """Block ``U_ij`` (``which="A"``) or ``V_ij`` (``"B"``) of a local kernel; ``which`` is a label only."""
    if which not in ("A", "B"):
        raise ValueError("which must be 'A' or 'B'")
    out = block(k, i, j)
    out.name = f"{'U' if which == 'A' else 'V'}{i}{j}"
    return out


# running -------------------------------------------------------------------

def initial_state(p: Protocol, a0: int = 0, b0: int = 0) -> SparseState:
    return tensor_registers((a0, b0), p.catalyst)


def run_protocol(p: Protocol, a0: int = 0, b0: int = 0) -> SparseState:
    """``(U_A (x) I)(I (x) U_B) |a0> psi |b0>``."""
    return p.UA()(p.UB()(initial_state(p, a0, b0)))


def target_state(p: Protocol, alpha=None) -> SparseState:
    """``sum alpha_ij |i> psi |j>``; defaults to the Bell coefficients."""
    d = p.dim
    if alpha is None:
        if d != 2:
            raise ValueError("alpha required for d != 2")
        coeff = {(0, 0): INV_SQRT2, (1, 1): INV_SQRT2}
        if p.mode == FLOAT:
            coeff = {k: complex(v) for k, v in coeff.items()}
    else:
        a = np.asarray(alpha, dtype=complex).reshape(d, d)
        coeff = {(i, j): complex(a[i, j]) for i in range(d) for j in range(d) if a[i, j] != 0}
    out = SparseState.zero(p.mode, 2)
    for (i, j), c in coeff.items():
        out = out + tensor_registers((i, j), p.catalyst).scale(c)
    return out


def embezzles_exactly(p: Protocol) -> bool:
    return run_protocol(p).equal(target_state(p))


# state functional ----------------------------------------------------------

def functional_matrix(p: Protocol) -> List[List[object]]:
    """``s[i][j] = <U_i0 V_j0 psi, psi>`` for all register values."""
    psi = p.catalyst
    V0 = [on_resource(p.V(j, 0)) for j in range(p.dim)]
    U0 = [on_resource(p.U(i, 0)) for i in range(p.dim)]
    out = []
    for i in range(p.dim):
        row = []
        for j in range(p.dim):
            row.append(psi.inner(U0[i](V0[j](psi))))
        out.append(row)
    return out


def state_functional(p: Protocol) -> Tuple[object, object, object, object]:
    """``(s00, s10, s01, s11)`` with ``s_ij = <U_i0 V_j0 psi, psi>``."""
    m = functional_matrix(p)
    return (m[0][0], m[1][0], m[0][1], m[1][1])


# checks --------------------------------------------------------------------

@dataclass
class CheckReport:
    name: str
    passed: bool
    checked: int = 0
    witness: Optional[dict] = None
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "checked": self.checked}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.details:
            out["details"] = self.details
        return out


def _same(a: SparseState, b: SparseState, tol: float) -> bool:
    return a.equal(b, tol)


def commutation_check(p: Protocol, seed: int = 42, samples: int = 200,
                      tol: float = EPS_F) -> CheckReport:
    """``U_A U_B = U_B U_A`` on random composite labels, then block-level *-commutation."""
    rng = random.Random(seed)
    UA, UB = p.UA(), p.UB()
    d = p.dim
    checked = 0
    for _ in range(samples):
        lab = CompositeLabel((rng.randrange(d), rng.randrange(d)), p.sample_resource(rng))
        s = SparseState.basis(lab, p.mode)
        checked += 1
        if not _same(UA(UB(s)), UB(UA(s)), tol):
            return CheckReport("commutation", False, checked,
                               {"relation": "UA UB = UB UA", "label": _label_json(lab)})
    blocks_u = {(i, j): on_resource(p.U(i, j)) for i in range(d) for j in range(d)}
    blocks_v = {(k, l): on_resource(p.V(k, l)) for k in range(d) for l in range(d)}
    for _ in range(samples):
        res = p.sample_resource(rng)
        s = SparseState.basis(CompositeLabel((), res), p.mode)
        for (i, j), U in blocks_u.items():
            for (k, l), V in blocks_v.items():
                checked += 1
                if not _same(U(V(s)), V(U(s)), tol):
                    return CheckReport("commutation", False, checked,
                                       {"relation": f"U{i}{j} V{k}{l} = V{k}{l} U{i}{j}",
                                        "label": _label_json(CompositeLabel((), res))})
                if not _same(U.H(V(s)), V(U.H(s)), tol):
                    return CheckReport("commutation", False, checked,
                                       {"relation": f"U{i}{j}* V{k}{l} = V{k}{l} U{i}{j}*",
                                        "label": _label_json(CompositeLabel((), res))})
    return CheckReport("commutation", True, checked)


def find_commutation_witness(p: Protocol, seed: int = 42, samples: int = 200):
    """First sampled composite label where ``U_A U_B != U_B U_A`` (or None)."""
    rep = commutation_check(p, seed, samples)
    return None if rep.passed else rep.witness


def kernel_unitarity_check(kernels: Sequence[Tuple[Kernel, Callable]], seed: int = 42,
                           samples: int = 50, mode: str = EXACT, tol: float = EPS_F) -> CheckReport:
    """Adjoint pairing and ``K K* = K* K = I`` on sampled basis keys.

    ``kernels`` is a list of ``(kernel, key_sampler)`` pairs; kernels act on
    raw keys (resource labels or ``(t, res)`` pairs).
    """
    rng = random.Random(seed)
    checked = 0
    for k, sampler in kernels:
        for _ in range(samples):
            u = sampler(rng)
            ku = k.apply_key(u)
            # pair against every label in the image plus one unrelated sample
            probes = list(ku) + [sampler(rng)]
            for v in probes:
                lhs = ku.get(v, 0)
                rhs = k.H.apply_key(v).get(u, 0)
                checked += 1
                if not _scalar_close(lhs, _conj(rhs), tol):
                    return CheckReport("kernel-unitarity", False, checked,
                                       {"kernel": k.name, "relation": "<Ku,v> = conj<u,K*v>",
                                        "u": repr(u), "v": repr(v)})
            for name, op in (("K*K", k.H @ k), ("KK*", k @ k.H)):
                img = op.apply_key(u)
                checked += 1
                if not (len(img) == 1 and u in img and _scalar_close(img[u], 1, tol)):
                    return CheckReport("kernel-unitarity", False, checked,
                                       {"kernel": k.name, "relation": f"{name} = I", "u": repr(u)})
    return CheckReport("kernel-unitarity", True, checked)


def block_unitarity_check(local: Kernel, res_sampler: Sampler, d: int = 2, seed: int = 42,
                          samples: int = 50, mode: str = EXACT, tol: float = EPS_F) -> CheckReport:
    """The operator-matrix identities ``U*U = I = UU*`` written in blocks, on sampled labels."""
    rng = random.Random(seed)
    U = {(i, j): on_resource(block(local, i, j)) for i in range(d) for j in range(d)}
    checked = 0
    for _ in range(samples):
        res = res_sampler(rng)
        s = SparseState.basis(CompositeLabel((), res), mode)
        for a in range(d):
            for b in range(d):
                # (U*U)_ab = sum_i U_ia* U_ib ; (UU*)_ab = sum_j U_aj U_bj*
                lhs1 = SparseState.zero(mode)
                lhs2 = SparseState.zero(mode)
                for i in range(d):
                    lhs1 = lhs1 + U[(i, a)].H(U[(i, b)](s))
                    lhs2 = lhs2 + U[(a, i)](U[(b, i)].H(s))
                want = s if a == b else SparseState.zero(mode)
                checked += 2
                for rel, got in ((f"(U*U)_{a}{b}", lhs1), (f"(UU*)_{a}{b}", lhs2)):
                    if not got.equal(want, tol):
                        return CheckReport("block-unitarity", False, checked,
                                           {"kernel": local.name, "relation": rel,
                                            "label": _label_json(CompositeLabel((), res))})
    return CheckReport("block-unitarity", True, checked)


@dataclass
class WitnessReport:
    n_max: int
    gram: List[List[object]]
    gram_is_identity: bool
    relations: Dict[str, bool]
    u00_psi_norm2: object
    passed: bool

    def to_json(self) -> dict:
        return {
            "N": self.n_max,
            "gram": [[scalar_to_json(v) for v in row] for row in self.gram],
            "gram_is_identity": self.gram_is_identity,
            "relations": self.relations,
            "u00_psi_norm2": scalar_to_json(self.u00_psi_norm2),
            "passed": self.passed,
        }


def isometry_witness(p: Protocol, N: int = 8, tol: float = EPS_F) -> WitnessReport:
    """Orbit ``e_n = U00*^n psi`` and the relations forcing a non-unitary isometry.

    Checks ``U00^n U00*^n psi = psi``, ``V00*^n psi = (sqrt2 U00)^n psi`` and
    ``V00^n psi = (U00*/sqrt2)^n psi`` for ``n <= N``.  Orthonormality of the
    orbit puts ``psi = e_0`` orthogonal to ``U00*(M)``, and ``||U00 psi||^2 = 1/2``
    shows ``U00`` is not isometric on ``M``.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    exact = p.mode == EXACT
    psi = p.catalyst
    U00, V00 = on_resource(p.U(0, 0)), on_resource(p.V(0, 0))
    U00s, V00s = U00.H, V00.H
    r2 = SQRT2 if exact else complex(SQRT2)
    ir2 = INV_SQRT2 if exact else complex(INV_SQRT2)

    orbit = [psi]
    for _ in range(N):
        orbit.append(U00s(orbit[-1]))
    gram = [[orbit[m].inner(orbit[n]) for n in range(N + 1)] for m in range(N + 1)]
    ident = all(_scalar_close(gram[m][n], 1 if m == n else 0, tol)
                for m in range(N + 1) for n in range(N + 1))

    rel_back, rel_vs, rel_v = True, True, True
    a = b = c = d_ = psi
    for n in range(1, N + 1):
        # U00^n U00*^n psi
        back = orbit[n]
        for _ in range(n):
            back = U00(back)
        rel_back &= back.equal(psi, tol)
        a = V00s(a)
        b = U00(b).scale(r2)
        rel_vs &= a.equal(b, tol)
        c = V00(c)
        d_ = U00s(d_).scale(ir2)
        rel_v &= c.equal(d_, tol)
    relations = {
        "U00^n U00*^n psi = psi": rel_back,
        "V00*^n psi = (sqrt2 U00)^n psi": rel_vs,
        "V00^n psi = (U00*/sqrt2)^n psi": rel_v,
    }
    u00psi = U00(psi).norm2()
    return WitnessReport(N, gram, ident, relations, u00psi,
                         ident and all(relations.values()))


def truncation_residuals(p: Protocol, labels: Sequence[Hashable]) -> Dict[str, float]:
    """Largest violations of the protocol relations after compressing every block to span(labels).

    Returns float residuals for block unitarity, the four embezzlement
    relations and block *-commutation; at least one is nonzero for any finite
    label set.
    """
    index = {lab: i for i, lab in enumerate(labels)}
    n = len(labels)
    d = p.dim

    def dense(k: Kernel) -> np.ndarray:
        m = np.zeros((n, n), dtype=complex)
        for lab, col in index.items():
            for lab2, v in k.forward(lab):
                row = index.get(lab2)
                if row is not None:
                    m[row, col] += complex(v)
        return m

    U = {(i, j): dense(p.U(i, j)) for i in range(d) for j in range(d)}
    V = {(i, j): dense(p.V(i, j)) for i in range(d) for j in range(d)}
    psi = np.zeros(n, dtype=complex)
    for lab, amp in p.catalyst.items():
        psi[index[lab.res]] = complex(amp)
    eye = np.eye(n)
    res_unit = 0.0
    for B in (U, V):
        for a in range(d):
            for b in range(d):
                m1 = sum(B[(i, a)].conj().T @ B[(i, b)] for i in range(d))
                m2 = sum(B[(a, i)] @ B[(b, i)].conj().T for i in range(d))
                want = eye if a == b else 0 * eye
                res_unit = max(res_unit, np.abs(m1 - want).max(), np.abs(m2 - want).max())
    inv = 1 / np.sqrt(2)
    emb = max(np.abs(U[(0, 0)] @ V[(0, 0)] @ psi - inv * psi).max(),
              np.abs(U[(1, 0)] @ V[(1, 0)] @ psi - inv * psi).max(),
              np.abs(U[(0, 0)] @ V[(1, 0)] @ psi).max(),
              np.abs(U[(1, 0)] @ V[(0, 0)] @ psi).max())
    comm = 0.0
    for Ub in U.values():
        for Vb in V.values():
            comm = max(comm, np.abs(Ub @ Vb - Vb @ Ub).max(),
                       np.abs(Ub.conj().T @ Vb - Vb @ Ub.conj().T).max())
    return {"block_unitarity": float(res_unit), "embezzlement": float(emb),
            "star_commutation": float(comm)}


def reachable_labels(p: Protocol, depth: int) -> List[Hashable]:
    """Resource labels reachable from the catalyst by ``depth`` applications of blocks or their adjoints."""
    d = p.dim
    ops = []
    for i in range(d):
        for j in range(d):
            for k in (p.U(i, j), p.V(i, j)):
                ops.extend([k, k.H])
    frontier = {lab.res for lab, _ in p.catalyst.items()}
    seen = set(frontier)
    for _ in range(depth):
        nxt = set()
        for lab in frontier:
            for k in ops:
                for lab2, _ in k.forward(lab):
                    if lab2 not in seen:
                        nxt.add(lab2)
        seen |= nxt
        frontier = nxt
    return sorted(seen)


# helpers -------------------------------------------------------------------

def _conj(v):
    return v.conjugate() if hasattr(v, "conjugate") else v


def _scalar_close(a, b, tol: float) -> bool:
    if isinstance(a, QSqrt2) or isinstance(b, QSqrt2):
        if not isinstance(a, (complex, float)) and not isinstance(b, (complex, float)):
            return QSqrt2.coerce(a) == QSqrt2.coerce(b)
    return abs(complex(a) - complex(b)) <= tol


def _label_json(lab: CompositeLabel) -> dict:
    from .io import label_to_json
    return label_to_json(lab)


def verify(p: Protocol, seed: int = 42, samples: int = 200, N: int = 8,
           bounds: Bounds = Bounds()) -> dict:
    """Aggregate report: commutation, unitarity, exact embezzlement, functional, isometry witness."""
    if p.sampler is not None and p.name in ("explicit", "naive-swap", "identity"):
        p = Protocol(p.alice, p.bob, p.catalyst, p.dim, p.name, dyadic_sampler(p.dim, bounds))
    comm = commutation_check(p, seed, samples)
    unit_a = block_unitarity_check(p.alice, p.sampler, p.dim, seed, min(samples, 50), p.mode)
    unit_b = block_unitarity_check(p.bob, p.sampler, p.dim, seed + 1, min(samples, 50), p.mode)
    emb = embezzles_exactly(p)
    sf = state_functional(p)
    wit = isometry_witness(p, N)
    report = {
        "protocol": p.name,
        "seed": seed,
        "samples": samples,
        "bounds": {"max_r": bounds.max_r, "max_bits": bounds.max_bits},
        "commutation": comm.to_json(),
        "block_unitarity": {"alice": unit_a.to_json(), "bob": unit_b.to_json()},
        "embezzlement_exact": emb,
        "state_functional": [scalar_to_json(v) for v in sf],
        "isometry": wit.to_json(),
    }
    report["passed"] = bool(comm.passed and unit_a.passed and unit_b.passed and emb and wit.passed)
    failures = []
    if not comm.passed:
        failures.append("commutation")
    if not (unit_a.passed and unit_b.passed):
        failures.append("block_unitarity")
    if not emb:
        failures.append("embezzlement_exact")
    if not wit.passed:
        failures.append("isometry")
    report["failures"] = failures
    return report
