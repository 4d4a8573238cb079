"""Acceptance criteria, one test each, at the stated tolerances and time limits.

Every test records a ``criterion N: PASS|FAIL`` line (printed in the pytest
terminal summary) before asserting, so a failing criterion still reports
which of its parts broke.
"""
import math
import random
import time

import numpy as np
from conftest import ACCEPTANCE_LINES
from oracles import vdh_dense

from embezzle.basis import CompositeLabel
from embezzle.cli import main
from embezzle.construction import exact_construction
from embezzle.exact_scalar import INV_SQRT2, ZERO
from embezzle.games import embezzled_factor, perfect_strategy, play, reduction_output, vdh_strategy
from embezzle.kernel import on_resource
from embezzle.linalg import (
    DenseState, apply_local, polar_decompose, random_unitary, schmidt_coefficients,
    schmidt_invariance_demo,
)
from embezzle.protocol import (
    Bounds, commutation_check, dyadic_sampler, explicit_protocol, extract_block, functional_matrix,
    general_protocol, isometry_witness, kernel_unitarity_check, run_protocol, state_functional,
    target_state,
)
from embezzle.sparse_state import SparseState
from embezzle.vdh import doubling, functional_deviations, is_nondecreasing, vdh_fidelity


def record(n, parts, elapsed=None):
    ok = all(parts.values())
    failed = [k for k, v in parts.items() if not v]
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}"
    if elapsed is not None:
        line += f" ({elapsed:.2f} s)"
    if failed:
        line += " failed: " + ", ".join(failed)
    ACCEPTANCE_LINES[n] = line
    print(line)
    assert ok, line


def test_criterion_01_exact_embezzlement():
    t = time.perf_counter()
    p = explicit_protocol()
    out = run_protocol(p)
    elapsed = time.perf_counter() - t
    want = SparseState([(CompositeLabel((t_, t_), lab.res), v * INV_SQRT2)
                        for t_ in (0, 1) for lab, v in p.catalyst], arity=2)
    record(1, {
        "exact Bell output": out == want == target_state(p),
        "amplitudes (0,1/2)": all(v == INV_SQRT2 for _, v in out),
        "runtime < 1 s": elapsed < 1.0,
    }, elapsed)


def test_criterion_02_commutation():
    t = time.perf_counter()
    rep = commutation_check(explicit_protocol(), seed=42, samples=200)
    elapsed = time.perf_counter() - t
    record(2, {"UA UB = UB UA and block *-commutation": rep.passed,
               "runtime < 10 s": elapsed < 10.0}, elapsed)


def test_criterion_03_unitarity():
    K = exact_construction()
    res = dyadic_sampler(2, Bounds(8, 8))
    # C fans out to 2^|r| terms and the literal C* SA~ C to 4^|r|, so those two use |r| <= 3
    res_small = dyadic_sampler(2, Bounds(3, 8))
    local = lambda rng: (rng.randrange(2), res(rng))
    local_small = lambda rng: (rng.randrange(2), res_small(rng))
    kernels = [(getattr(K, n), res) for n in ("L1", "L2", "L", "LA", "LB")] + [(K.C, res_small)]
    kernels += [(getattr(K, n), local) for n in ("SB", "SA_naive", "SA", "UA", "UB")]
    kernels.append((K.SA_conjugated, local_small))
    rep = kernel_unitarity_check(kernels, seed=42, samples=30)

    U00 = on_resource(extract_block(K.UA, 0, 0, "A"))
    U10 = on_resource(extract_block(K.UA, 1, 0, "A"))
    rng = random.Random(42)
    column = True
    for _ in range(100):
        s = SparseState.basis(CompositeLabel((), res(rng)))
        column &= U00.H(U00(s)) + U10.H(U10(s)) == s
    record(3, {"adjoint pairing and KK* = K*K = I": rep.passed,
               "U00*U00 + U10*U10 = I": column})


def test_criterion_04_state_functional():
    s = state_functional(explicit_protocol())
    record(4, {"(1/sqrt2, 0, 0, 1/sqrt2) exactly": s == (INV_SQRT2, ZERO, ZERO, INV_SQRT2)})


def test_criterion_05_isometry_witness():
    rep = isometry_witness(explicit_protocol(), 8)
    parts = {"9x9 Gram is identity": rep.gram_is_identity and len(rep.gram) == 9}
    parts.update(rep.relations)
    record(5, parts)


def test_criterion_06_vdh_sweep():
    t = time.perf_counter()
    ns = doubling(1, 4096)
    fid = [vdh_fidelity(n) for n in ns]
    d256, d4096 = functional_deviations(256), functional_deviations(4096)
    elapsed = time.perf_counter() - t
    record(6, {
        "fidelity(1) = 1/sqrt2 +- 1e-12 (dense oracle)":
            abs(fid[0] - 1 / math.sqrt(2)) < 1e-12 and abs(fid[0] - vdh_dense(1)[0]) < 1e-12,
        "fidelity(2) = 0.804737... +- 1e-9 (dense oracle)":
            abs(fid[1] - vdh_dense(2)[0]) < 1e-9 and abs(fid[1] - 0.8047378541243653) < 1e-9,
        "nondecreasing for k <= 12": is_nondecreasing(fid),
        "< 1 for k <= 12": all(f < 1 for f in fid),
        # s10 and s01 are identically 0 for this construction, so strict decrease is impossible
        "all four deviations smaller at 4096 than 256": all(b < a for a, b in zip(d256, d4096)),
        "runtime < 60 s": elapsed < 60.0,
    }, elapsed)


def test_criterion_07_schmidt_suite():
    rng = np.random.default_rng(42)
    bell = DenseState((2, 2), np.array([1, 0, 0, 1]) / math.sqrt(2))
    rnd = rng.standard_normal(12) + 1j * rng.standard_normal(12)
    states = [bell, DenseState((3, 4), rnd / np.linalg.norm(rnd))]
    invariant = True
    for s in states:
        for _ in range(20):
            u, v = random_unitary(s.dims[0], rng), random_unitary(s.dims[1], rng)
            invariant &= schmidt_invariance_demo(s, [0], u, v).max_difference < 1e-9
    s = states[1]
    a = schmidt_coefficients(apply_local(s, [0], random_unitary(3, rng), random_unitary(4, rng)), [0])
    b = schmidt_coefficients(apply_local(s, [0], random_unitary(3, rng), random_unitary(4, rng)), [0])
    polar = True
    for n in (4, 8):
        x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        w, p = polar_decompose(x)
        polar &= np.abs(w @ p - x).max() < 1e-9
    record(7, {
        "Bell -> (1/sqrt2, 1/sqrt2)": np.allclose(schmidt_coefficients(bell, [0]), [1 / math.sqrt(2)] * 2,
                                                  atol=1e-9, rtol=0),
        "invariant under 20 local-unitary pairs": invariant,
        "unique across two bases": np.allclose(a, b, atol=1e-9, rtol=0),
        "polar residual < 1e-9 on 4x4, 8x8": polar,
    })


def test_criterion_08_games():
    st = perfect_strategy()
    wins = [complex(play(vdh_strategy(n), 0).win_probability).real for n in doubling(1, 1024)]
    record(8, {
        "perfect wins with probability 1 exactly": all(play(st, c).win_probability == 1 for c in (0, 1)),
        "reduction reproduces exact embezzlement":
            embezzled_factor(reduction_output(st)) == run_protocol(explicit_protocol()),
        "vdH win < 1 for k <= 10": all(w < 1 for w in wins),
        "vdH win nondecreasing for k <= 10": is_nondecreasing(wins),
    })


def test_criterion_09_d_dimensional():
    a = [math.sqrt(1 / 3), 0, 0, math.sqrt(2 / 3)]
    s00, s10, s01, s11 = state_functional(general_protocol(2, a))
    # alpha is row-major in (i, j) while the functional lists s00, s10, s01, s11
    got2 = np.array([s00, s01, s10, s11], dtype=complex)
    m3 = np.array(functional_matrix(general_protocol(3, np.full(9, 1 / 3))), dtype=complex)
    record(9, {
        "d = 2 functional matches alpha within 1e-9": np.abs(got2 - a).max() < 1e-9,
        "d = 3 uniform functional matches within 1e-9": np.abs(m3 - 1 / 3).max() < 1e-9,
    })


def test_criterion_10_reproducible_verify(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    codes = (main(["verify", "--out", str(a)]), main(["verify", "--out", str(b)]))
    record(10, {"verify exits 0": codes == (0, 0),
                "byte-identical reports": a.read_bytes() == b.read_bytes()})
