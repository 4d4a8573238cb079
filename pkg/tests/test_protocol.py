import math
import random

import numpy as np
import pytest

from embezzle.basis import CompositeLabel
from embezzle.construction import Construction, exact_construction
from embezzle.exact_scalar import HALF, INV_SQRT2, ONE, ZERO
from embezzle.kernel import local_from_resource, on_resource
from embezzle.protocol import (
    Bounds, Protocol, block_unitarity_check, commutation_check, dyadic_sampler, embezzles_exactly,
    explicit_protocol, extract_block, find_commutation_witness, general_protocol, identity_protocol,
    isometry_witness, kernel_unitarity_check, naive_swap_protocol, reachable_labels, run_protocol,
    state_functional, target_state, truncation_residuals, verify,
)
from embezzle.sparse_state import SparseState

K = exact_construction()
RES = dyadic_sampler(2, Bounds(8, 8))
# C expands a label into up to 2^|r| terms and the literal C* SA~ C into 4^|r|
RES_SMALL_R = dyadic_sampler(2, Bounds(3, 8))


def LOCAL(rng):
    return (rng.randrange(2), RES(rng))


def LOCAL_SMALL_R(rng):
    return (rng.randrange(2), RES_SMALL_R(rng))


def test_run_protocol_is_exact_bell():
    p = explicit_protocol()
    out = run_protocol(p)
    assert out == target_state(p)
    assert len(out) == 2 and all(v == INV_SQRT2 for _, v in out)


def test_catalyst_restored_in_each_branch():
    p = explicit_protocol()
    out = run_protocol(p)
    for t in (0, 1):
        branch = out.project(0, t).project(1, t).drop_registers(())
        assert branch == p.catalyst.scale(INV_SQRT2)


def test_commutation_passes_explicit_and_identity():
    assert commutation_check(explicit_protocol(), seed=42, samples=200).passed
    assert commutation_check(identity_protocol(), seed=42, samples=50).passed


def test_naive_swap_fails_with_witness():
    rep = commutation_check(naive_swap_protocol(), seed=42, samples=200)
    assert not rep.passed
    assert rep.witness["relation"] == "UA UB = UB UA"
    w = find_commutation_witness(naive_swap_protocol(), seed=42, samples=200)
    assert w == rep.witness and "label" in w


def test_reverse_order_swap_fails_commutation():
    UA = K.SA_reverse_order @ local_from_resource(K.LA)
    p = Protocol(UA, K.UB, K.catalyst(), 2, "reverse-order", RES)
    assert not commutation_check(p, seed=1, samples=50).passed


def test_all_kernels_unitary_with_adjoint_pairing():
    resource = [(getattr(K, n), RES) for n in ("L1", "L2", "L", "LA", "LB")] + [(K.C, RES_SMALL_R)]
    local = [(getattr(K, n), LOCAL) for n in ("SB", "SA_naive", "SA", "UA", "UB")]
    local.append((K.SA_conjugated, LOCAL_SMALL_R))
    rep = kernel_unitarity_check(resource + local, seed=42, samples=30)
    assert rep.passed, rep.witness


def test_kernel_unitarity_catches_non_unitary():
    from embezzle.kernel import Kernel
    proj = Kernel(lambda lab: [(lab, ONE)] if lab.r == 0 else [], lambda lab: [(lab, ONE)] if lab.r == 0 else [])
    assert not kernel_unitarity_check([(proj, RES)], seed=0, samples=20).passed


def test_isometry_on_sampled_states():
    rng = random.Random(9)
    for name in ("L", "LB", "C"):
        k = on_resource(getattr(K, name))
        for _ in range(10):
            s = SparseState.basis(CompositeLabel((), RES_SMALL_R(rng)))
            s = s + k(s)
            assert k(s).norm2() == s.norm2()
            assert k.H(k(s)) == s and k(k.H(s)) == s


def test_block_unitarity_relations():
    for local in (K.UA, K.UB):
        assert block_unitarity_check(local, RES, 2, seed=3, samples=30).passed


def test_u00_u10_column_identity():
    # U00* U00 + U10* U10 = I, written out directly
    U00 = on_resource(extract_block(K.UA, 0, 0, "A"))
    U10 = on_resource(extract_block(K.UA, 1, 0, "A"))
    rng = random.Random(4)
    for _ in range(50):
        s = SparseState.basis(CompositeLabel((), RES(rng)))
        assert U00.H(U00(s)) + U10.H(U10(s)) == s


def test_extract_block_names_and_errors():
    assert extract_block(K.UB, 1, 0, "B").name == "V10"
    with pytest.raises(ValueError):
        extract_block(K.UB, 1, 0, "C")


def test_state_functional_exact():
    assert state_functional(explicit_protocol()) == (INV_SQRT2, ZERO, ZERO, INV_SQRT2)


def test_state_functional_identity():
    assert state_functional(identity_protocol()) == (ONE, 0, 0, 0)


def test_u00_v00_functional():
    p = explicit_protocol()
    U00, V00 = on_resource(p.U(0, 0)), on_resource(p.V(0, 0))
    assert p.catalyst.inner(U00(V00(p.catalyst))) == INV_SQRT2


def test_isometry_witness_exact():
    rep = isometry_witness(explicit_protocol(), 8)
    assert rep.passed and rep.gram_is_identity
    assert all(rep.relations.values())
    assert rep.u00_psi_norm2 == HALF
    assert all(rep.gram[m][n] == (ONE if m == n else ZERO) for m in range(9) for n in range(9))


def test_orbit_norms_are_one():
    p = explicit_protocol()
    U00s = on_resource(p.U(0, 0)).H
    s = p.catalyst
    for _ in range(8):
        s = U00s(s)
        assert s.norm2() == ONE


def test_truncations_violate_relations():
    p = explicit_protocol()
    for depth in (1, 2, 3):
        res = truncation_residuals(p, reachable_labels(p, depth))
        assert max(res.values()) > 1e-3


def test_truncation_of_exact_unitary_is_clean():
    # sanity for the residual code: a finite permutation protocol has no unitarity defect
    from embezzle.vdh import vdh_as_protocol
    p = vdh_as_protocol(4)
    labels = [(i, j) for i in range(1, 5) for j in range(1, 5)]
    assert truncation_residuals(p, labels)["block_unitarity"] < 1e-12


def test_general_protocol_bell_matches_exact():
    p = general_protocol(2, [INV_SQRT2, 0, 0, INV_SQRT2])
    got = state_functional(p)
    want = state_functional(explicit_protocol())
    assert all(abs(complex(a) - complex(b)) < 1e-9 for a, b in zip(got, want))
    assert run_protocol(p).equal(run_protocol(explicit_protocol()).to_float())


def test_general_protocol_unbalanced():
    a = [math.sqrt(1 / 3), 0, 0, math.sqrt(2 / 3)]
    p = general_protocol(2, a)
    s00, s10, s01, s11 = state_functional(p)
    assert np.allclose([s00, s10, s01, s11], [a[0], a[2], a[1], a[3]], atol=1e-9)
    assert run_protocol(p).equal(target_state(p, a))
    assert commutation_check(p, seed=2, samples=50).passed


def test_general_protocol_d3_uniform():
    alpha = np.full(9, 1 / 3)
    p = general_protocol(3, alpha)
    from embezzle.protocol import functional_matrix
    m = np.array(functional_matrix(p), dtype=complex)
    assert np.allclose(m, alpha.reshape(3, 3), atol=1e-9)
    assert run_protocol(p).equal(target_state(p, alpha))


def test_general_protocol_rejects_unnormalised():
    with pytest.raises(ValueError):
        general_protocol(2, [1, 1, 0, 0])
    with pytest.raises(ValueError):
        general_protocol(1, [1])


def test_embezzles_exactly_flags():
    assert embezzles_exactly(explicit_protocol())
    assert not embezzles_exactly(identity_protocol())


def test_verify_reports():
    rep = verify(explicit_protocol(), samples=40)
    assert rep["passed"] and rep["failures"] == []
    ident = verify(identity_protocol(), samples=40)
    assert ident["commutation"]["passed"] and "commutation" not in ident["failures"]
    assert "embezzlement_exact" in ident["failures"]
    bad = verify(naive_swap_protocol(), samples=40)
    assert "commutation" in bad["failures"]
    assert bad["commutation"]["witness"]["label"]["regs"] is not None


def test_float_protocol_commutes():
    p = explicit_protocol("float")
    assert commutation_check(p, seed=5, samples=60).passed
    assert p.catalyst.mode == "float"
    assert isinstance(Construction(2, None, "float").one, complex)
