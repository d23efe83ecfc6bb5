import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from elko_kit import clifford as cl
from elko_kit.numerics import RealLinearOp

b = cl.build_basis()


def test_anticommutators_exact():
    for mu in range(4):
        for nu in range(4):
            ac = b.gamma[mu] @ b.gamma[nu] + b.gamma[nu] @ b.gamma[mu]
            assert np.array_equal(ac, 2 * cl.METRIC[mu, nu] * np.eye(4))


def test_gamma5_properties():
    g5 = b.gamma5
    assert np.allclose(g5, 1j * b.gamma[0] @ b.gamma[1] @ b.gamma[2] @ b.gamma[3])
    assert np.allclose(g5 @ g5, np.eye(4))
    assert np.allclose(g5, np.diag(np.diag(g5))) and np.allclose(g5, g5.conj().T)


def test_gamma5_calibration_frozen():
    assert b.gamma5_diag == (-1, -1, 1, 1)
    assert cl.gamma5_convention() == "diag(-1,-1,+1,+1)"


def test_slash_examples():
    assert np.allclose(cl.slash((0.0, 0.0, 0.0), 1.0), b.gamma[0])
    s = cl.slash((0.3, -0.2, 0.9), 1.7)
    assert np.allclose(s @ s, 1.7 ** 2 * np.eye(4))
    ev = np.sort(np.linalg.eigvals(cl.slash((0.0, 0.0, 1.0), 1.0)).real)
    assert np.allclose(ev, [-1, -1, 1, 1])


def test_sigma_p_along_z():
    s = cl.sigma_p((0.0, 0.0, 1.0))
    assert np.allclose(s, b.gamma5 @ np.kron(np.eye(2), cl.PAULI[2]))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-50, 50), min_size=3, max_size=3).filter(
    lambda v: np.linalg.norm(v) > 1e-3))
def test_sigma_p_properties(v):
    s = cl.sigma_p(tuple(v))
    assert np.allclose(s @ s, np.eye(4), atol=1e-13)
    assert np.allclose(s, s.conj().T)
    assert np.allclose(cl.sigma_p(tuple(2 * np.array(v))), s)
    C, S = cl.charge_conjugation(), RealLinearOp.linear(s)
    assert (C @ S - S @ C).norm() < 1e-13


def test_sigma_p_rejects_degenerate_momentum():
    with pytest.raises(cl.DegenerateMomentum):
        cl.sigma_p((0.0, 0.0, 1e-13))


def test_discrete_ops():
    ops = cl.discrete_ops()
    C, P, T = ops["C"][0], ops["P"][0], ops["T"][0]
    assert (C @ C - RealLinearOp.identity()).norm() == 0
    assert np.allclose(P.A @ P.A, np.eye(4))
    assert (T @ T + RealLinearOp.identity()).norm() == 0  # T^2 = -1, recorded in reports
    assert ops["P"][1] == "flip p" and ops["T"][1] == "flip p0"


def test_spin_algebra_closes():
    S, G = b.S, cl.METRIC
    for mu, nu, la, si in np.ndindex(4, 4, 4, 4):
        lhs = S[mu, nu] @ S[la, si] - S[la, si] @ S[mu, nu]
        rhs = (G[nu, la] * S[mu, si] - G[mu, la] * S[nu, si]
               - G[nu, si] * S[mu, la] + G[mu, si] * S[nu, la])
        assert np.abs(lhs - rhs).max() < 1e-13


def test_rotation_spinor_covariance(rng):
    for _ in range(10):
        r = rng.normal(size=3)
        p = rng.normal(size=3)
        S, R = cl.rotation_spinor(r), cl.rotation_matrix(r)
        assert np.allclose(S @ cl.sigma_p(p) @ np.linalg.inv(S), cl.sigma_p(R @ p), atol=1e-13)
        C = cl.charge_conjugation()
        SO = RealLinearOp.linear(S)
        assert (SO @ C - C @ SO).norm() < 1e-13
