import numpy as np
import pytest

from elko_kit import clifford as cl, spinors as sp, equations as eq, boosts as bo
from elko_kit.numerics import RealLinearOp


def test_system1_on_elko(momenta):
    quad = sp.elko_quad(momenta, 1.3)
    assert eq.residual_system1(quad, momenta, 1.3).max() < 1e-11
    zero = {l: np.zeros((len(momenta), 4), complex) for l in sp.LABELS}
    assert eq.residual_system1(zero, momenta, 1.3).max() == 0


def test_system1_rejects_dirac_spinors(momenta):
    quad = {l: sp.dirac_solution(momenta, 1.0, l[0]) for l in sp.LABELS}
    assert eq.residual_system1(quad, momenta, 1.0).max(0).min() > 0.1


def test_compact_equation(momenta):
    quad = sp.elko_quad(momenta, 1.0)
    assert eq.residual_compact(sum(quad.values()), momenta, 1.0).max() < 1e-11
    assert eq.residual_compact(quad[(1, 1)], momenta, 1.0).min() > 1e-3
    assert eq.residual_compact(np.zeros(4, complex), (0.1, 0.2, 0.3), 1.0) == 0


def test_compact_equivalence_both_directions(rng, momenta):
    sol = sum(bo.solution_quad(rng, momenta, 1.0).values())
    bad = rng.normal(size=sol.shape) + 1j * rng.normal(size=sol.shape)
    for psi in (sol, bad):
        a = eq.residual_compact(psi, momenta, 1.0) <= 1e-10
        b = eq.residual_system1(sp.project(psi, momenta, 1.0), momenta, 1.0).max(0) <= 4e-10
        assert np.array_equal(a, b)
    assert np.all(eq.residual_compact(sol, momenta, 1.0) <= 1e-10)
    assert not np.any(eq.residual_compact(bad, momenta, 1.0) <= 1e-10)


def test_sixteen_component_form(momenta):
    G = eq.gamma16()
    for mu in range(4):
        for nu in range(4):
            assert np.array_equal(G[mu] @ G[nu] + G[nu] @ G[mu], 2 * cl.METRIC[mu, nu] * np.eye(16))
    Psi = eq.stack16(sp.elko_quad(momenta, 1.0))
    assert eq.residual_16(Psi, momenta, 1.0).max() < 1e-11
    assert eq.residual_16(np.zeros(16, complex), (0, 0, 1.0), 1.0).max() == 0


def test_hamiltonian(momenta):
    q = cl.components(momenta)
    H = eq.hamiltonian_elko(q)
    E2 = np.sum(momenta ** 2, -1) + 1
    assert (H @ H - RealLinearOp.identity().scale(E2)).norm() <= 1e-12 * E2.max()
    U, Ui = sp.u_transform(q)
    HD = RealLinearOp.linear(eq.hamiltonian_dirac(q))
    assert (U @ H @ Ui - HD).norm() <= 1e-12 * np.sqrt(E2.max())
    psi = sum(sp.elko_quad(momenta, 1.0).values())
    assert np.allclose(H.apply(psi), np.sqrt(E2)[:, None] * psi, rtol=1e-11, atol=1e-11 * np.abs(psi).max())


def test_block_decomposition(rng):
    for _ in range(20):
        p = rng.normal(size=3) * 3
        H = eq.hamiltonian_elko(p, 1.0)
        assert eq.commutes_with_gamma5(H)
        hp, hm = eq.block_decompose(H)
        assert (eq.block_assemble(hp, hm) - H).norm() < 1e-13
        assert (hp - eq.block_formula(p, 1.0, 1)).norm() < 1e-13
        assert (hm - eq.block_formula(p, 1.0, -1)).norm() < 1e-13
    with pytest.raises(eq.DecompositionError):
        eq.block_decompose(RealLinearOp.linear(eq.hamiltonian_dirac((0.1, 0.2, 0.3), 1.0)))


def test_projector_intertwining(momenta):
    r1, r2 = eq.intertwining(momenta, 1.0)
    assert r1.max() <= 1e-12 and r2.max() <= 1e-12
    _, printed = eq.intertwining(momenta, 1.0, phase_sign=1)
    assert printed.min() > 1.0
