import numpy as np
import pytest

from elko_kit import clifford as cl, spinors as sp, equations as eq
from elko_kit.numerics import RealLinearOp


def test_phi_rest_examples():
    assert np.allclose(sp.phi_rest((0, 0, 1.0), 1.0, 1), [1, 0])
    assert np.allclose(sp.phi_rest((0, 0, 1.0), 1.0, -1), [0, -1])


def test_phi_rest_orthogonal_helicity_eigen(momenta):
    a, b = sp.phi_rest(momenta, 2.0, 1), sp.phi_rest(momenta, 2.0, -1)
    assert np.abs(np.sum(a.conj() * b, -1)).max() < 1e-14
    n = momenta / np.linalg.norm(momenta, axis=-1, keepdims=True)
    sn = np.einsum("na,aij->nij", n, np.array(cl.PAULI))
    for nu, phi in ((1, a), (-1, b)):
        assert np.allclose(np.einsum("nij,nj->ni", sn, phi), nu * phi)
        assert np.allclose(np.sum(abs(phi) ** 2, -1), 2.0)


def test_angles_round_trip(momenta):
    th, ph = sp.angles(momenta)
    n = np.linalg.norm(momenta, axis=-1)
    rec = n[:, None] * np.stack([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)], -1)
    assert np.allclose(rec, momenta, rtol=1e-13, atol=1e-13)


def test_elko_numeric_example():
    # m = 1, p along z: factor sqrt(E+m) (1 + nu/(E+m)) times lambda
    E = np.sqrt(2.0)
    for nu in (1, -1):
        f = np.sqrt(E + 1) * (1 + nu / (E + 1))
        phi = np.array([1, 0]) if nu > 0 else np.array([0, -1])
        lam = np.concatenate([cl.PAULI[1] @ phi.conj(), phi])
        assert np.allclose(sp.elko((0, 0, 1.0), 1.0, 1, nu), f * lam)


def test_elko_eigenrelations(momenta):
    C = cl.charge_conjugation()
    s = RealLinearOp.linear(cl.sigma_p(momenta))
    for e, n in sp.LABELS:
        psi = sp.elko(momenta, 1.0, e, n)
        assert np.allclose(C.apply(psi), e * psi, atol=1e-12)
        assert np.allclose(s.apply(psi), n * psi, atol=1e-11 * np.abs(psi).max())


def test_elko_continuous_at_rest():
    d = np.array([0.3, -0.5, 0.8]) / np.linalg.norm([0.3, -0.5, 0.8])
    at0 = np.sqrt(2.0) * sp.lam(d, 1.0, 1, 1)
    for t in (1e-3, 1e-4, 1e-5):
        assert np.abs(sp.elko(t * d, 1.0, 1, 1) - at0).max() < 3 * t


def test_elko_rejects_tiny_momentum():
    with pytest.raises(cl.DegenerateMomentum):
        sp.elko((0, 0, 1e-13), 1.0, 1, 1)


def test_projector_algebra(momenta):
    P = {l: sp.projector(*l, momenta) for l in sp.LABELS}
    total = None
    for l in sp.LABELS:
        total = P[l] if total is None else total + P[l]
        for l2 in sp.LABELS:
            prod = P[l] @ P[l2]
            if l == l2:
                assert (prod - P[l]).norm() < 1e-13
            else:
                assert prod.norm() < 1e-13
    assert (total - RealLinearOp.identity()).norm() < 1e-13


def test_u_transform(momenta):
    q = cl.components(momenta)
    U, Ui = sp.u_transform(q)
    I = RealLinearOp.identity()
    assert (U @ Ui - I).norm() < 1e-13 and (Ui @ U - I).norm() < 1e-13
    assert (U @ U.adjoint() - I).norm() < 1e-13
    h = sp.helicity_matrix(q)
    assert (U @ cl.charge_conjugation() @ Ui - RealLinearOp.linear(-h)).norm() < 1e-12
    g5 = cl.build_basis().gamma5
    assert (U @ RealLinearOp.linear(cl.sigma_p(q)) @ Ui - RealLinearOp.linear(g5 @ h)).norm() < 1e-12


def test_dirac_counterparts(momenta):
    h = sp.helicity_matrix(momenta)
    g5 = cl.build_basis().gamma5
    for e, n in sp.LABELS:
        d = sp.dirac_counterpart(momenta, 1.0, e, n)
        assert np.allclose(np.einsum("nij,nj->ni", h, d), -e * d, atol=1e-11)
        assert np.allclose(d @ g5.T, -n * e * d, atol=1e-11)
    for e in (1, -1):
        d = sp.dirac_solution(momenta, 1.0, e)
        assert eq.residual_dirac(d, momenta, 1.0).max() < 1e-12
    # a single label is a chirality eigenvector and cannot solve the massive equation
    assert eq.residual_dirac(sp.dirac_counterpart(momenta, 1.0, 1, 1), momenta, 1.0).min() > 0.1


def test_lambda_names_and_json():
    assert sp.LAMBDA_NAMES[("S", "-+")] == (1, 1)
    psi = sp.elko((0.1, 0.2, 0.3), 1.0, -1, 1)
    obj = sp.spinor_to_json(psi, (0.1, 0.2, 0.3), 1.0, -1, 1)
    back, p, m, e, n = sp.spinor_from_json(obj)
    assert np.array_equal(back, psi) and (e, n) == (-1, 1)


def test_elko_linearly_independent(momenta):
    stack = np.stack([sp.elko(momenta, 1.0, *l) for l in sp.LABELS], -1)
    s = np.linalg.svd(stack, compute_uv=False)
    assert np.all(s[:, -1] >= 1e-6 * s[:, 0])


def test_projector_on_solution_gives_labelled_spinor(rng, momenta):
    from elko_kit import boosts as bo
    psi = sum(bo.solution_quad(rng, momenta, 1.0).values())
    C = cl.charge_conjugation()
    s = RealLinearOp.linear(cl.sigma_p(momenta))
    for e, n in sp.LABELS:
        v = sp.projector(e, n, momenta).apply(psi)
        scale = np.abs(psi).max()
        assert np.abs(C.apply(v) - e * v).max() <= 1e-12 * scale
        assert np.abs(s.apply(v) - n * v).max() <= 1e-11 * scale
