import numpy as np
import pytest

from elko_kit import clifford as cl, spinors as sp, poincare as pc


@pytest.fixture(scope="module")
def setup():
    rng = np.random.default_rng(7)
    p = pc.sample_momenta(rng, 20, 1.0)
    return rng, p


def test_structure_constants():
    assert pc.structure("P1", "J12") == {"P2": -1.0}
    assert pc.structure("J12", "J23") == {"J13": -1.0}
    assert pc.structure("J01", "J02") == {"J12": -1.0}
    assert pc.structure("P0", "J01") == {"P1": 1.0}
    assert pc.structure("P1", "J01") == {"P0": 1.0}
    assert pc.structure("P1", "P2") == {}
    for x in pc.NAMES:
        for y in pc.NAMES:
            back = pc.structure(y, x)
            assert pc.structure(x, y) == {k: -v for k, v in back.items()}


@pytest.mark.parametrize("sign", [1, -1])
@pytest.mark.parametrize("which", ["dirac", "elko"])
def test_algebra_closes(setup, which, sign):
    rng, p = setup
    gens = pc.gen_dirac(1.0, sign) if which == "dirac" else pc.gen_elko(1.0, sign)
    H = pc.dirac_H(1.0) if which == "dirac" else pc.elko_H(1.0)
    tab = pc.verify_poincare_algebra(gens, m=1.0, n_fields=3, H_of_q=H, sign=sign, rng=rng, p=p)
    assert len(tab) == 45
    assert max(t.max_residual for t in tab) <= 1e-7
    assert all(t.samples_failed == 0 for t in tab)


def test_algebra_controls(setup):
    rng, p = setup
    bad = pc.verify_poincare_algebra(pc.gen_elko(1.0, 1, ("J01", 1.01)), m=1.0,
                                     H_of_q=pc.elko_H(1.0), rng=rng, p=p)
    assert max(t.max_residual for t in bad) > 1e-3
    raw = pc.verify_poincare_algebra(pc.gen_elko(1.0), m=1.0, rng=rng, p=p)
    assert max(t.max_residual for t in raw) > 1e-3


def test_generator_identities(setup):
    rng, p = setup
    fd = [pc.energy_projected(pc.random_test_field(rng, p, 1.0), pc.dirac_H(1.0), 1.0)]
    fe = [pc.energy_projected(pc.random_test_field(rng, p, 1.0), pc.elko_H(1.0), 1.0)]
    fr = [pc.random_test_field(rng, p, 1.0)]
    gd, gs = pc.gen_dirac(1.0), pc.gen_boost_solutionform(1.0)
    ge, g14 = pc.gen_elko(1.0), pc.gen_elko_boost_14a(1.0)
    for a in (1, 2, 3):
        k = f"J0{a}"
        assert pc.operator_difference(gd[k], gs[k], fd, p) <= 1e-8
        assert pc.operator_difference(ge[k], g14[k], fe, p) <= 1e-8
        assert pc.operator_difference(gd[k], gs[k], fr, p) > 1e-3
        assert pc.operator_difference(ge[k], g14[k], fr, p) > 1e-3
    gk, gkc = pc.gen_k(1.0), pc.gen_k_conjugated(1.0)
    for a in (1, 2, 3):
        assert pc.operator_difference(gk[f"K{a}"], gkc[f"K{a}"], fr, p) <= 1e-10


def test_conjugated_spin(setup):
    _, p = setup
    q = cl.components(p)
    U, Ui = sp.u_transform(q)
    from elko_kit.numerics import RealLinearOp
    for a in (1, 2, 3):
        d = Ui @ RealLinearOp.linear(cl.spin(0, a)) @ U - pc.s_hat(q, a)
        assert d.norm() <= 1e-10


def test_energy_projection_is_eigenvector(setup):
    rng, p = setup
    f = pc.random_test_field(rng, p, 1.0)
    g = pc.energy_projected(f, pc.elko_H(1.0), 1.0)
    q = cl.components(p)
    v = g(q)
    E = np.sqrt(np.sum(p * p, -1) + 1.0)
    Hv = pc.elko_H(1.0)(q).apply(v)
    assert np.abs(Hv - E[:, None] * v).max() <= 1e-10 * np.abs(E[:, None] * v).max()


def test_label_entries(setup):
    rng, p = setup
    f = pc.random_test_field(rng, p, 1.0)
    worst, lit = 0.0, 0.0
    for a in (1, 2, 3):
        d = pc.act_direct(f, p, a)
        e = pc.act_via_entries(f, p, a)
        el = pc.act_via_entries(f, p, a, entries=pc.boost_entries_literal)
        for l in sp.LABELS:
            s = np.abs(d[l]).max(-1)
            worst = max(worst, float(np.max(np.abs(e[l] - d[l]).max(-1) / s)))
            lit = max(lit, float(np.max(np.abs(el[l] - d[l]).max(-1) / s)))
    assert worst <= 1e-10
    assert lit > 1e-3


def test_lambda_identities(setup):
    _, p = setup
    L = pc.lambda_matrix(p)
    M = pc.m_block()
    assert np.abs(L @ L - M).max() <= 1e-12
    assert np.abs(L @ L @ L - L).max() <= 1e-12
    assert np.allclose(M @ M, M)


def test_rotations_shared_between_realizations(setup):
    rng, p = setup
    fr = [pc.random_test_field(rng, p, 1.0)]
    gd, ge = pc.gen_dirac(1.0), pc.gen_elko(1.0)
    for k in ("J12", "J13", "J23", "P1", "P2", "P3"):
        assert pc.operator_difference(gd[k], ge[k], fr, p) <= 1e-12


def test_antilinear_part_is_detected(setup):
    from elko_kit.numerics import mul
    rng, p = setup
    f = pc.random_test_field(rng, p, 1.0)
    g = lambda q: mul(1j, f(q))
    q = cl.components(p)
    G = pc.gen_elko(1.0)["J01"]
    a, b = G(g)(q), 1j * G(f)(q)
    assert np.abs(a - b).max() > 1e-3 * np.abs(b).max()
    D = pc.gen_dirac(1.0)["J01"]
    assert np.allclose(D(g)(q), 1j * D(f)(q), rtol=1e-12, atol=1e-12 * np.abs(b).max())


def test_algebra_residuals_scale_free(setup):
    from dataclasses import replace
    _, p = setup
    worst = []
    for amp in (1e-3, 1.0, 1e3):
        r = np.random.default_rng(99)
        f = replace(pc.random_test_field(r, p, 1.0), amplitude=amp)
        tab = pc.commutator_table(pc.gen_elko(1.0),
                                  [pc.energy_projected(f, pc.elko_H(1.0), 1.0)], p)
        worst.append(max(t.max_residual for t in tab))
    assert max(worst) <= 10 * max(min(worst), 1e-16)


def test_entries_rotation_covariance(setup):
    from elko_kit.numerics import add, mul, matvec
    rng, p = setup
    f = pc.random_test_field(rng, p, 1.0)
    r = np.array([0.0, np.pi / 2, 0.0])  # rotation taking z to x
    R, S = cl.rotation_matrix(r), cl.rotation_spinor(r)
    assert np.allclose(R @ [0, 0, 1.0], [1.0, 0, 0], atol=1e-15)
    Si = np.linalg.inv(S)

    def f_rot(q):
        rq = tuple(add(add(mul(R[i, 0], q[0]), mul(R[i, 1], q[1])), mul(R[i, 2], q[2]))
                   for i in range(3))
        return matvec(Si, f(rq))

    direct = pc.act_via_entries(f, p, 1)
    rotated = pc.act_via_entries(f_rot, p @ R, 3)  # rows of p @ R are R^-1 p
    lhs = sum(direct.values())
    rhs = sum(rotated.values()) @ S.T
    assert np.abs(lhs - rhs).max() <= 1e-8 * np.abs(lhs).max()
    for lab in sp.LABELS:
        assert np.abs(direct[lab] - rotated[lab] @ S.T).max() <= 1e-8 * np.abs(lhs).max()
