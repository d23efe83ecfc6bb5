import numpy as np
import pytest

from elko_kit import clifford as cl, spinors as sp, equations as eq, boosts as bo
from elko_kit.poincare import sample_momenta


@pytest.fixture(scope="module")
def data():
    rng = np.random.default_rng(11)
    p = sample_momenta(rng, 12, 1.0)
    return rng, p, bo.solution_quad(rng, p, 1.0)


def test_momentum_map():
    p2, E2 = bo.boost_momentum((0.0, 0.0, 0.0), 1.0, 1.0)
    assert np.allclose(p2, [0, 0, -np.sinh(1.0)]) and np.isclose(E2, np.cosh(1.0))
    rng = np.random.default_rng(0)
    p = rng.normal(size=(30, 3))
    ax = rng.normal(size=(30, 3))
    p2, E2 = bo.boost_momentum(p, 2.0, rng.uniform(-2, 2, 30), ax)
    assert np.allclose(E2 ** 2 - np.sum(p2 ** 2, -1), 4.0)


def test_dirac_boost_covariant(data):
    _, p, _ = data
    psi = sp.dirac_solution(p, 1.0, 1)
    p2, out = bo.dirac_boost(psi, p, 1.0, 0.7, np.array([0.3, 0.4, -0.5]))
    assert eq.residual_dirac(out, p2, 1.0).max() <= 1e-10


def test_flow_matches_closed_forms(data):
    _, p, quad = data
    thetas = np.array([-2.0, -1.0, -0.5, 0.5, 1.0, 2.0])
    P = np.repeat(p, 6, 0)
    Q = {l: np.repeat(quad[l], 6, 0) for l in sp.LABELS}
    TH = np.tile(thetas, len(p))
    p_ode, ref = bo.boost_flow(Q, P, 1.0, TH, rtol=1e-10)
    arb = bo.arbitrate(Q, P, 1.0, TH, ref, "two-stage")
    asm = bo.arbitrate(Q, P, 1.0, TH, ref, "assembled")
    assert arb.passed and arb.chosen == bo.CORRECTED and arb.chosen_residual <= 1e-6
    assert asm.passed and asm.chosen == bo.CORRECTED_ASSEMBLED and asm.chosen_residual <= 1e-6
    assert arb.literal_residual > 1e-3 and asm.literal_residual > 1e-3
    p_c, out = bo.boost_closed_z(Q, P, 1.0, TH)
    assert np.allclose(p_c, p_ode, rtol=1e-9)
    assert eq.residual_system1(out, p_c, 1.0).max() <= 1e-8


def test_general_axis_closed_vs_flow(data):
    _, p, quad = data
    ax = np.array([0.2, -0.7, 0.4])
    _, closed = bo.boost_closed(quad, p, 1.0, 0.8, ax)
    _, flow = bo.boost_flow(quad, p, 1.0, 0.8, ax, rtol=1e-10)
    s = max(np.abs(quad[l]).max() for l in sp.LABELS)
    assert max(np.abs(closed[l] - flow[l]).max() for l in sp.LABELS) / s <= 1e-6


def test_group_property(data):
    _, p, quad = data
    pa, qa = bo.boost_closed_z(quad, p, 1.0, 0.4)
    pb, qb = bo.boost_closed_z(qa, pa, 1.0, -0.9)
    pc_, qc = bo.boost_closed_z(quad, p, 1.0, -0.5)
    assert np.allclose(pb, pc_)
    for l in sp.LABELS:
        assert np.allclose(qb[l], qc[l], atol=1e-10 * np.abs(quad[l]).max())


def test_parallel_covariance_and_control(data):
    rng, p, quad = data
    nrm = np.linalg.norm(p, axis=-1)
    E = np.sqrt(nrm ** 2 + 1)
    t = np.where(nrm * np.cosh(0.8) - E * np.sinh(0.8) <= 0, -0.8, 0.8)
    assert bo.parallel_covariance(quad, p, 1.0, t).max() <= 1e-8
    pz = nrm[:, None] * bo.ZHAT
    qz = bo.solution_quad(rng, pz, 1.0)
    r = bo.parallel_covariance(qz, pz, 1.0, 1.0, axis=np.array([1.0, 0.0, 0.0]))
    assert r.min() > 1e-3


def test_reversing_parallel_boost_is_degenerate():
    p = np.array([[0.0, 0.0, 0.5]])
    q = sp.elko_quad(p, 1.0)
    with pytest.raises(cl.DegenerateMomentum):
        bo.parallel_covariance(q, p, 1.0, 1.5)


def test_infinitesimal_second_order():
    rng = np.random.default_rng(3)
    p = rng.normal(size=(10, 3))
    p *= (np.exp(rng.uniform(np.log(0.5), np.log(10), 10)) / np.linalg.norm(p, axis=-1))[:, None]
    ax = rng.normal(size=(10, 3))
    ax /= np.linalg.norm(ax, axis=-1, keepdims=True)
    q = bo.solution_quad(rng, p, 1.0)
    errs = []
    for th in (2e-3, 1e-3):
        _, ref = bo.boost_flow(q, p, 1.0, th, ax, rtol=1e-12)
        _, o = bo.boost_infinitesimal(q, p, 1.0, th * ax)
        errs.append(max(np.abs(o[l] - ref[l]).max() / np.abs(q[l]).max() for l in sp.LABELS))
    assert errs[1] <= 1e-5
    assert 3.0 < errs[0] / errs[1] < 5.0
    _, o = bo.boost_infinitesimal(q, p, 1.0, 1e-3 * ax, reading="literal")
    assert max(np.abs(o[l] - ref[l]).max() / np.abs(q[l]).max() for l in sp.LABELS) > 1e-4


@pytest.mark.parametrize("stage", ["one", "two"])
def test_label_sector_structure(stage):
    from elko_kit.poincare import mix_pattern
    rng = np.random.default_rng(8)
    p = np.array([[0.3, -0.4, 1.2]])
    p2, _ = bo.boost_momentum(p, 1.0, 0.7)
    for src in sp.LABELS:
        quad = {l: np.zeros((1, 4), complex) for l in sp.LABELS}
        quad[src] = rng.normal(size=(1, 4)) + 1j * rng.normal(size=(1, 4))
        out = (bo.stage1(quad, p, p2) if stage == "one"
               else bo.stage2(quad, p, p2, np.array([0.7])))
        for lab in sp.LABELS:
            allowed = lab == src or mix_pattern(lab, src) != 0
            size = np.abs(out[lab]).max()
            if not allowed:
                assert size == 0, (stage, src, lab)
            elif lab != src:
                assert size > 1e-3
