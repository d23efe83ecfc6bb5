"""Verification suites behind ``elko-kit verify``.

Each suite returns a list of :class:`Check` rows plus a dict of measured
conventions for the report header.  Rows flagged ``control`` are negative
controls: they pass when the residual exceeds the tolerance.
"""

from dataclasses import dataclass

import numpy as np

from . import clifford as cl
from . import spinors as sp
from . import equations as eq
from . import poincare as pc
from . import boosts as bo
from . import toymodel as tm
from .numerics import RealLinearOp

CONTROL_THRESHOLD = 1e-3


@dataclass
class Check:
    name: str
    ref: str
    max_residual: float
    tolerance: float
    samples_failed: int = 0
    control: bool = False

    @property
    def passed(self):
        r = self.max_residual
        if not np.isfinite(r):
            return False
        if self.control:
            return bool(r > self.tolerance)
        return bool(r <= self.tolerance and self.samples_failed == 0)

    def to_dict(self):
        return {
            "name": self.name,
            "paper_ref": self.ref,
            "max_residual": float(self.max_residual),
            "tolerance": float(self.tolerance),
            "pass": self.passed,
            "samples_failed": int(self.samples_failed),
        }


@dataclass
class Context:
    mass: float = 1.0
    samples: int = 200
    seed: int = 42
    tol: float = None
    energy_sign: int = 1
    corrupt: bool = False

    def rng(self, stream):
        # independent deterministic stream per check family
        return np.random.default_rng([self.seed, stream])

    def momenta(self, stream, n=None):
        return pc.sample_momenta(self.rng(stream), n or self.samples, self.mass)

    def check(self, name, ref, residuals, tol, control=False):
        """Row from per-sample residuals (array) or one scalar."""
        r = np.atleast_1d(np.asarray(residuals, dtype=float))
        if self.tol is not None and not control:
            tol = self.tol
        worst = float(np.max(r)) if r.size else 0.0
        if control:
            failed = 0 if worst > tol else int(r.size)
        else:
            failed = int(np.sum(~(r <= tol)))
        return Check(name, ref, worst, tol, failed, control)


def _amax(x):
    return np.max(np.abs(x), axis=-1)


def _op_res(a, b):
    """Per-sample max-abs difference of two RealLinearOps."""
    d = a - b
    A = np.abs(np.asarray(d.A))
    out = A.reshape(A.shape[:-2] + (-1,)).max(-1)
    if d.B is not None:
        B = np.abs(np.asarray(d.B))
        out = np.maximum(out, B.reshape(B.shape[:-2] + (-1,)).max(-1))
    return out


# ---------------------------------------------------------------------------
# core
# ---------------------------------------------------------------------------

def core(ctx):
    m = ctx.mass
    b = cl.build_basis()
    g, g5 = b.gamma, b.gamma5
    I = np.eye(4)
    rows = []

    r = max(np.abs(g[mu] @ g[nu] + g[nu] @ g[mu] - 2 * cl.METRIC[mu, nu] * I).max()
            for mu in range(4) for nu in range(4))
    rows.append(ctx.check("clifford.anticommutators", "clifford/anticommutator", r, 1e-15))
    r = max(np.abs(g5 - 1j * g[0] @ g[1] @ g[2] @ g[3]).max(), np.abs(g5 @ g5 - I).max(),
            max(np.abs(g5 @ x + x @ g5).max() for x in g))
    rows.append(ctx.check("clifford.gamma5", "clifford/gamma5", r, 1e-15))
    S, G = b.S, cl.METRIC
    r = 0.0
    for mu, nu, la, si in np.ndindex(4, 4, 4, 4):
        lhs = S[mu, nu] @ S[la, si] - S[la, si] @ S[mu, nu]
        rhs = (G[nu, la] * S[mu, si] - G[mu, la] * S[nu, si]
               - G[nu, si] * S[mu, la] + G[mu, si] * S[nu, la])
        r = max(r, np.abs(lhs - rhs).max())
    rows.append(ctx.check("clifford.spin-algebra", "clifford/spin-matrices", r, 1e-13))

    p = ctx.momenta(1)
    q = cl.components(p)
    s = cl.sigma_p(q, m)
    C = cl.charge_conjugation()
    sop = RealLinearOp.linear(s)
    r = np.maximum.reduce([
        _op_res(sop @ sop, RealLinearOp.identity()),
        np.abs(s - np.conj(np.swapaxes(s, -1, -2))).reshape(len(p), -1).max(-1),
        _op_res(C @ sop, sop @ C),
        np.abs(s - g5 @ sp.helicity_matrix(q)).reshape(len(p), -1).max(-1),
    ])
    rows.append(ctx.check("clifford.sigma-p", "clifford/helicity-times-gamma5", r, 1e-14))
    ops = cl.discrete_ops()
    T2 = ops["T"][0] @ ops["T"][0]
    t_sign = float(np.real(T2.A[0, 0]))
    r = max((ops["C"][0] @ ops["C"][0] - RealLinearOp.identity()).norm(),
            np.abs(ops["P"][0].A @ ops["P"][0].A - I).max(),
            (T2 - RealLinearOp.identity().scale(t_sign)).norm())
    rows.append(ctx.check("clifford.discrete-squares", "discrete/involutions", r, 1e-15))

    # ELKO construction
    quad = sp.elko_quad(p, m)
    r2 = np.max([_amax(C.apply(quad[l]) - l[0] * quad[l]) / _amax(quad[l]) for l in sp.LABELS], 0)
    r2a = np.max([_amax(sop.apply(quad[l]) - l[1] * quad[l]) / _amax(quad[l]) for l in sp.LABELS], 0)
    rs1 = eq.residual_system1(quad, p, m).max(0)
    rows.append(ctx.check("elko.charge-eigen", "elko/charge-conjugation-eigen", r2, 1e-10))
    rows.append(ctx.check("elko.helicity-eigen", "elko/sigma-p-eigen", r2a, 1e-10))
    rows.append(ctx.check("elko.system1", "elko/first-order-system", rs1, 1e-10))
    dq = {l: sp.dirac_solution(p, m, l[0]) for l in sp.LABELS}
    rows.append(ctx.check("elko.system1.control-dirac", "elko/first-order-system",
                          eq.residual_system1(dq, p, m).max(0), 0.1, control=True))

    # compact equation equivalence, both directions
    rng = ctx.rng(2)
    sol = bo.solution_quad(rng, p, m)
    psi_sol = sum(sol.values())
    psi_bad = rng.normal(size=p.shape[:-1] + (4,)) + 1j * rng.normal(size=p.shape[:-1] + (4,))
    mismatch = 0
    worst = 0.0
    for psi, expect in ((psi_sol, True), (psi_bad, False)):
        rc = eq.residual_compact(psi, p, m)
        rs = eq.residual_system1(sp.project(psi, p, m), p, m).max(0)
        a, bb = rc <= 1e-10, rs <= 4e-10
        mismatch += int(np.sum(a != bb)) + int(np.sum(a != expect))
        if expect:
            worst = max(worst, float(rc.max()), float(rs.max()))
    rows.append(Check("compact.equivalence", "compact-equation/projection-equivalence",
                      worst, 1e-10 if ctx.tol is None else ctx.tol, mismatch))
    rows.append(ctx.check("compact.single-label.control", "compact-equation/single-label",
                          eq.residual_compact(quad[(1, 1)], p, m), CONTROL_THRESHOLD, control=True))

    # 16-component form
    G16 = eq.gamma16()
    r = max(np.abs(G16[mu] @ G16[nu] + G16[nu] @ G16[mu]
                   - 2 * cl.METRIC[mu, nu] * np.eye(16)).max() for mu in range(4) for nu in range(4))
    rows.append(ctx.check("sixteen.clifford", "sixteen-component/dirac-matrices", r, 1e-15))
    Psi = eq.stack16(quad)
    r16 = eq.residual_16(Psi, p, m)
    rows.append(ctx.check("sixteen.residual", "sixteen-component/equation", r16.max(0), 1e-10))
    # rows of the 16-component equation reproduce the four system lines
    lines = eq.system1_lines(quad, p, m)
    from .equations import ROW_TO_LINE
    Gs = sum(np.multiply.outer(c, gg) for c, gg in
             zip((cl.energy(p, m), -p[:, 0], -p[:, 1], -p[:, 2]), G16))
    raw = (np.einsum("nij,nj->ni", Gs, Psi) - m * Psi).reshape(len(p), 4, 4)
    scale = np.max([_amax(quad[l]) for l in sp.LABELS], 0)
    r = np.max([np.abs(np.abs(raw[:, k]) - np.abs(lines[ROW_TO_LINE[k]])).max(-1) / scale
                for k in range(4)], 0)
    rows.append(ctx.check("sixteen.rows-match-system1", "sixteen-component/equation", r, 1e-10))

    # Hamiltonian and U
    H = eq.hamiltonian_elko(q, m)
    E2 = np.sum(p * p, -1) + m * m
    rows.append(ctx.check("hamiltonian.square", "hamiltonian/dispersion",
                          _op_res(H @ H, RealLinearOp.identity().scale(E2)) / E2, 1e-12))
    E = np.sqrt(E2)
    rows.append(ctx.check("hamiltonian.eigen", "hamiltonian/solutions",
                          _amax(H.apply(sum(quad.values())) - E[:, None] * sum(quad.values()))
                          / _amax(sum(quad.values())), 1e-10))
    U, Ui = sp.u_transform(q, m)
    HD = RealLinearOp.linear(eq.hamiltonian_dirac(q, m))
    h = sp.helicity_matrix(q)
    scale = np.sqrt(E2)
    r = np.maximum.reduce([
        _op_res(U @ H @ Ui, HD) / scale,
        _op_res(U @ U.adjoint(), RealLinearOp.identity()),
        _op_res(U @ Ui, RealLinearOp.identity()),
        _op_res(Ui @ U, RealLinearOp.identity()),
        _op_res(U @ C @ Ui, RealLinearOp.linear(-h)),
        _op_res(U @ sop @ Ui, RealLinearOp.linear(g5 @ h)),
    ])
    rows.append(ctx.check("u.equivalence", "unitary-antiunitary/equivalence", r, 1e-12))
    r = []
    for l in sp.LABELS:
        d = sp.dirac_counterpart(p, m, *l)
        n = _amax(d)
        r.append(_amax(np.einsum("nij,nj->ni", h, d) + l[0] * d) / n)
        r.append(_amax(d @ g5.T + l[0] * l[1] * d) / n)
    rows.append(ctx.check("dirac.counterpart-eigen", "unitary-antiunitary/dirac-counterparts",
                          np.max(r, 0), 1e-12))
    r = np.max([eq.residual_dirac(sp.dirac_solution(p, m, e), p, m) for e in (1, -1)], 0)
    rows.append(ctx.check("dirac.solution", "dirac/equation", r, 1e-10))

    # block structure
    r = []
    for k in range(min(len(p), 50)):
        Hk = eq.hamiltonian_elko(p[k], m)
        hp, hm = eq.block_decompose(Hk)
        e = max((eq.block_assemble(hp, hm) - Hk).norm(),
                (hp - eq.block_formula(p[k], m, 1)).norm(),
                (hm - eq.block_formula(p[k], m, -1)).norm())
        r.append(e / np.sqrt(p[k] @ p[k] + m * m))
    rows.append(ctx.check("hamiltonian.blocks", "hamiltonian/block-diagonal", r, 1e-13))

    # projectors
    P = {l: sp.projector(*l, q, m) for l in sp.LABELS}
    r = np.zeros(len(p))
    tot = None
    for l in sp.LABELS:
        tot = P[l] if tot is None else tot + P[l]
        for l2 in sp.LABELS:
            tgt = P[l] if l == l2 else RealLinearOp(np.zeros((4, 4), complex))
            r = np.maximum(r, _op_res(P[l] @ P[l2], tgt))
    r = np.maximum(r, _op_res(tot, RealLinearOp.identity()))
    rows.append(ctx.check("projectors.algebra", "projectors/orthogonal-idempotent", r, 1e-13))
    r1, r2 = eq.intertwining(q, m)
    rows.append(ctx.check("projectors.intertwining", "projectors/intertwining",
                          np.maximum(r1, r2), 1e-12))
    _, r2_printed = eq.intertwining(q, m, phase_sign=1)
    return rows, {"dirac-T-squared": t_sign,
                  "intertwining-reading": "lambda read as nu, phase -i eps nu",
                  "intertwining-printed-residual": float(np.max(r2_printed))}


# ---------------------------------------------------------------------------
# poincare
# ---------------------------------------------------------------------------

def poincare(ctx):
    m, sgn = ctx.mass, ctx.energy_sign
    rows = []
    meta = {}
    p = ctx.momenta(10)
    corrupt = ("J01", 1.01) if ctx.corrupt else None

    def algebra(gens, H, stream, n_fields=3, project=True):
        return pc.verify_poincare_algebra(gens, m=m, n_fields=n_fields, tol=1e-7,
                                          H_of_q=H if project else None, sign=sgn,
                                          rng=ctx.rng(stream), p=p)

    for name, gens, H, stream in (("dirac", pc.gen_dirac(m, sgn), pc.dirac_H(m), 11),
                                  ("elko", pc.gen_elko(m, sgn, corrupt), pc.elko_H(m), 12)):
        tab = algebra(gens, H, stream)
        worst = max(t.max_residual for t in tab)
        failed = max(t.samples_failed for t in tab)
        tol = 1e-7 if ctx.tol is None else ctx.tol
        rows.append(Check(f"algebra.{name}", "poincare/commutators-weak", worst, tol, failed))
    tab = algebra(pc.gen_elko(m, sgn, ("J01", 1.01)), pc.elko_H(m), 13)
    rows.append(ctx.check("algebra.elko.perturbed.control", "poincare/commutators-weak",
                          max(t.max_residual for t in tab), CONTROL_THRESHOLD, control=True))
    tab = algebra(pc.gen_elko(m, sgn), pc.elko_H(m), 14, project=False)
    rows.append(ctx.check("algebra.elko.unprojected.control", "poincare/commutators-weak",
                          max(t.max_residual for t in tab), CONTROL_THRESHOLD, control=True))

    rng = ctx.rng(15)
    fd = [pc.energy_projected(pc.random_test_field(rng, p, m), pc.dirac_H(m), m, sgn)]
    fe = [pc.energy_projected(pc.random_test_field(rng, p, m), pc.elko_H(m), m, sgn)]
    fr = [pc.random_test_field(rng, p, m)]
    gd, gs = pc.gen_dirac(m, sgn), pc.gen_boost_solutionform(m, sgn)
    ge, g14 = pc.gen_elko(m, sgn), pc.gen_elko_boost_14a(m, sgn)
    r = max(pc.operator_difference(gd[f"J0{a}"], gs[f"J0{a}"], fd, p) for a in (1, 2, 3))
    rows.append(ctx.check("generators.dirac-solution-form", "generators/dirac-boost-forms", r, 1e-8))
    r = max(pc.operator_difference(gd[f"J0{a}"], gs[f"J0{a}"], fr, p) for a in (1, 2, 3))
    rows.append(ctx.check("generators.dirac-solution-form.control", "generators/dirac-boost-forms",
                          r, CONTROL_THRESHOLD, control=True))
    r = max(pc.operator_difference(ge[f"J0{a}"], g14[f"J0{a}"], fe, p) for a in (1, 2, 3))
    rows.append(ctx.check("generators.elko-solution-form", "generators/elko-boost-forms", r, 1e-8))
    r = max(pc.operator_difference(ge[f"J0{a}"], g14[f"J0{a}"], fr, p) for a in (1, 2, 3))
    rows.append(ctx.check("generators.elko-solution-form.control", "generators/elko-boost-forms",
                          r, CONTROL_THRESHOLD, control=True))
    gk, gkc = pc.gen_k(m, sgn), pc.gen_k_conjugated(m, sgn)
    r = max(pc.operator_difference(gk[f"K{a}"], gkc[f"K{a}"], fr, p) for a in (1, 2, 3))
    rows.append(ctx.check("generators.k-conjugation", "generators/conjugated-derivative", r, 1e-10))
    q = cl.components(p)
    U, Ui = sp.u_transform(q, m)
    r = np.max([_op_res(Ui @ RealLinearOp.linear(cl.spin(0, a)) @ U, pc.s_hat(q, a, m))
                for a in (1, 2, 3)], 0)
    rows.append(ctx.check("generators.s-conjugation", "generators/conjugated-spin", r, 1e-10))

    # label-space entries
    f = fr[0]
    r, rl = 0.0, 0.0
    for a in (1, 2, 3):
        d = pc.act_direct(f, p, a, m, sgn)
        e = pc.act_via_entries(f, p, a, m, sgn)
        el = pc.act_via_entries(f, p, a, m, sgn, pc.boost_entries_literal)
        for l in sp.LABELS:
            s = np.maximum(_amax(d[l]), np.finfo(float).tiny)
            r = max(r, float(np.max(_amax(e[l] - d[l]) / s)))
            rl = max(rl, float(np.max(_amax(el[l] - d[l]) / s)))
    rows.append(ctx.check("entries.action", "boost-generator/label-entries", r, 1e-10))
    meta["entries-literal-residual"] = rl
    return rows, meta


# ---------------------------------------------------------------------------
# boost
# ---------------------------------------------------------------------------

THETAS = (-2.0, -1.0, -0.5, 0.5, 1.0, 2.0)


def _label_eigen(quad, p, m):
    C = cl.charge_conjugation()
    s = RealLinearOp.linear(cl.sigma_p(cl.components(p), m))
    scale = np.maximum(np.max([_amax(quad[l]) for l in sp.LABELS], 0), np.finfo(float).tiny)
    rc = np.max([_amax(C.apply(quad[l]) - l[0] * quad[l]) for l in sp.LABELS], 0) / scale
    rs = np.max([_amax(s.apply(quad[l]) - l[1] * quad[l]) for l in sp.LABELS], 0) / scale
    return rc, rs


def boost(ctx):
    m = ctx.mass
    rows, meta = [], {}
    rng = ctx.rng(20)
    n = min(ctx.samples, 50)
    p = ctx.momenta(21, n)

    # kinematics and the Dirac boost
    th = rng.uniform(-2, 2, n)
    ax = rng.normal(size=(n, 3))
    ax /= np.linalg.norm(ax, axis=-1, keepdims=True)
    p2, E2 = bo.boost_momentum(p, m, th, ax)
    rows.append(ctx.check("boost.momentum.mass-shell", "boost/momentum-map",
                          np.abs(E2 ** 2 - np.sum(p2 * p2, -1) - m * m) / E2 ** 2, 1e-12))
    r = []
    for e in (1, -1):
        psi = sp.dirac_solution(p, m, e)
        p2d, out = bo.dirac_boost(psi, p, m, th, ax)
        r.append(eq.residual_dirac(out, p2d, m))
    rows.append(ctx.check("boost.dirac.covariance", "boost/dirac-covariant", np.max(r, 0), 1e-10))

    # closed forms against the flow
    quad = bo.solution_quad(rng, p, m)
    P = np.repeat(p, len(THETAS), 0)
    Q = {l: np.repeat(quad[l], len(THETAS), 0) for l in sp.LABELS}
    TH = np.tile(THETAS, n)
    p_ode, ref, info = bo.boost_flow(Q, P, m, TH, rtol=1e-10, return_info=True)
    p_lie, _ = bo.boost_momentum(P, m, TH)
    rows.append(ctx.check("boost.ode.momentum", "boost/momentum-map",
                          info["momentum_drift"] / np.max(np.abs(p_lie)), 1e-10))
    arb = bo.arbitrate(Q, P, m, TH, ref, "two-stage", 1e-6)
    asm = bo.arbitrate(Q, P, m, TH, ref, "assembled", 1e-6)
    tol = 1e-6 if ctx.tol is None else ctx.tol
    rows.append(Check("boost.closed-vs-ode", "boost/two-stage-closed-form",
                      arb.chosen_residual, tol, 0 if arb.passed else len(TH)))
    rows.append(Check("boost.assembled-vs-ode", "boost/assembled-closed-form",
                      asm.chosen_residual, tol, 0 if asm.passed else len(TH)))
    meta["boost-reading"] = arb.chosen.as_dict() if arb.passed else None
    meta["boost-literal-residual"] = arb.literal_residual
    meta["assembled-reading"] = asm.chosen.as_dict() if asm.passed else None
    meta["assembled-literal-residual"] = asm.literal_residual

    reading = arb.chosen or bo.CORRECTED
    p_c, out = bo.boost_closed_z(Q, P, m, TH, reading)
    rs1 = eq.residual_system1(out, p_c, m).max(0)
    rc, rsig = _label_eigen(out, p_c, m)
    rows.append(ctx.check("boost.resolves.system1", "boost/solution-preservation", rs1, 1e-8))
    rows.append(ctx.check("boost.resolves.label-eigen", "boost/solution-preservation",
                          np.maximum(rc, rsig), 1e-8))
    rows.append(ctx.check("boost.ode.resolves.system1", "boost/solution-preservation",
                          eq.residual_system1(ref, p_ode, m).max(0), 1e-7))

    # group property along z
    t1, t2 = rng.uniform(-1, 1, n), rng.uniform(-1, 1, n)
    pa, qa = bo.boost_closed_z(quad, p, m, t1, reading)
    pb, qb = bo.boost_closed_z(qa, pa, m, t2, reading)
    pc_, qc = bo.boost_closed_z(quad, p, m, t1 + t2, reading)
    scale = np.max([_amax(quad[l]) for l in sp.LABELS], 0)
    r = np.max([_amax(qb[l] - qc[l]) for l in sp.LABELS], 0) / scale
    rows.append(ctx.check("boost.group-property", "boost/one-parameter-group", r, 1e-7))

    # parallel covariance; boosts that would reverse p pass through p = 0
    tpar = rng.uniform(-2, 2, n)
    nrm = np.linalg.norm(p, axis=-1)
    E = np.sqrt(nrm ** 2 + m * m)
    reverse = nrm * np.cosh(tpar) - E * np.sinh(tpar) <= 0
    tpar = np.where(reverse, -tpar, tpar)
    r = bo.parallel_covariance(quad, p, m, tpar)
    rows.append(ctx.check("boost.parallel-covariance", "boost/parallel-covariance", r, 1e-8))
    pz = nrm[:, None] * bo.ZHAT
    qz = bo.solution_quad(rng, pz, m)
    r = bo.parallel_covariance(qz, pz, m, 1.0, axis=np.array([1.0, 0.0, 0.0]))
    rows.append(ctx.check("boost.parallel-covariance.control", "boost/parallel-covariance",
                          np.min(r), CONTROL_THRESHOLD, control=True))

    # first-order form at theta = 1e-3, away from the small-|p| region
    d = rng.normal(size=(n, 3))
    d /= np.linalg.norm(d, axis=-1, keepdims=True)
    pi = m * np.exp(rng.uniform(np.log(0.5), np.log(10.0), n))[:, None] * d
    qi = bo.solution_quad(rng, pi, m)
    _, ref_i = bo.boost_flow(qi, pi, m, 1e-3, ax, rtol=1e-12)
    sc = np.max([np.linalg.norm(qi[l], axis=-1) for l in sp.LABELS], 0)
    results = {}
    for reading_i in ("literal", "corrected"):
        for trace in ("sum", "single"):
            _, o = bo.boost_infinitesimal(qi, pi, m, 1e-3 * ax, reading_i, trace)
            results[f"{reading_i}-{trace}"] = np.max(
                [np.linalg.norm(o[l] - ref_i[l], axis=-1) / sc for l in sp.LABELS], 0)
    chosen = next((k for k, v in results.items() if np.max(v) <= 1e-5), None)
    best = results[chosen] if chosen else min(results.values(), key=np.max)
    rows.append(ctx.check("boost.infinitesimal-vs-ode", "boost/first-order", best, 1e-5))
    meta["infi-reading"] = chosen or "none"
    meta["infi-literal-residual"] = float(np.max(results["literal-sum"]))

    # Lambda identities
    pl = ctx.momenta(22, 100)
    L = pc.lambda_matrix(pl, m)
    M = pc.m_block()
    r = np.maximum(np.abs(L @ L - M).reshape(100, -1).max(-1),
                   np.abs(L @ L @ L - L).reshape(100, -1).max(-1))
    rows.append(ctx.check("lambda.identities", "boost/lambda-matrix", r, 1e-12))
    return rows, meta


# ---------------------------------------------------------------------------
# toy model
# ---------------------------------------------------------------------------

def toy(ctx):
    m = ctx.mass
    rows = []
    rng = ctx.rng(30)
    n = min(ctx.samples, 50)
    p = ctx.momenta(31, n)
    dims, kres, offdim, s1, peq = [], [], [], [], []
    for k in range(n):
        ker = tm.solve_toymodel(p[k], m)
        dims.append(len(ker))
        kres.append(max((tm.residual_toymodel(f, m) for f in ker), default=np.inf))
        E = np.sqrt(p[k] @ p[k] + m * m)
        offdim.append(len(tm.solve_toymodel(p[k], m, p0=E + 0.1, tol=1e-8)))
        if ker:
            K = ker[0].with_values(sum(rng.normal() * f.values for f in ker))
            proj = tm.toy_projections(K)
            s1.append(tm.system1_on_orbit(proj, m))
            peq.append(tm.projected_equation(proj, m))
    dims = np.array(dims)
    rows.append(Check("toy.kernel.dimension", "toy-model/kernel",
                      float(dims.max() - dims.min()) if dims.min() > 0 else np.inf, 0.0,
                      int(np.sum(dims != dims.max())) + int(np.sum(dims == 0))))
    rows.append(ctx.check("toy.kernel.residual", "toy-model/kernel", kres, 1e-10))
    rows.append(Check("toy.offshell.empty", "toy-model/dispersion", float(max(offdim)), 0.0,
                      int(np.sum(np.array(offdim) > 0))))
    rows.append(ctx.check("toy.system1", "toy-model/projections-solve-system",
                          s1 or [np.inf], 1e-9))
    rows.append(ctx.check("toy.projected-equation", "toy-model/projected-equations",
                          peq or [np.inf], 1e-9))

    c, cres = tm.gamma5pct_phase()
    rows.append(ctx.check("toy.gamma5pct.phase", "toy-model/total-reflection",
                          max(cres, abs(abs(c) - 1)), 1e-12))
    C = lambda g: tm.apply_discrete("C", g)
    R = tm.reflection()
    r_inv, r_disc, r_proj = [], [], []
    for k in range(n):
        f = tm.random_orbit_field(rng, p[k], m)
        s = np.max(np.abs(f.values))
        If = tm.involution(f)
        r_inv.append(max(np.abs(tm.involution(If).values - f.values).max(),
                         np.abs(tm.apply_slash(If, m).values
                                - tm.involution(tm.apply_slash(f, m)).values).max()) / s)
        r_disc.append(max(np.abs(tm.apply_discrete(o, f).values - f.values).max()
                          for o in ("P P", "C C", "R R")) / s)
        proj = tm.toy_projections(f)
        e_ = [np.abs(sum(v.values for v in proj.values()) - f.values).max(),
              np.abs(R(C(f)).values - C(R(f)).values).max()]
        sf = tm.apply_slash(f, m)
        for (e, l), v in proj.items():
            e_.append(np.abs(tm.toy_projector(v, e, l).values - v.values).max())
            e_.append(np.abs(C(v).values - e * v.values).max())
            e_.append(np.abs(tm.apply_discrete("g5 P C T", v).values - c * l * v.values).max())
            e_.append(np.abs(v.values[[3, 2, 1, 0]] - l * v.values).max())
            e_.append(np.abs(tm.toy_projector(sf, e, l).values
                             - tm.apply_slash(tm.toy_projector(f, -e, -l), m).values).max()
                      / max(1.0, np.abs(sf.values).max() / s))
        r_proj.append(max(e_) / s)
    rows.append(ctx.check("toy.involution", "toy-model/involution", r_inv, 1e-12))
    rows.append(ctx.check("toy.discrete-squares", "toy-model/discrete-transformations", r_disc, 1e-12))
    rows.append(ctx.check("toy.projectors", "toy-model/projectors", r_proj, 1e-12))
    meta = {"toy-kernel-dimension": int(dims.max()), "phase-c": [float(c.real), float(c.imag)]}
    return rows, meta


SUITES = {"core": core, "poincare": poincare, "boost": boost, "toy": toy}


def run(suite, ctx):
    names = list(SUITES) if suite == "all" else [suite]
    rows, meta = [], {}
    for name in names:
        r, mt = SUITES[name](ctx)
        rows += r
        meta.update(mt)
    rows.sort(key=lambda c: c.name)
    return rows, meta
