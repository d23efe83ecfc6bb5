"""Momentum-space first-order operators and the two realizations of the
Poincare generators (covariant Dirac and ELKO), with a weak commutator check
driven by exact nested dual derivatives.
"""

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import clifford as cl
from . import spinors as sp
from .equations import hamiltonian_elko, hamiltonian_dirac
from .numerics import (RealLinearOp, Dual, seed, add, mul, matvec, primal, exp,
                       reciprocal, lincomb)

I4 = np.eye(4, dtype=complex)

NAMES = ("P0", "P1", "P2", "P3", "J12", "J13", "J23", "J01", "J02", "J03")


def _as_op(c):
    if isinstance(c, RealLinearOp):
        return c
    if isinstance(c, Dual) or np.ndim(c) > 0:
        return RealLinearOp.linear(mul(c[..., None, None], I4))
    return RealLinearOp.linear(c * I4)


def _coef_apply(c, v):
    if c is None:
        return None
    if isinstance(c, RealLinearOp):
        return c.apply(v)
    if isinstance(c, Dual) or np.ndim(c) > 0:
        return mul(c[..., None], v)
    return mul(c, v)


class MomOperator:
    """sum_a C_a(p) d/dp_a + D(p).

    ``first(q)`` returns three coefficients (RealLinearOp, scalar-like, or
    None) and ``zeroth(q)`` one; q is a tuple of coordinates that may be
    nested Duals.
    """

    def __init__(self, first=None, zeroth=None, name=""):
        self.first = first
        self.zeroth = zeroth
        self.name = name

    def coefficients(self, q):
        first = self.first(q) if self.first is not None else (None, None, None)
        zeroth = self.zeroth(q) if self.zeroth is not None else None
        return first, zeroth

    def apply_jet(self, jet, q, coeffs=None):
        """Apply to a field given as a Dual jet over the three directions."""
        first, zeroth = coeffs if coeffs is not None else self.coefficients(q)
        out = None
        for a in range(3):
            t = _coef_apply(first[a], jet.der[a])
            if t is not None:
                out = t if out is None else add(out, t)
        t = _coef_apply(zeroth, jet.val)
        if t is not None:
            out = t if out is None else add(out, t)
        return out

    def apply_values(self, value, derivs, q):
        first, zeroth = self.coefficients(q)
        out = _coef_apply(zeroth, value) if zeroth is not None else 0.0 * value
        for a in range(3):
            t = _coef_apply(first[a], derivs[a])
            if t is not None:
                out = add(out, t)
        return out

    def __call__(self, f):
        """The field q -> (G f)(q)."""
        def g(q):
            q = cl.components(q)
            return self.apply_jet(f(seed(q)), q)
        return g

    def is_first_order(self):
        return self.first is not None

    def __add__(self, other):
        def first(q):
            if self.first is None:
                return other.first(q)
            if other.first is None:
                return self.first(q)
            return [_sum_coef(x, y) for x, y in zip(self.first(q), other.first(q))]

        def zeroth(q):
            if self.zeroth is None:
                return other.zeroth(q)
            if other.zeroth is None:
                return self.zeroth(q)
            return _as_op(self.zeroth(q)) + _as_op(other.zeroth(q))

        has_first = self.first is not None or other.first is not None
        has_zeroth = self.zeroth is not None or other.zeroth is not None
        return MomOperator(first if has_first else None, zeroth if has_zeroth else None)

    def scale(self, c):
        def first(q):
            return [None if x is None else _as_op(x).scale(c) for x in self.first(q)]

        def zeroth(q):
            return _as_op(self.zeroth(q)).scale(c)

        return MomOperator(first if self.first is not None else None,
                           zeroth if self.zeroth is not None else None, self.name)

    def compose(self, other):
        """self o other, supported when the result stays first order."""
        if self.first is None:
            def first(q):
                D1 = _as_op(self.zeroth(q))
                return [None if c is None else D1 @ _as_op(c) for c in other.first(q)]

            def zeroth(q):
                return _as_op(self.zeroth(q)) @ _as_op(other.zeroth(q))

            return MomOperator(first if other.first is not None else None,
                               zeroth if other.zeroth is not None else None)
        if other.first is not None:
            raise ValueError("composition of two first-order operators is second order")

        def first(q):
            D2 = _as_op(other.zeroth(q))
            return [None if c is None else _as_op(c) @ D2 for c in self.first(q)]

        def zeroth(q):
            q = tuple(q)
            level = 1 + max(getattr(x, "level", 0) for x in q)
            D2s = _as_op(other.zeroth(seed(q)))
            D2 = D2s.strip(level)
            out = None
            for a, c in enumerate(self.first(q)):
                if c is None:
                    continue
                t = _as_op(c) @ D2s.derivative(a)
                out = t if out is None else out + t
            if self.zeroth is not None:
                t = _as_op(self.zeroth(q)) @ D2
                out = t if out is None else out + t
            return out

        return MomOperator(first, zeroth)


def _sum_coef(x, y):
    if x is None:
        return y
    if y is None:
        return x
    return _as_op(x) + _as_op(y)


def multiplication(fn, name=""):
    return MomOperator(None, fn, name)


def _p0(q, m, sign):
    return cl.energy(q, m, sign)


# ---------------------------------------------------------------------------
# generator families
# ---------------------------------------------------------------------------

def _rotation(a, b, name):
    # J_ab = p_b d_a - p_a d_b + S^{ab}
    def first(q):
        c = [None, None, None]
        c[a - 1] = q[b - 1]
        c[b - 1] = mul(-1.0, q[a - 1])
        return c

    def zeroth(q):
        return RealLinearOp.linear(cl.spin(a, b))

    return MomOperator(first, zeroth, name)


def _momentum(a, name):
    return MomOperator(None, lambda q: q[a - 1], name)


def _boost_covariant(a, m, sign, name):
    # J_0a = -p0 d_a + S^{0a}
    def first(q):
        c = [None, None, None]
        c[a - 1] = mul(-1.0, _p0(q, m, sign))
        return c

    return MomOperator(first, lambda q: RealLinearOp.linear(cl.spin(0, a)), name)


def gen_dirac(m=1.0, sign=1):
    """Covariant realization on Dirac spinors: P0 = H_D, P_a = p_a, J_ab, J_0a."""
    gens = {"P0": multiplication(lambda q: RealLinearOp.linear(hamiltonian_dirac(q, m)), "P0")}
    for a in (1, 2, 3):
        gens[f"P{a}"] = _momentum(a, f"P{a}")
    for a, b in ((1, 2), (1, 3), (2, 3)):
        gens[f"J{a}{b}"] = _rotation(a, b, f"J{a}{b}")
    for a in (1, 2, 3):
        gens[f"J0{a}"] = _boost_covariant(a, m, sign, f"J0{a}")
    return gens


def _gamma5_C():
    b = cl.build_basis()
    return RealLinearOp.antilinear(b.gamma5 @ b.gamma[2])


def x_hat_op(q, m):
    """gamma5 sigma_p C."""
    return sp.x_operator(q, m)


def k_matrix(q, a, m=1.0, sign=1):
    """Matrix part of K_a = U^-1(-p0 d_a)U: -(p0/p^2) W_a (1 + gamma5 sigma_p C)."""
    p0 = _p0(q, m, sign)
    n2 = q[0] * q[0] + q[1] * q[1] + q[2] * q[2]
    Wa = RealLinearOp.linear(cl.W(q, a))
    one = RealLinearOp.identity()
    return (Wa @ (one + x_hat_op(q, m))).scale(mul(-1.0, mul(p0, reciprocal(n2))))


def s_hat(q, a, m=1.0):
    """U^-1 S^{0a} U = S^{0a} + (1/p) W_a (sigma_p + gamma5 C)."""
    n = cl.pnorm(q)
    Wa = RealLinearOp.linear(cl.W(q, a))
    inner = RealLinearOp.linear(cl.sigma_p(q, m)) + _gamma5_C()
    return RealLinearOp.linear(cl.spin(0, a)) + (Wa @ inner).scale(reciprocal(n))


def sigma_0a(q, a, m=1.0, sign=1):
    """Matrix part of the ELKO boost generator."""
    return s_hat(q, a, m) + k_matrix(q, a, m, sign)


def _boost_elko(a, m, sign, name, scale_sigma=1.0):
    def first(q):
        c = [None, None, None]
        c[a - 1] = mul(-1.0, _p0(q, m, sign))
        return c

    def zeroth(q):
        s = sigma_0a(q, a, m, sign)
        return s if scale_sigma == 1.0 else s.scale(scale_sigma)

    return MomOperator(first, zeroth, name)


def gen_elko(m=1.0, sign=1, corrupt=None):
    """ELKO realization: P0 = H, P_a = p_a, J'_ab = J_ab, J'_0a = -p0 d_a + Sigma_0a.

    ``corrupt`` = (name, factor) scales the matrix part of one boost
    generator; used as a sensitivity control.
    """
    gens = {"P0": multiplication(lambda q: hamiltonian_elko(q, m), "P0")}
    for a in (1, 2, 3):
        gens[f"P{a}"] = _momentum(a, f"P{a}")
    for a, b in ((1, 2), (1, 3), (2, 3)):
        gens[f"J{a}{b}"] = _rotation(a, b, f"J{a}{b}")
    for a in (1, 2, 3):
        f = 1.0
        if corrupt is not None and corrupt[0] == f"J0{a}":
            f = corrupt[1]
        gens[f"J0{a}"] = _boost_elko(a, m, sign, f"J0{a}", f)
    return gens


def x_hat(a, m, sign=1):
    """x_a = d_a - p_a/p0^2."""
    def first(q):
        c = [None, None, None]
        c[a - 1] = 1.0
        return c

    def zeroth(q):
        p0 = _p0(q, m, sign)
        return mul(-1.0, mul(q[a - 1], reciprocal(mul(p0, p0))))

    return MomOperator(first, zeroth, f"x{a}")


def gen_boost_solutionform(m=1.0, sign=1):
    """J_0a = -(H_D x_a + x_a H_D)/2, built by operator composition."""
    HD = multiplication(lambda q: RealLinearOp.linear(hamiltonian_dirac(q, m)))
    out = {}
    for a in (1, 2, 3):
        xa = x_hat(a, m, sign)
        out[f"J0{a}"] = (HD.compose(xa) + xa.compose(HD)).scale(-0.5)
    return out


def _levi(a, b, c):
    return float(np.linalg.det(np.eye(3)[[a, b, c]]))


def gen_elko_boost_14a(m=1.0, sign=1):
    """J'_0a = -(x_a H + H x_a)/2 + (m/2p^2) eps_abc gamma^b p_c."""
    H = multiplication(lambda q: hamiltonian_elko(q, m))
    g = cl.build_basis().gamma
    out = {}
    for a in (1, 2, 3):
        xa = x_hat(a, m, sign)

        def extra(q, a=a):
            n2 = q[0] * q[0] + q[1] * q[1] + q[2] * q[2]
            coeffs, mats = [], []
            for b in range(3):
                for c in range(3):
                    e = _levi(a - 1, b, c)
                    if e != 0:
                        coeffs.append(mul(e, q[c]))
                        mats.append(g[b + 1])
            M = lincomb(coeffs, mats)
            return RealLinearOp.linear(mul(mul(0.5 * m, reciprocal(n2))[..., None, None], M))

        out[f"J0{a}"] = (H.compose(xa) + xa.compose(H)).scale(-0.5) + multiplication(extra)
    return out


def gen_k(m=1.0, sign=1):
    """K_a in closed form: -p0 (d_a + (1/p^2) W_a (1 + gamma5 sigma_p C))."""
    out = {}
    for a in (1, 2, 3):
        def first(q, a=a):
            c = [None, None, None]
            c[a - 1] = mul(-1.0, _p0(q, m, sign))
            return c
        out[f"K{a}"] = MomOperator(first, lambda q, a=a: k_matrix(q, a, m, sign), f"K{a}")
    return out


def gen_k_conjugated(m=1.0, sign=1):
    """U^-1 o (-p0 d_a) o U by operator composition."""
    Ui = multiplication(lambda q: sp.u_transform(q, m)[1])
    U = multiplication(lambda q: sp.u_transform(q, m)[0])
    out = {}
    for a in (1, 2, 3):
        def first(q, a=a):
            c = [None, None, None]
            c[a - 1] = mul(-1.0, _p0(q, m, sign))
            return c
        D = MomOperator(first, None)
        out[f"K{a}"] = Ui.compose(D.compose(U))
    return out


# ---------------------------------------------------------------------------
# Lie algebra bookkeeping
# ---------------------------------------------------------------------------

G_METRIC = np.diag([1.0, -1.0, -1.0, -1.0])


def _parse(name):
    if name[0] == "P":
        return ("P", int(name[1]))
    return ("J", int(name[1]), int(name[2]))


def _J(mu, nu):
    """Return {name: coeff} for J_{mu nu} expressed in canonical names."""
    if mu == nu:
        return {}
    if mu < nu:
        return {f"J{mu}{nu}": 1.0}
    return {f"J{nu}{mu}": -1.0}


def _acc(out, terms, c):
    for k, v in terms.items():
        out[k] = out.get(k, 0.0) + c * v


def structure(x, y):
    """[X, Y] as {name: coeff} from the metric-form relations."""
    g = G_METRIC
    X, Y = _parse(x), _parse(y)
    out = {}
    if X[0] == "P" and Y[0] == "P":
        return out
    if X[0] == "P" and Y[0] == "J":
        mu, lam, sig = X[1], Y[1], Y[2]
        _acc(out, {f"P{sig}": 1.0}, g[mu, lam])
        _acc(out, {f"P{lam}": 1.0}, -g[mu, sig])
    elif X[0] == "J" and Y[0] == "P":
        for k, v in structure(y, x).items():
            out[k] = -v
        return {k: v for k, v in out.items() if v != 0}
    else:
        mu, nu, lam, sig = X[1], X[2], Y[1], Y[2]
        _acc(out, _J(nu, lam), g[mu, sig])
        _acc(out, _J(mu, sig), g[nu, lam])
        _acc(out, _J(nu, sig), -g[mu, lam])
        _acc(out, _J(mu, lam), -g[nu, sig])
    return {k: v for k, v in out.items() if v != 0}


# ---------------------------------------------------------------------------
# test fields
# ---------------------------------------------------------------------------

@dataclass
class TestField:
    """Batched Gaussian-modulated linear spinor fields, one per sample."""
    c0: np.ndarray
    c: np.ndarray
    u: np.ndarray
    center: np.ndarray
    width: np.ndarray
    amplitude: float = 1.0

    def __call__(self, q):
        q = cl.components(q)
        lin = self.c0
        r2 = 0.0
        for a in range(3):
            lin = add(lin, mul(self.c[..., a], q[a]))
            d = add(q[a], -self.center[..., a])
            r2 = add(r2, mul(d, d))
        env = exp(mul(r2, -0.5 / self.width ** 2))
        s = mul(mul(lin, env), self.amplitude)
        return mul(s[..., None] if (isinstance(s, Dual) or np.ndim(s)) else s, self.u)


def random_test_field(rng, p, m):
    """Field centred near each sample momentum with width in [0.5, 2] m."""
    p = np.asarray(p, dtype=float)
    N = p.shape[0]
    cz = lambda *s: rng.normal(size=s) + 1j * rng.normal(size=s)
    width = m * rng.uniform(0.5, 2.0, size=N)
    scale = np.maximum(np.linalg.norm(p, axis=-1), m)
    center = p + 0.5 * width[:, None] * rng.normal(size=(N, 3))
    c = cz(N, 3) / scale[:, None]
    return TestField(cz(N), c, cz(N, 4), center, width)


def energy_projected(f, H_of_q, m, sign=1):
    """q -> (p0 f + H f)/(2 p0): projection onto the H = p0 eigenspace."""
    def g(q):
        q = cl.components(q)
        p0 = _p0(q, m, sign)
        v = f(q)
        Hv = H_of_q(q).apply(v)
        s = reciprocal(mul(2.0, p0))
        return mul(s[..., None], add(mul(p0[..., None], v), Hv))
    return g


def dirac_H(m):
    return lambda q: RealLinearOp.linear(hamiltonian_dirac(q, m))


def elko_H(m):
    return lambda q: hamiltonian_elko(q, m)


def sample_momenta(rng, n, m):
    """Log-uniform |p| in [1e-2, 1e2] m with uniform direction."""
    mag = m * np.exp(rng.uniform(np.log(1e-2), np.log(1e2), size=n))
    d = rng.normal(size=(n, 3))
    d /= np.linalg.norm(d, axis=-1, keepdims=True)
    return mag[:, None] * d


def _amax(x):
    return np.max(np.abs(x), axis=-1)


@dataclass
class AlgebraRow:
    pair: tuple
    max_residual: float
    samples_failed: int
    expected: dict = dc_field(default_factory=dict)


def commutator_table(gens, fields, p, tol=1e-7):
    """Weak check of all pairwise commutators.

    Every field is evaluated once at depth-2 duals; the ten generator images
    are formed at depth 1 and the 45 commutators at depth 0.  Residuals are
    relative to the largest of |G1 G2 f|, |G2 G1 f| and |rhs f| per sample.
    """
    names = list(gens)
    q0 = cl.components(p)
    q1 = seed(q0)
    q2 = seed(q1)
    c1 = {n: gens[n].coefficients(q1) for n in names}
    c0 = {n: gens[n].coefficients(q0) for n in names}
    N = np.shape(q0[0])[0]
    worst = {}
    failed = {}
    for f in fields:
        F2 = f(q2)
        Gf = {n: gens[n].apply_jet(F2, q1, c1[n]) for n in names}
        val = {n: Gf[n].val for n in names}
        for i, x in enumerate(names):
            for y in names[i + 1:]:
                xy = gens[x].apply_jet(Gf[y], q0, c0[x])
                yx = gens[y].apply_jet(Gf[x], q0, c0[y])
                rhs = np.zeros_like(xy)
                for k, v in structure(x, y).items():
                    rhs = rhs + v * val[k]
                diff = _amax(xy - yx - rhs)
                scale = np.maximum(np.maximum(_amax(xy), _amax(yx)), _amax(rhs))
                rel = diff / np.maximum(scale, np.finfo(float).tiny)
                key = (x, y)
                worst[key] = max(worst.get(key, 0.0), float(np.max(rel)))
                bad = failed.setdefault(key, np.zeros(N, bool))
                bad |= rel > tol
    return [AlgebraRow(k, worst[k], int(failed[k].sum()), structure(*k)) for k in worst]


def verify_poincare_algebra(gens, samples=50, seed=0, m=1.0, n_fields=3, tol=1e-7,
                            H_of_q=None, sign=1, rng=None, p=None):
    """Run the 45-commutator check on energy-projected random test fields."""
    if rng is None:
        rng = np.random.default_rng(seed)
    if p is None:
        p = sample_momenta(rng, samples, m)
    fields = []
    for _ in range(n_fields):
        f = random_test_field(rng, p, m)
        fields.append(energy_projected(f, H_of_q, m, sign) if H_of_q is not None else f)
    return commutator_table(gens, fields, p, tol)


def operator_difference(G1, G2, fields, p):
    """max relative |G1 f - G2 f| over fields and samples (depth-1 duals)."""
    q0 = cl.components(p)
    q1 = seed(q0)
    worst = 0.0
    for f in fields:
        F = f(q1)
        a = G1.apply_jet(F, q0)
        b = G2.apply_jet(F, q0)
        scale = np.maximum(np.maximum(_amax(a), _amax(b)), np.finfo(float).tiny)
        worst = max(worst, float(np.max(_amax(a - b) / scale)))
    return worst


# ---------------------------------------------------------------------------
# label-space entries of the ELKO boost generator
# ---------------------------------------------------------------------------

def _dl(a, b):
    return 1.0 if a == b else 0.0


def m_entry(lab, lab2):
    """M^{eps eps'}_{nu nu'} = (dd + (d_{eps nu} d_{eps' nu'} - d_{eps nu'} d_{eps' nu}) gamma5)/2."""
    (e, n), (e2, n2) = lab, lab2
    g5 = cl.build_basis().gamma5
    return 0.5 * (_dl(e, e2) * _dl(n, n2) * I4
                  + (_dl(e, n) * _dl(e2, n2) - _dl(e, n2) * _dl(e2, n)) * g5)


def mix_pattern(lab, lab2):
    (e, n), (e2, n2) = lab, lab2
    return _dl(e, n) * _dl(e2, n2) - _dl(e, n2) * _dl(e2, n)


def boost_entries(q, a, m=1.0, sign=1):
    """Matrix parts of the label-space entries for boost axis a.

    Returns (K, S) dicts keyed by (label, label') with batched 4x4 matrices:
      K: -(2 p0/p^2) W_a M
      S: (nu p_a / 2p) dd - (nu/p) W_a (2M - dd)
    The derivative part of K is -p0 d_a on each label component.
    """
    q = cl.components(q)
    p0 = _p0(q, m, sign)
    n = cl.pnorm(q)
    Wa = cl.W(q, a)
    K, S = {}, {}
    for lab in sp.LABELS:
        for lab2 in sp.LABELS:
            M = m_entry(lab, lab2)
            dd = _dl(lab[0], lab2[0]) * _dl(lab[1], lab2[1])
            nu = lab[1]
            K[lab, lab2] = mul(mul(-2.0, mul(p0, reciprocal(mul(n, n))))[..., None, None], Wa @ M)
            diag = mul(mul(0.5 * nu * dd, mul(q[a - 1], reciprocal(n)))[..., None, None], I4)
            off = mul(mul(-float(nu), reciprocal(n))[..., None, None], Wa @ (2 * M - dd * I4))
            S[lab, lab2] = add(diag, off)
    return K, S


def boost_entries_literal(q, a, m=1.0, sign=1):
    """Entries as printed, with i S_ab read as -W (Hermitian spin matrices):
      K: -(2 p0/p^2) W_a M,  S: -(eps p_a/2p) dd - (nu/p) gamma5 W_a (2M - dd).
    """
    q = cl.components(q)
    p0 = _p0(q, m, sign)
    n = cl.pnorm(q)
    Wa = cl.W(q, a)
    g5 = cl.build_basis().gamma5
    K, S = {}, {}
    for lab in sp.LABELS:
        for lab2 in sp.LABELS:
            M = m_entry(lab, lab2)
            dd = _dl(lab[0], lab2[0]) * _dl(lab[1], lab2[1])
            eps, nu = lab
            K[lab, lab2] = mul(mul(-2.0, mul(p0, reciprocal(mul(n, n))))[..., None, None], Wa @ M)
            diag = mul(mul(-0.5 * eps * dd, mul(q[a - 1], reciprocal(n)))[..., None, None], I4)
            off = mul(mul(-float(nu), reciprocal(n))[..., None, None], g5 @ Wa @ (2 * M - dd * I4))
            S[lab, lab2] = add(diag, off)
    return K, S


def act_via_entries(f, p, a, m=1.0, sign=1, entries=boost_entries):
    """Label components of J'_0a f computed from the entries (Act form)."""
    q0 = cl.components(p)
    q1 = seed(q0)
    F = f(q1)
    comps = {lab: sp.projector(*lab, q1, m).apply(F) for lab in sp.LABELS}
    K, S = entries(q0, a, m, sign)
    p0 = primal(_p0(q0, m, sign))
    out = {}
    for lab in sp.LABELS:
        v = -np.asarray(p0)[..., None] * comps[lab].der[a - 1]
        for lab2 in sp.LABELS:
            v = v + matvec(K[lab, lab2] + S[lab, lab2], comps[lab2].val)
        out[lab] = v
    return out


def act_direct(f, p, a, m=1.0, sign=1):
    """Label components P^eps_nu (J'_0a f) from the operator itself."""
    G = gen_elko(m, sign)[f"J0{a}"]
    q0 = cl.components(p)
    val = G(f)(q0)
    return {lab: sp.projector(*lab, q0, m).apply(val) for lab in sp.LABELS}


def lambda_matrix(q, m=1.0):
    """Lambda = (2/p~) (i W_3) M as a 16x16 block matrix over labels.

    i W_3 = i(S^{31} p1 + S^{32} p2) is the hermitian form of the transverse
    spin combination.
    """
    q = np.asarray(q, dtype=float)
    pt = np.hypot(q[..., 0], q[..., 1])
    W3 = cl.W(cl.components(q), 3)
    Mb = m_block()
    blk = np.einsum("...ij,...jk->...ik", _blockdiag(1j * W3), Mb)
    return (2.0 / pt)[..., None, None] * blk


def m_block():
    """M as a 16x16 matrix (label-major ordering of sp.LABELS)."""
    out = np.zeros((16, 16), complex)
    for i, lab in enumerate(sp.LABELS):
        for j, lab2 in enumerate(sp.LABELS):
            out[4 * i:4 * i + 4, 4 * j:4 * j + 4] = m_entry(lab, lab2)
    return out


def _blockdiag(A):
    A = np.asarray(A)
    out = np.zeros(A.shape[:-2] + (16, 16), complex)
    for i in range(4):
        out[..., 4 * i:4 * i + 4, 4 * i:4 * i + 4] = A
    return out
