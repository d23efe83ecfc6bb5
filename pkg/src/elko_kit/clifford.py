"""Weyl-representation gamma matrices, spin matrices and the discrete
symmetry operators, with the gamma5 sign fixed by calibration.
"""

import numpy as np

from .numerics import RealLinearOp, lincomb, sqrt, mul, add, reciprocal

I2 = np.eye(2, dtype=complex)
Z2 = np.zeros((2, 2), dtype=complex)
I4 = np.eye(4, dtype=complex)

PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

METRIC = np.diag([1.0, -1.0, -1.0, -1.0])


class DegenerateMomentum(ValueError):
    """Raised when |p| is below p_min and sigma_p is undefined."""


def p_min(m):
    return 1e-12 * max(1.0, float(m))


class GammaBasis:
    """Upper-index gammas gamma^mu in the Weyl representation.

    ``gamma5`` is diagonal and hermitian with diagonal
    ``gamma5_sign * (-1, -1, 1, 1)``; the sign is a convention fixed by
    :func:`build_basis`.
    """

    def __init__(self, gamma5_sign=1):
        g0 = np.block([[Z2, I2], [I2, Z2]])
        self.gamma = [g0] + [np.block([[Z2, s], [-s, Z2]]) for s in PAULI]
        self.gamma5 = gamma5_sign * np.diag([-1, -1, 1, 1]).astype(complex)
        self.gamma5_sign = gamma5_sign
        self.pauli = PAULI
        self.metric = METRIC
        g = self.gamma
        self.S = np.empty((4, 4, 4, 4), dtype=complex)
        for mu in range(4):
            for nu in range(4):
                self.S[mu, nu] = 0.25 * (g[mu] @ g[nu] - g[nu] @ g[mu])
        # gamma^0 gamma^a, the building blocks of sigma_p and the Hamiltonians
        self.alpha = [g[0] @ g[a] for a in (1, 2, 3)]

    @property
    def gamma5_diag(self):
        return tuple(int(x) for x in np.real(np.diag(self.gamma5)))

    def lower(self, mu):
        """gamma_mu = g_{mu mu} gamma^mu."""
        return METRIC[mu, mu] * self.gamma[mu]

    def helicity_form(self, n):
        """gamma5 blockdiag(sigma.n, sigma.n) for a unit vector n."""
        sn = sum(n[a] * PAULI[a] for a in range(3))
        return self.gamma5 @ np.kron(I2, sn)


def _calibrates(basis):
    # sigma_p = gamma5 (sigma.p)/p must give nu on lambda^eps_nu at p along +z,
    # with lambda = (eps sigma2 phi*, phi), phi_+ = (1,0), phi_- = (0,-1)
    sp = basis.helicity_form((0.0, 0.0, 1.0))
    for nu, phi in ((1, np.array([1, 0], complex)), (-1, np.array([0, -1], complex))):
        for eps in (1, -1):
            lam = np.concatenate([eps * PAULI[1] @ phi.conj(), phi])
            if np.linalg.norm(sp @ lam - nu * lam) > 1e-12:
                return False
    return True


_BASIS = None


def build_basis():
    """Return the calibrated gamma basis (cached).

    gamma5 = diag(-1,-1,1,1) is tried first, then the opposite sign; the
    accepted sign is the one for which gamma5 (sigma.p)/p reproduces the
    helicity labels of the rest spinors along +z.
    """
    global _BASIS
    if _BASIS is None:
        for sign in (1, -1):
            b = GammaBasis(sign)
            if _calibrates(b):
                _BASIS = b
                break
        else:
            raise RuntimeError("gamma5 calibration failed for both signs")
    return _BASIS


def gamma5_convention():
    return "diag(" + ",".join(f"{x:+d}" for x in build_basis().gamma5_diag) + ")"


def components(p):
    """Split momenta into a tuple of three coordinates.

    Accepts an array of shape (..., 3) or a sequence of three coordinates
    (arrays or Duals).
    """
    if isinstance(p, (list, tuple)):
        return tuple(p)
    p = np.asarray(p, dtype=float)
    return p[..., 0], p[..., 1], p[..., 2]


def pnorm(q):
    q1, q2, q3 = components(q)
    return sqrt(q1 * q1 + q2 * q2 + q3 * q3)


def energy(q, m, sign=1):
    q1, q2, q3 = components(q)
    return mul(float(sign), sqrt(q1 * q1 + q2 * q2 + q3 * q3 + m * m))


def _check_momentum(q, m=1.0):
    from .numerics import primal
    n = np.asarray(primal(pnorm(q)))
    if np.any(n < p_min(m)):
        raise DegenerateMomentum(f"|p| below p_min={p_min(m):.1e}")


def slash(q, m, sign_energy=1, p0=None):
    """gamma^mu p_mu = gamma^0 p0 - gamma^a p_a (p0 = sign*E unless given)."""
    b = build_basis()
    q1, q2, q3 = components(q)
    if p0 is None:
        p0 = energy(q, m, sign_energy)
    return lincomb([p0, mul(-1.0, q1), mul(-1.0, q2), mul(-1.0, q3)], b.gamma)


def sigma_p(q, m=1.0, check=True):
    """sigma_p = gamma^0 gamma^a p_a / |p| as a complex matrix."""
    b = build_basis()
    if check:
        _check_momentum(q, m)
    q1, q2, q3 = components(q)
    inv = reciprocal(pnorm(q))
    return lincomb([mul(q1, inv), mul(q2, inv), mul(q3, inv)], b.alpha)


def charge_conjugation():
    """C = gamma^2 kappa."""
    return RealLinearOp.antilinear(build_basis().gamma[2].copy())


def spin(mu, nu):
    """S^{mu nu} = (1/4)[gamma^mu, gamma^nu] (upper indices)."""
    return build_basis().S[mu, nu]


def spin_lower(mu, nu):
    b = build_basis()
    return 0.25 * (b.lower(mu) @ b.lower(nu) - b.lower(nu) @ b.lower(mu))


def W(q, a):
    """W_a = S^{ab} p_b summed over spatial b (a = 1, 2, 3)."""
    q = components(q)
    return lincomb(list(q), [spin(a, b) for b in (1, 2, 3)])


def discrete_ops():
    """Matrix parts and argument actions of C, P, T and kappa."""
    b = build_basis()
    return {
        "C": (charge_conjugation(), "none"),
        "P": (RealLinearOp.linear(b.gamma[0].copy()), "flip p"),
        "T": (RealLinearOp.antilinear(b.gamma[1] @ b.gamma[3]), "flip p0"),
        "kappa": (RealLinearOp.antilinear(I4.copy()), "none"),
    }


def rotation_spinor(rotvec):
    """Spinor matrix exp(phi (k3 S12 + k1 S23 + k2 S31)) for rotation vector phi*k.

    It satisfies S sigma_p S^-1 = sigma_{R p} with R the matching SO(3)
    rotation and commutes with C.
    """
    from scipy.linalg import expm
    r = np.asarray(rotvec, dtype=float)
    G = r[2] * spin(1, 2) + r[0] * spin(2, 3) + r[1] * spin(3, 1)
    return expm(G)


def rotation_matrix(rotvec):
    from scipy.spatial.transform import Rotation
    return Rotation.from_rotvec(np.asarray(rotvec, dtype=float)).as_matrix()
