"""ELKO construction, the label projectors, the transformation U and the
Dirac-side counterparts.

All constructors accept momenta of shape (3,) or (N, 3) and return spinors of
shape (4,) or (N, 4).
"""

from dataclasses import dataclass

import numpy as np

from . import clifford as cl
from .numerics import RealLinearOp, lincomb, matmul, mul, reciprocal

LABELS = ((1, 1), (1, -1), (-1, 1), (-1, -1))

# lambda-style names used in the literature mapped onto (eps, nu) labels
LAMBDA_NAMES = {
    ("S", "+-"): (1, -1),
    ("S", "-+"): (1, 1),
    ("A", "+-"): (-1, 1),
    ("A", "-+"): (-1, -1),
}


@dataclass(frozen=True)
class FourMomentum:
    m: float
    p: tuple

    def __post_init__(self):
        if not self.m > 0:
            raise ValueError("mass must be positive")
        object.__setattr__(self, "p", tuple(float(x) for x in self.p))

    @property
    def vec(self):
        return np.array(self.p)

    @property
    def norm(self):
        return float(np.linalg.norm(self.p))

    @property
    def E(self):
        return float(np.sqrt(self.norm ** 2 + self.m ** 2))

    @property
    def theta(self):
        n = self.norm
        return 0.0 if n == 0 else float(np.arccos(np.clip(self.p[2] / n, -1, 1)))

    @property
    def phi(self):
        if self.p[0] == 0 and self.p[1] == 0:
            return 0.0
        return float(np.arctan2(self.p[1], self.p[0]))


@dataclass(frozen=True)
class ElkoLabel:
    eps: int
    nu: int

    def __post_init__(self):
        if self.eps not in (1, -1) or self.nu not in (1, -1):
            raise ValueError("labels must be +1 or -1")


def angles(p):
    """Polar and azimuthal angles; phi = 0 on the z axis, theta = 0 at p = 0."""
    p = np.asarray(p, dtype=float)
    n = np.linalg.norm(p, axis=-1)
    safe = np.where(n > 0, n, 1.0)
    theta = np.where(n > 0, np.arccos(np.clip(p[..., 2] / safe, -1, 1)), 0.0)
    phi = np.arctan2(p[..., 1], p[..., 0])
    phi = np.where((p[..., 0] == 0) & (p[..., 1] == 0), 0.0, phi)
    return theta, phi


def _check(p, m, allow_zero=True):
    n = np.linalg.norm(np.asarray(p, dtype=float), axis=-1)
    bad = (n < cl.p_min(m)) & ~((n == 0) & allow_zero)
    if np.any(bad):
        raise cl.DegenerateMomentum(f"0 < |p| < p_min={cl.p_min(m):.1e}")


def phi_rest(p, m, nu):
    """Two-component helicity spinor phi_nu(0) with norm^2 = m."""
    theta, phi = angles(p)
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    em, ep = np.exp(-0.5j * phi), np.exp(0.5j * phi)
    if nu > 0:
        out = np.stack([c * em, s * ep], axis=-1)
    else:
        out = np.stack([s * em, -c * ep], axis=-1)
    return np.sqrt(m) * out


def lam(p, m, eps, nu):
    phi = phi_rest(p, m, nu)
    upper = eps * np.einsum("ij,...j->...i", cl.PAULI[1], phi.conj())
    return np.concatenate([upper, phi], axis=-1)


def elko(p, m, eps, nu):
    """ELKO spinor psi^eps_nu(p).

    Uses the factor (1 + nu |p|/(E+m)); with it the four spinors solve the
    coupled first-order system at every momentum.
    """
    _check(p, m)
    p = np.asarray(p, dtype=float)
    n = np.linalg.norm(p, axis=-1)
    E = np.sqrt(n ** 2 + m ** 2)
    f = np.sqrt((E + m) / m) * (1 + nu * n / (E + m))
    return f[..., None] * lam(p, m, eps, nu)


def elko_quad(p, m):
    return {lab: elko(p, m, *lab) for lab in LABELS}


def projector(eps, nu, q, m=1.0):
    """P^eps_nu = (1 + eps C)(1 + nu sigma_p)/4."""
    C = cl.charge_conjugation()
    one = RealLinearOp.identity()
    sp = RealLinearOp.linear(cl.sigma_p(q, m))
    left = one + C.scale(float(eps))
    right = one + sp.scale(float(nu))
    return (left @ right).scale(0.25)


def project(psi, q, m=1.0):
    """Split psi into its four label components (dict keyed by label)."""
    return {lab: projector(*lab, q, m).apply(psi) for lab in LABELS}


def x_operator(q, m=1.0):
    """X = gamma5 sigma_p C (antilinear)."""
    b = cl.build_basis()
    B = matmul(matmul(b.gamma5, cl.sigma_p(q, m)), b.gamma[2])
    return RealLinearOp(np.zeros((4, 4), complex), B)


def u_transform(q, m=1.0):
    """U = (1 - gamma5 C sigma_p)(1 - i gamma5)/2 and its inverse.

    U carries the ELKO Hamiltonian to the Dirac one; U U^dagger = 1.
    """
    b = cl.build_basis()
    one = RealLinearOp.identity()
    X = x_operator(q, m)
    g5 = RealLinearOp.linear(1j * b.gamma5)
    U = ((one - X) @ (one - g5)).scale(0.5)
    U_inv = ((one + g5) @ (one + X)).scale(0.5)
    return U, U_inv


def dirac_counterpart(p, m, eps, nu):
    """U psi^eps_nu: eigenvector of (sigma.p)/p (value -eps) and gamma5 (value -nu eps).

    A single label is not a solution of the Dirac equation for m > 0; see
    :func:`dirac_solution`.
    """
    U, _ = u_transform(p, m)
    return U.apply(elko(p, m, eps, nu))


def dirac_solution(p, m, eps):
    """U (psi^eps_+ + psi^eps_-): a positive-energy Dirac solution of helicity -eps."""
    U, _ = u_transform(p, m)
    return U.apply(elko(p, m, eps, 1) + elko(p, m, eps, -1))


def helicity_matrix(q):
    """(sigma.p)/p as a 4x4 block-diagonal matrix."""
    q1, q2, q3 = cl.components(q)
    inv = reciprocal(cl.pnorm(q))
    mats = [np.kron(cl.I2, s) for s in cl.PAULI]
    return lincomb([mul(q1, inv), mul(q2, inv), mul(q3, inv)], mats)


def spinor_to_json(psi, p, m, eps, nu):
    psi = np.asarray(psi)
    return {
        "m": float(m),
        "p": [float(x) for x in p],
        "eps": int(eps),
        "nu": int(nu),
        "components": [[float(z.real), float(z.imag)] for z in psi],
    }


def spinor_from_json(obj):
    comps = np.array([complex(re, im) for re, im in obj["components"]])
    return comps, np.array(obj["p"], float), float(obj["m"]), int(obj["eps"]), int(obj["nu"])
