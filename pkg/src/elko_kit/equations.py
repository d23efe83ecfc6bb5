"""Residual evaluators for the ELKO field equations and the Hamiltonian
block structure.

Residuals are relative: max-abs of the residual divided by max-abs of the
input, evaluated per momentum sample.
"""

from dataclasses import dataclass

import numpy as np

from . import clifford as cl
from . import spinors as sp
from .numerics import RealLinearOp, matvec, primal

DEFAULT_TOL = 1e-10

# (lhs label, partner label, coefficient of i m psi_partner) for each line
SYSTEM1 = (
    ((1, 1), (1, -1), 1.0),
    ((1, -1), (1, 1), -1.0),
    ((-1, 1), (-1, -1), -1.0),
    ((-1, -1), (-1, 1), 1.0),
)


@dataclass
class EquationResidual:
    name: str
    value: float
    tolerance: float = DEFAULT_TOL

    @property
    def passed(self):
        return bool(self.value <= self.tolerance)


def _amax(x):
    return np.max(np.abs(x), axis=-1)


def _rel(res, scale):
    scale = np.asarray(scale, dtype=float)
    tiny = np.finfo(float).tiny
    return np.where(scale > tiny, res / np.maximum(scale, tiny), res)


def system1_lines(quad, p, m, sign_energy=1, p0=None):
    """Raw residual vectors of the four lines of the first-order system."""
    sl = cl.slash(p, m, sign_energy, p0)
    out = []
    for lab, partner, c in SYSTEM1:
        out.append(matvec(sl, quad[lab]) + c * 1j * m * quad[partner])
    return out


def residual_system1(quad, p, m, sign_energy=1, p0=None):
    """Relative residuals of the four lines (array of shape (4, ...))."""
    lines = system1_lines(quad, p, m, sign_energy, p0)
    scale = np.max([_amax(quad[lab]) for lab in sp.LABELS], axis=0)
    return np.array([_rel(_amax(r), scale) for r in lines])


def mass_operator(q, m=1.0):
    """The mass term of the compact equation, C o (i sigma_p) = -i C sigma_p."""
    C = cl.charge_conjugation()
    s = RealLinearOp.linear(1j * cl.sigma_p(q, m))
    return C @ s


def compact_operator(q, m, sign_energy=1):
    return RealLinearOp.linear(cl.slash(q, m, sign_energy)) + mass_operator(q, m).scale(m)


def residual_compact(psi, p, m, sign_energy=1):
    r = compact_operator(p, m, sign_energy).apply(psi)
    return _rel(_amax(r), _amax(psi))


def gamma16():
    """The 16x16 matrices Gamma^mu acting on column(psi++, psi+-, psi-+, psi--)."""
    b = cl.build_basis()
    out = []
    Z = np.zeros((4, 4), complex)
    for g in b.gamma:
        out.append(np.block([
            [Z, -1j * g, Z, Z],
            [1j * g, Z, Z, Z],
            [Z, Z, Z, 1j * g],
            [Z, Z, -1j * g, Z],
        ]))
    return out


def stack16(quad):
    return np.concatenate([quad[lab] for lab in sp.LABELS], axis=-1)


def residual_16(Psi, p, m, sign_energy=1):
    """Relative residual of (Gamma^mu p_mu - m) Psi, per block row."""
    G = gamma16()
    q1, q2, q3 = cl.components(p)
    p0 = cl.energy(p, m, sign_energy)
    A = sum(np.multiply.outer(c, g) if np.ndim(c) else c * g
            for c, g in zip((p0, -q1, -q2, -q3), G))
    r = np.einsum("...ij,...j->...i", A, Psi) - m * Psi
    rows = r.reshape(r.shape[:-1] + (4, 4))
    scale = _amax(Psi)
    return np.array([_rel(_amax(rows[..., k, :]), scale) for k in range(4)])


# rows of the 16-component equation are the lines of the system up to a phase
ROW_TO_LINE = (1, 0, 3, 2)


def hamiltonian_elko(q, m=1.0):
    """H = gamma^0 gamma^a p_a + i m gamma^0 C sigma_p."""
    b = cl.build_basis()
    q1, q2, q3 = cl.components(q)
    from .numerics import lincomb
    kin = RealLinearOp.linear(lincomb([q1, q2, q3], b.alpha))
    mass = (RealLinearOp.linear(b.gamma[0]) @ cl.charge_conjugation()
            @ RealLinearOp.linear(cl.sigma_p(q, m))).scale(1j * m)
    return kin + mass


def hamiltonian_dirac(q, m=1.0):
    """H_D = gamma^0 gamma^a p_a + gamma^0 m (plain matrix)."""
    b = cl.build_basis()
    q1, q2, q3 = cl.components(q)
    from .numerics import lincomb
    return lincomb([q1, q2, q3, m], b.alpha + [b.gamma[0]])


class DecompositionError(ValueError):
    pass


def commutes_with_gamma5(H, tol=1e-12):
    g5 = RealLinearOp.linear(cl.build_basis().gamma5)
    return (H @ g5 - g5 @ H).norm() <= tol * max(1.0, H.norm())


def block_decompose(H, tol=1e-12):
    """Split an operator commuting with gamma5 into its two 2x2 blocks.

    Returns (H_plus, H_minus) for the gamma5 = +1 and -1 eigenspaces as
    2x2 RealLinearOps (A, B pairs).
    """
    if not commutes_with_gamma5(H, tol):
        raise DecompositionError("operator does not commute with gamma5")
    d = np.real(np.diag(cl.build_basis().gamma5))
    plus = np.where(d > 0)[0]
    minus = np.where(d < 0)[0]

    def blk(idx):
        A = np.asarray(H.A)[..., idx[:, None], idx]
        B = None if H.B is None else np.asarray(H.B)[..., idx[:, None], idx]
        return RealLinearOp(A, B)

    return blk(plus), blk(minus)


def block_formula(q, m, sign):
    """sigma_a p_a (sign - (i m/p) sigma_2 kappa) as a 2x2 RealLinearOp."""
    q = np.asarray(q, dtype=float)
    n = np.linalg.norm(q, axis=-1)
    sp_ = np.einsum("...a,aij->...ij", q, np.array(cl.PAULI))
    A = sign * sp_
    B = -np.asarray(1j * m / n)[..., None, None] * (sp_ @ cl.PAULI[1])
    return RealLinearOp(A, B)


def block_assemble(H_plus, H_minus):
    d = np.real(np.diag(cl.build_basis().gamma5))
    plus = np.where(d > 0)[0]
    minus = np.where(d < 0)[0]
    shape = np.shape(H_plus.A)[:-2] + (4, 4)
    A = np.zeros(shape, complex)
    B = np.zeros(shape, complex)
    for blk, idx in ((H_plus, plus), (H_minus, minus)):
        A[..., idx[:, None], idx] = blk.A
        if blk.B is not None:
            B[..., idx[:, None], idx] = blk.B
    return RealLinearOp(A, B)


def residual_dirac(psi_D, p, m, sign_energy=1):
    """Relative residual of H_D psi = p0 psi."""
    HD = hamiltonian_dirac(p, m)
    p0 = primal(cl.energy(p, m, sign_energy))
    r = np.einsum("...ij,...j->...i", HD, psi_D) - np.asarray(p0)[..., None] * psi_D
    return _rel(_amax(r), _amax(psi_D))


def intertwining(q, m=1.0, phase_sign=-1):
    """Operator residuals of the projector intertwining relations.

    P^eps_nu slash(p) = slash(p) P^-eps_-nu, and
    P^eps_nu (i C sigma_p) = phase_sign * i eps nu P^-eps_nu.
    With the calibrated basis the second relation holds for phase_sign = -1.
    Returns (slash residual, mass-term residual), per sample.
    """
    q = cl.components(q)
    S = RealLinearOp.linear(cl.slash(q, primal(cl.energy(q, m))))
    iCs = RealLinearOp.linear(1j * np.eye(4)) @ cl.charge_conjugation() \
        @ RealLinearOp.linear(cl.sigma_p(q, m))
    r1 = r2 = 0.0
    for eps, nu in sp.LABELS:
        P = sp.projector(eps, nu, q, m)
        r1 = np.maximum(r1, (P @ S - S @ sp.projector(-eps, -nu, q, m)).norm())
        rhs = RealLinearOp.linear(phase_sign * 1j * eps * nu * np.eye(4)) @ sp.projector(-eps, nu, q, m)
        r2 = np.maximum(r2, (P @ iCs - rhs).norm())
    E = np.sqrt(sum(np.asarray(primal(x)) ** 2 for x in q[1:]) + m * m)
    return r1 / E, r2
