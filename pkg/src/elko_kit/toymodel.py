"""The covariant toy equation (slash p + i m gamma5 PT) Psi = 0 on sign orbits.

Every discrete operator relates only the four sign images (s0 p0, s p) of a
base momentum, so a field is a (4, 4) complex array: one spinor per orbit
point, in the order of ``POINTS``.
"""

from dataclasses import dataclass

import numpy as np

from . import clifford as cl
from .numerics import null_space

POINTS = ((1, 1), (1, -1), (-1, 1), (-1, -1))
_INDEX = {pt: i for i, pt in enumerate(POINTS)}


@dataclass(frozen=True)
class OrbitField:
    p0: float
    p: tuple
    values: np.ndarray  # (4, 4): orbit point, spinor component

    def with_values(self, values):
        return OrbitField(self.p0, self.p, np.asarray(values, complex))

    def at(self, pt):
        return self.values[_INDEX[pt]]

    def to_json(self):
        return {"p0": float(self.p0), "p": [float(x) for x in self.p],
                "values": {f"{s0:+d}{s:+d}": [[float(z.real), float(z.imag)] for z in self.at((s0, s))]
                           for s0, s in POINTS}}


def orbit_field(p, m=1.0, p0=None, values=None):
    p = tuple(float(x) for x in p)
    if p0 is None:
        p0 = float(np.sqrt(sum(x * x for x in p) + m * m))
    if values is None:
        values = np.zeros((4, 4), complex)
    return OrbitField(float(p0), p, np.asarray(values, complex))


def random_orbit_field(rng, p, m=1.0, p0=None):
    v = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    return orbit_field(p, m, p0, v)


def _perm(flip0, flip):
    return [_INDEX[(s0 * flip0, s * flip)] for s0, s in POINTS]


# (matrix, antilinear, flip of s0, flip of s)
def _table():
    ops = cl.discrete_ops()
    b = cl.build_basis()
    C, P, T = ops["C"][0], ops["P"][0], ops["T"][0]
    return {
        "P": (P.A, False, 1, -1),
        "T": (T.B, True, -1, 1),
        "C": (C.B, True, 1, 1),
        "R": (np.eye(4, dtype=complex), False, -1, -1),
        "g5": (b.gamma5, False, 1, 1),
    }


def apply_discrete(op, f):
    """Apply P, T, C, R, g5 or a composite given as a string like "g5 P C T".

    Composites are applied right to left, as operator products.
    """
    names = op.replace("γ5", "g5 ").replace("γ₅", "g5 ").split()
    if len(names) == 1 and names[0] not in _table():
        names = _split_compact(names[0])
    table = _table()
    v = f.values
    for name in reversed(names):
        M, anti, f0, fs = table[name]
        src = v.conj() if anti else v
        v = src[_perm(f0, fs)] @ M.T
    return f.with_values(v)


def _split_compact(s):
    out, i = [], 0
    while i < len(s):
        if s.startswith("g5", i):
            out.append("g5")
            i += 2
        else:
            out.append(s[i])
            i += 1
    return out


def _slashes(f, m):
    b = cl.build_basis()
    out = []
    for s0, s in POINTS:
        q = np.asarray(f.p) * s
        out.append(s0 * f.p0 * b.gamma[0] - sum(q[a] * b.gamma[a + 1] for a in range(3)))
    return np.array(out)


def apply_slash(f, m=1.0):
    S = _slashes(f, m)
    return f.with_values(np.einsum("kij,kj->ki", S, f.values))


def toy_operator(f, m=1.0):
    """(slash p + i m gamma5 PT) f at every orbit point."""
    pt = apply_discrete("g5 P T", f).values
    return f.with_values(apply_slash(f, m).values + 1j * m * pt)


def residual_toymodel(f, m=1.0):
    """max over points of |equation| relative to max |f|."""
    r = np.max(np.abs(toy_operator(f, m).values))
    s = np.max(np.abs(f.values))
    return float(r / s) if s > 0 else float(r)


def _realify(v):
    v = np.asarray(v).reshape(-1)
    return np.concatenate([v.real, v.imag])


def _complexify(x):
    return (x[:16] + 1j * x[16:]).reshape(4, 4)


def real_matrix(p, m=1.0, p0=None):
    """The 32x32 real matrix of the toy equation at one base momentum."""
    base = orbit_field(p, m, p0)
    cols = [_realify(toy_operator(base.with_values(_complexify(e)), m).values)
            for e in np.eye(32)]
    return np.array(cols).T


def solve_toymodel(p, m=1.0, p0=None, tol=1e-10):
    """Orthonormal real kernel basis as a list of OrbitFields."""
    base = orbit_field(p, m, p0)
    ker = null_space(real_matrix(p, m, base.p0), tol)
    return [base.with_values(_complexify(k)) for k in ker]


def gamma5pct_phase():
    """c with gamma5 PCT = c R, and the residual of that identity."""
    M = _compose_matrix("g5 P C T")
    c = M[0, 0]
    return complex(c), float(np.max(np.abs(M - c * np.eye(4))))


def _compose_matrix(op):
    """Matrix part of a linear composite that permutes points like R."""
    rng = np.random.default_rng(0)
    f = random_orbit_field(rng, (0.3, -0.2, 0.5))
    out = apply_discrete(op, f).values
    src = f.values[_perm(-1, -1)]
    # solve out_k = M src_k over the four points (16 equations per row of M)
    M, *_ = np.linalg.lstsq(src, out, rcond=None)
    return M.T


def reflection():
    """R = c^-1 gamma5 PCT, an involution commuting with C."""
    c, _ = gamma5pct_phase()

    def R(f):
        return f.with_values(apply_discrete("g5 P C T", f).values / c)
    return R


def toy_projector(f, eps, lam):
    """(1 + eps C)(1 + lam R)/4 with R = c^-1 gamma5 PCT."""
    R = reflection()
    a = f.values + lam * R(f).values
    g = f.with_values(a)
    return f.with_values(0.25 * (g.values + eps * apply_discrete("C", g).values))


def toy_projections(f):
    return {(e, l): toy_projector(f, e, l) for e in (1, -1) for l in (1, -1)}


def identification(proj):
    """Map toy projections to the four ELKO labels:
    psi^eps_+ = Psi^eps_+,  psi^eps_- = -i Psi^-eps_-.
    """
    out = {}
    for e in (1, -1):
        out[(e, 1)] = proj[(e, 1)]
        out[(e, -1)] = proj[(-e, -1)].with_values(-1j * proj[(-e, -1)].values)
    return out


def system1_on_orbit(proj, m=1.0):
    """Relative residual of the first-order system at every orbit point."""
    from .equations import SYSTEM1
    labs = identification(proj)
    S = _slashes(next(iter(labs.values())), m)
    scale = max(np.max(np.abs(v.values)) for v in labs.values())
    worst = 0.0
    for lab, partner, c in SYSTEM1:
        r = np.einsum("kij,kj->ki", S, labs[lab].values) + c * 1j * m * labs[partner].values
        worst = max(worst, float(np.max(np.abs(r))))
    return worst / scale if scale > 0 else worst


def projected_equation(proj, m=1.0):
    """slash Psi^eps_lam + eps lam m Psi^-eps_-lam residual."""
    S = _slashes(next(iter(proj.values())), m)
    scale = max(np.max(np.abs(v.values)) for v in proj.values())
    worst = 0.0
    for (e, l), v in proj.items():
        r = np.einsum("kij,kj->ki", S, v.values) + e * l * m * proj[(-e, -l)].values
        worst = max(worst, float(np.max(np.abs(r))))
    return worst / scale if scale > 0 else worst


def involution(f):
    """I = i gamma5 PT."""
    return f.with_values(1j * apply_discrete("g5 P T", f).values)
