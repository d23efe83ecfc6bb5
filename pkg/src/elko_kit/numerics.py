"""Numerical plumbing: nested forward-mode duals, real-linear spinor operators,
null spaces and a fixed-step RK4 flow integrator.
"""

import numpy as np


# ---------------------------------------------------------------------------
# forward-mode dual numbers
# ---------------------------------------------------------------------------

class Dual:
    """Forward-mode dual number with one derivative slot per direction.

    ``val`` and the entries of ``der`` may be numpy arrays (any shape, real or
    complex) or Duals of a lower ``level``; nesting gives exact higher
    derivatives.  Operands of different level are combined by treating the
    lower-level one as a constant at the higher level.
    """

    __array_ufunc__ = None  # make numpy defer to our reflected operators

    __slots__ = ("val", "der", "level")

    def __init__(self, val, der, level=None):
        self.val = val
        self.der = tuple(der)
        if level is None:
            level = 1 + max([_level(val)] + [_level(d) for d in self.der])
        self.level = level

    def __repr__(self):
        return f"Dual(level={self.level}, val={self.val!r}, der={self.der!r})"

    @property
    def nder(self):
        return len(self.der)

    def __add__(self, other):
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        return add(self, neg(other))

    def __rsub__(self, other):
        return add(other, neg(self))

    def __neg__(self):
        return neg(self)

    def __mul__(self, other):
        return mul(self, other)

    def __rmul__(self, other):
        return mul(other, self)

    def __truediv__(self, other):
        return mul(self, reciprocal(other))

    def __rtruediv__(self, other):
        return mul(other, reciprocal(self))

    def __pow__(self, n):
        if n == 2:
            return mul(self, self)
        if isinstance(n, int) and n > 0:
            out = self
            for _ in range(n - 1):
                out = mul(out, self)
            return out
        return power(self, n)

    def __matmul__(self, other):
        return matmul(self, other)

    def __rmatmul__(self, other):
        return matmul(other, self)

    def __getitem__(self, idx):
        return Dual(_index(self.val, idx), [_index(d, idx) for d in self.der], self.level)

    def conj(self):
        return conj(self)

    @property
    def real(self):
        return real(self)

    @property
    def imag(self):
        return imag(self)


def _level(x):
    return x.level if isinstance(x, Dual) else 0


def _index(x, idx):
    if isinstance(x, Dual) or np.ndim(x) > 0:
        return x[idx]
    return x


def _split(x, level):
    """Return (value, derivative list or None) of x viewed at ``level``."""
    if isinstance(x, Dual) and x.level == level:
        return x.val, x.der
    return x, None


def is_dual(x):
    return isinstance(x, Dual)


def add(a, b):
    L = max(_level(a), _level(b))
    if L == 0:
        return a + b
    av, ad = _split(a, L)
    bv, bd = _split(b, L)
    if ad is None:
        der = bd
    elif bd is None:
        der = ad
    else:
        der = [add(x, y) for x, y in zip(ad, bd)]
    return Dual(add(av, bv), der, L)


def neg(a):
    if isinstance(a, Dual):
        return Dual(neg(a.val), [neg(d) for d in a.der], a.level)
    return -a


def _bilinear(base):
    def op(a, b):
        L = max(_level(a), _level(b))
        if L == 0:
            return base(a, b)
        av, ad = _split(a, L)
        bv, bd = _split(b, L)
        n = len(ad) if ad is not None else len(bd)
        der = []
        for k in range(n):
            term = None
            if ad is not None:
                term = op(ad[k], bv)
            if bd is not None:
                t2 = op(av, bd[k])
                term = t2 if term is None else add(term, t2)
            der.append(term)
        return Dual(op(av, bv), der, L)
    op.__name__ = getattr(base, "__name__", "bilinear")
    return op


mul = _bilinear(lambda a, b: a * b)
matmul = _bilinear(lambda a, b: a @ b)
matvec = _bilinear(lambda A, x: np.einsum("...ij,...j->...i", A, x))


def _unary(f, df):
    """Lift f with derivative df (both Dual-aware) to nested duals."""
    def op(x):
        if not isinstance(x, Dual):
            return f(x)
        slope = df(x.val)
        return Dual(op(x.val), [mul(slope, d) for d in x.der], x.level)
    return op


def _conj_like(f):
    def op(x):
        if not isinstance(x, Dual):
            return f(x)
        return Dual(op(x.val), [op(d) for d in x.der], x.level)
    return op


conj = _conj_like(np.conj)
real = _conj_like(np.real)
imag = _conj_like(np.imag)

reciprocal = _unary(lambda x: 1.0 / x, lambda x: neg(reciprocal(mul(x, x))))
sqrt = _unary(np.sqrt, lambda x: mul(0.5, reciprocal(sqrt(x))))
exp = _unary(np.exp, lambda x: exp(x))
sin = _unary(np.sin, lambda x: cos(x))
cos = _unary(np.cos, lambda x: neg(sin(x)))
sinh = _unary(np.sinh, lambda x: cosh(x))
cosh = _unary(np.cosh, lambda x: sinh(x))
log = _unary(np.log, lambda x: reciprocal(x))
arccos = _unary(np.arccos, lambda x: neg(reciprocal(sqrt(add(1.0, neg(mul(x, x)))))))


def power(x, a):
    return exp(mul(a, log(x)))


def arctan2(y, x):
    L = max(_level(y), _level(x))
    if L == 0:
        return np.arctan2(y, x)
    yv, yd = _split(y, L)
    xv, xd = _split(x, L)
    r2 = add(mul(xv, xv), mul(yv, yv))
    inv = reciprocal(r2)
    n = len(yd) if yd is not None else len(xd)
    der = []
    for k in range(n):
        t = 0.0
        if yd is not None:
            t = add(t, mul(xv, yd[k]))
        if xd is not None:
            t = add(t, neg(mul(yv, xd[k])))
        der.append(mul(t, inv))
    return Dual(arctan2(yv, xv), der, L)


def seed(q):
    """Attach one fresh derivative direction per coordinate of ``q``.

    ``q`` is a sequence of coordinates (arrays or Duals).  The returned
    coordinates live one level above everything in ``q``.
    """
    q = list(q)
    L = 1 + max(_level(x) for x in q)
    out = []
    for a, x in enumerate(q):
        der = [1.0 if b == a else 0.0 for b in range(len(q))]
        out.append(Dual(x, der, L))
    return out


def primal(x):
    """Strip every dual layer."""
    while isinstance(x, Dual):
        x = x.val
    return x


def grad(f, q):
    """Value and exact gradient of scalar/array function f at real q."""
    out = f(seed(q))
    if not isinstance(out, Dual):
        return out, [np.zeros_like(out) for _ in q]
    return out.val, [np.broadcast_to(d, np.shape(out.val)) for d in out.der]


def hessian(f, q):
    """Exact second derivatives via depth-2 nesting; returns H[a][b]."""
    inner = seed(q)
    outer = seed(inner)
    out = f(outer)
    n = len(q)
    H = [[None] * n for _ in range(n)]
    for a in range(n):
        da = out.der[a]
        for b in range(n):
            H[a][b] = da.der[b] if isinstance(da, Dual) else 0.0
    return H


# ---------------------------------------------------------------------------
# real-linear operators  psi -> A psi + B conj(psi)
# ---------------------------------------------------------------------------

class RealLinearOp:
    """Operator psi -> A psi + B psi* on 4-spinors.

    A and B may carry leading batch axes (shape ``(..., 4, 4)``) or be Duals
    of such arrays.  ``B is None`` marks a complex-linear operator.
    """

    __slots__ = ("A", "B")

    def __init__(self, A, B=None):
        self.A = A
        self.B = B

    def __repr__(self):
        return f"RealLinearOp(A={self.A!r}, B={self.B!r})"

    @classmethod
    def linear(cls, A):
        return cls(A, None)

    @classmethod
    def antilinear(cls, B, dim=4):
        return cls(np.zeros((dim, dim), complex), B)

    @classmethod
    def identity(cls, dim=4):
        return cls(np.eye(dim, dtype=complex), None)

    @property
    def is_linear(self):
        return self.B is None

    def _Bfull(self):
        if self.B is None:
            return np.zeros_like(primal(self.A))
        return self.B

    def __call__(self, psi):
        return self.apply(psi)

    def apply(self, psi):
        out = matvec(self.A, psi)
        if self.B is not None:
            out = add(out, matvec(self.B, conj(psi)))
        return out

    def compose(self, other):
        """self o other"""
        A1, B1, A2, B2 = self.A, self.B, other.A, other.B
        A = matmul(A1, A2)
        if B1 is not None and B2 is not None:
            A = add(A, matmul(B1, conj(B2)))
        B = None
        if B1 is not None:
            B = matmul(B1, conj(A2))
        if B2 is not None:
            t = matmul(A1, B2)
            B = t if B is None else add(B, t)
        return RealLinearOp(A, B)

    def __matmul__(self, other):
        if isinstance(other, RealLinearOp):
            return self.compose(other)
        return self.apply(other)

    def __add__(self, other):
        B = self.B
        if other.B is not None:
            B = other.B if B is None else add(B, other.B)
        return RealLinearOp(add(self.A, other.A), B)

    def __sub__(self, other):
        return self + other.scale(-1.0)

    def __neg__(self):
        return self.scale(-1.0)

    def scale(self, c):
        """Left multiplication by a complex scalar (or batch of scalars)."""
        c = _as_matrix_scalar(c)
        return RealLinearOp(mul(c, self.A), None if self.B is None else mul(c, self.B))

    def rscale(self, c):
        """Right multiplication by a complex scalar: (A c, B c*)."""
        c = _as_matrix_scalar(c)
        return RealLinearOp(mul(self.A, c), None if self.B is None else mul(self.B, conj(c)))

    def adjoint(self):
        """Adjoint for the real inner product Re<phi, psi>."""
        A = np.conj(np.swapaxes(self.A, -1, -2))
        B = None if self.B is None else np.swapaxes(self.B, -1, -2)
        return RealLinearOp(A, B)

    def realify(self):
        """8x8 real matrix acting on (Re psi, Im psi)."""
        A = np.asarray(self.A)
        B = np.asarray(self._Bfull())
        top = np.concatenate([A.real + B.real, -A.imag + B.imag], axis=-1)
        bot = np.concatenate([A.imag + B.imag, A.real - B.real], axis=-1)
        return np.concatenate([top, bot], axis=-2)

    def norm(self):
        """Max-abs entry norm summed over both parts (batch-reduced)."""
        n = np.max(np.abs(self.A))
        if self.B is not None:
            n = n + np.max(np.abs(self.B))
        return float(n)

    def derivative(self, a):
        """Coefficient derivative along seeded direction a (Dual entries)."""
        dA = self.A.der[a] if isinstance(self.A, Dual) else 0.0 * primal(self.A)
        dB = None
        if self.B is not None:
            dB = self.B.der[a] if isinstance(self.B, Dual) else 0.0 * primal(self.B)
        return RealLinearOp(dA, dB)

    def strip(self, level):
        """Value part at the given dual level."""
        A = self.A.val if _level(self.A) == level else self.A
        B = self.B
        if B is not None and _level(B) == level:
            B = B.val
        return RealLinearOp(A, B)


def _as_matrix_scalar(c):
    if isinstance(c, Dual) or np.ndim(c) > 0:
        return c[..., None, None]
    return c


def op_distance(f, g):
    """Max-abs entrywise difference between two operators."""
    d = f - g
    return d.norm()


def kappa():
    """Complex conjugation as a RealLinearOp."""
    return RealLinearOp.antilinear(np.eye(4, dtype=complex))


# ---------------------------------------------------------------------------
# linear algebra helpers
# ---------------------------------------------------------------------------

def null_space(M, tol=1e-10):
    """Orthonormal kernel basis of a dense real matrix.

    Vectors v are kept when the corresponding singular value is at most
    ``tol * ||M||_2``.  Returns an array of shape (k, n); k may be 0.
    """
    M = np.atleast_2d(np.asarray(M, dtype=float))
    n = M.shape[1]
    _, s, vt = np.linalg.svd(M, full_matrices=True)
    scale = s[0] if s.size and s[0] > 0 else 1.0
    sv = np.zeros(n)
    sv[: s.size] = s
    keep = sv <= tol * scale
    if not np.any(M):
        keep[:] = True
    return vt[keep]


def lincomb(coeffs, mats):
    """Sum_k c_k M_k with scalar (possibly batched / dual) coefficients."""
    out = 0.0
    for c, M in zip(coeffs, mats):
        if isinstance(c, (int, float)) and c == 0:
            continue
        out = add(out, mul(_as_matrix_scalar(c), M))
    return out


# ---------------------------------------------------------------------------
# ODE flows
# ---------------------------------------------------------------------------

class IntegrationError(RuntimeError):
    pass


def _rk4(rhs, y, grid):
    for k in range(len(grid) - 1):
        t = grid[k]
        h = grid[k + 1] - grid[k]
        hb = _batch(h, y)
        k1 = rhs(t, y)
        k2 = rhs(t + 0.5 * h, y + 0.5 * hb * k1)
        k3 = rhs(t + 0.5 * h, y + 0.5 * hb * k2)
        k4 = rhs(t + h, y + hb * k3)
        y = y + hb / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
    return y


def _batch(h, y):
    h = np.asarray(h)
    if h.ndim == 0:
        return h
    return h.reshape(h.shape + (1,) * (np.ndim(y) - h.ndim))


def refine(grid):
    """Insert midpoints into every interval of a grid (leading axis = nodes)."""
    grid = np.asarray(grid, dtype=float)
    mid = 0.5 * (grid[1:] + grid[:-1])
    out = np.empty((2 * len(grid) - 1,) + grid.shape[1:])
    out[0::2] = grid
    out[1::2] = mid
    return out


def integrate_flow(rhs, y0, theta_final=None, steps=64, grid=None, rtol=1e-8,
                   max_halvings=10, return_info=False):
    """Classic RK4 on a fixed grid with a Richardson halving check.

    Either give ``theta_final`` and an initial number of ``steps`` (uniform
    grid from 0), or an explicit ``grid`` of nodes (shape (n,) or (n, batch)
    for per-sample grids).  The grid is halved until two successive results
    agree to ``rtol`` relative; otherwise IntegrationError is raised.
    """
    y0 = np.asarray(y0)
    if grid is None:
        if theta_final is None:
            raise ValueError("need theta_final or grid")
        grid = np.linspace(0.0, theta_final, steps + 1)
    grid = np.asarray(grid, dtype=float)
    coarse = _rk4(rhs, y0, grid)
    for _ in range(max_halvings):
        grid = refine(grid)
        fine = _rk4(rhs, y0, grid)
        scale = max(np.max(np.abs(fine)), np.finfo(float).tiny)
        change = np.max(np.abs(fine - coarse)) / scale
        if change <= rtol:
            if return_info:
                return fine, {"steps": len(grid) - 1, "change": float(change)}
            return fine
        coarse = fine
    raise IntegrationError(f"no convergence under step halving (last change {change:.3e})")
