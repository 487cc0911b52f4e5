"""Group-algebra operations on quadrature grids.

Functions on the group are carried as :class:`GridFunction`: nodewise
values on a Haar quadrature grid, optionally backed by an exact callable
on quaternions (used for off-node evaluation during convolution) and/or
a radial (class-function) profile.

Convolution uses the normalized Haar measure,
``(A * B)(u) = sum_v w_v A(v) B(v^-1 u)``, so the idempotents
``eps(j) = (2j+1) chi(j)`` satisfy ``eps(j) * eps(j) = eps(j)``.  The
right factor is evaluated off-node by interpolation: a 1D table in
``Re(v^-1 u)`` when B is central, otherwise a trilinear table in
``(k, cos(theta), phi)``.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field

import numpy as np
import sympy as sp
from scipy.interpolate import CubicSpline
from scipy.special import sph_harm_y

from . import _kernels, haar, irreps
from .errors import (
    NotInIdeal,
    RankOutOfRange,
    ResolutionMismatch,
)

__all__ = [
    "GridFunction",
    "from_fn",
    "class_function",
    "idempotent_function",
    "matrix_element",
    "delta_partial_sum",
    "sigma_projection",
    "character_derivative",
    "convolve",
    "conv_commutator",
    "project_ideal",
    "RadialProfile",
    "radial_profile",
    "multipole_Q",
    "TracelessTensor",
    "traceless_tensor",
    "SpinTensor",
    "spin_tensor",
    "T_function",
    "expand_in_Q",
    "synthesize_Q",
    "expand_in_T",
    "synthesize_T",
    "inverse_indices",
]

_TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# GridFunction


@dataclass
class GridFunction:
    """Complex-valued function sampled on a Haar quadrature grid."""

    grid: haar.QuadratureGrid
    values: np.ndarray
    fn: object = None  # optional exact callable on quaternions (..., 4)
    radial: object = None  # optional exact callable on k (class functions)
    info: dict = field(default_factory=dict)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if self.values.shape != self.grid.shape:
            raise ResolutionMismatch(
                f"values shape {self.values.shape} != grid shape {self.grid.shape}"
            )

    def is_central(self, tol: float = 1e-9) -> bool:
        if self.radial is not None:
            return True
        spread = np.abs(
            self.values - self.values[:, :1, :1]
        ).max()
        scale = max(np.abs(self.values).max(), 1.0)
        return spread <= tol * scale

    def norm(self) -> float:
        """L2 norm under the normalized Haar measure."""
        return float(
            np.sqrt(
                haar.integrate(self.grid, np.abs(self.values) ** 2).real
            )
        )

    def hermitian_residual(self) -> float:
        """Nodewise max of ``|f(u) - conj(f(u^-1))|``."""
        ik, ic, ip = inverse_indices(self.grid)
        finv = self.values[ik][:, ic][:, :, ip]
        return float(np.abs(self.values - np.conj(finv)).max())

    def __add__(self, other):
        _same_grid(self, other)
        return GridFunction(self.grid, self.values + other.values)

    def __sub__(self, other):
        _same_grid(self, other)
        return GridFunction(self.grid, self.values - other.values)

    def __mul__(self, c):
        out = GridFunction(self.grid, self.values * c)
        if self.radial is not None:
            r = self.radial
            out.radial = lambda k, r=r, c=c: np.asarray(r(k)) * c
        if self.fn is not None:
            f = self.fn
            out.fn = lambda q, f=f, c=c: np.asarray(f(q)) * c
        return out

    __rmul__ = __mul__


def _same_grid(a: GridFunction, b: GridFunction):
    if a.grid is not b.grid and a.grid.shape != b.grid.shape:
        raise ResolutionMismatch("grid functions live on different grids")


def inverse_indices(grid: haar.QuadratureGrid):
    """Index maps realizing u -> u^-1: (k, theta, phi) -> (k, pi-theta, phi+pi).

    Inversion keeps the rotation angle and flips the axis.  The
    cos(theta) Gauss-Legendre node set is symmetric and the phi nodes are
    uniform, so the grid is closed under inversion whenever n_phi is
    even.
    """
    n_k, n_c, n_p = grid.shape
    if n_p % 2:
        raise ResolutionMismatch("inversion closure requires even n_phi")
    return (
        np.arange(n_k),
        np.arange(n_c)[::-1],
        np.roll(np.arange(n_p), -(n_p // 2)),
    )


def _angles_from_quat(q):
    w, _, n = _unit_axis(q)
    k = 2.0 * np.arccos(w)
    ct = np.clip(n[..., 2], -1.0, 1.0)
    phi = np.mod(np.arctan2(n[..., 1], n[..., 0]), _TWO_PI)
    return k, np.arccos(ct), phi


def from_fn(grid: haar.QuadratureGrid, fn) -> GridFunction:
    """Sample a quaternion callable on the grid, keeping it for off-node use."""
    q = haar.grid_quaternions(grid)
    return GridFunction(grid, np.asarray(fn(q), dtype=complex), fn=fn)


def class_function(grid: haar.QuadratureGrid, radial) -> GridFunction:
    """Central function built from a radial profile ``radial(k)``."""
    vals = np.broadcast_to(
        np.asarray(radial(grid.k), dtype=complex)[:, None, None], grid.shape
    ).copy()
    gf = GridFunction(grid, vals, radial=radial)
    gf.fn = lambda q: np.asarray(
        radial(2.0 * np.arccos(np.clip(np.asarray(q)[..., 0], -1.0, 1.0))),
        dtype=complex,
    )
    return gf


def idempotent_function(grid: haar.QuadratureGrid, two_j: int) -> GridFunction:
    return class_function(grid, lambda k: irreps.idempotent(two_j, k))


def matrix_element(
    grid: haar.QuadratureGrid, two_j: int, m: float, k: float, hbar: float = 1.0
) -> GridFunction:
    """``eps(j)_mk = (2j+1) D(j)_mk`` as a grid function with exact callable."""
    j = 0.5 * two_j
    row = int(round(m + j))
    col = int(round(k + j))
    if not (0 <= row <= two_j and 0 <= col <= two_j):
        raise RankOutOfRange("labels m, k must lie in -j..j")

    def fn(q):
        q = np.asarray(q, dtype=float)
        kv = _rotvec_from_quat(q)
        D = irreps.wigner_d_grid(two_j, kv, hbar)
        return (two_j + 1.0) * D[..., row, col]

    return from_fn(grid, fn)


def _unit_axis(q):
    """Rotation axis of a quaternion; defaults to +z where it is undefined.

    Near k in {0, 2pi} the vector part underflows while sqrt(1 - w^2)
    can be exactly zero, so a naive division produces astronomically
    wrong axes; the axis is immaterial there (the group element is
    central up to O(s)), so any fixed unit vector is correct.
    """
    q = np.asarray(q, dtype=float)
    w = np.clip(q[..., 0], -1.0, 1.0)
    s = np.sqrt(np.maximum(1.0 - w * w, 0.0))
    good = s > 1e-12
    n = np.where(
        good[..., None],
        q[..., 1:] / np.where(good, s, 1.0)[..., None],
        np.array([0.0, 0.0, 1.0]),
    )
    return w, s, n


def _rotvec_from_quat(q):
    w, _, n = _unit_axis(q)
    k = 2.0 * np.arccos(w)
    return k[..., None] * n


def delta_partial_sum(grid: haar.QuadratureGrid, two_j_max: int) -> GridFunction:
    """Dirichlet-kernel mollifier ``sum_{2j <= 2J} eps(j)``."""

    def radial(k):
        return sum(irreps.idempotent(tj, k) for tj in range(two_j_max + 1))

    return class_function(grid, radial)


def character_derivative(two_j: int, k) -> np.ndarray:
    """d chi(j)/dk via the cosine-sum form ``chi = sum_m cos(m k)``."""
    k = np.asarray(k, dtype=float)
    ms = -0.5 * two_j + np.arange(two_j + 1)
    return -np.sum(ms[:, None] * np.sin(np.multiply.outer(ms, k.ravel())), axis=0).reshape(k.shape)


def sigma_projection(
    grid: haar.QuadratureGrid, two_j: int, a: int, hbar: float = 1.0
) -> GridFunction:
    """Angular-momentum projection ``Sigma(j)_a = i hbar (2j+1) chi'(k) n_a``.

    Closed form: the radial contraction of the invariant fields is the
    plain d/dk on class functions, so this is ``i hbar`` times the
    left/right invariant derivative of eps(j) along axis ``a`` -- the
    spin observable applied to the block unit.  The i*hbar scaling is
    what makes the left/right convolution eigenvalues on the canonical
    basis come out as m*hbar and k*hbar; the function is Hermitian
    because n_a is odd under inversion.
    """

    def fn(q):
        w, _, n = _unit_axis(q)
        k = 2.0 * np.arccos(w)
        return 1j * hbar * (two_j + 1.0) * character_derivative(two_j, k) * n[..., a]

    return from_fn(grid, fn)


# ---------------------------------------------------------------------------
# convolution


def _central_table(B: GridFunction, n_tab: int) -> np.ndarray:
    """Sample the central factor as a function of w = cos(k/2) on [-1, 1]."""
    wgrid = np.linspace(-1.0, 1.0, n_tab)
    kgrid = 2.0 * np.arccos(wgrid[::-1])  # increasing k
    if B.radial is not None:
        vals = np.asarray(B.radial(kgrid), dtype=complex)
    else:
        prof = B.values[:, 0, 0]
        spline_r = CubicSpline(B.grid.k, prof.real)
        spline_i = CubicSpline(B.grid.k, prof.imag)
        kc = np.clip(kgrid, B.grid.k[0], B.grid.k[-1])
        vals = spline_r(kc) + 1j * spline_i(kc)
    return vals[::-1].copy()  # indexed by increasing w


def _general_table(B: GridFunction, shape) -> np.ndarray:
    nk, nc, nf = shape
    k = np.linspace(0.0, _TWO_PI, nk)
    ct = np.linspace(-1.0, 1.0, nc)
    phi = _TWO_PI * np.arange(nf) / nf
    K, C, P = np.meshgrid(k, ct, phi, indexing="ij")
    if B.fn is not None:
        st = np.sqrt(1.0 - C * C)
        q = np.stack(
            [
                np.cos(0.5 * K),
                np.sin(0.5 * K) * st * np.cos(P),
                np.sin(0.5 * K) * st * np.sin(P),
                np.sin(0.5 * K) * C,
            ],
            axis=-1,
        )
        return np.asarray(B.fn(q), dtype=complex)
    # resample grid values axis by axis (cubic in k and cos(theta),
    # periodic linear in phi)
    g = B.grid
    vals = B.values
    out = CubicSpline(g.k, vals, axis=0)(np.clip(k, g.k[0], g.k[-1]))
    out = CubicSpline(g.ctheta, out, axis=1)(ct)
    phi_ext = np.concatenate([g.phi, [_TWO_PI]])
    out_ext = np.concatenate([out, out[:, :, :1]], axis=2)
    idx = np.interp(phi, phi_ext, np.arange(len(phi_ext)))
    i0 = np.minimum(idx.astype(int), len(g.phi))
    fr = idx - i0
    return out_ext[:, :, i0] * (1 - fr) + out_ext[:, :, np.minimum(i0 + 1, len(g.phi))] * fr


def convolve(
    A: GridFunction,
    B: GridFunction,
    out_idx=None,
    table_size: int = 8192,
    fine_shape=(192, 96, 128),
) -> GridFunction | np.ndarray:
    """Group convolution ``(A * B)(u) = sum_v w_v A(v) B(v^-1 u)``.

    ``out_idx`` (flat node indices) restricts the output nodes and makes
    the result a plain complex array; otherwise a full GridFunction is
    returned.  When both factors are central only one output node per
    k-ring is computed and the central result is broadcast.
    """
    _same_grid(A, B)
    grid = A.grid
    qv = haar.grid_quaternions(grid).reshape(-1, 4)
    cv = (grid.weights * A.values).reshape(-1).astype(complex)

    b_central = B.is_central()
    if b_central:
        table = _central_table(B, table_size)
        if out_idx is None and A.is_central():
            # central output: evaluate on one representative per k-ring
            qout = np.stack(
                [
                    np.cos(0.5 * grid.k),
                    np.zeros_like(grid.k),
                    np.zeros_like(grid.k),
                    np.sin(0.5 * grid.k),
                ],
                axis=-1,
            )
            ring = np.empty(len(grid.k), dtype=complex)
            _kernels.conv_central(qv, cv, table, qout, ring)
            vals = np.broadcast_to(ring[:, None, None], grid.shape).copy()
            out = GridFunction(grid, vals)
            out.info["path"] = "central-central"
            return out
        qout = qv if out_idx is None else qv[np.asarray(out_idx)]
        res = np.empty(qout.shape[0], dtype=complex)
        _kernels.conv_central(qv, cv, table, qout, res)
        if out_idx is not None:
            return res
        out = GridFunction(grid, res.reshape(grid.shape))
        out.info["path"] = "central-right"
        return out

    table = _general_table(B, fine_shape)
    qout = qv if out_idx is None else qv[np.asarray(out_idx)]
    res = np.empty(qout.shape[0], dtype=complex)
    _kernels.conv_general(qv, cv, table, qout, res)
    if out_idx is not None:
        return res
    out = GridFunction(grid, res.reshape(grid.shape))
    out.info["path"] = "general"
    return out


def conv_commutator(A: GridFunction, B: GridFunction, out_idx=None):
    """``[A, B] = A*B - B*A``; vanishes when either factor is central."""
    ab = convolve(A, B, out_idx=out_idx)
    ba = convolve(B, A, out_idx=out_idx)
    if out_idx is not None:
        return ab - ba
    return GridFunction(A.grid, ab.values - ba.values)


def project_ideal(F: GridFunction, two_j: int) -> GridFunction:
    """Projection onto the spectral block: ``F * eps(j)``."""
    return convolve(F, idempotent_function(F.grid, two_j))


# ---------------------------------------------------------------------------
# multipole basis


@dataclass
class RadialProfile:
    """Radial factor of the multipole basis, generated symbolically."""

    two_j: int
    l: int
    expr: object  # sympy expression in k

    def __call__(self, k):
        if not hasattr(self, "_fn"):
            self._fn = sp.lambdify(sp.symbols("k"), self.expr, "numpy")
        return self._fn(np.asarray(k, dtype=float))

    def ode_residual(self, k_points) -> float:
        """Max residual of f'' + ctg(k/2) f' + (j(j+1) - l(l+1)/(4 sin^2(k/2))) f."""
        ksym = sp.symbols("k")
        j = sp.Rational(self.two_j, 2)
        lhs = (
            sp.diff(self.expr, ksym, 2)
            + sp.cot(ksym / 2) * sp.diff(self.expr, ksym)
            + (j * (j + 1) - sp.Rational(self.l * (self.l + 1), 4) / sp.sin(ksym / 2) ** 2)
            * self.expr
        )
        # evaluate in extended precision: the residual cancels analytically,
        # and float64 evaluation of the unsimplified form loses ~l digits
        return float(
            max(
                abs(lhs.evalf(40, subs={ksym: sp.Float(kp, 40)}))
                for kp in np.asarray(k_points, dtype=float)
            )
        )


@functools.lru_cache(maxsize=None)
def radial_profile(two_j: int, l: int) -> RadialProfile:
    """Iterated lowering of the idempotent: f_{j,l+1} = (d/dk - (l/2) ctg(k/2)) f_{j,l}."""
    if not 0 <= l <= two_j:
        raise RankOutOfRange(f"l must satisfy 0 <= l <= 2j = {two_j}")
    k = sp.symbols("k")
    f = (two_j + 1) * sp.sin(sp.Rational(two_j + 1, 2) * k) / sp.sin(k / 2)
    for n in range(l):
        f = sp.together(sp.diff(f, k) - sp.Rational(n, 2) * sp.cot(k / 2) * f)
    return RadialProfile(two_j=two_j, l=l, expr=sp.simplify(f))


def multipole_Q(
    grid: haar.QuadratureGrid, two_j: int, l: int, m: int
) -> GridFunction:
    """``Q{j}_lm = f_jl(k) Y_lm(n)`` with orthonormal spherical harmonics."""
    if not 0 <= l <= two_j:
        raise RankOutOfRange(f"l must satisfy 0 <= l <= 2j = {two_j}")
    if abs(m) > l:
        raise RankOutOfRange("|m| must not exceed l")
    prof = radial_profile(two_j, l)

    def fn(q):
        k, theta, phi = _angles_from_quat(q)
        return prof(k) * sph_harm_y(l, m, theta, phi)

    gf = from_fn(grid, fn)
    if l == 0:
        gf.radial = lambda k: prof(k) / np.sqrt(4.0 * np.pi)
    return gf


# ---------------------------------------------------------------------------
# traceless tensors


def _symmetrize(T: np.ndarray, rank: int) -> np.ndarray:
    extra = T.ndim - rank
    perms = list(itertools.permutations(range(rank)))
    out = np.zeros_like(T)
    for p in perms:
        out += np.transpose(T, p + tuple(range(rank, rank + extra)))
    return out / len(perms)


def _delta_basis(rank: int, core: np.ndarray, core_rank: int) -> np.ndarray:
    """Sym(delta^{(rank-core_rank)/2} (x) core) with extra trailing axes allowed."""
    n_delta = (rank - core_rank) // 2
    t = core
    for _ in range(n_delta):
        t = np.multiply.outer(np.eye(3), t)
    return _symmetrize(t, rank)


@dataclass(frozen=True)
class TracelessTensor:
    l: int
    components: np.ndarray

    def trace_residual(self) -> float:
        if self.l < 2:
            return 0.0
        return float(np.abs(np.trace(self.components, axis1=0, axis2=1)).max())


def _detrace(T: np.ndarray, rank: int, cores: list) -> np.ndarray:
    """Subtract delta-terms so the pair trace vanishes.

    ``cores`` holds the lower-rank symmetric companions (rank-2p each,
    p >= 1) whose delta-padded symmetrizations span the trace corrections.
    """
    if rank < 2:
        return T
    basis = [
        _delta_basis(rank, core, rank - 2 * (p + 1))
        for p, core in enumerate(cores)
    ]
    tr = lambda X: np.trace(X, axis1=0, axis2=1).reshape(-1)
    rhs = -tr(T)
    M = np.stack([tr(Bp) for Bp in basis], axis=1)
    if np.iscomplexobj(M) or np.iscomplexobj(rhs):
        M = np.concatenate([M.real, M.imag], axis=0)
        rhs = np.concatenate([rhs.real, rhs.imag], axis=0)
    coef, *_ = np.linalg.lstsq(M, rhs, rcond=None)
    out = T.astype(complex) if np.iscomplexobj(T) else T.copy()
    for c, Bp in zip(coef, basis):
        out = out + c * Bp
    return out


def _vector_power(n: np.ndarray, p: int) -> np.ndarray:
    t = np.array(1.0)
    for _ in range(p):
        t = np.multiply.outer(n, t)
    return t


def traceless_tensor(l: int, n) -> TracelessTensor:
    """Detraced symmetric power of a unit axis vector; l=1 gives n itself."""
    n = np.asarray(n, dtype=float)
    n = n / np.linalg.norm(n)
    T = _vector_power(n, l)
    cores = [_vector_power(n, l - 2 * (p + 1)) for p in range(l // 2)]
    out = _detrace(T, l, cores)
    return TracelessTensor(l=l, components=np.real_if_close(out))


@dataclass(frozen=True)
class SpinTensor:
    two_j: int
    l: int
    matrices: np.ndarray  # shape (3,)*l + (dim, dim)


def _sym_spin_product(S: np.ndarray, l: int) -> np.ndarray:
    dim = S.shape[-1]
    if l == 0:
        return np.eye(dim, dtype=complex)
    T = np.zeros((3,) * l + (dim, dim), dtype=complex)
    for idx in itertools.product(range(3), repeat=l):
        acc = np.eye(dim, dtype=complex)
        for a in idx:
            acc = acc @ S[a]
        T[idx] = acc
    return _symmetrize(T, l)


def spin_tensor(two_j: int, l: int, hbar: float = 1.0) -> SpinTensor:
    """Traceless symmetrized spin-matrix powers ``0S(j,l)``."""
    if not 0 <= l <= two_j:
        raise RankOutOfRange(f"l must satisfy 0 <= l <= 2j = {two_j}")
    S = irreps.spin_matrices(two_j, hbar).S
    T = _sym_spin_product(S, l)
    cores = [_sym_spin_product(S, l - 2 * (p + 1)) for p in range((l) // 2)]
    out = _detrace(T, l, cores)
    return SpinTensor(two_j=two_j, l=l, matrices=out)


def T_function(
    grid: haar.QuadratureGrid, two_j: int, l: int, indices, hbar: float = 1.0
) -> GridFunction:
    """``T(j,l)_{a1..al}(u) = (2j+1) Tr(0S(j,l)_{a1..al} D(j)(u))``."""
    st = spin_tensor(two_j, l, hbar)
    mat = st.matrices[tuple(indices)] if l > 0 else st.matrices

    def fn(q):
        kv = _rotvec_from_quat(np.asarray(q, dtype=float))
        D = irreps.wigner_d_grid(two_j, kv, hbar)
        return (two_j + 1.0) * np.einsum("ab,...ba->...", mat, D)

    return from_fn(grid, fn)


# ---------------------------------------------------------------------------
# expansions in the spectral block M(j)


def _q_basis(grid, two_j):
    labels = []
    funcs = []
    for l in range(two_j + 1):
        for m in range(-l, l + 1):
            labels.append((l, m))
            funcs.append(multipole_Q(grid, two_j, l, m))
    return labels, funcs


def expand_in_Q(
    F: GridFunction, two_j: int, tol: float = 1e-5
) -> dict[tuple[int, int], complex]:
    """Coefficients of F over the multipole basis of M(j).

    Least squares against the Gram of the (2j+1)^2 basis functions;
    raises NotInIdeal if the reconstruction residual exceeds ``tol``
    relative to ``|F|``.
    """
    labels, funcs = _q_basis(F.grid, two_j)
    w = F.grid.weights.reshape(-1)
    V = np.stack([f.values.reshape(-1) for f in funcs], axis=1)
    G = (V.conj() * w[:, None]).T @ V
    rhs = (V.conj() * w[:, None]).T @ F.values.reshape(-1)
    coef = np.linalg.solve(G, rhs)
    resid = F.values.reshape(-1) - V @ coef
    rel = np.sqrt((w * np.abs(resid) ** 2).sum()) / max(F.norm(), 1e-300)
    if rel > tol:
        raise NotInIdeal(
            f"reconstruction residual {rel:.3e} exceeds {tol:.1e}; "
            f"function is not in the block j = {two_j / 2}"
        )
    return dict(zip(labels, coef))


def synthesize_Q(
    grid: haar.QuadratureGrid, two_j: int, coeffs: dict
) -> GridFunction:
    out = np.zeros(grid.shape, dtype=complex)
    for (l, m), c in coeffs.items():
        out += c * multipole_Q(grid, two_j, l, m).values
    return GridFunction(grid, out)


def expand_in_T(
    F: GridFunction, two_j: int, hbar: float = 1.0, tol: float = 1e-5
) -> list[np.ndarray]:
    """Symmetric-traceless tensors P(l) with ``F = sum_l P(l)^{a..} T(j,l)_{a..}``.

    The T components are redundant (3^l of them span 2l+1 dimensions), so
    the coefficients are fixed by least squares and returned already
    detraced.
    """
    w = F.grid.weights.reshape(-1)
    cols = []
    meta = []
    for l in range(two_j + 1):
        for idx in itertools.product(range(3), repeat=l):
            cols.append(T_function(F.grid, two_j, l, idx, hbar).values.reshape(-1))
            meta.append((l, idx))
    V = np.stack(cols, axis=1)
    A = V * np.sqrt(w)[:, None]
    b = F.values.reshape(-1) * np.sqrt(w)
    coef, *_ = np.linalg.lstsq(A, b, rcond=None)
    rel = np.linalg.norm(A @ coef - b) / max(np.linalg.norm(b), 1e-300)
    if rel > tol:
        raise NotInIdeal(
            f"reconstruction residual {rel:.3e} exceeds {tol:.1e}"
        )
    out = []
    for l in range(two_j + 1):
        P = np.zeros((3,) * l, dtype=complex)
        for c, (ll, idx) in zip(coef, meta):
            if ll == l:
                P[idx] = c
        P = _symmetrize(P, l) if l > 1 else P
        if l >= 2:
            P = _traceless_projection(P, l)
        out.append(np.real_if_close(P))
    return out


def _traceless_projection(P: np.ndarray, l: int) -> np.ndarray:
    """Remove delta-parts of a symmetric tensor via its successive traces."""
    cores = []
    t = P
    for _ in range(l // 2):
        t = np.trace(t, axis1=0, axis2=1)
        cores.append(_symmetrize(t, t.ndim) if t.ndim > 1 else t)
    return _detrace(P, l, cores)


def synthesize_T(
    grid: haar.QuadratureGrid, two_j: int, tensors: list, hbar: float = 1.0
) -> GridFunction:
    out = np.zeros(grid.shape, dtype=complex)
    for l, P in enumerate(tensors):
        P = np.asarray(P)
        if l == 0:
            out += complex(P) * T_function(grid, two_j, 0, (), hbar).values
            continue
        for idx in itertools.product(range(3), repeat=l):
            if P[idx] != 0:
                out += P[idx] * T_function(grid, two_j, l, idx, hbar).values
    return GridFunction(grid, out)
