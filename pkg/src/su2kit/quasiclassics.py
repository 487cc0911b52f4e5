"""Large-spin asymptotics and Lie-Poisson structure on the so(3) coalgebra.

Covers the two-peak asymptotic characters, Dirichlet-kernel delta
sequences and their flat-space (R^3) counterparts, the truncated-algebra
convolution comparison (group convolution degenerating to flat
convolution plus a bracket correction), the Lie-Poisson bracket with its
Darboux chart, advective density evolution, and symbolic coadjoint-orbit
states.

The recurring ``j(j+1) ~ (j+1/2)^2 ~ j^2`` large-j indifference is
exposed as the :class:`JSquare` enum wherever the squared spin appears.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
import sympy as sp
from scipy import integrate as sci_integrate

from . import groupalgebra, haar, irreps
from .errors import (
    LabelOutOfRange,
    QuadratureFailure,
    RankOutOfRange,
    StepUnstable,
    WindowInvalid,
)

__all__ = [
    "JSquare",
    "epsilon_asymptotic",
    "dirac_sequence_integral",
    "classical_idempotent",
    "classical_delta_reconstruction",
    "flat_radial_profile",
    "two_peak_profile",
    "gaussian_class_state",
    "flat_convolve_central",
    "truncated_convolution_compare",
    "CoalgebraField",
    "coordinate_field",
    "darboux_fields",
    "lie_poisson_bracket",
    "BoxGrid",
    "make_box",
    "evolve_density",
    "OrbitState",
    "orbit_state",
    "orbit_eigencheck",
    "QuasiState",
    "window_flags",
    "quasistate_synthesize",
    "peak_ratio",
]

_TWO_PI = 2.0 * math.pi


class JSquare(enum.Enum):
    """Selectable convention for the squared spin at large j."""

    J_JPLUS1 = "j(j+1)"
    JPLUSHALF_SQ = "(j+1/2)^2"
    J_SQ = "j^2"

    def value_of(self, j: float) -> float:
        if self is JSquare.J_JPLUS1:
            return j * (j + 1.0)
        if self is JSquare.JPLUSHALF_SQ:
            return (j + 0.5) ** 2
        return j * j


# ---------------------------------------------------------------------------
# asymptotic characters and delta sequences


def epsilon_asymptotic(two_j: int, k, branch: str = "both") -> np.ndarray:
    """Two-peak asymptotic idempotent for large j.

    ``near0``:  (2j+1) sin((2j+1)k/2) / (k/2), concentrated at k = 0;
    ``near2pi``: (2j+1) sin((2j+1)k/2) / ((2pi-k)/2), concentrated at
    k = 2pi with peak value (-1)^{2j} (2j+1)^2; ``both`` is their sum.
    """
    k = np.asarray(k, dtype=float)
    amp = (two_j + 1.0) * np.sin(0.5 * (two_j + 1.0) * k)
    if branch == "near0":
        return amp * 2.0 / np.maximum(k, 1e-300) if np.ndim(k) else _near0(two_j, k)
    if branch == "near2pi":
        return amp * 2.0 / np.maximum(_TWO_PI - k, 1e-300)
    if branch == "both":
        return amp * (
            2.0 / np.maximum(k, 1e-300) + 2.0 / np.maximum(_TWO_PI - k, 1e-300)
        )
    raise ValueError("branch must be 'near0', 'near2pi' or 'both'")


def _near0(two_j: int, k: float) -> float:
    if k == 0.0:
        return (two_j + 1.0) ** 2
    return (two_j + 1.0) * math.sin(0.5 * (two_j + 1.0) * k) / (0.5 * k)


def dirac_sequence_integral(f, n: int, a: float) -> float:
    """``int_0^a f(k) sin(nk/2)/(k/2) dk``; tends to pi*f(0) as n grows."""

    def integrand(k):
        if k == 0.0:
            return float(f(0.0)) * n
        return float(f(k)) * math.sin(0.5 * n * k) / (0.5 * k)

    val, err = sci_integrate.quad(
        integrand, 0.0, a, limit=max(400, 20 * n), epsabs=1e-12, epsrel=1e-12
    )
    if not np.isfinite(val) or err > 1e-6 * max(abs(val), 1.0):
        raise QuadratureFailure(f"oscillatory quadrature error estimate {err:.2e}")
    return val


def classical_idempotent(j: float, omega) -> np.ndarray:
    """Flat-space idempotent ``(2j+1) sin((2j+1) w/2)/(w/2)``, value (2j+1)^2 at 0."""
    omega = np.asarray(omega, dtype=float)
    z = 0.5 * (2.0 * j + 1.0)
    return (2.0 * j + 1.0) * (2.0 * z) * np.sinc(z * omega / math.pi)


def _delta_kernel(omega: float, J: float) -> float:
    """Radial kernel ``int_{-1/2}^J eps_class(j)(w) dj / (8 pi^2)``.

    Analytic in ``zeta = 2j+1``: the inner integral is
    ``(sin(Z b) - Z b cos(Z b)) / b^2 / w`` with b = w/2, Z = 2J+1.
    """
    Z = 2.0 * J + 1.0
    b = 0.5 * omega
    if b < 1e-8:
        return (Z**3 / 3.0) / (16.0 * math.pi**2)
    inner = (math.sin(Z * b) - Z * b * math.cos(Z * b)) / (b * b)
    return inner / omega / (8.0 * math.pi**2)


def classical_delta_reconstruction(J: float, f, support: float = np.inf) -> float:
    """Pair a radial test function with the truncated flat delta kernel.

    Returns ``int f(w) K_J(w) 4 pi w^2 dw``; tends to f(0) as the spin
    cutoff J grows.
    """

    def integrand(w):
        return float(f(w)) * _delta_kernel(w, J) * 4.0 * math.pi * w * w

    upper = support if np.isfinite(support) else 50.0 / (2.0 * J + 1.0) + 10.0
    val, err = sci_integrate.quad(integrand, 0.0, upper, limit=800)
    if not np.isfinite(val):
        raise QuadratureFailure("flat delta reconstruction did not converge")
    return val


# ---------------------------------------------------------------------------
# flat-branch radial profiles


@dataclass
class FlatProfile:
    two_j: int
    l: int
    branch: str
    expr: object

    def __call__(self, k):
        if not hasattr(self, "_fn"):
            self._fn = sp.lambdify(sp.symbols("k"), self.expr, "numpy")
        return self._fn(np.asarray(k, dtype=float))

    def ode_residual(self, k_points, square: JSquare = JSquare.JPLUSHALF_SQ) -> float:
        """Residual of the flat radial equation on this branch.

        In the distance x from the branch point (x = k near 0,
        x = 2*pi - k near 2*pi) the equation reads
        ``d2f/dx2 + (2/x) df/dx + (jsq - l(l+1)/x^2) f = 0``; the first
        derivative term flips sign when written in k on the 2*pi branch.
        Exact for the (j+1/2)^2 convention; the other conventions measure
        the large-j indifference.
        """
        ksym = sp.symbols("k")
        near0 = self.branch == "near0"
        x = ksym if near0 else 2 * sp.pi - ksym
        sign = 1 if near0 else -1
        jsq = square.value_of(0.5 * self.two_j)
        lhs = (
            sp.diff(self.expr, ksym, 2)
            + sign * (2 / x) * sp.diff(self.expr, ksym)
            + (jsq - sp.Rational(self.l * (self.l + 1), 1) / x**2) * self.expr
        )
        fn = sp.lambdify(ksym, lhs, "numpy")
        return float(np.abs(fn(np.asarray(k_points, dtype=float))).max())


def flat_radial_profile(two_j: int, l: int, branch: str = "near0") -> FlatProfile:
    """Flat-space analog of the radial recurrence ``f_{l+1} = (d/dx - l/x) f_l``.

    ``x`` is the distance from the branch point, so in the group angle k
    the recurrence is ``d/dk - l/k`` near 0 and ``d/dk + l/(2pi-k)`` near
    2*pi (the curved recurrence's ``-(l/2) cot(k/2)`` limits to the
    latter there).
    """
    if not 0 <= l <= two_j:
        raise RankOutOfRange(f"l must satisfy 0 <= l <= 2j = {two_j}")
    k = sp.symbols("k")
    half = sp.Rational(two_j + 1, 2)
    if branch == "near0":
        f = (two_j + 1) * sp.sin(half * k) / (k / 2)
        for n in range(l):
            f = sp.together(sp.diff(f, k) - sp.Integer(n) / k * f)
    elif branch == "near2pi":
        x = 2 * sp.pi - k
        f = (two_j + 1) * sp.sin(half * k) / (x / 2)
        for n in range(l):
            f = sp.together(sp.diff(f, k) + sp.Integer(n) / x * f)
    else:
        raise ValueError("branch must be 'near0' or 'near2pi'")
    return FlatProfile(two_j=two_j, l=l, branch=branch, expr=f)


def two_peak_profile(two_j: int, l: int):
    """Sum of both flat branches; approximates the exact f_jl at large j."""
    f0 = flat_radial_profile(two_j, l, "near0")
    f2 = flat_radial_profile(two_j, l, "near2pi")
    return lambda k: f0(k) + f2(k)


# ---------------------------------------------------------------------------
# truncated convolution comparison


def gaussian_class_state(
    grid: haar.QuadratureGrid,
    j_bar: float,
    dj: float,
    parity: str = "all",
    n_sigma: float = 4.0,
) -> groupalgebra.GridFunction:
    """Gaussian-windowed sum of idempotents, a class function.

    Weights ``exp(-(j - j_bar)^2/(2 (dj/2)^2))`` over half-integer spins
    within ``n_sigma`` standard deviations, normalized to unit weight sum.
    ``parity`` restricts the window to integer or half-integer spins.
    The returned grid function carries a ``flat_radial`` callable (the
    near-0 branch with the same weights) used by the flat convolution
    path.
    """
    sigma = 0.5 * dj
    lo = max(0, int(math.floor(2 * (j_bar - n_sigma * sigma))))
    hi = int(math.ceil(2 * (j_bar + n_sigma * sigma)))
    two_js = [
        tj
        for tj in range(lo, hi + 1)
        if parity == "all"
        or (parity == "integer" and tj % 2 == 0)
        or (parity == "half" and tj % 2 == 1)
    ]
    if not two_js:
        raise WindowInvalid("empty spin window")
    w = np.array([math.exp(-((0.5 * tj - j_bar) ** 2) / (2 * sigma**2)) for tj in two_js])
    w /= w.sum()

    def radial(k):
        return sum(wi * irreps.idempotent(tj, k) for wi, tj in zip(w, two_js))

    gf = groupalgebra.class_function(grid, radial)
    gf.info["two_js"] = two_js
    gf.info["weights"] = w
    gf.info["flat_radial"] = lambda r: sum(
        wi * classical_idempotent(0.5 * tj, r) for wi, tj in zip(w, two_js)
    )
    return gf


def flat_convolve_central(
    A: groupalgebra.GridFunction, B_flat_radial, grid: haar.QuadratureGrid
) -> np.ndarray:
    """Flat R^3 convolution of central functions on the rotation-vector ball.

    The flat measure ``4 sin^2(l/2)/l^2 d3l/(16 pi^2)`` equals the
    normalized Haar measure in (k, theta, phi) coordinates, so the Haar
    weights are reused; only the composition rule changes to vector
    subtraction.  Returns values on the k-rings (output is central).
    """
    kv = grid.rotvecs().reshape(-1, 3)
    w = grid.weights.reshape(-1)
    K, _, _ = grid.node_arrays()
    avals = A.values.reshape(-1)
    out = np.empty(len(grid.k), dtype=complex)
    for i, kout in enumerate(grid.k):
        dx = kv[:, 0] - 0.0
        dy = kv[:, 1] - 0.0
        dz = kv[:, 2] - kout
        r = np.sqrt(dx * dx + dy * dy + dz * dz)
        out[i] = np.dot(w * avals, np.asarray(B_flat_radial(r)))
    return out


def truncated_convolution_compare(
    A: groupalgebra.GridFunction,
    B: groupalgebra.GridFunction,
    hbar: float = 1.0,
) -> dict:
    """Compare SU(2) and flat-R^3 convolutions of band-limited central states.

    Returns relative errors of the zeroth-order flat approximation and of
    the first-order corrected form (flat + half the flat bracket).  For
    central factors the bracket term vanishes identically (the rotation
    generator annihilates radial functions), so the corrected error
    coincides with the zeroth-order one; both are reported.
    """
    if not (A.is_central() and B.is_central()):
        raise WindowInvalid(
            "comparison implemented for central (class-function) states"
        )
    if "flat_radial" not in B.info:
        raise WindowInvalid("B must carry a flat_radial extension")
    grid = A.grid
    su2 = groupalgebra.convolve(A, B)
    su2_ring = su2.values[:, 0, 0]
    flat_ring = flat_convolve_central(A, B.info["flat_radial"], grid)
    bracket_ring = np.zeros_like(flat_ring)  # central inputs: exact zero
    corrected_ring = flat_ring + 0.5 * bracket_ring
    wk = grid.wk
    scale = math.sqrt(float(np.sum(wk * np.abs(su2_ring) ** 2)))
    err0 = math.sqrt(float(np.sum(wk * np.abs(su2_ring - flat_ring) ** 2))) / scale
    err1 = (
        math.sqrt(float(np.sum(wk * np.abs(su2_ring - corrected_ring) ** 2))) / scale
    )
    return {
        "zeroth_error": err0,
        "corrected_error": err1,
        "bracket_norm": float(np.abs(bracket_ring).max()),
        "su2_ring": su2_ring,
        "flat_ring": flat_ring,
        "k": grid.k,
    }


# ---------------------------------------------------------------------------
# Lie-Poisson structure


@dataclass
class CoalgebraField:
    """Scalar field on the so(3)* coalgebra with optional exact gradient."""

    fn: object
    grad: object = None

    def __call__(self, sigma):
        return self.fn(np.asarray(sigma, dtype=float))

    def gradient(self, sigma, h: float = 1e-6) -> np.ndarray:
        sigma = np.asarray(sigma, dtype=float)
        if self.grad is not None:
            return np.asarray(self.grad(sigma), dtype=float)
        g = np.empty(3)
        for i in range(3):
            d = np.zeros(3)
            d[i] = h
            g[i] = (self.fn(sigma + d) - self.fn(sigma - d)) / (2 * h)
        return g


def coordinate_field(i: int) -> CoalgebraField:
    e = np.zeros(3)
    e[i] = 1.0
    return CoalgebraField(fn=lambda s: s[..., i], grad=lambda s, e=e: e)


def darboux_fields() -> dict[str, CoalgebraField]:
    """The spherically-cylindrical chart (sigma, sigma3, phi) with exact gradients.

    ``{phi, sigma3} = 1`` and sigma Poisson-commutes with both: these are
    Darboux coordinates on the coadjoint orbits.
    """

    def grad_phi(s):
        rho2 = s[0] * s[0] + s[1] * s[1]
        return np.array([-s[1] / rho2, s[0] / rho2, 0.0])

    return {
        "sigma": CoalgebraField(
            fn=lambda s: np.linalg.norm(s),
            grad=lambda s: np.asarray(s) / np.linalg.norm(s),
        ),
        "sigma3": coordinate_field(2),
        "phi": CoalgebraField(
            fn=lambda s: math.atan2(s[1], s[0]), grad=grad_phi
        ),
    }


def lie_poisson_bracket(
    A: CoalgebraField, B: CoalgebraField, at, h: float = 1e-6
) -> float:
    """``{A, B}(sigma) = sigma . (grad A x grad B)``."""
    at = np.asarray(at, dtype=float)
    ga = A.gradient(at, h)
    gb = B.gradient(at, h)
    return float(np.dot(at, np.cross(ga, gb)))


# ---------------------------------------------------------------------------
# density evolution


@dataclass(frozen=True)
class BoxGrid:
    """Uniform periodic Cartesian box [-L, L)^3 with FFT wavenumbers."""

    n: int
    L: float
    axes: np.ndarray
    sigma: np.ndarray  # (n, n, n, 3)
    kfreq: np.ndarray  # spectral wavenumbers, shape (n,)

    @property
    def spacing(self) -> float:
        return 2.0 * self.L / self.n

    def integrate(self, f: np.ndarray) -> float:
        return float(np.sum(f) * self.spacing**3)


def make_box(n: int, L: float) -> BoxGrid:
    axes = -L + 2.0 * L * np.arange(n) / n
    X, Y, Z = np.meshgrid(axes, axes, axes, indexing="ij")
    sigma = np.stack([X, Y, Z], axis=-1)
    kfreq = 2.0 * math.pi * np.fft.fftfreq(n, d=2.0 * L / n)
    return BoxGrid(n=n, L=L, axes=axes, sigma=sigma, kfreq=kfreq)


def _spectral_gradient(box: BoxGrid, f: np.ndarray) -> np.ndarray:
    F = np.fft.fftn(f)
    out = np.empty(f.shape + (3,))
    kx = box.kfreq[:, None, None]
    ky = box.kfreq[None, :, None]
    kz = box.kfreq[None, None, :]
    out[..., 0] = np.real(np.fft.ifftn(1j * kx * F))
    out[..., 1] = np.real(np.fft.ifftn(1j * ky * F))
    out[..., 2] = np.real(np.fft.ifftn(1j * kz * F))
    return out


def evolve_density(
    H: CoalgebraField,
    rho0: np.ndarray,
    box: BoxGrid,
    dt: float,
    steps: int,
    save_every: int = 0,
    cfl_limit: float = 0.5,
) -> dict:
    """RK4 integration of the bracket flow ``drho/dt = {H, rho}``.

    ``{H, rho} = (sigma x grad H) . grad rho`` is advection along the
    divergence-free velocity ``sigma x grad H``, tangent to the Casimir
    spheres.  Spatial gradients of rho are spectral (rho must be
    compactly supported well inside the box); grad H is exact.

    Returns the final field plus conservation diagnostics (mass, energy,
    Casimir functional) sampled along the trajectory.
    """
    rho = np.array(rho0, dtype=float)
    gh = np.stack(
        [H.gradient(s) for s in box.sigma.reshape(-1, 3)], axis=0
    ).reshape(box.sigma.shape)
    vel = np.cross(box.sigma, gh)
    vmax = float(np.abs(vel).max())
    if vmax * dt > cfl_limit * box.spacing:
        raise StepUnstable(
            f"advection CFL {vmax * dt / box.spacing:.3f} exceeds {cfl_limit}"
        )
    hvals = np.array(
        [H(s) for s in box.sigma.reshape(-1, 3)], dtype=float
    ).reshape(rho.shape)
    s2 = np.sum(box.sigma**2, axis=-1)

    def rhs(r):
        g = _spectral_gradient(box, r)
        return np.einsum("...i,...i->...", vel, g)

    def diag(t, r):
        return {
            "t": t,
            "mass": box.integrate(r),
            "energy": box.integrate(hvals * r),
            "casimir": box.integrate(s2 * r),
        }

    diags = [diag(0.0, rho)]
    snapshots = []
    for step in range(1, steps + 1):
        k1 = rhs(rho)
        k2 = rhs(rho + 0.5 * dt * k1)
        k3 = rhs(rho + 0.5 * dt * k2)
        k4 = rhs(rho + dt * k3)
        rho = rho + (dt / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        if save_every and step % save_every == 0:
            diags.append(diag(step * dt, rho))
            snapshots.append(rho.copy())
    diags.append(diag(steps * dt, rho))
    return {"rho": rho, "diagnostics": diags, "snapshots": snapshots}


# ---------------------------------------------------------------------------
# coadjoint-orbit states


@dataclass(frozen=True)
class OrbitState:
    """Symbolic delta-shell eigenstate on the coalgebra.

    Supported on the sphere ``sigma = hbar * sqrt(jsq)`` at height
    ``sigma3 = hbar (m+n)/2`` with winding ``m - n`` in the Darboux
    angle; kept symbolic because delta shells cannot be gridded.
    """

    two_j: int
    m: float
    n: float
    hbar: float
    square: JSquare
    expr: object
    normalization: float

    @property
    def sigma_support(self) -> float:
        return self.hbar * math.sqrt(self.square.value_of(0.5 * self.two_j))

    @property
    def sigma3_support(self) -> float:
        return self.hbar * 0.5 * (self.m + self.n)

    @property
    def winding(self) -> float:
        return self.m - self.n


def orbit_state(
    two_j: int,
    m: float,
    n: float,
    hbar: float = 1.0,
    square: JSquare = JSquare.JPLUSHALF_SQ,
) -> OrbitState:
    j = 0.5 * two_j
    if abs(m) > j + 1e-12 or abs(n) > j + 1e-12:
        raise LabelOutOfRange("|m|, |n| must not exceed j")
    N = 16.0 * math.pi**2 * hbar**4 * (j + 0.5) ** 2
    sig2, sig3, phi = sp.symbols("sigma2 sigma3 phi", real=True)
    jsq = square.value_of(j)
    expr = (
        N
        * sp.DiracDelta(sig2 - hbar**2 * jsq)
        * sp.DiracDelta(sig3 - hbar * sp.Rational(1, 2) * (sp.nsimplify(m + n)))
        * sp.exp(sp.I * sp.nsimplify(m - n) * phi)
    )
    return OrbitState(
        two_j=two_j,
        m=m,
        n=n,
        hbar=hbar,
        square=square,
        expr=expr,
        normalization=N,
    )


def orbit_eigencheck(state: OrbitState) -> dict[str, float]:
    """Analytic residuals of the orbit-state eigensystem.

    On the support, ``sigma^2`` multiplication gives ``hbar^2 jsq``;
    the half-sum/half-difference combinations with the phi-derivative
    give the spatial weight m and co-moving weight n; the phi-derivative
    alone gives the winding.  All checks are exact in the symbolic
    parameterization (the derivative is taken with the hbar/i quantum
    scaling so its eigenvalue is (m-n) hbar).
    """
    st = state
    hbar = st.hbar
    phi = sp.symbols("phi", real=True)
    phase = sp.exp(sp.I * sp.nsimplify(st.m - st.n) * phi)
    # winding: (hbar/i) d/dphi acting on the parameterized phase
    deriv = sp.simplify(
        (hbar / sp.I) * sp.diff(phase, phi) - (st.m - st.n) * hbar * phase
    )
    res_winding = 0.0 if deriv == 0 else float(abs(sp.Abs(deriv).evalf()))
    # sigma^2 on the shell
    res_sigma2 = abs(st.sigma_support**2 - hbar**2 * st.square.value_of(0.5 * st.two_j))
    # half-sum / half-difference relations
    sig3 = st.sigma3_support
    bracket_eig = (st.m - st.n) * hbar
    res_m = abs(sig3 + 0.5 * bracket_eig - st.m * hbar)
    res_n = abs(sig3 - 0.5 * bracket_eig - st.n * hbar)
    return {
        "sigma2": res_sigma2,
        "m": res_m,
        "n": res_n,
        "winding": res_winding,
    }


# ---------------------------------------------------------------------------
# quasiclassical states on the group


@dataclass
class QuasiState:
    """Multipole weights over a spin window."""

    weights: dict  # (two_j, l, m) -> coefficient
    j_bar: float
    dj: float
    flags: dict = field(default_factory=dict)


def window_flags(
    j_bar: float, dj: float, wide_min: float = 2.0, ratio_min: float = 2.0
) -> dict:
    """Soft validity flags for the quasiclassical window j_bar >> dj >> 1."""
    if dj <= 0 or j_bar <= 0:
        raise WindowInvalid("window parameters must be positive")
    return {
        "dj_wide": dj >= wide_min,
        "jbar_dominates": j_bar >= ratio_min * dj,
    }


def quasistate_synthesize(
    grid: haar.QuadratureGrid, state: QuasiState
) -> groupalgebra.GridFunction:
    """Superpose weighted multipole functions ``sum P(j)_lm Q{j}_lm``."""
    out = np.zeros(grid.shape, dtype=complex)
    for (two_j, l, m), c in state.weights.items():
        out += c * groupalgebra.multipole_Q(grid, two_j, l, m).values
    return groupalgebra.GridFunction(grid, out)


def peak_ratio(gf: groupalgebra.GridFunction, width: float = 0.5) -> float:
    """max|f| on the k = 2pi cap relative to the k = 0 cap."""
    k = gf.grid.k
    near0 = np.abs(gf.values[k < width]).max()
    near2pi = np.abs(gf.values[k > _TWO_PI - width]).max()
    return float(near2pi / near0)
