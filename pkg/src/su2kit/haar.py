"""Killing metric on the group, Haar densities, and quadrature grids.

The quadrature grid is a tensor product in the spherical rotation-vector
chart ``(k, theta, phi)``: Gauss-Legendre in ``k`` against the Haar weight
``sin^2(k/2)``, Gauss-Legendre in ``cos(theta)``, uniform trapezoid in the
periodic angle ``phi``.  Weights are normalized so the total mass is 1;
the unnormalized group volumes are ``16*pi^2`` for SU(2) and ``8*pi^2``
for SO(3).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ChartSingular, ResolutionMismatch
from . import rotations

__all__ = [
    "MetricAtPoint",
    "metric_at",
    "euler_metric",
    "diagonal_euler_angles",
    "conformal_coords",
    "rotvec_from_conformal",
    "conformal_factor",
    "projective_metric",
    "QuadratureGrid",
    "build_grid",
    "integrate",
    "grid_quaternions",
    "export_grid_csv",
    "import_grid_csv",
]

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class MetricAtPoint:
    g: np.ndarray
    ginv: np.ndarray
    sqrtdet: float


def metric_at(kvec) -> MetricAtPoint:
    """Killing metric tensor (unit normalization) in the rotation-vector chart.

    ``g = s*I + (1-s) n n^T`` with ``s = 4 sin^2(k/2)/k^2``; the density is
    ``sqrt(det g) = s``.
    """
    kvec = np.asarray(kvec, dtype=float)
    k = np.linalg.norm(kvec)
    if k < 1e-12 or abs(k - _TWO_PI) < 1e-12:
        raise ChartSingular("metric chart singular at k in {0, 2*pi}")
    n = kvec / k
    s = (2.0 * math.sin(0.5 * k) / k) ** 2
    nn = np.outer(n, n)
    g = s * np.eye(3) + (1.0 - s) * nn
    ginv = (1.0 / s) * np.eye(3) + (1.0 - 1.0 / s) * nn
    return MetricAtPoint(g=g, ginv=ginv, sqrtdet=s)


def euler_metric(e) -> MetricAtPoint:
    """Metric in z-y-z Euler angles, coordinate order (theta, phi, psi).

    ``ds^2 = dtheta^2 + dphi^2 + 2 cos(theta) dphi dpsi + dpsi^2`` with
    density ``sin(theta)``.
    """
    theta = float(e[1])
    if abs(math.sin(theta)) < 1e-12:
        raise ChartSingular("Euler chart singular at sin(theta) = 0")
    c = math.cos(theta)
    g = np.array([[1.0, 0.0, 0.0], [0.0, 1.0, c], [0.0, c, 1.0]])
    s2 = 1.0 - c * c
    ginv = np.array(
        [[1.0, 0.0, 0.0], [0.0, 1.0 / s2, -c / s2], [0.0, -c / s2, 1.0 / s2]]
    )
    return MetricAtPoint(g=g, ginv=ginv, sqrtdet=math.sqrt(s2))


def diagonal_euler_angles(phi: float, psi: float) -> tuple[float, float]:
    """Sum/difference chart (alpha, beta) = (phi + psi, phi - psi).

    Diagonalizes the Euler-angle metric; exposed as a documented chart
    only (round-trip tested, otherwise unused).
    """
    return phi + psi, phi - psi


def conformal_coords(kvec, a: float = math.pi) -> np.ndarray:
    """Conformally flat chart ``rho = a tan(k/4) n``; k = 2*pi escapes to infinity."""
    kvec = np.asarray(kvec, dtype=float)
    k = np.linalg.norm(kvec)
    if abs(k - _TWO_PI) < 1e-12:
        raise ChartSingular("k = 2*pi maps to the compactifying point at infinity")
    if k < 1e-300:
        return np.zeros(3)
    return (a * math.tan(0.25 * k) / k) * kvec


def rotvec_from_conformal(rho, a: float = math.pi) -> np.ndarray:
    rho = np.asarray(rho, dtype=float)
    r = np.linalg.norm(rho)
    if r < 1e-300:
        return np.zeros(3)
    k = 4.0 * math.atan(r / a)
    return (k / r) * rho


def conformal_factor(rho: float, a: float = math.pi) -> float:
    """Scalar multiplying the flat metric in the conformal chart."""
    return 16.0 * a * a / (a * a + rho * rho) ** 2


def projective_metric(kappa) -> MetricAtPoint:
    """Group metric in spherical Gibbs-vector coordinates (kappa, theta, phi).

    Diagonal components ``(16/(4+x^2)^2, 4x^2/(4+x^2), 4x^2 sin^2(theta)/(4+x^2))``
    with ``x = |kappa|``; theta defaults are evaluated at theta = pi/2 unless a
    3-vector with explicit angles is wanted, so pass ``(x, theta)`` via a
    2-sequence or a plain magnitude.
    """
    if np.ndim(kappa) == 0:
        x, theta = float(kappa), 0.5 * math.pi
    else:
        kappa = np.asarray(kappa, dtype=float)
        if kappa.shape == (2,):
            x, theta = kappa
        else:
            x = np.linalg.norm(kappa)
            theta = math.acos(kappa[2] / x) if x > 0 else 0.5 * math.pi
    q = 4.0 + x * x
    g = np.diag(
        [16.0 / (q * q), 4.0 * x * x / q, 4.0 * x * x * math.sin(theta) ** 2 / q]
    )
    with np.errstate(divide="ignore"):
        ginv = np.diag(1.0 / np.diag(g))
    return MetricAtPoint(g=g, ginv=ginv, sqrtdet=float(np.sqrt(np.linalg.det(g))))


# ---------------------------------------------------------------------------
# quadrature


@dataclass(frozen=True)
class QuadratureGrid:
    """Tensor-product Haar quadrature on SU(2) or SO(3).

    ``weights[i, j, l]`` are normalized (sum to 1) and pair with the node
    ``(k[i], theta[j], phi[l])``.  ``volume`` is the unnormalized group
    volume the grid represents.
    """

    k: np.ndarray
    ctheta: np.ndarray  # cos(theta) nodes
    phi: np.ndarray
    wk: np.ndarray  # includes the sin^2(k/2) density and normalizer
    wc: np.ndarray
    wp: np.ndarray
    group: str
    volume: float
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def shape(self) -> tuple[int, int, int]:
        return len(self.k), len(self.ctheta), len(self.phi)

    @property
    def theta(self) -> np.ndarray:
        return np.arccos(self.ctheta)

    @property
    def weights(self) -> np.ndarray:
        if "w" not in self._cache:
            self._cache["w"] = (
                self.wk[:, None, None] * self.wc[None, :, None] * self.wp[None, None, :]
            )
        return self._cache["w"]

    def node_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Broadcast (k, theta, phi) arrays of the full grid shape."""
        K, C, P = np.meshgrid(self.k, self.theta, self.phi, indexing="ij")
        return K, C, P

    def rotvecs(self) -> np.ndarray:
        """Cartesian rotation vectors of all nodes, shape (Nk, Nt, Np, 3)."""
        K, T, P = self.node_arrays()
        st = np.sin(T)
        return np.stack(
            [K * st * np.cos(P), K * st * np.sin(P), K * np.cos(T)], axis=-1
        )


def build_grid(n_k: int, n_theta: int, n_phi: int, group: str = "SU2") -> QuadratureGrid:
    """Gauss-Legendre x Gauss-Legendre x trapezoid Haar quadrature grid."""
    if min(n_k, n_theta, n_phi) < 2:
        raise ValueError("need at least 2 nodes per axis")
    group = group.upper()
    if group not in ("SU2", "SO3"):
        raise ValueError("group must be 'SU2' or 'SO3'")
    k_max = _TWO_PI if group == "SU2" else math.pi
    xk, wk = np.polynomial.legendre.leggauss(n_k)
    k = 0.5 * k_max * (xk + 1.0)
    wk = 0.5 * k_max * wk
    norm = 4.0 * math.pi**2 if group == "SU2" else 2.0 * math.pi**2
    wk = wk * np.sin(0.5 * k) ** 2 / norm
    xc, wc = np.polynomial.legendre.leggauss(n_theta)
    phi = _TWO_PI * np.arange(n_phi) / n_phi
    wp = np.full(n_phi, _TWO_PI / n_phi)
    volume = 16.0 * math.pi**2 if group == "SU2" else 8.0 * math.pi**2
    return QuadratureGrid(
        k=k, ctheta=xc, phi=phi, wk=wk, wc=wc, wp=wp, group=group, volume=volume
    )


def integrate(grid: QuadratureGrid, f, normalized: bool = True) -> complex:
    """Integrate over the group against the (normalized) Haar measure.

    ``f`` may be a callable ``f(k, theta, phi)`` accepting broadcast node
    arrays, a plain value array of the grid shape, or a
    :class:`~su2kit.groupalgebra.GridFunction` living on this grid.
    """
    values = f
    if hasattr(f, "grid") and hasattr(f, "values"):
        if f.grid is not grid and f.grid.shape != grid.shape:
            raise ResolutionMismatch("grid function lives on a different grid")
        values = f.values
    elif callable(f):
        K, T, P = grid.node_arrays()
        values = f(K, T, P)
    values = np.asarray(values)
    if values.shape != grid.shape:
        raise ResolutionMismatch(
            f"value array shape {values.shape} != grid shape {grid.shape}"
        )
    total = np.einsum("i,j,l,ijl->", grid.wk, grid.wc, grid.wp, values)
    return total if normalized else total * grid.volume


def grid_quaternions(grid: QuadratureGrid) -> np.ndarray:
    """Unit quaternions of all grid nodes, shape (Nk, Nt, Np, 4)."""
    if "quats" in grid._cache:
        return grid._cache["quats"]
    K, T, P = grid.node_arrays()
    half = 0.5 * K
    s = np.sin(half)
    st = np.sin(T)
    quats = np.stack(
        [np.cos(half), s * st * np.cos(P), s * st * np.sin(P), s * np.cos(T)],
        axis=-1,
    )
    grid._cache["quats"] = quats
    return quats


def export_grid_csv(grid: QuadratureGrid, path) -> None:
    """Write nodes and weights as CSV rows (k, theta, phi, weight)."""
    K, T, P = grid.node_arrays()
    W = grid.weights
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["k", "theta", "phi", "weight"])
        for row in zip(K.ravel(), T.ravel(), P.ravel(), W.ravel()):
            writer.writerow([repr(float(v)) for v in row])


def import_grid_csv(path, shape: tuple[int, int, int], group: str = "SU2") -> QuadratureGrid:
    """Rebuild a tensor-product grid from :func:`export_grid_csv` output."""
    data = np.loadtxt(path, delimiter=",", skiprows=1)
    n_k, n_t, n_p = shape
    if data.shape[0] != n_k * n_t * n_p:
        raise ResolutionMismatch("CSV row count does not match requested shape")
    K = data[:, 0].reshape(shape)
    T = data[:, 1].reshape(shape)
    P = data[:, 2].reshape(shape)
    W = data[:, 3].reshape(shape)
    k = K[:, 0, 0]
    ctheta = np.cos(T[0, :, 0])
    phi = P[0, 0, :]
    # recover a factoring of the tensor-product weights
    s = W[0, 0, 0]
    wk = W[:, 0, 0]
    wc = W[0, :, 0] / s
    wp = W[0, 0, :] / s
    volume = 16.0 * math.pi**2 if group == "SU2" else 8.0 * math.pi**2
    return QuadratureGrid(
        k=k, ctheta=ctheta, phi=phi, wk=wk, wc=wc, wp=wp, group=group, volume=volume
    )
