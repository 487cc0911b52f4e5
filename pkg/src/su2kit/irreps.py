"""Spin matrices, Wigner D-matrices, characters, and the symmetric top.

Spin labels are carried as ``two_j`` (twice the spin, a non-negative
integer).  Matrix rows/columns are ordered by ascending magnetic number
``m = -j, ..., j``, so ``S3 = hbar * diag(-j, ..., j)`` and the matrix
element ``D[j](u)[m, k]`` (index offset ``m + j``) is the eigenfunction
with spatial weight ``m`` and co-moving weight ``k``.

``D(j)(u(kvec)) = exp(-(i/hbar) k^a S(j)_a)`` is a genuine homomorphism;
for ``two_j = 1`` it reproduces the SU(2) matrix of ``u`` itself (with
the row/column order flipped to match the ascending-m convention).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import eval_chebyu

from . import liealgebra, rotations
from .errors import ChartSingular, ResolutionMismatch

__all__ = [
    "dim_of",
    "SpinMatrices",
    "spin_matrices",
    "wigner_d",
    "wigner_d_rotvec",
    "wigner_d_grid",
    "character",
    "idempotent",
    "top_spectrum",
    "eigencheck_D",
    "casimir_radial_residual",
    "peter_weyl_gram",
    "pw_labels",
]

HBAR_DEFAULT = 1.0


def dim_of(two_j: int) -> int:
    if two_j < 0 or two_j != int(two_j):
        raise ValueError("two_j must be a non-negative integer")
    return int(two_j) + 1


@dataclass(frozen=True)
class SpinMatrices:
    two_j: int
    hbar: float
    S: np.ndarray  # shape (3, dim, dim), Hermitian

    @property
    def j(self) -> float:
        return 0.5 * self.two_j


def spin_matrices(two_j: int, hbar: float = HBAR_DEFAULT) -> SpinMatrices:
    """Ladder construction with Condon-Shortley phases.

    ``[S_a, S_b] = i hbar eps_ab^c S_c`` and ``sum_a S_a^2 = hbar^2 j(j+1) I``.
    """
    dim = dim_of(two_j)
    j = 0.5 * two_j
    m = -j + np.arange(dim)
    ladder = hbar * np.sqrt(j * (j + 1.0) - m[:-1] * (m[:-1] + 1.0))
    S_plus = np.zeros((dim, dim), dtype=complex)
    S_plus[np.arange(1, dim), np.arange(dim - 1)] = ladder
    S_minus = S_plus.conj().T
    S = np.stack(
        [
            0.5 * (S_plus + S_minus),
            (S_plus - S_minus) / 2j,
            hbar * np.diag(m).astype(complex),
        ]
    )
    return SpinMatrices(two_j=two_j, hbar=hbar, S=S)


def wigner_d_rotvec(two_j: int, kvec, hbar: float = HBAR_DEFAULT) -> np.ndarray:
    """Representation matrix at the group element with rotation vector kvec.

    Matrix exponential by Hermitian eigendecomposition, so unitarity holds
    to round-off.
    """
    sm = spin_matrices(two_j, hbar)
    kvec = np.asarray(kvec, dtype=float)
    K = np.einsum("a,aij->ij", kvec, sm.S)
    vals, vecs = np.linalg.eigh(K)
    return (vecs * np.exp(-1j * vals / hbar)) @ vecs.conj().T


def wigner_d(two_j: int, q, hbar: float = HBAR_DEFAULT) -> np.ndarray:
    """Representation matrix of a unit quaternion; ``D(-u) = (-1)^{2j} D(u)``."""
    return wigner_d_rotvec(two_j, rotations.log_su2(q), hbar)


def wigner_d_grid(two_j: int, kvecs, hbar: float = HBAR_DEFAULT) -> np.ndarray:
    """Vectorized :func:`wigner_d_rotvec` over a (..., 3) array of rotation vectors."""
    sm = spin_matrices(two_j, hbar)
    kvecs = np.asarray(kvecs, dtype=float)
    if two_j == 0:
        return np.ones(kvecs.shape[:-1] + (1, 1), dtype=complex)
    K = np.einsum("...a,aij->...ij", kvecs, sm.S)
    vals, vecs = np.linalg.eigh(K)
    phase = np.exp(-1j * vals / hbar)
    return np.einsum("...ik,...k,...jk->...ij", vecs, phase, vecs.conj())


def character(two_j: int, k) -> np.ndarray:
    """Class function ``chi(j)(k) = sin((2j+1)k/2)/sin(k/2)``.

    Evaluated as the Chebyshev kernel ``U_{2j}(cos(k/2))``, which is exact
    and finite at the endpoints k = 0, 2*pi.
    """
    return eval_chebyu(int(two_j), np.cos(0.5 * np.asarray(k, dtype=float)))


def idempotent(two_j: int, k) -> np.ndarray:
    """Generating unit of the spectral block: ``(2j+1) * chi(j)(k)``."""
    return (two_j + 1.0) * character(two_j, k)


def top_spectrum(
    two_j: int, I: float, K: float, hbar: float = HBAR_DEFAULT
) -> list[tuple[float, int, float | None]]:
    """Energy levels of the free symmetric top at fixed j.

    Returns (energy, degeneracy, |k|) triples; levels are merged over the
    sign of the co-moving quantum number k, with degeneracy 2(2j+1) for
    k != 0 and (2j+1) for k = 0.  A spherical top (K = I) collapses to a
    single (2j+1)^2-fold level, reported with quantum-k ``None``.
    """
    if I <= 0 or K <= 0:
        raise ValueError("moments of inertia must be positive")
    j = 0.5 * two_j
    base = hbar**2 * j * (j + 1.0) / (2.0 * I)
    coeff = hbar**2 * (1.0 / (2.0 * K) - 1.0 / (2.0 * I))
    if abs(coeff) < 1e-15 * abs(base + 1e-300) + 1e-300:
        return [(base, (two_j + 1) ** 2, None)]
    kappas = np.arange(two_j % 2, two_j + 1, 2) / 2.0  # |k| values
    levels = []
    for kap in kappas:
        deg = (two_j + 1) if kap == 0.0 else 2 * (two_j + 1)
        levels.append((base + coeff * kap * kap, deg, float(kap)))
    return sorted(levels)


# ---------------------------------------------------------------------------
# differential eigenequations


def _d_element(two_j: int, m: float, k: float, hbar: float):
    """Matrix-element function kvec -> D(j)_mk with half-integer labels."""
    j = 0.5 * two_j
    row = int(round(m + j))
    col = int(round(k + j))
    if not (0 <= row <= two_j and 0 <= col <= two_j):
        raise ValueError("labels m, k must lie in -j..j")

    def f(kvec):
        return wigner_d_rotvec(two_j, kvec, hbar)[row, col]

    return f


def eigencheck_D(
    two_j: int,
    m: float,
    k: float,
    points,
    h: float = 1e-4,
    hbar: float = HBAR_DEFAULT,
) -> dict[str, float]:
    """Finite-difference residuals of the three compatible eigenequations.

    Applies the Casimir, the spatial 3-observable and the co-moving
    3-observable to the matrix element D(j)_mk at each probe rotation
    vector; returns the max residual against hbar^2 j(j+1), m hbar and
    k hbar.  With ``D = exp(-(i/hbar) k.S)`` the observables are
    ``i hbar`` times the corresponding invariant derivatives, so that
    the spatial one multiplies by the spin matrix from the left and the
    co-moving one from the right.  Residuals are O(h^2) for modest j.
    """
    j = 0.5 * two_j
    f = _d_element(two_j, m, k, hbar)
    res_sq = res_m = res_k = 0.0
    for kvec in points:
        kvec = np.asarray(kvec, dtype=float)
        kn = np.linalg.norm(kvec)
        if kn < 10 * h or kn > 2.0 * math.pi - 10 * h:
            raise ChartSingular("probe point too close to k in {0, 2*pi}")
        val = f(kvec)
        s3 = 1j * hbar * liealgebra.apply_generator("L", 2, f, kvec, h)
        s3_hat = 1j * hbar * liealgebra.apply_generator("R", 2, f, kvec, h)
        lap = 0.0
        for a in range(3):

            def la_f(kk, a=a):
                return liealgebra.apply_generator("L", a, f, kk, h)

            lap += liealgebra.apply_generator("L", a, la_f, kvec, h)
        s_sq = -(hbar**2) * lap
        res_sq = max(res_sq, abs(s_sq - hbar**2 * j * (j + 1.0) * val))
        res_m = max(res_m, abs(s3 - m * hbar * val))
        res_k = max(res_k, abs(s3_hat - k * hbar * val))
    return {"S2": res_sq, "S3": res_m, "S3_hat": res_k}


def casimir_radial_residual(two_j: int, k_points, h: float = 1e-5) -> float:
    """Residual of the radial Casimir form on the character chi(j).

    For class functions the Casimir reduces to
    ``f'' + cot(k/2) f' + j(j+1) f = 0``; returns the max absolute
    residual over the sample points (finite-difference derivatives).
    """
    j = 0.5 * two_j
    out = 0.0
    for k in np.atleast_1d(k_points):
        f0 = character(two_j, k)
        fp = (character(two_j, k + h) - character(two_j, k - h)) / (2 * h)
        fpp = (
            character(two_j, k + h) - 2.0 * f0 + character(two_j, k - h)
        ) / (h * h)
        cot = math.cos(0.5 * k) / math.sin(0.5 * k)
        out = max(out, abs(fpp + cot * fp + j * (j + 1.0) * f0))
    return out


# ---------------------------------------------------------------------------
# Peter-Weyl orthogonality


def pw_labels(two_j_list) -> list[tuple[int, float, float]]:
    """Flattened (two_j, m, k) labels for all matrix elements."""
    labels = []
    for two_j in two_j_list:
        j = 0.5 * two_j
        for m in (-j + np.arange(two_j + 1)):
            for k in (-j + np.arange(two_j + 1)):
                labels.append((two_j, float(m), float(k)))
    return labels


def peter_weyl_gram(two_j_list, grid, hbar: float = HBAR_DEFAULT) -> np.ndarray:
    """Gram matrix of all D(j)_mk over the Haar grid.

    The exact value is ``delta_{jj'} delta_{mm'} delta_{kk'} / (2j+1)``;
    deviations measure the quadrature error.
    """
    kvecs = grid.rotvecs().reshape(-1, 3)
    w = grid.weights.reshape(-1)
    cols = []
    for two_j in two_j_list:
        D = wigner_d_grid(two_j, kvecs, hbar)  # (N, dim, dim)
        dim = two_j + 1
        cols.append(D.reshape(-1, dim * dim))
    V = np.concatenate(cols, axis=1)
    return (V.conj() * w[:, None]).T @ V
