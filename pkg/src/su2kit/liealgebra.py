"""su(2)/so(3) bases, invariant vector fields, Cartan forms, kinematics.

The left generators (right-invariant fields) ``L_a``, right generators
(left-invariant fields) ``R_a`` and their difference ``A_a = L_a - R_a``
are given in the rotation-vector chart as 3x3 component matrices
``L[i, a]`` such that ``(L_a f)(kvec) = sum_i L[i, a] * df/dk^i``.
The dual Cartan one-forms are stored as ``Lform[a, i]``.

All coefficient functions are written dtype-agnostically so that
complex-step differentiation works on them (used by the Poisson-bracket
checks, which need derivatives accurate to machine precision).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ChartSingular
from . import rotations

__all__ = [
    "EPSILON",
    "pauli_matrices",
    "su2_basis",
    "so3_basis",
    "killing_metric",
    "killing_from_adjoint",
    "FieldComponents",
    "field_components",
    "apply_generator",
    "left_right_relation_check",
    "KinematicsSample",
    "angular_velocities",
    "classical_momentum_maps",
    "canonical_poisson_bracket",
]

# totally antisymmetric Ricci symbol, EPSILON[a, b, c]
EPSILON = np.zeros((3, 3, 3))
for _a, _b, _c in [(0, 1, 2), (1, 2, 0), (2, 0, 1)]:
    EPSILON[_a, _b, _c] = 1.0
    EPSILON[_a, _c, _b] = -1.0


def pauli_matrices() -> np.ndarray:
    """The three Pauli matrices, shape (3, 2, 2)."""
    return np.array(
        [
            [[0, 1], [1, 0]],
            [[0, -1j], [1j, 0]],
            [[1, 0], [0, -1]],
        ],
        dtype=complex,
    )


def su2_basis() -> np.ndarray:
    """Anti-Hermitian basis ``e_a = s_a / (2i)`` with ``[e_a, e_b] = eps^c_ab e_c``."""
    return pauli_matrices() / 2j


def so3_basis() -> np.ndarray:
    """Real basis ``(E_a)^b_c = -eps_abc`` with the same structure constants."""
    return -EPSILON.transpose(0, 1, 2).copy()  # E[a][b, c] = -eps_{abc}


def killing_metric() -> tuple[np.ndarray, np.ndarray]:
    """(gamma, Gamma): the Killing form -2*delta and its rescaling delta."""
    return -2.0 * np.eye(3), np.eye(3)


def killing_from_adjoint() -> np.ndarray:
    """Trace form over the adjoint basis; reproduces gamma = -2*delta exactly."""
    E = so3_basis()
    return np.einsum("aij,bji->ab", E, E)


# ---------------------------------------------------------------------------
# invariant vector fields and forms

# guard radius around the chart singularities k ∈ {0, 2*pi}
CHART_GUARD = 1e-6
# below this |k| the scalar coefficients switch to their Taylor series
_SERIES_CUTOFF = 1e-4


def _coeffs(k):
    """Scalar coefficients of the field/form decompositions at angle k.

    Returns (half_cot, c_field, sinc, c_form, hav) where

    * half_cot = (k/2) * cot(k/2)
    * c_field = (1 - half_cot) / k^2        (regular at 0)
    * sinc    = sin(k) / k
    * c_form  = (1 - sinc) / k^2            (regular at 0)
    * hav     = (1 - cos k) / k^2 = 2 sin^2(k/2) / k^2
    """
    if np.abs(k) < _SERIES_CUTOFF:
        k2 = k * k
        half_cot = 1.0 - k2 / 12.0 - k2 * k2 / 720.0
        c_field = 1.0 / 12.0 + k2 / 720.0 + k2 * k2 / 30240.0
        sinc = 1.0 - k2 / 6.0 + k2 * k2 / 120.0
        c_form = 1.0 / 6.0 - k2 / 120.0 + k2 * k2 / 5040.0
        hav = 0.5 - k2 / 24.0 + k2 * k2 / 720.0
        return half_cot, c_field, sinc, c_form, hav
    half_cot = 0.5 * k * np.cos(0.5 * k) / np.sin(0.5 * k)
    c_field = (1.0 - half_cot) / (k * k)
    sinc = np.sin(k) / k
    c_form = (1.0 - sinc) / (k * k)
    hav = (1.0 - np.cos(k)) / (k * k)
    return half_cot, c_field, sinc, c_form, hav


@dataclass(frozen=True)
class FieldComponents:
    """Vector-field and one-form components at a point of the chart.

    ``L[i, a]`` etc. are field components, ``Lform[a, i]`` form components;
    ``A = L - R`` and ``Lform @ L = I`` away from the chart singularities.
    """

    L: np.ndarray
    R: np.ndarray
    A: np.ndarray
    Lform: np.ndarray
    Rform: np.ndarray


def field_components(kvec) -> FieldComponents:
    """Closed-form components of the invariant fields and Cartan forms.

    The k -> 0 limit is filled analytically (series).  Raises
    :class:`ChartSingular` at the opposite pole ``k = 2*pi`` where the
    fields blow up.
    """
    kvec = np.asarray(kvec)
    k = np.sqrt(kvec @ kvec)
    if abs(np.real(k) - 2.0 * np.pi) < CHART_GUARD:
        raise ChartSingular("invariant fields diverge at k = 2*pi")
    half_cot, c_field, sinc, c_form, hav = _coeffs(k)
    eye = np.eye(3, dtype=kvec.dtype) if np.iscomplexobj(kvec) else np.eye(3)
    kk = np.outer(kvec, kvec)
    # spin[i, a] = sum_b eps_{abi} k^b  (the A-field components)
    spin = np.einsum("abi,b->ia", EPSILON, kvec)
    sym_field = half_cot * eye + c_field * kk
    L = sym_field + 0.5 * spin
    R = sym_field - 0.5 * spin
    A = spin.copy()
    sym_form = sinc * eye + c_form * kk
    twist = np.einsum("abi,b->ai", EPSILON, kvec) * hav
    Lform = sym_form + twist
    Rform = sym_form - twist
    return FieldComponents(L=L, R=R, A=A, Lform=Lform, Rform=Rform)


def apply_generator(
    which: str,
    a: int,
    f: Callable[[np.ndarray], complex],
    kvec,
    h: float = 1e-5,
) -> complex:
    """Directional derivative ``(X_a f)(kvec)`` by central differences.

    ``which`` selects the field family: "L", "R" or "A".  The error is
    O(h^2) for smooth ``f``.
    """
    comps = field_components(kvec)
    X = {"L": comps.L, "R": comps.R, "A": comps.A}[which]
    kvec = np.asarray(kvec, dtype=float)
    out = 0.0
    for i in range(3):
        step = np.zeros(3)
        step[i] = h
        deriv = (f(kvec + step) - f(kvec - step)) / (2.0 * h)
        out = out + X[i, a] * deriv
    return out


def left_right_relation_check(u) -> float:
    """Max residual of the form relation ``Lform = R(u) @ Rform``."""
    kvec = rotations.log_su2(u)
    comps = field_components(kvec)
    Ru = rotations.project_so3(u)
    return float(np.max(np.abs(comps.Lform - Ru @ comps.Rform)))


# ---------------------------------------------------------------------------
# classical kinematics on trajectories


@dataclass(frozen=True)
class KinematicsSample:
    """Configuration point, velocity, and canonical momenta."""

    kvec: np.ndarray
    kdot: np.ndarray
    p: np.ndarray


def angular_velocities(s: KinematicsSample) -> tuple[np.ndarray, np.ndarray]:
    """Spatial and co-moving angular velocity (omega, omega_hat).

    ``omega = R(u) @ omega_hat`` with u the underlying group element.
    """
    comps = field_components(s.kvec)
    return comps.Lform @ s.kdot, comps.Rform @ s.kdot


def classical_momentum_maps(
    s: KinematicsSample,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Spatial spin S, co-moving spin S_hat, and their difference Delta.

    ``S_a = p_j L^j_a``; ``Delta = S - S_hat`` equals ``k cross p``.
    """
    comps = field_components(s.kvec)
    S = s.p @ comps.L
    S_hat = s.p @ comps.R
    return S, S_hat, S - S_hat


def canonical_poisson_bracket(F, G, kvec, p, h: float = 1e-20) -> float:
    """Canonical bracket {F, G} at (kvec, p) via complex-step derivatives.

    ``F``, ``G`` must accept complex phase-space arguments (all functions
    in this module do); accuracy is at round-off level.
    """
    kvec = np.asarray(kvec, dtype=float)
    p = np.asarray(p, dtype=float)

    def _grad(fun):
        gk = np.empty(3)
        gp = np.empty(3)
        for i in range(3):
            dk = kvec.astype(complex)
            dk[i] += 1j * h
            gk[i] = np.imag(fun(dk, p.astype(complex))) / h
            dp = p.astype(complex)
            dp[i] += 1j * h
            gp[i] = np.imag(fun(kvec.astype(complex), dp)) / h
        return gk, gp

    Fk, Fp = _grad(F)
    Gk, Gp = _grad(G)
    return float(Fk @ Gp - Fp @ Gk)
