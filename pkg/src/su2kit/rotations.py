"""Parametrizations of SU(2) and SO(3) and conversions between them.

Conventions
-----------
A unit quaternion ``q = (xi0, xi1, xi2, xi3)`` stands for the SU(2) matrix
``u = xi0*I - i*(xi1*s1 + xi2*s2 + xi3*s3)`` where ``s_a`` are the Pauli
matrices.  Quaternion multiplication below is exactly SU(2) matrix
multiplication in this identification (Hamilton product, scalar first).

The rotation vector ``kvec`` points along the oriented rotation axis and
has length equal to the rotation angle ``k``; ``k`` ranges over ``[0, 2*pi]``
on SU(2) (``-I`` sits at ``k = 2*pi``) and over ``[0, pi]`` on SO(3).
Values beyond ``2*pi`` wrap around.

The Gibbs vector is ``kappa = 2*tan(k/2)*n``; it is a global chart of SO(3)
minus the pi-rotations, where it diverges.

Euler angles use the z-y-z factor order ``u = u_z(phi) u_y(theta) u_z(psi)``
and are stored in the principal window ``phi in [0, 4*pi)``,
``theta in [0, pi]``, ``psi in [0, 2*pi)``.

All functions are pure and all values immutable (arrays are returned fresh).
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import GibbsSingularity

__all__ = [
    "EulerAngles",
    "exp_su2",
    "log_su2",
    "quat_multiply",
    "quat_inverse",
    "random_quaternion",
    "project_so3",
    "rotmat_from_vector",
    "rodrigues_series",
    "gibbs_from_rotvec",
    "rotvec_from_gibbs",
    "gibbs_compose",
    "gibbs_apply",
    "euler_to_quaternion",
    "quaternion_to_euler",
    "canonical2_to_quaternion",
    "conjugate_quat",
]

_TWO_PI = 2.0 * math.pi

# |imaginary part| below which the axis of log_su2 is taken by convention
_AXIS_EPS = 1e-12

# |1 - kappa1.kappa2/4| below which the Gibbs composition is singular
GIBBS_SINGULAR_TOL = 1e-12


class EulerAngles(NamedTuple):
    """z-y-z Euler triple; ``degenerate`` flags a gimbal-locked inverse."""

    phi: float
    theta: float
    psi: float
    degenerate: bool = False


def _normalize(q: np.ndarray) -> np.ndarray:
    return q / np.linalg.norm(q)


def exp_su2(kvec) -> np.ndarray:
    """Exponential map: rotation vector -> unit quaternion.

    ``exp_su2(0) = (1,0,0,0)`` and ``exp_su2(2*pi*n) = (-1,0,0,0)`` for any
    unit axis ``n``.
    """
    kvec = np.asarray(kvec, dtype=float)
    k = np.linalg.norm(kvec)
    # sin(k/2)/k, regular at k = 0
    half_sinc = 0.5 * np.sinc(k / _TWO_PI)
    q = np.empty(4)
    q[0] = math.cos(0.5 * k)
    q[1:] = half_sinc * kvec
    return _normalize(q)


def log_su2(q) -> np.ndarray:
    """Principal-branch inverse of :func:`exp_su2`, |k| in [0, 2*pi].

    At ``q = +-identity`` the axis is undetermined; the conventional axis
    (0, 0, 1) is used, giving the zero vector at the identity and
    ``(0, 0, 2*pi)`` at ``-identity``.
    """
    q = _normalize(np.asarray(q, dtype=float))
    s = np.linalg.norm(q[1:])
    if s < _AXIS_EPS:
        if q[0] > 0.0:
            return np.zeros(3)
        return np.array([0.0, 0.0, _TWO_PI])
    angle = 2.0 * math.atan2(s, q[0])
    return (angle / s) * q[1:]


def quat_multiply(q1, q2) -> np.ndarray:
    """Hamilton product; equals the SU(2) matrix product."""
    q1 = np.asarray(q1, dtype=float)
    q2 = np.asarray(q2, dtype=float)
    w1, v1 = q1[0], q1[1:]
    w2, v2 = q2[0], q2[1:]
    out = np.empty(4)
    out[0] = w1 * w2 - v1 @ v2
    out[1:] = w1 * v2 + w2 * v1 + np.cross(v1, v2)
    return _normalize(out)

def quat_inverse(q) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    return np.array([q[0], -q[1], -q[2], -q[3]])


def random_quaternion(rng: np.random.Generator) -> np.ndarray:
    """Haar-uniform random element of SU(2)."""
    q = rng.normal(size=4)
    return _normalize(q)


def project_so3(q) -> np.ndarray:
    """2:1 covering map onto proper rotations; ``project_so3(q) == project_so3(-q)``.

    Closed form in the quaternion components, so the sign invariance is
    exact (every term is quadratic).
    """
    q = _normalize(np.asarray(q, dtype=float))
    w, x, y, z = q
    return np.array(
        [
            [w * w + x * x - y * y - z * z, 2 * (x * y - w * z), 2 * (x * z + w * y)],
            [2 * (x * y + w * z), w * w - x * x + y * y - z * z, 2 * (y * z - w * x)],
            [2 * (x * z - w * y), 2 * (y * z + w * x), w * w - x * x - y * y + z * z],
        ]
    )


def rotmat_from_vector(kvec) -> np.ndarray:
    """Axis-angle rotation matrix ``cos k I + (1-cos k) n n^T + sin k [n]_x``.

    Equals the matrix exponential of the so(3) element with the same
    rotation vector; ``tr R = 1 + 2 cos k``.
    """
    kvec = np.asarray(kvec, dtype=float)
    k = np.linalg.norm(kvec)
    if k < 1e-300:
        return np.eye(3)
    n = kvec / k
    cross = np.array(
        [[0.0, -n[2], n[1]], [n[2], 0.0, -n[0]], [-n[1], n[0], 0.0]]
    )
    return (
        math.cos(k) * np.eye(3)
        + (1.0 - math.cos(k)) * np.outer(n, n)
        + math.sin(k) * cross
    )


def rodrigues_series(kvec, x, terms: int) -> np.ndarray:
    """Partial sum of the nested-cross-product rotation series.

    ``terms = 1`` gives ``x + k cross x``; as ``terms`` grows the sum
    converges to ``rotmat_from_vector(kvec) @ x``.
    """
    if terms < 1:
        raise ValueError("terms must be >= 1")
    kvec = np.asarray(kvec, dtype=float)
    x = np.asarray(x, dtype=float)
    out = x.copy()
    term = x.copy()
    for n in range(1, terms + 1):
        term = np.cross(kvec, term) / n
        out = out + term
    return out


def gibbs_from_rotvec(kvec) -> np.ndarray:
    """Gibbs vector ``2 tan(k/2) n``; singular at k = pi."""
    kvec = np.asarray(kvec, dtype=float)
    k = np.linalg.norm(kvec)
    if abs(math.cos(0.5 * k)) < 1e-12:
        raise GibbsSingularity("Gibbs chart blows up at a pi-rotation")
    if k < 1e-300:
        return np.zeros(3)
    return (2.0 * math.tan(0.5 * k) / k) * kvec


def rotvec_from_gibbs(kappa) -> np.ndarray:
    """Inverse of :func:`gibbs_from_rotvec`; |k| lands in [0, pi)."""
    kappa = np.asarray(kappa, dtype=float)
    kn = np.linalg.norm(kappa)
    if kn < 1e-300:
        return np.zeros(3)
    k = 2.0 * math.atan(0.5 * kn)
    return (k / kn) * kappa


def gibbs_compose(kappa1, kappa2) -> np.ndarray:
    """Rational composition law of Gibbs vectors.

    ``R(kappa1) R(kappa2) = R(result)``.  Raises when the composed
    rotation is a pi-rotation (vanishing denominator).
    """
    kappa1 = np.asarray(kappa1, dtype=float)
    kappa2 = np.asarray(kappa2, dtype=float)
    denom = 1.0 - 0.25 * (kappa1 @ kappa2)
    if abs(denom) < GIBBS_SINGULAR_TOL:
        raise GibbsSingularity("composition is a pi-rotation")
    return (kappa1 + kappa2 + 0.5 * np.cross(kappa1, kappa2)) / denom


def gibbs_apply(kappa, x) -> np.ndarray:
    """Rotate ``x`` by the rotation with Gibbs vector ``kappa`` (rational form)."""
    kappa = np.asarray(kappa, dtype=float)
    x = np.asarray(x, dtype=float)
    factor = 1.0 / (1.0 + 0.25 * (kappa @ kappa))
    return x + factor * np.cross(kappa, x + 0.5 * np.cross(kappa, x))


def _quat_z(angle: float) -> np.ndarray:
    return np.array([math.cos(0.5 * angle), 0.0, 0.0, math.sin(0.5 * angle)])


def _quat_y(angle: float) -> np.ndarray:
    return np.array([math.cos(0.5 * angle), 0.0, math.sin(0.5 * angle), 0.0])


def _quat_x(angle: float) -> np.ndarray:
    return np.array([math.cos(0.5 * angle), math.sin(0.5 * angle), 0.0, 0.0])


def euler_to_quaternion(e) -> np.ndarray:
    """z-y-z product ``u_z(phi) u_y(theta) u_z(psi)``."""
    phi, theta, psi = e[0], e[1], e[2]
    return quat_multiply(quat_multiply(_quat_z(phi), _quat_y(theta)), _quat_z(psi))


GIMBAL_TOL = 1e-10


def quaternion_to_euler(q) -> EulerAngles:
    """Principal-window z-y-z angles; gimbal-degenerate cases take psi = 0."""
    q = _normalize(np.asarray(q, dtype=float))
    w, x, y, z = q
    cos_half = math.hypot(w, z)
    sin_half = math.hypot(x, y)
    theta = 2.0 * math.atan2(sin_half, cos_half)
    degenerate = min(cos_half, sin_half) < GIMBAL_TOL
    if degenerate:
        if cos_half >= sin_half:
            # rotation about z only: phi carries everything
            total = 2.0 * math.atan2(z, w)
            phi, psi = total % (4.0 * math.pi), 0.0
        else:
            diff = 2.0 * math.atan2(-x, y)
            phi, psi = diff % (4.0 * math.pi), 0.0
        return EulerAngles(phi, theta, psi, True)
    ssum = 2.0 * math.atan2(z, w)  # phi + psi, mod 4*pi
    sdiff = 2.0 * math.atan2(-x, y)  # phi - psi, mod 4*pi
    phi = 0.5 * (ssum + sdiff)
    psi = 0.5 * (ssum - sdiff)
    # (phi, psi) -> (phi + 2*pi, psi + 2*pi) is the residual ambiguity;
    # spend it on bringing psi into [0, 2*pi)
    shift = math.floor(psi / _TWO_PI) * _TWO_PI
    psi -= shift
    phi += shift
    phi %= 4.0 * math.pi
    return EulerAngles(phi, theta, psi, False)


def canonical2_to_quaternion(a: float, b: float, g: float) -> np.ndarray:
    """x-y-z one-parameter-subgroup product ``u_x(a) u_y(b) u_z(g)``."""
    return quat_multiply(quat_multiply(_quat_x(a), _quat_y(b)), _quat_z(g))


def conjugate_quat(u, v) -> np.ndarray:
    """Inner automorphism ``u v u^{-1}``; rotates the rotation vector of v."""
    return quat_multiply(quat_multiply(u, v), quat_inverse(u))
