import math

import numpy as np
import pytest

from su2kit import rotations
from su2kit.errors import GibbsSingularity

TWO_PI = 2.0 * math.pi


def test_exp_quarter_turn_moves_x_to_y():
    q = rotations.exp_su2([0.0, 0.0, 0.5 * math.pi])
    R = rotations.project_so3(q)
    assert np.allclose(R @ [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], atol=1e-12)


def test_exp_log_roundtrip(rng):
    for _ in range(200):
        k = rng.uniform(0.05, TWO_PI - 0.05)
        n = rng.normal(size=3)
        n /= np.linalg.norm(n)
        kvec = k * n
        back = rotations.log_su2(rotations.exp_su2(kvec))
        assert np.allclose(back, kvec, atol=1e-10)


def test_quat_product_matches_matrix_product(rng):
    for _ in range(100):
        qa = rotations.random_quaternion(rng)
        qb = rotations.random_quaternion(rng)
        R = rotations.project_so3(rotations.quat_multiply(qa, qb))
        assert np.allclose(
            R, rotations.project_so3(qa) @ rotations.project_so3(qb), atol=1e-12
        )


def test_covering_two_to_one(rng):
    q = rotations.random_quaternion(rng)
    assert np.array_equal(rotations.project_so3(q), rotations.project_so3(-q))


def test_inverse(rng):
    q = rotations.random_quaternion(rng)
    assert np.allclose(
        rotations.quat_multiply(q, rotations.quat_inverse(q)),
        [1.0, 0.0, 0.0, 0.0],
        atol=1e-14,
    )


def test_rotmat_three_ways(rng):
    from scipy.linalg import expm

    for _ in range(50):
        kvec = rng.normal(size=3)
        kvec *= rng.uniform(0, math.pi) / np.linalg.norm(kvec)
        R = rotations.rotmat_from_vector(kvec)
        hat = np.array(
            [
                [0.0, -kvec[2], kvec[1]],
                [kvec[2], 0.0, -kvec[0]],
                [-kvec[1], kvec[0], 0.0],
            ]
        )
        assert np.abs(R - expm(hat)).max() < 1e-10
        x = rng.normal(size=3)
        assert np.allclose(R @ x, rotations.rodrigues_series(kvec, x, 50), atol=1e-10)


def test_gibbs_composition_matches_quaternions(rng):
    for _ in range(100):
        ka = rng.normal(size=3) * 0.6
        kb = rng.normal(size=3) * 0.6
        got = rotations.gibbs_compose(
            rotations.gibbs_from_rotvec(ka), rotations.gibbs_from_rotvec(kb)
        )
        q = rotations.quat_multiply(rotations.exp_su2(ka), rotations.exp_su2(kb))
        want = rotations.gibbs_from_rotvec(rotations.log_su2(q))
        assert np.allclose(got, want, atol=1e-10)


def test_gibbs_singular_pair():
    with pytest.raises(GibbsSingularity):
        rotations.gibbs_compose([0.0, 0.0, 2.0], [0.0, 0.0, 2.0])
    with pytest.raises(GibbsSingularity):
        rotations.gibbs_from_rotvec([0.0, math.pi, 0.0])


def test_gibbs_apply_matches_matrix(rng):
    kvec = np.array([0.4, -0.7, 0.2])
    x = rng.normal(size=3)
    kappa = rotations.gibbs_from_rotvec(kvec)
    assert np.allclose(
        rotations.gibbs_apply(kappa, x),
        rotations.rotmat_from_vector(kvec) @ x,
        atol=1e-12,
    )


def test_euler_roundtrip(rng):
    for _ in range(100):
        q = rotations.random_quaternion(rng)
        e = rotations.quaternion_to_euler(q)
        q2 = rotations.euler_to_quaternion((e.phi, e.theta, e.psi))
        assert min(np.abs(q2 - q).max(), np.abs(q2 + q).max()) < 1e-10


def test_conjugation_rotates_rotation_vector(rng):
    u = rotations.random_quaternion(rng)
    kvec = np.array([0.3, 0.8, -0.2])
    v = rotations.exp_su2(kvec)
    got = rotations.log_su2(rotations.conjugate_quat(u, v))
    want = rotations.project_so3(u) @ kvec
    assert np.allclose(got, want, atol=1e-10)
