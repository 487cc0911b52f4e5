import math

import numpy as np

from su2kit import haar, irreps, rotations


def test_spin_matrix_algebra():
    for tj in (1, 2, 3, 4):
        sm = irreps.spin_matrices(tj)
        S = sm.S
        comm = max(
            np.abs(S[a] @ S[b] - S[b] @ S[a] - 1j * S[3 - a - b]).max()
            for a, b in ((0, 1), (1, 2), (2, 0))
        )
        cas = np.abs(
            sum(S[a] @ S[a] for a in range(3)) - sm.j * (sm.j + 1) * np.eye(tj + 1)
        ).max()
        herm = max(np.abs(S[a] - S[a].conj().T).max() for a in range(3))
        assert comm < 1e-12
        assert cas < 1e-12
        assert herm < 1e-12


def test_spin_half_matrix_from_quaternion_components(rng):
    # D(1/2) equals the 2x2 quaternion matrix conjugated by the m-order flip
    q = rotations.random_quaternion(rng)
    w, x, y, z = q
    M = np.array([[w - 1j * z, -1j * x - y], [-1j * x + y, w + 1j * z]])
    F = np.array([[0.0, 1.0], [1.0, 0.0]])
    assert np.abs(irreps.wigner_d(1, q) - F @ M @ F).max() < 1e-12


def test_homomorphism_unitarity_trace(rng):
    errs = []
    for tj in (1, 2, 3):
        for _ in range(5):
            qa = rotations.random_quaternion(rng)
            qb = rotations.random_quaternion(rng)
            Dab = irreps.wigner_d(tj, rotations.quat_multiply(qa, qb))
            errs.append(np.abs(Dab - irreps.wigner_d(tj, qa) @ irreps.wigner_d(tj, qb)).max())
            D = irreps.wigner_d(tj, qa)
            errs.append(np.abs(D.conj().T @ D - np.eye(tj + 1)).max())
            kq = np.linalg.norm(rotations.log_su2(qa))
            errs.append(abs(np.trace(D) - irreps.character(tj, kq)))
    assert max(errs) < 1e-9


def test_central_element_sign(rng):
    errs = []
    for tj in (1, 2, 3):
        q = rotations.random_quaternion(rng)
        errs.append(
            np.abs(irreps.wigner_d(tj, -q) - (-1.0) ** tj * irreps.wigner_d(tj, q)).max()
        )
    assert max(errs) < 1e-9


def test_character_endpoints():
    assert abs(irreps.character(3, 0.0) - 4) < 1e-12
    assert abs(irreps.character(3, 2 * math.pi) + 4) < 1e-12
    assert abs(irreps.idempotent(2, 0.0) - 9) < 1e-12


def test_differential_spin_eigenvalues():
    pts = [np.array([0.9, -0.4, 1.2]), np.array([2.1, 0.3, -0.5]), np.array([-0.2, 1.7, 0.8])]
    for tj, m, kk in ((1, 0.5, -0.5), (2, 1.0, 0.0)):
        r = irreps.eigencheck_D(tj, m, kk, pts)
        assert r["S2"] < 1e-4
        assert r["S3"] < 1e-4
        assert r["S3_hat"] < 1e-4


def test_casimir_radial_equation():
    assert irreps.casimir_radial_residual(3, [0.5, 1.5, 3.0, 5.0]) < 1e-4


def test_batched_matrix_evaluation(rng):
    kvs = rng.uniform(-1, 1, (20, 3))
    Dg = irreps.wigner_d_grid(2, kvs)
    err = max(np.abs(Dg[i] - irreps.wigner_d_rotvec(2, kvs[i])).max() for i in range(20))
    assert err < 1e-11


def test_matrix_element_orthogonality(grid_small):
    tjs = [0, 1, 2, 3]
    G = irreps.peter_weyl_gram(tjs, grid_small)
    labels = irreps.pw_labels(tjs)
    exact = np.diag([1.0 / (tj + 1) for tj, m, kk in labels])
    assert np.abs(G - exact).max() < 1e-8


def test_symmetric_top_spectrum():
    lv = irreps.top_spectrum(2, 1.0, 1.0)
    # spherical top: single level j(j+1)/(2I) with full (2j+1)^2 degeneracy
    assert abs(lv[0][0] - 1.0) < 1e-12
    assert lv[0][1] == 9
    assert lv[0][2] is None

    lv = irreps.top_spectrum(2, 2.0, 1.0)
    # E = j(j+1)/(2I) + (1/(2K) - 1/(2I)) k^2 = 0.5 + 0.25 k^2
    expected = [(0.5, 3, 0.0), (0.75, 6, 1.0)]
    for got, exp in zip(lv, expected):
        assert abs(got[0] - exp[0]) < 1e-12
        assert got[1] == exp[1]
        assert abs(got[2] - exp[2]) < 1e-12

    deg = sum(d for _, d, _ in irreps.top_spectrum(3, 2.0, 1.0))
    assert deg == 16
