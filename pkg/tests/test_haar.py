import math
import os
import tempfile

import numpy as np
import pytest

from su2kit import haar, irreps


def test_su2_normalized_volume():
    g = haar.build_grid(16, 12, 24, "su2")
    val = haar.integrate(g, lambda K, T, P: np.ones_like(K))
    assert abs(val - 1.0) < 1e-12
    assert abs(g.volume - 16 * math.pi**2) < 1e-9


def test_so3_volume():
    g = haar.build_grid(16, 12, 24, "so3")
    assert abs(g.volume - 8 * math.pi**2) < 1e-9


def test_metric_at_rotation_vector():
    kv = np.array([0.9, -1.3, 0.4])
    mp = haar.metric_at(kv)
    k = np.linalg.norm(kv)
    s = (2 * np.sin(k / 2) / k) ** 2
    assert np.abs(mp.ginv @ mp.g - np.eye(3)).max() < 1e-12
    assert abs(mp.sqrtdet - s) < 1e-12
    assert abs(np.linalg.det(mp.g) - s**2) < 1e-12


def test_euler_metric():
    em = haar.euler_metric((0.3, 1.0, 2.2))
    assert abs(em.sqrtdet - np.sin(1.0)) < 1e-12
    assert abs(em.g[1, 2] - np.cos(1.0)) < 1e-12


def test_conformal_chart_roundtrip_and_pullback():
    kvec = np.array([0.7, 0.2, -1.1])
    rho = haar.conformal_coords(kvec)
    assert np.abs(haar.rotvec_from_conformal(rho) - kvec).max() < 1e-10
    # the flat metric scaled by the conformal factor pulls back to the
    # curved metric in the rotation-vector chart
    h = 1e-6
    J = np.zeros((3, 3))
    for i in range(3):
        d = np.zeros(3)
        d[i] = h
        J[:, i] = (haar.conformal_coords(kvec + d) - haar.conformal_coords(kvec - d)) / (2 * h)
    gk = haar.metric_at(kvec).g
    cf = haar.conformal_factor(float(np.linalg.norm(rho)))
    assert np.abs(J.T @ (cf * np.eye(3)) @ J - gk).max() < 1e-5


def test_projective_metric():
    pm = haar.projective_metric((0.8, 1.1)).g
    q8 = 4 + 0.8**2
    assert abs(pm[0, 0] - 16 / q8**2) < 1e-12


def test_character_orthonormality():
    gq = haar.build_grid(32, 20, 40, "su2")
    K, _, _ = gq.node_arrays()
    chis = [irreps.character(tj, K) for tj in range(4)]
    errs = [
        abs(haar.integrate(gq, chis[a] * chis[b]) - (1.0 if a == b else 0.0))
        for a in range(4)
        for b in range(4)
    ]
    assert max(errs) < 1e-10


def test_grid_csv_roundtrip():
    g = haar.build_grid(16, 12, 24, "su2")
    with tempfile.TemporaryDirectory() as td:
        p = os.path.join(td, "g.csv")
        haar.export_grid_csv(g, p)
        gb = haar.import_grid_csv(p, g.shape)
    err = max(
        np.abs(g.k - gb.k).max(),
        np.abs(g.weights - gb.weights).max(),
        np.abs(g.ctheta - gb.ctheta).max(),
        np.abs(g.phi - gb.phi).max(),
    )
    assert err < 1e-12
    assert abs(gb.volume - g.volume) < 1e-9


def test_bad_group_name_rejected():
    with pytest.raises(Exception):
        haar.build_grid(8, 8, 8, "u2")
