import math

import numpy as np
import pytest

from su2kit import groupalgebra as ga
from su2kit import irreps
from su2kit import quasiclassics as qc
from su2kit.errors import LabelOutOfRange, StepUnstable, WindowInvalid


def _decreasing(seq):
    return all(b < a for a, b in zip(seq, seq[1:]))


def test_coordinate_brackets(rng):
    for _ in range(5):
        s = rng.normal(size=3)
        for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
            b = qc.lie_poisson_bracket(qc.coordinate_field(i), qc.coordinate_field(j), s)
            assert abs(b - s[k]) < 1e-12


def test_darboux_brackets(rng):
    dbx = qc.darboux_fields()
    for _ in range(5):
        s = rng.normal(size=3)
        assert abs(qc.lie_poisson_bracket(dbx["phi"], dbx["sigma3"], s) - 1.0) < 1e-8
        assert abs(qc.lie_poisson_bracket(dbx["sigma"], dbx["sigma3"], s)) < 1e-8
        assert abs(qc.lie_poisson_bracket(dbx["sigma"], dbx["phi"], s)) < 1e-8


def test_asymptotic_character_error_decreases():
    kk = np.linspace(1e-6, 2 * math.pi - 1e-6, 40001)
    wgt = np.sin(0.5 * kk) ** 2 / math.pi
    errs = []
    for j in (5, 10, 20, 40):
        exact = irreps.idempotent(2 * j, kk)
        approx = qc.epsilon_asymptotic(2 * j, kk, "both")
        errs.append(np.trapezoid(np.abs(exact - approx) * wgt, kk) / np.abs(exact).max())
    assert _decreasing(errs)


def test_asymptotic_peak_values():
    assert abs(qc.epsilon_asymptotic(80, 1e-9, "near0") - 81.0**2) / 81.0**2 < 1e-6
    v2pi = qc.epsilon_asymptotic(81, 2 * math.pi - 1e-9, "near2pi")
    assert abs(v2pi + 82.0**2) / 82.0**2 < 1e-6


@pytest.mark.parametrize(
    "f",
    [
        lambda k: math.exp(-k),
        lambda k: math.exp(-((k - 0.3) ** 2)),
        lambda k: 1.0 / (1.0 + k) ** 2,
    ],
    ids=["exp", "gauss", "invsq"],
)
def test_dirac_sequence(f):
    vals = [
        abs(qc.dirac_sequence_integral(f, n, 2.5) - math.pi * f(0.0))
        for n in (50, 100, 200, 400)
    ]
    assert _decreasing(vals)


def test_flat_delta_reconstruction():
    assert abs(qc.classical_delta_reconstruction(10, lambda w: math.exp(-w * w)) - 1.0) < 0.1
    assert abs(qc.classical_delta_reconstruction(40, lambda w: math.exp(-w * w)) - 1.0) < 0.02


def test_flat_profile_ode():
    kpts = np.linspace(0.3, 2 * math.pi - 0.3, 9)
    for tj, l, br in ((9, 1, "near0"), (15, 2, "near0"), (9, 1, "near2pi")):
        p = qc.flat_radial_profile(tj, l, br)
        assert p.ode_residual(kpts) < 1e-8


def test_two_peak_profile_error_decreases():
    errs = []
    ks = np.linspace(1e-4, 2 * math.pi - 1e-4, 40001)
    w = np.sin(0.5 * ks) ** 2 / math.pi
    for tj in (15, 31):
        ev = ga.radial_profile(tj, 1)(ks)
        tp = qc.two_peak_profile(tj, 1)
        errs.append(np.trapezoid(np.abs(ev - tp(ks)) * w, ks) / np.abs(ev).max())
    assert _decreasing(errs)


def test_truncated_convolution_compare(grid_small):
    errs0, errs1 = [], []
    for jbar in (4.0, 8.0):
        A = qc.gaussian_class_state(grid_small, jbar, math.sqrt(jbar))
        out = qc.truncated_convolution_compare(A, A)
        errs0.append(out["zeroth_error"])
        errs1.append(out["corrected_error"])
        assert out["bracket_norm"] == 0.0
    assert _decreasing(errs0)
    assert all(e1 <= e0 + 1e-15 for e0, e1 in zip(errs0, errs1))


def test_window_flags():
    flags = qc.window_flags(8.0, 2.0)
    assert flags["dj_wide"] and flags["jbar_dominates"]
    with pytest.raises(WindowInvalid):
        qc.window_flags(-1.0, 2.0)


def test_window_suppresses_far_peak(grid_small):
    # Gaussian spin window over j in [10, 14]: the k = 2pi cap is strongly
    # suppressed relative to a single idempotent of comparable spin
    A = qc.gaussian_class_state(grid_small, 12.0, 2.0)
    assert qc.peak_ratio(A) < 0.1
    assert qc.peak_ratio(A) < 0.2 * qc.peak_ratio(ga.idempotent_function(grid_small, 24))


def test_window_parity_sets_far_peak_sign(grid_small):
    # value at the central element -1: sum of (-1)^{2j} (2j+1)^2 weights
    kcap = 2 * math.pi - 1e-6
    a_int = qc.gaussian_class_state(grid_small, 12.0, 2.0, parity="integer")
    a_half = qc.gaussian_class_state(grid_small, 12.5, 2.0, parity="half")
    v_int = complex(a_int.radial(kcap)).real
    v_half = complex(a_half.radial(kcap)).real
    assert v_int > 0
    assert v_half < 0


def test_quasistate_synthesis(grid_small):
    st = qc.QuasiState(weights={(1, 0, 0): 1.0, (2, 1, 0): 0.5}, j_bar=0.75, dj=0.5)
    F = qc.quasistate_synthesize(grid_small, st)
    assert np.abs(F.values).max() > 1.0


def test_orbit_states():
    st = qc.orbit_state(3, 0.5, -1.5)
    res = qc.orbit_eigencheck(st)
    assert max(res.values()) < 1e-12
    assert abs(st.winding - 2.0) < 1e-12
    assert abs(st.sigma3_support + 0.5) < 1e-12
    with pytest.raises(LabelOutOfRange):
        qc.orbit_state(1, 1.5, 0.5)


def _gaussian_blob(box, center, width=0.2):
    return np.exp(-np.sum((box.sigma - center) ** 2, axis=-1) / (2 * width**2))


def test_evolution_rejects_unstable_step():
    H = qc.CoalgebraField(
        fn=lambda s: s[..., 2],
        grad=lambda s: np.broadcast_to(np.array([0.0, 0.0, 1.0]), s.shape).copy(),
    )
    box = qc.make_box(16, 2.0)
    rho0 = _gaussian_blob(box, np.array([0.6, 0.0, 0.5]))
    with pytest.raises(StepUnstable):
        qc.evolve_density(H, rho0, box, dt=10.0, steps=1)


def test_spherical_top_density_is_stationary():
    # H proportional to sigma^2 is a Casimir: the velocity field vanishes
    H = qc.CoalgebraField(
        fn=lambda s: 0.5 * np.sum(s**2, axis=-1),
        grad=lambda s: np.array(s, copy=True),
    )
    box = qc.make_box(24, 2.0)
    rho0 = _gaussian_blob(box, np.array([0.6, 0.0, 0.5]))
    res = qc.evolve_density(H, rho0, box, dt=0.01, steps=50, save_every=50)
    assert np.abs(res["rho"] - rho0).max() / np.abs(rho0).max() < 1e-10


def test_linear_hamiltonian_advects_rigidly():
    # H = sigma_3 rotates the density about the 3-axis at unit angular rate
    H = qc.CoalgebraField(
        fn=lambda s: s[..., 2],
        grad=lambda s: np.broadcast_to(np.array([0.0, 0.0, 1.0]), s.shape).copy(),
    )
    box = qc.make_box(32, 2.0)
    width = 0.25

    def blob(x, y, z):
        return np.exp(-((x - 0.8) ** 2 + y**2 + z**2) / (2 * width**2))

    rho0 = blob(box.sigma[..., 0], box.sigma[..., 1], box.sigma[..., 2])
    t_final = 0.5
    res = qc.evolve_density(H, rho0, box, dt=0.005, steps=100)
    c, s = math.cos(t_final), math.sin(t_final)
    x, y, z = box.sigma[..., 0], box.sigma[..., 1], box.sigma[..., 2]
    # pullback of the initial blob along the inverse rotation about the 3-axis
    fwd = blob(c * x + s * y, -s * x + c * y, z)
    bwd = blob(c * x - s * y, s * x + c * y, z)
    err_fwd = np.abs(res["rho"] - fwd).max() / rho0.max()
    err_bwd = np.abs(res["rho"] - bwd).max() / rho0.max()
    assert min(err_fwd, err_bwd) < 2e-2
    assert max(err_fwd, err_bwd) > 0.2


def test_asymmetric_top_conservation():
    I1, I2, I3 = 1.0, 2.0, 3.0
    H = qc.CoalgebraField(
        fn=lambda s: 0.5
        * (s[..., 0] ** 2 / I1 + s[..., 1] ** 2 / I2 + s[..., 2] ** 2 / I3),
        grad=lambda s: np.stack(
            [s[..., 0] / I1, s[..., 1] / I2, s[..., 2] / I3], axis=-1
        ),
    )
    box = qc.make_box(32, 2.0)
    rho0 = _gaussian_blob(box, np.array([0.6, 0.0, 0.5]))
    res = qc.evolve_density(H, rho0, box, dt=0.002, steps=200)
    d0, dT = res["diagnostics"][0], res["diagnostics"][-1]
    assert abs(dT["mass"] - d0["mass"]) / abs(d0["mass"]) < 1e-6
    assert abs(dT["energy"] - d0["energy"]) / abs(d0["energy"]) < 1e-6
    assert abs(dT["casimir"] - d0["casimir"]) / abs(d0["casimir"]) < 1e-6
