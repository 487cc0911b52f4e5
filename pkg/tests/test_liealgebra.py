import numpy as np
import pytest

from su2kit import liealgebra as la
from su2kit import rotations
from su2kit.errors import ChartSingular


def _comm_residual(which, sign, kvec, h=1e-5):
    """Max residual of [X_a, X_b] = sign * eps_ab^c X_c by nested FD."""
    worst = 0.0
    probe = np.array([0.37, -0.81, 0.22])

    def f(kk):
        return np.exp(1j * (probe @ kk)) + 0.5 * (kk @ kk)

    for a, b in ((0, 1), (1, 2), (2, 0)):
        c = 3 - a - b

        def xa_f(kk, a=a):
            return la.apply_generator(which, a, f, kk, h)

        def xb_f(kk, b=b):
            return la.apply_generator(which, b, f, kk, h)

        lhs = la.apply_generator(which, a, xb_f, kvec, h) - la.apply_generator(
            which, b, xa_f, kvec, h
        )
        rhs = sign * la.apply_generator(which, c, f, kvec, h)
        worst = max(worst, abs(lhs - rhs))
    return worst


def test_structure_constants_left_right():
    kvec = np.array([0.8, -0.3, 0.5])
    assert _comm_residual("L", -1.0, kvec) < 1e-5
    assert _comm_residual("R", +1.0, kvec) < 1e-5


def test_left_right_fields_commute():
    kvec = np.array([0.4, 0.9, -0.6])
    probe = np.array([0.53, 0.11, -0.77])

    def f(kk):
        return np.exp(1j * (probe @ kk))

    h = 1e-5
    for a in range(3):
        for b in range(3):

            def rb_f(kk, b=b):
                return la.apply_generator("R", b, f, kk, h)

            def la_f(kk, a=a):
                return la.apply_generator("L", a, f, kk, h)

            res = la.apply_generator("L", a, rb_f, kvec, h) - la.apply_generator(
                "R", b, la_f, kvec, h
            )
            assert abs(res) < 1e-5


def test_killing_metric_from_adjoint():
    gamma, _ = la.killing_metric()
    assert np.array_equal(la.killing_from_adjoint(), gamma)


def test_forms_invert_fields():
    comps = la.field_components([0.7, 0.1, -0.4])
    assert np.abs(comps.Lform @ comps.L - np.eye(3)).max() < 1e-12
    assert np.abs(comps.Rform @ comps.R - np.eye(3)).max() < 1e-12
    assert np.abs(comps.A - (comps.L - comps.R)).max() < 1e-12


def test_left_right_form_relation(rng):
    u = rotations.random_quaternion(rng)
    if abs(np.linalg.norm(rotations.log_su2(u)) - 2 * np.pi) < 1e-3:
        u = -u
    assert la.left_right_relation_check(u) < 1e-10


def test_chart_singular_at_far_pole():
    with pytest.raises(ChartSingular):
        la.field_components([0.0, 0.0, 2.0 * np.pi])


def test_angular_velocity_frames_related_by_rotation(rng):
    kvec = np.array([0.9, -0.2, 0.4])
    s = la.KinematicsSample(kvec=kvec, kdot=rng.normal(size=3), p=rng.normal(size=3))
    omega, omega_hat = la.angular_velocities(s)
    R = rotations.rotmat_from_vector(kvec)
    assert np.allclose(omega, R @ omega_hat, atol=1e-10)


def test_momentum_difference_is_k_cross_p(rng):
    kvec = np.array([-0.5, 0.3, 1.1])
    p = rng.normal(size=3)
    s = la.KinematicsSample(kvec=kvec, kdot=np.zeros(3), p=p)
    _, _, delta = la.classical_momentum_maps(s)
    assert np.allclose(delta, np.cross(kvec, p), atol=1e-10)


def test_classical_spin_brackets(rng):
    kvec = np.array([0.6, -0.9, 0.3])
    p = rng.normal(size=3)

    def S(a):
        def f(kk, pp):
            return pp @ la.field_components(kk).L[:, a]

        return f

    def S_hat(a):
        def f(kk, pp):
            return pp @ la.field_components(kk).R[:, a]

        return f

    s = la.KinematicsSample(kvec=kvec, kdot=np.zeros(3), p=p)
    Sv, Shv, _ = la.classical_momentum_maps(s)
    for a, b in ((0, 1), (1, 2), (2, 0)):
        c = 3 - a - b
        br = la.canonical_poisson_bracket(S(a), S(b), kvec, p)
        assert abs(br - Sv[c]) < 1e-10
        br = la.canonical_poisson_bracket(S_hat(a), S_hat(b), kvec, p)
        assert abs(br + Shv[c]) < 1e-10
        br = la.canonical_poisson_bracket(S(a), S_hat(b), kvec, p)
        assert abs(br) < 1e-10
