"""Tour of the rotation charts and the 2:1 covering map.

Run with ``python3 demos/rotation_charts.py``.  Shows: composing rotations
in the quaternion, rotation-vector and Gibbs charts; the sign ambiguity of
the covering map; and what happens at the Gibbs singularity.
"""

import numpy as np

from su2kit import rotations
from su2kit.errors import GibbsSingularity


def main():
    ka = np.array([0.7, -0.2, 0.4])
    kb = np.array([-0.3, 0.5, 0.1])

    qa, qb = rotations.exp_su2(ka), rotations.exp_su2(kb)
    q = rotations.quat_multiply(qa, qb)
    print("quaternion product:      ", np.round(q, 6))
    print("rotation vector of product:", np.round(rotations.log_su2(q), 6))

    g = rotations.gibbs_compose(
        rotations.gibbs_from_rotvec(ka), rotations.gibbs_from_rotvec(kb)
    )
    print("Gibbs composition:        ", np.round(g, 6))
    print("agrees with quaternion oracle:",
          np.allclose(g, rotations.gibbs_from_rotvec(rotations.log_su2(q)), atol=1e-12))

    # the covering map ignores the quaternion sign
    R1 = rotations.project_so3(q)
    R2 = rotations.project_so3(-q)
    print("covering map sign-blind:  ", np.array_equal(R1, R2))

    # three equivalent rotation matrices
    R3 = rotations.rotmat_from_vector(rotations.log_su2(q))
    print("matrix via rotation vector agrees:", np.allclose(R1, R3, atol=1e-12))

    # Euler angles round trip (up to the quaternion sign)
    e = rotations.quaternion_to_euler(q)
    qe = rotations.euler_to_quaternion([e.phi, e.theta, e.psi])
    print("Euler round trip:         ", min(np.abs(qe - q).max(), np.abs(qe + q).max()) < 1e-12)

    # Gibbs chart blows up at half-turns
    try:
        rotations.gibbs_compose(np.array([0.0, 0.0, 2.0]), np.array([0.0, 0.0, 2.0]))
    except GibbsSingularity as exc:
        print("half-turn composition rejected:", exc)


if __name__ == "__main__":
    main()
