"""Characters, block units and group-algebra convolution.

Run with ``python3 demos/characters_and_convolution.py``.  Shows: the
idempotent (block-unit) property under convolution, cross-annihilation
between different spin blocks, and spectral projection of a mollifier.
"""

import numpy as np

from su2kit import groupalgebra, haar, irreps


def main():
    grid = haar.build_grid(24, 16, 32, "SU2")
    print(f"quadrature grid {grid.shape}, {int(np.prod(grid.shape))} nodes")

    eps = {tj: groupalgebra.idempotent_function(grid, tj) for tj in (0, 1, 2)}
    for tj in (0, 1, 2):
        C = groupalgebra.convolve(eps[tj], eps[tj])
        err = np.abs(C.values - eps[tj].values).max()
        print(f"eps(j={tj/2}) * eps(j={tj/2}) = eps(j={tj/2})   max error {err:.2e}")
    for ta, tb in ((0, 1), (1, 2)):
        err = np.abs(groupalgebra.convolve(eps[ta], eps[tb]).values).max()
        print(f"eps(j={ta/2}) * eps(j={tb/2}) = 0        max error {err:.2e}")

    # partial delta sum decomposes into block units under projection
    moll = groupalgebra.delta_partial_sum(grid, 2)
    for tj in (0, 1, 2):
        P = groupalgebra.project_ideal(moll, tj)
        err = np.abs(P.values - eps[tj].values).max()
        print(f"projection of mollifier onto block j={tj/2}: error {err:.2e}")

    # peak values of the block unit: (2j+1)^2 at the identity
    for tj in (2, 6, 10):
        print(f"eps(j={tj/2})(identity) = {irreps.idempotent(tj, 0.0):.1f}"
              f"  (expected {(tj + 1) ** 2})")


if __name__ == "__main__":
    main()
