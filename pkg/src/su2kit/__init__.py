"""Harmonic analysis and quasiclassical mechanics on SU(2) and SO(3).

Submodules
----------
rotations
    Quaternion, rotation-vector, Gibbs-vector and Euler-angle charts of
    the rotation groups, with the 2:1 covering map.
liealgebra
    Invariant vector fields, structure constants, Killing metric and the
    classical momentum maps.
haar
    The bi-invariant metric and normalized Haar measure in several
    coordinate systems, with product Gauss quadrature grids.
irreps
    Spin matrices, Wigner representation matrices, characters and the
    symmetric-top spectrum.
groupalgebra
    Group-algebra convolution, spectral-block idempotents, the multipole
    basis and traceless-tensor expansions.
quasiclassics
    Large-spin asymptotics, flat-space degeneration of the convolution,
    Lie-Poisson dynamics on the coalgebra and coadjoint-orbit states.
cli
    Command-line front end.
"""

from . import errors, groupalgebra, haar, irreps, liealgebra, quasiclassics, rotations

__all__ = [
    "errors",
    "groupalgebra",
    "haar",
    "irreps",
    "liealgebra",
    "quasiclassics",
    "rotations",
]

__version__ = "0.1.0"
