"""Combinatorial link homology and branched double cover invariants over F2.

Modules
-------
diagram    planar diagram codes, resolutions, mirrors, faces
linalg     exact F2 and integer linear algebra
khovanov   cube of resolutions, homology tables, state-sum oracle
homalg     filtered complexes, spectral pages, mapping cones
goeritz    checkerboard graphs, determinants, circuit lattices
dinv       characteristic vector classes and correction terms
quasialt   quasi-alternating certificates
cli        command line front end
"""

from .conventions import CONVENTIONS_VERSION

__version__ = "0.1.0"
__all__ = ["CONVENTIONS_VERSION", "__version__"]
