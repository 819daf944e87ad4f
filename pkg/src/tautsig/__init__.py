"""tautsig: exact verification of twisted signature identities.

Subpackages cover the graded cohomology rings of model spaces, the
multiplicative characteristic classes built from generating series, exact
Clifford/Hodge sign identities on exterior algebras, a finite Fourier
spectral engine for twisted de Rham operators on flat tori, and the
tautological-class calculus combining them.  ``tautsig.cli`` exposes the
batch verification harness.
"""

__version__ = "0.1.0"
