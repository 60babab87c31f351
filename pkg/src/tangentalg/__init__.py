"""Tangent algebras and Rees algebras of Kaehler differentials, with the
commutative algebra needed to study them: Groebner bases, ideal
operations, Fitting ideals and graded free resolutions."""

from .polycore import GroundField, PolyMatrix, PolyRing, Polynomial, build_matrix, minors
from .groebner import GroebnerBasis, budget, buchberger, normal_form, syzygies
from .idealops import Ideal, hilbert_series, krull_dim, saturation
from .diffalg import (
    PresentedAlgebra,
    PresentedModule,
    edim_criterion,
    ft_check,
    omega_presentation,
    rees_algebra,
    tangent_algebra,
    torsion_witness,
)
from .homology import free_resolution, is_cohen_macaulay, is_gorenstein

__version__ = "0.1.0"
