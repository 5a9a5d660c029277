"""Toolkit for real-linear and antilinear maps on C^n.

Operator algebra, unitary conjugations, Takagi-based diagonalization, polar
form and antilinear spectral measures, Schatten norms, and the Weyl-von
Neumann decomposition ``A = D + K`` with ``||K||_p < epsilon``.
"""

from .core import (
    AntilinearProjection,
    Conjugation,
    RealLinearOp,
    ToleranceConfig,
    adjoint,
    antilinear_projection,
    apply,
    compose,
    from_action,
    from_callable,
    operator_norm,
    realify,
    sample,
    standard_conjugation,
)
from .csym import (
    TauSymmetricOp,
    approx_condiag,
    approx_factor,
    bridge,
    is_tau_symmetric,
    relative_state,
)
from .exceptions import AntilinError
from .polar_spectral import (
    PolarForm,
    SpectralMeasure,
    measure_of,
    polar,
    reconstruct,
    spectral_measure,
    sqrt_psd,
)
from .schatten import SchattenParams, schatten_norm, singular_values
from .spectra import (
    SpectrumQuery,
    circular_symmetry_check,
    conjugation_eigenbasis,
    conjugation_transfer,
    eigvec_for_phase,
    in_spectrum,
)
from .takagi import (
    AntilinearEigensystem,
    TakagiFactorization,
    antilinear_eig,
    common_eigenvector,
    diagonalize_commuting_pair,
    takagi,
)
from .wvn import WvnDecomposition, reduce_step, wvn_decompose

__version__ = "0.1.0"
