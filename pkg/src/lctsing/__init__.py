"""Exact-arithmetic analyzer for isolated hypersurface singularities.

Computes Milnor algebras, the singularity spectrum via the Brieskorn
lattice, monodromy eigenvalue data, logarithmic vector fields, and
decides (or excludes) the logarithmic comparison theorem.
"""

__version__ = "0.1.0"

from .errors import (
    LctError,
    NonIsolatedError,
    SmoothGermError,
    ParseError,
    TruncationError,
    IrrationalExponentError,
    ConsistencyError,
    NotInMDeltaError,
)
from .poly import Polynomial, MonomialOrder, parse_polynomial, poly_str
from .localalg import (
    StandardBasis,
    DivisionResult,
    MilnorData,
    mora_division,
    standard_basis,
    milnor_data,
    local_membership,
    is_quasihomogeneous,
)
from .syzygy import syzygies
from .quasihom import WeightSystem, detect_weights, graded_dims, holland_mond_verdict
from .logder import (
    Derivation,
    LinearPart,
    derlog_generators,
    is_logarithmic,
    linear_part,
    jordan_chevalley,
    trace_residue,
    lie_bracket,
)
from .gaussmanin import (
    BrieskornModel,
    SaturatedModel,
    Spectrum,
    C0Structure,
    t_matrix,
    saturate,
    spectrum,
    bp_spectrum_oracle,
    qh_spectrum_oracle,
    monodromy_info,
    c0_structure,
    lct_obstruction_membership,
    gauss_manin_analysis,
)
from .verdict import LctReport, analyze, spectrum_selfcheck
