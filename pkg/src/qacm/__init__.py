"""qacm: exact computation with ACM curves and MCM modules on the smooth
quadric threefold in P^4.

The usual entry points:

    from qacm import Ideal, canonical_ring, construct_e0, etype_resolution
"""

__version__ = "0.1.0"

from .errors import EngineError, QacmError, UserInputError
from .groebner import (
    GroebnerBasis,
    Ideal,
    buchberger,
    ideal_intersection,
    ideal_quotient,
    normal_form,
    saturate_irrelevant,
)
from .hilbert import (
    HilbertData,
    HilbertPolynomial,
    acm_curve_check,
    cohomology_table,
    degree_genus,
    global_generation_check,
    hilbert_function,
    hilbert_polynomial,
    mcm_check,
    regularity,
)
from .liaison import ci_link, fingerprint, parity_invariant, same_even_class
from .mcm import (
    DecompositionReport,
    MatrixFactorization,
    construct_e0,
    decompose_acm,
    extract_mf,
    verify_periodicity,
)
from .modules import FreeModule, ModuleElement
from .poly import DEFAULT_FIELD, Polynomial, PrimeField, parse_polynomial
from .resolutions import (
    GradedMap,
    GradedModule,
    Resolution,
    direct_sum,
    etype_resolution,
    minimal_resolution_s,
    minimize,
    pd_s,
    syzygy,
)
from .rings import QuadricRing, canonical_quadric, canonical_ring
from .session import parse_session

__all__ = [
    "DEFAULT_FIELD",
    "DecompositionReport",
    "EngineError",
    "FreeModule",
    "GradedMap",
    "GradedModule",
    "GroebnerBasis",
    "HilbertData",
    "HilbertPolynomial",
    "Ideal",
    "MatrixFactorization",
    "ModuleElement",
    "Polynomial",
    "PrimeField",
    "QacmError",
    "QuadricRing",
    "Resolution",
    "UserInputError",
    "acm_curve_check",
    "buchberger",
    "canonical_quadric",
    "canonical_ring",
    "ci_link",
    "cohomology_table",
    "construct_e0",
    "decompose_acm",
    "degree_genus",
    "direct_sum",
    "etype_resolution",
    "extract_mf",
    "fingerprint",
    "global_generation_check",
    "hilbert_function",
    "hilbert_polynomial",
    "ideal_intersection",
    "ideal_quotient",
    "mcm_check",
    "minimal_resolution_s",
    "minimize",
    "normal_form",
    "parity_invariant",
    "parse_polynomial",
    "parse_session",
    "pd_s",
    "regularity",
    "same_even_class",
    "saturate_irrelevant",
    "syzygy",
    "verify_periodicity",
]
