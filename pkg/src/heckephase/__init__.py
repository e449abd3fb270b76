"""Exact arithmetic for averaging operators on invertible p-adic lattices.

Coset enumeration for the pair (GL_n^+(Q), SL_n(Z)), stratification of
singular p-adic matrices, the averaging operators and their phase polynomial,
determinant-weight partition functions, and cylinder-set measures satisfying
the determinant scaling condition.  Everything numeric is a Fraction, a
polynomial over Fraction, or a float paired with a rigorous error bound.
"""

from .cosets import (
    ReducedMatrix,
    TlRep,
    coset_count,
    divisors,
    enumerate_reduced,
    enumerate_tl_reps,
    hecke_index,
    reduced_count,
    smith_divisors,
)
from .exact import (
    ConsistencyError,
    IntMatrix,
    RatMatrix,
    Rational,
    ZetaPartial,
    det,
    elementary_symmetric,
    inverse,
    matmul,
    riemann_zeta_partial,
    sys_eps,
    valuation,
)
from .hecke import (
    HeckeElement,
    PhasePolynomial,
    PhaseVerdict,
    RecursionChain,
    RecursionStep,
    StratumFunction,
    apply_hecke,
    coefficient_identity_check,
    kms_breakpoints,
    kms_classify,
    phase_polynomial,
    phase_roots,
    recursion_coefficients,
    stationary_stratum_solution,
)
from .measure import (
    CylinderSet,
    ExtremalLabel,
    LocalConstraint,
    LocalMassExpr,
    PolarizationResult,
    SingularSupport,
    extremal_label_beta1_gl2,
    gl_residue_count,
    haar_mass_gl,
    haar_mass_poly,
    image_class_residues,
    local_mass,
    local_mass_by_cosets,
    local_mass_single,
    polarization_check,
    reciprocity_check,
    refinement_check,
    scaling_check,
    singular_mass,
    singular_scaling_check,
    total_mass_series_check,
)
from .padic import (
    SnfWitness,
    Stratum,
    minor_valuations,
    rank1_normalize,
    snf_witnesses,
    stratify,
)
from .ratfunc import Poly, RatFunc
from .zeta import (
    ZetaGlobalResult,
    ZetaValue,
    det_valuation_counts,
    summable,
    zeta_global,
    zeta_local,
    zeta_local_partial,
    zeta_multi,
)

__version__ = "0.1.0"

__all__ = [
    "ConsistencyError",
    "Rational",
    "IntMatrix",
    "RatMatrix",
    "ZetaPartial",
    "valuation",
    "elementary_symmetric",
    "riemann_zeta_partial",
    "sys_eps",
    "det",
    "matmul",
    "inverse",
    "Poly",
    "RatFunc",
    "divisors",
    "ReducedMatrix",
    "TlRep",
    "enumerate_reduced",
    "reduced_count",
    "enumerate_tl_reps",
    "coset_count",
    "smith_divisors",
    "hecke_index",
    "Stratum",
    "SnfWitness",
    "stratify",
    "snf_witnesses",
    "minor_valuations",
    "rank1_normalize",
    "HeckeElement",
    "StratumFunction",
    "apply_hecke",
    "RecursionStep",
    "RecursionChain",
    "recursion_coefficients",
    "PhasePolynomial",
    "phase_polynomial",
    "phase_roots",
    "coefficient_identity_check",
    "stationary_stratum_solution",
    "PhaseVerdict",
    "kms_classify",
    "kms_breakpoints",
    "ZetaValue",
    "det_valuation_counts",
    "zeta_local",
    "zeta_local_partial",
    "zeta_multi",
    "ZetaGlobalResult",
    "zeta_global",
    "summable",
    "LocalConstraint",
    "CylinderSet",
    "LocalMassExpr",
    "SingularSupport",
    "haar_mass_poly",
    "haar_mass_gl",
    "gl_residue_count",
    "local_mass_single",
    "local_mass",
    "local_mass_by_cosets",
    "total_mass_series_check",
    "reciprocity_check",
    "refinement_check",
    "image_class_residues",
    "scaling_check",
    "PolarizationResult",
    "polarization_check",
    "singular_mass",
    "singular_scaling_check",
    "ExtremalLabel",
    "extremal_label_beta1_gl2",
    "__version__",
]
