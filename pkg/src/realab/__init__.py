"""Exact computations with real lattices of real abelian varieties."""

__version__ = "0.1.0"

from .components import ComponentGroup, pi0_via_cohomology, pi0_via_glue, identity_component
from .isogeny import (
    Decision,
    IsogenyWitness,
    NormalForm1D,
    classify_corpus,
    decide_imaginary_isogeny,
    normal_form_1d,
    verify_imaginary_isogeny,
)
from .lattice import (
    DescendedLattice,
    GlueGroup,
    InvalidLattice,
    RealLattice,
    check_real,
    common_refinement,
    embed,
    generators,
    split,
    validate_real,
)
from .polarization import (
    HermitianForm,
    PolarizabilityCertificate,
    PolarizationForm,
    admissible_subspace,
    decide_polarizable,
    descent_compatible,
    dual_lattice,
    h_to_s,
    s_to_h,
    symmetrize,
    verify_polarization,
)
from .textio import LatticeDocument, ParseError, ValidationError, emit, parse

__all__ = [
    "ComponentGroup",
    "Decision",
    "DescendedLattice",
    "GlueGroup",
    "HermitianForm",
    "InvalidLattice",
    "IsogenyWitness",
    "LatticeDocument",
    "NormalForm1D",
    "ParseError",
    "PolarizabilityCertificate",
    "PolarizationForm",
    "RealLattice",
    "ValidationError",
    "admissible_subspace",
    "check_real",
    "classify_corpus",
    "common_refinement",
    "decide_imaginary_isogeny",
    "decide_polarizable",
    "descent_compatible",
    "dual_lattice",
    "embed",
    "emit",
    "generators",
    "h_to_s",
    "identity_component",
    "normal_form_1d",
    "parse",
    "pi0_via_cohomology",
    "pi0_via_glue",
    "s_to_h",
    "split",
    "symmetrize",
    "validate_real",
    "verify_imaginary_isogeny",
    "verify_polarization",
]
