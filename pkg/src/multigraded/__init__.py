"""Exact symbolic calculus on multigraded commutative algebras."""
from .grading import BL, DELIGNE, MultiDegree, SignConvention, SlotSignature, koszul_sign
from .algebra import GradedContext, Polynomial, degree_of, substitute
from .calculus import (
    Derivation,
    apply,
    commutator,
    interior_product,
    lie_derivative,
    shift_parity,
    shift_tangent,
    squares_to_zero,
)
from .symplectic import ConstantSymplecticForm, canonical_cotangent, hamiltonian_vf, master_equation, poisson_bracket
from .models import PoissonBivector, SuperLieAlgebra, ce_differential, jacobiator_oracle, psm_lift
from .aksz import BerezinianMeasure, berezin, measure_admissible, odd_source_lift, susy_expand
from .modelfile import ModelFile, load_model, parse_model, print_model
from .text import ParseError, format_polynomial

__version__ = "0.1.0"

__all__ = [
    "BL",
    "DELIGNE",
    "MultiDegree",
    "SignConvention",
    "SlotSignature",
    "koszul_sign",
    "GradedContext",
    "Polynomial",
    "degree_of",
    "substitute",
    "Derivation",
    "apply",
    "commutator",
    "interior_product",
    "lie_derivative",
    "shift_parity",
    "shift_tangent",
    "squares_to_zero",
    "ConstantSymplecticForm",
    "canonical_cotangent",
    "hamiltonian_vf",
    "master_equation",
    "poisson_bracket",
    "PoissonBivector",
    "SuperLieAlgebra",
    "ce_differential",
    "jacobiator_oracle",
    "psm_lift",
    "BerezinianMeasure",
    "berezin",
    "measure_admissible",
    "odd_source_lift",
    "susy_expand",
    "ModelFile",
    "load_model",
    "parse_model",
    "print_model",
    "ParseError",
    "format_polynomial",
]
