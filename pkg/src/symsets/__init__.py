"""Singular-restriction sets of symplectic forms over finite fields.

Computes S^n_k(Omega), decides condition S for sets of planes, and rebuilds a
symplectic form from any set satisfying it (k = 2 or n-2).
"""

from .errors import (
    ConditionSError,
    FormError,
    InputError,
    InternalVerificationError,
    NotACollineationError,
    ReconstructionError,
)
from .forms import BilinearForm, SemilinearMap, orthogonal_complement, standard_form
from .gfcore import FieldSpec, Matrix, field_of_order, make_field
from .reconstruct import reconstruct_form, verify_theorem
from .singsets import PlaneSet, WitnessF, check_condition_s, equal_sets, singular_set
from .subspace import Subspace, enumerate_grassmannian, gaussian_binomial, span

__version__ = "0.1.0"

__all__ = [
    "BilinearForm",
    "ConditionSError",
    "FieldSpec",
    "FormError",
    "InputError",
    "InternalVerificationError",
    "Matrix",
    "NotACollineationError",
    "PlaneSet",
    "ReconstructionError",
    "SemilinearMap",
    "Subspace",
    "WitnessF",
    "check_condition_s",
    "enumerate_grassmannian",
    "equal_sets",
    "field_of_order",
    "gaussian_binomial",
    "make_field",
    "orthogonal_complement",
    "reconstruct_form",
    "singular_set",
    "span",
    "standard_form",
    "verify_theorem",
]
