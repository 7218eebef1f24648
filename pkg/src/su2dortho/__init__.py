"""Exact construction and verification of the two su(2) families of
d-orthogonal polynomials, with numerical contraction studies."""

from .exactnum import (
    AffineForm,
    Rational,
    UPoly,
    check_s_separable,
    factorial,
    hyp_terminating,
    pochhammer,
)
from .su2rep import (
    RationalMatrix,
    build_rep,
    coherent_vector,
    exp_nilpotent,
    matrix_Q,
    matrix_Q_inverse,
    matrix_S,
    matrix_S_inverse,
)
from .afamily import FamilyParamsA
from .bfamily import FamilyParamsB

__version__ = "0.1.0"
