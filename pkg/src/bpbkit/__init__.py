"""Constructive Bishop-Phelps-Bollobas corrections on l1^n and c0^n."""

from .c0 import bpbp_nu_c0, in_Pi_c0, numerical_radius_c0
from .construct import PairCorrection, bpb_first, bpb_first_modulus, bpb_second, key_lemma_mass
from .errors import (
    BPBError,
    DimensionMismatch,
    DomainError,
    EmptyP,
    HypothesisNotMet,
    InternalInvariant,
    NotInPi,
    NotUnitNorm,
    ParseError,
)
from .operators import (
    OperatorCorrection,
    adjoint,
    apply,
    attains_nr,
    bpbp_nu_l1,
    bpbp_nu_l1_modulus,
    numerical_radius_l1,
    op_norm_l1,
)
from .space import arg_of, in_Pi_l1, in_pi1, l1_norm, pair, set_A, set_N, set_P, sup_norm

__version__ = "0.1.0"
