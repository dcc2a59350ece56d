"""Burau and L2-Burau matrices of braids, Fuglede-Kadison determinants of
group-ring operators, and L2-Alexander torsion of braid closures."""

from .braid import BraidWord, act_on_g, act_on_x, longpaton, parse_braid, permutation
from .burau import Laurent, LaurentMatrix, burau, burau_by_generators, reduced_burau, theta
from .fkdet import DetEstimate, adjoint, fk_det, fk_det_series, fk_det_truncation, gram, trace
from .freegroup import (
    IDENTITY,
    GroupRingElt,
    Word,
    format_word,
    fox_derivative,
    fox_gradient,
    parse_word,
    reduce,
    rewrite_alphabet,
)
from .garside import equal_braids, garside_nf
from .groups import (
    BraidGroup,
    FreeAbelianGroup,
    FreeGroup,
    GammaMap,
    TorusKnotGroup,
    abelianization_gamma,
    ball,
    exponent_sum_gamma,
    identity_gamma,
    load_group_config,
    verify_gamma,
)
from .operators import (
    OperatorMatrix,
    compose,
    l2_burau,
    l2_burau_g,
    precompose_gamma,
    reduced_l2_burau,
)
from .torsion import (
    ClosurePresentation,
    TorsionReport,
    closure_presentation,
    fox_matrix,
    fox_torsion_from_presentation,
    torsion_determinant,
)

__version__ = "0.1.0"
