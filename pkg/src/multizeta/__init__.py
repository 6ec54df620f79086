"""Exact multiple Dirichlet L-values at equal integer arguments."""

from .central import CentralRequest, central_closed_form_N1, central_value
from .characters import (
    Character,
    characters_mod,
    gauss_sum,
    kronecker_character,
    parse_character,
    principal_character,
)
from .combinatorics import Partition, compositions, partitions_of
from .exact import Cyclotomic, PiMultiple, PowerSeries, root_of_unity, sqrt_int
from .formula_one import (
    EvalRequest,
    convert_bullet_star,
    eval_alternating_even,
    eval_formula_I,
    eval_higher_rank,
    eval_principal,
    eval_real_primitive,
)
from .formula_two import A_coeff, A_sequence, C_constant, eval_alternating_genfun, eval_formula_II
from .oracle import OracleConfig, numeric_higher_rank, numeric_multiple_L, numeric_qL, verify_qL_identity
from .sequences import bernoulli, euler_number, gen_bernoulli, lucas

__version__ = "0.1.0"

__all__ = [
    "CentralRequest", "central_value", "central_closed_form_N1",
    "Character", "characters_mod", "gauss_sum", "kronecker_character", "parse_character",
    "principal_character",
    "Partition", "compositions", "partitions_of",
    "Cyclotomic", "PiMultiple", "PowerSeries", "root_of_unity", "sqrt_int",
    "EvalRequest", "convert_bullet_star", "eval_alternating_even", "eval_formula_I",
    "eval_higher_rank", "eval_principal", "eval_real_primitive",
    "A_coeff", "A_sequence", "C_constant", "eval_alternating_genfun", "eval_formula_II",
    "OracleConfig", "numeric_higher_rank", "numeric_multiple_L", "numeric_qL", "verify_qL_identity",
    "bernoulli", "euler_number", "gen_bernoulli", "lucas",
]
