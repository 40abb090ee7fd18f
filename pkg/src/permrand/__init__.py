"""Exact martingales, scanning functions and permutation constructions.

Everything is computed with exact rationals and checked by brute force on
small instances.
"""
from .bits import (
    ExplicitPrefix, FunctionOracle, Periodic, Permuted, Pseudorandom, SequenceOracle,
    extensions, is_prefix, prefixes, strings, strings_upto,
)
from .closure import (
    AveragingMartingale, BettingStrategy, average_report, averaging_value,
    fairness_lemma_check, success_transfer_demo, t_independence_check,
)
from .constructions import (
    BinMartingale, BlockLayout, BlockRearrangement, DishonestPermutation, Interleaved,
    LeftmostPath, PolynomialNat, PredictorMartingale, SyntheticBPP, bad_block_measure,
    bin_martingale, delay_points, delayed_sum, dishonest_inverse, dishonest_permutation,
    interleave_Z, leftmost_path, predictor_martingale, rearrangement_inverse,
    rearrangement_permutation, run_pipeline,
)
from .errors import BudgetExceeded, DescriptorError, OutOfDepth, PermrandError, PreconditionError
from .martingale import (
    Constant, Delayed, FavorBit, Martingale, Savings, StakeTable, WeightedSum, capital_trace,
    delayed, does_not_bet_at, fairness_check, savings_transform, trace_csv, weighted_sum,
)
from .rational import Fraction, format_q, parse_q
from .scan import (
    FillingBound, FromPermutation, Identity, PairSwap, Permutation, RuleScanner,
    ScanningFunction, TablePermutation, TableScanner, check_bijection, check_non_repetition,
    compose_with_permutation, compose_with_scanner, consistent, filling_bound, filling_check,
    permutation_to_scanner, run_queries,
)

__version__ = "0.1.0"
