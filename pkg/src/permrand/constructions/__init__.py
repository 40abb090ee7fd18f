from .bpp import (
    DEFAULT_P, BinMartingale, BlockLayout, BlockRearrangement, Interleaved,
    PipelineReport, PredictorMartingale, SyntheticBPP, bad_block_measure, bin_martingale,
    interleave_Z, predictor_martingale, rearrangement_inverse, rearrangement_permutation,
    run_pipeline, y_is_bad,
)
from .polynomial import PolynomialNat
from .prop_s import (
    DelayPoints, DishonestPermutation, LeftmostPath, delay_points, delayed_sum,
    dishonest_inverse, dishonest_permutation, leftmost_path, p_k, pair, unpair,
)
