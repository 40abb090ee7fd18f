"""
Derandomizing a synthetic algorithm
===================================

Interleave random bits with answers, rearrange into blocks, and follow two
martingales: one betting on bad random strings and one predicting answers.
"""
from permrand import Pseudorandom
from permrand.constructions import SyntheticBPP, bad_block_measure, run_pipeline

alg = SyntheticBPP()
for n in (0, 1):
    print("block", n, "bad measure", bad_block_measure(alg, n))

rep = run_pipeline(alg, 3, Pseudorandom(4))
for row in rep.blocks:
    print(row.n, "bad" if row.is_bad else "good", row.H_factor, row.bin_capital)
print("predictor capital", rep.H_capital, "layout ok", rep.layout_matches)
