"""Deviation bounds for matrix martingales and their specializations."""
from .baselines import BASELINES, baseline, intrinsic_freedman_threshold
from .specializations import (cor_covariance, cor_empirical, cor_iid, cor_scalar, empirical_z,
                          mcdiarmid_bound, mcdiarmid_norm_sum)
from .intrinsic import thm2_bounded, thm2_tail, thm3_mixed, thm3_unbounded
from .martingale import (heavy_tail_extra, log_block, regime_classify, tail_prob_bound,
                         tail_threshold_tau, thm1_bennett, thm1_bernstein, thm1_mixed,
                         thm1_monotone)
from .params import BaselineParams, BoundResult, Regime, TailParams
from .registry import THEOREM_TAGS, evaluate

__all__ = [
    "BASELINES", "THEOREM_TAGS", "evaluate", "BaselineParams", "BoundResult", "Regime", "TailParams", "baseline",
    "cor_covariance", "cor_empirical", "cor_iid", "cor_scalar", "empirical_z", "heavy_tail_extra",
    "intrinsic_freedman_threshold", "log_block", "mcdiarmid_bound", "mcdiarmid_norm_sum",
    "regime_classify", "tail_prob_bound", "tail_threshold_tau", "thm1_bennett", "thm1_bernstein",
    "thm1_mixed", "thm1_monotone", "thm2_bounded", "thm2_tail", "thm3_mixed", "thm3_unbounded",
]
