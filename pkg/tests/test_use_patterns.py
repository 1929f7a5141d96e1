"""Branching behavior of the five collaboration recipes.

run_use_pattern is driven with hand-picked strengths so each branch is
forced deterministically; the directional noise is silenced by zeroing the
relevant std fields, leaving pure threshold logic to verify.
"""

import numpy as np
import pytest

from cfx.engine import run_use_pattern
from cfx.scenario import Branch, Scenario, UsePattern

QUIET = dict(
    explanatory_boost_strength=0.0,
    explanatory_boost_std=0.0,
    directional_discrimination_strength=0.0,
    directional_discrimination_std=0.0,
)


def rng():
    return np.random.Generator(np.random.Philox(99))


def scenario(pattern, **overrides):
    return Scenario(use_pattern=pattern, **{**QUIET, **overrides})


def test_up1_always_accepts_ai():
    s = scenario(UsePattern.UP1)
    verdict, branch = run_use_pattern(s, True, 0.9, 0.1, rng())
    assert (verdict, branch) == (True, Branch.AUTO_ACCEPT)
    verdict, branch = run_use_pattern(s, True, 0.1, 0.9, rng())
    assert (verdict, branch) == (False, Branch.AUTO_ACCEPT)


def test_up2_confident_ai_wins_else_dm_alone():
    s = scenario(UsePattern.UP2, ai_pos_threshold=0.7, ai_neg_threshold=0.3)
    verdict, branch = run_use_pattern(s, True, 0.8, 0.1, rng())
    assert (verdict, branch) == (True, Branch.AUTO_ACCEPT)
    verdict, branch = run_use_pattern(s, True, 0.2, 0.9, rng())
    assert (verdict, branch) == (False, Branch.AUTO_ACCEPT)
    # uncertain middle falls back to the unaided verdict
    verdict, branch = run_use_pattern(s, True, 0.5, 0.9, rng())
    assert (verdict, branch) == (True, Branch.DM_SOLO)
    verdict, branch = run_use_pattern(s, True, 0.5, 0.2, rng())
    assert (verdict, branch) == (False, Branch.DM_SOLO)


def test_up2_disabled_negative_band_never_auto_rejects():
    s = scenario(UsePattern.UP2, ai_pos_threshold=0.7, ai_neg_threshold=-1.0)
    verdict, branch = run_use_pattern(s, True, 0.05, 0.9, rng())
    assert (verdict, branch) == (True, Branch.DM_SOLO)


def test_up3_anchored_combination():
    s = scenario(
        UsePattern.UP3,
        ai_pos_threshold=0.9, ai_neg_threshold=-1.0, anchor_weight=0.65,
    )
    # 0.65*0.6 + 0.35*0.2 = 0.46 -> negative verdict on the review branch
    verdict, branch = run_use_pattern(s, True, 0.6, 0.2, rng())
    assert (verdict, branch) == (False, Branch.DM_REVIEW_AI)
    # 0.65*0.6 + 0.35*0.45 = 0.5475 -> positive
    verdict, branch = run_use_pattern(s, True, 0.6, 0.45, rng())
    assert (verdict, branch) == (True, Branch.DM_REVIEW_AI)


def test_up3_boost_shifts_toward_truth():
    s = scenario(
        UsePattern.UP3,
        ai_pos_threshold=0.9, ai_neg_threshold=-1.0, anchor_weight=0.65,
        explanatory_boost_strength=0.1, explanatory_boost_std=0.0,
    )
    # combination 0.46 + 0.1 toward gt=T crosses the verdict line
    verdict, branch = run_use_pattern(s, True, 0.6, 0.2, rng())
    assert (verdict, branch) == (True, Branch.DM_REVIEW_AI)
    # same strengths, gt=F: shift is away from "T", verdict stays negative
    verdict, branch = run_use_pattern(s, False, 0.6, 0.2, rng())
    assert (verdict, branch) == (False, Branch.DM_REVIEW_AI)


def test_up4_even_combination_with_discrimination():
    s = scenario(UsePattern.UP4, ai_pos_threshold=0.9, ai_neg_threshold=-1.0)
    # 0.5*0.6 + 0.5*0.35 = 0.475 -> negative without discrimination
    verdict, branch = run_use_pattern(s, True, 0.6, 0.35, rng())
    assert (verdict, branch) == (False, Branch.DM_REVIEW_AI)
    s2 = scenario(
        UsePattern.UP4,
        ai_pos_threshold=0.9, ai_neg_threshold=-1.0,
        directional_discrimination_strength=0.05, directional_discrimination_std=0.0,
    )
    verdict, branch = run_use_pattern(s2, True, 0.6, 0.35, rng())
    assert (verdict, branch) == (True, Branch.DM_REVIEW_AI)


def test_up4_confident_ai_still_auto_accepts():
    s = scenario(UsePattern.UP4, ai_pos_threshold=0.7, ai_neg_threshold=0.3)
    verdict, branch = run_use_pattern(s, True, 0.95, 0.05, rng())
    assert (verdict, branch) == (True, Branch.AUTO_ACCEPT)


def test_up5_dm_confident_never_consults_ai():
    s = scenario(UsePattern.UP5, dm_pos_threshold=0.7, dm_neg_threshold=0.3)
    verdict, branch = run_use_pattern(s, True, 0.05, 0.8, rng())
    assert (verdict, branch) == (True, Branch.DM_SOLO)
    verdict, branch = run_use_pattern(s, True, 0.95, 0.2, rng())
    assert (verdict, branch) == (False, Branch.DM_SOLO)


def test_up5_uncertain_dm_combines_with_ai():
    s = scenario(UsePattern.UP5, dm_pos_threshold=0.7, dm_neg_threshold=0.3)
    # 0.5*0.8 + 0.5*0.4 = 0.6 -> positive on the consultation branch
    verdict, branch = run_use_pattern(s, True, 0.8, 0.4, rng())
    assert (verdict, branch) == (True, Branch.DM_SOLO_THEN_AI)
    # 0.5*0.1 + 0.5*0.4 = 0.25 -> negative
    verdict, branch = run_use_pattern(s, True, 0.1, 0.4, rng())
    assert (verdict, branch) == (False, Branch.DM_SOLO_THEN_AI)


def test_up5_ignores_ai_thresholds():
    s = scenario(
        UsePattern.UP5,
        ai_pos_threshold=0.0, ai_neg_threshold=0.0,
        dm_pos_threshold=0.7, dm_neg_threshold=0.3,
    )
    _, branch = run_use_pattern(s, True, 0.99, 0.5, rng())
    assert branch is Branch.DM_SOLO_THEN_AI


@pytest.mark.parametrize("pattern", list(UsePattern))
def test_exactly_one_draw_consumed(pattern):
    s = scenario(pattern)
    a = rng()
    b = rng()
    run_use_pattern(s, True, 0.9, 0.9, a)
    b.standard_normal()
    # both generators must now be at the same point in the stream
    assert a.standard_normal() == b.standard_normal()
