"""Smoke tests for the lpmx extension: construct the main objects and
exercise one happy path through each.
"""

import math

import numpy as np
import pytest

import lpmx


def test_log_mse_matches_numpy():
    rng = np.random.default_rng(0)
    a = rng.random(784)
    b = rng.random(784)
    want = math.log(np.mean((a - b) ** 2))
    assert lpmx.log_mse(a, b) == pytest.approx(want, rel=1e-12)
    assert lpmx.log_mse(a, a) == pytest.approx(math.log(1e-12))


def test_combined_reward():
    assert lpmx.combined_reward(1.0, -2.0, 0.5) == 0.0


def test_paired_env_branches():
    bank = lpmx.synthetic_digit_bank(7)
    env = lpmx.PairedTransitionEnv(bank)
    first = env.reset(3)
    assert first.latent_state_id == 0
    det = env.step(lpmx.PairedTransitionEnv.VISIT_DETERMINISTIC)
    assert np.array_equal(det.observation, env.anchor(0))
    stoch = env.step(lpmx.PairedTransitionEnv.VISIT_STOCHASTIC)
    assert stoch.latent_state_id == 1
    assert 0.0 <= stoch.observation.min() <= stoch.observation.max() <= 1.0


def test_maze_env_latent_ids_ignore_noise():
    cfg = lpmx.MazeConfig()
    cfg.noise_mode = lpmx.NoiseMode.ACTION_NOISE
    noisy = lpmx.GridMazeEnv(cfg)
    clean = lpmx.GridMazeEnv(lpmx.MazeConfig())
    a = noisy.reset(5)
    b = clean.reset(5)
    assert a.latent_state_id == b.latent_state_id
    for action in [0, 1, 0, 3, 2, 0, 3, 3, 1, 0]:
        a = noisy.step(action)
        b = clean.step(action)
        assert a.latent_state_id == b.latent_state_id
        assert a.latent_state_id < noisy.state_count


def test_lpm_explorer_warmup_and_update():
    cfg = lpmx.LpmConfig()
    cfg.queue_size = 4
    cfg.dynamics_hidden = [8]
    cfg.error_hidden = [8]
    explorer = lpmx.make_explorer("lpm", obs_dim=3, action_count=2,
                                  lpm_config=cfg, seed=1)
    assert explorer.name == "lpm"
    rng = np.random.default_rng(1)
    rewards = []
    for _ in range(10):
        o, o2 = rng.random(3), rng.random(3)
        rewards.append(explorer.observe(o, 0, o2))
        explorer.update()
    assert rewards[:4] == [0.0] * 4            # warm-up gate
    assert any(r != 0.0 for r in rewards[4:])  # live afterwards
    assert all(math.isfinite(r) for r in rewards)


def test_baseline_explorers_exist():
    for kind in ["pe", "rnd", "ensemble", "ama", "random"]:
        explorer = lpmx.make_explorer(kind, obs_dim=3, action_count=2, seed=2)
        o = np.full(3, 0.5)
        r = explorer.observe(o, 1, o)
        explorer.update()
        assert math.isfinite(r)
        assert explorer.name == kind


def test_oracle_identity_and_bound():
    grid = lpmx.ParameterGrid()
    grid.prior = [0.5, 0.5]
    grid.mse = [1.0, math.e]
    grid.c = 1.0
    post = lpmx.posterior(grid)
    assert sum(post) == pytest.approx(1.0, abs=1e-12)
    kl, definition = lpmx.information_gain(grid)
    assert kl == pytest.approx(definition, abs=1e-9)
    assert kl == pytest.approx(0.1110, abs=1e-3)

    report = lpmx.intrinsic_rewards(grid, lpmx.ThetaPolicy.EXACT_MLE)
    assert report.r_exp == pytest.approx(0.5)
    assert grid.c * report.r_exp >= report.ig - 1e-9


def test_check_theorems_passes():
    summary = lpmx.check_theorems(200, seed=11)
    assert summary["all_pass"]
    assert summary["t2_counterexamples"] > 0


def test_qtable_update():
    q = lpmx.QTable(4, 2, alpha=0.5, gamma=0.0)
    q.update(0, 1, 2.0, 3, False)
    assert q.value(0, 1) == pytest.approx(1.0)
    assert q.greedy_action(0) == 1
