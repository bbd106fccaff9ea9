import json
import math

import pytest

import stat_testbed as st


def test_presets_and_derived_quantities():
    names = st.preset_names()
    assert len(names) == 9
    assert names[0] == "3A-6T-5x3"
    assert st.is_preset("5A-25T-25x15")
    assert not st.is_preset("nope")

    cfg = st.preset_config("3A-6T-5x3")
    assert (cfg.n, cfg.m, cfg.width, cfg.height) == (3, 6, 5, 3)
    derived = st.derived_quantities(cfg)
    assert derived.choices_per_agent == 6
    assert derived.joint_actions == "216"
    assert math.isclose(derived.task_density, 0.4)

    with pytest.raises(st.StaError):
        st.preset_config("8A-8T-8x8")


def test_make_config_validates():
    cfg = st.make_config(2, 4, 6, 4)
    assert cfg.exec_time == 3
    assert cfg.max_horizon == st.default_max_horizon(4, 6, 4, 1.0)
    with pytest.raises(st.StaError):
        st.make_config(0, 4, 6, 4)


def test_world_steps_and_masks():
    cfg = st.preset_config("3A-6T-5x3")
    world = st.World(cfg, seed=5)
    state = world.state
    assert state.t == 0
    assert [m for m in state.modes] == [st.AgentMode.SELECT_TASK] * 3

    masks = world.masks()
    assert len(masks) == 3
    assert list(masks[0]) == [0, 0, 0, 1, 1, 1, 1, 1, 1]

    outcome = world.step([st.select_action(j) for j in range(3)])
    assert outcome.team_reward == -3.0
    assert not outcome.terminal
    assert world.state.t == 1

    with pytest.raises(st.StaError):
        world.step([st.ACTION_EXECUTE, st.ACTION_MOVE, st.ACTION_MOVE])

    obs = world.observation()
    assert len(obs) == st.observation_size(3, 6) == 48


def test_episode_and_metrics():
    cfg = st.preset_config("3A-6T-5x3")
    log = st.run_episode(cfg, "coordinated_greedy", 5)
    assert log.final.reason == st.TerminalReason.ALL_COMPLETED
    rec = st.episode_metrics(log, cfg)
    assert rec.total_conflicts == 0
    assert rec.forced_idle_rate == 0.0
    assert rec.horizon == log.final.t
    assert len(st.metric_names()) == 12
    assert st.metric_value(rec, "throughput") == rec.throughput

    again = st.run_episode(cfg, "coordinated_greedy", 5)
    assert st.episode_log_to_jsonl(again) == st.episode_log_to_jsonl(log)

    parsed = st.episode_log_from_jsonl(st.episode_log_to_jsonl(log))
    assert parsed.episode_return == log.episode_return
    assert len(parsed.steps) == len(log.steps)


def test_evaluate_and_stats():
    cfg = st.preset_config("3A-6T-5x3")
    report = st.evaluate(cfg, "random_valid", [1, 2, 3], 2)
    assert report.episodes_per_seed == 2
    agg = report.metrics["episode_return"]
    assert len(agg.per_seed) == 3
    direct = st.ci95(agg.per_seed)
    assert direct.mean == agg.mean
    assert direct.halfwidth == agg.ci95_halfwidth

    res = st.welch_t([1.0, 2.0, 3.0, 4.0], [11.0, 12.0, 13.0, 14.0])
    assert res.direction == 1
    assert res.significant
    assert res.p < 0.05

    with pytest.raises(st.StaError):
        st.ci95([])


def test_rewards_and_rng():
    params = st.RewardParams()
    assert st.base_reward(0, params) == 30.0
    assert st.base_reward(10, params) == 29.5
    assert abs(st.completion_reward(25, 3, params) - 37.7) <= 1e-12
    assert st.step_penalty(params) == -1.0

    assert st.mix64(0) != 0
    assert st.derive_seed(1, st.POLICY_STREAM) != st.derive_seed(
        1, st.PLACEMENT_STREAM
    )
    assert st.episode_seed(9, 0, 0) == st.episode_seed(9, 0, 0)


def test_session_protocol_roundtrip():
    session = st.Session()
    (info_line,) = session.handle_line(json.dumps({"kind": "info"}))
    info = json.loads(info_line)
    assert info["kind"] == "info"
    assert info["version"] == st.PROTOCOL_VERSION

    (state_line,) = session.handle_line(
        json.dumps({"kind": "reset", "preset": "3A-6T-5x3", "seed": 42})
    )
    state = json.loads(state_line)
    assert state["kind"] == "state"
    assert len(state["masks"]) == 3
    assert len(state["observation"]) == 48

    outcome_line, state_line = session.handle_line(
        json.dumps({"kind": "step", "actions": [3, 4, 5]})
    )
    assert json.loads(outcome_line)["team_reward"] == -3.0
    assert json.loads(state_line)["t"] == 1

    (err_line,) = session.handle_line("garbage")
    assert json.loads(err_line)["code"] == "bad-request"


def test_config_text_roundtrip():
    cfg = st.make_config(4, 7, 9, 5, 2, 1.25)
    parsed = st.config_from_text(st.config_to_text(cfg))
    assert parsed.n == 4
    assert parsed.m == 7
    assert parsed.speed == 1.25
    assert parsed.max_horizon == cfg.max_horizon
