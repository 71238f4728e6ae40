"""Smoke tests for the opiniondyn extension module."""

import math

import pytest

import opiniondyn as od


def test_bias_eval_and_certificates():
    conf = od.BiasSpec.conf(0.5)
    assert 0.0 < conf(0.5) < 0.5
    assert conf.certified_region == od.Region.RECEPTIVE
    assert od.BiasSpec.backf()(0.5) == pytest.approx(-0.125)
    assert not od.BiasSpec.fan().continuous
    with pytest.raises(ValueError):
        od.BiasSpec.conf(-1.0)
    with pytest.raises(Exception):
        conf(1.5)  # outside the domain


def test_region_membership_overlaps_at_origin():
    origin = od.region_membership(0.0, 0.0)
    assert origin.malleable and origin.receptive and origin.backfire and origin.insular
    assert od.region_membership(0.5, 0.25).receptive


def test_classify():
    report = od.classify_bias(od.BiasSpec.ins())
    assert report.certified
    assert report.coverage_of(od.Region.INSULAR) == od.Coverage.ALL
    assert report.coverage_of(od.Region.MALLEABLE) == od.Coverage.SOME


def test_graph_and_simulation():
    conf = od.BiasSpec.conf()
    # self-loops keep the pair from just swapping opinions back and forth
    g = od.InfluenceGraph(
        2,
        [
            od.Edge(0, 1, 1.0, conf),
            od.Edge(1, 0, 1.0, conf),
            od.Edge(0, 0, 1.0, conf),
            od.Edge(1, 1, 1.0, conf),
        ],
    )
    assert g.agent_count == 2
    assert g.influencers(0) == [0, 1]
    assert g.proportional_influence(1, 0) == 0.5
    assert od.is_strongly_connected(g)

    traj = od.simulate(g, [0.0, 1.0], 500)
    assert traj.steps == 500
    assert traj.gap_series[0] == 1.0
    report = od.detect_convergence(traj)
    assert report.verdict == od.Verdict.CONSENSUS
    assert 0.0 <= report.value <= 1.0

    with pytest.raises(ValueError):
        od.InfluenceGraph(2, [od.Edge(0, 1, 1.5, conf)])
    with pytest.raises(ValueError):
        od.simulate(g, [0.5, 1.5], 10)


def test_prediction():
    scenario = od.builtin_scenario("vaccine-fig3g")
    g = od.build_graph(scenario)
    report = od.predict_consensus(g)
    assert report.kind == od.PredictionKind.GUARANTEED_CONSENSUS

    fan = od.predict_consensus(od.build_graph(od.builtin_scenario("vaccine-fig3e")))
    assert fan.kind == od.PredictionKind.NO_GUARANTEE
    assert any("fan" in r for r in fan.reasons)


def test_scenarios_and_csv():
    names = od.builtin_scenario_names()
    assert len(names) == 12
    scenario = od.builtin_scenario("two-agent-fan")
    text = od.scenario_to_json(scenario)
    reparsed = od.parse_scenario(text)
    assert reparsed.agents == scenario.agents
    assert reparsed.initial_beliefs == scenario.initial_beliefs

    traj = od.simulate(od.build_graph(scenario), scenario.initial_beliefs, 4)
    csv = od.trajectory_to_csv(traj)
    lines = csv.strip().splitlines()
    assert lines[0] == "t,agent_1,agent_2"
    assert lines[1] == "0,0,1"
    assert lines[2] == "1,1,0"

    with pytest.raises(ValueError):
        od.parse_scenario("{}")
    with pytest.raises(ValueError):
        od.builtin_scenario("nope")


def test_update_matches_manual_sum():
    degroot = od.BiasSpec.degroot()
    edges = [
        od.Edge(0, 2, 0.4, degroot),
        od.Edge(1, 2, 0.6, degroot),
        od.Edge(2, 2, 1.0, degroot),
    ]
    g = od.InfluenceGraph(3, edges)
    before = [1.0, 0.5, 0.0]
    after = od.update(g, before)
    expected = 0.0 + 0.2 * (1.0 - 0.0) + 0.3 * (0.5 - 0.0) + 0.5 * 0.0
    assert after[2] == pytest.approx(expected, abs=1e-15)
    assert after[0] == 1.0 and after[1] == 0.5
    raw = od.update_unclamped(g, before)
    assert raw == after
    assert math.isclose(od.clamp01(1.7), 1.0)
