from __future__ import annotations

import json
import random

import pytest

from splboard.conceptmap import Action, CandidateConcept, apply_curation
from splboard.featuremodel import parse_feature_model
from splboard.journey import (
    Journey,
    JourneyError,
    Step,
    WeightedGraph,
    annotate_requirements,
    build_graph,
    explain_step,
    recommend_journey,
    render_journey_json,
)
from splboard.topicmodel import SimilarityMatrix

from helpers import all_spanning_trees, max_tree_weight


def _matrix(labels: list[str], pairs: dict[tuple[str, str], float]) -> SimilarityMatrix:
    n = len(labels)
    values = [[1.0 if i == j else 0.0 for j in range(n)] for i in range(n)]
    for (a, b), w in pairs.items():
        i, j = labels.index(a), labels.index(b)
        values[i][j] = values[j][i] = w
    return SimilarityMatrix(tuple(labels), values)


def _graph(nodes: list[str], weights: dict[tuple[str, str], float]) -> WeightedGraph:
    edges = {
        ((a, b) if a < b else (b, a)): w for (a, b), w in weights.items()
    }
    return WeightedGraph(tuple(nodes), edges)


def test_build_graph_threshold_zero_is_complete():
    matrix = _matrix(["a", "b", "c"], {("a", "b"): 0.5, ("a", "c"): 0.4, ("b", "c"): 0.3})
    graph = build_graph(matrix, 0.0)
    assert len(graph.edges) == 3


def test_build_graph_threshold_one_rejected():
    matrix = _matrix(["a", "b"], {("a", "b"): 0.5})
    with pytest.raises(JourneyError):
        build_graph(matrix, 1.0)


def test_build_graph_filters_by_threshold():
    matrix = _matrix(["a", "b", "c"], {("a", "b"): 0.9, ("a", "c"): 0.2, ("b", "c"): 0.8})
    graph = build_graph(matrix, 0.5)
    assert len(graph.edges) == 2
    assert graph.weight("a", "c") is None


def test_journey_prefers_chain_over_star():
    graph = _graph(
        ["B", "F1", "F2"],
        {("B", "F1"): 0.9, ("B", "F2"): 0.2, ("F1", "F2"): 0.8},
    )
    journey = recommend_journey(graph, "B")
    assert [(s.feature, s.anchor, s.weight) for s in journey.steps] == [
        ("F1", "B", 0.9),
        ("F2", "F1", 0.8),
    ]


def test_single_feature_journey():
    graph = _graph(["B", "F"], {("B", "F"): 0.4})
    journey = recommend_journey(graph, "B")
    assert journey.steps == (Step("F", "B", 0.4),)


def test_tied_weights_take_smaller_feature_first():
    graph = _graph(["B", "X", "A"], {("B", "X"): 0.5, ("B", "A"): 0.5})
    journey = recommend_journey(graph, "B")
    assert [s.feature for s in journey.steps] == ["A", "X"]


def test_tied_weights_take_smaller_anchor():
    graph = _graph(
        ["B", "A", "Z", "F"],
        {("B", "A"): 0.9, ("B", "Z"): 0.9, ("A", "F"): 0.5, ("Z", "F"): 0.5},
    )
    journey = recommend_journey(graph, "B")
    assert journey.steps[2] == Step("F", "A", 0.5)


def test_unreachable_nodes_reported():
    graph = _graph(["B", "F1", "F2"], {("B", "F1"): 0.9})
    journey = recommend_journey(graph, "B")
    assert [s.feature for s in journey.steps] == ["F1"]
    assert journey.unreachable == ("F2",)


def test_source_must_exist_and_graph_nonempty():
    graph = _graph(["A"], {})
    with pytest.raises(JourneyError):
        recommend_journey(graph, "missing")
    with pytest.raises(JourneyError):
        recommend_journey(WeightedGraph((), {}), "A")


def test_journey_is_deterministic():
    rng = random.Random(5)
    nodes = ["B", "F1", "F2", "F3", "F4"]
    weights = {}
    for i, a in enumerate(nodes):
        for b in nodes[i + 1 :]:
            weights[(a, b)] = round(rng.random(), 3)
    graph = _graph(nodes, weights)
    assert recommend_journey(graph, "B") == recommend_journey(graph, "B")


def test_greedy_witness_on_random_graphs():
    """At every step the chosen edge is at least as heavy as any frontier edge."""
    rng = random.Random(17)
    for _ in range(20):
        nodes = [f"N{i}" for i in range(rng.randint(3, 7))]
        weights = {}
        for i, a in enumerate(nodes):
            for b in nodes[i + 1 :]:
                weights[(a, b)] = rng.random()
        graph = _graph(nodes, weights)
        journey = recommend_journey(graph, nodes[0])
        visited = {nodes[0]}
        for step in journey.steps:
            best_frontier = max(
                graph.weight(u, v)
                for u in visited
                for v in graph.nodes
                if v not in visited and graph.weight(u, v) is not None
            )
            assert step.weight == best_frontier
            visited.add(step.feature)


def test_journey_weight_matches_spanning_tree_enumeration():
    rng = random.Random(99)
    trees_by_size = {n: all_spanning_trees(n) for n in (5, 6)}
    for _ in range(25):
        n = rng.choice([5, 6])
        nodes = [f"N{i}" for i in range(n)]
        weights = {}
        indexed = {}
        for i in range(n):
            for j in range(i + 1, n):
                w = rng.random()
                indexed[(i, j)] = w
                a, b = nodes[i], nodes[j]
                weights[(a, b)] = w
        graph = _graph(nodes, weights)
        journey = recommend_journey(graph, nodes[0])
        total = sum(step.weight for step in journey.steps)
        best = max_tree_weight(trees_by_size[n], indexed)
        assert total == pytest.approx(best, abs=1e-9)


def test_monotone_relabeling_keeps_step_order():
    rng = random.Random(31)
    nodes = [f"N{i}" for i in range(6)]
    weights = {}
    for i, a in enumerate(nodes):
        for b in nodes[i + 1 :]:
            weights[(a, b)] = rng.random()
    base = recommend_journey(_graph(nodes, weights), nodes[0])
    squared = recommend_journey(
        _graph(nodes, {k: w * w for k, w in weights.items()}), nodes[0]
    )
    assert [s.feature for s in base.steps] == [s.feature for s in squared.steps]
    assert [s.anchor for s in base.steps] == [s.anchor for s in squared.steps]


def test_requires_warnings():
    model = parse_feature_model(
        "root R\n  optional A\n  optional B\n  optional C\n"
        "constraints\n  A requires B\n  C requires A\n"
    )
    journey = Journey(
        "background",
        (Step("A", "background", 0.9), Step("B", "A", 0.8), Step("C", "B", 0.7)),
    )
    annotated = annotate_requirements(journey, model)
    assert annotated.steps[0].warnings == ("requires B, which is visited later",)
    assert annotated.steps[1].warnings == ()
    assert annotated.steps[2].warnings == ()


def test_requires_warning_for_unreachable_dependency():
    model = parse_feature_model(
        "root R\n  optional A\n  optional B\nconstraints\n  A requires B\n"
    )
    journey = Journey("background", (Step("A", "background", 0.9),), unreachable=("B",))
    annotated = annotate_requirements(journey, model)
    assert annotated.steps[0].warnings == ("requires B, which is not part of this journey",)


def test_explain_step():
    candidates = {"F1": [CandidateConcept("F1", "route", 1.0, 1.0, 1.0)]}
    cmap = apply_curation(candidates, [Action(op="accept", feature="F1", term="route")])
    journey = Journey("B", (Step("F1", "B", 0.9),))
    record = explain_step(journey, "F1", cmap)
    assert record.anchor == "B"
    assert record.weight == 0.9
    assert record.concepts == ("route",)


def test_explain_step_empty_concepts():
    journey = Journey("B", (Step("F1", "B", 0.9),))
    record = explain_step(journey, "F1", apply_curation({}, []))
    assert record.concepts == ()


def test_explain_step_unknown_feature():
    journey = Journey("B", (Step("F1", "B", 0.9),))
    with pytest.raises(JourneyError):
        explain_step(journey, "Ghost", apply_curation({}, []))


def test_render_journey_json_six_decimals():
    journey = Journey(
        "background",
        (Step("F1", "background", 0.5), Step("F2", "F1", 1 / 3, ("requires F9, which is not part of this journey",))),
        unreachable=("F9",),
    )
    payload = render_journey_json(journey)
    assert b'"weight": 0.333333' in payload
    assert b'"weight": 0.500000' in payload
    parsed = json.loads(payload)
    assert parsed["source"] == "background"
    assert parsed["steps"][1]["warnings"] == ["requires F9, which is not part of this journey"]
    assert parsed["unreachable"] == ["F9"]


def test_render_empty_journey():
    payload = render_journey_json(Journey("background", ()))
    assert json.loads(payload) == {"source": "background", "steps": [], "unreachable": []}
