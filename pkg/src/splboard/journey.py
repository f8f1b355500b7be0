"""Similarity graph and the recommended feature-study order.

The journey grows a maximum spanning tree outward from the source node:
each step picks the unvisited feature most similar to anything already
visited, recording that visited node as its anchor.  Ties break on higher
weight, then the ascending feature label, then the ascending anchor label,
making the order total and the output deterministic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

from .conceptmap import ConceptMap
from .errors import SplboardError
from .featuremodel import FeatureModel, REQUIRES
from .topicmodel import SimilarityMatrix


class JourneyError(SplboardError):
    pass


@dataclass(frozen=True)
class WeightedGraph:
    nodes: tuple[str, ...]
    edges: dict[tuple[str, str], float]  # key is the sorted label pair

    def weight(self, a: str, b: str) -> float | None:
        return self.edges.get((a, b) if a < b else (b, a))


@dataclass(frozen=True)
class Step:
    feature: str
    anchor: str
    weight: float
    warnings: tuple[str, ...] = ()


@dataclass(frozen=True)
class Journey:
    source: str
    steps: tuple[Step, ...]
    unreachable: tuple[str, ...] = ()


def build_graph(matrix: SimilarityMatrix, threshold: float = 0.0) -> WeightedGraph:
    """Keep every pair at or above the threshold; threshold 0 keeps the complete graph."""
    if not 0 <= threshold < 1:
        raise JourneyError("threshold must lie in [0, 1)")
    edges: dict[tuple[str, str], float] = {}
    labels = matrix.labels
    for i, a in enumerate(labels):
        for j in range(i + 1, len(labels)):
            value = matrix.values[i][j]
            if value >= threshold:
                b = labels[j]
                edges[(a, b) if a < b else (b, a)] = value
    return WeightedGraph(labels, edges)


def recommend_journey(graph: WeightedGraph, source: str) -> Journey:
    """Maximum-spanning-tree insertion order rooted at the source."""
    if not graph.nodes:
        raise JourneyError("graph has no nodes")
    if source not in graph.nodes:
        raise JourneyError(f"source '{source}' is not a graph node")

    visited = [source]
    remaining = sorted(n for n in graph.nodes if n != source)
    steps: list[Step] = []
    while remaining:
        best: tuple[float, str, str] | None = None
        for feature in remaining:  # ascending feature label
            for anchor in sorted(visited):  # then ascending anchor label
                weight = graph.weight(anchor, feature)
                if weight is None:
                    continue
                if best is None or weight > best[0]:
                    best = (weight, feature, anchor)
        if best is None:
            break
        weight, feature, anchor = best
        steps.append(Step(feature, anchor, weight))
        visited.append(feature)
        remaining.remove(feature)
    return Journey(source, tuple(steps), tuple(remaining))


def annotate_requirements(journey: Journey, model: FeatureModel) -> Journey:
    """Badge steps whose feature requires something not yet visited."""
    feature_names = set(model.names())
    later = {step.feature for step in journey.steps}
    visited: set[str] = set()
    steps = []
    for step in journey.steps:
        warnings = []
        for c in model.constraints:
            if c.kind != REQUIRES or c.lhs != step.feature or c.rhs in visited:
                continue
            if c.rhs in later:
                warnings.append(f"requires {c.rhs}, which is visited later")
            elif c.rhs in feature_names:
                warnings.append(f"requires {c.rhs}, which is not part of this journey")
        steps.append(replace(step, warnings=tuple(warnings)))
        visited.add(step.feature)
        later.discard(step.feature)
    return replace(journey, steps=tuple(steps))


@dataclass(frozen=True)
class StepExplanation:
    feature: str
    anchor: str
    weight: float
    concepts: tuple[str, ...]  # accepted concept labels, sorted


def explain_step(journey: Journey, feature: str, concept_map: ConceptMap) -> StepExplanation:
    for step in journey.steps:
        if step.feature == feature:
            labels = sorted(c.label for c in concept_map.concepts_for(feature))
            return StepExplanation(feature, step.anchor, step.weight, tuple(labels))
    raise JourneyError(f"feature '{feature}' is not part of the journey")


def render_journey_json(journey: Journey) -> bytes:
    """Journey export with weights printed to six decimal places."""
    lines = ["{", f'  "source": {json.dumps(journey.source)},']
    if journey.steps:
        lines.append('  "steps": [')
        for i, step in enumerate(journey.steps):
            warnings = ", ".join(json.dumps(w) for w in step.warnings)
            comma = "," if i < len(journey.steps) - 1 else ""
            lines.append(
                "    {"
                + f'"feature": {json.dumps(step.feature)}, '
                + f'"anchor": {json.dumps(step.anchor)}, '
                + f'"weight": {step.weight:.6f}, '
                + f'"warnings": [{warnings}]'
                + "}"
                + comma
            )
        lines.append("  ],")
    else:
        lines.append('  "steps": [],')
    unreachable = ", ".join(json.dumps(u) for u in journey.unreachable)
    lines.append(f'  "unreachable": [{unreachable}]')
    lines.append("}")
    return ("\n".join(lines) + "\n").encode("utf-8")
