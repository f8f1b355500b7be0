"""Candidate concepts, expert curation and the concept map.

A candidate's relevance blends its within-feature TF-IDF with its degree
centrality in that feature's co-occurrence graph.  The expert's decisions
live in an append-only ledger of actions (accept / reject / rename /
relate); replaying the ledger yields the concept map.  Relations above a
co-occurrence weight threshold can additionally be offered as suggestions,
marked ``suggested`` and never auto-accepted.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Mapping, Sequence

from .errors import SplboardError
from .textproc import Corpus, CooccurrenceGraph, tfidf

SUGGESTED_LABEL = "related-to"
DEFAULT_SUGGEST_THRESHOLD = 3


class InvalidActionError(SplboardError):
    def __init__(self, index: int, reason: str):
        super().__init__(f"action {index}: {reason}")
        self.index = index
        self.reason = reason


@dataclass(frozen=True)
class CandidateConcept:
    feature: str
    term: str
    relevance: float
    tfidf_norm: float
    centrality_norm: float


@dataclass(frozen=True)
class Action:
    op: str  # accept | reject | rename | relate
    feature: str | None = None
    term: str | None = None
    label: str | None = None
    a: str | None = None
    b: str | None = None

    def to_json(self) -> str:
        if self.op in ("accept", "reject"):
            payload = {"op": self.op, "feature": self.feature, "term": self.term}
        elif self.op == "rename":
            payload = {"op": self.op, "term": self.term, "label": self.label}
        else:
            payload = {"op": self.op, "a": self.a, "label": self.label, "b": self.b}
        return json.dumps(payload, sort_keys=True)


@dataclass(frozen=True)
class Concept:
    id: str
    label: str
    features: tuple[str, ...]  # sorted
    expert_added: tuple[str, ...] = ()  # features where the term was no candidate


@dataclass(frozen=True)
class Relation:
    a: str
    label: str
    b: str
    suggested: bool = False


@dataclass(frozen=True)
class ConceptMap:
    concepts: tuple[Concept, ...]  # sorted by id
    relations: tuple[Relation, ...]  # sorted by (a, label, b)

    def concept(self, concept_id: str) -> Concept:
        for c in self.concepts:
            if c.id == concept_id:
                return c
        raise KeyError(concept_id)

    def concepts_for(self, feature: str) -> tuple[Concept, ...]:
        return tuple(c for c in self.concepts if feature in c.features)


def candidate_concepts(
    corpus: Corpus,
    graphs: Mapping[str, CooccurrenceGraph],
    lam: float = 0.5,
    k: int = 10,
) -> dict[str, list[CandidateConcept]]:
    """Top-k candidates per feature, ranked by blended relevance.

    relevance = lam * tfidf_norm + (1 - lam) * centrality_norm, both
    components normalized by the feature's maximum.  Ties break on the
    lexicographically smaller term.
    """
    if not 0 <= lam <= 1:
        raise ValueError("lam must lie in [0, 1]")
    if k < 1:
        raise ValueError("k must be at least 1")

    scores = tfidf(corpus)
    out: dict[str, list[CandidateConcept]] = {}
    for feature, tokens in corpus.docs:
        terms = sorted(set(tokens))
        graph = graphs.get(feature)
        max_tfidf = max((scores[(feature, t)] for t in terms), default=0.0)
        max_degree = max((graph.degree(t) for t in terms), default=0) if graph else 0
        candidates = []
        for term in terms:
            t_norm = scores[(feature, term)] / max_tfidf if max_tfidf > 0 else 0.0
            c_norm = graph.degree(term) / max_degree if graph and max_degree > 0 else 0.0
            relevance = lam * t_norm + (1 - lam) * c_norm
            candidates.append(CandidateConcept(feature, term, relevance, t_norm, c_norm))
        candidates.sort(key=lambda c: (-c.relevance, c.term))
        out[feature] = candidates[:k]
    return out


def parse_action(obj: object, index: int) -> Action:
    if not isinstance(obj, dict):
        raise InvalidActionError(index, "action must be a JSON object")
    op = obj.get("op")
    if op in ("accept", "reject"):
        feature, term = obj.get("feature"), obj.get("term")
        if not isinstance(feature, str) or not isinstance(term, str) or not feature or not term:
            raise InvalidActionError(index, f"{op} needs string 'feature' and 'term'")
        return Action(op=op, feature=feature, term=term)
    if op == "rename":
        term, label = obj.get("term"), obj.get("label")
        if not isinstance(term, str) or not isinstance(label, str) or not term or not label:
            raise InvalidActionError(index, "rename needs string 'term' and 'label'")
        return Action(op=op, term=term, label=label)
    if op == "relate":
        a, label, b = obj.get("a"), obj.get("label"), obj.get("b")
        if not all(isinstance(x, str) and x for x in (a, label, b)):
            raise InvalidActionError(index, "relate needs string 'a', 'label' and 'b'")
        return Action(op=op, a=a, label=label, b=b)
    raise InvalidActionError(index, f"unknown op {op!r}")


def parse_ledger(text: str) -> list[Action]:
    """Parse a JSON-Lines ledger; blank lines are ignored."""
    actions = []
    index = 0
    for line in text.splitlines():
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise InvalidActionError(index, f"invalid JSON: {exc}") from exc
        actions.append(parse_action(obj, index))
        index += 1
    return actions


def read_ledger(path: str | Path) -> list[Action]:
    return parse_ledger(Path(path).read_text("utf-8"))


def append_action(path: str | Path, action: Action) -> None:
    """Write-through append: the line is flushed and fsynced before returning."""
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(action.to_json() + "\n")
        fh.flush()
        os.fsync(fh.fileno())


def apply_curation(
    candidates: Mapping[str, Sequence[CandidateConcept]],
    actions: Sequence[Action],
) -> ConceptMap:
    """Replay the ledger into a concept map.

    Later accept/reject actions override earlier ones for the same
    (feature, term); renames apply globally to a term; relations require
    both endpoints to be accepted once the full ledger has been replayed.
    """
    status: dict[tuple[str, str], bool] = {}
    labels: dict[str, str] = {}
    relates: list[tuple[int, Action]] = []
    for index, action in enumerate(actions):
        if action.op in ("accept", "reject"):
            status[(action.feature, action.term)] = action.op == "accept"
        elif action.op == "rename":
            labels[action.term] = action.label
        elif action.op == "relate":
            relates.append((index, action))
        else:
            raise InvalidActionError(index, f"unknown op {action.op!r}")

    links: dict[str, list[str]] = {}
    for (feature, term), accepted in status.items():
        if accepted:
            links.setdefault(term, []).append(feature)
    for index, action in relates:
        for endpoint in (action.a, action.b):
            if endpoint not in links:
                raise InvalidActionError(index, f"relate endpoint '{endpoint}' is not an accepted concept")

    candidate_terms = {
        feature: {c.term for c in ranked} for feature, ranked in candidates.items()
    }
    concepts = []
    for term in sorted(links):
        features = tuple(sorted(links[term]))
        expert = tuple(f for f in features if term not in candidate_terms.get(f, set()))
        concepts.append(Concept(term, labels.get(term, term), features, expert))

    seen: set[tuple[str, str, str]] = set()
    relations = []
    for _, action in relates:
        triple = (action.a, action.label, action.b)
        if triple not in seen:
            seen.add(triple)
            relations.append(Relation(*triple))
    relations.sort(key=lambda r: (r.a, r.label, r.b))
    return ConceptMap(tuple(concepts), tuple(relations))


def suggest_relations(
    concept_map: ConceptMap,
    graphs: Mapping[str, CooccurrenceGraph],
    threshold: int = DEFAULT_SUGGEST_THRESHOLD,
) -> list[Relation]:
    """Concept pairs co-occurring at or above the threshold in any feature graph.

    Pairs the expert already related (either direction) are skipped; the
    suggestion runs from the lexicographically smaller concept id.
    """
    related = {(r.a, r.b) for r in concept_map.relations if not r.suggested}
    related |= {(b, a) for a, b in related}
    ids = [c.id for c in concept_map.concepts]
    suggestions = []
    for i, a in enumerate(ids):
        for b in ids[i + 1 :]:
            if (a, b) in related:
                continue
            weight = max((g.weight(a, b) for g in graphs.values()), default=0)
            if weight >= threshold:
                suggestions.append(Relation(a, SUGGESTED_LABEL, b, suggested=True))
    return suggestions


def with_suggestions(
    concept_map: ConceptMap,
    graphs: Mapping[str, CooccurrenceGraph],
    threshold: int = DEFAULT_SUGGEST_THRESHOLD,
) -> ConceptMap:
    relations = list(concept_map.relations) + suggest_relations(concept_map, graphs, threshold)
    relations.sort(key=lambda r: (r.a, r.label, r.b))
    return replace(concept_map, relations=tuple(relations))


def export_map(concept_map: ConceptMap, format: str) -> bytes:
    """Serialize to 'json' or 'dot'; lexicographically sorted, byte-stable."""
    if format == "json":
        payload = {
            "concepts": [
                {"id": c.id, "label": c.label, "features": list(c.features)}
                for c in sorted(concept_map.concepts, key=lambda c: c.id)
            ],
            "relations": [
                {"a": r.a, "label": r.label, "b": r.b, "suggested": r.suggested}
                for r in sorted(concept_map.relations, key=lambda r: (r.a, r.label, r.b))
            ],
        }
        return (json.dumps(payload, indent=2, sort_keys=True) + "\n").encode("utf-8")
    if format == "dot":
        lines = ["digraph conceptmap {"]
        for c in sorted(concept_map.concepts, key=lambda c: c.id):
            lines.append(f'  {_dot_quote(c.id)} [label={_dot_quote(c.label)}];')
        for r in sorted(concept_map.relations, key=lambda r: (r.a, r.label, r.b)):
            style = ", style=dashed" if r.suggested else ""
            lines.append(
                f"  {_dot_quote(r.a)} -> {_dot_quote(r.b)} [label={_dot_quote(r.label)}{style}];"
            )
        lines.append("}")
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise ValueError(f"unknown export format {format!r}")


def parse_map(data: bytes) -> ConceptMap:
    obj = json.loads(data.decode("utf-8"))
    concepts = tuple(
        Concept(c["id"], c["label"], tuple(c["features"])) for c in obj["concepts"]
    )
    relations = tuple(
        Relation(r["a"], r["label"], r["b"], r["suggested"]) for r in obj["relations"]
    )
    return ConceptMap(concepts, relations)


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'
