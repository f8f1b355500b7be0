"""End-to-end stages shared by the command line and the curation service."""

from __future__ import annotations

import glob
import hashlib
from dataclasses import dataclass
from pathlib import Path

from .config import (
    ProjectConfig,
    load_background_manifest,
    load_doc_map,
    load_macro_map,
)
from .conceptmap import (
    CandidateConcept,
    ConceptMap,
    apply_curation,
    candidate_concepts,
    read_ledger,
    with_suggestions,
)
from .errors import SplboardError
from .featuremodel import FeatureModel, parse_feature_model
from .journey import Journey, annotate_requirements, build_graph, recommend_journey
from .scanner import FeatureDocument, ScanResult, ingest_docs, scan_sources
from .textproc import Corpus, CooccurrenceGraph, build_corpus, cooccurrence, load_stopwords, tokenize
from .topicmodel import SimilarityMatrix, TopicModel, infer_theta, similarity_matrix, train_lda

BACKGROUND_LABEL = "background"


@dataclass
class ProjectData:
    model: FeatureModel
    scan: ScanResult
    documents: list[FeatureDocument]


def load_project(cfg: ProjectConfig) -> ProjectData:
    """Parse the feature model, scan the sources and attach doc fragments."""
    model = parse_feature_model(_read(cfg.feature_model))
    files = []
    for rel in source_files(cfg):
        files.append((rel, _read(cfg.base_dir / rel)))
    if not files:
        raise SplboardError("source globs matched no files")
    macro_map = load_macro_map(cfg.macro_map) if cfg.macro_map else {}
    scan = scan_sources(files, model, macro_map)
    documents = scan.documents
    if cfg.doc_map:
        mapping = []
        for feature, doc_path in load_doc_map(cfg.doc_map):
            mapping.append((feature, _relative(cfg, doc_path), _read(doc_path)))
        documents = ingest_docs(mapping, model, documents)
    return ProjectData(model, scan, documents)


def source_files(cfg: ProjectConfig) -> list[str]:
    """Glob matches as sorted paths relative to the project directory."""
    matched: set[str] = set()
    for pattern in cfg.sources:
        for hit in glob.glob(str(cfg.base_dir / pattern), recursive=True):
            path = Path(hit)
            if path.is_file():
                matched.add(path.resolve().relative_to(cfg.base_dir).as_posix())
    return sorted(matched)


def _relative(cfg: ProjectConfig, path: Path) -> str:
    try:
        return path.resolve().relative_to(cfg.base_dir).as_posix()
    except ValueError:
        return path.as_posix()


def _read(path: Path) -> str:
    try:
        return path.read_text("utf-8")
    except OSError as exc:
        raise SplboardError(f"cannot read {path}: {exc}") from exc


@dataclass
class CorpusStage:
    corpus: Corpus
    graphs: dict[str, CooccurrenceGraph]
    candidates: dict[str, list[CandidateConcept]]


def build_corpus_stage(data: ProjectData, cfg: ProjectConfig) -> CorpusStage:
    stopwords = load_stopwords(cfg.stopwords) if cfg.stopwords else None
    corpus = build_corpus(data.documents, stopwords=stopwords, stem=cfg.stem)
    graphs = {
        feature: cooccurrence(tokens, cfg.window) for feature, tokens in corpus.docs
    }
    candidates = candidate_concepts(corpus, graphs, lam=cfg.lam, k=cfg.top_k)
    return CorpusStage(corpus, graphs, candidates)


def derive_concept_map(stage: CorpusStage, cfg: ProjectConfig) -> tuple[ConceptMap, ConceptMap]:
    """Returns (expert-only map, map with suggested relations merged)."""
    actions = read_ledger(cfg.ledger) if cfg.ledger.exists() else []
    expert = apply_curation(stage.candidates, actions)
    return expert, with_suggestions(expert, stage.graphs, cfg.suggest_threshold)


def train_topics(corpus: Corpus, cfg: ProjectConfig, seed: int | None = None) -> TopicModel:
    return train_lda(
        corpus,
        num_topics=cfg.topics,
        alpha=cfg.alpha_value,
        beta=cfg.beta,
        iterations=cfg.iterations,
        seed=cfg.seed if seed is None else seed,
    )


def background_tokens(cfg: ProjectConfig, manifest: Path) -> list[str]:
    stopwords = load_stopwords(cfg.stopwords) if cfg.stopwords else None
    texts = [_read(p) for p in load_background_manifest(manifest)]
    return tokenize("\n".join(texts), stopwords=stopwords, stem=cfg.stem)


@dataclass
class JourneyStage:
    journey: Journey
    matrix: SimilarityMatrix
    dropped_background_tokens: int


def build_journey(
    model: FeatureModel,
    topic_model: TopicModel,
    bg_tokens: list[str],
    cfg: ProjectConfig,
    seed: int | None = None,
) -> JourneyStage:
    """Similarity of every feature to the background, then the journey."""
    use_seed = cfg.seed if seed is None else seed
    background = infer_theta(topic_model, bg_tokens, iterations=cfg.iterations, seed=use_seed)
    thetas = [
        (label, topic_model.theta[i]) for i, label in enumerate(topic_model.doc_labels)
    ]
    thetas.append((BACKGROUND_LABEL, background.theta))
    matrix = similarity_matrix(thetas)
    graph = build_graph(matrix, cfg.threshold)
    journey = recommend_journey(graph, BACKGROUND_LABEL)
    journey = annotate_requirements(journey, model)
    return JourneyStage(journey, matrix, background.dropped_tokens)


def corpus_digest(corpus: Corpus) -> str:
    hasher = hashlib.sha256()
    for feature, tokens in corpus.docs:
        hasher.update(feature.encode("utf-8"))
        hasher.update(b"\x00")
        hasher.update(" ".join(tokens).encode("utf-8"))
        hasher.update(b"\x01")
    return hasher.hexdigest()
