"""Collapsed-Gibbs LDA over the feature corpus and cosine similarity of topic mixes.

Training keeps three count tables: document-topic, topic-word and per-topic
totals.  Each sweep resamples every token's topic from

    weight(t) = (n_doc_topic + alpha) * (n_topic_word + beta) / (n_topic + V * beta)

with the token's own assignment removed.  The final counts yield the
smoothed topic-word matrix (phi) and document-topic matrix (theta).  All
randomness comes from one seeded ``random.Random``, so identical inputs and
seed reproduce bit-identical output.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from typing import Sequence

from .errors import SplboardError
from .textproc import Corpus


class LdaError(SplboardError):
    pass


class InferenceError(SplboardError):
    pass


class ZeroVectorError(SplboardError):
    pass


@dataclass(frozen=True)
class TopicModel:
    num_topics: int
    alpha: float
    beta: float
    vocab: tuple[str, ...]
    doc_labels: tuple[str, ...]
    doc_lengths: tuple[int, ...]
    phi: list[list[float]]  # num_topics x V, rows sum to 1
    theta: list[list[float]]  # docs x num_topics, rows sum to 1
    doc_topic_counts: list[list[int]]
    topic_word_counts: list[list[int]]
    topic_totals: list[int]
    seed: int
    iterations: int

    def check_counts(self) -> None:
        """Count conservation: doc rows sum to doc length, topic rows to topic totals."""
        for d, row in enumerate(self.doc_topic_counts):
            if sum(row) != self.doc_lengths[d]:
                raise LdaError(f"document {d}: topic counts do not sum to its length")
        for t, row in enumerate(self.topic_word_counts):
            if sum(row) != self.topic_totals[t]:
                raise LdaError(f"topic {t}: word counts do not sum to the topic total")
        if sum(self.topic_totals) != sum(self.doc_lengths):
            raise LdaError("topic totals do not sum to the corpus size")


def topic_weights(
    doc_topic: Sequence[int],
    topic_word: Sequence[Sequence[int]],
    topic_totals: Sequence[int],
    word: int,
    alpha: float,
    beta: float,
    vocab_size: int,
) -> list[float]:
    """Unnormalized full-conditional weights for one token."""
    vbeta = vocab_size * beta
    return [
        (doc_topic[t] + alpha) * (topic_word[t][word] + beta) / (topic_totals[t] + vbeta)
        for t in range(len(topic_totals))
    ]


def sample_discrete(rng: random.Random, weights: Sequence[float]) -> int:
    total = 0.0
    for w in weights:
        total += w
    r = rng.random() * total
    acc = 0.0
    for i, w in enumerate(weights):
        acc += w
        if r < acc:
            return i
    return len(weights) - 1


def train_lda(
    corpus: Corpus,
    num_topics: int,
    alpha: float,
    beta: float,
    iterations: int,
    seed: int,
    validate_counts: bool = False,
) -> TopicModel:
    """Train by collapsed Gibbs sampling; deterministic for a given seed.

    ``validate_counts=True`` re-checks count conservation after every sweep
    and raises LdaError on the first violation.
    """
    if num_topics < 1:
        raise LdaError("num_topics must be at least 1")
    if alpha <= 0 or beta <= 0:
        raise LdaError("alpha and beta must be positive")
    if iterations < 1:
        raise LdaError("iterations must be at least 1")

    word_index = {w: i for i, w in enumerate(corpus.vocab)}
    docs = [[word_index[t] for t in tokens] for _, tokens in corpus.docs]
    total_tokens = sum(len(d) for d in docs)
    if total_tokens == 0:
        raise LdaError("corpus has no tokens")

    v = len(corpus.vocab)
    rng = random.Random(seed)
    n_dk = [[0] * num_topics for _ in docs]
    n_kw = [[0] * v for _ in range(num_topics)]
    n_k = [0] * num_topics
    assignments = []
    for d, doc in enumerate(docs):
        doc_z = []
        for w in doc:
            t = rng.randrange(num_topics)
            doc_z.append(t)
            n_dk[d][t] += 1
            n_kw[t][w] += 1
            n_k[t] += 1
        assignments.append(doc_z)

    for _ in range(iterations):
        for d, doc in enumerate(docs):
            doc_z = assignments[d]
            row = n_dk[d]
            for i, w in enumerate(doc):
                t_old = doc_z[i]
                row[t_old] -= 1
                n_kw[t_old][w] -= 1
                n_k[t_old] -= 1
                weights = topic_weights(row, n_kw, n_k, w, alpha, beta, v)
                t_new = sample_discrete(rng, weights)
                doc_z[i] = t_new
                row[t_new] += 1
                n_kw[t_new][w] += 1
                n_k[t_new] += 1
        if validate_counts:
            _check_tables(n_dk, n_kw, n_k, docs)

    vbeta = v * beta
    kalpha = num_topics * alpha
    phi = [
        [(n_kw[t][w] + beta) / (n_k[t] + vbeta) for w in range(v)] for t in range(num_topics)
    ]
    theta = [
        [(n_dk[d][t] + alpha) / (len(docs[d]) + kalpha) for t in range(num_topics)]
        for d in range(len(docs))
    ]
    return TopicModel(
        num_topics=num_topics,
        alpha=alpha,
        beta=beta,
        vocab=corpus.vocab,
        doc_labels=tuple(label for label, _ in corpus.docs),
        doc_lengths=tuple(len(d) for d in docs),
        phi=phi,
        theta=theta,
        doc_topic_counts=n_dk,
        topic_word_counts=n_kw,
        topic_totals=n_k,
        seed=seed,
        iterations=iterations,
    )


def _check_tables(
    n_dk: list[list[int]],
    n_kw: list[list[int]],
    n_k: list[int],
    docs: list[list[int]],
) -> None:
    for d, doc in enumerate(docs):
        if sum(n_dk[d]) != len(doc):
            raise LdaError(f"document {d}: topic counts do not sum to its length")
    for t, row in enumerate(n_kw):
        if sum(row) != n_k[t]:
            raise LdaError(f"topic {t}: word counts do not sum to the topic total")
    if sum(n_k) != sum(len(d) for d in docs):
        raise LdaError("topic totals do not sum to the corpus size")


@dataclass(frozen=True)
class InferredTheta:
    theta: list[float]
    dropped_tokens: int


def infer_theta(
    model: TopicModel,
    tokens: Sequence[str],
    iterations: int,
    seed: int,
) -> InferredTheta:
    """Fold a new document into a trained model.

    Topic-word counts stay frozen; only the new document's assignments
    resample.  Tokens outside the model vocabulary are dropped and counted.
    """
    word_index = {w: i for i, w in enumerate(model.vocab)}
    words = [word_index[t] for t in tokens if t in word_index]
    dropped = len(tokens) - len(words)
    if not words:
        raise InferenceError("document has no tokens known to the model")

    k = model.num_topics
    rng = random.Random(seed)
    doc_topic = [0] * k
    z = []
    for _ in words:
        t = rng.randrange(k)
        z.append(t)
        doc_topic[t] += 1
    for _ in range(iterations):
        for i, w in enumerate(words):
            doc_topic[z[i]] -= 1
            weights = topic_weights(
                doc_topic, model.topic_word_counts, model.topic_totals, w,
                model.alpha, model.beta, len(model.vocab),
            )
            z[i] = sample_discrete(rng, weights)
            doc_topic[z[i]] += 1

    kalpha = k * model.alpha
    theta = [(doc_topic[t] + model.alpha) / (len(words) + kalpha) for t in range(k)]
    return InferredTheta(theta, dropped)


@dataclass(frozen=True)
class SimilarityMatrix:
    labels: tuple[str, ...]
    values: list[list[float]]  # symmetric, diagonal exactly 1

    def value(self, a: str, b: str) -> float:
        return self.values[self.labels.index(a)][self.labels.index(b)]


def similarity_matrix(thetas: Sequence[tuple[str, Sequence[float]]]) -> SimilarityMatrix:
    """Pairwise cosine similarity; symmetric by construction, diagonal forced to 1."""
    if not thetas:
        raise ValueError("no vectors given")
    labels = tuple(label for label, _ in thetas)
    if len(set(labels)) != len(labels):
        raise ValueError("duplicate labels")
    dim = len(thetas[0][1])
    norms = []
    for label, vec in thetas:
        if len(vec) != dim:
            raise ValueError(f"vector for '{label}' has wrong length")
        if any(x < 0 for x in vec):
            raise ValueError(f"vector for '{label}' has negative entries")
        norm = math.sqrt(sum(x * x for x in vec))
        if norm == 0.0:
            raise ZeroVectorError(f"vector for '{label}' is all zeros")
        norms.append(norm)

    n = len(thetas)
    values = [[0.0] * n for _ in range(n)]
    for i in range(n):
        values[i][i] = 1.0
        for j in range(i + 1, n):
            dot = sum(x * y for x, y in zip(thetas[i][1], thetas[j][1]))
            cos = dot / (norms[i] * norms[j])
            cos = min(1.0, max(0.0, cos))
            values[i][j] = cos
            values[j][i] = cos
    return SimilarityMatrix(labels, values)


def export_similarity_csv(matrix: SimilarityMatrix) -> str:
    rows = ["," + ",".join(matrix.labels)]
    for label, row in zip(matrix.labels, matrix.values):
        rows.append(label + "," + ",".join(f"{v:.6f}" for v in row))
    return "\n".join(rows) + "\n"


def export_model_json(model: TopicModel) -> bytes:
    payload = {
        "num_topics": model.num_topics,
        "alpha": model.alpha,
        "beta": model.beta,
        "seed": model.seed,
        "iterations": model.iterations,
        "vocab": list(model.vocab),
        "doc_labels": list(model.doc_labels),
        "phi": model.phi,
        "theta": model.theta,
    }
    return (json.dumps(payload, indent=2, sort_keys=True) + "\n").encode("utf-8")
