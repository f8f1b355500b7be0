"""Tokenization, term statistics and co-occurrence graphs over feature documents."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
import re

from .errors import SplboardError
from .scanner import FeatureDocument

_SUBTOKEN_RE = re.compile(r"[A-Z]+(?![a-z])|[A-Z][a-z]+|[a-z]+|[0-9]+")

MIN_TERM_LENGTH = 3
DEFAULT_WINDOW = 4

_default_stopwords: frozenset[str] | None = None


class EmptyCorpusError(SplboardError):
    pass


def default_stopwords() -> frozenset[str]:
    global _default_stopwords
    if _default_stopwords is None:
        data = resources.files("splboard").joinpath("data/stopwords.txt").read_text("utf-8")
        _default_stopwords = _parse_stopwords(data)
    return _default_stopwords


def load_stopwords(path: str | Path) -> frozenset[str]:
    return _parse_stopwords(Path(path).read_text("utf-8"))


def _parse_stopwords(text: str) -> frozenset[str]:
    return frozenset(w.strip().lower() for w in text.splitlines() if w.strip())


def tokenize(
    text: str,
    stopwords: frozenset[str] | None = None,
    stem: bool = False,
) -> list[str]:
    """Split text into lowercase terms.

    Identifiers are split at underscores and camelCase humps; pure numbers,
    terms shorter than three characters and stopwords are dropped.  With
    ``stem=True`` crude plural/-ing/-ed suffixes are stripped first.
    """
    if stopwords is None:
        stopwords = default_stopwords()
    terms: list[str] = []
    for piece in _SUBTOKEN_RE.findall(text):
        if piece.isdigit():
            continue
        term = piece.lower()
        if stem:
            term = _strip_suffix(term)
        if len(term) < MIN_TERM_LENGTH or term in stopwords:
            continue
        terms.append(term)
    return terms


def _strip_suffix(term: str) -> str:
    if term.endswith("ing") and len(term) > 5:
        return term[:-3]
    if term.endswith("ed") and len(term) > 4:
        return term[:-2]
    if term.endswith("s") and not term.endswith("ss") and len(term) > 3:
        return term[:-1]
    return term


@dataclass(frozen=True)
class Corpus:
    """One token sequence per feature plus vocabulary statistics."""

    docs: tuple[tuple[str, tuple[str, ...]], ...]  # (feature, tokens)
    vocab: tuple[str, ...]  # sorted ascending by codepoint
    df: dict[str, int]

    @property
    def size(self) -> int:
        return len(self.docs)

    def tokens(self, feature: str) -> tuple[str, ...]:
        for name, tokens in self.docs:
            if name == feature:
                return tokens
        raise KeyError(feature)

    def term_counts(self, feature: str) -> Counter[str]:
        return Counter(self.tokens(feature))


def build_corpus(
    documents: list[FeatureDocument],
    stopwords: frozenset[str] | None = None,
    stem: bool = False,
) -> Corpus:
    """Tokenize every feature document into one corpus document."""
    docs: list[tuple[str, tuple[str, ...]]] = []
    for doc in documents:
        text = "\n".join(fragment.text for fragment in doc.fragments)
        docs.append((doc.feature, tuple(tokenize(text, stopwords=stopwords, stem=stem))))
    if all(len(tokens) == 0 for _, tokens in docs):
        raise EmptyCorpusError("all documents tokenized to nothing")

    vocab = sorted({t for _, tokens in docs for t in tokens})
    df = {term: 0 for term in vocab}
    for _, tokens in docs:
        for term in set(tokens):
            df[term] += 1
    return Corpus(tuple(docs), tuple(vocab), df)


def tfidf(corpus: Corpus) -> dict[tuple[str, str], float]:
    """Raw term count times ln(N/df).  Terms absent from a doc score 0."""
    scores: dict[tuple[str, str], float] = {}
    n = corpus.size
    for feature, tokens in corpus.docs:
        for term, count in Counter(tokens).items():
            scores[(feature, term)] = count * math.log(n / corpus.df[term])
    return scores


@dataclass(frozen=True)
class CooccurrenceGraph:
    nodes: frozenset[str]
    edges: dict[tuple[str, str], int]  # key is the sorted term pair

    def weight(self, a: str, b: str) -> int:
        if a == b:
            return 0
        return self.edges.get((min(a, b), max(a, b)), 0)

    def degree(self, term: str) -> int:
        return sum(1 for a, b in self.edges if term in (a, b))

    def sorted_edges(self) -> list[tuple[str, str, int]]:
        return [(a, b, w) for (a, b), w in sorted(self.edges.items())]


def cooccurrence(tokens: list[str] | tuple[str, ...], window: int = DEFAULT_WINDOW) -> CooccurrenceGraph:
    """Count co-occurrences of token pairs within a sliding window.

    Every position pair (i, j) with 0 < j - i < window and distinct terms
    increments the undirected edge between them; self-pairs are skipped.
    """
    if window < 2:
        raise ValueError("window must be at least 2")
    edges: dict[tuple[str, str], int] = {}
    for i, left in enumerate(tokens):
        for j in range(i + 1, min(i + window, len(tokens))):
            right = tokens[j]
            if left == right:
                continue
            key = (left, right) if left < right else (right, left)
            edges[key] = edges.get(key, 0) + 1
    return CooccurrenceGraph(frozenset(tokens), edges)


def export_corpus_tsv(corpus: Corpus, scores: dict[tuple[str, str], float]) -> str:
    """Diagnostic dump: feature, term, tf, tfidf — sorted by feature then term."""
    rows = ["feature\tterm\ttf\ttfidf"]
    for feature, _ in sorted(corpus.docs):
        counts = corpus.term_counts(feature)
        for term in sorted(counts):
            rows.append(f"{feature}\t{term}\t{counts[term]}\t{scores[(feature, term)]:.6f}")
    return "\n".join(rows) + "\n"
