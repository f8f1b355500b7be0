from __future__ import annotations

import math

import pytest
from hypothesis import given, strategies as st

from splboard.scanner import FeatureDocument, Fragment
from splboard.textproc import (
    EmptyCorpusError,
    build_corpus,
    cooccurrence,
    default_stopwords,
    export_corpus_tsv,
    tfidf,
    tokenize,
)


def _doc(feature: str, text: str) -> FeatureDocument:
    return FeatureDocument(feature, [Fragment("f.c", 1, 1, "code", text)])


def test_tokenize_splits_identifiers():
    assert tokenize("parseXMLFile2") == ["parse", "xml", "file"]


def test_tokenize_empty():
    assert tokenize("") == []


def test_tokenize_underscores_and_stopwords():
    assert tokenize("GPS_route GPS_route if") == ["gps", "route", "gps", "route"]


def test_tokenize_drops_short_and_numeric():
    assert tokenize("ab 123 x9 abc") == ["abc"]


def test_default_stopwords_include_keywords():
    stops = default_stopwords()
    assert "if" in stops and "while" in stops and "return" in stops


def test_tokenize_custom_stopwords():
    assert tokenize("alpha beta", stopwords=frozenset({"beta"})) == ["alpha"]


def test_tokenize_stemming_flag():
    assert tokenize("routes routing routed", stem=True) == ["route", "rout", "rout"]
    assert tokenize("pass", stem=True) == ["pass"]


@given(st.text(max_size=200))
def test_tokenize_idempotent_on_its_output(text):
    tokens = tokenize(text)
    assert tokenize(" ".join(tokens)) == tokens


def test_build_corpus_statistics():
    corpus = build_corpus([_doc("F1", "gps route"), _doc("F2", "gps map")])
    assert corpus.size == 2
    assert corpus.vocab == ("gps", "map", "route")
    assert corpus.df == {"gps": 2, "map": 1, "route": 1}


def test_build_corpus_single_doc_counts():
    corpus = build_corpus([_doc("F1", "engine engine")])
    assert corpus.size == 1
    assert corpus.term_counts("F1")["engine"] == 2
    assert corpus.df["engine"] == 1


def test_build_corpus_all_stopwords_is_error():
    with pytest.raises(EmptyCorpusError):
        build_corpus([_doc("F1", "if else while")])


def test_build_corpus_keeps_empty_docs():
    corpus = build_corpus([_doc("F1", "engine"), _doc("F2", "if")])
    assert corpus.size == 2
    assert corpus.tokens("F2") == ()


def test_vocab_sorted_and_df_bounded():
    corpus = build_corpus([_doc("F1", "zeta alpha zeta"), _doc("F2", "alpha beta")])
    assert list(corpus.vocab) == sorted(corpus.vocab)
    for term in corpus.vocab:
        assert 1 <= corpus.df[term] <= corpus.size


def test_tfidf_hand_computed():
    corpus = build_corpus(
        [_doc("d1", "gps route"), _doc("d2", "gps map"), _doc("d3", "tile")]
    )
    scores = tfidf(corpus)
    assert scores[("d1", "gps")] == pytest.approx(math.log(3 / 2), abs=1e-12)
    assert scores[("d1", "route")] == pytest.approx(math.log(3.0), abs=1e-12)


def test_tfidf_term_in_every_doc_scores_zero():
    corpus = build_corpus([_doc("d1", "gps gps"), _doc("d2", "gps")])
    scores = tfidf(corpus)
    assert scores[("d1", "gps")] == 0.0
    assert scores[("d2", "gps")] == 0.0


def test_tfidf_absent_term_has_no_entry():
    corpus = build_corpus([_doc("d1", "gps"), _doc("d2", "map")])
    scores = tfidf(corpus)
    assert ("d1", "map") not in scores


def test_tfidf_non_negative():
    corpus = build_corpus([_doc("d1", "gps route gps"), _doc("d2", "map route")])
    assert all(score >= 0.0 for score in tfidf(corpus).values())


def test_cooccurrence_window_two():
    graph = cooccurrence(["a", "b", "c"], window=2)
    assert graph.weight("a", "b") == 1
    assert graph.weight("b", "c") == 1
    assert graph.weight("a", "c") == 0


def test_cooccurrence_skips_self_pairs():
    graph = cooccurrence(["a", "a", "a"], window=3)
    assert graph.edges == {}


def test_cooccurrence_alternating_pairs():
    graph = cooccurrence(["a", "b", "a", "b"], window=3)
    assert graph.weight("a", "b") == 3
    assert graph.degree("a") == 1


def test_cooccurrence_window_must_be_at_least_two():
    with pytest.raises(ValueError):
        cooccurrence(["a"], window=1)


@given(
    st.lists(st.sampled_from(["a", "b", "c", "d"]), max_size=30),
    st.integers(min_value=2, max_value=6),
)
def test_cooccurrence_total_matches_brute_force(tokens, window):
    graph = cooccurrence(tokens, window)
    expected = 0
    for i in range(len(tokens)):
        for j in range(i + 1, min(i + window, len(tokens))):
            if tokens[i] != tokens[j]:
                expected += 1
    assert sum(graph.edges.values()) == expected


def test_export_corpus_tsv_golden():
    corpus = build_corpus([_doc("F1", "gps route"), _doc("F2", "gps")])
    out = export_corpus_tsv(corpus, tfidf(corpus))
    assert out == (
        "feature\tterm\ttf\ttfidf\n"
        "F1\tgps\t1\t0.000000\n"
        f"F1\troute\t1\t{math.log(2):.6f}\n"
        "F2\tgps\t1\t0.000000\n"
    )
