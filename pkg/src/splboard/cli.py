"""splboard command line.

Every subcommand reads one project config (`-c`), writes machine output
under the output directory only, and reports diagnostics on stderr.
Exit codes: 0 success, 1 validation or pipeline failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import pipeline
from .config import ConfigError, ProjectConfig, load_config
from .conceptmap import export_map, read_ledger
from .errors import SplboardError
from .featuremodel import validate_model
from .journey import render_journey_json
from .topicmodel import export_model_json, export_similarity_csv


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except SplboardError as exc:
        print(f"splboard: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"splboard: error: {exc}", file=sys.stderr)
        return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="splboard", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("-c", "--config", required=True, help="project config file")
        p.add_argument("--out", help="override the output directory")
        p.add_argument("--seed", type=int, help="override the RNG seed")
        p.add_argument("--k", type=int, help="override candidates per feature")
        p.add_argument("--topics", type=int, help="override the topic count")
        p.add_argument("--threshold", type=float, help="override the similarity threshold")
        p.add_argument("--background", help="override the background manifest")

    for name, func in (
        ("ingest", _cmd_ingest),
        ("concepts", _cmd_concepts),
        ("curate-apply", _cmd_curate_apply),
        ("topics", _cmd_topics),
        ("journey", _cmd_journey),
        ("validate", _cmd_validate),
    ):
        p = sub.add_parser(name)
        common(p)
        p.set_defaults(func=func)

    p = sub.add_parser("serve")
    common(p)
    p.add_argument("--port", type=int, default=7878)
    p.add_argument("--ui-dir", help="directory with the static UI build")
    p.set_defaults(func=_cmd_serve)
    return parser


def _load(args: argparse.Namespace) -> ProjectConfig:
    cfg = load_config(args.config)
    if args.out:
        cfg.out_dir = Path(args.out).resolve()
    if args.seed is not None:
        cfg.seed = args.seed
    if args.k is not None:
        cfg.top_k = args.k
    if args.topics is not None:
        cfg.topics = args.topics
    if args.threshold is not None:
        cfg.threshold = args.threshold
    if args.background:
        cfg.background = Path(args.background).resolve()
    return cfg


def _outfile(cfg: ProjectConfig, name: str, data: bytes) -> None:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    (cfg.out_dir / name).write_bytes(data)


def _warn(messages: list[str]) -> None:
    for message in messages:
        print(f"splboard: warning: {message}", file=sys.stderr)


def _documents_json(data: pipeline.ProjectData) -> bytes:
    payload = {
        "documents": [
            {
                "feature": doc.feature,
                "fragments": [
                    {
                        "source": f.source,
                        "start": f.start,
                        "end": f.end,
                        "kind": f.kind,
                        "text": f.text,
                    }
                    for f in doc.fragments
                ],
            }
            for doc in data.documents
        ],
        "unattributed": [
            {"source": source, "start": start, "end": end}
            for source, start, end in data.scan.unattributed
        ],
    }
    return (json.dumps(payload, indent=2, sort_keys=True) + "\n").encode("utf-8")


def _candidates_json(stage: pipeline.CorpusStage, cfg: ProjectConfig) -> bytes:
    payload = {
        "lambda": cfg.lam,
        "k": cfg.top_k,
        "features": [
            {
                "feature": feature,
                "candidates": [
                    {
                        "term": c.term,
                        "relevance": round(c.relevance, 6),
                        "tfidf_norm": round(c.tfidf_norm, 6),
                        "centrality_norm": round(c.centrality_norm, 6),
                    }
                    for c in stage.candidates[feature]
                ],
            }
            for feature in sorted(stage.candidates)
        ],
    }
    return (json.dumps(payload, indent=2, sort_keys=True) + "\n").encode("utf-8")


def _cmd_ingest(args: argparse.Namespace) -> int:
    cfg = _load(args)
    data = pipeline.load_project(cfg)
    _warn(data.scan.warnings)
    _outfile(cfg, "documents.json", _documents_json(data))
    return 0


def _cmd_concepts(args: argparse.Namespace) -> int:
    cfg = _load(args)
    data = pipeline.load_project(cfg)
    _warn(data.scan.warnings)
    stage = pipeline.build_corpus_stage(data, cfg)
    from .textproc import export_corpus_tsv, tfidf

    _outfile(cfg, "documents.json", _documents_json(data))
    _outfile(cfg, "corpus.tsv", export_corpus_tsv(stage.corpus, tfidf(stage.corpus)).encode("utf-8"))
    _outfile(cfg, "candidates.json", _candidates_json(stage, cfg))
    return 0


def _cmd_curate_apply(args: argparse.Namespace) -> int:
    cfg = _load(args)
    data = pipeline.load_project(cfg)
    _warn(data.scan.warnings)
    stage = pipeline.build_corpus_stage(data, cfg)
    _, merged = pipeline.derive_concept_map(stage, cfg)
    _outfile(cfg, "conceptmap.json", export_map(merged, "json"))
    _outfile(cfg, "conceptmap.dot", export_map(merged, "dot"))
    return 0


def _cmd_topics(args: argparse.Namespace) -> int:
    cfg = _load(args)
    data = pipeline.load_project(cfg)
    _warn(data.scan.warnings)
    stage = pipeline.build_corpus_stage(data, cfg)
    model = pipeline.train_topics(stage.corpus, cfg)
    from .topicmodel import similarity_matrix

    thetas = [(label, model.theta[i]) for i, label in enumerate(model.doc_labels)]
    matrix = similarity_matrix(thetas)
    _outfile(cfg, "topicmodel.json", export_model_json(model))
    _outfile(cfg, "similarity.csv", export_similarity_csv(matrix).encode("utf-8"))
    return 0


def _cmd_journey(args: argparse.Namespace) -> int:
    cfg = _load(args)
    if cfg.background is None:
        raise SplboardError("no background manifest configured (config key 'background' or --background)")
    data = pipeline.load_project(cfg)
    _warn(data.scan.warnings)
    stage = pipeline.build_corpus_stage(data, cfg)
    model = pipeline.train_topics(stage.corpus, cfg)
    bg_tokens = pipeline.background_tokens(cfg, cfg.background)
    result = pipeline.build_journey(data.model, model, bg_tokens, cfg)
    if result.dropped_background_tokens:
        print(
            f"splboard: note: {result.dropped_background_tokens} background token(s) "
            "outside the model vocabulary were dropped",
            file=sys.stderr,
        )
    _outfile(cfg, "similarity.csv", export_similarity_csv(result.matrix).encode("utf-8"))
    _outfile(cfg, "journey.json", render_journey_json(result.journey))
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    try:
        cfg = _load(args)
    except ConfigError as exc:
        print(f"splboard: invalid: {exc}", file=sys.stderr)
        return 1
    problems: list[str] = []
    for label, path in (
        ("feature model", cfg.feature_model),
        ("macro map", cfg.macro_map),
        ("doc map", cfg.doc_map),
        ("stopwords", cfg.stopwords),
        ("background manifest", cfg.background),
    ):
        if path is not None and not path.exists():
            problems.append(f"{label} does not exist: {path}")
    if not problems:
        try:
            data = pipeline.load_project(cfg)
            validate_model(data.model)
            _warn(data.scan.warnings)
            stage = pipeline.build_corpus_stage(data, cfg)
            if cfg.ledger.exists():
                pipeline.derive_concept_map(stage, cfg)
        except SplboardError as exc:
            problems.append(str(exc))
    if problems:
        for problem in problems:
            print(f"splboard: invalid: {problem}", file=sys.stderr)
        return 1
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    cfg = _load(args)
    from .api import serve

    ui_dir = Path(args.ui_dir).resolve() if args.ui_dir else None
    return serve(cfg, port=args.port, ui_dir=ui_dir)


if __name__ == "__main__":
    sys.exit(main())
