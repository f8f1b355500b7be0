"""Project configuration: one `key = value` file drives the whole pipeline.

Relative paths resolve against the config file's directory.  Blank lines
and lines starting with `#` are ignored.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .errors import SplboardError


class ConfigError(SplboardError):
    pass


_PATH_KEYS = {
    "feature_model", "macro_map", "doc_map", "stopwords", "background", "ledger", "out_dir",
}
_INT_KEYS = {"k", "window", "topics", "iterations", "seed", "suggest_threshold"}
_FLOAT_KEYS = {"lambda", "alpha", "beta", "threshold"}
_BOOL_KEYS = {"stem"}
_KNOWN_KEYS = _PATH_KEYS | _INT_KEYS | _FLOAT_KEYS | _BOOL_KEYS | {"sources"}


@dataclass
class ProjectConfig:
    base_dir: Path
    feature_model: Path
    sources: tuple[str, ...]
    macro_map: Path | None = None
    doc_map: Path | None = None
    stopwords: Path | None = None
    background: Path | None = None
    ledger: Path = Path("ledger.jsonl")
    out_dir: Path = Path("out")
    lam: float = 0.5
    top_k: int = 10
    window: int = 4
    topics: int = 10
    alpha: float | None = None  # defaults to 50 / topics
    beta: float = 0.01
    iterations: int = 1000
    seed: int = 42
    threshold: float = 0.0
    suggest_threshold: int = 3
    stem: bool = False

    @property
    def alpha_value(self) -> float:
        return self.alpha if self.alpha is not None else 50.0 / self.topics


def load_config(path: str | Path) -> ProjectConfig:
    path = Path(path)
    base = path.parent.resolve()
    values: dict[str, str] = {}
    try:
        text = path.read_text("utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if len(value) >= 2 and value[0] == value[-1] == '"':
            value = value[1:-1]
        if key not in _KNOWN_KEYS:
            raise ConfigError(f"{path}:{lineno}: unknown key '{key}'")
        if key in values:
            raise ConfigError(f"{path}:{lineno}: duplicate key '{key}'")
        values[key] = value

    for required in ("feature_model", "sources"):
        if required not in values:
            raise ConfigError(f"{path}: missing required key '{required}'")

    def resolve(key: str) -> Path | None:
        if key not in values:
            return None
        return (base / values[key]).resolve()

    def to_int(key: str, default: int) -> int:
        if key not in values:
            return default
        try:
            return int(values[key])
        except ValueError as exc:
            raise ConfigError(f"{path}: key '{key}' must be an integer") from exc

    def to_float(key: str, default: float | None) -> float | None:
        if key not in values:
            return default
        try:
            return float(values[key])
        except ValueError as exc:
            raise ConfigError(f"{path}: key '{key}' must be a number") from exc

    stem = values.get("stem", "false").lower()
    if stem not in ("true", "false"):
        raise ConfigError(f"{path}: key 'stem' must be true or false")

    cfg = ProjectConfig(
        base_dir=base,
        feature_model=resolve("feature_model"),  # type: ignore[arg-type]
        sources=tuple(s.strip() for s in values["sources"].split(",") if s.strip()),
        macro_map=resolve("macro_map"),
        doc_map=resolve("doc_map"),
        stopwords=resolve("stopwords"),
        background=resolve("background"),
        ledger=resolve("ledger") or (base / "ledger.jsonl"),
        out_dir=resolve("out_dir") or (base / "out"),
        lam=to_float("lambda", 0.5),  # type: ignore[arg-type]
        top_k=to_int("k", 10),
        window=to_int("window", 4),
        topics=to_int("topics", 10),
        alpha=to_float("alpha", None),
        beta=to_float("beta", 0.01),  # type: ignore[arg-type]
        iterations=to_int("iterations", 1000),
        seed=to_int("seed", 42),
        threshold=to_float("threshold", 0.0),  # type: ignore[arg-type]
        suggest_threshold=to_int("suggest_threshold", 3),
        stem=stem == "true",
    )
    _check_ranges(cfg)
    return cfg


def _check_ranges(cfg: ProjectConfig) -> None:
    if not cfg.sources:
        raise ConfigError("'sources' lists no glob patterns")
    if not 0 <= cfg.lam <= 1:
        raise ConfigError("'lambda' must lie in [0, 1]")
    if cfg.top_k < 1:
        raise ConfigError("'k' must be at least 1")
    if cfg.window < 2:
        raise ConfigError("'window' must be at least 2")
    if cfg.topics < 1:
        raise ConfigError("'topics' must be at least 1")
    if cfg.alpha is not None and cfg.alpha <= 0:
        raise ConfigError("'alpha' must be positive")
    if cfg.beta <= 0:
        raise ConfigError("'beta' must be positive")
    if cfg.iterations < 1:
        raise ConfigError("'iterations' must be at least 1")
    if not 0 <= cfg.threshold < 1:
        raise ConfigError("'threshold' must lie in [0, 1)")
    if cfg.suggest_threshold < 1:
        raise ConfigError("'suggest_threshold' must be at least 1")


def load_macro_map(path: str | Path) -> dict[str, str]:
    """One `MACRO = FeatureName` per line."""
    mapping: dict[str, str] = {}
    for lineno, raw in enumerate(Path(path).read_text("utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'MACRO = FeatureName'")
        macro, _, feature = line.partition("=")
        macro, feature = macro.strip(), feature.strip()
        if not macro or not feature:
            raise ConfigError(f"{path}:{lineno}: expected 'MACRO = FeatureName'")
        mapping[macro] = feature
    return mapping


def load_doc_map(path: str | Path) -> list[tuple[str, Path]]:
    """One `FeatureName = path` per line; paths resolve against the map file."""
    base = Path(path).parent
    entries: list[tuple[str, Path]] = []
    for lineno, raw in enumerate(Path(path).read_text("utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'FeatureName = path'")
        feature, _, doc_path = line.partition("=")
        feature, doc_path = feature.strip(), doc_path.strip()
        if not feature or not doc_path:
            raise ConfigError(f"{path}:{lineno}: expected 'FeatureName = path'")
        entries.append((feature, base / doc_path))
    return entries


def load_background_manifest(path: str | Path) -> list[Path]:
    """One source path per line, resolved against the manifest's directory."""
    base = Path(path).parent
    paths = []
    for raw in Path(path).read_text("utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        paths.append(base / line)
    return paths
