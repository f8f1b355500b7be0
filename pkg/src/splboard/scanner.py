"""Attribute conditional-compilation source lines to features.

Supported conditionals: ``#ifdef X``, ``#ifndef X``, ``#if defined(X)``,
``#else``, ``#endif``.  A line belongs to every feature whose positive
region encloses it; ``#else`` flips a region's polarity, so the else-branch
of an ``#ifndef X`` is positive for X again.  Lines outside all directives
belong to the root feature.  Lines enclosed only by negative or
unrecognized regions belong to no feature and are reported as unattributed
rather than dropped.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import SplboardError, UnknownFeatureError
from .featuremodel import FeatureModel

CODE = "code"
COMMENT = "comment"
DOC = "doc"

_DIRECTIVE_RE = re.compile(r"^\s*#\s*([A-Za-z_]\w*)\s*(.*?)\s*$")
_NAME_ARG_RE = re.compile(r"^([A-Za-z_]\w*)\s*(?://.*|/\*.*)?$")
_IF_DEFINED_RE = re.compile(r"^defined\s*\(\s*([A-Za-z_]\w*)\s*\)\s*(?://.*|/\*.*)?$")
_CONDITIONALS = frozenset({"ifdef", "ifndef", "if", "elif", "else", "endif"})
_COMMENT_STARTS = ("//", "/*", "*", "#")


class ScanError(SplboardError):
    """Unbalanced conditionals in a source file."""

    def __init__(self, path: str, line: int, message: str):
        super().__init__(f"{path}:{line}: {message}")
        self.path = path
        self.line = line


@dataclass(frozen=True)
class Fragment:
    source: str
    start: int  # 1-based, inclusive
    end: int
    kind: str  # code | comment | doc
    text: str


@dataclass
class FeatureDocument:
    feature: str
    fragments: list[Fragment] = field(default_factory=list)


@dataclass
class ScanResult:
    documents: list[FeatureDocument]
    warnings: list[str]
    unattributed: list[tuple[str, int, int]]  # (source, start, end)


@dataclass
class _Region:
    macro: str | None  # None for unrecognized conditions
    feature: str | None  # mapped feature, None when unmapped/unrecognized
    positive: bool
    opaque: bool  # no branch of this region may attribute anything
    else_seen: bool
    opened_at: int

    def contributes(self) -> str | None:
        if self.opaque or not self.positive:
            return None
        return self.feature


def scan_sources(
    files: list[tuple[str, str]],
    model: FeatureModel,
    macro_map: dict[str, str] | None = None,
) -> ScanResult:
    """Scan (path, text) pairs and build one FeatureDocument per feature.

    ``macro_map`` maps preprocessor macros to feature names; macros without
    an entry fall back to the identity mapping when a feature of the same
    name exists, else they are reported as unmapped.
    """
    macro_map = dict(macro_map or {})
    names = set(model.names())
    bad = [f for f in macro_map.values() if f not in names]
    if bad:
        raise UnknownFeatureError(bad)

    root = model.root().name
    per_feature: dict[str, list[Fragment]] = {name: [] for name in model.names()}
    warnings: list[str] = []
    unattributed: list[tuple[str, int, int]] = []

    for path, text in files:
        _scan_file(path, text, root, names, macro_map, per_feature, warnings, unattributed)

    documents = [FeatureDocument(name, per_feature[name]) for name in model.names()]
    return ScanResult(documents, warnings, unattributed)


def _resolve(macro: str, macro_map: dict[str, str], names: set[str]) -> str | None:
    if macro in macro_map:
        return macro_map[macro]
    if macro in names:
        return macro
    return None


def _scan_file(
    path: str,
    text: str,
    root: str,
    names: set[str],
    macro_map: dict[str, str],
    per_feature: dict[str, list[Fragment]],
    warnings: list[str],
    unattributed: list[tuple[str, int, int]],
) -> None:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()

    stack: list[_Region] = []
    run_attr: frozenset[str] | None = None
    run_kind = CODE
    run_start = 0
    run_lines: list[str] = []
    unatt_start = 0
    unatt_end = 0

    def flush_run(end: int) -> None:
        nonlocal run_attr, run_lines
        if run_attr is None:
            return
        fragment = Fragment(path, run_start, end, run_kind, "\n".join(run_lines))
        for feature in sorted(run_attr):
            per_feature[feature].append(fragment)
        run_attr = None
        run_lines = []

    def flush_unatt() -> None:
        nonlocal unatt_start
        if unatt_start:
            unattributed.append((path, unatt_start, unatt_end))
            unatt_start = 0

    for lineno, line in enumerate(lines, start=1):
        directive = _DIRECTIVE_RE.match(line)
        keyword = directive.group(1) if directive else None
        if keyword in _CONDITIONALS:
            flush_run(lineno - 1)
            flush_unatt()
            arg = directive.group(2)  # type: ignore[union-attr]
            if keyword in ("ifdef", "ifndef"):
                named = _NAME_ARG_RE.match(arg)
                if named is None:
                    warnings.append(f"{path}:{lineno}: malformed #{keyword}, region ignored")
                    stack.append(_Region(None, None, True, True, False, lineno))
                else:
                    macro = named.group(1)
                    feature = _resolve(macro, macro_map, names)
                    if feature is None:
                        warnings.append(f"{path}:{lineno}: macro '{macro}' is not mapped to a feature")
                    stack.append(_Region(macro, feature, keyword == "ifdef", False, False, lineno))
            elif keyword == "if":
                cond = _IF_DEFINED_RE.match(arg)
                if cond is None:
                    warnings.append(f"{path}:{lineno}: unsupported #if condition, region ignored")
                    stack.append(_Region(None, None, True, True, False, lineno))
                else:
                    macro = cond.group(1)
                    feature = _resolve(macro, macro_map, names)
                    if feature is None:
                        warnings.append(f"{path}:{lineno}: macro '{macro}' is not mapped to a feature")
                    stack.append(_Region(macro, feature, True, False, False, lineno))
            elif keyword == "elif":
                if not stack:
                    raise ScanError(path, lineno, "#elif without an open conditional")
                warnings.append(f"{path}:{lineno}: #elif is unsupported, rest of region ignored")
                stack[-1].opaque = True
            elif keyword == "else":
                if not stack:
                    raise ScanError(path, lineno, "#else without an open conditional")
                region = stack[-1]
                if region.else_seen:
                    raise ScanError(path, lineno, "duplicate #else")
                region.else_seen = True
                region.positive = not region.positive
            else:  # endif
                if not stack:
                    raise ScanError(path, lineno, "#endif without an open conditional")
                stack.pop()
            continue

        features = frozenset(f for f in (r.contributes() for r in stack) if f is not None)
        if not stack:
            features = frozenset({root})
        if not features:
            flush_run(lineno - 1)
            if not unatt_start:
                unatt_start = lineno
            unatt_end = lineno
            continue

        flush_unatt()
        stripped = line.strip()
        kind = COMMENT if stripped.startswith(_COMMENT_STARTS) else CODE
        if run_attr is not None and (features != run_attr or kind != run_kind):
            flush_run(lineno - 1)
        if run_attr is None:
            run_attr = features
            run_kind = kind
            run_start = lineno
        run_lines.append(line)

    if stack:
        raise ScanError(path, stack[0].opened_at, "conditional not closed before end of file")
    flush_run(len(lines))
    flush_unatt()


def ingest_docs(
    mapping: list[tuple[str, str, str]],
    model: FeatureModel,
    documents: list[FeatureDocument] | None = None,
) -> list[FeatureDocument]:
    """Append one doc-kind fragment per (feature, path, text) entry.

    Returns a new document list in model declaration order; ``documents``
    (e.g. a scan result) is not mutated.
    """
    names = set(model.names())
    offenders = [feature for feature, _, _ in mapping if feature not in names]
    if offenders:
        raise UnknownFeatureError(offenders)

    merged: dict[str, FeatureDocument] = {name: FeatureDocument(name) for name in model.names()}
    for doc in documents or []:
        merged[doc.feature] = FeatureDocument(doc.feature, list(doc.fragments))
    for feature, path, text in mapping:
        span = max(1, len(text.splitlines()))
        merged[feature].fragments.append(Fragment(path, 1, span, DOC, text))
    return [merged[name] for name in model.names()]
