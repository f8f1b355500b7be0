"""Feature-model types and the `.fm` text format.

The format is line-oriented and indentation-based (two spaces per level):

    root Nav
      mandatory Engine
      optional GPS
      group output [1..2]
        member Voice
        member Display
    constraints
      GPS requires Engine

``group <id> [lo..hi]`` opens a feature group whose ``member`` children
belong to it; members may have children of their own.  The optional
``constraints`` section lists ``A requires B`` / ``A excludes B`` pairs.
``#`` starts a comment that runs to the end of the line.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass

from .errors import SplboardError

NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_CARDINALITY_RE = re.compile(r"\[(\d+)\.\.(\d+)\]\Z")

MANDATORY = "mandatory"
OPTIONAL = "optional"
GROUP_MEMBER = "group-member"

REQUIRES = "requires"
EXCLUDES = "excludes"


class ModelError(SplboardError):
    """Base for feature-model parse and validation failures."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ModelSyntaxError(ModelError):
    pass


class DuplicateFeatureError(ModelError):
    pass


class DanglingReferenceError(ModelError):
    pass


class CardinalityError(ModelError):
    pass


@dataclass(frozen=True)
class Group:
    ident: str
    lo: int
    hi: int


@dataclass(frozen=True)
class Feature:
    name: str
    parent: str | None
    variability: str  # mandatory | optional | group-member
    group: Group | None = None


@dataclass(frozen=True)
class Constraint:
    lhs: str
    kind: str  # requires | excludes
    rhs: str


@dataclass(frozen=True)
class FeatureModel:
    """Features in declaration order plus cross-tree constraints."""

    features: tuple[Feature, ...]
    constraints: tuple[Constraint, ...] = ()

    def feature(self, name: str) -> Feature:
        for f in self.features:
            if f.name == name:
                return f
        raise KeyError(name)

    def names(self) -> tuple[str, ...]:
        return tuple(f.name for f in self.features)

    def root(self) -> Feature:
        for f in self.features:
            if f.parent is None:
                return f
        raise ModelError("model has no root feature")

    def children(self, name: str) -> tuple[Feature, ...]:
        return tuple(f for f in self.features if f.parent == name)


@dataclass
class _Frame:
    kind: str  # "feature" | "group"
    name: str  # feature name or group id


@dataclass
class _GroupDecl:
    ident: str
    lo: int
    hi: int
    line: int
    members: list[str]


def parse_feature_model(text: str) -> FeatureModel:
    """Parse `.fm` text into a validated FeatureModel.

    Raises ModelSyntaxError, DuplicateFeatureError, DanglingReferenceError
    or CardinalityError, each carrying the offending line number where one
    exists.
    """
    features: list[Feature] = []
    seen: dict[str, int] = {}
    group_decls: dict[str, _GroupDecl] = {}
    constraints: list[Constraint] = []
    stack: list[_Frame] = []
    in_constraints = False
    saw_root = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        if not body.strip():
            continue
        stripped = body.lstrip(" ")
        indent = len(body) - len(stripped)
        if "\t" in body[:indent] or stripped != body.lstrip():
            raise ModelSyntaxError("indentation must use spaces", lineno)
        if indent % 2 != 0:
            raise ModelSyntaxError("indentation must be a multiple of two spaces", lineno)
        depth = indent // 2
        words = stripped.split()

        if in_constraints:
            if len(words) != 3 or words[1] not in (REQUIRES, EXCLUDES):
                raise ModelSyntaxError(
                    "expected '<Feature> requires <Feature>' or '<Feature> excludes <Feature>'",
                    lineno,
                )
            lhs, kind, rhs = words
            _check_name(lhs, lineno)
            _check_name(rhs, lineno)
            constraints.append(Constraint(lhs, kind, rhs))
            continue

        keyword = words[0]

        if keyword == "constraints":
            if len(words) != 1 or depth != 0:
                raise ModelSyntaxError("'constraints' takes no arguments", lineno)
            if not saw_root:
                raise ModelSyntaxError("'constraints' before any feature", lineno)
            in_constraints = True
            continue

        if not saw_root:
            if keyword != "root" or depth != 0:
                raise ModelSyntaxError("model must start with 'root <Name>'", lineno)
            name = _parse_single_name(words, lineno)
            features.append(Feature(name, None, MANDATORY))
            seen[name] = lineno
            stack = [_Frame("feature", name)]
            saw_root = True
            continue

        if keyword == "root":
            raise ModelSyntaxError("only one 'root' line is allowed", lineno)
        if depth < 1 or depth > len(stack):
            raise ModelSyntaxError("indentation jumps more than one level", lineno)
        del stack[depth:]
        parent = stack[-1]

        if keyword in (MANDATORY, OPTIONAL):
            if parent.kind != "feature":
                raise ModelSyntaxError(f"'{keyword}' is not allowed inside a group", lineno)
            name = _parse_single_name(words, lineno)
            if name in seen:
                raise DuplicateFeatureError(f"duplicate feature name '{name}'", lineno)
            features.append(Feature(name, parent.name, keyword))
            seen[name] = lineno
            stack.append(_Frame("feature", name))
        elif keyword == "group":
            if parent.kind != "feature":
                raise ModelSyntaxError("groups cannot be nested directly", lineno)
            if len(words) != 3:
                raise ModelSyntaxError("expected 'group <id> [lo..hi]'", lineno)
            ident = words[1]
            _check_name(ident, lineno)
            card = _CARDINALITY_RE.match(words[2])
            if card is None:
                raise ModelSyntaxError("expected cardinality of the form [lo..hi]", lineno)
            if ident in group_decls:
                raise ModelSyntaxError(f"duplicate group id '{ident}'", lineno)
            group_decls[ident] = _GroupDecl(ident, int(card.group(1)), int(card.group(2)), lineno, [])
            stack.append(_Frame("group", ident))
        elif keyword == "member":
            if parent.kind != "group":
                raise ModelSyntaxError("'member' is only allowed inside a group", lineno)
            name = _parse_single_name(words, lineno)
            if name in seen:
                raise DuplicateFeatureError(f"duplicate feature name '{name}'", lineno)
            decl = group_decls[parent.name]
            owner = _owning_feature(stack)
            features.append(
                Feature(name, owner, GROUP_MEMBER, Group(decl.ident, decl.lo, decl.hi))
            )
            decl.members.append(name)
            seen[name] = lineno
            stack.append(_Frame("feature", name))
        else:
            raise ModelSyntaxError(f"unknown keyword '{keyword}'", lineno)

    if not saw_root:
        raise ModelSyntaxError("empty model: expected 'root <Name>'")

    for decl in group_decls.values():
        if not (1 <= decl.lo <= decl.hi <= len(decl.members)):
            raise CardinalityError(
                f"group '{decl.ident}' cardinality [{decl.lo}..{decl.hi}] is invalid "
                f"for {len(decl.members)} member(s)",
                decl.line,
            )

    names = set(seen)
    for lineno, c in zip(_constraint_lines(text), constraints):
        if c.lhs == c.rhs:
            raise ModelSyntaxError("constraint endpoints must differ", lineno)
        missing = [n for n in (c.lhs, c.rhs) if n not in names]
        if missing:
            raise DanglingReferenceError(
                f"constraint references unknown feature(s): {', '.join(missing)}", lineno
            )

    return FeatureModel(tuple(features), tuple(constraints))


def _constraint_lines(text: str) -> list[int]:
    numbers = []
    in_constraints = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        if in_constraints:
            numbers.append(lineno)
        elif body == "constraints":
            in_constraints = True
    return numbers


def _parse_single_name(words: list[str], lineno: int) -> str:
    if len(words) != 2:
        raise ModelSyntaxError(f"expected '{words[0]} <Name>'", lineno)
    return _check_name(words[1], lineno)


def _check_name(name: str, lineno: int | None = None) -> str:
    if NAME_RE.match(name) is None:
        raise ModelSyntaxError(f"invalid name '{name}'", lineno)
    return name


def _owning_feature(stack: list[_Frame]) -> str:
    for frame in reversed(stack):
        if frame.kind == "feature":
            return frame.name
    raise ModelError("group without an owning feature")


def serialize_feature_model(model: FeatureModel) -> str:
    """Render a model back to `.fm` text.

    Deterministic: features keep declaration order, members of a group are
    emitted together at the group's first occurrence.
    """
    children: dict[str | None, list[Feature]] = defaultdict(list)
    by_group: dict[str, list[Feature]] = defaultdict(list)
    for f in model.features:
        children[f.parent].append(f)
        if f.group is not None:
            by_group[f.group.ident].append(f)

    lines: list[str] = []
    emitted_groups: set[str] = set()

    def emit(feature: Feature, depth: int) -> None:
        pad = "  " * depth
        for child in children[feature.name]:
            if child.group is not None:
                gid = child.group.ident
                if gid in emitted_groups:
                    continue
                emitted_groups.add(gid)
                lines.append(f"{pad}group {gid} [{child.group.lo}..{child.group.hi}]")
                for member in by_group[gid]:
                    lines.append(f"{pad}  member {member.name}")
                    emit(member, depth + 2)
            else:
                lines.append(f"{pad}{child.variability} {child.name}")
                emit(child, depth + 1)

    root = model.root()
    lines.append(f"root {root.name}")
    emit(root, 1)
    if model.constraints:
        lines.append("constraints")
        for c in model.constraints:
            lines.append(f"  {c.lhs} {c.kind} {c.rhs}")
    return "\n".join(lines) + "\n"


def validate_model(model: FeatureModel) -> None:
    """Check all structural invariants of a programmatically built model."""
    seen: set[str] = set()
    roots = []
    for f in model.features:
        if NAME_RE.match(f.name) is None:
            raise ModelSyntaxError(f"invalid feature name '{f.name}'")
        if f.name in seen:
            raise DuplicateFeatureError(f"duplicate feature name '{f.name}'")
        seen.add(f.name)
        if f.parent is None:
            roots.append(f)
    if len(roots) != 1:
        raise ModelError(f"expected exactly one root feature, found {len(roots)}")
    if roots[0].variability != MANDATORY:
        raise ModelError("root feature must be mandatory")

    for f in model.features:
        if f.parent is not None and f.parent not in seen:
            raise DanglingReferenceError(f"feature '{f.name}' has unknown parent '{f.parent}'")

    # walk up from every feature; a cycle or a detached subtree never reaches the root
    root_name = roots[0].name
    for f in model.features:
        hops = 0
        cur: str | None = f.name
        while cur is not None and cur != root_name:
            cur = model.feature(cur).parent
            hops += 1
            if hops > len(model.features):
                raise ModelError(f"parent chain of '{f.name}' does not reach the root")

    members_by_group: dict[str, list[Feature]] = defaultdict(list)
    for f in model.features:
        if f.group is not None:
            if f.variability != GROUP_MEMBER:
                raise ModelError(f"feature '{f.name}' carries a group but is not a member")
            members_by_group[f.group.ident].append(f)
        elif f.variability == GROUP_MEMBER:
            raise ModelError(f"group member '{f.name}' carries no group")
    for gid, members in members_by_group.items():
        lo, hi = members[0].group.lo, members[0].group.hi  # type: ignore[union-attr]
        if any(m.group != members[0].group for m in members):
            raise ModelError(f"group '{gid}' has inconsistent cardinality across members")
        if not (1 <= lo <= hi <= len(members)):
            raise CardinalityError(
                f"group '{gid}' cardinality [{lo}..{hi}] is invalid for {len(members)} member(s)"
            )

    for c in model.constraints:
        if c.kind not in (REQUIRES, EXCLUDES):
            raise ModelError(f"unknown constraint kind '{c.kind}'")
        if c.lhs == c.rhs:
            raise ModelSyntaxError("constraint endpoints must differ")
        missing = [n for n in (c.lhs, c.rhs) if n not in seen]
        if missing:
            raise DanglingReferenceError(
                f"constraint references unknown feature(s): {', '.join(missing)}"
            )
