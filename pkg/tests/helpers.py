"""Shared generators and independent oracles for the test suite.

Everything here is deliberately written from first principles (configuration
enumeration, Prufer-sequence tree enumeration, brute-force counting) so the
implementation under test is checked against code that shares none of its
logic.
"""

from __future__ import annotations

import heapq
import itertools
import random
import re

from splboard.featuremodel import (
    Constraint,
    Feature,
    FeatureModel,
    Group,
    GROUP_MEMBER,
    MANDATORY,
    OPTIONAL,
)

# --------------------------------------------------------------------------
# random feature models

def random_model(rng: random.Random) -> FeatureModel:
    """A random valid model: tree of 3-12 features, some groups, some constraints."""
    counter = itertools.count()
    features: list[Feature] = [Feature(f"F{next(counter)}", None, MANDATORY)]

    def grow(parent: str, depth: int) -> None:
        for _ in range(rng.randint(0, 3)):
            if len(features) >= 12:
                return
            if depth < 3 and rng.random() < 0.25:
                size = rng.randint(1, 3)
                lo = rng.randint(1, size)
                hi = rng.randint(lo, size)
                gid = f"g{next(counter)}"
                member_names = [f"F{next(counter)}" for _ in range(size)]
                # document order: each member is followed by its own subtree
                for name in member_names:
                    features.append(Feature(name, parent, GROUP_MEMBER, Group(gid, lo, hi)))
                    if depth + 1 < 3:
                        grow(name, depth + 2)
            else:
                name = f"F{next(counter)}"
                features.append(Feature(name, parent, rng.choice([MANDATORY, OPTIONAL])))
                if depth < 3:
                    grow(name, depth + 1)

    grow(features[0].name, 1)
    names = [f.name for f in features]
    constraints = []
    for _ in range(rng.randint(0, 3)):
        if len(names) < 2:
            break
        lhs, rhs = rng.sample(names, 2)
        constraints.append(Constraint(lhs, rng.choice(["requires", "excludes"]), rhs))
    return FeatureModel(tuple(features), tuple(constraints))


# --------------------------------------------------------------------------
# exhaustive-configuration oracle for the conditional scanner

_ORACLE_DIRECTIVE = re.compile(r"^\s*#\s*(ifdef|ifndef|if|else|endif)\b\s*(.*?)\s*$")
_ORACLE_NAME = re.compile(r"defined\s*\(\s*(\w+)\s*\)|(\w+)")


def directive_lines(lines: list[str]) -> set[int]:
    return {i for i, line in enumerate(lines, 1) if _ORACLE_DIRECTIVE.match(line)}


def present_lines(lines: list[str], defined: frozenset[str]) -> set[int]:
    """Standard conditional evaluation: which lines survive this configuration."""
    present: set[int] = set()
    stack: list[bool] = []
    for lineno, line in enumerate(lines, 1):
        match = _ORACLE_DIRECTIVE.match(line)
        if match is None:
            if all(stack):
                present.add(lineno)
            continue
        keyword, arg = match.group(1), match.group(2)
        if keyword in ("ifdef", "ifndef", "if"):
            name_match = _ORACLE_NAME.match(arg)
            name = name_match.group(1) or name_match.group(2)
            value = name in defined
            if keyword == "ifndef":
                value = not value
            stack.append(value)
        elif keyword == "else":
            stack[-1] = not stack[-1]
        else:
            stack.pop()
    return present


def oracle_attribution(
    lines: list[str],
    macros: list[str],
    macro_to_feature: dict[str, str],
    root: str,
) -> dict[int, set[str]]:
    """Attribute each non-directive line by enumerating all 2^m configurations.

    A line belongs to feature F when, for some fixed assignment of the other
    macros, it is present with F defined and absent with F undefined.  It
    belongs to the root when it is present under every configuration.
    """
    presence = {
        frozenset(m for m, bit in zip(macros, bits) if bit): None
        for bits in itertools.product([0, 1], repeat=len(macros))
    }
    for defined in presence:
        presence[defined] = present_lines(lines, defined)

    skip = directive_lines(lines)
    attribution: dict[int, set[str]] = {}
    for lineno in range(1, len(lines) + 1):
        if lineno in skip:
            continue
        owners: set[str] = set()
        if all(lineno in present for present in presence.values()):
            owners.add(root)
        for macro in macros:
            others = [m for m in macros if m != macro]
            for bits in itertools.product([0, 1], repeat=len(others)):
                base = frozenset(m for m, bit in zip(others, bits) if bit)
                if lineno in presence[base | {macro}] and lineno not in presence[base]:
                    owners.add(macro_to_feature[macro])
                    break
        attribution[lineno] = owners
    return attribution


def random_directive_file(rng: random.Random, macros: list[str], max_depth: int = 3) -> str:
    """A balanced file using only the supported conditional forms.

    A macro is never re-tested while its own region is open: re-testing
    creates dead branches where syntactic attribution and configuration
    enumeration legitimately diverge.
    """
    lines: list[str] = []

    def block(depth: int, available: frozenset[str]) -> None:
        for _ in range(rng.randint(1, 4)):
            roll = rng.random()
            if depth < max_depth and available and roll < 0.45:
                macro = rng.choice(sorted(available))
                form = rng.randrange(3)
                if form == 0:
                    lines.append(f"#ifdef {macro}")
                elif form == 1:
                    lines.append(f"#ifndef {macro}")
                else:
                    lines.append(f"#if defined({macro})")
                block(depth + 1, available - {macro})
                if rng.random() < 0.4:
                    lines.append("#else")
                    block(depth + 1, available - {macro})
                lines.append("#endif")
            elif roll < 0.7:
                lines.append(f"call_{rng.randrange(100)}();")
            elif roll < 0.85:
                lines.append(f"// note {rng.randrange(100)}")
            else:
                lines.append("")

    block(0, frozenset(macros))
    return "\n".join(lines) + "\n"


def scanner_attribution(result, path: str, line_count: int, skip: set[int]) -> dict[int, set[str]]:
    """Flatten a scan result into a per-line feature-set map for one file."""
    per_line: dict[int, set[str]] = {
        lineno: set() for lineno in range(1, line_count + 1) if lineno not in skip
    }
    for doc in result.documents:
        for fragment in doc.fragments:
            if fragment.source != path:
                continue
            for lineno in range(fragment.start, fragment.end + 1):
                per_line[lineno].add(doc.feature)
    return per_line


# --------------------------------------------------------------------------
# spanning-tree enumeration (Prufer sequences)

def all_spanning_trees(n: int) -> list[list[tuple[int, int]]]:
    """Edge lists of all n^(n-2) labeled spanning trees on n nodes."""
    if n == 1:
        return [[]]
    if n == 2:
        return [[(0, 1)]]
    trees = []
    for seq in itertools.product(range(n), repeat=n - 2):
        trees.append(_decode_prufer(seq, n))
    return trees


def _decode_prufer(seq: tuple[int, ...], n: int) -> list[tuple[int, int]]:
    degree = [1] * n
    for s in seq:
        degree[s] += 1
    heap = [i for i in range(n) if degree[i] == 1]
    heapq.heapify(heap)
    edges = []
    for s in seq:
        leaf = heapq.heappop(heap)
        edges.append((leaf, s))
        degree[s] -= 1
        if degree[s] == 1:
            heapq.heappush(heap, s)
    u = heapq.heappop(heap)
    v = heapq.heappop(heap)
    edges.append((u, v))
    return edges


def max_tree_weight(trees: list[list[tuple[int, int]]], weights: dict[tuple[int, int], float]) -> float:
    best = float("-inf")
    for tree in trees:
        total = 0.0
        for a, b in tree:
            total += weights[(a, b) if a < b else (b, a)]
        if total > best:
            best = total
    return best
