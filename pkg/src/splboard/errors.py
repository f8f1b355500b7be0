"""Shared exception hierarchy."""

from __future__ import annotations

from typing import Iterable


class SplboardError(Exception):
    """Base class for every error raised by this package."""


class UnknownFeatureError(SplboardError):
    """One or more referenced feature names do not exist in the feature model."""

    def __init__(self, names: Iterable[str]):
        self.names = tuple(sorted(set(names)))
        super().__init__("unknown feature(s): " + ", ".join(self.names))
