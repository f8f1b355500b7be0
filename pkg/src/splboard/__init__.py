"""splboard: concept maps and onboarding journeys for preprocessor-based product lines."""

__version__ = "0.1.0"

from .errors import SplboardError, UnknownFeatureError

__all__ = ["SplboardError", "UnknownFeatureError", "__version__"]
