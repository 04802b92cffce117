"""
errors.py
- Exception hierarchy shared by the library modules and the CLI
"""
from typing import Any, Dict, Optional


class WaringError(Exception):
    """Base class for every error raised by this package."""


class ParseError(WaringError, ValueError):
    """Polynomial text or scheme JSON could not be read."""


class SchemeError(WaringError, ValueError):
    """A scheme violates a structural invariant."""


class DegreeError(WaringError, ValueError):
    """A degree is outside the supported range."""


class DimensionError(WaringError, ValueError):
    """Shapes of exact matrices or vectors do not match."""


class SamplingError(WaringError):
    """The sampler could not certify a generic point."""


class RecipeError(WaringError):
    """A decomposition recipe exhausted its retries."""

    def __init__(self, recipe: str, step: str, attempts: int):
        super().__init__(f"{recipe}: step '{step}' failed after {attempts} attempts")
        self.recipe = recipe
        self.step = step
        self.attempts = attempts

    def __reduce__(self):
        return (RecipeError, (self.recipe, self.step, self.attempts))


class VerificationError(WaringError):
    """A decomposition failed exact verification."""

    def __init__(self, message: str, instance: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.instance = instance or {}

    def __reduce__(self):
        return (VerificationError, (str(self), self.instance))
