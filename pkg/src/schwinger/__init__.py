"""Two-boson (Schwinger) realization of angular momentum: numerics, symbolic algebra and claim checks."""

from .reports import TOOL, VERSION

__version__ = VERSION
__all__ = ["TOOL", "VERSION", "__version__"]
