"""Statistical string-similarity features, synthetic pair generation, and a
small evaluation harness."""

__version__ = "0.1.0"

from .strings import SymbolString

__all__ = ["SymbolString", "__version__"]
