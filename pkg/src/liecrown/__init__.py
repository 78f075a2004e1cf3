"""Chief factors, complements and crowns of finite-dimensional Lie algebras over GF(p)."""

from .catalog import builtin, parse, serialize
from .liecore import LieAlgebra
from .verdict import Truth, Verdict

__version__ = "0.1.0"

__all__ = ["LieAlgebra", "Truth", "Verdict", "builtin", "parse", "serialize", "__version__"]
