"""Exact finite-field checks of transversality for curves, surfaces and pencils."""
__version__ = "0.1.0"

from .gf import GF, make_field  # noqa: E402
from .polyform import MultiForm  # noqa: E402
from .pencil import Pencil  # noqa: E402

__all__ = ["GF", "make_field", "MultiForm", "Pencil", "__version__"]
