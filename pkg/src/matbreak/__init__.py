"""Matrix-group key exchange and public-key schemes, with the linear-algebra
attacks that break them."""

__version__ = "0.1.0"

from . import kernels  # noqa: E402
from .algebra import ModMatrix, Modulus  # noqa: E402
from .errors import MatbreakError  # noqa: E402

__all__ = ["MatbreakError", "ModMatrix", "Modulus", "__version__", "kernels"]
