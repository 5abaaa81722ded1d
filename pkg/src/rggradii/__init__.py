"""Critical transmission radii of random geometric graphs in 3D regions."""
from ._core import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
