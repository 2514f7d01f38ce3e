"""Hamilton decompositions of the directed 3-torus D3(m)."""

from ._kernels import BACKEND
from .errors import TorusError
from .torus import DirectionAssignment, Vertex

__version__ = "0.1.0"

__all__ = ["BACKEND", "DirectionAssignment", "TorusError", "Vertex", "__version__"]
