"""Grid, cube and hypercube diagrams for links in 3-space and tori in 4-space."""

from .cube import CubeDiagram, validate_cube_markings
from .grid import GridDiagram, validate_grid
from .hypercube import HypercubeDiagram, MarkingSet, validate_hypercube

__version__ = "0.1.0"

__all__ = ["CubeDiagram", "GridDiagram", "HypercubeDiagram", "MarkingSet",
           "validate_cube_markings", "validate_grid", "validate_hypercube"]
