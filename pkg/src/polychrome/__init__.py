"""Polychromatic colorings of planar point sets for homothetic triangles."""

from ._kernels import BACKEND
from .coloring import (Coloring, ColorClass, KColorResult, Refinement, ThresholdCert,
                       k_color, merge_colors, refine, theoretical_threshold, two_color)
from .geometry import (AffineMap, Homothet, Point, Quadrant, Triangle, canonical_map,
                       contains, sweep_key)
from .ranges import (PointSet, Range, RangeCatalog, enumerate_ranges, max_nonpoly_range,
                     range_of)
from .verify import (Violation, WitnessTrace, empirical_threshold, quadrant_cover, verify,
                     witness_extract)

__version__ = "0.1.0"
