"""Exact enumeration of non-separable planar triangulations with minimum degree constraints."""

__version__ = "0.1.0"

from .census import CensusSeries, CensusTag, census  # noqa: E402
from .equations import FamilyTag, SolvedFamily, solve  # noqa: E402
from .series import BiSeries, PolyX, USeries  # noqa: E402

__all__ = [
    "BiSeries",
    "CensusSeries",
    "CensusTag",
    "FamilyTag",
    "PolyX",
    "SolvedFamily",
    "USeries",
    "census",
    "solve",
]
