"""Exact sampling of interacting k-tilings of the Aztec diamond."""
from .geometry import Face, ParityConvention, diagonal, faces_of_rank
from .tiling import (CompassType, Domino, KTiling, Tiling, WeightConfig, classify,
                     count_interactions, domino_weight, ktiling_weight, tiling_weight, validate)

__all__ = ["Face", "ParityConvention", "diagonal", "faces_of_rank", "CompassType", "Domino",
           "KTiling", "Tiling", "WeightConfig", "classify", "count_interactions", "domino_weight",
           "ktiling_weight", "tiling_weight", "validate"]
__version__ = "0.1.0"
