"""Colored partitions with primary and secondary colors.

The maps ``phi_map`` (C-chains to D-chains) and ``psi_map`` (back), their
position predictions, exhaustive enumeration of both chain families, and
the dilations that specialise them to integer partition identities.
"""

from .bijection import phi_map, predict_p, predict_q, psi_map, run_phi, run_psi
from .crossing import cross, uncross
from .enumeration import enumerate_c, enumerate_d, expand_product
from .formats import ParseError, format_partition, parse_partition
from .parts import (
    ColoredPartition,
    InvalidPartition,
    Mode,
    Primary,
    Secondary,
    natural_gt,
    stats,
    strong_gt,
    validate,
)

__all__ = [
    "ColoredPartition", "InvalidPartition", "Mode", "ParseError", "Primary", "Secondary",
    "cross", "enumerate_c", "enumerate_d", "expand_product", "format_partition",
    "natural_gt", "parse_partition", "phi_map", "predict_p", "predict_q", "psi_map",
    "run_phi", "run_psi", "stats", "strong_gt", "uncross", "validate",
]
