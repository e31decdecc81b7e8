"""Partitions of the power set into Berge-G-free classes.

Sets are lists of 1-based elements; patterns use the CLI syntax
(c3, c4, s3, p3, cK:<k>, edges:1-2,...).
"""

from ._core import (
    ArityMismatch,
    FormatError,
    InvalidPartition,
    InvalidPattern,
    Partition,
    TooLargeForExhaustive,
    __version__,
    census_optimal,
    check_c4_claim,
    check_even_c4_lemma,
    check_odd_c4_lemma,
    check_triangle_lemma,
    claw_partition_6,
    claw_partition_9,
    classify_quadruple,
    detect,
    exact_f,
    exceptional_partition_5,
    find_berge_embedding,
    known_bounds,
    modular_packing_partition,
    parse_partition,
    quad_partition,
    run_cli,
    star_lower_bound,
    triangle_value,
)

__all__ = [
    "ArityMismatch",
    "FormatError",
    "InvalidPartition",
    "InvalidPattern",
    "Partition",
    "TooLargeForExhaustive",
    "__version__",
    "census_optimal",
    "check_c4_claim",
    "check_even_c4_lemma",
    "check_odd_c4_lemma",
    "check_triangle_lemma",
    "claw_partition_6",
    "claw_partition_9",
    "classify_quadruple",
    "detect",
    "exact_f",
    "exceptional_partition_5",
    "find_berge_embedding",
    "known_bounds",
    "modular_packing_partition",
    "parse_partition",
    "quad_partition",
    "run_cli",
    "star_lower_bound",
    "triangle_value",
]
