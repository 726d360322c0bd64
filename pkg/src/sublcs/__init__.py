"""Longest common subsequence and edit distance in sublinear space."""

from .grid import (
    ArrayWeights,
    ContractViolation,
    Edge,
    EdgeKind,
    FunctionWeights,
    GridShape,
    WeightOracle,
    negate,
    override_row0,
    pad_rows,
    restrict,
    shift,
    transpose,
)
from .meter import MeterError, MetricsRecord, SpaceMeter
from .standard import LengthVector, enumerate_paths_value, full_table, sweep_lengths
from .sublinear import (
    ContaminationError,
    RecursionConfig,
    choose_block_size,
    combine,
    edit_distance,
    lcs_length,
    longest_path_lengths,
    recursion_bounds,
    recursion_size,
    run_edit_distance,
    run_lcs,
    run_longest_path,
)
from .weights import CostTable, edit_oracle, lcs_oracle

__version__ = "0.1.0"
