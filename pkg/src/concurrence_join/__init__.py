"""Concurrence topology for two groups of binary variables.

Build frequency-filtered concurrence complexes from 0/1 observations,
join the projections onto two variable groups, and measure which
homology classes survive the inclusion into the join.
"""
from .concurrence import (
    BinaryDataset,
    FilteredConcurrence,
    PatternTable,
    concurrence_frame,
    ingest_csv,
    max_frame,
    pattern_table,
    restrict,
    support,
)
from .homology import (
    BettiVector,
    FiltrationOrder,
    GF2Matrix,
    InclusionRanks,
    Interval,
    betti,
    boundary_matrix,
    gf2_rank,
    inclusion_rank,
    persistence,
)
from .pipeline import (
    FrameReport,
    Grouping,
    IndependenceReport,
    analyze,
    analyze_frame,
    kunneth_join_prediction,
    kunneth_product_prediction,
)
from .simplicial import (
    SimplicialComplex,
    boundary_of_simplex,
    closure,
    euler_characteristic,
    full_simplex,
    join,
    product_complex,
    project,
    tag,
)
from .synthetic import (
    GroupSpec,
    JointSpec,
    cycle_pattern_spec,
    sample_coupled,
    sample_independent,
)

__version__ = "0.1.0"

__all__ = [
    "BettiVector",
    "BinaryDataset",
    "FilteredConcurrence",
    "FiltrationOrder",
    "FrameReport",
    "GF2Matrix",
    "GroupSpec",
    "Grouping",
    "InclusionRanks",
    "IndependenceReport",
    "Interval",
    "JointSpec",
    "PatternTable",
    "SimplicialComplex",
    "analyze",
    "analyze_frame",
    "betti",
    "boundary_matrix",
    "boundary_of_simplex",
    "closure",
    "concurrence_frame",
    "cycle_pattern_spec",
    "euler_characteristic",
    "full_simplex",
    "gf2_rank",
    "inclusion_rank",
    "ingest_csv",
    "join",
    "kunneth_join_prediction",
    "kunneth_product_prediction",
    "max_frame",
    "pattern_table",
    "persistence",
    "product_complex",
    "project",
    "restrict",
    "sample_coupled",
    "sample_independent",
    "support",
    "tag",
]
