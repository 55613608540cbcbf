"""Counting, sampling and asymptotics for hierarchical orderings (societies).

A hierarchy is an ordered set-partition of a label set; a hierarchical
ordering splits {1..n} into unlabeled subsets and puts a hierarchy on each.
"""

from .asymptotics import (
    AsymptoticEstimate,
    SaddlePoint,
    constant_C,
    hierarchical_asymptotic_log,
    ordered_bell_asymptotic_log,
    saddle_point,
    unlabeled_asymptotic_log,
)
from .explicit import PartitionMultiplicity, hierarchical_explicit, partitions_of
from .ranks import (
    RankDistribution,
    labeled_average_rank,
    labeled_rank_asymptotic_check,
    labeled_rank_distribution,
    rank_numerator_values,
    unlabeled_rank_distribution,
)
from .sequences import (
    Count,
    InternalConsistencyError,
    SequenceKind,
    SequenceTable,
    binomial,
    compositions,
    hierarchical,
    nested_hierarchical,
    ordered_bell,
    stirling2,
    unlabeled,
    unlabeled_alpha,
)
from .series import Flavor, Series
from .structures import (
    Composition,
    HierarchicalOrdering,
    Hierarchy,
    enumerate_compositions,
    enumerate_hierarchies,
    enumerate_orderings,
    enumerate_unlabeled_orderings,
    format_structure,
    parse_structure,
    sample_hierarchy,
)

__version__ = "0.1.0"
