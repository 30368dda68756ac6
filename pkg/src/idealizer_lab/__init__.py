"""Exact computations in the integral Lie ring of partitions and its idealizer chain."""

from .grading import (
    LayerSet,
    LevelIndex,
    decompose,
    entry_index,
    enumerate_chain_set,
    enumerate_layer,
    lev,
    period_map,
    predicted_sizes,
    wd,
)
from .lie import (
    BasisElement,
    RingContext,
    RingElement,
    basis,
    basis_enumerate,
    bracket,
    bracket_basis,
    derivation,
    in_span,
    parse_element,
    print_element,
)
from .oracle import OracleConfig, commutator_containment, compare_chain, idealizer_step, oracle_chain
from .partitions import Partition, enumerate_partitions, load_bfile, partition_counts

__version__ = "0.1.0"
