"""Exact classification of eventually periodic subshifts.

Finite representations of eventually periodic bi-infinite sequences, their
conjugacy invariants (least period, anomaly size), decision procedures with
checkable witnesses for conjugacy and flow equivalence, and generators for
skew Sturmian sequences of rational frequency.  All arithmetic is exact.
"""

from .bezout import BezoutPair, restricted_bezout, swapped_pair
from .classify import (
    ConjugacyMove,
    ExpandMove,
    FlowWitness,
    SlidingBlockCode,
    apply_code,
    apply_code_to_periodic,
    composition_shift_offset,
    conjugacy_witness,
    conjugate_ep,
    contract_symbol,
    expand_symbol,
    flow_witness,
    identity_code,
    image_window,
    raise_anomaly,
    raise_period,
    skew_conjugacy_class,
    verify_flow_witness,
)
from .errors import EpshiftError
from .sequences import (
    AnomalyWindow,
    EPSeq,
    PeriodicSeq,
    anomaly_size,
    anomaly_windows,
    canonical,
    enumerate_blocks,
    first_defect,
    least_period,
    make_ep,
    remove_anomaly,
    remove_window,
    shift,
    similar,
    symbol_at,
    window,
)
from .sturmian import (
    CellSeries,
    Frequency,
    SturmianSpec,
    TYPE_S,
    TYPE_SPRIME,
    cell_series,
    cell_zeros_S,
    cell_zeros_Sprime,
    chain_zero_counts,
    cutting_sequence,
    expand_cells,
    skew_sturmian,
    symbol_reverse,
)
from .words import (
    BINARY,
    Alphabet,
    Word,
    count_symbol,
    is_balanced_chains,
    is_primitive,
    primitive_root,
    rotate,
    word,
)

__version__ = "0.1.0"
