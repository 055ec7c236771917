"""Sprague-Grundy functions of the subtraction-division games i-Mark(S, D)."""

from .errors import (
    CorruptFile,
    EmptySet,
    IMarkError,
    InvalidDivisor,
    InvalidSubtraction,
    OutOfRange,
    Overflow,
    PreconditionViolated,
    ResourceLimit,
    SpecMismatch,
)
from .game import (
    GameSpec,
    General,
    PeriodicOutcome,
    Theorem1,
    Theorem2,
    Theorem3,
    classify_family,
    options,
    validate_spec,
)
from .oracle import (
    Outcome,
    SgTable,
    build_table,
    load_table,
    mex,
    outcome,
    save_table,
    sg,
    sg_bound,
)
from .closed_form import (
    alpha,
    beta,
    outcome_periodic,
    sg_closed,
    sg_theorem1,
    sg_theorem2,
    sg_theorem3,
    thresholds,
)
from .analysis import (
    check_conjecture,
    equivalence_check,
    export_sequence,
    gap_report,
    gap_scan,
    verify_gap_theorems,
    verify_lemma_5mod6,
)
from .sums import Move, SumPosition, evaluate, sum_oracle_small, sum_sg, winning_move

__version__ = "0.1.0"
