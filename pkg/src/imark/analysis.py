"""Scans over SG tables: gap statistics, window theorems, conjecture checks,
oracle-vs-closed-form campaigns and sequence export."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from math import gcd
from typing import Iterator, Optional

import numpy as np

from . import _kernels as K
from .closed_form import layout_for, _evaluate, outcome_periodic
from .errors import OutOfRange, PreconditionViolated, SpecMismatch
from .game import (
    GameSpec,
    PeriodicOutcome,
    SOLVED_SG,
    classify_family,
    validate_spec,
)
from .oracle import DEFAULT_MEM_LIMIT, Outcome, SgTable, build_table, sg, sg_bound

MARK_123 = validate_spec([1], [2, 3])

# largest gaps for SG values 0..3 of i-Mark({1},{2,3}) up to 2^31 - 1
TABLE1_MAX_GAPS = (4, 8, 19, 240)


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(", ", ": "))


# -- gaps --------------------------------------------------------------------


@dataclass
class GapEntry:
    value: int
    first: Optional[int]
    count: int
    max_gap: Optional[int]
    max_gap_end: Optional[int]

    @property
    def occurs(self) -> bool:
        return self.count > 0


@dataclass
class GapReport:
    spec: GameSpec
    N: int
    per_value: list[GapEntry]

    def to_dict(self) -> dict:
        return {
            "spec": self.spec.to_dict(),
            "N": self.N,
            "per_value": [asdict(e) for e in self.per_value],
        }

    def to_json(self) -> str:
        return _dumps(self.to_dict())

    def max_gaps(self) -> tuple:
        return tuple(e.max_gap for e in self.per_value)


def _gap_arrays(table: SgTable, nvalues: int):
    return K.gap_stats(table.data, table.bits, table.N + 1, nvalues)


def _entry(arrays, v: int) -> GapEntry:
    first, count, max_gap, gap_end = (int(a[v]) for a in arrays)
    none = lambda x: None if x < 0 else x
    return GapEntry(v, none(first), count, none(max_gap), none(gap_end))


def gap_scan(table: SgTable, value: int) -> GapEntry:
    """Largest difference between consecutive positions holding ``value``.

    A value that never occurs yields an entry with count 0 and null fields;
    a value occurring once has a null max gap.
    """
    bound = sg_bound(table.spec)
    if not 0 <= value <= bound:
        raise ValueError(f"SG value {value} outside 0..{bound}")
    return _entry(_gap_arrays(table, value + 1), value)


def gap_report(table: SgTable) -> GapReport:
    nvalues = sg_bound(table.spec) + 1
    arrays = _gap_arrays(table, nvalues)
    return GapReport(table.spec, table.N, [_entry(arrays, v) for v in range(nvalues)])


# -- window theorems for i-Mark({1},{2,3}) -------------------------------------

# (value, window, smallest n the statement covers)
GAP_THEOREMS = ((0, 4, 1), (1, 10, 2), (2, 49, 4))


@dataclass
class WindowCheck:
    value: int
    window: int
    n_min: int
    counterexample: Optional[int]
    tightest: int

    @property
    def passed(self) -> bool:
        return self.counterexample is None


@dataclass
class GapTheoremResult:
    N: int
    checks: list[WindowCheck]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def tightest(self) -> tuple[int, ...]:
        return tuple(c.tightest for c in self.checks)


def _require_123(table: SgTable) -> None:
    if table.spec != MARK_123:
        raise SpecMismatch(f"window theorems concern {MARK_123}, not {table.spec}")


def verify_gap_theorems(table: SgTable) -> GapTheoremResult:
    """For each n in range: a 0 among SG(n-4..n-1), a 1 among SG(n-10..n-1),
    a 2 among SG(n-49..n-1)."""
    _require_123(table)
    checks = []
    for value, window, n_min in GAP_THEOREMS:
        bad, worst = K.window_check(
            table.data, table.bits, table.N + 1, value, window, n_min - 1
        )
        checks.append(
            WindowCheck(value, window, n_min, None if bad < 0 else int(bad), int(worst))
        )
    return GapTheoremResult(table.N, checks)


@dataclass
class LemmaResult:
    N: int
    counterexample: Optional[int]
    nonvacuous: int  # positions where the hypothesis held

    @property
    def passed(self) -> bool:
        return self.counterexample is None


def verify_lemma_5mod6(table: SgTable) -> LemmaResult:
    """m = 5 (mod 6) with no 2 among SG(m-7..m) forces SG(m) = 0."""
    _require_123(table)
    bad, checked = K.lemma_5mod6(table.data, table.bits, table.N + 1)
    return LemmaResult(table.N, None if bad < 0 else int(bad), int(checked))


# -- conjecture on i-Mark({s},{d}) ---------------------------------------------


def _recurrence(x0: int, s: int, d: int, limit: int) -> list[int]:
    out = []
    while x0 <= limit:
        out.append(x0)
        x0 = d * (x0 + s)
    return out


def conjecture_allowed(s: int, d: int, limit: int) -> dict[str, list[int]]:
    """Named position families allowed to carry SG value 2, each cut at ``limit``."""
    seqs = {"sd": [s * d] if s * d <= limit else []}
    seqs["a"] = _recurrence(2 * d * s, s, d, limit)
    for j in range(1, s):
        seqs[f"b{j}"] = _recurrence(j * d, s, d, limit)
    return seqs


@dataclass
class ConjectureReport:
    s: int
    d: int
    N: int
    allowed: dict[str, list[int]]
    violations: list[int]  # capped at max_violations
    violation_count: int
    twos: int
    diagnostics: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return not self.violations

    def allowed_set(self) -> set[int]:
        return set().union(*self.allowed.values())

    def to_dict(self) -> dict:
        return {
            "s": self.s,
            "d": self.d,
            "N": self.N,
            "holds": self.holds,
            "sg2_count": self.twos,
            "allowed": self.allowed,
            "violation_count": self.violation_count,
            "violations": self.violations,
            "diagnostics": self.diagnostics,
        }

    def to_json(self) -> str:
        return _dumps(self.to_dict())


def check_conjecture(
    spec: GameSpec, table: SgTable, max_violations: int = 1000
) -> ConjectureReport:
    """Positions with SG value 2 that fall outside the conjectured families.

    ``diagnostics`` reports on the 0/1 runs between SG-2 positions; it is
    informational only.
    """
    if len(spec.S) != 1 or len(spec.D) != 1:
        raise PreconditionViolated("conjecture concerns games with |S| = |D| = 1")
    s, d = spec.S[0], spec.D[0]
    if gcd(s, d) != 1:
        raise PreconditionViolated(f"s={s} and d={d} are not coprime")
    if table.spec != spec:
        raise SpecMismatch(f"table is for {table.spec}, not {spec}")
    allowed = conjecture_allowed(s, d, table.N)
    ok = set().union(*allowed.values())
    out = np.empty(max(max_violations, 1) + len(ok), np.int64)
    total = K.positions_equal(table.data, table.bits, table.N + 1, 2, out)
    twos = [int(x) for x in out[: min(total, out.size)]]
    violations = [n for n in twos if n not in ok][:max_violations]
    if total > out.size and len(violations) < max_violations:
        # more SG-2 positions than buffered: rescan without a cap
        out = np.empty(total, np.int64)
        K.positions_equal(table.data, table.bits, table.N + 1, 2, out)
        violations = [int(n) for n in out if int(n) not in ok][:max_violations]
    hits = sum(1 for n in ok if sg(table, n) == 2)
    z, o, interior, off = K.run_stats(table.data, table.bits, table.N + 1, s)
    diag = {
        "longest_run_0": int(z),
        "longest_run_1": int(o),
        "interior_runs": int(interior),
        "interior_runs_not_multiple_of_s": int(off),
    }
    return ConjectureReport(
        s, d, table.N, allowed, violations, int(total) - hits, int(total), diag
    )


# -- oracle vs closed form -----------------------------------------------------


def equivalence_check(
    spec: GameSpec,
    N: int,
    table: Optional[SgTable] = None,
    mem_limit: int = DEFAULT_MEM_LIMIT,
) -> Optional[int]:
    """First position in 0..N where oracle and closed form disagree, or None.

    Solved families compare SG values; the periodic-outcome family compares
    P/N outcomes.
    """
    tag = classify_family(spec)
    if not isinstance(tag, SOLVED_SG + (PeriodicOutcome,)):
        raise SpecMismatch(f"{spec} belongs to no solved family")
    if table is None or table.N < N:
        table = build_table(spec, N, mem_limit, base=table)
    oracle = table.values(0, N + 1).tolist()
    if isinstance(tag, PeriodicOutcome):
        t, d, P = tag.t, tag.d, Outcome.P
        for n, v in enumerate(oracle):
            if (v == 0) != (outcome_periodic(n, t, d) is P):
                return n
        return None
    lay = layout_for(tag)
    for n, v in enumerate(oracle):
        if _evaluate(lay, n) != v:
            return n
    return None


# -- export ------------------------------------------------------------------


def export_sequence(
    table: SgTable, start: int, stop: int, fmt: str = "csv"
) -> Iterator[str]:
    """Lines (without newline) for positions start..stop inclusive."""
    if fmt not in ("csv", "json"):
        raise ValueError(f"unknown format {fmt!r}")
    if start < 0:
        raise OutOfRange(f"start {start} is negative")
    if start <= stop and stop > table.N:
        raise OutOfRange(f"position {stop} beyond table range 0..{table.N}")
    if fmt == "csv":
        yield "n,sg"
    chunk = 1 << 16
    for lo in range(start, stop + 1, chunk):
        hi = min(lo + chunk, stop + 1)
        for n, v in zip(range(lo, hi), table.values(lo, hi).tolist()):
            yield f"{n},{v}" if fmt == "csv" else f'{{"n": {n}, "sg": {v}}}'
