"""Exit criteria. Each check records one PASS/FAIL line, printed at the end of the run.

Set IMARK_FULL_TABLE1=1 to also scan i-Mark({1},{2,3}) up to 2^31 - 1
(about 512 MB and a minute or two).
"""

import io
import os
import random
import time

import pytest

from imark.analysis import (
    MARK_123,
    TABLE1_MAX_GAPS,
    check_conjecture,
    equivalence_check,
    gap_report,
    verify_gap_theorems,
    verify_lemma_5mod6,
)
from imark.closed_form import sg_theorem1, theorem1_layout, thresholds
from imark.errors import CorruptFile
from imark.game import PeriodicOutcome, Theorem1, Theorem2, Theorem3, spec_for, validate_spec
from imark.oracle import build_table, load_table, save_table
from imark.sums import SumPosition, sum_oracle_small, sum_sg

RESULTS = []

# first positions where the largest gaps of SG 0, 1, 2 are reached
GAP_ATTAINED_AT = {0: 23, 1: 6981, 2: 13965}


def record(criterion, ok, detail):
    RESULTS.append(f"[{criterion}] {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, detail


@pytest.fixture(scope="module")
def table_1e7():
    return build_table(MARK_123, 10**7)


@pytest.mark.parametrize("t, d", [(2, 3), (3, 4), (3, 7), (4, 5), (5, 6), (5, 11)])
def test_c1_theorem1_equivalence(t, d):
    bad = equivalence_check(spec_for(Theorem1(t, d)), 10**6)
    record(1, bad is None, f"Theorem1 t={t} d={d} N=10^6 first mismatch={bad}")


@pytest.mark.parametrize(
    "tag", [Theorem2(k) for k in (3, 7, 11, 15)] + [Theorem3(k) for k in (5, 9, 13, 17)], ids=str
)
def test_c2_odd_k_equivalence(tag):
    bad = equivalence_check(spec_for(tag), 10**6)
    record(2, bad is None, f"{tag} N=10^6 first mismatch={bad}")


@pytest.mark.parametrize("t, d", [(2, 2), (3, 2), (3, 3), (4, 6), (5, 7)])
def test_c3_periodic_outcome(t, d):
    spec = spec_for(PeriodicOutcome(t, d))
    bad = equivalence_check(spec, 10**6)
    M = 10**4
    vals = build_table(spec, M).values().tolist()
    observed = {n for n, v in enumerate(vals) if v == 0}
    formula = {q * t for q in range(d)} | {q * t + 1 for q in range(d, M // t + 1)}
    formula = {n for n in formula if n <= M}
    ok = bad is None and observed == formula
    record(3, ok, f"t={t} d={d} outcomes N=10^6 mismatch={bad}; P-set equal at 10^4: {observed == formula}")


def test_c4_table1_desk_scale(table_1e7):
    report = gap_report(table_1e7)
    gaps = report.max_gaps()
    within = all(g <= c for g, c in zip(gaps, TABLE1_MAX_GAPS))
    attained = gaps[:3] == TABLE1_MAX_GAPS[:3]
    at = {v: report.per_value[v].max_gap_end for v in range(3)}
    ok = within and attained and at == GAP_ATTAINED_AT
    record(4, ok, f"N=10^7 max gaps {gaps} <= {TABLE1_MAX_GAPS}; 0/1/2 first attained ending at {at}")


@pytest.mark.skipif(not os.environ.get("IMARK_FULL_TABLE1"), reason="set IMARK_FULL_TABLE1=1")
def test_c4_table1_full():
    report = gap_report(build_table(MARK_123, 2**31 - 1))
    record(4, report.max_gaps() == TABLE1_MAX_GAPS, f"N=2^31-1 max gaps {report.max_gaps()}")


def test_c5_window_theorems(table_1e7):
    res = verify_gap_theorems(table_1e7)
    lem = verify_lemma_5mod6(table_1e7)
    ok = res.passed and lem.passed
    cex = [c.counterexample for c in res.checks] + [lem.counterexample]
    record(5, ok, f"N=10^7 windows (4,10,49) and lemma; counterexamples {cex}; tightest {res.tightest()}")


@pytest.mark.parametrize("s, d", [(1, 2), (1, 3), (2, 3), (2, 5), (3, 4), (3, 5), (4, 5)])
def test_c6_conjecture(s, d):
    spec = validate_spec([s], [d])
    rep = check_conjecture(spec, build_table(spec, 10**6))
    first = rep.violations[:3]
    record(6, rep.holds, f"conjecture s={s} d={d} N=10^6 violations={rep.violation_count} first={first}")


@pytest.mark.parametrize("tag", [Theorem3(5), Theorem2(3)], ids=str)
def test_c6_conjecture_matches_theorems(tag):
    k, N = tag.k, 10**6
    spec = validate_spec([2], [k])
    rep = check_conjecture(spec, build_table(spec, N))
    theorem = {v for _, v in thresholds(tag, N)}
    if isinstance(tag, Theorem3):
        # b^1 runs k, k(k+2), ... which is exactly a_m
        allowed = rep.allowed_set()
    else:
        # for k = 3 (mod 4) the b^1 family carries no SG-2 position; compare the rest
        allowed = set(rep.allowed["sd"]) | set(rep.allowed["a"])
    vals = build_table(spec, N).values()
    observed = {int(n) for n in (vals == 2).nonzero()[0]}
    ok = allowed == theorem and observed == theorem and rep.holds
    record(6, ok, f"{tag} allowed set vs thresholds up to 10^6: {allowed == theorem}; SG-2 set equal: {observed == theorem}")


def test_c7_xor_theorem():
    rng = random.Random(20161)
    specs = [validate_spec([1], [2, 3]), validate_spec([2], [3]), validate_spec([1], [3])]
    tables = {s: build_table(s, 60).values().tolist() for s in specs}
    bad = []
    for _ in range(100):
        comps = tuple((rng.choice(specs), rng.randint(0, 60)) for _ in range(rng.randint(2, 3)))
        pos = SumPosition(comps)
        want = sum_sg(tables[s][n] for s, n in comps)
        if sum_oracle_small(pos) != want:
            bad.append(pos.piles)
    record(7, not bad, f"100 random sums, product-graph mex vs XOR mismatches={bad[:3]}")


def test_c8_performance():
    times = []
    for _ in range(5):
        theorem1_layout.cache_clear()
        t0 = time.perf_counter()
        sg_theorem1(10**17, 5, 11)
        times.append(time.perf_counter() - t0)
    cold = sorted(times)[2]
    build_table(MARK_123, 1000)  # JIT warm-up
    t0 = time.perf_counter()
    build_table(MARK_123, 10**7)
    rate = 10**7 / (time.perf_counter() - t0)
    ok = cold < 1e-3 and rate >= 1e6
    record(8, ok, f"sg_theorem1(10^17) median cold call {cold * 1e6:.0f} us; oracle {rate / 1e6:.1f}M positions/s")


def test_c9_persistence(tmp_path):
    t = build_table(MARK_123, 10**6)
    path = tmp_path / "t.imrk"
    save_table(t, path)
    same = load_table(path) == t
    raw = path.read_bytes()
    caught = []
    mid = len(raw) // 2
    for name, blob in [
        ("truncated mid-file", raw[:mid]),
        ("payload byte flipped mid-file", raw[:mid] + bytes([raw[mid] ^ 0xFF]) + raw[mid + 1:]),
        ("bad magic", b"XXXX" + raw[4:]),
        ("version 99", raw[:4] + bytes([99]) + raw[5:]),
    ]:
        try:
            load_table(io.BytesIO(blob))
        except CorruptFile:
            caught.append(name)
    ok = same and len(caught) == 4
    record(9, ok, f"round-trip 10^6 equal: {same}; corruption detected: {caught}")
