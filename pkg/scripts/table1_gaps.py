"""Maximum gap between consecutive occurrences of each SG value in i-Mark({1},{2,3}).

    python scripts/table1_gaps.py 1e8
    python scripts/table1_gaps.py 2^31-1 --cache mark123.imrk
"""

import argparse
import sys
import time

from imark.analysis import MARK_123, TABLE1_MAX_GAPS, gap_report
from imark.cli import parse_nonneg
from imark.oracle import load_or_build

p = argparse.ArgumentParser()
p.add_argument("N", type=parse_nonneg)
p.add_argument("--cache")
args = p.parse_args()

t0 = time.perf_counter()
table, how = load_or_build(MARK_123, args.N, args.cache, mem_limit=1 << 31)
print(f"table ({how}) in {time.perf_counter() - t0:.1f}s", file=sys.stderr)

report = gap_report(table)
print(f"{'value':>5} {'max gap':>8} {'ends at':>12} {'count':>12} {'reference':>9}")
for e, ref in zip(report.per_value, TABLE1_MAX_GAPS):
    print(f"{e.value:>5} {e.max_gap:>8} {e.max_gap_end:>12} {e.count:>12} {ref:>9}")
