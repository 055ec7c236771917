"""Check the SG-2 families of i-Mark({s},{d}) over all coprime pairs in a box."""

import argparse
from math import gcd

from imark.analysis import check_conjecture
from imark.cli import parse_nonneg
from imark.game import validate_spec
from imark.oracle import build_table

p = argparse.ArgumentParser()
p.add_argument("--max-s", type=int, default=6)
p.add_argument("--max-d", type=int, default=12)
p.add_argument("-N", type=parse_nonneg, default=10**6)
args = p.parse_args()

print("s,d,sg2_count,violations,first_violation")
for s in range(1, args.max_s + 1):
    for d in range(2, args.max_d + 1):
        if gcd(s, d) != 1:
            continue
        spec = validate_spec([s], [d])
        rep = check_conjecture(spec, build_table(spec, args.N))
        first = rep.violations[0] if rep.violations else ""
        print(f"{s},{d},{rep.twos},{rep.violation_count},{first}")
