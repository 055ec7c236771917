"""CSV of the three characteristic SG patterns (solved families) for plotting.

Writes one file per game into the output directory.
"""

import argparse
import pathlib

from imark.analysis import export_sequence
from imark.game import validate_spec
from imark.oracle import build_table

GAMES = {
    "t5_d11": ([1, 2, 3, 4], [11], 400),
    "k7": ([2], [7], 700),
    "k5": ([2], [5], 300),
}

p = argparse.ArgumentParser()
p.add_argument("outdir", type=pathlib.Path)
args = p.parse_args()
args.outdir.mkdir(parents=True, exist_ok=True)

for name, (S, D, N) in GAMES.items():
    table = build_table(validate_spec(S, D), N)
    path = args.outdir / f"{name}.csv"
    path.write_text("".join(line + "\n" for line in export_sequence(table, 0, N)))
    print(path)
