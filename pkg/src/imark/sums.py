"""Sums of i-Mark games via the XOR rule, plus a brute-force product-game oracle."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import prod
from operator import xor
from typing import Iterable, Optional, Sequence

from .closed_form import sg_closed
from .errors import OutOfRange, ResourceLimit
from .game import GameSpec, check_pile, options
from .oracle import DEFAULT_MEM_LIMIT, Outcome, SgTable, build_table, mex, sg

PRODUCT_LIMIT = 10**6


@dataclass(frozen=True)
class SumPosition:
    components: tuple[tuple[GameSpec, int], ...]

    def __post_init__(self):
        comps = tuple((spec, int(n)) for spec, n in self.components)
        if not comps:
            raise ValueError("a sum needs at least one component")
        for _, n in comps:
            check_pile(n)
        object.__setattr__(self, "components", comps)

    @property
    def piles(self) -> tuple[int, ...]:
        return tuple(n for _, n in self.components)

    def after(self, move: "Move") -> "SumPosition":
        comps = list(self.components)
        spec, n = comps[move.index]
        if move.target not in options(spec, n):
            raise ValueError(f"illegal move {n} -> {move.target} in component {move.index}")
        comps[move.index] = (spec, move.target)
        return SumPosition(tuple(comps))

    def moves(self) -> list["Move"]:
        return [
            Move(i, w) for i, (spec, n) in enumerate(self.components) for w in options(spec, n)
        ]


@dataclass(frozen=True)
class Move:
    index: int
    target: int


class SgSource:
    """Per-component SG lookup: closed form when the game is solved, else a table.

    Tables are built on demand (growing to cover the requested pile) unless
    ``build`` is false, in which case positions past the supplied tables raise
    :class:`OutOfRange`.
    """

    def __init__(
        self,
        tables: Iterable[SgTable] = (),
        build: bool = True,
        mem_limit: int = DEFAULT_MEM_LIMIT,
        force_oracle: bool = False,
    ):
        self.tables = {t.spec: t for t in tables}
        self.build = build
        self.mem_limit = mem_limit
        self.force_oracle = force_oracle

    def __call__(self, spec: GameSpec, n: int) -> int:
        if not self.force_oracle:
            v = sg_closed(spec, n)
            if v is not None:
                return v
        table = self.tables.get(spec)
        if table is None or table.N < n:
            if not self.build:
                raise OutOfRange(f"no closed form or table covering {spec} at {n}")
            N = max(n, 2 * table.N if table else 1024)
            try:
                table = build_table(spec, N, self.mem_limit, base=table)
            except ResourceLimit:
                table = build_table(spec, n, self.mem_limit, base=table)
            self.tables[spec] = table
        return sg(table, n)


def sum_sg(values: Iterable[int]) -> int:
    return reduce(xor, values, 0)


def evaluate(position: SumPosition, source: Optional[SgSource] = None) -> tuple[int, Outcome]:
    source = source or SgSource()
    x = sum_sg(source(spec, n) for spec, n in position.components)
    return x, Outcome.P if x == 0 else Outcome.N


def winning_move(position: SumPosition, source: Optional[SgSource] = None) -> Optional[Move]:
    """A move to a zero-XOR position (lowest component, then smallest pile), if any."""
    source = source or SgSource()
    values = [source(spec, n) for spec, n in position.components]
    total = sum_sg(values)
    if total == 0:
        return None
    for i, (spec, n) in enumerate(position.components):
        want = total ^ values[i]
        for w in options(spec, n):
            if source(spec, w) == want:
                return Move(i, w)
    raise AssertionError("nonzero XOR without a winning move: SG values are inconsistent")


def sum_oracle_small(position: SumPosition, caps: Optional[Sequence[int]] = None) -> int:
    """SG value of the sum by mex over the whole product game graph.

    Every product position with coordinates bounded by ``caps`` (default: the
    piles themselves) is evaluated in mixed-radix order, which is topological
    because each move lowers exactly one coordinate.
    """
    specs = [spec for spec, _ in position.components]
    piles = position.piles
    caps = list(piles if caps is None else caps)
    if len(caps) != len(piles) or any(c < n for c, n in zip(caps, piles)):
        raise ValueError("caps must cover every pile")
    size = prod(c + 1 for c in caps)
    if size > PRODUCT_LIMIT:
        raise ResourceLimit(f"product graph has {size} positions (limit {PRODUCT_LIMIT})")
    radix = [1] * len(caps)
    for i in range(len(caps) - 2, -1, -1):
        radix[i] = radix[i + 1] * (caps[i + 1] + 1)
    opts = [[options(spec, n) for n in range(c + 1)] for spec, c in zip(specs, caps)]
    values = [0] * size
    coords = [0] * len(caps)
    for idx in range(size):
        seen = set()
        for i, c in enumerate(coords):
            base = idx - c * radix[i]
            for w in opts[i][c]:
                seen.add(values[base + w * radix[i]])
        values[idx] = mex(seen)
        # increment mixed-radix counter
        for i in range(len(caps) - 1, -1, -1):
            if coords[i] < caps[i]:
                coords[i] += 1
                break
            coords[i] = 0
    return values[sum(n * r for n, r in zip(piles, radix))]
