"""Logarithmic-time SG evaluators for the solved i-Mark families.

Each family is described by an ascending list of threshold positions. Between
consecutive thresholds the SG sequence repeats a fixed block, so a value is
``block[(n - start) % len(block)]`` once the enclosing interval is known. The
thresholds come from exact integer recurrences, generated once per game and
searched by bisection.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Union

from .errors import Overflow, PreconditionViolated
from .game import (
    MAX_PILE,
    FamilyTag,
    GameSpec,
    PeriodicOutcome,
    Theorem1,
    Theorem2,
    Theorem3,
    classify_family,
)
from .oracle import Outcome

# largest pile the evaluators accept; thresholds are generated past it
EVAL_LIMIT = 2**62

ZZOO = (0, 0, 1, 1)
OZZO = (1, 0, 0, 1)


def _check_t_d(t: int, d: int) -> None:
    if t < 2 or d < 2:
        raise PreconditionViolated(f"need t, d >= 2 (t={t}, d={d})")
    if d % t != 1:
        raise PreconditionViolated(f"need d = 1 (mod t) (t={t}, d={d})")


def alpha(m: int, t: int, d: int) -> int:
    """d + d^2 + ... + d^(m+1)."""
    _check_t_d(t, d)
    if m < 0:
        raise PreconditionViolated("m must be nonnegative")
    v = (d ** (m + 2) - d) // (d - 1)
    if v > MAX_PILE:
        raise Overflow(f"alpha({m}) exceeds 63 bits")
    return v


def beta(m: int, t: int, d: int) -> int:
    """d + ... + d^m + t * d^(m+1)."""
    _check_t_d(t, d)
    if m < 0:
        raise PreconditionViolated("m must be nonnegative")
    v = t * d ** (m + 1) + (d ** (m + 1) - d) // (d - 1)
    if v > MAX_PILE:
        raise Overflow(f"beta({m}) exceeds 63 bits")
    return v


@dataclass(frozen=True)
class Layout:
    """Thresholds of one solved game and the blocks repeating between them.

    ``blocks[0]`` covers [0, values[0] - 1]; ``blocks[i + 1]`` covers the
    interval that starts right after ``values[i]``.
    """

    values: tuple[int, ...]
    labels: tuple[str, ...]
    tops: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]
    block_labels: tuple[str, ...]


@dataclass(frozen=True)
class Location:
    label: str
    start: int
    stop: int  # inclusive
    offset: int


@lru_cache(maxsize=None)
def theorem1_layout(t: int, d: int) -> Layout:
    _check_t_d(t, d)
    a_block = tuple(range(t))
    b_block = tuple(range(1, t - 1)) + (0, t - 1)
    values, labels, tops = [], [], []
    blocks, block_labels = [a_block], ["A_0"]
    a, b, m = d, t * d, 0
    while True:
        # for t = 2 the first B value is 0, so alpha_m (m >= 1) continues the 0/1 alternation
        values += [a, b]
        labels += [f"alpha_{m}", f"beta_{m}"]
        tops += [1 if t == 2 and m >= 1 else t, t]
        blocks += [b_block, a_block]
        block_labels += [f"B_{m}", f"A_{m + 1}"]
        if b > EVAL_LIMIT:
            break
        a, b, m = d * (a + 1), d * (b + 1), m + 1
    return Layout(tuple(values), tuple(labels), tuple(tops), tuple(blocks), tuple(block_labels))


def _check_k(k: int, residue: int) -> None:
    if k < 3 or k % 4 != residue:
        raise PreconditionViolated(f"need k = {residue} (mod 4), k > 1 (k={k})")


@lru_cache(maxsize=None)
def theorem2_layout(k: int) -> Layout:
    _check_k(k, 3)
    values, labels = [2 * k], ["b"]
    blocks, block_labels = [ZZOO, OZZO], ["I_0", "I_1"]
    c, m = 4 * k, 0
    while True:
        values.append(c)
        labels.append(f"c_{m}")
        blocks.append(ZZOO if m % 2 == 0 else OZZO)
        block_labels.append(f"I_{m + 2}")
        if c > EVAL_LIMIT:
            break
        c, m = k * (c + 2), m + 1
    tops = (2,) * len(values)
    return Layout(tuple(values), tuple(labels), tops, tuple(blocks), tuple(block_labels))


@lru_cache(maxsize=None)
def theorem3_layout(k: int) -> Layout:
    _check_k(k, 1)
    values = [k, 2 * k, 4 * k]
    labels = ["a_0", "b", "c_0"]
    blocks = [ZZOO, OZZO, ZZOO, OZZO]
    block_labels = ["X", "Y", "Z", "A_1"]
    a, c, m = k * (k + 2), k * (4 * k + 2), 1
    while values[-1] <= EVAL_LIMIT:
        values += [a, c]
        labels += [f"a_{m}", f"c_{m}"]
        blocks += [OZZO, OZZO]
        block_labels += [f"C_{m}", f"A_{m + 1}"]
        a, c, m = k * (a + 2), k * (c + 2), m + 1
    tops = (2,) * len(values)
    return Layout(tuple(values), tuple(labels), tops, tuple(blocks), tuple(block_labels))


def layout_for(tag: FamilyTag) -> Layout:
    if isinstance(tag, Theorem1):
        return theorem1_layout(tag.t, tag.d)
    if isinstance(tag, Theorem2):
        return theorem2_layout(tag.k)
    if isinstance(tag, Theorem3):
        return theorem3_layout(tag.k)
    raise PreconditionViolated(f"no SG closed form for {tag}")


def _check_n(n: int) -> None:
    if n < 0:
        raise ValueError(f"pile size must be nonnegative, got {n}")
    if n > EVAL_LIMIT:
        raise Overflow(f"pile size {n} exceeds the evaluator limit 2^62")


def _evaluate(lay: Layout, n: int) -> int:
    _check_n(n)
    i = bisect_right(lay.values, n)
    if i and lay.values[i - 1] == n:
        return lay.tops[i - 1]
    start = lay.values[i - 1] + 1 if i else 0
    block = lay.blocks[i]
    return block[(n - start) % len(block)]


def locate(tag: FamilyTag, n: int) -> Location:
    """Interval (or threshold) of the solved layout containing pile ``n``."""
    lay = layout_for(tag)
    _check_n(n)
    i = bisect_right(lay.values, n)
    if i and lay.values[i - 1] == n:
        return Location(lay.labels[i - 1], n, n, 0)
    start = lay.values[i - 1] + 1 if i else 0
    return Location(lay.block_labels[i], start, lay.values[i] - 1, n - start)


def sg_theorem1(n: int, t: int, d: int) -> int:
    return _evaluate(theorem1_layout(t, d), n)


def sg_theorem2(n: int, k: int) -> int:
    return _evaluate(theorem2_layout(k), n)


def sg_theorem3(n: int, k: int) -> int:
    return _evaluate(theorem3_layout(k), n)


def outcome_periodic(n: int, t: int, d: int) -> Outcome:
    """P-positions are {qt : 0 <= q < d} and {qt + 1 : q >= d}."""
    if t < 2 or d < 2:
        raise PreconditionViolated(f"need t, d >= 2 (t={t}, d={d})")
    if d % t == 1:
        raise PreconditionViolated("outcome formula needs d != 1 (mod t)")
    if n < 0:
        raise ValueError(f"pile size must be nonnegative, got {n}")
    q, r = divmod(n, t)
    if (r == 0 and q < d) or (r == 1 and q >= d):
        return Outcome.P
    return Outcome.N


def thresholds(tag: FamilyTag, limit: int) -> list[tuple[str, int]]:
    lay = layout_for(tag)
    return [(lab, v) for lab, v in zip(lay.labels, lay.values) if v <= limit]


def top_positions(tag: FamilyTag, limit: int) -> list[int]:
    """Positions <= limit holding the family's largest SG value (t, or 2)."""
    lay = layout_for(tag)
    top = max(lay.tops)
    return [v for v, s in zip(lay.values, lay.tops) if v <= limit and s == top]


def sg_closed(game: Union[GameSpec, FamilyTag], n: int) -> Optional[int]:
    """SG value from the matching closed form, or None if the game is not solved."""
    tag = classify_family(game) if isinstance(game, GameSpec) else game
    if isinstance(tag, Theorem1):
        return sg_theorem1(n, tag.t, tag.d)
    if isinstance(tag, Theorem2):
        return sg_theorem2(n, tag.k)
    if isinstance(tag, Theorem3):
        return sg_theorem3(n, tag.k)
    return None


def outcome_closed(game: Union[GameSpec, FamilyTag], n: int) -> Optional[Outcome]:
    tag = classify_family(game) if isinstance(game, GameSpec) else game
    if isinstance(tag, PeriodicOutcome):
        return outcome_periodic(n, tag.t, tag.d)
    v = sg_closed(tag, n)
    if v is None:
        return None
    return Outcome.P if v == 0 else Outcome.N
