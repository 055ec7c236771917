"""Game specifications, move generation and family classification."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .errors import EmptySet, InvalidDivisor, InvalidSubtraction, Overflow

# pile sizes must stay representable as unsigned 63-bit integers
MAX_PILE = 2**63 - 1


@dataclass(frozen=True)
class GameSpec:
    """Rule set of i-Mark(S, D): subtract s in S, or divide by d in D when d | n."""

    S: tuple[int, ...]
    D: tuple[int, ...]

    def __post_init__(self):
        S = tuple(sorted(set(int(s) for s in self.S)))
        D = tuple(sorted(set(int(d) for d in self.D)))
        if not S or not D:
            raise EmptySet(f"S and D must be nonempty (S={S}, D={D})")
        if S[0] < 1:
            raise InvalidSubtraction(f"subtraction amounts must be >= 1, got {S[0]}")
        if D[0] < 2:
            raise InvalidDivisor(f"divisors must be >= 2, got {D[0]}")
        if S[-1] > MAX_PILE or D[-1] > MAX_PILE:
            raise Overflow("set element exceeds 63 bits")
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "D", D)

    def __str__(self):
        fmt = lambda xs: "{" + ",".join(map(str, xs)) + "}"
        return f"i-Mark({fmt(self.S)},{fmt(self.D)})"

    def to_dict(self) -> dict:
        return {"S": list(self.S), "D": list(self.D)}


def validate_spec(S: Iterable[int], D: Iterable[int]) -> GameSpec:
    return GameSpec(tuple(S), tuple(D))


def check_pile(n: int) -> int:
    if n < 0:
        raise ValueError(f"pile size must be nonnegative, got {n}")
    if n > MAX_PILE:
        raise Overflow(f"pile size {n} exceeds 63 bits")
    return n


def options(spec: GameSpec, n: int) -> list[int]:
    """Sorted, deduplicated positions reachable from pile ``n`` in one move."""
    check_pile(n)
    out = {n - s for s in spec.S if s <= n}
    if n > 0:
        out.update(n // d for d in spec.D if n % d == 0)
    return sorted(out)


def is_terminal(spec: GameSpec, n: int) -> bool:
    return not options(spec, n)


# -- family classification -------------------------------------------------


@dataclass(frozen=True)
class Theorem1:
    """S = [1, t-1], D = {d}, d = 1 (mod t)."""

    t: int
    d: int


@dataclass(frozen=True)
class Theorem2:
    """S = {2}, D = {k}, k = 3 (mod 4)."""

    k: int


@dataclass(frozen=True)
class Theorem3:
    """S = {2}, D = {k}, k = 1 (mod 4), k > 1."""

    k: int


@dataclass(frozen=True)
class PeriodicOutcome:
    """S = [1, t-1], D = {d}, d != 1 (mod t): only outcomes are known in closed form."""

    t: int
    d: int


@dataclass(frozen=True)
class General:
    pass


FamilyTag = Union[Theorem1, Theorem2, Theorem3, PeriodicOutcome, General]

SOLVED_SG = (Theorem1, Theorem2, Theorem3)


def classify_family(spec: GameSpec) -> FamilyTag:
    if len(spec.D) != 1:
        return General()
    d = spec.D[0]
    S = spec.S
    if S == tuple(range(1, len(S) + 1)):
        t = len(S) + 1
        if d % t == 1:
            return Theorem1(t, d)
        return PeriodicOutcome(t, d)
    if S == (2,):
        if d % 4 == 3:
            return Theorem2(d)
        if d % 4 == 1:
            return Theorem3(d)
    return General()


def spec_for(tag: FamilyTag) -> GameSpec:
    """Inverse of :func:`classify_family` for solved tags."""
    if isinstance(tag, (Theorem1, PeriodicOutcome)):
        return GameSpec(tuple(range(1, tag.t)), (tag.d,))
    if isinstance(tag, (Theorem2, Theorem3)):
        return GameSpec((2,), (tag.k,))
    raise ValueError("General family has no canonical spec")
