"""Definitional SG computation: mex dynamic programming over a bit-packed table."""

from __future__ import annotations

import enum
import os
import struct
from typing import Iterable, Optional

import numpy as np

from . import _kernels as K
from .errors import CorruptFile, OutOfRange, ResourceLimit, SpecMismatch
from .game import GameSpec, check_pile, options

DEFAULT_MEM_LIMIT = 1 << 30

MAGIC = b"IMRK"
VERSION = 1


class Outcome(enum.Enum):
    P = "P"
    N = "N"

    def __str__(self):
        return self.value


def mex(values: Iterable[int]) -> int:
    present = set(values)
    m = 0
    while m in present:
        m += 1
    return m


def sg_bound(spec: GameSpec) -> int:
    """Upper bound on any SG value: a position has at most |S| + |D| options."""
    return len(spec.S) + len(spec.D)


def bits_for(spec: GameSpec) -> int:
    bound = sg_bound(spec)
    if bound <= 3:
        return 2
    if bound <= 15:
        return 4
    if bound <= 255:
        return 8
    raise ResourceLimit(f"SG bound {bound} does not fit the 8-bit packed format")


def packed_size(N: int, bits: int) -> int:
    return ((N + 1) * bits + 7) // 8


class SgTable:
    """SG values of positions 0..N of one game, packed ``bits`` per value."""

    def __init__(self, spec: GameSpec, N: int, bits: int, data: np.ndarray):
        self.spec = spec
        self.N = N
        self.bits = bits
        self.data = data

    def __repr__(self):
        return f"SgTable({self.spec}, N={self.N}, bits={self.bits})"

    def __len__(self):
        return self.N + 1

    def __eq__(self, other):
        if not isinstance(other, SgTable):
            return NotImplemented
        return (
            self.spec == other.spec
            and self.N == other.N
            and self.bits == other.bits
            and np.array_equal(self.data, other.data)
        )

    def __getitem__(self, n: int) -> int:
        return sg(self, n)

    def values(self, start: int = 0, stop: Optional[int] = None) -> np.ndarray:
        """Unpacked uint8 copy of values[start:stop]."""
        stop = self.N + 1 if stop is None else min(stop, self.N + 1)
        return K.unpack(self.data, self.bits, start, stop)

    @property
    def nbytes(self) -> int:
        return self.data.nbytes


def _arrays(spec: GameSpec):
    return np.array(spec.S, np.int64), np.array(spec.D, np.int64)


def build_table(
    spec: GameSpec,
    N: int,
    mem_limit: int = DEFAULT_MEM_LIMIT,
    base: Optional[SgTable] = None,
) -> SgTable:
    """Build the SG table of ``spec`` on 0..N in one ascending pass.

    When ``base`` is given its prefix is reused and only positions beyond
    ``base.N`` are computed.
    """
    check_pile(N)
    bits = bits_for(spec)
    size = packed_size(N, bits)
    if size > mem_limit:
        raise ResourceLimit(
            f"table for N={N} needs {size} bytes, over the {mem_limit}-byte budget"
        )
    start = 0
    data = np.zeros(size, np.uint8)
    if base is not None:
        if base.spec != spec:
            raise SpecMismatch(f"cannot extend a table of {base.spec} with {spec}")
        if base.N >= N:
            return base
        data[: base.data.size] = base.data
        start = base.N + 1
    subs, divs = _arrays(spec)
    K.fill(data, bits, start, N + 1, subs, divs, sg_bound(spec))
    return SgTable(spec, N, bits, data)


def sg(table: SgTable, n: int) -> int:
    if not 0 <= n <= table.N:
        raise OutOfRange(f"position {n} outside table range 0..{table.N}")
    pos = n * table.bits
    return int((table.data[pos >> 3] >> (pos & 7)) & ((1 << table.bits) - 1))


def outcome(table: SgTable, n: int) -> Outcome:
    return Outcome.P if sg(table, n) == 0 else Outcome.N


def first_inconsistency(table: SgTable) -> Optional[int]:
    """Position where the stored value differs from mex over its options, if any."""
    subs, divs = _arrays(table.spec)
    n = K.first_inconsistent(
        table.data, table.bits, table.N + 1, subs, divs, sg_bound(table.spec)
    )
    return None if n < 0 else int(n)


def spot_check(table: SgTable, samples: int = 1000, seed: int = 0) -> Optional[int]:
    """Recompute mex at random positions using the pure-Python move generator."""
    rng = np.random.default_rng(seed)
    ns = rng.integers(0, table.N + 1, size=min(samples, table.N + 1))
    for n in sorted(int(x) for x in ns):
        want = mex(sg(table, w) for w in options(table.spec, n))
        if sg(table, n) != want:
            return n
    return None


# -- persistence -------------------------------------------------------------

_HEAD = struct.Struct("<4sBBII")


def save_table(table: SgTable, destination) -> None:
    """Write ``table`` in the IMRK cache format to a path or binary file object."""
    spec = table.spec
    header = _HEAD.pack(MAGIC, VERSION, table.bits, len(spec.S), len(spec.D))
    elems = struct.pack(f"<{len(spec.S) + len(spec.D)}Q", *spec.S, *spec.D)
    payload = table.data[: packed_size(table.N, table.bits)].tobytes()
    blob = header + elems + struct.pack("<Q", table.N) + payload
    if hasattr(destination, "write"):
        destination.write(blob)
        return
    tmp = f"{destination}.tmp"
    with open(tmp, "wb") as fh:
        fh.write(blob)
    os.replace(tmp, destination)


def read_header(raw: bytes) -> tuple[GameSpec, int, int, int]:
    """Parse the header; returns (spec, N, bits, payload offset)."""
    if len(raw) < _HEAD.size:
        raise CorruptFile("file shorter than header")
    magic, version, bits, ns, nd = _HEAD.unpack_from(raw, 0)
    if magic != MAGIC:
        raise CorruptFile(f"bad magic {magic!r}")
    if version != VERSION:
        raise CorruptFile(f"unsupported version {version}")
    if bits not in (2, 4, 8):
        raise CorruptFile(f"bad bits_per_value {bits}")
    off = _HEAD.size
    if len(raw) < off + 8 * (ns + nd) + 8:
        raise CorruptFile("truncated header")
    elems = struct.unpack_from(f"<{ns + nd}Q", raw, off)
    off += 8 * (ns + nd)
    (N,) = struct.unpack_from("<Q", raw, off)
    off += 8
    S, D = elems[:ns], elems[ns:]
    if list(S) != sorted(set(S)) or list(D) != sorted(set(D)):
        raise CorruptFile("set elements not strictly ascending")
    try:
        spec = GameSpec(S, D)
        check_pile(N)
    except Exception as exc:
        raise CorruptFile(f"invalid header: {exc}") from exc
    if bits != bits_for(spec):
        raise CorruptFile(f"bits_per_value {bits} inconsistent with {spec}")
    return spec, N, bits, off


def load_table(source, verify: bool = True, mem_limit: int = DEFAULT_MEM_LIMIT) -> SgTable:
    """Read a table written by :func:`save_table`.

    With ``verify`` every stored value is rechecked against the mex rule, so
    flipped payload bits are reported as :class:`CorruptFile` too.
    """
    if hasattr(source, "read"):
        raw = source.read()
    else:
        with open(source, "rb") as fh:
            raw = fh.read()
    spec, N, bits, off = read_header(raw)
    size = packed_size(N, bits)
    if size > mem_limit:
        raise ResourceLimit(f"cached table needs {size} bytes, over budget")
    if len(raw) - off != size:
        raise CorruptFile(f"payload is {len(raw) - off} bytes, expected {size}")
    data = np.frombuffer(raw, np.uint8, count=size, offset=off).copy()
    table = SgTable(spec, N, bits, data)
    if verify:
        bad = first_inconsistency(table)
        if bad is not None:
            raise CorruptFile(f"value at position {bad} violates the mex rule")
    return table


def load_or_build(
    spec: GameSpec, N: int, path, mem_limit: int = DEFAULT_MEM_LIMIT
) -> tuple[SgTable, str]:
    """Reuse the cache at ``path`` if it covers N, extending and rewriting it otherwise.

    Returns the table and one of "cache", "extended", "built".
    """
    if path is not None and os.path.exists(path):
        cached = load_table(path, mem_limit=mem_limit)
        if cached.spec != spec:
            raise SpecMismatch(f"cache {path} holds {cached.spec}, not {spec}")
        if cached.N >= N:
            return cached, "cache"
        table = build_table(spec, N, mem_limit, base=cached)
        save_table(table, path)
        return table, "extended"
    table = build_table(spec, N, mem_limit)
    if path is not None:
        save_table(table, path)
    return table, "built"
