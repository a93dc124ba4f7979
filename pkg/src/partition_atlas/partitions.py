"""Integer partitions, enumeration of Par(n) and elementary unit transfers."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property, total_ordering
from typing import Iterator, NamedTuple


class IllegalTransferError(ValueError):
    """Raised when a transfer is not legal for the partition it is applied to."""


@total_ordering
@dataclass(frozen=True)
class Partition:
    """A weakly decreasing tuple of positive parts.

    Ordering follows the canonical vertex order: ``a < b`` means ``a`` comes
    first, i.e. ``a.parts`` is lexicographically *larger*. Sorting a list of
    partitions therefore reproduces :func:`enumerate_partitions`.
    """

    parts: tuple[int, ...]
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        parts = tuple(self.parts)
        if not parts:
            raise ValueError("a partition needs at least one part")
        for x, y in zip(parts, parts[1:]):
            if y > x:
                raise ValueError(f"parts must be weakly decreasing: {parts}")
        if parts[-1] < 1:
            raise ValueError(f"parts must be positive: {parts}")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "_hash", hash(parts))

    @classmethod
    def from_parts(cls, parts) -> "Partition":
        """Build from any iterable of positive integers, sorting as needed."""
        return cls(tuple(sorted(parts, reverse=True)))

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Partition") -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.parts > other.parts

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.parts)) + "]"

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @cached_property
    def multiplicities(self) -> dict[int, int]:
        """Map part size -> number of parts of that size."""
        return dict(Counter(self.parts))

    def multiplicity(self, size: int) -> int:
        return self.multiplicities.get(size, 0)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.multiplicities)

    @property
    def support_size(self) -> int:
        return len(self.multiplicities)

    @property
    def largest(self) -> int:
        """Largest part, ``a``."""
        return self.parts[0]

    @property
    def length(self) -> int:
        """Number of parts, ``b``."""
        return len(self.parts)


_PARTITION_RE = re.compile(r"^\[\s*\d+(\s*,\s*\d+)*\s*\]$")


def parse_partition(text: str) -> Partition:
    """Parse the bracketed form ``[3,1]``.

    Parts must already be weakly decreasing and positive; nothing is re-sorted.
    """
    s = text.strip()
    if not _PARTITION_RE.match(s):
        raise ValueError(f"malformed partition: {text!r}")
    parts = tuple(int(x) for x in s[1:-1].split(","))
    return Partition(parts)


def support(lam: Partition) -> frozenset[int]:
    return lam.support


def support_size(lam: Partition) -> int:
    return lam.support_size


def _check_n(n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")


def _descending(n: int, cap: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, cap), 0, -1):
        for rest in _descending(n - first, first):
            yield (first,) + rest


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of ``n`` in descending lexicographic order."""
    _check_n(n)
    return [Partition(p) for p in _descending(n, n)]


def partition_count(n: int) -> int:
    """p(n) via Euler's pentagonal number recurrence."""
    if n < 0:
        return 0
    p = [1] + [0] * n
    for m in range(1, n + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > m:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[m - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= m:
                total += sign * p[m - g2]
            k += 1
        p[m] = total
    return p[n]


class Transfer(NamedTuple):
    """Move one unit from a part of size ``donor`` to a part of size ``recipient``.

    ``recipient == 0`` creates a new part of size 1.
    """

    donor: int
    recipient: int

    def affected_sizes(self) -> frozenset[int]:
        p, q = self
        return frozenset(s for s in (p, q, p - 1, q + 1) if s >= 1)


def is_legal(lam: Partition, t: Transfer) -> bool:
    p, q = t
    if p < 1 or q < 0:
        return False
    mp = lam.multiplicity(p)
    if mp < 1:
        return False
    if q >= 1 and lam.multiplicity(q) < 1:
        return False
    if p == q and mp < 2:
        return False
    return True


def _apply_unchecked(lam: Partition, t: Transfer) -> Partition:
    p, q = t
    parts = list(lam.parts)
    parts.remove(p)
    if q >= 1:
        parts.remove(q)
    if p > 1:
        parts.append(p - 1)
    parts.append(q + 1)
    parts.sort(reverse=True)
    return Partition(tuple(parts))


def apply_transfer(lam: Partition, t: Transfer) -> Partition:
    """Apply ``t`` and re-sort. The result may equal ``lam`` (identity move)."""
    if not is_legal(lam, t):
        raise IllegalTransferError(f"transfer {tuple(t)} is not legal for {lam}")
    return _apply_unchecked(lam, t)


def candidate_transfers(lam: Partition) -> list[Transfer]:
    """Every legal (donor, recipient) pair, identity moves included."""
    sizes = sorted(lam.multiplicities, reverse=True)
    out = []
    for p in sizes:
        for q in sizes + [0]:
            t = Transfer(p, q)
            if is_legal(lam, t):
                out.append(t)
    return out


def legal_transfers(lam: Partition) -> set[Transfer]:
    """Legal transfers whose result differs from ``lam``."""
    return {t for t in candidate_transfers(lam) if _apply_unchecked(lam, t) != lam}


def neighbors(lam: Partition) -> set[Partition]:
    return {_apply_unchecked(lam, t) for t in legal_transfers(lam)}
