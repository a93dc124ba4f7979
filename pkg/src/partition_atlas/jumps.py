"""Edgewise jumps: signatures, transition classes, neighbour reorganization,
local support jumps and crossed thresholds."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .graph import OrientedEdge, PartitionGraph
from .invariants import InvariantTable, canonical_name
from .partitions import IllegalTransferError, Partition, Transfer, is_legal

BASIC = ("d", "delta", "sigma")
_CODE = {"d": "d", "delta": "x", "sigma": "s"}

TAXONOMY = {
    frozenset(): "neutral",
    frozenset({"d"}): "pure-d",
    frozenset({"delta"}): "pure-delta",
    frozenset({"sigma"}): "pure-sigma",
    frozenset({"d", "delta"}): "mixed-d-delta",
    frozenset({"d", "sigma"}): "mixed-d-sigma",
    frozenset({"delta", "sigma"}): "mixed-delta-sigma",
    frozenset({"d", "delta", "sigma"}): "fully-mixed",
}
TAXONOMY_LABELS = tuple(TAXONOMY.values())


def sgn(x: int) -> int:
    return (x > 0) - (x < 0)


class JumpSignature(NamedTuple):
    dd: int
    ddelta: int
    dsigma: int

    def __neg__(self) -> "JumpSignature":
        return JumpSignature(-self.dd, -self.ddelta, -self.dsigma)

    def absolute(self) -> "JumpSignature":
        return JumpSignature(abs(self.dd), abs(self.ddelta), abs(self.dsigma))

    def active_set(self) -> frozenset[str]:
        return frozenset(name for name, x in zip(BASIC, self) if x != 0)

    @property
    def rank(self) -> int:
        return sum(1 for x in self if x != 0)

    def sign_pattern(self) -> tuple[int, int, int]:
        return (sgn(self.dd), sgn(self.ddelta), sgn(self.dsigma))

    @property
    def l1(self) -> int:
        return abs(self.dd) + abs(self.ddelta) + abs(self.dsigma)

    @property
    def linf(self) -> int:
        return max(abs(self.dd), abs(self.ddelta), abs(self.dsigma))


def encode_active_set(active: frozenset[str]) -> str:
    s = "".join(_CODE[name] for name in BASIC if name in active)
    return s or "-"


def decode_active_set(text: str) -> frozenset[str]:
    if text == "-":
        return frozenset()
    inverse = {v: k for k, v in _CODE.items()}
    return frozenset(inverse[c] for c in text)


def encode_sign_pattern(pattern: tuple[int, int, int]) -> str:
    return "".join("+" if s > 0 else "-" if s < 0 else "0" for s in pattern)


@dataclass(frozen=True)
class TransitionClass:
    active_set: frozenset[str]
    rank: int
    sign_pattern: tuple[int, int, int]
    coherence: str
    taxonomy_label: str


def classify(sig: JumpSignature) -> TransitionClass:
    active = sig.active_set()
    pattern = sig.sign_pattern()
    if len(active) < 2:
        coherence = "not-mixed"
    else:
        nonzero = {s for s in pattern if s}
        coherence = "sign-coherent" if len(nonzero) == 1 else "sign-opposed"
    return TransitionClass(active, len(active), pattern, coherence, TAXONOMY[active])


def jump(table: InvariantTable, e: OrientedEdge, name: str) -> int:
    """Signed jump ``F(target) - F(source)``."""
    values = table.values(name)
    return values[e.target] - values[e.source]


def jump_signature(table: InvariantTable, e: OrientedEdge) -> JumpSignature:
    s, t = e
    return JumpSignature(
        table.d[t] - table.d[s],
        table.delta[t] - table.delta[s],
        table.sigma[t] - table.sigma[s],
    )


@dataclass(frozen=True)
class DegreeReorganization:
    births: frozenset[Partition]
    deaths: frozenset[Partition]

    @property
    def rho(self) -> int:
        return len(self.births) + len(self.deaths)

    @property
    def dd(self) -> int:
        return len(self.births) - len(self.deaths)


def degree_reorganization(g: PartitionGraph, e: OrientedEdge) -> DegreeReorganization:
    """Neighbours gained (births) and lost (deaths) moving along ``e``."""
    src = g.neighbor_set(e.source)
    dst = g.neighbor_set(e.target)
    vs = g.vertices
    return DegreeReorganization(
        births=frozenset(vs[i] for i in dst - src),
        deaths=frozenset(vs[i] for i in src - dst),
    )


def multiplicity_changes(t: Transfer) -> dict[int, int]:
    """Nonzero multiplicity changes of a transfer, keyed by part size >= 1."""
    p, q = t
    eps: dict[int, int] = {}
    for size, delta in ((p, -1), (q, -1), (p - 1, 1), (q + 1, 1)):
        if size >= 1:
            eps[size] = eps.get(size, 0) + delta
    return {i: x for i, x in eps.items() if x}


def support_changes(lam: Partition, t: Transfer) -> tuple[int, int]:
    """``(appeared, disappeared)`` support sizes under a legal non-identity transfer.

    Uses only ``(p, q)`` and the multiplicities of the affected sizes.
    """
    if not is_legal(lam, t):
        raise IllegalTransferError(f"transfer {tuple(t)} is not legal for {lam}")
    eps = multiplicity_changes(t)
    if not eps:
        raise IllegalTransferError(f"transfer {tuple(t)} is an identity move for {lam}")
    appeared = disappeared = 0
    for i, x in eps.items():
        before = lam.multiplicity(i)
        after = before + x
        if before == 0 and after > 0:
            appeared += 1
        elif before > 0 and after == 0:
            disappeared += 1
    return appeared, disappeared


def support_jump_local(lam: Partition, t: Transfer) -> int:
    appeared, disappeared = support_changes(lam, t)
    return appeared - disappeared


def crossed_thresholds(table: InvariantTable, e: OrientedEdge, name: str) -> list[int]:
    """Integers r with exactly one endpoint in {F >= r}, ascending."""
    values = table.values(canonical_name(name))
    lo, hi = sorted((values[e.source], values[e.target]))
    return list(range(lo + 1, hi + 1))
