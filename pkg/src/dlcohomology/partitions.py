"""Partitions, beta-sets, abacus moves and hook combinatorics.

A beta-set of size ``s`` for a partition ``lam`` is ``{lam_i + s - i}``; adding a
``d``-hook moves one bead ``x`` to the empty position ``x + d``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import InvalidArgument, InvalidHook


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p < 1 for p in parts):
            raise InvalidArgument(f"partition parts must be positive: {self.parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise InvalidArgument(f"partition must be non-increasing: {self.parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __str__(self) -> str:
        return "+".join(map(str, self.parts)) if self.parts else "0"

    def __repr__(self) -> str:
        return f"Partition({self.parts})"

    def conjugate(self) -> Partition:
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > i) for i in range(self.parts[0])))

    def is_rectangle(self) -> bool:
        return len(set(self.parts)) <= 1

    @classmethod
    def parse(cls, text: str) -> Partition:
        """Parse ``"3+2"``, ``"3,2"``, ``"3 2"``, ``"2^2,1"`` or ``"0"``/``""``."""
        text = text.strip().strip("()[]")
        if text in ("", "0"):
            return cls(())
        parts: list[int] = []
        for tok in text.replace("+", ",").replace(" ", ",").split(","):
            if not tok:
                continue
            if "^" in tok:
                base, exp = tok.split("^")
                parts.extend([int(base)] * int(exp))
            else:
                parts.append(int(tok))
        return cls(tuple(sorted(parts, reverse=True)))


def partition(*parts: int) -> Partition:
    return Partition(tuple(parts))


def hook(n: int, legs: int) -> Partition:
    """The hook partition ``(n - legs, 1^legs)``."""
    return Partition((n - legs,) + (1,) * legs)


@lru_cache(maxsize=None)
def _partitions(n: int, largest: int) -> tuple[tuple[int, ...], ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions_of(n: int) -> list[Partition]:
    """All partitions of ``n`` in reverse lexicographic order."""
    if n < 0:
        raise InvalidArgument("n must be non-negative")
    return [Partition(p) for p in _partitions(n, n)]


@dataclass(frozen=True)
class BetaSet:
    elements: tuple[int, ...]

    def __post_init__(self):
        els = tuple(int(x) for x in self.elements)
        if any(x < 0 for x in els):
            raise InvalidArgument(f"beta-set entries must be non-negative: {els}")
        if any(a <= b for a, b in zip(els, els[1:])):
            raise InvalidArgument(f"beta-set must be strictly decreasing: {els}")
        object.__setattr__(self, "elements", els)

    @classmethod
    def of(cls, values: Iterable[int]) -> BetaSet:
        vals = sorted(set(values), reverse=True)
        return cls(tuple(vals))

    @property
    def size(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return x in self.elements

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def shifted(self) -> BetaSet:
        """The beta-set of the same partition with one more bead: ``(X + 1) | {0}``."""
        return BetaSet(tuple(x + 1 for x in self.elements) + (0,))

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"


@dataclass(frozen=True, order=True)
class HookSite:
    x: int
    d: int


def beta_set(lam: Partition, s: int) -> BetaSet:
    if s < len(lam):
        raise InvalidArgument(f"beta-set size {s} is smaller than the number of parts of {lam}")
    padded = tuple(lam.parts) + (0,) * (s - len(lam))
    return BetaSet(tuple(p + s - i for i, p in enumerate(padded, start=1)))


def partition_of(X: BetaSet) -> Partition:
    s = len(X)
    return Partition(tuple(x - (s - i) for i, x in enumerate(X.elements, start=1)))


def addable_hooks(X: BetaSet, d: int) -> tuple[HookSite, ...]:
    """Sites ``x`` of ``X`` with ``x + d`` empty, largest first."""
    if d < 1:
        raise InvalidArgument("hook length must be positive")
    return tuple(HookSite(x, d) for x in X.elements if x + d not in X)


def _check_addable(X: BetaSet, x: int, d: int) -> None:
    if x not in X:
        raise InvalidHook(f"{x} is not a bead of {X}")
    if x + d in X:
        raise InvalidHook(f"position {x + d} of {X} is occupied")


def add_hook(X: BetaSet, x: int, d: int) -> Partition:
    """The partition ``mu * x`` with beta-set ``(X - {x}) | {x + d}``."""
    _check_addable(X, x, d)
    return partition_of(BetaSet.of([y for y in X if y != x] + [x + d]))


def remove_hook(X: BetaSet, y: int, d: int) -> Partition:
    """Inverse move: bead ``y`` slides down to the empty position ``y - d``."""
    if y not in X or y - d < 0 or y - d in X:
        raise InvalidHook(f"no removable {d}-hook at bead {y} of {X}")
    return partition_of(BetaSet.of([z for z in X if z != y] + [y - d]))


def leg_count(X: BetaSet, x: int, d: int) -> int:
    """Number of beads strictly between ``x`` and ``x + d``."""
    if x not in X:
        raise InvalidHook(f"{x} is not a bead of {X}")
    return sum(1 for y in X if x < y < x + d)


def pi_d(X: BetaSet, x: int, n: int, d: int) -> int:
    """Cohomological degree in which the character labelled by ``mu * x`` sits."""
    _check_addable(X, x, d)
    below = sum(1 for y in X if y < x)
    return 2 * (n - 1 + x - below) - leg_count(X, x, d)


def gamma_d(X: BetaSet, x: int, n: int) -> int:
    """Frobenius eigenvalue exponent attached to the bead ``x``."""
    if x not in X:
        raise InvalidHook(f"{x} is not a bead of {X}")
    return n + x - len(X)


def hook_lengths(lam: Partition) -> list[list[int]]:
    conj = lam.conjugate()
    return [[lam[i] - j + conj[j] - i - 1 for j in range(lam[i])] for i in range(len(lam))]


def hook_multiset(lam: Partition) -> Counter:
    return Counter(h for row in hook_lengths(lam) for h in row)


def largest_hook(lam: Partition) -> int:
    if not lam.parts:
        raise InvalidArgument("the empty partition has no hooks")
    return lam[0] + len(lam) - 1


def is_m_core(lam: Partition, m: int) -> bool:
    if m < 1:
        raise InvalidArgument("m must be positive")
    return m not in hook_multiset(lam)


def removable_hook_beads(X: BetaSet, m: int) -> list[int]:
    return [y for y in X if y - m >= 0 and y - m not in X]


def m_core(lam: Partition, m: int) -> Partition:
    """Strip ``m``-hooks greedily (always the largest movable bead)."""
    if m < 1:
        raise InvalidArgument("m must be positive")
    X = beta_set(lam, len(lam))
    while True:
        beads = removable_hook_beads(X, m)
        if not beads:
            return partition_of(X)
        y = beads[0]
        X = BetaSet.of([z for z in X if z != y] + [y - m])


def all_m_cores_by_any_order(lam: Partition, m: int) -> set[Partition]:
    """Every core reachable by removing ``m``-hooks in every possible order."""
    seen: set[Partition] = set()
    cores: set[Partition] = set()
    stack = [lam]
    while stack:
        mu = stack.pop()
        if mu in seen:
            continue
        seen.add(mu)
        X = beta_set(mu, len(mu) + m)
        beads = removable_hook_beads(X, m)
        if not beads:
            cores.add(mu)
        for y in beads:
            stack.append(remove_hook(X, y, m))
    return cores


def removable_corners(lam: Partition) -> list[Partition]:
    if not lam.parts:
        raise InvalidArgument("the empty partition has no corners")
    out = []
    for i, p in enumerate(lam.parts):
        nxt = lam.parts[i + 1] if i + 1 < len(lam) else 0
        if p > nxt:
            parts = list(lam.parts)
            parts[i] -= 1
            out.append(Partition(tuple(parts)))
    return out


def dominates(lam: Partition, mu: Partition) -> bool:
    if lam.n != mu.n:
        raise InvalidArgument("dominance compares partitions of the same size")
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a < b:
            return False
    return True


def as_partition(value) -> Partition:
    if isinstance(value, Partition):
        return value
    if isinstance(value, str):
        return Partition.parse(value)
    return Partition(tuple(value))


def grouped_mu_star(n: int, d: int, x: int) -> Partition | None:
    """Closed form for ``(n - d) * x`` on the beta-set ``{n, d-1, ..., 0}``.

    Covers only ``x = n``, ``x < n - d`` with ``x <= d - 1`` and
    ``n - d <= x < d - 1``; returns ``None`` elsewhere (including ``x = d - 1``
    when ``d - 1 > n - d``, which the abacus realises as ``(d - 1, n - d + 1)``).
    """
    if x == n:
        return Partition((n,))
    if x < n - d and x <= d - 1:
        return Partition((n - d, x + 1) + (1,) * (d - x - 1))
    if n - d <= x < d - 1:
        return Partition((x, n - d + 1) + (1,) * (d - x - 1))
    return None


def _seq(values: Sequence[int]) -> tuple[int, ...]:
    return tuple(values)
