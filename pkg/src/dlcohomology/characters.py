"""Virtual unipotent characters of GL_n(q) indexed by partitions."""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import InvalidArgument, UnsupportedRegime
from .partitions import (
    Partition,
    addable_hooks,
    add_hook,
    as_partition,
    beta_set,
    leg_count,
    m_core,
    partitions_of,
    removable_corners,
)

SIGN_CONVENTION = "leg-length: eps_x = (-1)^#{y in X : x < y < x + d}"


class VirtualChar:
    """Integer combination of unipotent characters of a fixed rank."""

    __slots__ = ("rank", "_coeffs")

    def __init__(self, rank: int, coeffs: Mapping[Partition, int] | None = None):
        if rank < 0:
            raise InvalidArgument("rank must be non-negative")
        self.rank = rank
        clean: dict[Partition, int] = {}
        for lam, c in (coeffs or {}).items():
            lam = as_partition(lam)
            if lam.n != rank:
                raise InvalidArgument(f"{lam} is not a partition of {rank}")
            if c:
                clean[lam] = clean.get(lam, 0) + int(c)
        self._coeffs = {k: v for k, v in clean.items() if v}

    @classmethod
    def nabla(cls, lam) -> VirtualChar:
        lam = as_partition(lam)
        return cls(lam.n, {lam: 1})

    @classmethod
    def zero(cls, rank: int) -> VirtualChar:
        return cls(rank)

    def __getitem__(self, lam) -> int:
        return self._coeffs.get(as_partition(lam), 0)

    def items(self) -> Iterator[tuple[Partition, int]]:
        return iter(sorted(self._coeffs.items(), key=lambda kv: kv[0], reverse=True))

    def labels(self) -> set[Partition]:
        return set(self._coeffs)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def _check(self, other: VirtualChar) -> None:
        if self.rank != other.rank:
            raise InvalidArgument(f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other: VirtualChar) -> VirtualChar:
        self._check(other)
        out = dict(self._coeffs)
        for k, v in other._coeffs.items():
            out[k] = out.get(k, 0) + v
        return VirtualChar(self.rank, out)

    def __neg__(self) -> VirtualChar:
        return VirtualChar(self.rank, {k: -v for k, v in self._coeffs.items()})

    def __sub__(self, other: VirtualChar) -> VirtualChar:
        return self + (-other)

    def scale(self, c: int) -> VirtualChar:
        return VirtualChar(self.rank, {k: c * v for k, v in self._coeffs.items()})

    def mass(self) -> int:
        return sum(self._coeffs.values())

    def __eq__(self, other) -> bool:
        return isinstance(other, VirtualChar) and self.rank == other.rank and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self.rank, frozenset(self._coeffs.items())))

    def to_json(self) -> dict[str, int]:
        return {str(k): v for k, v in self.items()}

    @classmethod
    def from_json(cls, rank: int, data: Mapping[str, int]) -> VirtualChar:
        return cls(rank, {Partition.parse(k): v for k, v in data.items()})

    def __repr__(self) -> str:
        if not self._coeffs:
            return f"0[GL{self.rank}]"
        terms = []
        for lam, c in self.items():
            coef = "" if c == 1 else "-" if c == -1 else f"{c}*"
            terms.append(f"{coef}N({lam})")
        return " + ".join(terms).replace("+ -", "- ")

    __str__ = __repr__


class GradedChar:
    """Map ``(degree, eigen_exp) -> VirtualChar`` with empty entries dropped."""

    __slots__ = ("rank", "_entries")

    def __init__(self, rank: int, entries: Mapping[tuple[int, int], VirtualChar] | None = None):
        self.rank = rank
        self._entries: dict[tuple[int, int], VirtualChar] = {}
        for key, v in (entries or {}).items():
            self._add(key, v)

    def _add(self, key: tuple[int, int], v: VirtualChar) -> None:
        if v.rank != self.rank:
            raise InvalidArgument(f"rank mismatch: {v.rank} vs {self.rank}")
        key = (int(key[0]), int(key[1]))
        total = self._entries.get(key, VirtualChar.zero(self.rank)) + v
        if total:
            self._entries[key] = total
        else:
            self._entries.pop(key, None)

    def with_entry(self, degree: int, eigen_exp: int, v: VirtualChar) -> GradedChar:
        out = GradedChar(self.rank, self._entries)
        out._add((degree, eigen_exp), v)
        return out

    def __add__(self, other: GradedChar) -> GradedChar:
        out = GradedChar(self.rank, self._entries)
        for k, v in other._entries.items():
            out._add(k, v)
        return out

    def __neg__(self) -> GradedChar:
        return GradedChar(self.rank, {k: -v for k, v in self._entries.items()})

    def __sub__(self, other: GradedChar) -> GradedChar:
        return self + (-other)

    def shift(self, degree: int = 0, eigen_exp: int = 0) -> GradedChar:
        return GradedChar(self.rank, {(a + degree, e + eigen_exp): v for (a, e), v in self._entries.items()})

    def map_chars(self, fn, rank: int) -> GradedChar:
        return GradedChar(rank, {k: fn(v) for k, v in self._entries.items()})

    def select(self, pred) -> GradedChar:
        return GradedChar(self.rank, {k: v for k, v in self._entries.items() if pred(*k)})

    def items(self) -> list[tuple[tuple[int, int], VirtualChar]]:
        return sorted(self._entries.items())

    def keys(self) -> list[tuple[int, int]]:
        return sorted(self._entries)

    def degrees(self) -> list[int]:
        return sorted({a for a, _ in self._entries})

    def at_degree(self, degree: int) -> VirtualChar:
        out = VirtualChar.zero(self.rank)
        for (a, _), v in self._entries.items():
            if a == degree:
                out = out + v
        return out

    def __getitem__(self, key: tuple[int, int]) -> VirtualChar:
        return self._entries.get(key, VirtualChar.zero(self.rank))

    def __len__(self) -> int:
        return len(self._entries)

    def __bool__(self) -> bool:
        return bool(self._entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, GradedChar) and self.rank == other.rank and self._entries == other._entries

    def __hash__(self) -> int:
        return hash((self.rank, frozenset(self._entries.items())))

    def __repr__(self) -> str:
        rows = ", ".join(f"({a},q^{e}): {v}" for (a, e), v in self.items())
        return f"GradedChar[GL{self.rank}]{{{rows}}}"


@dataclass(frozen=True)
class EllParams:
    m: int
    r: int = 1

    def __post_init__(self):
        if self.m < 1 or self.r < 1:
            raise InvalidArgument("m and r must be positive")


def nabla(lam) -> VirtualChar:
    return VirtualChar.nabla(lam)


def hc_restrict(v: VirtualChar) -> VirtualChar:
    """Harish-Chandra restriction to GL_{n-1}: remove one box in every possible way."""
    if v.rank < 1:
        raise InvalidArgument("cannot restrict a rank-0 character")
    out: dict[Partition, int] = defaultdict(int)
    for lam, c in v.items():
        for mu in removable_corners(lam):
            out[mu] += c
    return VirtualChar(v.rank - 1, out)


def hook_sign(X, x: int, d: int) -> int:
    return -1 if leg_count(X, x, d) % 2 else 1


def dl_induce(mu, d: int, s: int | None = None) -> VirtualChar:
    """``sum_x eps_x N(mu * x)`` over the addable ``d``-hooks of a beta-set of ``mu``."""
    mu = as_partition(mu)
    if d < 1:
        raise InvalidArgument("d must be positive")
    X = beta_set(mu, len(mu) + d if s is None else s)
    out: dict[Partition, int] = {}
    for site in addable_hooks(X, d):
        out[add_hook(X, site.x, d)] = hook_sign(X, site.x, d)
    return VirtualChar(mu.n + d, out)


def phi_d_blocks(n: int, d: int) -> list[set[Partition]]:
    """Partitions of ``n`` grouped by ``d``-core, ordered by decreasing core."""
    if d < 1:
        raise InvalidArgument("d must be positive")
    groups: dict[Partition, set[Partition]] = defaultdict(set)
    for lam in partitions_of(n):
        groups[m_core(lam, d)].add(lam)
    return [groups[c] for c in sorted(groups, key=lambda c: (c.n, c), reverse=True)]


def phi_d_blocks_by_core(n: int, d: int) -> dict[Partition, set[Partition]]:
    groups: dict[Partition, set[Partition]] = defaultdict(set)
    for lam in partitions_of(n):
        groups[m_core(lam, d)].add(lam)
    return dict(groups)


def principal_block_labels(n: int, m: int) -> set[Partition]:
    """Labels ``(n-m) * x`` of the principal block, for ``m <= n < 2m``."""
    if not (1 <= m <= n < 2 * m):
        raise UnsupportedRegime(f"need m <= n < 2m, got n={n}, m={m}")
    mu = Partition((n - m,))
    X = beta_set(mu, m + 1)
    return {add_hook(X, site.x, m) for site in addable_hooks(X, m)}


def labels_of(chars: Iterable[VirtualChar]) -> set[Partition]:
    out: set[Partition] = set()
    for v in chars:
        out |= v.labels()
    return out
