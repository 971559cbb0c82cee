"""Partitions, Young diagram nodes, residues and p-regularity.

Conventions: row 1 is the top row of the diagram, columns grow to the right,
and the residue of node ``(r, c)`` is ``(c - r) mod p``.  Rim order (the order
in which signatures are read) runs from the bottom-left addable node to the
top-right one, which is the same as ordering nodes by content ``c - r``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Literal, NamedTuple, Sequence, Union

from .errors import (
    FirstPartTooSmall,
    InvalidPartition,
    NotAddable,
    NotPrime,
    NotRemovable,
)


@dataclass(frozen=True, order=False)
class Partition:
    """A weakly decreasing tuple of positive integers."""

    parts: tuple[int, ...] = ()
    n: int = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        parts = tuple(int(x) for x in self.parts)
        if any(x <= 0 for x in parts):
            raise InvalidPartition(f"parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise InvalidPartition(f"parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "n", sum(parts))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse the textual form ``"a,b,c"``; the empty string is the empty partition."""
        text = text.strip()
        if text in ("", "()"):
            return cls(())
        try:
            parts = tuple(int(tok) for tok in text.strip("()").split(","))
        except ValueError as exc:
            raise InvalidPartition(f"cannot parse partition {text!r}") from exc
        return cls(parts)

    def __str__(self) -> str:
        return ",".join(str(x) for x in self.parts)

    def __repr__(self) -> str:
        return f"Partition({self.parts!r})"

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i: int) -> int:
        return self.parts[i]

    def part(self, row: int) -> int:
        """Length of row ``row`` (1-based); zero below the diagram."""
        return self.parts[row - 1] if 1 <= row <= len(self.parts) else 0

    @property
    def first(self) -> int:
        return self.parts[0] if self.parts else 0

    @property
    def tail(self) -> "Partition":
        """The partition ``(lambda_2, lambda_3, ...)``."""
        return Partition(self.parts[1:])

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (self.n, self.parts)

    def nodes(self) -> Iterator["Node"]:
        for r, length in enumerate(self.parts, start=1):
            for c in range(1, length + 1):
                yield Node(r, c)

    def __contains__(self, node: object) -> bool:
        if not isinstance(node, tuple) or len(node) != 2:
            return False
        r, c = node
        return 1 <= c <= self.part(r)


PartitionLike = Union[Partition, Sequence[int], str]


def as_partition(lam: PartitionLike) -> Partition:
    if isinstance(lam, Partition):
        return lam
    if isinstance(lam, str):
        return Partition.parse(lam)
    return Partition(tuple(lam))


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrimeChar:
    """The characteristic ``p`` together with ``delta = 1 if p == 2 else 0``."""

    p: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or not _is_prime(self.p):
            raise NotPrime(f"{self.p!r} is not a prime")

    @property
    def delta(self) -> int:
        return 1 if self.p == 2 else 0

    def __int__(self) -> int:
        return self.p

    def __str__(self) -> str:
        return str(self.p)


PrimeLike = Union[PrimeChar, int]


def as_prime(p: PrimeLike) -> PrimeChar:
    return p if isinstance(p, PrimeChar) else _prime_cached(int(p))


@lru_cache(maxsize=None)
def _prime_cached(p: int) -> PrimeChar:
    return PrimeChar(p)


class Node(NamedTuple):
    row: int
    col: int

    @property
    def content(self) -> int:
        return self.col - self.row


def residue(node: tuple[int, int], p: PrimeLike) -> int:
    """Residue ``(col - row) mod p`` of a node, in ``[0, p-1]``."""
    r, c = node
    return (c - r) % as_prime(p).p


def neg_residue(i: int, p: PrimeLike) -> int:
    q = as_prime(p).p
    return (-i) % q


class BoundaryNode(NamedTuple):
    node: Node
    kind: Literal["addable", "removable"]
    residue: int

    @property
    def sign(self) -> str:
        return "+" if self.kind == "addable" else "-"


def removable_nodes(lam: Partition) -> list[Node]:
    """Removable nodes, top row first."""
    parts = lam.parts
    out = []
    for r, length in enumerate(parts, start=1):
        below = parts[r] if r < len(parts) else 0
        if length > below:
            out.append(Node(r, length))
    return out


def addable_nodes(lam: Partition) -> list[Node]:
    """Addable nodes, top row first."""
    parts = lam.parts
    out = []
    for r in range(1, len(parts) + 2):
        length = lam.part(r)
        if r == 1 or lam.part(r - 1) > length:
            out.append(Node(r, length + 1))
    return out


def boundary_nodes(lam: PartitionLike, p: PrimeLike) -> list[BoundaryNode]:
    """All addable and removable nodes in rim order, bottom-left to top-right."""
    lam = as_partition(lam)
    q = as_prime(p).p
    items = [BoundaryNode(a, "addable", residue(a, q)) for a in addable_nodes(lam)]
    items += [BoundaryNode(b, "removable", residue(b, q)) for b in removable_nodes(lam)]
    # contents of boundary nodes are pairwise distinct
    items.sort(key=lambda bn: bn.node.content)
    return items


def is_p_regular(lam: PartitionLike, p: PrimeLike) -> bool:
    lam = as_partition(lam)
    q = as_prime(p).p
    return all(mult < q for mult in Counter(lam.parts).values())


def remove_node(lam: PartitionLike, node: tuple[int, int]) -> Partition:
    lam = as_partition(lam)
    node = Node(*node)
    if node not in removable_nodes(lam):
        raise NotRemovable(f"{tuple(node)} is not a removable node of ({lam})")
    parts = list(lam.parts)
    parts[node.row - 1] -= 1
    if parts[-1] == 0:
        parts.pop()
    return Partition(tuple(parts))


def add_node(lam: PartitionLike, node: tuple[int, int]) -> Partition:
    lam = as_partition(lam)
    node = Node(*node)
    if node not in addable_nodes(lam):
        raise NotAddable(f"{tuple(node)} is not an addable node of ({lam})")
    parts = list(lam.parts)
    if node.row > len(parts):
        parts.append(1)
    else:
        parts[node.row - 1] += 1
    return Partition(tuple(parts))


def attach(n: int, mu: PartitionLike) -> Partition:
    """The partition ``(n - m, mu_1, mu_2, ...)`` of ``n`` where ``m = |mu|``."""
    mu = as_partition(mu)
    head = n - mu.n
    if head < mu.first or head < 0:
        raise FirstPartTooSmall(f"n - |mu| = {head} < mu_1 = {mu.first}")
    if head == 0:
        return Partition(())
    return Partition((head,) + mu.parts)


def partitions_of(n: int) -> Iterator[Partition]:
    """All partitions of ``n`` in lexicographic order of their parts."""

    def rec(remaining: int, cap: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for first in range(1, min(cap, remaining) + 1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    for parts in rec(n, n):
        yield Partition(parts)


def regular_partitions(n: int, p: PrimeLike) -> list[Partition]:
    """The p-regular partitions of ``n`` in lexicographic order."""
    return [lam for lam in partitions_of(n) if is_p_regular(lam, p)]


def regular_partitions_upto(max_n: int, p: PrimeLike) -> list[Partition]:
    """p-regular partitions of every size ``0..max_n``, ordered by (size, parts)."""
    out: list[Partition] = []
    for m in range(max_n + 1):
        out.extend(regular_partitions(m, p))
    return out


def concat(blocks: Iterable[PartitionLike]) -> tuple[int, ...]:
    """Concatenate part sequences without validating the result."""
    out: list[int] = []
    for b in blocks:
        out.extend(as_partition(b).parts)
    return tuple(out)
