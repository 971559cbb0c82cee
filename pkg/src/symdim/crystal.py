"""Signatures, normal and good nodes, crystal operators and modular branching.

For a p-regular partition and a residue ``i`` the i-signature lists the
i-addable (``+``) and i-removable (``-``) nodes along the rim from bottom-left
to top-right.  Cancelling adjacent ``-+`` pairs leaves ``+^a -^b``; the nodes
behind the surviving minuses are the i-normal nodes, the leftmost of them is
i-good, and the rightmost surviving plus is the i-cogood node.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator, Optional

from .errors import EmptyPartition, NotRegular
from .partitions import (
    Node,
    Partition,
    PartitionLike,
    PrimeLike,
    add_node,
    as_partition,
    as_prime,
    boundary_nodes,
    is_p_regular,
    regular_partitions_upto,
    removable_nodes,
    remove_node,
)


def _require_regular(lam: PartitionLike, p: PrimeLike) -> tuple[Partition, int]:
    lam = as_partition(lam)
    q = as_prime(p).p
    if not is_p_regular(lam, q):
        raise NotRegular(f"({lam}) is not {q}-regular")
    return lam, q


def _require_nonempty(lam: Partition) -> None:
    if lam.n == 0:
        raise EmptyPartition("the empty partition has no removable nodes")


@dataclass(frozen=True)
class NormalNodeReport:
    residue: int
    signature: tuple[tuple[Node, str], ...]
    reduced: tuple[tuple[Node, str], ...]
    normal_nodes: tuple[Node, ...]
    good_node: Optional[Node]
    cogood_node: Optional[Node]
    epsilon: int

    @property
    def signature_string(self) -> str:
        return "".join(s for _, s in self.signature)

    @property
    def reduced_string(self) -> str:
        return "".join(s for _, s in self.reduced)

    @property
    def phi(self) -> int:
        return sum(1 for _, s in self.reduced if s == "+")

    def to_dict(self) -> dict:
        def nodes(seq):
            return [[n.row, n.col, s] for n, s in seq]

        return {
            "residue": self.residue,
            "signature": self.signature_string,
            "signature_nodes": nodes(self.signature),
            "reduced": self.reduced_string,
            "reduced_nodes": nodes(self.reduced),
            "normal_nodes": [list(n) for n in self.normal_nodes],
            "good_node": list(self.good_node) if self.good_node else None,
            "cogood_node": list(self.cogood_node) if self.cogood_node else None,
            "epsilon": self.epsilon,
        }


def reduce_signature(signature: list[tuple[Node, str]]) -> list[tuple[Node, str]]:
    """Cancel ``-+`` pairs with a single left-to-right stack pass."""
    stack: list[tuple[Node, str]] = []
    for item in signature:
        if item[1] == "+" and stack and stack[-1][1] == "-":
            stack.pop()
        else:
            stack.append(item)
    return stack


def _report(lam: Partition, i: int, q: int) -> NormalNodeReport:
    i %= q
    signature = [(bn.node, bn.sign) for bn in boundary_nodes(lam, q) if bn.residue == i]
    reduced = reduce_signature(signature)
    normal = tuple(node for node, s in reduced if s == "-")
    plus = [node for node, s in reduced if s == "+"]
    return NormalNodeReport(
        residue=i,
        signature=tuple(signature),
        reduced=tuple(reduced),
        normal_nodes=normal,
        good_node=normal[0] if normal else None,
        cogood_node=plus[-1] if plus else None,
        epsilon=len(normal),
    )


def normal_report(lam: PartitionLike, i: int, p: PrimeLike) -> NormalNodeReport:
    lam, q = _require_regular(lam, p)
    return _report(lam, i, q)


def epsilon(lam: PartitionLike, i: int, p: PrimeLike) -> int:
    return normal_report(lam, i, p).epsilon


def epsilons(lam: PartitionLike, p: PrimeLike) -> list[int]:
    """``[eps_0, ..., eps_{p-1}]``."""
    lam, q = _require_regular(lam, p)
    return [_report(lam, i, q).epsilon for i in range(q)]


def e_tilde(lam: PartitionLike, i: int, p: PrimeLike) -> Optional[Partition]:
    """Remove the i-good node, or return None when ``eps_i == 0``."""
    lam, q = _require_regular(lam, p)
    good = _report(lam, i, q).good_node
    if good is None:
        return None
    out = remove_node(lam, good)
    if not is_p_regular(out, q):
        raise AssertionError(f"good-node removal left ({lam}) -> ({out}) not {q}-regular")
    return out


def f_tilde(lam: PartitionLike, i: int, p: PrimeLike) -> Optional[Partition]:
    """Add the i-cogood node, or return None when the reduced signature has no ``+``."""
    lam, q = _require_regular(lam, p)
    cogood = _report(lam, i, q).cogood_node
    if cogood is None:
        return None
    return add_node(lam, cogood)


def normal_nodes(lam: PartitionLike, p: PrimeLike) -> list[tuple[Node, int]]:
    """Every normal node with its residue, top row first."""
    lam, q = _require_regular(lam, p)
    out = [(node, i) for i in range(q) for node in _report(lam, i, q).normal_nodes]
    out.sort(key=lambda item: item[0].row)
    return out


def is_js(lam: PartitionLike, p: PrimeLike) -> bool:
    """True when the top removable node is the only normal node."""
    lam, q = _require_regular(lam, p)
    _require_nonempty(lam)
    normal = normal_nodes(lam, q)
    return len(normal) == 1 and normal[0][0] == removable_nodes(lam)[0]


@dataclass(frozen=True)
class RestrictionFactors:
    """Composition factors ``(mu, multiplicity)`` of the restriction to S_{n-1}."""

    entries: tuple[tuple[Partition, int], ...]

    def __iter__(self) -> Iterator[tuple[Partition, int]]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def as_dict(self) -> dict[Partition, int]:
        return dict(self.entries)

    def to_json(self) -> list[list]:
        return [[str(mu), c] for mu, c in self.entries]


def restriction_factors(lam: PartitionLike, p: PrimeLike) -> RestrictionFactors:
    """Branching multiplicities of the normal-node factors of ``D^lam`` restricted to S_{n-1}.

    A normal node ``A`` of residue ``i`` contributes ``lam_A`` with multiplicity one
    more than the number of i-normal nodes strictly above it (smaller row).  Normal
    nodes whose removal is not p-regular are skipped.
    """
    lam, q = _require_regular(lam, p)
    _require_nonempty(lam)
    entries = []
    for i in range(q):
        normal = _report(lam, i, q).normal_nodes
        for node in normal:
            mu = remove_node(lam, node)
            if not is_p_regular(mu, q):
                continue
            above = sum(1 for other in normal if other.row < node.row)
            entries.append((mu, above + 1))
    entries.sort(key=lambda e: e[0].parts, reverse=True)
    return RestrictionFactors(tuple(entries))


def a_crystal(lam: PartitionLike, p: PrimeLike) -> int:
    """Shortest chain of good-node removals reaching a one-dimensional label.

    Breadth-first over all residues; a partition ``kappa`` of ``m`` is a target
    when it is ``(m)`` or the Mullineux image of ``(m)``.  Every such chain gives a
    one-dimensional submodule of the restriction, so this is an upper bound for
    the minimal depth measured by the oracle.
    """
    from .mullineux import mullineux

    lam, q = _require_regular(lam, p)
    _require_nonempty(lam)
    level = {lam}
    depth = 0
    while level:
        depth += 1
        nxt: set[Partition] = set()
        for mu in level:
            for i in range(q):
                kappa = e_tilde(mu, i, q)
                if kappa is not None:
                    nxt.add(kappa)
        for kappa in nxt:
            row = Partition((kappa.n,)) if kappa.n else Partition(())
            if kappa == row or kappa == mullineux(row, q):
                return depth
        level = nxt
    raise AssertionError(f"no good-removal chain from ({lam}) reached a one-dimensional label")


@dataclass(frozen=True)
class CrystalGraph:
    p: int
    vertices: tuple[Partition, ...]
    edges: tuple[tuple[Partition, Partition, int], ...]

    def to_dot(self) -> str:
        lines = [f"digraph crystal_p{self.p} {{"]
        for v in self.vertices:
            lines.append(f'  "{v}";')
        for src, dst, i in self.edges:
            lines.append(f'  "{src}" -> "{dst}" [label="{i}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json_obj(self) -> dict:
        adjacency: dict[str, list[dict]] = {str(v): [] for v in self.vertices}
        for src, dst, i in self.edges:
            adjacency[str(src)].append({"to": str(dst), "residue": i})
        return {
            "p": self.p,
            "vertices": [str(v) for v in self.vertices],
            "adjacency": adjacency,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), indent=2) + "\n"


def crystal_graph(n: int, p: PrimeLike) -> CrystalGraph:
    """All p-regular partitions of size ``<= n`` with residue-labelled ``e_tilde`` edges."""
    q = as_prime(p).p
    vertices = regular_partitions_upto(n, q)
    edges = []
    for lam in vertices:
        for i in range(q):
            mu = e_tilde(lam, i, q)
            if mu is not None:
                edges.append((lam, mu, i))
    return CrystalGraph(q, tuple(vertices), tuple(edges))

