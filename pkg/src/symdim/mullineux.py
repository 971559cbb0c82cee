"""The Mullineux involution via the crystal recursion.

``M(()) = ()`` and, for the smallest residue ``i`` with ``eps_i(lam) > 0``,
``M(lam) = f_{-i} M(e_i lam)``.  The cache is an ``lru_cache``: reads are
concurrent-safe and a racing duplicate insert stores the same value.
"""

from __future__ import annotations

from functools import lru_cache

from .crystal import _report, _require_nonempty, _require_regular, e_tilde, f_tilde
from .partitions import (
    Partition,
    PartitionLike,
    PrimeLike,
    concat,
    is_p_regular,
)


@lru_cache(maxsize=None)
def _mullineux(parts: tuple[int, ...], p: int) -> Partition:
    lam = Partition(parts)
    if lam.n == 0 or p == 2:
        return lam
    for i in range(p):
        if _report(lam, i, p).epsilon > 0:
            below = _mullineux(e_tilde(lam, i, p).parts, p)
            out = f_tilde(below, (-i) % p, p)
            if out is None:
                raise AssertionError(f"f_tilde undefined while computing M({lam}) at p={p}")
            return out
    raise AssertionError(f"nonempty ({lam}) has no normal node")


def mullineux(lam: PartitionLike, p: PrimeLike) -> Partition:
    """The p-regular label of ``D^lam`` tensored with the sign representation."""
    lam, q = _require_regular(lam, p)
    return _mullineux(lam.parts, q)


def clear_cache() -> None:
    _mullineux.cache_clear()


def first_row_condition(lam: PartitionLike, p: PrimeLike) -> bool:
    """``lam_1 >= p - 1`` and ``M((lam_1))`` followed by ``M(lam_2, lam_3, ...)`` is p-regular."""
    lam, q = _require_regular(lam, p)
    _require_nonempty(lam)
    if lam.first < q - 1:
        return False
    parts = concat([mullineux(Partition((lam.first,)), q), mullineux(lam.tail, q)])
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        return False
    return is_p_regular(parts, q)
