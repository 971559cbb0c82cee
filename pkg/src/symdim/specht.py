"""Brute-force ground truth: Specht module Gram matrices over F_p.

Polytabloids are expanded in the full tabloid space.  A tabloid is encoded as
the integer ``sum_j row(j) * B**(j-1)`` with ``B`` the number of rows, so the
adjacent transposition ``s_i`` acts on tabloids by swapping two base-``B``
digits.  ``D^lam`` is realised inside ``F_p^f`` through ``v -> (<e_s, v>)_s``,
whose kernel is the radical of the form; the pivot columns ``P`` of the Gram
matrix give a basis, and ``G[P,P]`` is invertible because ``G`` is symmetric.
"""

from __future__ import annotations

import itertools
import json
import random
import threading
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod
from pathlib import Path
from typing import Iterator, Optional, Sequence

import numpy as np
from scipy import sparse

from .crystal import _require_nonempty, _require_regular
from .errors import OracleOutOfRange
from .ffield import PrimeFieldMatrix, mod_matmul, rref
from .mullineux import mullineux
from .partitions import Partition, PartitionLike, PrimeLike, as_partition, as_prime


@dataclass(frozen=True)
class OracleCaps:
    max_tableaux: int = 4000
    max_tabloids: int = 500_000


DEFAULT_CAPS = OracleCaps()


@dataclass(frozen=True)
class StandardTableau:
    shape: Partition
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if tuple(len(r) for r in self.rows) != self.shape.parts:
            raise ValueError(f"rows {self.rows} do not fill shape ({self.shape})")
        if sorted(x for r in self.rows for x in r) != list(range(1, self.shape.n + 1)):
            raise ValueError(f"entries of {self.rows} are not 1..{self.shape.n}")
        for r, row in enumerate(self.rows):
            for c, x in enumerate(row):
                if c and row[c - 1] >= x:
                    raise ValueError(f"row {r + 1} of {self.rows} is not increasing")
                if r and self.rows[r - 1][c] >= x:
                    raise ValueError(f"column {c + 1} of {self.rows} is not increasing")

    def entries(self) -> list[int]:
        """Entries in row-major cell order."""
        return [x for r in self.rows for x in r]


def hook_count(lam: PartitionLike) -> int:
    """Number of standard tableaux, by the hook length formula."""
    lam = as_partition(lam)
    conj = [sum(1 for x in lam.parts if x > c) for c in range(lam.first)]
    hooks = prod(lam.parts[r] - c + conj[c] - r - 1 for r in range(len(lam)) for c in range(lam.parts[r]))
    return factorial(lam.n) // hooks


def tabloid_count(lam: PartitionLike) -> int:
    lam = as_partition(lam)
    return factorial(lam.n) // prod(factorial(x) for x in lam.parts)


def _check_caps(lam: Partition, caps: OracleCaps) -> None:
    f = hook_count(lam)
    if f > caps.max_tableaux:
        raise OracleOutOfRange(f"({lam}) has {f} standard tableaux > cap {caps.max_tableaux}")
    t = tabloid_count(lam)
    if t > caps.max_tabloids:
        raise OracleOutOfRange(f"({lam}) has {t} tabloids > cap {caps.max_tabloids}")


def _row_words(parts: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """Row index of each entry 1..n, lexicographically, for every standard filling."""
    n = sum(parts)
    filled = [0] * len(parts)
    word: list[int] = []

    def rec() -> Iterator[tuple[int, ...]]:
        if len(word) == n:
            yield tuple(word)
            return
        for r in range(len(parts)):
            if filled[r] < parts[r] and (r == 0 or filled[r - 1] > filled[r]):
                filled[r] += 1
                word.append(r)
                yield from rec()
                word.pop()
                filled[r] -= 1

    yield from rec()


def standard_tableaux(lam: PartitionLike, caps: OracleCaps = DEFAULT_CAPS) -> list[StandardTableau]:
    """All standard tableaux of shape ``lam``, ordered lexicographically by the
    sequence (row of 1, row of 2, ..., row of n)."""
    lam = as_partition(lam)
    f = hook_count(lam)
    if f > caps.max_tableaux:
        raise OracleOutOfRange(f"({lam}) has {f} standard tableaux > cap {caps.max_tableaux}")
    out = []
    for word in _row_words(lam.parts):
        rows: list[list[int]] = [[] for _ in lam.parts]
        for j, r in enumerate(word, start=1):
            rows[r].append(j)
        out.append(StandardTableau(lam, tuple(tuple(r) for r in rows)))
    return out


@lru_cache(maxsize=64)
def _column_group(parts: tuple[int, ...]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Column stabiliser of the shape acting on row-major cells.

    Returns ``(row_of_cell, perms, signs)`` where ``perms[k, c]`` is the image of
    cell ``c`` under the k-th column permutation.
    """
    cells = [(r, c) for r, length in enumerate(parts) for c in range(length)]
    index = {cell: k for k, cell in enumerate(cells)}
    row_of_cell = np.array([r for r, _ in cells], dtype=np.int64)
    columns = [[index[(r, c)] for r in range(len(parts)) if parts[r] > c] for c in range(parts[0] if parts else 0)]
    perms = []
    signs = []
    for choice in itertools.product(*(itertools.permutations(col) for col in columns)):
        image = list(range(len(cells)))
        sign = 1
        for col, perm in zip(columns, choice):
            for src, dst in zip(col, perm):
                image[src] = dst
            sign *= _perm_sign([col.index(x) for x in perm])
        perms.append(image)
        signs.append(sign)
    return row_of_cell, np.array(perms, dtype=np.int64).reshape(len(perms), len(cells)), np.array(signs, dtype=np.int64)


def _perm_sign(perm: Sequence[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


class _Expansion:
    """Polytabloid expansions of the standard tableaux of one shape."""

    def __init__(self, lam: Partition, caps: OracleCaps):
        _check_caps(lam, caps)
        self.lam = lam
        self.tableaux = standard_tableaux(lam, caps)
        n = lam.n
        self.base = max(len(lam), 1)
        if self.base ** max(n, 1) >= 2**62:
            raise OracleOutOfRange(f"tabloid keys of ({lam}) do not fit in 64 bits")
        row_of_cell, perms, self.signs = _column_group(lam.parts)
        weights = self.base ** np.arange(n, dtype=np.int64)
        ent = np.array([t.entries() for t in self.tableaux], dtype=np.int64).reshape(len(self.tableaux), n)
        # keys[k, t]: tabloid of the k-th column permutation applied to tableau t
        self.keys = row_of_cell[perms] @ weights[ent - 1].T

    def swapped(self, keys: np.ndarray, i: int) -> np.ndarray:
        """Keys after letting ``s_i`` (swap i and i+1) act on the tabloids."""
        lo, hi = self.base ** (i - 1), self.base**i
        d_lo = (keys // lo) % self.base
        d_hi = (keys // hi) % self.base
        return keys + (d_hi - d_lo) * lo + (d_lo - d_hi) * hi

    def pairing(self, left: np.ndarray, right: np.ndarray) -> np.ndarray:
        """Integer matrix of ``<x_s, y_t>`` for expansions given as key columns."""
        both = np.concatenate([left.ravel(order="F"), right.ravel(order="F")])
        uniq, inv = np.unique(both, return_inverse=True)
        k = self.keys.shape[0]
        nl, nr = left.shape[1], right.shape[1]
        data_l = np.tile(self.signs, nl)
        data_r = np.tile(self.signs, nr)
        el = sparse.csr_matrix((data_l, (np.repeat(np.arange(nl), k), inv[: nl * k])), shape=(nl, len(uniq)))
        er = sparse.csr_matrix((data_r, (np.repeat(np.arange(nr), k), inv[nl * k :])), shape=(nr, len(uniq)))
        return np.asarray((el @ er.T).todense(), dtype=np.int64)

    def gram(self) -> np.ndarray:
        return self.pairing(self.keys, self.keys)


def gram_matrix_int(lam: PartitionLike, caps: OracleCaps = DEFAULT_CAPS) -> np.ndarray:
    """Gram matrix of the standard polytabloids over the integers."""
    return _Expansion(as_partition(lam), caps).gram()


def gram_matrix(lam: PartitionLike, p: PrimeLike, caps: OracleCaps = DEFAULT_CAPS) -> PrimeFieldMatrix:
    return PrimeFieldMatrix(gram_matrix_int(lam, caps), as_prime(p).p)


@dataclass
class IrreducibleModule:
    """``D^lam`` with the matrices of ``s_1, ..., s_{n-1}`` in a fixed basis."""

    label: Partition
    p: int
    dim: int
    generators: list[PrimeFieldMatrix]

    def __post_init__(self) -> None:
        self._class_table: Optional[dict[tuple[int, ...], int]] = None

    @property
    def n(self) -> int:
        return self.label.n

    def check_relations(self) -> None:
        """Assert the Coxeter relations of S_n; raises AssertionError on failure."""
        ident = PrimeFieldMatrix.identity(self.dim, self.p)
        gens = self.generators
        for i, m in enumerate(gens, start=1):
            assert m @ m == ident, f"s_{i} is not an involution on D^({self.label}), p={self.p}"
        for i in range(len(gens) - 1):
            a, b = gens[i], gens[i + 1]
            assert a @ b @ a == b @ a @ b, f"braid relation fails for s_{i + 1}, s_{i + 2}"
        for i in range(len(gens)):
            for j in range(i + 2, len(gens)):
                assert gens[i] @ gens[j] == gens[j] @ gens[i], f"s_{i + 1}, s_{j + 1} do not commute"

    def word_matrix(self, word: Sequence[int]) -> PrimeFieldMatrix:
        out = PrimeFieldMatrix.identity(self.dim, self.p)
        for i in word:
            out = out @ self.generators[i - 1]
        return out

    def class_traces(self) -> dict[tuple[int, ...], int]:
        """Trace on every conjugacy class of S_n, keyed by cycle type.

        The representative of cycle type ``(c_1, c_2, ...)`` is the product of the
        Coxeter words ``s_a s_{a+1} ... s_{a+c-2}`` over consecutive blocks; a
        depth-first walk over cycle types shares the common prefix products.
        """
        if self._class_table is None:
            n = self.n
            table: dict[tuple[int, ...], int] = {}

            def visit(cycles: tuple[int, ...], start: int, cap: int, prefix: Optional[PrimeFieldMatrix]) -> None:
                key = cycles + (1,) * (n - sum(cycles))
                table[key] = self.dim % self.p if prefix is None else prefix.trace()
                for c in range(min(cap, n - start + 1), 1, -1):
                    acc = prefix
                    for i in range(start, start + c - 1):
                        gen = self.generators[i - 1]
                        acc = gen if acc is None else acc @ gen
                    visit(cycles + (c,), start + c, c, acc)

            visit((), 1, n, None)
            self._class_table = table
        return self._class_table

    def trace_of_cycle_type(self, cycle_type: tuple[int, ...]) -> int:
        """Trace of any permutation with the given cycle type (a class function)."""
        cycles = tuple(sorted((c for c in cycle_type if c > 1), reverse=True))
        return self.class_traces()[cycles + (1,) * (self.n - sum(cycles))]

    def trace_of_word(self, word: Sequence[int]) -> int:
        return self.trace_of_cycle_type(cycle_type(word_permutation(word, self.n)))


def word_permutation(word: Sequence[int], n: int) -> list[int]:
    """The permutation of ``0..n-1`` given by the product ``s_{w_1} s_{w_2} ...``."""
    perm = list(range(n))
    for i in reversed(word):
        perm[i - 1], perm[i] = perm[i], perm[i - 1]
    return perm


def cycle_type(perm: Sequence[int]) -> tuple[int, ...]:
    seen = [False] * len(perm)
    out = []
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            out.append(length)
    return tuple(sorted(out, reverse=True))


def _build_module(lam: Partition, q: int, caps: OracleCaps) -> IrreducibleModule:
    exp = _Expansion(lam, caps)
    g = np.mod(exp.gram(), q)
    _, piv = rref(g, q, full=False)
    r = len(piv)
    core = PrimeFieldMatrix(g[np.ix_(piv, piv)], q)
    core_inv = core.inverse()
    basis_keys = exp.keys[:, piv]
    gens = []
    for i in range(1, lam.n):
        h = np.mod(exp.pairing(basis_keys, exp.swapped(basis_keys, i)), q)
        gens.append(PrimeFieldMatrix(mod_matmul(core_inv.a, h, q), q))
    module = IrreducibleModule(lam, q, r, gens)
    module.check_relations()
    return module


@lru_cache(maxsize=16)
def _cached_module(parts: tuple[int, ...], q: int, caps: OracleCaps) -> IrreducibleModule:
    return _build_module(Partition(parts), q, caps)


def irreducible_action(lam: PartitionLike, p: PrimeLike, caps: OracleCaps = DEFAULT_CAPS) -> IrreducibleModule:
    lam, q = _require_regular(lam, p)
    _check_caps(lam, caps)
    return _cached_module(lam.parts, q, caps)


def dim_irreducible(lam: PartitionLike, p: PrimeLike, caps: OracleCaps = DEFAULT_CAPS) -> int:
    """``dim D^lam``: the rank over F_p of the Gram matrix."""
    lam, q = _require_regular(lam, p)
    return gram_matrix(lam, q, caps).rank()


def _fixed_depth(module: IrreducibleModule, eigenvalue: int) -> int:
    """Largest ``j`` such that some nonzero v has ``s_i v = eigenvalue * v`` for all ``i <= j``."""
    q = module.p
    basis = PrimeFieldMatrix.identity(module.dim, q)
    ident = basis
    best = 0
    for j, gen in enumerate(module.generators[:-1] if module.n > 1 else [], start=1):
        cond = (gen - ident.scale(eigenvalue)) @ basis
        null = cond.nullspace()
        if null.cols == 0:
            break
        basis = basis @ null
        best = j
    return best


def minimal_a(lam: PartitionLike, p: PrimeLike, caps: OracleCaps = DEFAULT_CAPS) -> int:
    """Least ``a >= 1`` such that ``D^lam`` restricted to S_{n-a} has a trivial or sign submodule."""
    lam, q = _require_regular(lam, p)
    _require_nonempty(lam)
    module = irreducible_action(lam, q, caps)
    n = lam.n
    if n <= 2:
        return 1
    depth = _fixed_depth(module, 1)
    if q != 2:
        depth = max(depth, _fixed_depth(module, -1))
    return n - 1 - depth


def random_words(n: int, samples: int, seed: int) -> list[list[int]]:
    """Deterministic pseudo-random words in ``1..n-1`` of length ``1..2(n-1)``."""
    rng = random.Random(seed)
    if n <= 1:
        return [[] for _ in range(samples)]
    return [[rng.randint(1, n - 1) for _ in range(rng.randint(1, 2 * (n - 1)))] for _ in range(samples)]


def twisted_trace_check(
    lam: PartitionLike,
    p: PrimeLike,
    samples: int = 32,
    seed: int = 0,
    caps: OracleCaps = DEFAULT_CAPS,
) -> bool:
    """Compare ``(-1)^len(w) tr_{D^lam}(w)`` with ``tr_{D^{M(lam)}}(w)`` on random words."""
    lam, q = _require_regular(lam, p)
    twin = mullineux(lam, q)
    left = irreducible_action(lam, q, caps)
    right = irreducible_action(twin, q, caps)
    if left.dim != right.dim:
        return False
    for word in random_words(lam.n, samples, seed):
        sign = -1 if len(word) % 2 else 1
        if (sign * left.trace_of_word(word) - right.trace_of_word(word)) % q:
            return False
    return True


def restriction_multiplicities_mod_p(
    table: dict[tuple[int, ...], int],
    smaller: dict[Partition, dict[tuple[int, ...], int]],
    n: int,
    p: int,
) -> dict[Partition, int]:
    """Composition multiplicities (mod p) of a restriction from S_n to S_{n-1}.

    ``table`` is the class-trace table of a module for S_n, ``smaller`` maps each
    p-regular partition of ``n - 1`` to the class-trace table of its simple module.
    Traces of pairwise non-isomorphic absolutely irreducible modules are linearly
    independent and additive along composition series, so the multiplicities are
    the unique solution of a linear system over F_p.
    """
    if n == 1:
        return {Partition(()): 1}
    labels = sorted(smaller, key=lambda mu: mu.parts, reverse=True)
    classes = sorted(smaller[labels[0]])
    system = PrimeFieldMatrix([[smaller[mu][c] for mu in labels] for c in classes], p)
    rhs = PrimeFieldMatrix(
        [[table[tuple(sorted(c + (1,), reverse=True))]] for c in classes],
        p,
    )
    sol = system.solve(rhs)
    return {mu: int(sol.a[j, 0]) for j, mu in enumerate(labels)}


class DimCache:
    """Append-only JSON-lines cache of ``{p, lambda, dim, a}`` records."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._data: dict[tuple[int, str], dict] = {}
        if self.path.exists():
            for line in self.path.read_text().splitlines():
                if line.strip():
                    rec = json.loads(line)
                    self._data[(rec["p"], rec["lambda"])] = rec

    def get(self, lam: Partition, p: int) -> Optional[dict]:
        return self._data.get((p, str(lam)))

    def put(self, lam: Partition, p: int, dim: int, a: Optional[int]) -> None:
        key = (p, str(lam))
        with self._lock:
            if key in self._data:
                return
            rec = {"p": p, "lambda": str(lam), "dim": dim, "a": a}
            self._data[key] = rec
            with self.path.open("a") as fh:
                fh.write(json.dumps(rec, sort_keys=True) + "\n")
