"""Dense matrices over a prime field F_p.

Entries live in a numpy int64 array reduced into ``[0, p-1]``.  Products are
computed in float64 (BLAS) whenever every partial sum is guaranteed to stay
below 2**53, otherwise with exact Python integers.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

_FLOAT_EXACT = 2**53


def mod_matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """``a @ b mod p`` for arrays already reduced mod p."""
    inner = a.shape[-1]
    if inner * (p - 1) ** 2 < _FLOAT_EXACT:
        out = a.astype(np.float64) @ b.astype(np.float64)
        return np.mod(out, p).astype(np.int64)
    out = a.astype(object) @ b.astype(object)
    return np.mod(out, p).astype(np.int64)


def rref(a: np.ndarray, p: int, *, full: bool = True) -> tuple[np.ndarray, list[int]]:
    """Row-reduce ``a`` over F_p.

    The pivot in each column is the first nonzero entry at or below the current
    row, so pivot columns are reproducible.  With ``full=False`` only the rows
    below each pivot are cleared (row echelon form, enough for the rank).

    Returns the reduced matrix and the list of pivot columns.
    """
    m = np.mod(np.asarray(a, dtype=np.int64), p)
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        inv = pow(int(m[r, c]), -1, p)
        if inv != 1:
            m[r, c:] = (m[r, c:] * inv) % p
        col = m[:, c].copy()
        col[r] = 0
        if not full:
            col[:r] = 0
        targets = np.flatnonzero(col)
        if targets.size:
            m[targets, c:] = (m[targets, c:] - np.outer(col[targets], m[r, c:])) % p
        pivots.append(c)
        r += 1
    return m, pivots


class PrimeFieldMatrix:
    """A dense ``rows x cols`` matrix with entries in F_p."""

    __slots__ = ("a", "p")

    def __init__(self, entries: np.ndarray | Sequence[Sequence[int]], p: int):
        self.p = int(p)
        if isinstance(entries, np.ndarray) and entries.dtype != object:
            a = np.mod(entries, self.p).astype(np.int64)
        else:
            a = np.array([[int(x) % self.p for x in row] for row in entries], dtype=np.int64)
            if a.ndim == 1:
                a = a.reshape(len(a), 0)
        if a.ndim != 2:
            raise ValueError(f"expected a 2-d array, got shape {a.shape}")
        self.a = a

    @classmethod
    def identity(cls, n: int, p: int) -> "PrimeFieldMatrix":
        return cls(np.eye(n, dtype=np.int64), p)

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> "PrimeFieldMatrix":
        return cls(np.zeros((rows, cols), dtype=np.int64), p)

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape  # type: ignore[return-value]

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    def __repr__(self) -> str:
        return f"PrimeFieldMatrix({self.a.tolist()!r}, p={self.p})"

    def tolist(self) -> list[list[int]]:
        return self.a.tolist()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PrimeFieldMatrix):
            return NotImplemented
        return self.p == other.p and self.shape == other.shape and bool(np.array_equal(self.a, other.a))

    __hash__ = None  # type: ignore[assignment]

    def _check(self, other: "PrimeFieldMatrix") -> None:
        if self.p != other.p:
            raise ValueError(f"field mismatch: F_{self.p} vs F_{other.p}")

    def __matmul__(self, other: "PrimeFieldMatrix") -> "PrimeFieldMatrix":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return PrimeFieldMatrix(mod_matmul(self.a, other.a, self.p), self.p)

    def __add__(self, other: "PrimeFieldMatrix") -> "PrimeFieldMatrix":
        self._check(other)
        return PrimeFieldMatrix(self.a + other.a, self.p)

    def __sub__(self, other: "PrimeFieldMatrix") -> "PrimeFieldMatrix":
        self._check(other)
        return PrimeFieldMatrix(self.a - other.a, self.p)

    def __neg__(self) -> "PrimeFieldMatrix":
        return PrimeFieldMatrix(-self.a, self.p)

    def scale(self, c: int) -> "PrimeFieldMatrix":
        return PrimeFieldMatrix(self.a * (c % self.p), self.p)

    @property
    def T(self) -> "PrimeFieldMatrix":
        return PrimeFieldMatrix(self.a.T.copy(), self.p)

    def is_zero(self) -> bool:
        return not self.a.any()

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and bool(np.array_equal(self.a, self.a.T))

    def trace(self) -> int:
        return int(np.trace(self.a) % self.p)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PrimeFieldMatrix":
        return PrimeFieldMatrix(self.a[np.ix_(list(rows), list(cols))], self.p)

    def vstack(self, other: "PrimeFieldMatrix") -> "PrimeFieldMatrix":
        self._check(other)
        return PrimeFieldMatrix(np.vstack([self.a, other.a]), self.p)

    def rref(self) -> tuple["PrimeFieldMatrix", list[int]]:
        m, piv = rref(self.a, self.p)
        return PrimeFieldMatrix(m, self.p), piv

    def pivot_columns(self) -> list[int]:
        return rref(self.a, self.p, full=False)[1]

    def rank(self) -> int:
        return len(self.pivot_columns())

    def nullspace(self) -> "PrimeFieldMatrix":
        """A basis of ``{v : M v = 0}`` stored as the columns of a ``cols x k`` matrix."""
        m, piv = rref(self.a, self.p)
        n = self.cols
        pivset = set(piv)
        free = [c for c in range(n) if c not in pivset]
        basis = np.zeros((n, len(free)), dtype=np.int64)
        basis[free, np.arange(len(free))] = 1
        if piv and free:
            basis[piv, :] = -m[: len(piv)][:, free]
        return PrimeFieldMatrix(basis, self.p)

    def solve(self, rhs: "PrimeFieldMatrix") -> "PrimeFieldMatrix":
        """The unique ``X`` with ``self @ X == rhs``.

        ``self`` may have more rows than columns but must have full column rank;
        an inconsistent system raises ``LinAlgError``.
        """
        self._check(rhs)
        k = self.cols
        if self.rows < k:
            raise ValueError("solve needs at least as many rows as columns")
        aug = np.hstack([self.a, rhs.a])
        m, piv = rref(aug, self.p)
        if piv[:k] != list(range(k)):
            raise np.linalg.LinAlgError("matrix does not have full column rank over F_%d" % self.p)
        if len(piv) > k:
            raise np.linalg.LinAlgError("system is inconsistent over F_%d" % self.p)
        return PrimeFieldMatrix(m[:k, k:], self.p)

    def inverse(self) -> "PrimeFieldMatrix":
        return self.solve(PrimeFieldMatrix.identity(self.rows, self.p))
