"""Exact evaluators for the dimension lower bounds.

Everything here is exact: rationals are ``fractions.Fraction`` and the
irrational bound ``2 * 3**((t-2)/3)`` is kept symbolic and compared through
cubes, so no value is ever rounded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod
from typing import Literal, Optional, Union

from .errors import BadParams, MissingA, MOutOfRange, NegativeM, PreconditionFailed
from .crystal import _require_nonempty, _require_regular
from .mullineux import first_row_condition, mullineux
from .partitions import Partition, PartitionLike, PrimeLike, as_prime, attach

Number = Union[int, Fraction]


def double_factorial(k: int) -> int:
    """``k!! = k (k-2) (k-4) ...``; ``0!! = (-1)!! = 1``."""
    if k < -1:
        raise ValueError(f"double factorial undefined for {k}")
    return prod(range(k, 0, -2)) if k > 0 else 1


def C(m: int, p: PrimeLike, n: int) -> Fraction:
    """``p^m binom(n/p - delta_p, m) = (1/m!) prod_{i<m} (n - (delta_p + i) p)``."""
    if m < 0:
        raise NegativeM(f"m must be nonnegative, got {m}")
    pc = as_prime(p)
    q, delta = pc.p, pc.delta
    return Fraction(prod(n - (delta + i) * q for i in range(m)), factorial(m))


def james_bound(m: int, n: int) -> Fraction:
    if m == 1:
        return Fraction(n - 2)
    if m == 2:
        return Fraction(n * n - 5 * n + 2, 2)
    if m == 3:
        return Fraction(n**3 - 9 * n**2 + 14 * n, 6)
    if m == 4:
        return Fraction(n**4 - 14 * n**3 + 47 * n**2 - 34 * n, 24)
    raise MOutOfRange(f"James' bounds cover 1 <= m <= 4, got m={m}")


def theorem_A_bound(lam: PartitionLike, p: PrimeLike) -> Optional[Fraction]:
    """``C^p_m(n)`` for ``lam = (n - m, mu)`` with ``m >= 4`` and ``n >= p(delta_p + m - 2)``.

    Returns None when the hypotheses fail.  The value may be <= 0 (vacuous).
    """
    lam, q = _require_regular(lam, p)
    pc = as_prime(q)
    n = lam.n
    m = n - lam.first
    if m < 4 or n < q * (pc.delta + m - 2):
        return None
    assert attach(n, lam.tail) == lam
    return C(m, pc, n)


@dataclass(frozen=True)
class ExactBound:
    """Either a rational value or ``2 * 3**((t - 2) / 3)``.

    ``cube()`` returns the exact cube of the value; cubing is monotone on the
    reals, so every comparison goes through it.
    """

    kind: Literal["rational", "two_times_three_pow"]
    value: Optional[Fraction] = None
    t: Optional[int] = None

    @classmethod
    def rational(cls, x: Number) -> "ExactBound":
        return cls("rational", value=Fraction(x))

    @classmethod
    def three_pow(cls, t: int) -> "ExactBound":
        return cls("two_times_three_pow", t=t)

    def cube(self) -> Fraction:
        if self.kind == "rational":
            return self.value**3
        return 8 * Fraction(3) ** (self.t - 2)

    def holds(self, dim: int) -> bool:
        """``dim >= self``, decided exactly."""
        return Fraction(dim) ** 3 >= self.cube()

    def is_vacuous(self) -> bool:
        return self.kind == "rational" and self.value <= 0

    def __lt__(self, other: "ExactBound") -> bool:
        return self.cube() < other.cube()

    def __le__(self, other: "ExactBound") -> bool:
        return self.cube() <= other.cube()

    def __gt__(self, other: "ExactBound") -> bool:
        return self.cube() > other.cube()

    def __ge__(self, other: "ExactBound") -> bool:
        return self.cube() >= other.cube()

    def __float__(self) -> float:
        if self.kind == "rational":
            return float(self.value)
        return 2.0 * 3.0 ** ((self.t - 2) / 3)

    def __str__(self) -> str:
        if self.kind == "rational":
            return str(self.value)
        e = Fraction(self.t - 2, 3)
        if e.denominator == 1 and e >= 0:
            return str(2 * 3 ** int(e))
        return f"2*3^({e})"

    def to_json(self) -> Union[str, dict]:
        if self.kind == "rational":
            return f"{self.value.numerator}/{self.value.denominator}"
        return {"t": self.t}


def theorem_B_bound(n: int, k: int, a: int) -> ExactBound:
    """``2 * 3**((t - 2)/3)`` with ``t = max(n - k, a)``.

    ``a = 0`` is accepted: it is the depth at which a one-dimensional module
    already contains a one-dimensional submodule without restricting.
    """
    if not (1 <= k <= n) or a < 0:
        raise BadParams(f"need 1 <= k <= n and a >= 0, got n={n}, k={k}, a={a}")
    return ExactBound.three_pow(max(n - k, a))


def mullineux_k(lam: PartitionLike, p: PrimeLike) -> int:
    """``max(lam_1, M(lam)_1)``."""
    lam, q = _require_regular(lam, p)
    return max(lam.first, mullineux(lam, q).first)


def theorem_C_bound(lam: PartitionLike) -> int:
    lam, _ = _require_regular(lam, 2)
    _require_nonempty(lam)
    return 2 ** (lam.n - lam.first)


def lemma_L1_bound(lam: PartitionLike, p: PrimeLike) -> int:
    """``prod_{i >= p} ceil(i / (p-1)) ** lam_i`` over 1-based row indices."""
    lam, q = _require_regular(lam, p)
    value = 1
    for row in range(q, len(lam) + 1):
        value *= (-(-row // (q - 1))) ** lam.part(row)
    corollary = lemma_L1_corollary(lam, q)
    if value < corollary:
        raise AssertionError(f"L1 product {value} below its corollary {corollary} for ({lam}), p={q}")
    return value


def lemma_L1_corollary(lam: PartitionLike, p: PrimeLike) -> int:
    """``2 ** (n - lam_1 - ... - lam_{p-1})``."""
    lam, q = _require_regular(lam, p)
    return 2 ** (lam.n - sum(lam.parts[: q - 1]))


def two_row_bound(a: int, b: int, p: PrimeLike) -> int:
    q = as_prime(p).p
    if not (a >= b >= 0):
        raise BadParams(f"need a >= b >= 0, got ({a},{b})")
    if a - b < q - 1:
        raise PreconditionFailed(f"a - b = {a - b} < p - 1 = {q - 1}")
    return 2**b


def first_row_bound(lam: PartitionLike, p: PrimeLike) -> Optional[int]:
    lam, q = _require_regular(lam, p)
    _require_nonempty(lam)
    if not first_row_condition(lam, q):
        return None
    return 2 ** (lam.n - lam.first)


def lineq_margin(q: Number, k: int, a: Number) -> Fraction:
    """RHS minus LHS of ``prod_{i<=k}(a-i) <= (a-k+k/q) prod_{i<k}(a-i-1/q)``."""
    q, a = Fraction(q), Fraction(a)
    if q < 1 or k < 0 or a < k:
        raise BadParams(f"need q >= 1, k >= 0, a >= k; got q={q}, k={k}, a={a}")
    lhs = prod((a - i for i in range(k + 1)), start=Fraction(1))
    rhs = (a - k + Fraction(k) / q) * prod((a - i - 1 / q for i in range(k)), start=Fraction(1))
    return rhs - lhs


BoundTag = Literal["A", "james", "B_safe", "B_oracle", "B_crystal", "C", "L1", "two_row", "first_row"]
ALL_FAMILIES = ("A", "james", "B", "C", "L1", "two_row", "first_row")


@dataclass(frozen=True)
class BoundEntry:
    tag: str
    applicable: bool
    value: Optional[ExactBound] = None
    note: str = ""
    guaranteed: bool = True

    def to_json(self) -> dict:
        out: dict = {"tag": self.tag, "applicable": self.applicable}
        if self.applicable:
            out["value"] = self.value.to_json()
            out["vacuous"] = self.value.is_vacuous()
            out["guaranteed"] = self.guaranteed
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class BoundReport:
    partition: Partition
    p: int
    entries: tuple[BoundEntry, ...]
    best: ExactBound = field(default_factory=lambda: ExactBound.rational(1))
    best_tag: str = "trivial"

    def entry(self, tag: str) -> BoundEntry:
        for e in self.entries:
            if e.tag == tag:
                return e
        raise KeyError(tag)

    def applicable(self) -> list[BoundEntry]:
        return [e for e in self.entries if e.applicable]

    def to_json(self) -> dict:
        return {
            "lambda": str(self.partition),
            "p": self.p,
            "entries": [e.to_json() for e in self.entries],
            "best": {"tag": self.best_tag, "value": self.best.to_json()},
        }


def _na(tag: str, why: str) -> BoundEntry:
    return BoundEntry(tag, False, None, why)


def best_lower_bound(
    lam: PartitionLike,
    p: PrimeLike,
    a_mode: Literal["safe", "oracle", "crystal"] = "safe",
    a_value: Optional[int] = None,
    families: tuple[str, ...] = ALL_FAMILIES,
) -> BoundReport:
    """Evaluate every selected bound that applies to ``lam`` and pick the largest.

    In ``oracle`` mode ``a_value`` must be the true minimal depth (see
    ``specht.minimal_a``); in ``crystal`` mode it defaults to ``a_crystal`` and
    the entry is flagged as not guaranteed.  The maximum is taken over
    guaranteed entries only and clamped below by 1.
    """
    lam, q = _require_regular(lam, p)
    pc = as_prime(q)
    n, m = lam.n, lam.n - lam.first
    entries: list[BoundEntry] = []

    if "A" in families:
        if m < 4:
            entries.append(_na("A", f"m = n - lambda_1 = {m} < 4"))
        elif n < q * (pc.delta + m - 2):
            entries.append(_na("A", f"n = {n} < p(delta_p + m - 2) = {q * (pc.delta + m - 2)}"))
        else:
            entries.append(BoundEntry("A", True, ExactBound.rational(theorem_A_bound(lam, q))))

    if "james" in families:
        if 1 <= m <= 4:
            entries.append(BoundEntry("james", True, ExactBound.rational(james_bound(m, n))))
        else:
            entries.append(_na("james", f"m = {m} outside [1, 4]"))

    if "B" in families:
        tag = f"B_{a_mode}"
        if q == 2:
            entries.append(_na(tag, "stated for p >= 3 only"))
        elif n == 0:
            entries.append(_na(tag, "empty partition"))
        else:
            k = mullineux_k(lam, q)
            one_dim = lam.first == n or mullineux(lam, q).first == n
            if a_mode == "safe":
                entries.append(BoundEntry(tag, True, theorem_B_bound(n, k, 0), f"k={k}; t=n-k"))
            else:
                if a_mode == "oracle" and a_value is None:
                    raise MissingA("a_mode='oracle' needs a_value from the oracle")
                if a_value is None:
                    from .crystal import a_crystal

                    a_value = a_crystal(lam, q)
                a_eff = 0 if one_dim else a_value
                entries.append(
                    BoundEntry(
                        tag,
                        True,
                        theorem_B_bound(n, k, a_eff),
                        f"k={k}; a={a_value}" + ("; one-dimensional, a taken as 0" if one_dim else ""),
                        guaranteed=a_mode == "oracle",
                    )
                )

    if "C" in families:
        if q != 2:
            entries.append(_na("C", "p = 2 only"))
        elif n == 0:
            entries.append(_na("C", "empty partition"))
        else:
            entries.append(BoundEntry("C", True, ExactBound.rational(theorem_C_bound(lam))))

    if "L1" in families:
        entries.append(BoundEntry("L1", True, ExactBound.rational(lemma_L1_bound(lam, q))))

    if "two_row" in families:
        if len(lam) > 2 or n == 0:
            entries.append(_na("two_row", "more than two rows" if n else "empty partition"))
        else:
            a, b = lam.first, lam.part(2)
            if a - b < q - 1:
                entries.append(_na("two_row", f"a - b = {a - b} < p - 1 = {q - 1}"))
            else:
                entries.append(BoundEntry("two_row", True, ExactBound.rational(two_row_bound(a, b, q))))

    if "first_row" in families:
        value = first_row_bound(lam, q) if n else None
        if value is None:
            entries.append(_na("first_row", "first-row Mullineux condition fails"))
        else:
            entries.append(BoundEntry("first_row", True, ExactBound.rational(value)))

    best, best_tag = ExactBound.rational(1), "trivial"
    for e in entries:
        if e.applicable and e.guaranteed and e.value > best:
            best, best_tag = e.value, e.tag
    return BoundReport(lam, q, tuple(entries), best, best_tag)
