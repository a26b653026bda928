"""Prime fields, the quadratic character, and point counts on y^2 = f_S(x).

Subsets of GF(p) are stored as int bitmasks (bit i set iff i is a member),
the same representation the ring and code modules use.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator

import numpy as np

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; exact for n < 3.3e24."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_between(lo: int, hi: int) -> list[int]:
    """Odd primes p with lo <= p < hi."""
    return [n for n in range(max(lo, 3), hi) if n % 2 and is_prime(n)]


class Prime(int):
    """An odd prime. Construction fails for anything else."""

    def __new__(cls, p):
        value = int(p)
        if value != p or value < 3 or not is_prime(value):
            raise ValueError(f"{p!r} is not an odd prime")
        return super().__new__(cls, value)


@dataclass(frozen=True)
class Subset:
    """A subset of GF(p) held as a p-bit mask."""

    p: int
    mask: int = 0

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.p:
            raise ValueError(f"mask does not fit in {self.p} bits")

    @classmethod
    def of(cls, p: int, elements: Iterable[int]) -> "Subset":
        mask = 0
        for e in elements:
            mask |= 1 << (e % p)
        return cls(p, mask)

    @classmethod
    def full(cls, p: int) -> "Subset":
        return cls(p, (1 << p) - 1)

    def complement(self) -> "Subset":
        return Subset(self.p, self.mask ^ ((1 << self.p) - 1))

    def symmetric_difference(self, other: "Subset") -> "Subset":
        _same_p(self, other)
        return Subset(self.p, self.mask ^ other.mask)

    def scaled(self, u: int, v: int = 0) -> "Subset":
        """The image {u*s + v} of the set."""
        return Subset.of(self.p, (u * s + v for s in self))

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        m = self.mask
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low

    def __contains__(self, a: int) -> bool:
        return bool(self.mask >> (a % self.p) & 1)

    def elements(self) -> list[int]:
        return list(self)

    def __repr__(self) -> str:
        return f"Subset(p={self.p}, {self.elements()})"


def _same_p(a, b) -> None:
    if a.p != b.p:
        raise ValueError(f"mismatched primes {a.p} and {b.p}")


def legendre(a: int, p: int) -> int:
    """Quadratic character of a mod p via Euler's criterion."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


@lru_cache(maxsize=None)
def _legendre_table(p: int) -> np.ndarray:
    p = Prime(p)
    return np.array([legendre(a, p) for a in range(p)], dtype=np.int64)


@lru_cache(maxsize=None)
def residue_sets(p: int) -> tuple[Subset, Subset]:
    """(Q, N): the nonzero squares and the nonsquares of GF(p)."""
    p = Prime(p)
    q_mask = 0
    for x in range(1, p):
        q_mask |= 1 << (x * x % p)
    n_mask = ((1 << p) - 2) ^ q_mask
    return Subset(p, q_mask), Subset(p, n_mask)


def _nonempty(S: Subset) -> None:
    Prime(S.p)
    if not S.mask:
        raise ValueError("S must be non-empty")


def _f_values(S: Subset) -> np.ndarray:
    """f_S(a) mod p for every a, accumulated factor by factor."""
    p = S.p
    a = np.arange(p, dtype=np.int64)
    acc = np.ones(p, dtype=np.int64)
    for s in S:
        acc = acc * ((a - s) % p) % p
    return acc


def char_sum(S: Subset) -> int:
    """Sum over a in GF(p) of legendre(f_S(a))."""
    _nonempty(S)
    return int(_legendre_table(S.p)[_f_values(S)].sum())


@lru_cache(maxsize=None)
def _sqrt_counts(p: int) -> np.ndarray:
    """Number of y in GF(p) with y^2 = v, indexed by v."""
    counts = np.zeros(p, dtype=np.int64)
    np.add.at(counts, np.arange(p, dtype=np.int64) ** 2 % p, 1)
    return counts


@dataclass(frozen=True)
class CurveCount:
    p: int
    size: int
    affine: int
    at_infinity: int
    total: int
    char_sum: int
    genus: int


def point_count(S: Subset) -> CurveCount:
    """Count GF(p)-points on y^2 = f_S(x).

    The affine part is found by counting square roots of each f_S(a); the
    points at infinity follow the parity of |S| (two if even, one if odd).
    The character-sum identity is then checked against the direct count.
    """
    _nonempty(S)
    p, size = S.p, len(S)
    values = _f_values(S)
    affine = int(_sqrt_counts(p)[values].sum())
    cs = int(_legendre_table(p)[values].sum())
    at_inf = 2 if size % 2 == 0 else 1
    total = affine + at_inf
    if total != p + cs + at_inf:
        raise AssertionError(f"point count {total} disagrees with character sum {cs}")
    genus = (size - 2) // 2 if size % 2 == 0 else (size - 1) // 2
    return CurveCount(p, size, affine, at_inf, total, cs, genus)


def weil_bound(size: int, p: int) -> float:
    """Upper bound on |char_sum(S)| for |S| = size."""
    g2 = size - 2 if size % 2 == 0 else size - 1
    return g2 * p**0.5 + 1


# -- batched evaluation over many subsets at once -----------------------------
#
# Rows of a 0/1 matrix B (shape m x p) are subsets.  Two independent routes:
# character sums through a table of legendre(a - s), and affine point counts
# through discrete logarithms and square-root counting.


def masks_to_matrix(p: int, masks) -> np.ndarray:
    """Rows of 0/1 entries from an int64 array of masks or a list of Subsets/ints."""
    if isinstance(masks, np.ndarray):
        bits = np.arange(p, dtype=np.int64)
        return ((masks.astype(np.int64)[:, None] >> bits) & 1).astype(np.float64)
    width = (p + 7) // 8
    raw = b"".join(
        (m.mask if isinstance(m, Subset) else m).to_bytes(width, "little") for m in masks
    )
    bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
    return bits.reshape(-1, width * 8)[:, :p].astype(np.float64)


@lru_cache(maxsize=None)
def _neg_table(p: int) -> np.ndarray:
    # entry [s, a] is 1 iff legendre(a - s) == -1
    chi = _legendre_table(p)
    a = np.arange(p)
    return (chi[(a[None, :] - a[:, None]) % p] == -1).astype(np.float64)


def batch_char_sums(p: int, B: np.ndarray) -> np.ndarray:
    """char_sum for every row of B; empty rows give p (empty product is 1)."""
    negatives = np.rint(B @ _neg_table(p)).astype(np.int64)
    signs = 1 - 2 * (negatives & 1)
    outside = 1 - B.astype(np.int64)
    return (outside * signs).sum(axis=1)


@lru_cache(maxsize=None)
def _dlog_tables(p: int) -> tuple[np.ndarray, np.ndarray]:
    g = primitive_root(p)
    powers = np.empty(p - 1, dtype=np.int64)
    logs = np.zeros(p, dtype=np.int64)
    x = 1
    for e in range(p - 1):
        powers[e] = x
        logs[x] = e
        x = x * g % p
    a = np.arange(p)
    diff_logs = logs[(a[None, :] - a[:, None]) % p].astype(np.float64)
    return powers, diff_logs


def batch_point_totals(p: int, B: np.ndarray) -> np.ndarray:
    """|X_S(GF(p))| for every (non-empty) row of B, by counting solutions."""
    powers, diff_logs = _dlog_tables(p)
    exps = np.rint(B @ diff_logs).astype(np.int64) % (p - 1)
    member = B.astype(bool)
    values = np.where(member, 0, powers[exps])
    affine = _sqrt_counts(p)[values].sum(axis=1)
    sizes = member.sum(axis=1)
    return affine + 2 - (sizes & 1)


# -- multiplicative structure --------------------------------------------------


def factor_small(n: int) -> dict[int, int]:
    """Trial-division factorisation."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@lru_cache(maxsize=None)
def primitive_root(p: int) -> int:
    """Smallest generator of GF(p)^x, found by trial."""
    p = Prime(p)
    qs = list(factor_small(p - 1))
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    raise AssertionError("unreachable: GF(p)^x is cyclic")


def roots_of_unity(p: int, ell: int) -> list[int]:
    """All ell-th roots of unity in GF(p), starting with 1."""
    if (p - 1) % ell:
        raise ValueError(f"{ell} does not divide p - 1 = {p - 1}")
    w = pow(primitive_root(p), (p - 1) // ell, p)
    return [pow(w, i, p) for i in range(ell)]


# -- constructions with many points ---------------------------------------------


@dataclass(frozen=True)
class MoebiusReduction:
    """Result of moving a root of f_S to infinity.

    The new curve is y^2 = leading * f_reduced(x); when leading is a
    nonsquare this is the quadratic twist of X_{reduced}.
    """

    original: Subset
    removed: int
    reduced: Subset
    leading: int
    twisted: bool
    original_total: int
    transformed_total: int
    reduced_total: int


def moebius_reduce(S: Subset, a: int) -> MoebiusReduction:
    """Substitute x = a + 1/u, y = v/u^(|S|/2) in y^2 = f_S(x).

    The result is v^2 = c * prod_{s != a} (u - 1/(s - a)), an odd-degree
    model with the same number of points, where c = prod_{s != a} (a - s).
    """
    _nonempty(S)
    p = S.p
    if len(S) % 2:
        raise ValueError("|S| must be even")
    if a not in S:
        raise ValueError(f"{a} is not in S")
    others = [s for s in S if s != a % p]
    leading = 1
    for s in others:
        leading = leading * (a - s) % p
    reduced = Subset.of(p, (pow(s - a, -1, p) for s in others))
    # direct count on the transformed model v^2 = leading * f_reduced(u)
    roots = _sqrt_counts(p)
    values = leading * _f_values(reduced) % p
    transformed = int(roots[values].sum()) + 1
    original = point_count(S).total
    if transformed != original:
        raise AssertionError(f"substitution changed the count: {original} -> {transformed}")
    return MoebiusReduction(
        original=S,
        removed=a % p,
        reduced=reduced,
        leading=leading,
        twisted=legendre(leading, p) == -1,
        original_total=original,
        transformed_total=transformed,
        reduced_total=point_count(reduced).total,
    )


def voloch_q_count(p: int) -> tuple[int, Fraction]:
    """(|X_Q(GF(p))|, a) with |X_Q| = 3p/2 + a, for p = 1, 3 mod 8."""
    p = Prime(p)
    if p % 8 not in (1, 3):
        raise ValueError(f"requires p = 1 or 3 (mod 8); got p = {p % 8} (mod 8)")
    Q, _ = residue_sets(p)
    total = point_count(Q).total
    a = total - Fraction(3 * p, 2)
    if not Fraction(-1, 2) <= a <= Fraction(5, 2):
        raise AssertionError(f"a = {a} outside [-1/2, 5/2] at p = {p}")
    return total, a


@dataclass(frozen=True)
class EllPowerResult:
    p: int
    ell: int
    powers: Subset
    condition_holds: bool
    total: int

    @property
    def excess(self) -> Fraction:
        """total - (2 - 1/ell) p."""
        return self.total - (2 - Fraction(1, self.ell)) * self.p


def splitting_condition(p: int, ell: int) -> bool:
    """legendre(r - 1) == 1 for every ell-th root of unity r != 1."""
    return all(legendre(r - 1, p) == 1 for r in roots_of_unity(p, ell)[1:])


def ell_power_construction(p: int, ell: int) -> EllPowerResult:
    p = Prime(p)
    if ell < 2:
        raise ValueError("ell must be at least 2")
    if (p - 1) % ell:
        raise ValueError(f"{ell} does not divide p - 1 = {p - 1}")
    powers = Subset.of(p, (pow(x, ell, p) for x in range(1, p)))
    holds = splitting_condition(p, ell)
    res = EllPowerResult(p, ell, powers, holds, point_count(powers).total)
    if holds and not Fraction(-1, 2) <= res.excess <= Fraction(5, 2):
        raise AssertionError(f"excess {res.excess} outside [-1/2, 5/2] at p = {p}")
    return res


def ell_power_primes(ell: int, limit: int) -> list[int]:
    """Primes p < limit, ell | p - 1, satisfying the splitting condition."""
    return [
        p for p in primes_between(3, limit)
        if (p - 1) % ell == 0 and splitting_condition(p, ell)
    ]
