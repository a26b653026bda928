"""Binary linear codes over GF(2) with rows packed into Python ints.

Bit j of a row is coordinate j of the vector.  Codes are kept in reduced
row-echelon form so that two codes are equal iff their generators are.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

DEFAULT_CAP = 26


class EnumerationCapError(ValueError):
    pass


def rref_rank(rows: Iterable[int], n: int) -> tuple[list[int], int]:
    """Reduced row-echelon form (pivot = lowest set bit, increasing) and rank."""
    full = (1 << n) - 1
    basis: dict[int, int] = {}  # pivot column -> row
    for r in rows:
        if r & ~full:
            raise ValueError(f"row wider than {n} bits")
        for col, b in basis.items():
            if r >> col & 1:
                r ^= b
        if not r:
            continue
        col = (r & -r).bit_length() - 1
        for c, b in basis.items():
            if b >> col & 1:
                basis[c] = b ^ r
        basis[col] = r
    out = [basis[c] for c in sorted(basis)]
    return out, len(out)


def rank(rows: Iterable[int], n: int) -> int:
    return rref_rank(rows, n)[1]


def weight(v: int) -> int:
    return v.bit_count()


def bits_to_int(bits: Sequence[int]) -> int:
    return sum(1 << i for i, b in enumerate(bits) if b)


def int_to_bits(v: int, n: int) -> list[int]:
    return [v >> i & 1 for i in range(n)]


@dataclass(frozen=True)
class LinearCode:
    n: int
    generator: tuple[int, ...]

    @classmethod
    def from_rows(cls, rows: Iterable[int], n: int) -> "LinearCode":
        reduced, _ = rref_rank(rows, n)
        return cls(n, tuple(reduced))

    @classmethod
    def full_space(cls, n: int) -> "LinearCode":
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def zero(cls, n: int) -> "LinearCode":
        return cls(n, ())

    @property
    def k(self) -> int:
        return len(self.generator)

    def contains(self, v: int) -> bool:
        for g in self.generator:
            low = g & -g
            if v & low:
                v ^= g
        return v == 0

    def encode(self, message: int) -> int:
        v = 0
        i = 0
        while message:
            if message & 1:
                v ^= self.generator[i]
            message >>= 1
            i += 1
        return v

    def generator_text(self) -> str:
        """One row per line, characters 0/1, coordinate 0 first."""
        return "\n".join(
            "".join(str(b) for b in int_to_bits(g, self.n)) for g in self.generator
        )


def dual(C: LinearCode) -> LinearCode:
    pivots = {(g & -g).bit_length() - 1: g for g in C.generator}
    rows = []
    for f in range(C.n):
        if f in pivots:
            continue
        v = 1 << f
        for col, g in pivots.items():
            if g >> f & 1:
                v |= 1 << col
        rows.append(v)
    return LinearCode.from_rows(rows, C.n)


def sum_and_intersection(C1: LinearCode, C2: LinearCode) -> tuple[LinearCode, LinearCode]:
    if C1.n != C2.n:
        raise ValueError(f"length mismatch: {C1.n} vs {C2.n}")
    total = LinearCode.from_rows(C1.generator + C2.generator, C1.n)
    # C1 & C2 is the kernel of the stacked parity checks
    checks = dual(C1).generator + dual(C2).generator
    meet = dual(LinearCode.from_rows(checks, C1.n))
    return total, meet


@dataclass(frozen=True)
class WeightDistribution:
    counts: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.counts) - 1

    @property
    def size(self) -> int:
        return sum(self.counts)

    def min_weight(self) -> int | None:
        """Smallest nonzero weight present, or None for the zero code."""
        return next((w for w in range(1, len(self.counts)) if self.counts[w]), None)

    def reversed(self) -> "WeightDistribution":
        return WeightDistribution(self.counts[::-1])

    def __add__(self, other: "WeightDistribution") -> "WeightDistribution":
        if self.n != other.n:
            raise ValueError("length mismatch")
        return WeightDistribution(tuple(a + b for a, b in zip(self.counts, other.counts)))

    def bracket(self) -> str:
        return "[" + ", ".join(str(c) for c in self.counts) + "]"

    def csv(self) -> str:
        return "weight,count\n" + "".join(f"{w},{c}\n" for w, c in enumerate(self.counts))

    @classmethod
    def parse(cls, text: str) -> "WeightDistribution":
        body = text.strip().strip("[]")
        return cls(tuple(int(x) for x in body.replace(",", " ").split()))

    @classmethod
    def of_words(cls, words: Iterable[int], n: int) -> "WeightDistribution":
        counts = [0] * (n + 1)
        for w in words:
            counts[w.bit_count()] += 1
        return cls(tuple(counts))


def _gray_walk(gens: tuple[int, ...], start: int, n: int) -> list[int]:
    counts = [0] * (n + 1)
    v = start
    counts[v.bit_count()] += 1
    for m in range(1, 1 << len(gens)):
        v ^= gens[(m & -m).bit_length() - 1]
        counts[v.bit_count()] += 1
    return counts


def _check_cap(C: LinearCode, cap: int) -> None:
    if C.k > cap:
        raise EnumerationCapError(
            f"dimension {C.k} exceeds the enumeration cap {cap}; raise cap= "
            "(or --cap) to enumerate, or use sample_weights()"
        )


def weight_distribution(
    C: LinearCode, cap: int = DEFAULT_CAP, workers: int = 1
) -> WeightDistribution:
    """Exact weight counts by a Gray-code walk over all 2^k codewords.

    With workers > 1 the top message bits are fixed and each prefix is
    walked in its own process; the merged counts do not depend on workers.
    """
    _check_cap(C, cap)
    gens = C.generator
    t = 0
    if workers > 1:
        while (1 << t) < workers and t < C.k:
            t += 1
    low, high = gens[: C.k - t], gens[C.k - t:]
    starts = []
    for m in range(1 << t):
        v = 0
        for i, g in enumerate(high):
            if m >> i & 1:
                v ^= g
        starts.append(v)
    if len(starts) == 1:
        parts = [_gray_walk(low, starts[0], C.n)]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_gray_walk, [low] * len(starts), starts, [C.n] * len(starts)))
    return WeightDistribution(tuple(map(sum, zip(*parts))))


def min_distance(C: LinearCode, cap: int = DEFAULT_CAP, workers: int = 1) -> int:
    if C.k == 0:
        raise ValueError("minimum distance of the zero code is undefined")
    return weight_distribution(C, cap, workers).min_weight()


def sample_weights(C: LinearCode, samples: int, seed: int = 0) -> dict[int, int]:
    """Weight histogram of uniformly random codewords (no cap)."""
    rng = random.Random(seed)
    hist: dict[int, int] = {}
    for _ in range(samples):
        w = C.encode(rng.getrandbits(C.k)).bit_count() if C.k else 0
        hist[w] = hist.get(w, 0) + 1
    return hist


def krawtchouk(j: int, i: int, n: int) -> int:
    return sum((-1) ** t * comb(i, t) * comb(n - i, j - t) for t in range(j + 1))


def macwilliams(W: WeightDistribution, n: int, k: int) -> WeightDistribution:
    """Weight distribution of the dual code."""
    if len(W.counts) != n + 1:
        raise ValueError(f"expected {n + 1} counts, got {len(W.counts)}")
    if W.size != 1 << k:
        raise ValueError(f"counts sum to {W.size}, not 2^{k}")
    out = []
    for j in range(n + 1):
        s = sum(a * krawtchouk(j, i, n) for i, a in enumerate(W.counts) if a)
        if s % (1 << k):
            raise ValueError("transform is not integral; input is not a code distribution")
        out.append(s >> k)
    return WeightDistribution(tuple(out))
