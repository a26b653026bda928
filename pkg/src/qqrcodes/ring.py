"""The ring F_2[x]/(x^p - 1) with elements packed into Python ints.

Bit i of an element is the coefficient of x^i.  Multiplication is the
cyclic shift-and-xor convolution.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import Subset, _same_p


@dataclass(frozen=True)
class RingElement:
    p: int
    bits: int = 0

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.p:
            raise ValueError(f"coefficients do not fit in {self.p} bits")

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def __add__(self, other: "RingElement") -> "RingElement":
        _same_p(self, other)
        return RingElement(self.p, self.bits ^ other.bits)

    def __mul__(self, other: "RingElement") -> "RingElement":
        return multiply(self, other)

    def support(self) -> Subset:
        return Subset(self.p, self.bits)

    def coefficients(self) -> list[int]:
        return [self.bits >> i & 1 for i in range(self.p)]

    def __str__(self) -> str:
        terms = []
        for i in reversed(range(self.p)):
            if self.bits >> i & 1:
                terms.append("1" if i == 0 else "x" if i == 1 else f"x^{i}")
        return " + ".join(terms) or "0"


def from_subset(S: Subset) -> RingElement:
    return RingElement(S.p, S.mask)


def one(p: int) -> RingElement:
    return RingElement(p, 1)


def all_ones(p: int) -> RingElement:
    return RingElement(p, (1 << p) - 1)


def multiply(r1: RingElement, r2: RingElement) -> RingElement:
    _same_p(r1, r2)
    p = r1.p
    a, b = r1.bits, r2.bits
    if a.bit_count() > b.bit_count():
        a, b = b, a
    out = 0
    while a:
        low = a & -a
        out ^= b << (low.bit_length() - 1)
        a ^= low
    # x^(p+i) = x^i; the unreduced product has degree < 2p - 1
    return RingElement(p, (out & ((1 << p) - 1)) ^ (out >> p))


def star(r: RingElement) -> RingElement:
    """r_S -> r_{S^c}."""
    return RingElement(r.p, r.bits ^ ((1 << r.p) - 1))


def square(r: RingElement) -> RingElement:
    """Frobenius: r_S^2 = r_{2S}."""
    return from_subset(Subset.of(r.p, (2 * s for s in Subset(r.p, r.bits))))


def h_count(S1: Subset, S2: Subset, a: int) -> tuple[int, int]:
    """|{(s1, s2) in S1 x S2 : s1 + s2 = a}| and its parity."""
    _same_p(S1, S2)
    count = sum(1 for s in S1 if (a - s) % S1.p in S2)
    return count, count & 1
