"""QQR and LQR codes built from products r_N r_S, r_Q r_S in F_2[x]/(x^p - 1).

Codeword layout: a length-2p QQR word has r_N r_S in coordinates 0..p-1 and
r_Q r_S in p..2p-1.  A length-4p LQR word is (qqr(S), qqr(S^c)).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dc_field
from typing import Iterator

from . import gf2linalg as gl
from .field import Prime, Subset, char_sum, point_count, residue_sets
from .gf2linalg import LinearCode, WeightDistribution
from .ring import RingElement, from_subset, multiply


def _prime_above_5(p: int) -> Prime:
    p = Prime(p)
    if p <= 5:
        raise ValueError(f"the code families need p > 5, got {p}")
    return p


@dataclass(frozen=True)
class QqrCodeword:
    S: Subset
    left: RingElement
    right: RingElement

    @property
    def vector(self) -> int:
        return self.left.bits | self.right.bits << self.S.p

    @property
    def weight(self) -> int:
        return self.left.weight + self.right.weight

    def bits(self) -> list[int]:
        return gl.int_to_bits(self.vector, 2 * self.S.p)


def qqr_codeword(S: Subset) -> QqrCodeword:
    Q, N = residue_sets(S.p)
    r = from_subset(S)
    return QqrCodeword(S, multiply(from_subset(N), r), multiply(from_subset(Q), r))


def format_tuple(bits: list[int]) -> str:
    """Codeword as printed in the literature: (1, 0, 1, ...)."""
    return "(" + ", ".join(str(b) for b in bits) + ")"


def qqr_dimension(p: int) -> int:
    return p if p % 4 == 3 else p - 1


def _singleton_rows(p: int) -> list[int]:
    return [qqr_codeword(Subset(p, 1 << i)).vector for i in range(p)]


def build_qqr(p: int, allow_small: bool = False) -> LinearCode:
    """Span of the words for singletons {i}; S -> c_S is linear under symmetric difference.

    allow_small admits p = 3, 5, where the code is still defined but
    outside the range the constructions are stated for.
    """
    p = Prime(p) if allow_small else _prime_above_5(p)
    return LinearCode.from_rows(_singleton_rows(p), 2 * p)


def qqr_weight_via_curve(S: Subset) -> int:
    """Codeword weight from character sums / point counts, without the ring."""
    p = Prime(S.p)
    if not S.mask:
        return 0
    if S.mask == (1 << p) - 1:
        # f of the empty complement is the constant 1: every term of the sum is 1
        return 0 if p % 4 == 1 else 2 * p
    if len(S) % 2 == 0:
        w = p - char_sum(S)
        assert w == 2 * p + 2 - point_count(S).total
        return w
    comp = S.complement()
    if p % 4 == 1:
        w = p - char_sum(comp)
        assert w == 2 * p + 2 - point_count(comp).total
    else:
        w = p + char_sum(comp)
        assert w == point_count(comp).total - 2
    return w


def all_ones(n: int) -> int:
    return (1 << n) - 1


@dataclass(frozen=True)
class ExtendedQqr:
    code: LinearCode
    base: WeightDistribution
    distribution: WeightDistribution

    @property
    def dimension_is_p(self) -> bool:
        return self.code.k == self.code.n // 2

    @property
    def matches_a_plus_reversed(self) -> bool:
        return self.distribution == self.base + self.base.reversed()

    @property
    def formally_self_dual(self) -> bool:
        return gl.macwilliams(self.distribution, self.code.n, self.code.k) == self.distribution


def build_extended_qqr(p: int, cap: int = gl.DEFAULT_CAP, workers: int = 1) -> ExtendedQqr:
    """C_NQ together with the all-ones word; p = 1 mod 4 only.

    p = 5 is accepted here (unlike build_qqr) since its distribution is a
    useful small check.
    """
    p = Prime(p)
    if p % 4 != 1:
        raise ValueError(f"extended code needs p = 1 (mod 4), got p = {p % 4} (mod 4)")
    rows = _singleton_rows(p)
    base = LinearCode.from_rows(rows, 2 * p)
    ext = LinearCode.from_rows(rows + [all_ones(2 * p)], 2 * p)
    return ExtendedQqr(
        ext,
        gl.weight_distribution(base, cap, workers),
        gl.weight_distribution(ext, cap, workers),
    )


# -- LQR ------------------------------------------------------------------------


def lqr_codeword(S: Subset) -> int:
    """c_S = (r_N r_S, r_Q r_S, r_N r_S*, r_Q r_S*) as a 4p-bit int."""
    p = S.p
    return qqr_codeword(S).vector | qqr_codeword(S.complement()).vector << 2 * p


def lqr_v(S: Subset) -> int:
    """v_S = (r_N r_S, r_Q r_S, r_N r_S, r_Q r_S)."""
    w = qqr_codeword(S).vector
    return w | w << 2 * S.p


@dataclass
class LqrCode:
    p: int
    codewords: frozenset[int]
    injective: bool
    kernel: list[int] = dc_field(default_factory=list)

    @property
    def n(self) -> int:
        return 4 * self.p

    @property
    def size(self) -> int:
        return len(self.codewords)

    @property
    def linear(self) -> bool:
        return gl.rank(self.codewords, self.n) == int(math.log2(self.size)) and 0 in self.codewords

    def weights(self) -> set[int]:
        return {c.bit_count() for c in self.codewords}

    def weight_distribution(self) -> WeightDistribution:
        return WeightDistribution.of_words(self.codewords, self.n)


def _walk_lqr(p: int) -> Iterator[tuple[int, int]]:
    """(mask, c_S) for every S, stepping S by single elements.

    c_S = v_S + c_empty and v_S is linear in S, so each step is one xor; the
    stepping is cross-checked against lqr_codeword on samples by callers.
    """
    singles = [lqr_v(Subset(p, 1 << i)) for i in range(p)]
    c = lqr_codeword(Subset(p, 0))
    mask = 0
    yield mask, c
    for m in range(1, 1 << p):
        i = (m & -m).bit_length() - 1
        mask ^= 1 << i
        c ^= singles[i]
        yield mask, c


def build_lqr(p: int) -> LqrCode:
    p = _prime_above_5(p)
    seen: dict[int, int] = {}
    kernel = []
    for mask, c in _walk_lqr(p):
        if c in seen:
            kernel.append(seen[c] ^ mask)
        else:
            seen[c] = mask
    return LqrCode(p, frozenset(seen), injective=not kernel, kernel=sorted(set(kernel)))


def lqr_weight_via_curve(S: Subset) -> int:
    """wt(c_S) from character sums, split on |S| parity for p = 1 mod 4."""
    p = S.p
    if p % 4 == 3:
        return 2 * p
    return 2 * qqr_weight_via_curve(S)


def lqr_literal_weight(S: Subset) -> int:
    """2p - 2 * char_sum(S), the unsplit formula for p = 1 mod 4."""
    return 2 * S.p - 2 * char_sum(S)


def build_lqr_bar(p: int) -> LinearCode:
    """Smallest linear code containing the (nonlinear) LQR code; p = 3 mod 4."""
    p = _prime_above_5(p)
    if p % 4 != 3:
        raise ValueError(f"needs p = 3 (mod 4), got p = {p % 4} (mod 4)")
    rows = [lqr_v(Subset(p, 1 << i)) for i in range(p)]
    rows.append(lqr_codeword(Subset(p, 0)))
    return LinearCode.from_rows(rows, 4 * p)


def duplicate_block(v: int, p: int) -> int:
    """(w) -> (w, w) on 2p-bit words."""
    return v | v << 2 * p


# -- conjecture and bound checks -------------------------------------------------


@dataclass
class ConjectureReport:
    p: int
    n: int
    k: int
    k_expected: int
    dual_k: int
    self_dual: bool | None = None
    trivial_intersection: bool | None = None
    full_sum: bool | None = None
    min_distance: int | None = None
    sloane_mallows_bound: int | None = None
    within_sloane_mallows: bool | None = None
    sqrt_bound_applies: bool = False
    meets_sqrt_bound: bool | None = None
    max_points: int | None = None
    max_points_witness: list[int] | None = None
    five_thirds_threshold: float | None = None
    exceeds_five_thirds: bool | None = None

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def conjecture_checks(
    p: int,
    enumerate_code: bool = True,
    search: bool = True,
    cap: int = gl.DEFAULT_CAP,
    exhaustive_cap: int = 24,
    workers: int = 1,
) -> ConjectureReport:
    """Evaluate the duality conjecture and the distance / point-count bounds.

    Never raises on a failed conjecture; verdicts are only recorded.
    """
    p = _prime_above_5(p)
    C = build_qqr(p)
    D = gl.dual(C)
    rep = ConjectureReport(p, C.n, C.k, qqr_dimension(p), D.k)
    total, meet = gl.sum_and_intersection(C, D)
    if p % 4 == 1:
        rep.trivial_intersection = meet.k == 0
        rep.full_sum = total.k == C.n
    else:
        rep.self_dual = D == C
        rep.sloane_mallows_bound = 4 * (p // 12) + 6
    rep.sqrt_bound_applies = p % 8 in (1, 7)
    if enumerate_code and C.k <= cap:
        rep.min_distance = gl.min_distance(C, cap, workers)
        if rep.sloane_mallows_bound is not None:
            rep.within_sloane_mallows = rep.min_distance <= rep.sloane_mallows_bound
        if rep.sqrt_bound_applies:
            rep.meets_sqrt_bound = rep.min_distance >= math.sqrt(p)
    if search and p % 4 == 3 and p <= exhaustive_cap:
        from .bounds import max_point_count_search

        res = max_point_count_search(p, "exhaustive", exhaustive_cap=exhaustive_cap, workers=workers)
        rep.max_points = res.best_total
        rep.max_points_witness = res.best_S.elements()
        rep.five_thirds_threshold = 5 * p / 3 - 4
        rep.exceeds_five_thirds = res.best_total > rep.five_thirds_threshold
    return rep


def random_subset(p: int, rng: random.Random) -> Subset:
    return Subset(p, rng.getrandbits(p))
