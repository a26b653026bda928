"""Rate/distance bounds and searches for subsets with many curve points."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import comb, log2

import numpy as np

from .field import Prime, Subset, batch_point_totals, masks_to_matrix, point_count

EXHAUSTIVE_CAP = 24
_CHUNK = 1 << 15


def entropy(q: int, delta: float) -> float:
    if not 0 <= delta <= 1 - 1 / q:
        raise ValueError(f"delta = {delta} outside [0, {1 - 1 / q}]")
    if delta == 0:
        return 0.0
    lq = math.log(q)
    return (
        delta * math.log(q - 1) / lq
        - delta * math.log(delta) / lq
        - (1 - delta) * math.log(1 - delta) / lq
    )


def _bisect(f, lo: float, hi: float, tol: float = 1e-12) -> float:
    """Root of f on [lo, hi] given a sign change."""
    flo = f(lo)
    while hi - lo > tol:
        mid = (lo + hi) / 2
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return (lo + hi) / 2


def gv_delta(R: float) -> float:
    """delta in (0, 1/2) with 1 - H_2(delta) = R."""
    return _bisect(lambda x: 1 - entropy(2, x) - R, 0.0, 0.5)


def mrrw_rate(delta: float) -> float:
    """First MRRW bound H_2(1/2 - sqrt(delta(1 - delta)))."""
    return entropy(2, 0.5 - math.sqrt(delta * (1 - delta)))


def mrrw_delta(R: float) -> float:
    """delta in (0, 1/2) with mrrw_rate(delta) = R."""
    return _bisect(lambda x: mrrw_rate(x) - R, 0.0, 0.5)


def hamming_volume(n: int, r: int) -> int:
    if not 0 <= r <= n:
        raise ValueError(f"radius {r} outside [0, {n}]")
    return sum(comb(n, i) for i in range(r + 1))


def gv_dimension(n: int, d: int) -> float:
    """n - log2 V(n, d - 1): the dimension guaranteed by Gilbert-Varshamov."""
    return n - log2(hamming_volume(n, d - 1))


def constants_table() -> list[tuple[str, float]]:
    """The numeric constants that the rate-1/2 and rate-1/4 arguments rely on."""
    gv_half, mr_half = gv_delta(0.5), mrrw_delta(0.5)
    gv_quarter, mr_quarter = gv_delta(0.25), mrrw_delta(0.25)
    return [
        ("gv_delta(1/2)", gv_half),
        ("mrrw_delta(1/2)", mr_half),
        ("2*(1 - mrrw_delta(1/2))", 2 * (1 - mr_half)),
        ("2*(1 - gv_delta(1/2))", 2 * (1 - gv_half)),
        ("gv_delta(1/4)", gv_quarter),
        ("2*(1 - gv_delta(1/4))", 2 * (1 - gv_quarter)),
        ("mrrw_delta(1/4)", mr_quarter),
        ("2*(1 - mrrw_delta(1/4))", 2 * (1 - mr_quarter)),
    ]


# -- subset searches --------------------------------------------------------------


@dataclass(frozen=True)
class SearchResult:
    p: int
    best_S: Subset
    best_total: int
    strategy: str
    samples: int
    seed: int

    @property
    def ratio(self) -> float:
        return self.best_total / self.p

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "best_S": self.best_S.elements(),
            "best_total": self.best_total,
            "ratio": self.ratio,
            "strategy": self.strategy,
            "samples": self.samples,
            "seed": self.seed,
        }


REFERENCE_RATIOS = (1.39, 1.5, 1.57, 1.62, 1.77, 5 / 3)


def _chunk_best(p: int, start: int, stop: int) -> tuple[int, int]:
    masks = np.arange(start, stop, dtype=np.int64)
    totals = batch_point_totals(p, masks_to_matrix(p, masks))
    i = int(np.argmax(totals))  # first maximum = smallest mask
    return int(totals[i]), int(masks[i])


def _chunks(p: int) -> list[tuple[int, int]]:
    top = 1 << p
    return [(lo, min(lo + _CHUNK, top)) for lo in range(1, top, _CHUNK)]


def _exhaustive(p: int, workers: int) -> tuple[int, int]:
    jobs = _chunks(p)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda c: _chunk_best(p, *c), jobs))
    else:
        parts = [_chunk_best(p, *c) for c in jobs]
    return max(parts, key=lambda tm: (tm[0], -tm[1]))


def _check_exhaustive(p: int, cap: int) -> None:
    if p > cap:
        raise ValueError(f"exhaustive search over 2^{p} subsets exceeds cap p <= {cap}")


def _greedy(p: int, budget: int, rng: np.random.Generator) -> tuple[int, int, int]:
    best_total, best_mask, spent = -1, 0, 0
    while spent < budget:
        members = np.zeros(p)
        members[int(rng.integers(p))] = 1.0
        current = int(batch_point_totals(p, members[None, :])[0])
        spent += 1
        if current > best_total or (current == best_total and _mask(members) < best_mask):
            best_total, best_mask = current, _mask(members)
        while spent < budget:
            free = np.flatnonzero(members == 0)
            if free.size == 0:
                break
            trial = np.repeat(members[None, :], free.size, axis=0)
            trial[np.arange(free.size), free] = 1.0
            totals = batch_point_totals(p, trial)
            spent += free.size
            j = int(np.argmax(totals))
            if totals[j] <= current:
                break
            members, current = trial[j], int(totals[j])
            if current > best_total:
                best_total, best_mask = current, _mask(members)
    return best_total, best_mask, spent


def _mask(row: np.ndarray) -> int:
    return sum(1 << int(i) for i in np.flatnonzero(row))


def _random(p: int, budget: int, rng: np.random.Generator) -> tuple[int, int, int]:
    best_total, best_mask = -1, 0
    done = 0
    while done < budget:
        m = min(_CHUNK, budget - done)
        B = rng.integers(0, 2, size=(m, p)).astype(np.float64)
        empty = B.sum(axis=1) == 0
        B[empty, int(rng.integers(p))] = 1.0
        totals = batch_point_totals(p, B)
        j = int(np.argmax(totals))
        if totals[j] > best_total:
            best_total, best_mask = int(totals[j]), _mask(B[j])
        done += m
    return best_total, best_mask, budget


def max_point_count_search(
    p: int,
    strategy: str = "exhaustive",
    budget: int = 10_000,
    seed: int = 0,
    exhaustive_cap: int = EXHAUSTIVE_CAP,
    workers: int = 1,
) -> SearchResult:
    """Largest |X_S(GF(p))| over non-empty S found by the given strategy."""
    p = Prime(p)
    if strategy == "exhaustive":
        _check_exhaustive(p, exhaustive_cap)
        total, mask = _exhaustive(p, workers)
        samples, seed_used = (1 << p) - 1, seed
    elif strategy in ("random", "greedy"):
        rng = np.random.Generator(np.random.PCG64(seed))
        run = _random if strategy == "random" else _greedy
        total, mask, samples = run(p, budget, rng)
        seed_used = seed
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    best = Subset(p, mask)
    if point_count(best).total != total:
        raise AssertionError("batched and direct point counts disagree")
    return SearchResult(p, best, total, strategy, samples, seed_used)


@dataclass(frozen=True)
class Verdict:
    holds: bool
    decided: bool
    witness: Subset | None
    best_total: int


def b_statement(
    p: int,
    c: float,
    strategy: str = "exhaustive",
    budget: int = 10_000,
    seed: int = 0,
    exhaustive_cap: int = EXHAUSTIVE_CAP,
) -> Verdict:
    """Is |X_S(GF(p))| <= c p for every non-empty S?

    Exhaustive search decides it; sampling can only refute it, and an
    unrefuted sampling run is reported with decided=False.
    """
    if c <= 0:
        raise ValueError("c must be positive")
    res = max_point_count_search(p, strategy, budget, seed, exhaustive_cap)
    holds = res.best_total <= c * p
    return Verdict(
        holds=holds,
        decided=strategy == "exhaustive" or not holds,
        witness=res.best_S if strategy == "exhaustive" or not holds else None,
        best_total=res.best_total,
    )


def tarnanen_window(
    p: int,
    tau: float,
    strategy: str = "exhaustive",
    budget: int = 10_000,
    seed: int = 0,
    exhaustive_cap: int = EXHAUSTIVE_CAP,
) -> Verdict:
    """Do all non-empty S with |S| <= tau p satisfy 0.42p < |X_S| < 1.42p?

    Returns the first violating S (smallest mask when exhaustive).
    """
    p = Prime(p)
    if not 0 < tau < 1:
        raise ValueError("tau must lie in (0, 1)")
    lo, hi = 0.42 * p, 1.42 * p
    limit = math.floor(tau * p)

    def first_violation(masks: np.ndarray) -> tuple[int, int] | None:
        B = masks_to_matrix(p, masks)
        keep = B.sum(axis=1) <= limit
        if not keep.any():
            return None
        totals = batch_point_totals(p, B[keep])
        bad = np.flatnonzero((totals <= lo) | (totals >= hi))
        if bad.size:
            return int(masks[keep][bad[0]]), int(totals[bad[0]])
        return None

    if strategy == "exhaustive":
        _check_exhaustive(p, exhaustive_cap)
        for start, stop in _chunks(p):
            hit = first_violation(np.arange(start, stop, dtype=np.int64))
            if hit:
                S = Subset(p, hit[0])
                return Verdict(False, True, S, point_count(S).total)
        return Verdict(True, True, None, 0)
    if strategy != "random":
        raise ValueError(f"unknown strategy {strategy!r}")
    if p > 62:
        raise ValueError("random window sampling supports p <= 62")
    rng = np.random.Generator(np.random.PCG64(seed))
    for _ in range(budget):
        size = int(rng.integers(1, limit + 1)) if limit else 0
        if not size:
            break
        elems = rng.choice(p, size=size, replace=False)
        S = Subset.of(p, (int(e) for e in elems))
        total = point_count(S).total
        if not lo < total < hi:
            return Verdict(False, True, S, total)
    return Verdict(True, False, None, 0)
