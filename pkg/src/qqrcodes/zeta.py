"""Duursma zeta polynomials of linear codes.

P(T) is found from the weight enumerator alone: the coefficient of T^(n-d)
in P(T) / ((1-T)(1-qT)) * (y(1-T) + xT)^n must equal (W(x, y) - x^n)/(q-1).
The resulting linear system is solved in exact rationals; floats appear only
when locating the zeros.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

from .gf2linalg import WeightDistribution


@dataclass(frozen=True)
class RationalPoly:
    """Exact coefficients, constant term first."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = list(self.coefficients)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(Fraction(c) for c in coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1 if any(self.coefficients) else -1

    def __call__(self, t):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * t + c
        return acc

    def as_strings(self) -> list[str]:
        return [f"{c.numerator}/{c.denominator}" for c in self.coefficients]

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coefficients):
            if c:
                terms.append(str(c) + ("" if i == 0 else "*T" if i == 1 else f"*T^{i}"))
        return " + ".join(terms) or "0"


def dual_distribution(W: Sequence[int], n: int, k: int, q: int = 2) -> list[int]:
    """q-ary MacWilliams transform."""
    out = []
    for j in range(n + 1):
        s = 0
        for i, a in enumerate(W):
            if a:
                s += a * sum(
                    (-1) ** t * (q - 1) ** (j - t) * comb(i, t) * comb(n - i, j - t)
                    for t in range(j + 1)
                )
        if s % q**k:
            raise ValueError("transform is not integral; input is not a code distribution")
        out.append(s // q**k)
    return out


def _first_nonzero(A: Sequence[int]) -> int:
    return next((i for i in range(1, len(A)) if A[i]), len(A))


def solve_exact(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    """Solve a consistent (possibly overdetermined) system of full column rank."""
    ncols = len(rows[0])
    M = [list(r) + [b] for r, b in zip(rows, rhs)]
    piv_row = 0
    for col in range(ncols):
        pr = next((r for r in range(piv_row, len(M)) if M[r][col] != 0), None)
        if pr is None:
            raise ValueError("singular system: distribution is inconsistent")
        M[piv_row], M[pr] = M[pr], M[piv_row]
        pivot = M[piv_row][col]
        M[piv_row] = [x / pivot for x in M[piv_row]]
        for r in range(len(M)):
            if r != piv_row and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[piv_row])]
        piv_row += 1
    if any(M[r][-1] != 0 for r in range(piv_row, len(M))):
        raise ValueError("inconsistent system: no zeta polynomial fits this distribution")
    return [M[i][-1] for i in range(ncols)]


def _coefficient_columns(n: int, d: int, degree: int, q: int) -> list[list[Fraction]]:
    """Column i: the T^(n-d) coefficient contributed by T^i, as y-power coefficients."""
    cols = []
    for i in range(degree + 1):
        vec = [Fraction(0)] * (n + 1)
        for j in range(n - d - i + 1):
            m = n - d - i - j
            geometric = (q ** (m + 1) - 1) // (q - 1)
            # C(n, j) y^(n-j) (x - y)^j
            for t in range(j + 1):
                vec[n - j + t] += geometric * comb(n, j) * comb(j, t) * (-1) ** t
        cols.append(vec)
    return cols


def duursma_p(W: WeightDistribution | Sequence[int], n: int, k: int, q: int = 2) -> RationalPoly:
    A = list(W.counts if isinstance(W, WeightDistribution) else W)
    if len(A) != n + 1:
        raise ValueError(f"expected {n + 1} counts, got {len(A)}")
    d = _first_nonzero(A)
    d_dual = _first_nonzero(dual_distribution(A, n, k, q))
    if d < 2 or d_dual < 2:
        raise ValueError(f"need d >= 2 and dual distance >= 2 (got {d}, {d_dual})")
    degree = n + 2 - d - d_dual
    cols = _coefficient_columns(n, d, degree, q)
    rows = [[cols[i][e] for i in range(degree + 1)] for e in range(n + 1)]
    rhs = [Fraction(A[e], q - 1) for e in range(n + 1)]
    rhs[0] -= Fraction(1, q - 1)
    P = RationalPoly(tuple(solve_exact(rows, rhs)))
    if P(1) != 1:
        raise AssertionError(f"P(1) = {P(1)}, expected 1")
    return P


def functional_equation_check(P: RationalPoly, q: int = 2) -> bool | None:
    """p_(2g-i) == q^(g-i) p_i for all i; None when deg P is odd."""
    if P.degree % 2:
        return None
    g = P.degree // 2
    c = P.coefficients
    return all(c[2 * g - i] == Fraction(q) ** (g - i) * c[i] for i in range(2 * g + 1))


def find_zeros(P: RationalPoly, max_polish: int = 20) -> list[complex]:
    """Companion-matrix eigenvalues, Newton-polished, with a residual check."""
    if P.degree < 1:
        raise ValueError("zeros need deg P >= 1")
    coeffs = np.array([float(c) for c in reversed(P.coefficients)])
    dcoeffs = np.polyder(coeffs)
    scale = np.abs(coeffs).sum()
    out = []
    for z in np.roots(coeffs):
        z = complex(z)
        for _ in range(max_polish):
            fz = np.polyval(coeffs, z)
            dz = np.polyval(dcoeffs, z)
            if dz == 0 or abs(fz) <= 1e-15 * scale:
                break
            z -= fz / dz
        residual = abs(np.polyval(coeffs, z)) / (scale * max(1.0, abs(z)) ** P.degree)
        if residual > 1e-9:
            raise RuntimeError(f"root finder did not converge: residual {residual:.3e} at {z}")
        out.append(z)
    return sorted(out, key=lambda z: (round(abs(z), 12), round(cmath.phase(z), 12)))


@dataclass
class ZetaReport:
    P: RationalPoly
    q: int
    n: int
    k: int
    d: int
    d_dual: int
    zeros: list[complex]
    tol: float
    on_circle_count: int
    rh_holds: bool
    d_from_zeros: float
    functional_equation: bool | None

    @property
    def off_circle_count(self) -> int:
        return len(self.zeros) - self.on_circle_count

    def to_dict(self) -> dict:
        return {
            "P": self.P.as_strings(),
            "degree": self.P.degree,
            "q": self.q,
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "d_dual": self.d_dual,
            "zeros": [[z.real, z.imag] for z in self.zeros],
            "abs_zeros": [abs(z) for z in self.zeros],
            "tol": self.tol,
            "on_circle_count": self.on_circle_count,
            "rh_holds": self.rh_holds,
            "d_from_zeros": self.d_from_zeros,
            "functional_equation": self.functional_equation,
        }


def zeros_and_rh(P: RationalPoly, q: int = 2, tol: float = 1e-8) -> tuple[list[complex], int, bool, float]:
    """(zeros, on-circle count, RH verdict, 2 - sum 1/rho)."""
    zeros = find_zeros(P)
    radius = q**-0.5
    on = sum(1 for z in zeros if abs(abs(z) - radius) < tol)
    d_est = 2 - sum(1 / z for z in zeros)
    return zeros, on, on == len(zeros), d_est.real


def zeta_report(W: WeightDistribution | Sequence[int], n: int, k: int, q: int = 2, tol: float = 1e-8) -> ZetaReport:
    A = list(W.counts if isinstance(W, WeightDistribution) else W)
    P = duursma_p(A, n, k, q)
    zeros, on, rh, d_est = zeros_and_rh(P, q, tol)
    return ZetaReport(
        P=P, q=q, n=n, k=k,
        d=_first_nonzero(A),
        d_dual=_first_nonzero(dual_distribution(A, n, k, q)),
        zeros=zeros, tol=tol, on_circle_count=on, rh_holds=rh,
        d_from_zeros=d_est,
        functional_equation=functional_equation_check(P, q),
    )


def pairing_error(zeros: Sequence[complex], q: int = 2) -> float:
    """Largest distance from 1/(q rho) to the nearest zero, over all rho."""
    return max(min(abs(1 / (q * z) - w) for w in zeros) for z in zeros)
