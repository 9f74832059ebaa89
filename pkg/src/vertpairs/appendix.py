"""The generating-function identity engine.

Closed-form coefficients c_n(alpha), the odd-order vanishing of the
combination sum_n c_n(alpha) x^n sin(nx)/sin^n(x) with leading value
1/(2*alpha-1)!!, the linear-solve route that must reproduce the closed form
(uniqueness), and the bivariate generating identity tying these to the
correspondence matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import UPowerSeries, binom, double_factorial_odd, trig_series

__all__ = [
    "CoefficientVector",
    "c_coefficients",
    "appendix_lhs",
    "basis_series",
    "solve_c_unique",
    "leading_value",
    "pix_identity_check",
    "partial_fraction_check",
]


@dataclass(frozen=True)
class CoefficientVector:
    """The weights c_1(alpha), ..., c_alpha(alpha), with the normalisation
    c_alpha(alpha) = (-1)^(alpha-1)/alpha!."""

    alpha: int
    c: tuple

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(self.c))
        if self.alpha < 1 or len(self.c) != self.alpha:
            raise ValueError(f"need exactly alpha={self.alpha} coefficients")

    def __getitem__(self, n: int) -> Fraction:
        """1-indexed; zero outside 1..alpha."""
        if 1 <= n <= self.alpha:
            return self.c[n - 1]
        return Fraction(0)


def c_value(n: int, alpha: int) -> Fraction:
    """sum_{k=1}^{n} (-1)^(n-k) k^(n-alpha) / (k! (n-k)!)."""
    s = Fraction(0)
    for k in range(1, n + 1):
        s += Fraction((-1) ** (n - k), math.factorial(k) * math.factorial(n - k)) * (
            Fraction(k) ** (n - alpha)
        )
    return s


def c_coefficients(alpha: int) -> CoefficientVector:
    if alpha < 1:
        raise ValueError(f"alpha must be positive, got {alpha}")
    return CoefficientVector(alpha, tuple(c_value(n, alpha) for n in range(1, alpha + 1)))


@lru_cache(maxsize=None)
def basis_series(n: int, order: int) -> UPowerSeries:
    """x^n sin(nx)/sin^n(x) as an exact series below x^order.

    Computed as sin(nx) times the n-th power of the inverse of sin(x)/x,
    so every valuation stays explicit."""
    sin_x = trig_series("sin", 1, order + n + 1)
    sinc_inv = (sin_x * UPowerSeries.monomial(-1, 1)).inverse()
    return (trig_series("sin", n, order) * sinc_inv**n).truncate(order)


def appendix_lhs(alpha: int, order: int, coeffs: CoefficientVector | None = None) -> UPowerSeries:
    """sum_{n=1}^{alpha} c_n(alpha) x^n sin(nx)/sin^n(x)."""
    if coeffs is None:
        coeffs = c_coefficients(alpha)
    out = UPowerSeries.zero(trunc=order)
    for n in range(1, alpha + 1):
        cn = coeffs[n]
        if cn:
            out = out + basis_series(n, order) * cn
    return out


def leading_value(alpha: int) -> Fraction:
    return Fraction(1, double_factorial_odd(alpha))


def solve_c_unique(alpha: int) -> CoefficientVector:
    """Recover the c_n(alpha) from the defining linear conditions.

    With c_alpha pinned to (-1)^(alpha-1)/alpha!, the vanishing of the odd
    coefficients x^1, x^3, ..., x^(2*alpha-3) is a square linear system for
    c_1..c_{alpha-1}; a singular system would contradict uniqueness and is
    treated as fatal.
    """
    if alpha < 1:
        raise ValueError(f"alpha must be positive, got {alpha}")
    c_top = Fraction((-1) ** (alpha - 1), math.factorial(alpha))
    if alpha == 1:
        return CoefficientVector(1, (c_top,))
    order = 2 * alpha - 2
    basis = [basis_series(n, order) for n in range(1, alpha + 1)]
    rows = []
    rhs = []
    for r in range(1, alpha):  # coefficient of x^(2r-1)
        e = 2 * r - 1
        rows.append([basis[n - 1].coeff(e).const_value().re for n in range(1, alpha)])
        rhs.append(-c_top * basis[alpha - 1].coeff(e).const_value().re)
    solution = _solve_exact(rows, rhs)
    return CoefficientVector(alpha, tuple(solution) + (c_top,))


def _solve_exact(rows, rhs):
    """Gaussian elimination over the rationals with full pivoting."""
    n = len(rows)
    a = [list(map(Fraction, row)) + [Fraction(v)] for row, v in zip(rows, rhs)]
    col_perm = list(range(n))
    for i in range(n):
        pr, pc = None, None
        for r in range(i, n):
            for c in range(i, n):
                if a[r][c]:
                    pr, pc = r, c
                    break
            if pr is not None:
                break
        if pr is None:
            raise ArithmeticError("singular linear system (uniqueness would fail)")
        a[i], a[pr] = a[pr], a[i]
        if pc != i:
            for row in a:
                row[i], row[pc] = row[pc], row[i]
            col_perm[i], col_perm[pc] = col_perm[pc], col_perm[i]
        piv = a[i][i]
        a[i] = [v / piv for v in a[i]]
        for r in range(n):
            if r != i and a[r][i]:
                f = a[r][i]
                a[r] = [v - f * w for v, w in zip(a[r], a[i])]
    out = [Fraction(0)] * n
    for i in range(n):
        out[col_perm[i]] = a[i][n]
    return out


# --------------------------------------------------------------------------
# the bivariate generating identity


def partial_fraction_check(n_max: int, samples=None) -> bool:
    """1/((v+1)...(v+n)) = sum_k (-1)^(k-1)/((k-1)!(n-k)!) / (v+k) at
    sampled rational v, exactly."""
    if samples is None:
        samples = (Fraction(1, 3), Fraction(5, 2), Fraction(-7, 5), Fraction(11, 7))
    for n in range(1, n_max + 1):
        for v in samples:
            lhs = Fraction(1)
            for k in range(1, n + 1):
                lhs /= v + k
            rhs = sum(
                Fraction((-1) ** (k - 1), math.factorial(k - 1) * math.factorial(n - k))
                / (v + k)
                for k in range(1, n + 1)
            )
            if lhs != rhs:
                return False
    return True


def _inverse_rising_coeffs(n: int, v_order: int):
    """Coefficients of v^m, m < v_order, in 1/((v+1)...(v+n)) via geometric
    expansion of each 1/(v+k)."""
    out = [Fraction(1, math.factorial(n))] + [Fraction(0)] * (v_order - 1)
    for k in range(1, n + 1):
        # multiply by 1/(1 + v/k) = sum_m (-1/k)^m v^m
        new = [Fraction(0)] * v_order
        for m0, c in enumerate(out):
            if not c:
                continue
            for m in range(v_order - m0):
                new[m0 + m] += c * Fraction((-1) ** m, k**m)
        out = new
    return out


def pix_identity_check(alpha_max: int, x_order: int, v_order: int) -> bool:
    """Bivariate identity check, coefficientwise in (x, v):

    sum_alpha (-v)^(alpha-1) sum_n c_n(alpha) x^n sin(nx)/sin^n(x)
      = sum_n x^n sin(nx)/sin^n(x) * v^n / (v(v+1)...(v+n)),

    compared for v-powers p < min(alpha_max, v_order) and x-powers below
    x_order; also verifies the partial-fraction step behind the expansion.
    """
    if x_order < 1:
        return True
    if not partial_fraction_check(min(alpha_max, 12)):
        return False
    p_max = min(alpha_max, v_order)
    for p in range(p_max):
        lhs = appendix_lhs(p + 1, x_order)
        if p % 2:
            lhs = -lhs
        rhs = UPowerSeries.zero(trunc=x_order)
        for n in range(1, p + 2):
            # v^n / (v (v+1)...(v+n)) = v^(n-1) * sum_m coeff_m v^m
            coeffs = _inverse_rising_coeffs(n, p - n + 2)
            cm = coeffs[p - (n - 1)]
            if cm:
                rhs = rhs + basis_series(n, x_order) * cm
        if not lhs.agrees_with(rhs):
            return False
    return True
