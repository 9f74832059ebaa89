"""Gromov-Witten side of the correspondence.

The q = -exp(iu) substitution, trigonometric closed forms for the vertical
series (computed along two independent routes that must agree), descendent
factors assembled from the lower-triangular correspondence matrices, spin
Hurwitz leading terms and the degree-1,2 descendent surface invariants.

Everything downstream of the correspondence matrices K/L is conditional on
the Laurent-monomial form of the specialised correspondence entries; CLI
and service output label those results as conjecture-conditional.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .algebra import (
    GAUSS_I,
    GaussianRational,
    HalfLaurentSeries,
    TLaurentPoly,
    UPowerSeries,
    binom,
    trig_series,
)
from .pairs import Insertion, SurfaceGeometry, total_alpha, vertical_closed

__all__ = [
    "GaussTriangularMatrix",
    "substitute_q_exponential",
    "gw_vertical",
    "gw_descendent_factor",
    "leading_order_check",
    "extract_surface_invariant",
    "spin_hurwitz_vertical",
    "mp_invariant",
    "K_matrix",
    "L_matrix",
    "mp_consistency",
]


class GaussTriangularMatrix:
    """Lower-triangular matrix over the Gaussian rationals, 1-indexed,
    with unit diagonal entries."""

    __slots__ = ("size", "entries")

    def __init__(self, size: int, entries):
        if size < 1:
            raise ValueError(f"size must be positive, got {size}")
        self.size = size
        self.entries = {}
        for (a, b), v in entries.items():
            if not 1 <= b <= a <= size:
                raise ValueError(f"entry ({a},{b}) outside the lower triangle")
            v = v if isinstance(v, GaussianRational) else GaussianRational(v)
            if v:
                self.entries[(a, b)] = v
        for a in range(1, size + 1):
            if not self.entries.get((a, a)):
                raise ValueError(f"diagonal entry ({a},{a}) must be a unit")

    def __getitem__(self, key) -> GaussianRational:
        a, b = key
        if not (1 <= a <= self.size and 1 <= b <= self.size):
            raise IndexError(key)
        return self.entries.get((a, b), GaussianRational(0))

    def __eq__(self, other):
        if not isinstance(other, GaussTriangularMatrix):
            return NotImplemented
        return self.size == other.size and self.entries == other.entries

    def __matmul__(self, other: "GaussTriangularMatrix") -> "GaussTriangularMatrix":
        if self.size != other.size:
            raise ValueError("size mismatch")
        out = {}
        for a in range(1, self.size + 1):
            for b in range(1, a + 1):
                s = GaussianRational(0)
                for c in range(b, a + 1):
                    s = s + self[(a, c)] * other[(c, b)]
                if s:
                    out[(a, b)] = s
        return GaussTriangularMatrix(self.size, out)

    def is_identity(self) -> bool:
        return all(
            v == (1 if a == b else 0) for (a, b), v in self.entries.items()
        ) and all(self.entries.get((a, a)) == GaussianRational(1) for a in range(1, self.size + 1))

    def inverse(self) -> "GaussTriangularMatrix":
        """Forward substitution down the triangle."""
        out = {}
        for a in range(1, self.size + 1):
            out[(a, a)] = self[(a, a)].inverse()
        for a in range(1, self.size + 1):
            for b in range(a - 1, 0, -1):
                s = GaussianRational(0)
                for c in range(b, a):
                    s = s + self[(a, c)] * out.get((c, b), GaussianRational(0))
                v = -(out[(a, a)] * s)
                if v:
                    out[(a, b)] = v
        return GaussTriangularMatrix(self.size, out)

    def to_json(self):
        return [
            [
                {"re": str(self[(a, b)].re), "im": str(self[(a, b)].im)}
                for b in range(1, a + 1)
            ]
            for a in range(1, self.size + 1)
        ]


@lru_cache(maxsize=None)
def L_matrix(size: int) -> GaussTriangularMatrix:
    """Closed-form lower-triangular matrix
    L_ab = i^(b-1) (-1)^(a-1) sum_{j=1}^{b} (-1)^(b-j) C(b,j) j^(b-a)."""
    entries = {}
    for a in range(1, size + 1):
        for b in range(1, a + 1):
            s = Fraction(0)
            for j in range(1, b + 1):
                s += Fraction((-1) ** (b - j) * binom(b, j)) * Fraction(j) ** (b - a)
            v = GAUSS_I ** (b - 1) * Fraction((-1) ** (a - 1)) * s
            if v:
                entries[(a, b)] = v
    return GaussTriangularMatrix(size, entries)


@lru_cache(maxsize=None)
def K_matrix(size: int) -> GaussTriangularMatrix:
    """The inverse of L_matrix, computed by forward substitution."""
    return L_matrix(size).inverse()


# --------------------------------------------------------------------------
# the substitution q = -exp(iu)


def substitute_q_exponential(series: HalfLaurentSeries, order: int) -> UPowerSeries:
    """Expand an exact Laurent object under Q^(1/2) -> exp(iu/2), i.e.
    q -> -exp(iu), keeping t-coefficients."""
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    if series.window is not None:
        raise ValueError("substitution needs an exact series")
    big = series.q_to_big_q()
    out = {}
    for e, c in big.terms.items():
        scale = GaussianRational(0, Fraction(e, 2))  # i*e/2
        power = GaussianRational(1)
        for n in range(order):
            if power:
                v = c * power * Fraction(1, math.factorial(n))
                s = out.get(n)
                out[n] = v if s is None else s + v
            power = power * scale
    return UPowerSeries(out, trunc=order)


# --------------------------------------------------------------------------
# vertical series on the Gromov-Witten side


def _gw_vertical_trig(geom: SurfaceGeometry, d: int, order: int) -> UPowerSeries:
    """Trigonometric closed form of the vertical series."""
    e = geom.h - 1
    half_d = Fraction(d, 2)
    series = trig_series("sin", half_d, order) * 2
    series = series**(2 * e) * (Fraction(-d) ** ((1 - d) * e) * geom.sign)
    if d % 2 == 0:
        series = series * (trig_series("cos", half_d, order) * d - d) ** e
    for j in range(1, (d - 1) // 2 + 1):
        bracket = (
            UPowerSeries({0: d * d + j * j - j * d}, trunc=order)
            + trig_series("cos", d, order) * (j * (d - j))
            - trig_series("cos", j, order) * (d * (d - j))
            - trig_series("cos", d - j, order) * (j * d)
        )
        series = series * bracket**e * Fraction(2) ** e
    return series.truncate(order)


@lru_cache(maxsize=None)
def gw_vertical(geom: SurfaceGeometry, d: int, order: int) -> UPowerSeries:
    """The vertical Gromov-Witten series, computed two independent ways
    (substitution into the stable-pairs closed form, and the trigonometric
    product) and checked to agree coefficient by coefficient."""
    if d <= 0 or order < 1:
        raise ValueError("need d >= 1 and order >= 1")
    sub = substitute_q_exponential(vertical_closed(geom, d), order)
    trig = _gw_vertical_trig(geom, d, order)
    if not sub.agrees_with(trig):
        raise ArithmeticError(
            f"substitution and trigonometric routes disagree for d={d}, {geom}"
        )
    return sub


@lru_cache(maxsize=None)
def _inv_sin_power(d: int, b: int, order: int) -> UPowerSeries:
    """1/sin^b(d u/2): the b-th power of sin(d u/2) is a unit times u^b, so
    the inverse has valuation -b and is known below u^(order+1)."""
    sin_b = trig_series("sin", Fraction(d, 2), order + b + 2) ** b
    inv = sin_b.inverse()
    assert inv.valuation() == -b
    return inv


@lru_cache(maxsize=None)
def _descendent_insertion_factor(d: int, alpha: int, order: int, lrow) -> UPowerSeries:
    half_d = Fraction(d, 2)
    factor = UPowerSeries.zero(trunc=order)
    for b in range(1, alpha + 2):
        coeff = (
            lrow[b - 1]
            * GaussianRational(0, -half_d) ** (b - 1)
            * Fraction(1, math.factorial(b))
        )
        if not coeff:
            continue
        term = (
            UPowerSeries.monomial(b - 1, coeff)
            * trig_series("sin", half_d * b, order + b)
            * _inv_sin_power(d, b, order)
        )
        factor = factor + term.truncate(order)
    return factor


def gw_descendent_factor(d: int, insertions, order: int, L: GaussTriangularMatrix):
    """(t-power, u-series) of the universal descendent factor
    prod_j sum_b L[alpha_j+1, b] u^(b-1) (1/b!) (-i d/2)^(b-1)
    sin(b d u/2)/sin^b(d u/2); the t-power per insertion is alpha_j."""
    if order < 1:
        raise ValueError(f"order must be >= 1, got {order}")
    need = max((ins.alpha + 1 for ins in insertions), default=1)
    if L.size < need:
        raise ValueError(f"matrix of size {L.size} too small, need {need}")
    out = UPowerSeries.one(trunc=order)
    for ins in insertions:
        lrow = tuple(L[(ins.alpha + 1, b)] for b in range(1, ins.alpha + 2))
        out = out * _descendent_insertion_factor(d, ins.alpha, order, lrow)
    return total_alpha(insertions), out.truncate(order)


def leading_order_check(series: UPowerSeries, expected_valuation: int) -> bool:
    """True iff everything below expected_valuation vanishes and the
    coefficient there is nonzero."""
    if series.trunc is not None and series.trunc <= expected_valuation:
        raise ValueError(
            f"truncation {series.trunc} too small to decide valuation {expected_valuation}"
        )
    v = series.valuation()
    return v == expected_valuation


def genus_from_dimension(geom: SurfaceGeometry, d: int, insertions) -> int:
    """g = 1 + d*kappa^2 + |alpha| for divisorial insertions in class d*kappa."""
    return 1 + d * geom.kappa_sq + total_alpha(insertions)


def extract_surface_invariant(
    geom: SurfaceGeometry, d: int, insertions, series: UPowerSeries
) -> Fraction:
    """The coefficient of u^(2g-2), with its t^|alpha| factor stripped;
    asserts every lower-order coefficient vanishes."""
    g = genus_from_dimension(geom, d, insertions)
    target = 2 * g - 2
    if series.trunc is not None and series.trunc <= target:
        raise ValueError(f"truncation {series.trunc} too small for u^{target}")
    low = [e for e in series.terms if e < target]
    if low:
        raise ArithmeticError(f"nonvanishing coefficients below u^{target}: {sorted(low)}")
    coeff = series.terms.get(target, TLaurentPoly.zero())
    talpha = total_alpha(insertions)
    value = GaussianRational(0)
    for te, c in coeff.terms.items():
        if te != talpha:
            raise ArithmeticError(f"coefficient carries t^{te}, expected t^{talpha}")
        value = value + c
    if value.im:
        raise ArithmeticError(f"imaginary leading coefficient {value}")
    return value.re


def spin_hurwitz_vertical(geom: SurfaceGeometry, d: int) -> Fraction:
    """(-1)^chi(O_S) * (2^((d-1)/2)/d!)^(2-2h) as an exact rational."""
    if d <= 0:
        raise ValueError(f"d must be positive, got {d}")
    return (
        geom.sign
        * Fraction(2) ** ((d - 1) * (1 - geom.h))
        * Fraction(math.factorial(d)) ** (2 * geom.h - 2)
    )


def mp_invariant(geom: SurfaceGeometry, d: int, insertions) -> Fraction:
    """The conjectured degree-1 and degree-2 descendent surface invariants."""
    if d not in (1, 2):
        raise ValueError(f"closed surface-invariant formulas exist for d in {{1,2}}, got {d}")
    value = Fraction(geom.sign)
    if d == 2:
        value *= Fraction(2) ** (geom.h - 1)
    for ins in insertions:
        value *= (
            d
            * ins.pairing
            * Fraction(math.factorial(ins.alpha), math.factorial(2 * ins.alpha + 1))
            * Fraction(-2) ** (ins.alpha if d == 2 else -ins.alpha)
        )
    return value


def mp_consistency(geom: SurfaceGeometry, d: int, insertions, order=None) -> bool:
    """Run the full vertical pipeline (GW series times descendent factor
    times pairings), extract the surface invariant and compare it exactly
    with the closed formula."""
    if d not in (1, 2):
        raise ValueError(f"d must be 1 or 2, got {d}")
    g = genus_from_dimension(geom, d, insertions)
    if order is None:
        order = 2 * g
    if order <= 2 * g - 2:
        raise ValueError(f"order {order} too small for genus {g}")
    talpha = total_alpha(insertions)
    L = L_matrix(max((ins.alpha + 1 for ins in insertions), default=1))
    tpow, factor = gw_descendent_factor(d, insertions, order, L)
    series = gw_vertical(geom, d, order) * factor
    for ins in insertions:
        series = series * (d * ins.pairing)
    series = series * TLaurentPoly.t_power(talpha)
    extracted = extract_surface_invariant(geom, d, insertions, series)
    return extracted == mp_invariant(geom, d, insertions)
