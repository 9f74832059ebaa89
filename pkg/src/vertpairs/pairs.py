"""Vertical stable-pair generating functions.

Closed product formulas, descendent weight coefficients, the symmetric-product
integrator, and a direct multi-index summation that reproduces the closed
formulas coefficient by coefficient on any finite q-window.  The direct sum
and the closed form share no code path beyond scalar arithmetic, so each one
is an oracle for the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import (
    ExactDivisionError,
    HalfLaurentSeries,
    TLaurentPoly,
    binom,
)
from .partitions import NestingVector, enumerate_nestings, euler_characteristic

__all__ = [
    "SurfaceGeometry",
    "Insertion",
    "GammaTable",
    "TautPoly",
    "vertical_closed",
    "vertical_closed_big_q",
    "vertical_closed_descendents",
    "vertical_closed_descendents_window",
    "gamma_coefficients",
    "gamma_resummation_check",
    "symmetric_product_integral",
    "answerint_term",
    "nesting_weight",
    "vertical_bruteforce",
    "q_symmetry_check",
    "mixed_insertion_series",
    "mixed_insertion_series_expanded",
]


@dataclass(frozen=True)
class SurfaceGeometry:
    """Input triple: canonical-curve genus h, with kappa^2 = h - 1, and the
    parity of the structure-sheaf Euler characteristic (only the parity ever
    enters, through a global sign)."""

    h: int
    chi_parity: str

    def __post_init__(self):
        if self.h < 0:
            raise ValueError(f"genus must be non-negative, got {self.h}")
        if self.chi_parity not in ("even", "odd"):
            raise ValueError(f"chi_parity must be 'even' or 'odd', got {self.chi_parity!r}")

    @property
    def kappa_sq(self) -> int:
        return self.h - 1

    @property
    def sign(self) -> int:
        """(-1)^chi(O_S)."""
        return -1 if self.chi_parity == "odd" else 1


@dataclass(frozen=True)
class Insertion:
    """A divisorial descendent: degree alpha and the pairing value kappa.D."""

    alpha: int
    pairing: Fraction = Fraction(1)

    def __post_init__(self):
        if self.alpha < 0:
            raise ValueError(f"alpha must be non-negative, got {self.alpha}")
        object.__setattr__(self, "pairing", Fraction(self.pairing))


def total_alpha(insertions) -> int:
    return sum(ins.alpha for ins in insertions)


# --------------------------------------------------------------------------
# closed product formulas


def _sine_bracket(d: int) -> HalfLaurentSeries:
    """Q^(d/2) - Q^(-d/2) on the half-exponent lattice."""
    return HalfLaurentSeries({d: 1, -d: -1}, den=2)


def vertical_closed_big_q(geom: SurfaceGeometry, d: int) -> HalfLaurentSeries:
    """The no-insertion vertical series as an exact Laurent object in Q."""
    if d <= 0:
        raise ValueError(f"d must be positive, got {d}")
    if geom.h < 1:
        raise ValueError("closed product formula needs h >= 1")
    e = geom.h - 1
    pref = Fraction((-1) ** d, d ** (d - 1)) ** e * geom.sign
    series = _sine_bracket(d) ** (2 * e) * pref
    for i in range(1, d):
        factor = HalfLaurentSeries({d: d - i, d - 2 * i: -d, -d: i}, den=2)
        series = series * factor**e
    return series


def vertical_closed(geom: SurfaceGeometry, d: int) -> HalfLaurentSeries:
    """Same object expressed in q (via Q = -q); an exact Laurent polynomial."""
    return vertical_closed_big_q(geom, d).to_q()


def _descendent_ratio_parts(d: int, insertions):
    """Scalar, numerator and denominator of the closed descendent factor."""
    scalar = Fraction(d) ** total_alpha(insertions)
    num = HalfLaurentSeries.one(den=2)
    den = HalfLaurentSeries.one(den=2)
    for ins in insertions:
        a1 = ins.alpha + 1
        scalar *= d * ins.pairing / math.factorial(a1)
        num = num * HalfLaurentSeries({d * a1: 1, -d * a1: -1}, den=2)
        den = den * _sine_bracket(d) ** a1
    return scalar, num, den


def vertical_closed_descendents(geom: SurfaceGeometry, d: int, insertions):
    """(t-power, exact q-series) of the closed formula with descendents.

    The Laurent division must be exact; a nonzero residue (possible for
    h <= 1, where the series is not a Laurent polynomial) raises
    ExactDivisionError.  Use the windowed variant in that regime.
    """
    base = vertical_closed_big_q(geom, d)
    scalar, num, den = _descendent_ratio_parts(d, insertions)
    quotient = (base * num).divide_exact(den)
    return total_alpha(insertions), (quotient * scalar).to_q()


def vertical_closed_descendents_window(geom: SurfaceGeometry, d: int, insertions, q_window):
    """Windowed expansion of the closed formula, defined for every h >= 1.

    Agrees with the exact variant restricted to the window whenever that one
    exists; for h <= 1 with insertions it expands the (rational-function)
    quotient as an ascending Laurent series.
    """
    lo, hi = q_window
    base = vertical_closed_big_q(geom, d)
    scalar, num, den = _descendent_ratio_parts(d, insertions)
    quotient = (base * num).quotient_window(den, (2 * lo, 2 * hi))
    return total_alpha(insertions), (quotient * scalar).to_q()


def q_symmetry_check(series: HalfLaurentSeries, total_alpha: int) -> bool:
    """True iff q -> q^(-1) multiplies the exact series by (-1)^total_alpha."""
    if series.window is not None:
        raise ValueError("symmetry check needs an exact series")
    sign = -1 if total_alpha % 2 else 1
    return series.invert_variable() == series * sign


# --------------------------------------------------------------------------
# descendent weights gamma_a


@dataclass(frozen=True)
class GammaTable:
    """Coefficients gamma_a of omega^a in the expanded divisorial descendent
    integrand; gamma_a is a homogeneous t-polynomial of degree |alpha| - a and
    vanishes for a > |alpha|."""

    alphas: tuple
    entries: tuple  # TLaurentPoly, index a = 0 .. |alphas|

    def __getitem__(self, a: int) -> TLaurentPoly:
        if 0 <= a < len(self.entries):
            return self.entries[a]
        return TLaurentPoly.zero()

    @property
    def max_power(self) -> int:
        return len(self.entries) - 1


def _euler_factor_coeffs(order: int):
    """Taylor coefficients of (1 - exp(-x))/x up to x^order: (-1)^k/(k+1)!."""
    return [Fraction((-1) ** k, math.factorial(k + 1)) for k in range(order + 1)]


def _single_insertion_bracket(d: int, alpha: int):
    """Homogeneous degree-alpha part, in (omega, t), of
    E(t) * sum_{j<d} exp(omega - j*t); returned as {omega_power: {t_power: c}}."""
    ecoef = _euler_factor_coeffs(alpha)
    out = {w: {} for w in range(alpha + 1)}
    for k in range(alpha + 1):
        m = alpha - k  # remaining degree for (omega - j t)^m / m!
        for w in range(m + 1):
            base = Fraction(1, math.factorial(w) * math.factorial(m - w))
            total = sum(Fraction((-j) ** (m - w)) for j in range(d))
            c = ecoef[k] * base * total
            if c:
                tpow = alpha - w
                out[w][tpow] = out[w].get(tpow, Fraction(0)) + c
    return {w: {t: c for t, c in tc.items() if c} for w, tc in out.items()}


def gamma_coefficients(d: int, alphas) -> GammaTable:
    """Expand the product of degree-alpha_i brackets as a polynomial in omega."""
    alphas = tuple(alphas)
    prod = {0: {0: Fraction(1)}}
    for alpha in alphas:
        bracket = _single_insertion_bracket(d, alpha)
        new = {}
        for w1, tc1 in prod.items():
            for w2, tc2 in bracket.items():
                tgt = new.setdefault(w1 + w2, {})
                for t1, c1 in tc1.items():
                    for t2, c2 in tc2.items():
                        t = t1 + t2
                        tgt[t] = tgt.get(t, Fraction(0)) + c1 * c2
        prod = {w: {t: c for t, c in tc.items() if c} for w, tc in new.items()}
    top = sum(alphas)
    entries = tuple(TLaurentPoly(prod.get(a, {})) for a in range(top + 1))
    return GammaTable(alphas, entries)


def gamma_resummation_check(d: int, alphas) -> bool:
    """Verify, as an exact bivariate polynomial identity in (X, t), that
    sum_a gamma_a X^a telescopes to
    t^|alpha| * prod_j [(X/t)^(a_j+1) - (X/t - d)^(a_j+1)] / (a_j+1)!."""
    alphas = tuple(alphas)
    gamma = gamma_coefficients(d, alphas)
    lhs = {}
    for a in range(gamma.max_power + 1):
        for tpow, c in gamma[a].terms.items():
            if c:
                lhs[(a, tpow)] = c.re

    talpha = sum(alphas)
    rhs = {(0, talpha): Fraction(1)}
    for alpha in alphas:
        a1 = alpha + 1
        # [(X/t)^a1 - (X/t - d)^a1] / a1! = -sum_{r<=alpha} C(a1,r)(-d)^(a1-r) X^r t^(-r)/a1!
        factor = {}
        for r in range(alpha + 1):
            c = -Fraction(binom(a1, r) * (-d) ** (a1 - r), math.factorial(a1))
            if c:
                factor[r] = c
        new = {}
        for (x1, t1), c1 in rhs.items():
            for r, c2 in factor.items():
                key = (x1 + r, t1 - r)
                new[key] = new.get(key, Fraction(0)) + c1 * c2
        rhs = new
    rhs = {k: v for k, v in rhs.items() if v}
    return lhs == rhs


# --------------------------------------------------------------------------
# tautological polynomials on the symmetric product


class TautPoly:
    """Polynomial in the tautological classes omega, theta with t-Laurent
    coefficients; keyed by (omega power, theta power)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for key, c in terms.items():
                if not isinstance(c, TLaurentPoly):
                    c = TLaurentPoly.const(c) if not isinstance(c, dict) else TLaurentPoly(c)
                if c:
                    clean[key] = c
        self.terms = clean

    @classmethod
    def one(cls):
        return cls({(0, 0): 1})

    @classmethod
    def monomial(cls, wpow: int, thpow: int, coeff=1):
        return cls({(wpow, thpow): coeff})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, TautPoly):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            s = out.get(k)
            s = c if s is None else s + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return TautPoly(out)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, TLaurentPoly)):
            return TautPoly({k: c * other for k, c in self.terms.items()})
        out = {}
        for (w1, t1), c1 in self.terms.items():
            for (w2, t2), c2 in other.terms.items():
                k = (w1 + w2, t1 + t2)
                p = c1 * c2
                s = out.get(k)
                out[k] = p if s is None else s + p
        return TautPoly(out)

    __rmul__ = __mul__

    def truncate_total(self, bound: int) -> "TautPoly":
        """Drop monomials of omega+theta degree above bound (they integrate
        to zero on a symmetric product of that size)."""
        return TautPoly({(w, t): c for (w, t), c in self.terms.items() if w + t <= bound})

    def __repr__(self):
        bits = [
            f"({c!r})*w^{w}*th^{t}" for (w, t), c in sorted(self.terms.items())
        ]
        return " + ".join(bits) if bits else "0"


def symmetric_product_integral(h: int, n0: int, p: TautPoly) -> TLaurentPoly:
    """Integrate a tautological polynomial over the n0-th symmetric product
    of a genus-h curve: omega^a theta^b integrates to b! C(h, b) when
    a + b = n0 and to zero otherwise.  t-dependence passes through."""
    total = TLaurentPoly.zero()
    for (w, th), c in p.terms.items():
        if w + th == n0:
            total = total + c * (math.factorial(th) * binom(h, th))
    return total


# --------------------------------------------------------------------------
# the direct summation


def nesting_weight(geom: SurfaceGeometry, d: int, nv: NestingVector) -> Fraction:
    """The constant multiplying one nesting's contribution:
    (-1)^(chi(O_S) + d(d-1)kappa^2/2 + sum n_i) (d!/d^d)^kappa^2 (-d)^(n_{d-1})
    * prod_i i^(-delta_i) C(kappa^2, delta_i)."""
    k2 = geom.kappa_sq
    parity = (d * (d - 1) // 2) * k2 + sum(nv.n) + (1 if geom.chi_parity == "odd" else 0)
    w = Fraction(math.factorial(d), d**d) ** k2
    w *= Fraction(-d) ** nv.n[-1]
    for i in range(1, d):
        delta = nv.delta(i)
        b = binom(k2, delta)
        if b == 0:
            return Fraction(0)
        w *= Fraction(b, i**delta)
    return -w if parity % 2 else w


def answerint_term(geom: SurfaceGeometry, d: int, nv: NestingVector, a: int, jvec):
    """One term of the closed-form symmetric-product integral: the rational
    (without t) and the t-power a - n_0 of
    (dt)^(a-n_0) C(n_0-n_{d-1}+(d+1)k^2-a-|j|, n_0-a-|j|) prod_i (-d/i)^{j_i} C(k^2-d_i, j_i).
    """
    if d <= 0:
        raise ValueError(f"d must be positive, got {d}")
    if a < 0 or any(j < 0 for j in jvec):
        raise ValueError("a and all j_i must be non-negative")
    k2 = geom.kappa_sq
    n0, nlast = nv.n[0], nv.n[-1]
    jabs = sum(jvec)
    core = binom(n0 - nlast + (d + 1) * k2 - a - jabs, n0 - a - jabs)
    if core == 0:
        return Fraction(0), a - n0
    val = Fraction(core) * Fraction(d) ** (a - n0)
    for i, ji in enumerate(jvec, start=1):
        b = binom(k2 - nv.delta(i), ji)
        if b == 0:
            return Fraction(0), a - n0
        val *= Fraction(-d, i) ** ji * b
    return val, a - n0


def _poincare_integral_sum(geom: SurfaceGeometry, d: int, nv: NestingVector, x: int, y: int):
    """Sum over the multi-index j of the closed-form integral of
    omega^x theta^y against the virtual-normal-bundle integrand.

    Returns (rational value, t-power = x + y - n_0).  The theta power is
    absorbed through a falling factorial h(h-1)...(h-y+1) and a shifted
    binomial; at y = 0 this reduces exactly to the answerint_term sum.
    """
    k2 = geom.kappa_sq
    n0, nlast = nv.n[0], nv.n[-1]
    falling = 1
    for r in range(y):
        falling *= geom.h - r
    if falling == 0:
        return Fraction(0), x + y - n0
    deltas = nv.deltas
    total = Fraction(0)

    def rec(i, jabs, jfac):
        nonlocal total
        if i == d:
            core = binom(n0 - nlast + (d + 1) * k2 - x - 2 * y - jabs, n0 - x - y - jabs)
            if core:
                total += jfac * core
            return
        rem = n0 - x - y - jabs
        ki = k2 - deltas[i - 1]
        top = rem if ki < 0 else min(rem, ki)
        f = jfac
        for ji in range(top + 1):
            if ji > 0:
                f = jfac * Fraction(-d, i) ** ji * binom(ki, ji)
                if f == 0:
                    continue
            rec(i + 1, jabs + ji, f)

    rec(1, 0, Fraction(1))
    if total == 0:
        return Fraction(0), x + y - n0
    return falling * total * Fraction(d) ** (x + y - n0), x + y - n0


def _answerint_sum(geom, d, nv, a):
    """answerint_term summed over all j (finite by binomial vanishing)."""
    return _poincare_integral_sum(geom, d, nv, a, 0)


@lru_cache(maxsize=None)
def _nestings_cached(d, lo, hi, kappa_sq):
    return tuple(enumerate_nestings(d, (lo, hi), kappa_sq))


def _collapse_t(acc, talpha, q_window):
    """Check each q-coefficient is a pure t^talpha monomial and strip it."""
    coeffs = {}
    for (chi, tpow), val in acc.items():
        if not val:
            continue
        if tpow != talpha:
            raise ArithmeticError(
                f"t bookkeeping failed: coefficient at q^{chi} t^{tpow}, expected t^{talpha}"
            )
        coeffs[chi] = coeffs.get(chi, Fraction(0)) + val
    return HalfLaurentSeries(coeffs, den=1, window=q_window)


def vertical_bruteforce(geom: SurfaceGeometry, d: int, insertions, q_window):
    """(t-power, windowed q-series) of the pre-resummation multi-index sum.

    Sums over nesting vectors with Euler characteristic in the window, the
    omega-power a weighted by gamma_a, and the multi-index j.  Termination:
    the window bounds n_0 and the deltas (each enters chi with positive
    weight), a is capped by |alpha|, and |j| <= n_0 - a since the leading
    binomial vanishes beyond.
    """
    if d <= 0:
        raise ValueError(f"d must be positive, got {d}")
    lo, hi = q_window
    talpha = total_alpha(insertions)
    if lo > hi:
        return talpha, HalfLaurentSeries.zero(den=1, window=q_window)
    gamma = gamma_coefficients(d, [ins.alpha for ins in insertions])
    pair_product = math.prod((ins.pairing for ins in insertions), start=Fraction(1))
    acc = {}
    for nv in _nestings_cached(d, lo, hi, geom.kappa_sq):
        weight = nesting_weight(geom, d, nv)
        if weight == 0:
            continue
        chi = euler_characteristic(nv, geom.kappa_sq)
        for a in range(gamma.max_power + 1):
            gpoly = gamma[a]
            if not gpoly:
                continue
            integral, tshift = _answerint_sum(geom, d, nv, a)
            if integral == 0:
                continue
            base = weight * pair_product * integral
            for gt, gc in gpoly.terms.items():
                key = (chi, nv.n[0] + gt + tshift)
                acc[key] = acc.get(key, Fraction(0)) + base * gc.re
    return talpha, _collapse_t(acc, talpha, q_window)


# --------------------------------------------------------------------------
# mixed insertions (divisorial + point classes)


def _exp_neg_jt_coeffs(j: int, order: int):
    """Taylor coefficients of exp(-j t) up to t^order."""
    return [Fraction((-j) ** m, math.factorial(m)) for m in range(order + 1)]


def _euler_derivative_coeffs(order: int):
    """Taylor coefficients of E'(t) for E(x) = (1 - exp(-x))/x:
    coefficient of t^r is (-1)^(r+1) (r+1)/(r+2)!."""
    return [
        Fraction((-1) ** (r + 1) * (r + 1), math.factorial(r + 2))
        for r in range(order + 1)
    ]


def point_insertion_factor(
    beta: int,
    d: int,
    geom: SurfaceGeometry,
    nv: NestingVector,
    include_kappa_half: bool = True,
    use_base_length: bool = False,
) -> TautPoly:
    """The tautological class of one point insertion of degree beta.

    Homogeneous part of total degree beta - 1 in (omega, theta, t) of the
    fibre integral of the exponential descendent integrand; per summand b
    the omega/theta structure is (omega^b, b n omega^(b-1), -b(b-1)
    omega^(b-2) theta).  With ``use_base_length`` the same class is
    assembled from the lowest divisor in the flag (n = n_0, with the length
    differences folded into the scalar part); the two assemblies are
    algebraically identical but share no expansion code.
    """
    if beta < 0:
        raise ValueError(f"beta must be non-negative, got {beta}")
    deg = beta - 1
    if deg < 0:
        return TautPoly()
    k2 = geom.kappa_sq
    ecoef = _euler_factor_coeffs(deg)
    edcoef = _euler_derivative_coeffs(deg)
    out = {}

    def put(w, th, tpow, c):
        if not c:
            return
        key = (w, th)
        tc = out.setdefault(key, {})
        tc[tpow] = tc.get(tpow, Fraction(0)) + c

    for j in range(d):
        expc = _exp_neg_jt_coeffs(j, deg)
        n_for_omega = nv.n[0] if use_base_length else nv.n[j]
        length_shift = (nv.n[j] - nv.n[0]) if use_base_length else 0
        for b in range(deg + 2):
            # E(t) * b * n * omega^(b-1)
            if b >= 1 and b - 1 <= deg:
                tbudget = deg - (b - 1)
                conv = sum(
                    (expc[m] * ecoef[tbudget - m] for m in range(tbudget + 1)),
                    Fraction(0),
                )
                put(b - 1, 0, tbudget, conv * n_for_omega * Fraction(1, math.factorial(b - 1)))
            # -E(t) * b(b-1) * omega^(b-2) * theta
            if b >= 2 and b - 1 <= deg:
                tbudget = deg - (b - 1)
                conv = sum(
                    (expc[m] * ecoef[tbudget - m] for m in range(tbudget + 1)),
                    Fraction(0),
                )
                put(b - 2, 1, tbudget, -conv * Fraction(1, math.factorial(b - 2)))
            # (k^2 E'(t) - correction * E(t)) * omega^b
            if b <= deg:
                tbudget = deg - b
                corr = Fraction(j * k2) - length_shift
                if include_kappa_half:
                    corr += Fraction(k2, 2)
                conv = Fraction(0)
                for m in range(tbudget + 1):
                    conv += expc[m] * (k2 * edcoef[tbudget - m] - corr * ecoef[tbudget - m])
                put(b, 0, tbudget, conv * Fraction(1, math.factorial(b)))
    return TautPoly({k: TLaurentPoly(tc) for k, tc in out.items()})


def mixed_insertion_series(
    geom: SurfaceGeometry,
    d: int,
    divisor_insertions,
    point_betas,
    q_window,
    include_kappa_half: bool = True,
):
    """(t-power, windowed q-series) with both divisorial descendents and
    point insertions of degrees beta_j.

    Extends the direct sum: the point classes multiply in as tautological
    polynomials and each monomial is integrated by the closed-form
    symmetric-product integral.
    """
    lo, hi = q_window
    talpha = total_alpha(divisor_insertions)
    t_total = talpha + sum(b - 1 for b in point_betas)
    if lo > hi:
        return t_total, HalfLaurentSeries.zero(den=1, window=q_window)
    if any(b == 0 for b in point_betas):
        # a degree-0 point insertion has an empty integrand part
        return t_total, HalfLaurentSeries.zero(den=1, window=q_window)
    gamma = gamma_coefficients(d, [ins.alpha for ins in divisor_insertions])
    pair_product = math.prod((ins.pairing for ins in divisor_insertions), start=Fraction(1))
    acc = {}
    for nv in _nestings_cached(d, lo, hi, geom.kappa_sq):
        weight = nesting_weight(geom, d, nv)
        if weight == 0:
            continue
        chi = euler_characteristic(nv, geom.kappa_sq)
        taut = TautPoly.one()
        for beta in point_betas:
            taut = taut * point_insertion_factor(beta, d, geom, nv, include_kappa_half)
        taut = taut.truncate_total(nv.n[0])
        if not taut:
            continue
        for a in range(gamma.max_power + 1):
            gpoly = gamma[a]
            if not gpoly:
                continue
            for (w, th), tc in taut.terms.items():
                integral, tshift = _poincare_integral_sum(geom, d, nv, a + w, th)
                if integral == 0:
                    continue
                base = weight * pair_product * integral
                for gt, gc in gpoly.terms.items():
                    for pt, pc in tc.terms.items():
                        key = (chi, nv.n[0] + gt + pt + tshift)
                        acc[key] = acc.get(key, Fraction(0)) + base * gc.re * pc.re
    return t_total, _collapse_t(acc, t_total, q_window)


def _integrand_taut_expansion(geom: SurfaceGeometry, d: int, nv: NestingVector) -> TautPoly:
    """The full virtual-normal-bundle integrand expanded as a tautological
    polynomial, truncated at total degree n_0 (higher monomials integrate to
    zero).  Independent of the closed-form integral route."""
    k2 = geom.kappa_sq
    n0, nlast = nv.n[0], nv.n[-1]

    # sum_k (theta/dt)^k / k! * (1 - omega/dt)^(n_{d-1} - d k^2 - k)
    regrouped = {}
    for k in range(n0 + 1):
        r = nlast - d * k2 - k
        for l in range(n0 - k + 1):
            c = Fraction(binom(r, l) * (-1) ** l, math.factorial(k) * d ** (k + l))
            if c:
                tc = regrouped.setdefault((l, k), {})
                tp = -(k + l)
                tc[tp] = tc.get(tp, Fraction(0)) + c
    taut = TautPoly(regrouped)

    for i in range(1, d):
        fi = {}
        r = k2 - nv.delta(i)
        for l in range(n0 + 1):
            c = Fraction(binom(r, l) * (-1) ** l, i**l)
            if c:
                fi[(l, 0)] = TLaurentPoly({-l: c})
        taut = (taut * TautPoly(fi)).truncate_total(n0)
    return taut


def mixed_insertion_series_expanded(
    geom: SurfaceGeometry,
    d: int,
    divisor_insertions,
    point_betas,
    q_window,
    include_kappa_half: bool = True,
):
    """Second, independent evaluation of mixed_insertion_series.

    Expands the complete integrand (virtual weight, divisorial gamma sum and
    point classes assembled from the lowest flag divisor) as one tautological
    polynomial per nesting and integrates monomial by monomial with the
    Poincare rule.  No shared summation code with the primary route.
    """
    lo, hi = q_window
    talpha = total_alpha(divisor_insertions)
    t_total = talpha + sum(b - 1 for b in point_betas)
    if lo > hi or any(b == 0 for b in point_betas):
        return t_total, HalfLaurentSeries.zero(den=1, window=q_window)
    gamma = gamma_coefficients(d, [ins.alpha for ins in divisor_insertions])
    pair_product = math.prod((ins.pairing for ins in divisor_insertions), start=Fraction(1))
    acc = {}
    for nv in _nestings_cached(d, lo, hi, geom.kappa_sq):
        weight = nesting_weight(geom, d, nv)
        if weight == 0:
            continue
        chi = euler_characteristic(nv, geom.kappa_sq)
        n0 = nv.n[0]
        integrand = _integrand_taut_expansion(geom, d, nv)
        gamma_taut = TautPoly(
            {(a, 0): gamma[a] for a in range(gamma.max_power + 1) if gamma[a]}
        )
        integrand = (integrand * gamma_taut).truncate_total(n0)
        for beta in point_betas:
            integrand = (
                integrand
                * point_insertion_factor(
                    beta, d, geom, nv, include_kappa_half, use_base_length=True
                )
            ).truncate_total(n0)
        value = symmetric_product_integral(geom.h, n0, integrand)
        if not value:
            continue
        scaled = value.shifted(n0) * (weight * pair_product)
        for tpow, c in scaled.terms.items():
            key = (chi, tpow)
            acc[key] = acc.get(key, Fraction(0)) + c.re
    return t_total, _collapse_t(acc, t_total, q_window)
