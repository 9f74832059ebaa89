"""Exact coefficient arithmetic and the two series rings used everywhere else.

All numbers are exact: plain rationals are `fractions.Fraction`, complex ones
are :class:`GaussianRational`, and series coefficients are Laurent polynomials
in the equivariant weight t over the Gaussian rationals.  Floating point is
deliberately absent from this package.

Two series containers:

* :class:`HalfLaurentSeries` -- finite Laurent objects in q (exponent
  denominator 1) or on the Q^(1/2) lattice (denominator 2, scaled integer
  exponent e standing for Q^(e/2)).  Either exact, or restricted to a closed
  exponent window when produced by a truncated summation.
* :class:`UPowerSeries` -- power series in u with a finite principal part and
  an explicit truncation order (coefficients known for exponents strictly
  below it; ``None`` means exact).
"""

from __future__ import annotations

import math
from fractions import Fraction

__all__ = [
    "GaussianRational",
    "TLaurentPoly",
    "HalfLaurentSeries",
    "UPowerSeries",
    "binom",
    "double_factorial_odd",
    "trig_series",
    "compose_series",
    "series_to_json",
    "series_from_json",
    "format_rational",
    "LatticeMismatchError",
    "ExactDivisionError",
]


class LatticeMismatchError(ValueError):
    """Raised when series on incompatible exponent lattices are combined."""


class ExactDivisionError(ArithmeticError):
    """Raised when a Laurent division that must be exact leaves a residue."""


# --------------------------------------------------------------------------
# scalars


def binom(n: int, k: int) -> int:
    """Binomial coefficient extended to negative upper argument.

    Zero whenever k < 0 or k > n >= 0; for n < 0, k >= 0 it equals
    (-1)^k * C(k-n-1, k), so the binomial theorem for (1+x)^n holds for
    every integer n.
    """
    if k < 0:
        return 0
    if n >= 0:
        return math.comb(n, k) if k <= n else 0
    return (-1) ** k * math.comb(k - n - 1, k)


def double_factorial_odd(alpha: int) -> int:
    """(2*alpha - 1)!! = (2a-1)(2a-3)...1 for alpha >= 1."""
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    out = 1
    for m in range(3, 2 * alpha, 2):
        out *= m
    return out


class GaussianRational:
    """A complex number a + b*i with exact rational a, b (and i*i = -1)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __add__(self, other):
        other = _as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.im and not other.im:
            return GaussianRational(self.re * other.re)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        if not self:
            raise ZeroDivisionError("inverse of zero Gaussian rational")
        if not self.im:
            return GaussianRational(1 / self.re)
        n = self.re * self.re + self.im * self.im
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        other = _as_gauss(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _as_gauss(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        im = "i" if self.im == 1 else ("-i" if self.im == -1 else f"{self.im}*i")
        if not self.re:
            return im
        return f"{self.re}+{im}" if self.im > 0 else f"{self.re}{im}"


def _as_gauss(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x)
    return NotImplemented


GAUSS_I = GaussianRational(0, 1)


# --------------------------------------------------------------------------
# Laurent polynomials in t


class TLaurentPoly:
    """Laurent polynomial in t with GaussianRational coefficients.

    Stored as a map t-exponent -> coefficient with zero entries pruned.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for e, c in terms.items():
                if not isinstance(c, GaussianRational):
                    c = GaussianRational(c)
                if c:
                    clean[e] = c
        self.terms = clean

    @classmethod
    def zero(cls) -> "TLaurentPoly":
        return cls()

    @classmethod
    def const(cls, c) -> "TLaurentPoly":
        return cls({0: c})

    @classmethod
    def t_power(cls, e: int, c=1) -> "TLaurentPoly":
        return cls({e: c})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, TLaurentPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self == TLaurentPoly.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __neg__(self):
        return TLaurentPoly({e: -c for e, c in self.terms.items()})

    def __add__(self, other):
        other = _as_tpoly(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        res = TLaurentPoly.__new__(TLaurentPoly)
        res.terms = out
        return res

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_tpoly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_tpoly(other)
        if other is NotImplemented:
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                p = c1 * c2
                s = out.get(e)
                s = p if s is None else s + p
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        res = TLaurentPoly.__new__(TLaurentPoly)
        res.terms = out
        return res

    __rmul__ = __mul__

    def shifted(self, k: int) -> "TLaurentPoly":
        """Multiply by t^k."""
        return TLaurentPoly({e + k: c for e, c in self.terms.items()})

    def as_monomial(self):
        """Return (t-exponent, coefficient) if this is a single term, else None."""
        if len(self.terms) != 1:
            return None
        [(e, c)] = self.terms.items()
        return e, c

    def monomial_inverse(self) -> "TLaurentPoly":
        mono = self.as_monomial()
        if mono is None:
            raise ExactDivisionError(f"not invertible in Q[t,t^-1]: {self}")
        e, c = mono
        return TLaurentPoly({-e: c.inverse()})

    def const_value(self) -> GaussianRational:
        """The value of a t-free polynomial (zero allowed)."""
        if not self.terms:
            return GaussianRational(0)
        if set(self.terms) != {0}:
            raise ValueError(f"t-dependent coefficient: {self}")
        return self.terms[0]

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms):
            c = self.terms[e]
            if e == 0:
                bits.append(f"{c}")
            elif e == 1:
                bits.append(f"({c})*t")
            else:
                bits.append(f"({c})*t^{e}")
        return " + ".join(bits)


def _as_tpoly(x):
    if isinstance(x, TLaurentPoly):
        return x
    if isinstance(x, (int, Fraction, GaussianRational)):
        return TLaurentPoly.const(x)
    return NotImplemented


# --------------------------------------------------------------------------
# Laurent objects in q / Q^(1/2)


def _window_intersect(w1, w2):
    if w1 is None:
        return w2
    if w2 is None:
        return w1
    return (max(w1[0], w2[0]), min(w1[1], w2[1]))


class HalfLaurentSeries:
    """Laurent object in q (den=1) or on the Q^(1/2) lattice (den=2).

    ``terms`` maps scaled integer exponents to TLaurentPoly coefficients;
    with den=2 the scaled exponent e stands for Q^(e/2), so rational
    exponent arithmetic never happens.  ``window`` is None for exact
    objects; otherwise a closed pair (lo, hi) of scaled exponents and the
    coefficients are only guaranteed inside it.
    """

    __slots__ = ("den", "terms", "window")

    def __init__(self, terms=None, den=1, window=None):
        if den not in (1, 2):
            raise ValueError("exponent denominator must be 1 or 2")
        self.den = den
        self.window = window
        clean = {}
        if terms:
            for e, c in terms.items():
                if window is not None and not window[0] <= e <= window[1]:
                    continue
                c = _as_tpoly(c)
                if c:
                    clean[e] = c
        self.terms = clean

    # -- constructors

    @classmethod
    def zero(cls, den=1, window=None):
        return cls({}, den=den, window=window)

    @classmethod
    def one(cls, den=1):
        return cls({0: 1}, den=den)

    @classmethod
    def monomial(cls, scaled_exp: int, coeff=1, den=1):
        return cls({scaled_exp: coeff}, den=den)

    # -- inspection

    @property
    def exact(self) -> bool:
        return self.window is None

    def __bool__(self):
        return bool(self.terms)

    def support(self):
        return (min(self.terms), max(self.terms)) if self.terms else None

    def coeff(self, scaled_exp: int) -> TLaurentPoly:
        if self.window is not None and not self.window[0] <= scaled_exp <= self.window[1]:
            raise KeyError(f"exponent {scaled_exp} outside window {self.window}")
        return self.terms.get(scaled_exp, TLaurentPoly.zero())

    def __eq__(self, other):
        if not isinstance(other, HalfLaurentSeries):
            return NotImplemented
        return (
            self.den == other.den
            and self.window == other.window
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.den, self.window, frozenset(self.terms)))

    # -- ring operations

    def _require_same_lattice(self, other):
        if self.den != other.den:
            raise LatticeMismatchError(
                f"exponent denominators differ: {self.den} vs {other.den}"
            )

    def __neg__(self):
        res = HalfLaurentSeries.__new__(HalfLaurentSeries)
        res.den, res.window = self.den, self.window
        res.terms = {e: -c for e, c in self.terms.items()}
        return res

    def __add__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational, TLaurentPoly)):
            other = HalfLaurentSeries({0: other}, den=self.den)
        if not isinstance(other, HalfLaurentSeries):
            return NotImplemented
        self._require_same_lattice(other)
        window = _window_intersect(self.window, other.window)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            out[e] = c if s is None else s + c
        return HalfLaurentSeries(out, den=self.den, window=window)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational, TLaurentPoly)):
            other = HalfLaurentSeries({0: other}, den=self.den)
        if not isinstance(other, HalfLaurentSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational, TLaurentPoly)):
            c = _as_tpoly(other)
            return HalfLaurentSeries(
                {e: v * c for e, v in self.terms.items()}, den=self.den, window=self.window
            )
        if not isinstance(other, HalfLaurentSeries):
            return NotImplemented
        self._require_same_lattice(other)
        if self.window is not None and other.window is not None:
            raise NotImplementedError("product of two windowed series")
        if self.window is None and other.window is None:
            window = None
        else:
            windowed, exact = (self, other) if self.window is not None else (other, self)
            if not exact.terms:
                return HalfLaurentSeries.zero(den=self.den)
            lo, hi = windowed.window
            slo, shi = exact.support()
            window = (lo + shi, hi + slo)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                p = c1 * c2
                s = out.get(e)
                out[e] = p if s is None else s + p
        return HalfLaurentSeries(out, den=self.den, window=window)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers need an explicit division")
        out = HalfLaurentSeries.one(den=self.den)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- division

    def divide_exact(self, divisor: "HalfLaurentSeries") -> "HalfLaurentSeries":
        """Laurent long division that must terminate with zero residue.

        Raises ExactDivisionError (carrying the residue) otherwise.  The
        divisor's lowest coefficient must be invertible, i.e. a t-monomial.
        """
        self._require_same_lattice(divisor)
        if not (self.exact and divisor.exact):
            raise ValueError("exact division requires exact operands")
        if not divisor.terms:
            raise ZeroDivisionError("division by zero series")
        if not self.terms:
            return HalfLaurentSeries.zero(den=self.den)
        dlo, dhi = divisor.support()
        lead_inv = divisor.terms[dlo].monomial_inverse()
        qmax = max(self.terms) - dhi
        rem = dict(self.terms)
        out = {}
        while rem:
            e = min(rem)
            qe = e - dlo
            if qe > qmax:
                raise ExactDivisionError(
                    f"nonzero residue of lowest exponent {e} (scaled, den={self.den})"
                )
            c = rem[e] * lead_inv
            out[qe] = c
            for de, dc in divisor.terms.items():
                pos = qe + de
                s = rem.get(pos, TLaurentPoly.zero()) - c * dc
                if s:
                    rem[pos] = s
                else:
                    rem.pop(pos, None)
        return HalfLaurentSeries(out, den=self.den)

    def quotient_window(self, divisor: "HalfLaurentSeries", window) -> "HalfLaurentSeries":
        """Ascending expansion of self/divisor restricted to a scaled window.

        Well defined whenever the divisor's lowest coefficient is invertible;
        the quotient is the unique Laurent-series inverse image, so this
        agrees with divide_exact whenever that one succeeds.
        """
        self._require_same_lattice(divisor)
        if not (self.exact and divisor.exact):
            raise ValueError("quotient expansion requires exact operands")
        if not divisor.terms:
            raise ZeroDivisionError("division by zero series")
        lo, hi = window
        if not self.terms:
            return HalfLaurentSeries.zero(den=self.den, window=window)
        dlo = min(divisor.terms)
        lead_inv = divisor.terms[dlo].monomial_inverse()
        rem = dict(self.terms)
        out = {}
        while rem:
            e = min(rem)
            qe = e - dlo
            if qe > hi:
                break
            c = rem[e] * lead_inv
            out[qe] = c
            for de, dc in divisor.terms.items():
                pos = qe + de
                s = rem.get(pos, TLaurentPoly.zero()) - c * dc
                if s:
                    rem[pos] = s
                else:
                    rem.pop(pos, None)
        return HalfLaurentSeries(out, den=self.den, window=window)

    # -- lattice and variable changes

    def restrict(self, window) -> "HalfLaurentSeries":
        return HalfLaurentSeries(
            self.terms, den=self.den, window=_window_intersect(self.window, window)
        )

    def to_q(self) -> "HalfLaurentSeries":
        """Convert a Q-lattice object to the q variable via Q = -q.

        Q^m maps to (-1)^m q^m; any surviving half-integer power of Q is an
        arithmetic error.
        """
        if self.den == 1:
            return self
        out = {}
        for e, c in self.terms.items():
            if e % 2:
                raise ArithmeticError(
                    f"half-integer exponent Q^({e}/2) survives Q->q conversion"
                )
            m = e // 2
            out[m] = c if m % 2 == 0 else -c
        window = None
        if self.window is not None:
            lo, hi = self.window
            window = (-(-lo // 2), hi // 2)  # integer exponents inside the window
        return HalfLaurentSeries(out, den=1, window=window)

    def q_to_big_q(self) -> "HalfLaurentSeries":
        """Rewrite a q-object on the Q-lattice (q^m = (-1)^m Q^m)."""
        if self.den == 2:
            return self
        out = {}
        for m, c in self.terms.items():
            out[2 * m] = c if m % 2 == 0 else -c
        window = None
        if self.window is not None:
            window = (2 * self.window[0], 2 * self.window[1])
        return HalfLaurentSeries(out, den=2, window=window)

    def invert_variable(self) -> "HalfLaurentSeries":
        """Substitute q -> q^(-1) (or Q -> Q^(-1)) by negating exponents."""
        window = None
        if self.window is not None:
            window = (-self.window[1], -self.window[0])
        return HalfLaurentSeries(
            {-e: c for e, c in self.terms.items()}, den=self.den, window=window
        )

    def __repr__(self):
        var = "q" if self.den == 1 else "Q^(1/2)"
        bits = [f"({self.terms[e]!r})*{var}^{e}" for e in sorted(self.terms)]
        body = " + ".join(bits) if bits else "0"
        if self.window is not None:
            body += f"  [window {self.window}]"
        return body


# --------------------------------------------------------------------------
# power series in u


_INF = math.inf


def _trunc_min(*vals):
    best = _INF
    for v in vals:
        if v is None:
            continue
        best = min(best, v)
    return None if best is _INF else best


class UPowerSeries:
    """Truncated series in u with finitely many negative exponents.

    Coefficients (TLaurentPoly) are known exactly for every exponent
    strictly below ``trunc``; ``trunc=None`` marks an exact finite object.
    """

    __slots__ = ("terms", "trunc")

    def __init__(self, terms=None, trunc=None):
        self.trunc = trunc
        clean = {}
        if terms:
            for e, c in terms.items():
                if trunc is not None and e >= trunc:
                    continue
                c = _as_tpoly(c)
                if c:
                    clean[e] = c
        self.terms = clean

    @classmethod
    def zero(cls, trunc=None):
        return cls({}, trunc=trunc)

    @classmethod
    def one(cls, trunc=None):
        return cls({0: 1}, trunc=trunc)

    @classmethod
    def monomial(cls, exp: int, coeff=1, trunc=None):
        return cls({exp: coeff}, trunc=trunc)

    def valuation(self):
        """Lowest exponent with a nonzero coefficient (None for zero series)."""
        return min(self.terms) if self.terms else None

    def coeff(self, exp: int) -> TLaurentPoly:
        if self.trunc is not None and exp >= self.trunc:
            raise KeyError(f"coefficient of u^{exp} beyond truncation {self.trunc}")
        return self.terms.get(exp, TLaurentPoly.zero())

    def truncate(self, order: int) -> "UPowerSeries":
        t = order if self.trunc is None else min(order, self.trunc)
        return UPowerSeries({e: c for e, c in self.terms.items() if e < t}, trunc=t)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, UPowerSeries):
            return NotImplemented
        return self.trunc == other.trunc and self.terms == other.terms

    def agrees_with(self, other: "UPowerSeries") -> bool:
        """Coefficientwise equality below the smaller truncation."""
        t = _trunc_min(self.trunc, other.trunc)
        if t is None:
            return self.terms == other.terms
        return {e: c for e, c in self.terms.items() if e < t} == {
            e: c for e, c in other.terms.items() if e < t
        }

    def __neg__(self):
        res = UPowerSeries.__new__(UPowerSeries)
        res.trunc = self.trunc
        res.terms = {e: -c for e, c in self.terms.items()}
        return res

    def __add__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational, TLaurentPoly)):
            other = UPowerSeries({0: other})
        if not isinstance(other, UPowerSeries):
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            out[e] = c if s is None else s + c
        return UPowerSeries(out, trunc=_trunc_min(self.trunc, other.trunc))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational, TLaurentPoly)):
            other = UPowerSeries({0: other})
        if not isinstance(other, UPowerSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational, TLaurentPoly)):
            c = _as_tpoly(other)
            return UPowerSeries(
                {e: v * c for e, v in self.terms.items()}, trunc=self.trunc
            )
        if not isinstance(other, UPowerSeries):
            return NotImplemented
        va = self.valuation()
        vb = other.valuation()
        ta = None if self.trunc is None else self.trunc + (vb if vb is not None else 0)
        tb = None if other.trunc is None else other.trunc + (va if va is not None else 0)
        if not self.terms or not other.terms:
            # zero times anything is zero wherever the zero side is certified
            if self.trunc is None and not self.terms:
                return UPowerSeries.zero()
            if other.trunc is None and not other.terms:
                return UPowerSeries.zero()
            return UPowerSeries.zero(trunc=_trunc_min(ta, tb))
        out = {}
        trunc = _trunc_min(ta, tb)
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                if trunc is not None and e >= trunc:
                    continue
                p = c1 * c2
                s = out.get(e)
                out[e] = p if s is None else s + p
        return UPowerSeries(out, trunc=trunc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = UPowerSeries.one(trunc=None if n else self.trunc)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self, order=None) -> "UPowerSeries":
        """Multiplicative inverse; leading coefficient must be a t-monomial.

        An exact non-monomial input needs an explicit ``order`` since its
        inverse is an infinite series.
        """
        v = self.valuation()
        if v is None:
            raise ZeroDivisionError("inverse of zero series")
        lead_inv = self.terms[v].monomial_inverse()
        unit = self * UPowerSeries.monomial(-v, lead_inv)
        r = unit - 1
        n_r = _trunc_min(None if self.trunc is None else self.trunc - v, order)
        if n_r is None:
            if not r:
                return UPowerSeries.monomial(-v, lead_inv)
            raise ValueError("inverse of an exact non-monomial needs an order")
        r = r.truncate(n_r)
        geo = UPowerSeries.one(trunc=n_r)
        pw = UPowerSeries.one(trunc=n_r)
        rv = r.valuation()
        k = 1
        while rv is not None and k * rv < n_r:
            pw = (pw * (-r)).truncate(n_r)
            geo = geo + pw
            k += 1
        inv = geo * UPowerSeries.monomial(-v, lead_inv)
        return inv.truncate(n_r - v)

    def divide(self, other: "UPowerSeries", order=None) -> "UPowerSeries":
        return self * other.inverse(order=order)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            inv = GaussianRational(1) / other if not isinstance(other, GaussianRational) else other.inverse()
            return self * inv
        if isinstance(other, UPowerSeries):
            return self.divide(other)
        return NotImplemented

    def __repr__(self):
        bits = [f"({self.terms[e]!r})*u^{e}" for e in sorted(self.terms)]
        body = " + ".join(bits) if bits else "0"
        if self.trunc is not None:
            body += f" + O(u^{self.trunc})"
        return body


def trig_series(kind: str, scale, order: int) -> UPowerSeries:
    """Exact Taylor series of sin(s*u), cos(s*u) or exp(s*u) below u^order."""
    if order < 1:
        raise ValueError("order must be >= 1")
    s = scale if isinstance(scale, GaussianRational) else GaussianRational(scale)
    terms = {}
    if kind == "sin":
        picks = ((n, (-1) ** ((n - 1) // 2)) for n in range(1, order, 2))
    elif kind == "cos":
        picks = ((n, (-1) ** (n // 2)) for n in range(0, order, 2))
    elif kind == "exp":
        picks = ((n, 1) for n in range(order))
    else:
        raise ValueError(f"unknown kind {kind!r}")
    for n, sign in picks:
        terms[n] = s**n * Fraction(sign, math.factorial(n))
    return UPowerSeries(terms, trunc=order)


def compose_series(outer: UPowerSeries, inner: UPowerSeries) -> UPowerSeries:
    """outer(inner(u)) for inner of valuation >= 1 and outer without
    principal part."""
    vi = inner.valuation()
    if inner.terms and vi < 1:
        raise ValueError("inner series must have positive valuation")
    if outer.terms and min(outer.terms) < 0:
        raise ValueError("outer series must have no principal part")
    if not inner.terms:
        c = outer.terms.get(0, TLaurentPoly.zero())
        return UPowerSeries({0: c}, trunc=inner.trunc)
    t_out = None if outer.trunc is None else outer.trunc * vi
    trunc = _trunc_min(inner.trunc, t_out)
    out = UPowerSeries.zero(trunc=trunc)
    power = UPowerSeries.one(trunc=trunc)
    prev = 0
    for e in sorted(outer.terms):
        for _ in range(e - prev):
            power = power * inner
            if trunc is not None:
                power = power.truncate(trunc)
        prev = e
        out = out + power * outer.terms[e]
    return out


# --------------------------------------------------------------------------
# JSON serialization


def format_rational(x: Fraction) -> str:
    return str(x)


def _term_entries(terms, scale=1):
    entries = []
    for e in sorted(terms):
        c = terms[e]
        for te in sorted(c.terms):
            g = c.terms[te]
            entries.append(
                {
                    "exp": e * scale,
                    "t_exp": te,
                    "re": format_rational(g.re),
                    "im": format_rational(g.im),
                }
            )
    return entries


def series_to_json(series, variable=None) -> dict:
    """Serialize either series type to the wire schema.

    Terms are sorted by (exp, t_exp); rationals are canonical "p/q" strings.
    Windowed Laurent objects carry an extra "window" key.
    """
    if isinstance(series, HalfLaurentSeries):
        doc = {
            "variable": variable or "q",
            "exponent_denominator": series.den,
            "terms": _term_entries(series.terms),
            "truncation": None,
        }
        if series.window is not None:
            doc["window"] = list(series.window)
        return doc
    if isinstance(series, UPowerSeries):
        return {
            "variable": variable or "u",
            "exponent_denominator": 1,
            "terms": _term_entries(series.terms),
            "truncation": series.trunc,
        }
    raise TypeError(f"not a series: {series!r}")


def series_from_json(doc: dict):
    coeffs = {}
    for entry in doc["terms"]:
        e = entry["exp"]
        g = GaussianRational(Fraction(entry["re"]), Fraction(entry["im"]))
        c = coeffs.setdefault(e, {})
        c[entry["t_exp"]] = c.get(entry["t_exp"], GaussianRational(0)) + g
    terms = {e: TLaurentPoly(c) for e, c in coeffs.items()}
    if doc["variable"] == "u" or doc.get("truncation") is not None:
        return UPowerSeries(terms, trunc=doc.get("truncation"))
    window = tuple(doc["window"]) if "window" in doc and doc["window"] else None
    return HalfLaurentSeries(terms, den=doc["exponent_denominator"], window=window)
