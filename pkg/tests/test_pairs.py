from fractions import Fraction

import pytest

from vertpairs.algebra import ExactDivisionError, HalfLaurentSeries, TLaurentPoly, binom
from vertpairs.pairs import (
    Insertion,
    SurfaceGeometry,
    answerint_term,
    gamma_coefficients,
    gamma_resummation_check,
    mixed_insertion_series,
    mixed_insertion_series_expanded,
    nesting_weight,
    q_symmetry_check,
    symmetric_product_integral,
    TautPoly,
    vertical_bruteforce,
    vertical_closed,
    vertical_closed_big_q,
    vertical_closed_descendents,
    vertical_closed_descendents_window,
)
from vertpairs.partitions import NestingVector


def geom(h, parity="even"):
    return SurfaceGeometry(h=h, chi_parity=parity)


# ---------------------------------------------------------------- closed formula


def test_closed_spot_value_d1():
    assert vertical_closed(geom(2, "odd"), 1) == HalfLaurentSeries(
        {-1: -1, 0: -2, 1: -1}, den=1
    )


def test_closed_d2_h2_in_big_q():
    # (1/2) (Q - Q^-1)^2 (Q - 2 + Q^-1), expanded by hand
    want = HalfLaurentSeries(
        {
            6: Fraction(1, 2),
            4: -1,
            2: Fraction(-1, 2),
            0: 2,
            -2: Fraction(-1, 2),
            -4: -1,
            -6: Fraction(1, 2),
        },
        den=2,
    )
    assert vertical_closed_big_q(geom(2, "even"), 2) == want


def test_closed_h1_trivial():
    for d in (1, 2, 5):
        assert vertical_closed(geom(1, "even"), d) == HalfLaurentSeries.one(den=1)
        assert vertical_closed(geom(1, "odd"), d) == -HalfLaurentSeries.one(den=1)


def test_closed_rejects_bad_input():
    with pytest.raises(ValueError):
        vertical_closed(geom(2), 0)
    with pytest.raises(ValueError):
        vertical_closed(geom(0), 1)


# ---------------------------------------------------------------- gamma table


def test_gamma_alpha_zero():
    for d in (1, 2, 5):
        g = gamma_coefficients(d, [0])
        assert g[0] == TLaurentPoly.const(d)
        assert g.max_power == 0


def test_gamma_d1_alpha1():
    g = gamma_coefficients(1, [1])
    assert g[1] == TLaurentPoly.const(1)
    assert g[0] == TLaurentPoly.t_power(1, Fraction(-1, 2))


def test_gamma_d2_alpha1():
    g = gamma_coefficients(2, [1])
    assert g[1] == TLaurentPoly.const(2)
    assert g[0] == TLaurentPoly.t_power(1, -2)


def test_gamma_vanishes_beyond_total_degree():
    g = gamma_coefficients(3, [2, 1])
    assert g.max_power == 3
    assert g[7] == TLaurentPoly.zero()


def test_gamma_telescope_examples():
    assert gamma_resummation_check(1, [1])
    assert gamma_resummation_check(3, [0, 0])
    assert gamma_resummation_check(2, [])


def test_gamma_telescope_grid():
    shapes = [(), (1,), (2,), (5,), (1, 1), (2, 3), (1, 1, 1), (2, 2, 1)]
    for d in range(1, 5):
        for s in shapes:
            assert gamma_resummation_check(d, s), (d, s)


# ---------------------------------------------------------------- integrator


def test_symmetric_product_integral_examples():
    p = TautPoly({(0, 2): Fraction(1, 2)})
    assert symmetric_product_integral(3, 2, p) == TLaurentPoly.const(3)
    assert symmetric_product_integral(7, 4, TautPoly({(4, 0): 1})) == TLaurentPoly.const(1)
    assert symmetric_product_integral(2, 3, TautPoly({(1, 1): 1})) == TLaurentPoly.zero()


def test_answerint_examples():
    g = geom(2)  # kappa^2 = 1
    # d=1 collapses to C(2k^2, n0) t^(-n0): here C(2,2) = 1
    val, tpow = answerint_term(g, 1, NestingVector(1, (2,)), 0, ())
    assert (val, tpow) == (Fraction(1), -2)
    assert answerint_term(g, 1, NestingVector(1, (3,)), 0, ())[0] == 0  # C(2,3)
    # vanishing when n0 - a - |j| < 0
    val, _ = answerint_term(g, 1, NestingVector(1, (1,)), 3, ())
    assert val == 0
    # direct evaluation example: d=2, k^2=1, n=(1,2), a=0, j=(0) -> 1/t
    val, tpow = answerint_term(g, 2, NestingVector(2, (1, 2)), 0, (0,))
    assert val == Fraction(1) and tpow == -1


# ---------------------------------------------------------------- direct sum


def d1_reference_series(g, window):
    """Independent route for d=1, no insertions:
    sign * q^(-k^2) * sum_n C(2k^2, n) q^n."""
    k2 = g.kappa_sq
    coeffs = {}
    for chi in range(window[0], window[1] + 1):
        n0 = chi + k2
        if n0 >= 0:
            c = g.sign * binom(2 * k2, n0)
            if c:
                coeffs[chi] = c
    return HalfLaurentSeries(coeffs, den=1, window=window)


@pytest.mark.parametrize("h,parity", [(0, "even"), (1, "odd"), (2, "odd"), (3, "even"), (4, "odd")])
def test_bruteforce_d1_against_reference(h, parity):
    g = geom(h, parity)
    window = (-4, 6)
    tpow, got = vertical_bruteforce(g, 1, [], window)
    assert tpow == 0
    assert got == d1_reference_series(g, window)


def test_bruteforce_d1_h2_example():
    tpow, got = vertical_bruteforce(geom(2, "odd"), 1, [], (-1, 1))
    assert got == HalfLaurentSeries({-1: -1, 0: -2, 1: -1}, den=1, window=(-1, 1))


def test_bruteforce_h1_single_spike():
    for d in (1, 2, 3):
        tpow, got = vertical_bruteforce(geom(1), d, [], (-5, 5))
        assert got == HalfLaurentSeries({0: 1}, den=1, window=(-5, 5))


def test_bruteforce_empty_window():
    tpow, got = vertical_bruteforce(geom(3), 2, [], (3, -3))
    assert not got.terms and tpow == 0


def test_bruteforce_matches_closed_with_insertions():
    g = geom(3, "odd")
    ins = [Insertion(1, Fraction(1)), Insertion(2, Fraction(3, 2))]
    window = (-8, 8)
    tp_b, brute = vertical_bruteforce(g, 2, ins, window)
    tp_c, closed = vertical_closed_descendents(g, 2, ins)
    assert tp_b == tp_c == 3
    assert brute == closed.restrict(window)


def test_divisor_equation():
    g = geom(3)
    window = (-6, 6)
    _, base = vertical_bruteforce(g, 2, [], window)
    c = Fraction(5, 3)
    _, multiplied = vertical_bruteforce(g, 2, [Insertion(0, c)], window)
    assert multiplied == base * (c * 2)


def test_nesting_weight_d1_is_global_sign():
    for n0 in range(4):
        assert nesting_weight(geom(3, "odd"), 1, NestingVector(1, (n0,))) == -1


# ---------------------------------------------------------------- descendent closed form


def test_descendents_empty_is_base():
    g = geom(4, "odd")
    tpow, series = vertical_closed_descendents(g, 3, [])
    assert tpow == 0
    assert series == vertical_closed(g, 3)


def test_descendents_alpha0_is_divisor_equation():
    g = geom(2)
    c = Fraction(7, 2)
    tpow, series = vertical_closed_descendents(g, 3, [Insertion(0, c)])
    assert tpow == 0
    assert series == vertical_closed(g, 3) * (3 * c)


def test_descendents_h1_division_fails_but_window_works():
    g = geom(1)
    with pytest.raises(ExactDivisionError):
        vertical_closed_descendents(g, 1, [Insertion(1, Fraction(1))])
    window = (-5, 5)
    tp_w, windowed = vertical_closed_descendents_window(g, 1, [Insertion(1, Fraction(1))], window)
    tp_b, brute = vertical_bruteforce(g, 1, [Insertion(1, Fraction(1))], window)
    assert tp_w == tp_b == 1
    assert windowed == brute
    # sign * t * (-1/2 + q - q^2 + q^3 - ...)
    assert windowed.coeff(0) == TLaurentPoly.const(Fraction(-1, 2))
    assert windowed.coeff(2) == TLaurentPoly.const(-1)


def test_windowed_matches_exact_when_both_exist():
    g = geom(3)
    ins = [Insertion(2, Fraction(1))]
    window = (-7, 7)
    tp1, exact = vertical_closed_descendents(g, 2, ins)
    tp2, windowed = vertical_closed_descendents_window(g, 2, ins, window)
    assert exact.restrict(window) == windowed


def test_division_threshold_at_total_alpha():
    # the sine-bracket power 2h-2 absorbs one denominator factor per unit of
    # |alpha|: exact up to |alpha| = 2h-2, windowed expansion beyond
    g = geom(2)
    vertical_closed_descendents(g, 1, [Insertion(2, Fraction(1))])  # |alpha| = 2 = 2h-2
    with pytest.raises(ExactDivisionError):
        vertical_closed_descendents(g, 1, [Insertion(3, Fraction(1))])
    window = (-6, 6)
    assert vertical_closed_descendents_window(
        g, 1, [Insertion(3, Fraction(1))], window
    ) == vertical_bruteforce(g, 1, [Insertion(3, Fraction(1))], window)


def test_oracle_with_alpha_four_insertion():
    g = geom(3, "odd")
    ins = [Insertion(4, Fraction(2, 5))]
    window = (-9, 9)
    tp_c, closed = vertical_closed_descendents(g, 1, ins)
    tp_b, brute = vertical_bruteforce(g, 1, ins, window)
    assert tp_c == tp_b == 4
    assert closed.restrict(window) == brute


# ---------------------------------------------------------------- symmetry


def test_symmetry_examples():
    assert q_symmetry_check(vertical_closed(geom(2, "odd"), 1), 0)
    _, s = vertical_closed_descendents(geom(3), 2, [Insertion(1, Fraction(1))])
    assert q_symmetry_check(s, 1)
    assert not q_symmetry_check(HalfLaurentSeries.monomial(1, den=1), 0)
    with pytest.raises(ValueError):
        q_symmetry_check(HalfLaurentSeries({0: 1}, den=1, window=(0, 1)), 0)


# ---------------------------------------------------------------- mixed insertions


def q_log_derivative(series):
    return HalfLaurentSeries(
        {e: c * e for e, c in series.terms.items()}, den=1, window=series.window
    )


def test_mixed_no_points_reduces_to_bruteforce():
    g = geom(2, "odd")
    ins = [Insertion(1, Fraction(2))]
    window = (-5, 5)
    assert mixed_insertion_series(g, 2, ins, [], window) == vertical_bruteforce(
        g, 2, ins, window
    )


@pytest.mark.parametrize(
    "h,parity,d", [(2, "odd", 1), (2, "even", 2), (3, "even", 1), (1, "even", 2)]
)
def test_mixed_tau1_is_euler_weight(h, parity, d):
    # one tau_1(1) insertion multiplies each q^chi coefficient by chi
    g = geom(h, parity)
    window = (-6, 6)
    _, base = vertical_bruteforce(g, d, [], window)
    t1, got = mixed_insertion_series(g, d, [], [1], window)
    assert t1 == 0
    assert got == q_log_derivative(base)


@pytest.mark.parametrize(
    "h,parity,d,betas",
    [
        (2, "odd", 1, [1]),
        (2, "odd", 1, [2]),
        (3, "even", 2, [2]),
        (2, "even", 2, [3]),
        (4, "odd", 1, [2, 1]),
        (2, "even", 3, [2]),
    ],
)
def test_mixed_dual_path_points_only(h, parity, d, betas):
    g = geom(h, parity)
    window = (-4, 4)
    assert mixed_insertion_series(g, d, [], betas, window) == mixed_insertion_series_expanded(
        g, d, [], betas, window
    )


@pytest.mark.parametrize(
    "h,parity,d,alphas,betas",
    [
        (2, "odd", 1, [1], [1]),
        (3, "even", 2, [1], [2]),
        (2, "even", 2, [2], [1, 1]),
    ],
)
def test_mixed_dual_path_with_divisors(h, parity, d, alphas, betas):
    g = geom(h, parity)
    ins = [Insertion(a, Fraction(1)) for a in alphas]
    window = (-3, 3)
    assert mixed_insertion_series(g, d, ins, betas, window) == mixed_insertion_series_expanded(
        g, d, ins, betas, window
    )


def test_mixed_kappa_switch_changes_result():
    # the half-kappa correction matters as soon as kappa^2 != 0
    g = geom(2, "odd")
    window = (-3, 3)
    _, with_corr = mixed_insertion_series(g, 1, [], [1], window, include_kappa_half=True)
    _, without = mixed_insertion_series(g, 1, [], [1], window, include_kappa_half=False)
    assert with_corr != without
    # and both evaluation routes respect the switch
    assert (
        mixed_insertion_series(g, 1, [], [2], window, include_kappa_half=False)
        == mixed_insertion_series_expanded(g, 1, [], [2], window, include_kappa_half=False)
    )


def test_mixed_degenerate_cases():
    g = geom(2)
    t, s = mixed_insertion_series(g, 1, [], [1], (2, -2))
    assert not s.terms
    t0, s0 = mixed_insertion_series(g, 1, [], [0], (-3, 3))
    assert not s0.terms


def test_mixed_two_tau1_weights_by_chi_squared():
    g = geom(2, "odd")
    window = (-4, 4)
    _, base = vertical_bruteforce(g, 1, [], window)
    want = HalfLaurentSeries(
        {e: c * (e * e) for e, c in base.terms.items()}, den=1, window=window
    )
    _, got = mixed_insertion_series(g, 1, [], [1, 1], window)
    assert got == want


def test_oracle_equivalence_d5_rational_pairings():
    # beyond the d<=4 acceptance grid
    from vertpairs.verify import closed_on_window

    g = geom(3, "odd")
    ins = [Insertion(2, Fraction(-3, 7)), Insertion(1, Fraction(5, 2))]
    window = (-12, 12)
    assert closed_on_window(g, 5, ins, window) == vertical_bruteforce(g, 5, ins, window)
