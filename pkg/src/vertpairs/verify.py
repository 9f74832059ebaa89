"""Verification grids: every check the CLI `verify` command and the
acceptance suite run, expressed as plain functions returning structured
results so the CLI, the HTTP service and the tests share one source."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import appendix, gw
from .algebra import ExactDivisionError, HalfLaurentSeries, TLaurentPoly
from .pairs import (
    Insertion,
    SurfaceGeometry,
    gamma_resummation_check,
    q_symmetry_check,
    total_alpha,
    vertical_bruteforce,
    vertical_closed,
    vertical_closed_descendents,
    vertical_closed_descendents_window,
)

__all__ = ["CheckResult", "run_suite", "SUITE_NAMES", "oracle_grid_cases", "closed_on_window"]


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}" + (
            f"  ({self.detail})" if self.detail else ""
        )


GRID_INSERTIONS = (
    (),
    (Insertion(0, Fraction(1)),),
    (Insertion(1, Fraction(1)),),
    (Insertion(2, Fraction(1)),),
    (Insertion(1, Fraction(1)), Insertion(1, Fraction(1))),
)


def oracle_grid_cases():
    for d in range(1, 5):
        for h in range(1, 5):
            for parity in ("even", "odd"):
                geom = SurfaceGeometry(h=h, chi_parity=parity)
                for ins in GRID_INSERTIONS:
                    yield geom, d, list(ins)


def _median_window(geom, d, insertions, half_width=10):
    """Width-20 window centered at the median exponent of the closed form
    (its support is symmetric, so the center is 0 whenever it exists)."""
    try:
        _, exact = vertical_closed_descendents(geom, d, insertions)
        lo, hi = exact.support() or (0, 0)
        center = (lo + hi) // 2
    except ExactDivisionError:
        center = 0
    return (center - half_width, center + half_width)


def closed_on_window(geom, d, insertions, window):
    """Closed formula restricted to a window: the exact Laurent object when
    the descendent division is exact, the ascending expansion otherwise."""
    try:
        tpow, exact = vertical_closed_descendents(geom, d, insertions)
        return tpow, exact.restrict(window)
    except ExactDivisionError:
        return vertical_closed_descendents_window(geom, d, insertions, window)


def check_spot_value() -> CheckResult:
    geom = SurfaceGeometry(h=2, chi_parity="odd")
    got = vertical_closed(geom, 1)
    want = HalfLaurentSeries({-1: -1, 0: -2, 1: -1}, den=1)
    return CheckResult(
        "closed-formula spot value d=1 h=2 chi-odd",
        got == want,
        "-q^-1 - 2 - q",
    )


def check_oracle_grid() -> list:
    out = []
    for geom, d, ins in oracle_grid_cases():
        window = _median_window(geom, d, ins)
        tp_c, closed = closed_on_window(geom, d, ins, window)
        tp_b, brute = vertical_bruteforce(geom, d, ins, window)
        ok = tp_c == tp_b and closed == brute
        label = ",".join(f"({i.alpha}:{i.pairing})" for i in ins) or "none"
        out.append(
            CheckResult(
                f"oracle d={d} h={geom.h} {geom.chi_parity} ins={label}",
                ok,
                f"window {window}",
            )
        )
    return out


def check_gamma_telescope() -> list:
    out = []
    for d in range(1, 5):
        shapes = [
            (),
            (1,),
            (2,),
            (3,),
            (4,),
            (5,),
            (1, 1),
            (2, 1),
            (3, 2),
            (4, 1),
            (1, 1, 1),
            (2, 2, 1),
            (3, 1, 1),
            (2, 1, 1, 1),
            (1, 1, 1, 1, 1),
        ]
        ok = all(gamma_resummation_check(d, s) for s in shapes)
        out.append(CheckResult(f"gamma telescope d={d}, |alpha|<=5", ok))
    return out


def _symmetric_rational_check(geom, d, insertions) -> bool:
    """q <-> 1/q symmetry for the h=1 descendent series, which is only a
    rational function: verified on the closed numerator/denominator pair."""
    from .pairs import _descendent_ratio_parts, vertical_closed_big_q

    base = vertical_closed_big_q(geom, d)
    _, num, den = _descendent_ratio_parts(d, insertions)
    num = base * num
    sign = -1 if total_alpha(insertions) % 2 else 1
    # N(1/Q) * D(Q) == sign * N(Q) * D(1/Q)
    return num.invert_variable() * den == num * den.invert_variable() * sign


def check_symmetry_grid() -> list:
    out = []
    for geom, d, ins in oracle_grid_cases():
        try:
            tp, exact = vertical_closed_descendents(geom, d, ins)
            ok = q_symmetry_check(exact, tp)
        except ExactDivisionError:
            ok = _symmetric_rational_check(geom, d, ins)
        label = ",".join(str(i.alpha) for i in ins) or "none"
        out.append(
            CheckResult(f"q<->1/q symmetry d={d} h={geom.h} {geom.chi_parity} a=[{label}]", ok)
        )
    return out


def check_gw_dual_path(order: int = 31) -> list:
    out = []
    for d in range(1, 6):
        for h in range(1, 5):
            for parity in ("even", "odd"):
                geom = SurfaceGeometry(h=h, chi_parity=parity)
                try:
                    series = gw.gw_vertical(geom, d, order)
                except ArithmeticError as exc:
                    out.append(CheckResult(f"gw dual path d={d} h={h} {parity}", False, str(exc)))
                    continue
                real = not any(c.im for tc in series.terms.values() for c in tc.terms.values())
                even = all(e % 2 == 0 for e in series.terms)
                out.append(
                    CheckResult(
                        f"gw dual path d={d} h={h} {parity}",
                        real and even,
                        f"real={real} even-powers={even}",
                    )
                )
    return out


def check_gw_valuation() -> list:
    out = []
    for d in range(1, 6):
        for h in range(1, 5):
            geom = SurfaceGeometry(h=h, chi_parity="even")
            v = d * (2 * h - 2)
            series = gw.gw_vertical(geom, d, v + 3)
            out.append(
                CheckResult(
                    f"gw valuation d={d} h={h} = {v}",
                    gw.leading_order_check(series, v),
                )
            )
    for alpha in range(6):
        for d in (1, 2, 3):
            tp, factor = gw.gw_descendent_factor(
                d, [Insertion(alpha)], 2 * alpha + 4, gw.L_matrix(alpha + 1)
            )
            out.append(
                CheckResult(
                    f"descendent factor valuation d={d} alpha={alpha} = {2*alpha}",
                    gw.leading_order_check(factor, 2 * alpha),
                )
            )
    return out


def check_spin_hurwitz() -> list:
    out = []
    for d in range(1, 6):
        for h in range(1, 5):
            for parity in ("even", "odd"):
                geom = SurfaceGeometry(h=h, chi_parity=parity)
                order = d * (2 * h - 2) + 2
                series = gw.gw_vertical(geom, d, order)
                got = gw.extract_surface_invariant(geom, d, [], series)
                want = gw.spin_hurwitz_vertical(geom, d)
                out.append(
                    CheckResult(
                        f"spin Hurwitz d={d} h={h} {parity}",
                        got == want,
                        f"value {want}",
                    )
                )
    return out


def _mp_insertion_sets(max_alpha=5, max_len=3):
    sets = [()]
    singles = [(a,) for a in range(max_alpha + 1)]
    sets += singles
    pairs = [(a, b) for a in range(max_alpha + 1) for b in range(a + 1)]
    sets += pairs
    triples = [
        (a, b, c)
        for a in range(max_alpha + 1)
        for b in range(a + 1)
        for c in range(b + 1)
    ]
    sets += triples
    return sets


def check_mp_grid() -> list:
    out = []
    for d in (1, 2):
        for h in range(1, 5):
            for parity in ("even", "odd"):
                geom = SurfaceGeometry(h=h, chi_parity=parity)
                bad = []
                for alphas in _mp_insertion_sets():
                    ins = [Insertion(a, Fraction(1)) for a in alphas]
                    if not gw.mp_consistency(geom, d, ins):
                        bad.append(alphas)
                out.append(
                    CheckResult(
                        f"surface-invariant formulas d={d} h={h} {parity} (alpha_j<=5, <=3 insertions)",
                        not bad,
                        f"{len(_mp_insertion_sets())} insertion sets",
                    )
                )
    return out


def check_matrices() -> list:
    K, L = gw.K_matrix(12), gw.L_matrix(12)
    out = [CheckResult("K*L = identity (size 12)", (K @ L).is_identity())]
    from .algebra import GaussianRational

    wants = {
        ("K", 1, 1): GaussianRational(1),
        ("K", 2, 2): GaussianRational(0, -1),
        ("K", 2, 1): GaussianRational(0, -1),
        ("L", 1, 1): GaussianRational(1),
        ("L", 2, 1): GaussianRational(-1),
        ("L", 2, 2): GaussianRational(0, 1),
    }
    for (name, a, b), want in wants.items():
        got = (K if name == "K" else L)[(a, b)]
        out.append(CheckResult(f"{name}[{a},{b}] = {want}", got == want))
    return out


def check_appendix() -> list:
    out = []
    for alpha in range(1, 13):
        series = appendix.appendix_lhs(alpha, 2 * alpha + 2)
        lead_ok = (
            series.valuation() == 2 * alpha - 1
            and series.coeff(2 * alpha - 1).const_value().re == appendix.leading_value(alpha)
        )
        solve_ok = appendix.solve_c_unique(alpha) == appendix.c_coefficients(alpha)
        out.append(
            CheckResult(
                f"appendix order/leading/uniqueness alpha={alpha}",
                lead_ok and solve_ok,
                f"leading 1/{2*alpha-1}!!",
            )
        )
    out.append(
        CheckResult(
            "bivariate generating identity to x^20, v^8",
            appendix.pix_identity_check(12, 21, 9),
        )
    )
    return out


def suite_oracle() -> list:
    return [check_spot_value()] + check_oracle_grid() + check_gamma_telescope()


def suite_symmetry() -> list:
    return check_symmetry_grid()


def suite_gw() -> list:
    return check_gw_dual_path() + check_gw_valuation() + check_spin_hurwitz()


def suite_mp() -> list:
    return check_mp_grid() + check_matrices()


def suite_appendix() -> list:
    return check_appendix()


SUITES = {
    "oracle": suite_oracle,
    "symmetry": suite_symmetry,
    "gw": suite_gw,
    "mp": suite_mp,
    "appendix": suite_appendix,
}

SUITE_NAMES = ("all",) + tuple(SUITES)


def run_suite(name: str) -> list:
    if name == "all":
        out = []
        for fn in SUITES.values():
            out.extend(fn())
        return out
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITE_NAMES}")
    return SUITES[name]()
