"""Exact generating-function calculator for vertical stable-pair descendent
series on local surfaces, with Gromov-Witten, spin Hurwitz and
generating-identity cross-checks."""

from .algebra import (
    ExactDivisionError,
    GaussianRational,
    HalfLaurentSeries,
    LatticeMismatchError,
    TLaurentPoly,
    UPowerSeries,
    binom,
    compose_series,
    double_factorial_odd,
    series_from_json,
    series_to_json,
    trig_series,
)
from .partitions import (
    NestingVector,
    Partition,
    enumerate_nestings,
    enumerate_strict_partitions,
    euler_characteristic,
    transpose,
)
from .pairs import (
    GammaTable,
    Insertion,
    SurfaceGeometry,
    TautPoly,
    answerint_term,
    gamma_coefficients,
    gamma_resummation_check,
    mixed_insertion_series,
    mixed_insertion_series_expanded,
    q_symmetry_check,
    symmetric_product_integral,
    vertical_bruteforce,
    vertical_closed,
    vertical_closed_descendents,
    vertical_closed_descendents_window,
)

__version__ = "0.1.0"
