"""Lower bounds for the angular derivative f'(1) and their equality cases."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .boundary import FIX_TOL, angular_derivative_radial
from .errors import (
    DenominatorVanishes,
    NoRegularFixedPointData,
    NotFixed,
    NotSelfMapData,
)
from .holo_maps import HoloMap, derivative, evaluate, make_extremal

SCHWARZ_PICK_SLACK = 1e-10
EQUALITY_TOL = 1e-7
ORIGIN_TOL = 1e-10
FROLOVA_GUARD = 1e-12
DETECTION_TOL = 1e-7
REAL_PARAM_TOL = 1e-9
# maps this close to the extremal family may show numeric equality without membership
AMBIGUITY_BAND = 10.0 * EQUALITY_TOL**0.5


def _check_self_map_data(c: complex, d0: complex):
    if not abs(c) < 1.0:
        raise NotSelfMapData(f"|f(0)| = {abs(c)!r} is not < 1")
    if abs(d0) > 1.0 - abs(c) ** 2 + SCHWARZ_PICK_SLACK:
        raise NotSelfMapData(f"|f'(0)| = {abs(d0)!r} exceeds the Schwarz-Pick bound {1 - abs(c) ** 2!r}")


def bound_unkelbach_herzig(d0: complex) -> float:
    """2/(1 + |f'(0)|), for maps fixing the origin."""
    d0 = complex(d0)
    if abs(d0) > 1.0 + SCHWARZ_PICK_SLACK:
        raise NotSelfMapData(f"|f'(0)| = {abs(d0)!r} exceeds 1")
    return 2.0 / (1.0 + abs(d0))


def bound_osserman(c: complex, d0: complex) -> float:
    """2(1 - |c|)^2/(1 - |c|^2 + |d0|)."""
    c, d0 = complex(c), complex(d0)
    _check_self_map_data(c, d0)
    return 2.0 * (1.0 - abs(c)) ** 2 / (1.0 - abs(c) ** 2 + abs(d0))


def bound_frolova(c: complex, d0: complex) -> float:
    """2 / Re((1 - c^2 + d0)/(1 - c)^2)."""
    c, d0 = complex(c), complex(d0)
    _check_self_map_data(c, d0)
    den = ((1.0 - c * c + d0) / (1.0 - c) ** 2).real
    if den <= FROLOVA_GUARD:
        raise NoRegularFixedPointData(f"Re((1 - c^2 + d0)/(1 - c)^2) = {den!r} is not positive")
    return 2.0 / den


def bound_strong_osserman(c: complex, d0: complex) -> float:
    """2|1 - c|^2/(1 - |c|^2 + |d0|)."""
    c, d0 = complex(c), complex(d0)
    _check_self_map_data(c, d0)
    return 2.0 * abs(1.0 - c) ** 2 / (1.0 - abs(c) ** 2 + abs(d0))


def _equal(actual: float, bound: float) -> bool:
    return abs(actual - bound) <= EQUALITY_TOL * max(1.0, actual)


@dataclass(frozen=True)
class BoundsReport:
    c: complex
    d0: complex
    actual: float
    bound_uho: float | None
    bound_osserman: float
    bound_frolova: float
    bound_strong: float
    equality_frolova: bool
    equality_strong: bool
    equality_osserman: bool
    extremal_params: tuple[complex, float] | None

    @property
    def gap_frolova(self) -> float:
        return self.actual - self.bound_frolova

    @property
    def gap_strong(self) -> float:
        return self.actual - self.bound_strong

    @property
    def gap_osserman(self) -> float:
        return self.actual - self.bound_osserman


def boundary_derivative_at_one(f: HoloMap) -> float:
    """f'(1) from the exact node derivative, or radial extrapolation if that fails."""
    try:
        return float(derivative(f, 1.0).real)
    except DenominatorVanishes:
        return angular_derivative_radial(f, 1.0).value


def bounds_report(f: HoloMap) -> BoundsReport:
    if abs(evaluate(f, 1.0) - 1.0) > FIX_TOL:
        raise NotFixed("map does not fix 1")
    c = evaluate(f, 0.0)
    d0 = derivative(f, 0.0)
    actual = boundary_derivative_at_one(f)
    frolova = bound_frolova(c, d0)
    strong = bound_strong_osserman(c, d0)
    osserman = bound_osserman(c, d0)
    uho = bound_unkelbach_herzig(d0) if abs(c) <= ORIGIN_TOL else None
    return BoundsReport(
        c=c, d0=d0, actual=actual,
        bound_uho=uho,
        bound_osserman=osserman,
        bound_frolova=frolova,
        bound_strong=strong,
        equality_frolova=_equal(actual, frolova),
        equality_strong=_equal(actual, strong),
        equality_osserman=_equal(actual, osserman),
        extremal_params=is_extremal_for_frolova(f),
    )


def _probe_points(n: int = 64) -> np.ndarray:
    # deterministic Fermat spiral filling |z| <= 0.9
    k = np.arange(n)
    return 0.9 * np.sqrt((k + 0.5) / n) * np.exp(1j * k * np.pi * (3.0 - np.sqrt(5.0)))


def recover_extremal_parameter(c: complex, d0: complex) -> complex:
    """a = -d0 (1 - conj(c)) / ((1 - |c|^2)(1 - c)), i.e. minus g'(0) of the reduced map."""
    return -d0 * (1.0 - c.conjugate()) / ((1.0 - abs(c) ** 2) * (1.0 - c))


def _nearest_member(f: HoloMap) -> tuple[complex, complex, float]:
    c = evaluate(f, 0.0)
    a = recover_extremal_parameter(c, derivative(f, 0.0))
    a_real = min(max(-1.0, a.real), np.nextafter(1.0, 0.0))
    return c, a, a_real


def family_distance(f: HoloMap) -> float:
    """Sup distance on the probe points from f to the family member sharing f(0), f'(0).

    The Frolova gap of a map at distance d from the family is of order d**2,
    so maps with d below about sqrt(EQUALITY_TOL) can pass the numeric
    equality test without belonging to the family.
    """
    c, a, a_real = _nearest_member(f)
    z = _probe_points()
    return float(max(abs(a.imag), np.max(np.abs(evaluate(f, z) - evaluate(make_extremal(c, a_real), z)))))


def is_extremal_for_frolova(f: HoloMap, tol: float = DETECTION_TOL) -> tuple[complex, float] | None:
    """(c, a) if f coincides with the extremal family member make_extremal(c, a), else None."""
    if abs(evaluate(f, 1.0) - 1.0) > FIX_TOL:
        raise NotFixed("map does not fix 1")
    c, a, a_real = _nearest_member(f)
    if abs(a.imag) > tol or not (-1.0 - tol <= a.real < 1.0):
        return None
    candidate = make_extremal(c, a_real)
    z = _probe_points()
    if np.max(np.abs(evaluate(f, z) - evaluate(candidate, z))) > tol:
        return None
    return c, a_real


@dataclass(frozen=True)
class EqualityConditions:
    eq3: bool
    eq5: bool
    eq2: bool
    report: BoundsReport


def verify_equality_conditions(c: complex, a: float) -> EqualityConditions:
    """Which of the three bounds the extremal map make_extremal(c, a) attains.

    eq3 is the Frolova bound, eq5 the strong Osserman bound, eq2 Osserman's.
    """
    report = bounds_report(make_extremal(c, a))
    return EqualityConditions(
        eq3=report.equality_frolova,
        eq5=report.equality_strong,
        eq2=report.equality_osserman,
        report=report,
    )


def expected_equality_flags(c: complex, a: float, tol: float = REAL_PARAM_TOL) -> tuple[bool, bool, bool]:
    """Which bounds an extremal map should attain, from (c, a) alone; used to cross-check."""
    c = complex(c)
    eq5 = -1.0 - tol <= a <= tol
    eq2 = eq5 and abs(c.imag) <= tol and -tol <= c.real < 1.0
    return True, eq5, eq2


def extremal_boundary_derivative(c: complex, a: float) -> float:
    """Closed form (|1 - c|^2/(1 - |c|^2)) * 2/(1 - a) of f'(1) on the extremal family."""
    c = complex(c)
    return abs(1.0 - c) ** 2 / (1.0 - abs(c) ** 2) * 2.0 / (1.0 - a)
