"""Angular derivatives and boundary fixed points."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import DegreeZero, NoConvergence, NotBlaschke, NotFixed, PreconditionError
from .holo_maps import FiniteBlaschke, HoloMap, as_finite_blaschke, derivative, evaluate, unit

FIX_TOL = 1e-9
NEUTRAL_TOL = 1e-9
CONVERGED_TOL = 1e-9
DIVERGED_TOL = 1e-3
SWEEP_POINTS = 4096
THETA_TOL = 1e-12


class Method(str, enum.Enum):
    CLOSED_FORM = "closed_form"
    RADIAL_EXTRAPOLATION = "radial_extrapolation"
    JC_QUOTIENT = "jc_quotient"


class Classification(str, enum.Enum):
    ATTRACTIVE = "attractive"
    NEUTRAL = "neutral"
    REPULSIVE = "repulsive"


@dataclass(frozen=True)
class AngularDerivativeResult:
    value: float
    method: Method
    error_estimate: float = 0.0


@dataclass(frozen=True)
class FixedPointInfo:
    theta: float
    derivative: AngularDerivativeResult
    classification: Classification

    @property
    def location(self) -> complex:
        return unit(self.theta)


def _default_radii() -> tuple[float, ...]:
    return tuple(1.0 - 2.0 ** (-n) for n in range(4, 31))


@dataclass(frozen=True)
class RadialSchedule:
    """Radii 1 - 2**-n approaching the boundary, plus the Richardson order."""

    radii: tuple[float, ...] = field(default_factory=_default_radii)
    extrapolation_order: int = 4

    def __post_init__(self):
        r = np.asarray(self.radii, dtype=float)
        if r.size < self.extrapolation_order + 2:
            raise PreconditionError("schedule too short for the requested order")
        if np.any(np.diff(r) <= 0) or r[0] <= 0 or r[-1] >= 1:
            raise PreconditionError("radii must be strictly increasing inside (0, 1)")
        if self.extrapolation_order < 1:
            raise PreconditionError("extrapolation order must be positive")


DEFAULT_SCHEDULE = RadialSchedule()


def richardson_limit(steps, values, order: int) -> tuple[complex, float]:
    """Limit of values(h) as h -> 0 for a sequence with an expansion in powers of h.

    Returns the first extrapolant agreeing with its predecessor to
    CONVERGED_TOL (or the best-agreeing pair) and that disagreement.
    """
    h = np.asarray(steps, dtype=float)
    table = [np.asarray(values, dtype=complex)]
    for k in range(1, order + 1):
        prev = table[-1]
        ratio = h[:-k] / h[k:]
        table.append((ratio * prev[1:] - prev[:-1]) / (ratio - 1.0))
    best = table[-1]
    diffs = np.abs(np.diff(best))
    hit = np.flatnonzero(diffs < CONVERGED_TOL)
    i = hit[0] if hit.size else int(np.argmin(diffs))
    if diffs[i] > DIVERGED_TOL:
        raise NoConvergence(f"successive extrapolants differ by {diffs[i]:.3e}")
    return complex(best[i + 1]), float(diffs[i])


def _check_fixed(f: HoloMap, xi: complex):
    if abs(evaluate(f, xi) - xi) > FIX_TOL:
        raise NotFixed(f"map does not fix {xi!r}")


def _positive(value: complex, err: float, method: Method) -> AngularDerivativeResult:
    if not value.real > 0:
        raise NoConvergence(f"angular derivative estimate {value!r} is not positive")
    return AngularDerivativeResult(float(value.real), method, err)


def angular_derivative_closed_form(f: HoloMap, xi: complex = 1.0) -> AngularDerivativeResult:
    """sum_k (1 - |a_k|^2)/|xi - a_k|^2 for a finite Blaschke product fixing xi."""
    b = as_finite_blaschke(f)
    if b is None:
        raise NotBlaschke(f"{type(f).__name__} is not a finite Blaschke product")
    _check_fixed(b, xi)
    value = sum((1.0 - abs(a) ** 2) / abs(xi - a) ** 2 for a in b.zeros)
    return AngularDerivativeResult(float(value), Method.CLOSED_FORM, 0.0)


def angular_derivative_radial(f: HoloMap, xi: complex = 1.0,
                              schedule: RadialSchedule = DEFAULT_SCHEDULE) -> AngularDerivativeResult:
    """Extrapolated limit of (f(r xi) - xi)/(r xi - xi) as r -> 1."""
    _check_fixed(f, xi)
    r = np.asarray(schedule.radii)
    q = (evaluate(f, r * xi) - xi) / (r * xi - xi)
    value, err = richardson_limit(1.0 - r, q, schedule.extrapolation_order)
    return _positive(value, err, Method.RADIAL_EXTRAPOLATION)


def derivative_radial_limit(f: HoloMap, xi: complex = 1.0,
                            schedule: RadialSchedule = DEFAULT_SCHEDULE) -> AngularDerivativeResult:
    """Extrapolated radial limit of f'(r xi)."""
    _check_fixed(f, xi)
    r = np.asarray(schedule.radii)
    value, err = richardson_limit(1.0 - r, derivative(f, r * xi), schedule.extrapolation_order)
    return _positive(value, err, Method.RADIAL_EXTRAPOLATION)


def jc_quotient_limit(f: HoloMap, xi: complex = 1.0,
                      schedule: RadialSchedule = DEFAULT_SCHEDULE) -> AngularDerivativeResult:
    """Extrapolated limit of (1 - |f(r xi)|)/(1 - r) as r -> 1."""
    _check_fixed(f, xi)
    r = np.asarray(schedule.radii)
    q = (1.0 - np.abs(evaluate(f, r * xi))) / (1.0 - r)
    value, err = richardson_limit(1.0 - r, q, schedule.extrapolation_order)
    return _positive(value, err, Method.JC_QUOTIENT)


def classify_fixed_point(alpha: AngularDerivativeResult | float) -> Classification:
    value = alpha.value if isinstance(alpha, AngularDerivativeResult) else float(alpha)
    if abs(value - 1.0) <= NEUTRAL_TOL:
        return Classification.NEUTRAL
    return Classification.ATTRACTIVE if value < 1.0 else Classification.REPULSIVE


def _fixed_phase(b: FiniteBlaschke, theta):
    # principal argument of f(e^{it}) e^{-it}; zero exactly at fixed points
    return np.angle(evaluate(b, np.exp(1j * theta)) * np.exp(-1j * theta))


def find_boundary_fixed_points(f: HoloMap, points: int = SWEEP_POINTS) -> list[FixedPointInfo]:
    """All boundary fixed points of a finite Blaschke product, by angle sweep and bisection."""
    b = as_finite_blaschke(f)
    if b is None:
        raise NotBlaschke(f"{type(f).__name__} is not a finite Blaschke product")
    if b.degree == 0:
        raise DegreeZero("constant maps are not admissible")
    if b.degree == 1 and b.zeros[0] == 0 and b.lam == 1:
        raise PreconditionError("every boundary point is fixed by the identity")

    theta = 2.0 * np.pi * np.arange(points + 1) / points
    phase = _fixed_phase(b, theta)
    if np.max(np.abs(phase)) < THETA_TOL:
        raise PreconditionError("map agrees with the identity on the circle to rounding")
    roots = []
    for j in range(points):
        g0, g1 = phase[j], phase[j + 1]
        if g0 == 0.0:
            roots.append(theta[j])
            continue
        # a jump of the principal branch near +-pi is not a root
        if g0 * g1 >= 0 or max(abs(g0), abs(g1)) > np.pi / 2:
            continue
        lo, hi, glo = theta[j], theta[j + 1], g0
        while hi - lo > THETA_TOL:
            mid = 0.5 * (lo + hi)
            gm = float(_fixed_phase(b, mid))
            if gm == 0.0:
                lo = hi = mid
                break
            if (gm < 0) == (glo < 0):
                lo, glo = mid, gm
            else:
                hi = mid
        roots.append(0.5 * (lo + hi))

    found: list[FixedPointInfo] = []
    for t in sorted(float(t) % (2.0 * np.pi) for t in roots):
        if found and abs(t - found[-1].theta) < 1e-9:
            continue
        if found and abs(t - 2.0 * np.pi - found[0].theta) < 1e-9:
            continue
        alpha = angular_derivative_closed_form(b, unit(t))
        found.append(FixedPointInfo(t, alpha, classify_fixed_point(alpha)))
    return found


@dataclass(frozen=True)
class JuliaReport:
    max_violation: float
    max_relative_violation: float
    equality_everywhere: bool
    automorphism: bool


def sample_disk(n: int, radius: float, rng: np.random.Generator) -> np.ndarray:
    """n points uniform by area in the disk of the given radius."""
    rho = radius * np.sqrt(rng.random(n))
    return rho * np.exp(2j * np.pi * rng.random(n))


def julia_sides(f: HoloMap, z, xi: complex, eta: complex, alpha: float):
    """Left and right sides of the Julia inequality at the points z."""
    z = np.asarray(z, dtype=complex)
    w = evaluate(f, z)
    lhs = np.abs(w - eta) ** 2 / (1.0 - np.abs(w) ** 2)
    rhs = alpha * np.abs(z - xi) ** 2 / (1.0 - np.abs(z) ** 2)
    return lhs, rhs


def julia_inequality_check(f: HoloMap, xi: complex, eta: complex, alpha: float,
                           samples: int = 1000, seed: int = 0, radius: float = 0.99) -> JuliaReport:
    """Compare both sides of |f - eta|^2/(1 - |f|^2) <= alpha |z - xi|^2/(1 - |z|^2).

    The relative measures are scaled by max(1, right-hand side).
    """
    if alpha <= 0:
        raise PreconditionError("alpha must be positive")
    z = sample_disk(samples, radius, np.random.default_rng(seed))
    lhs, rhs = julia_sides(f, z, xi, eta, alpha)
    gap = lhs - rhs
    scaled = gap / np.maximum(1.0, rhs)
    return JuliaReport(
        max_violation=float(np.max(gap)),
        max_relative_violation=float(np.max(scaled)),
        equality_everywhere=bool(np.all(np.abs(scaled) <= 1e-9)),
        automorphism=f.degree == 1,
    )
