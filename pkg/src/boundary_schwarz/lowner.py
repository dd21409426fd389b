"""Arc-length expansion of origin-fixing finite Blaschke products."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NoConvergence, NotBlaschke, OriginNotFixed, PreconditionError
from .holo_maps import FiniteBlaschke, HoloMap, as_finite_blaschke, derivative

QUAD_TOL = 1e-10
MAX_INTERVALS = 2**20
INITIAL_PANELS = 64
CHECK_TOL = 1e-8
ROTATION_TOL = 1e-10


def adaptive_simpson(func, lo: float, hi: float, tol: float = QUAD_TOL,
                     max_intervals: int = MAX_INTERVALS, panels: int = INITIAL_PANELS) -> float:
    """Integrate a vectorized ``func`` over [lo, hi] by adaptive Simpson.

    All intervals of one refinement level are processed together; each
    interval carries its share of the absolute tolerance.
    """
    edges = np.linspace(lo, hi, panels + 1)
    a, b = edges[:-1], edges[1:]
    m = 0.5 * (a + b)
    fa, fm, fb = func(a), func(m), func(b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    share = np.full(panels, tol / panels)
    accepted = []
    used = panels
    while a.size:
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = func(lm), func(rm)
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        delta = left + right - whole
        done = np.abs(delta) <= 15.0 * share
        accepted.extend((left + right + delta / 15.0)[done])
        keep = ~done
        if not keep.any():
            break
        used += int(keep.sum())
        if used > max_intervals:
            raise NoConvergence(f"adaptive Simpson exceeded {max_intervals} intervals")
        a = np.concatenate([a[keep], m[keep]])
        b = np.concatenate([m[keep], b[keep]])
        fa, fb, fm_new = (np.concatenate([fa[keep], fm[keep]]),
                          np.concatenate([fm[keep], fb[keep]]),
                          np.concatenate([flm[keep], frm[keep]]))
        whole = np.concatenate([left[keep], right[keep]])
        share = np.concatenate([share[keep], share[keep]]) / 2.0
        fm = fm_new
        m = 0.5 * (a + b)
    return math.fsum(accepted)


def _origin_fixing_blaschke(f: HoloMap) -> FiniteBlaschke:
    b = as_finite_blaschke(f)
    if b is None:
        raise NotBlaschke(f"{type(f).__name__} is not a finite Blaschke product")
    if not any(abs(a) <= 1e-12 for a in b.zeros):
        raise OriginNotFixed("the map has no zero at the origin")
    return b


def boundary_density(b: FiniteBlaschke, theta):
    """|f'(e^{i theta})| = sum_k (1 - |a_k|^2)/|e^{i theta} - a_k|^2."""
    w = np.exp(1j * np.asarray(theta, dtype=float))
    total = np.zeros(w.shape)
    for a in b.zeros:
        total = total + (1.0 - abs(a) ** 2) / np.abs(w - a) ** 2
    return total


def arc_image_length(f: HoloMap, theta1: float, theta2: float, tol: float = QUAD_TOL) -> float:
    """Length, with multiplicity, of the image of the arc [theta1, theta2]."""
    b = _origin_fixing_blaschke(f)
    if not theta2 > theta1:
        raise PreconditionError("theta2 must exceed theta1")
    if theta2 - theta1 > 2.0 * math.pi + 1e-12:
        raise PreconditionError("arc longer than the full circle")
    return adaptive_simpson(lambda t: boundary_density(b, t), theta1, theta2, tol)


@dataclass(frozen=True)
class ArcReport:
    s: float
    sigma: float
    bound_quantitative: float
    d0_modulus: float
    is_rotation: bool

    @property
    def holds_quantitative(self) -> bool:
        return self.sigma >= self.bound_quantitative - CHECK_TOL

    @property
    def holds_lowner(self) -> bool:
        return self.sigma >= self.s - CHECK_TOL

    @property
    def length_preserved(self) -> bool:
        return abs(self.sigma - self.s) <= ROTATION_TOL


def lowner_check(f: HoloMap, theta1: float, theta2: float) -> ArcReport:
    b = _origin_fixing_blaschke(f)
    s = theta2 - theta1
    sigma = arc_image_length(b, theta1, theta2)
    d0 = abs(derivative(b, 0.0))
    return ArcReport(
        s=s,
        sigma=sigma,
        bound_quantitative=2.0 * s / (1.0 + d0),
        d0_modulus=d0,
        is_rotation=b.degree == 1,
    )
