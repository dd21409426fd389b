"""Holomorphic self-maps of the unit disk as small expression trees.

Every node is an immutable dataclass that knows how to evaluate itself and
its exact derivative on numpy arrays of complex points.  All maps that can
be built here are finite Blaschke products (possibly composed, multiplied
or conjugated by disk automorphisms), so they are rational with every pole
outside the closed disk and therefore can be evaluated on the unit circle
directly.

Scalars are plain Python ``complex`` numbers.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import (
    DegenerateConstant,
    DenominatorVanishes,
    NotOriginFixing,
    ParameterOutOfRange,
)

DENOMINATOR_GUARD = 1e-12
UNIT_TOL = 1e-12

# Cauchy-integral parameters for the removable singularity of g(z)/z.
_CAUCHY_RADIUS = 0.5
_CAUCHY_NODES = 128
_CAUCHY_SWITCH = 0.25


def _complex(value, name: str) -> complex:
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ParameterOutOfRange(f"{name} must be finite, got {z!r}")
    return z


def _disk_point(value, name: str) -> complex:
    z = _complex(value, name)
    if abs(z) >= 1.0:
        raise ParameterOutOfRange(f"{name} must lie in the open unit disk, |{name}| = {abs(z)!r}")
    return z


def _unimodular(value, name: str) -> complex:
    z = _complex(value, name)
    if abs(abs(z) - 1.0) > UNIT_TOL:
        raise ParameterOutOfRange(f"{name} must have unit modulus, |{name}| = {abs(z)!r}")
    return z


def _div(num, den):
    if np.min(np.abs(den), initial=np.inf) < DENOMINATOR_GUARD:
        raise DenominatorVanishes("denominator vanishes within tolerance")
    return num / den


def _factor(a: complex, z):
    """(z - a)/(1 - conj(a) z) and its derivative."""
    den = 1.0 - a.conjugate() * z
    value = _div(z - a, den)
    deriv = (1.0 - abs(a) ** 2) / den**2
    return value, deriv


class HoloMap:
    """Base class of the map grammar.

    Subclasses implement ``_eval`` and ``_deriv`` on complex ndarrays and
    report their rational ``degree``.
    """

    def __call__(self, z):
        return evaluate(self, z)

    def derivative(self, z):
        return derivative(self, z)

    @property
    def degree(self) -> int:
        raise NotImplementedError

    def _eval(self, z: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _deriv(self, z: np.ndarray) -> np.ndarray:
        raise NotImplementedError


@dataclass(frozen=True)
class Identity(HoloMap):
    @property
    def degree(self) -> int:
        return 1

    def _eval(self, z):
        return z.copy()

    def _deriv(self, z):
        return np.ones_like(z)


@dataclass(frozen=True)
class Rotation(HoloMap):
    lam: complex

    def __post_init__(self):
        object.__setattr__(self, "lam", _unimodular(self.lam, "lambda"))

    @property
    def degree(self) -> int:
        return 1

    def _eval(self, z):
        return self.lam * z

    def _deriv(self, z):
        return np.full_like(z, self.lam)


@dataclass(frozen=True)
class BlaschkeFactor(HoloMap):
    """The involutive automorphism z -> (a - z)/(1 - conj(a) z)."""

    a: complex

    def __post_init__(self):
        object.__setattr__(self, "a", _disk_point(self.a, "a"))

    @property
    def degree(self) -> int:
        return 1

    def _eval(self, z):
        return _div(self.a - z, 1.0 - self.a.conjugate() * z)

    def _deriv(self, z):
        den = 1.0 - self.a.conjugate() * z
        return _div(abs(self.a) ** 2 - 1.0, den**2)


@dataclass(frozen=True)
class FiniteBlaschke(HoloMap):
    """lam * prod_k (z - a_k)/(1 - conj(a_k) z).  With no zeros it is the constant lam."""

    lam: complex
    zeros: tuple[complex, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "lam", _unimodular(self.lam, "lambda"))
        zeros = tuple(_disk_point(a, f"zeros[{k}]") for k, a in enumerate(self.zeros))
        object.__setattr__(self, "zeros", zeros)

    @property
    def degree(self) -> int:
        return len(self.zeros)

    def _eval(self, z):
        out = np.full_like(z, self.lam)
        for a in self.zeros:
            out = out * _div(z - a, 1.0 - a.conjugate() * z)
        return out

    def _deriv(self, z):
        if not self.zeros:
            return np.zeros_like(z)
        parts = [_factor(a, z) for a in self.zeros]
        total = np.zeros_like(z)
        # product rule without dividing by factors that may vanish
        for k in range(len(parts)):
            term = parts[k][1]
            for j, (value, _) in enumerate(parts):
                if j != k:
                    term = term * value
            total = total + term
        return self.lam * total


@dataclass(frozen=True)
class ExtremalFamily(HoloMap):
    """The two-parameter family attaining equality in the Frolova bound.

    f(z) = (c - w(z)) / (1 - conj(c) w(z)) with
    w(z) = z (a - z)/(1 - a z) (1 - c)/(1 - conj(c)).
    For a = -1 the middle factor is the constant -1 and f is an automorphism.
    """

    c: complex
    a: float

    def __post_init__(self):
        object.__setattr__(self, "c", _disk_point(self.c, "c"))
        a = float(self.a)
        if not (-1.0 <= a < 1.0):
            raise ParameterOutOfRange(f"a must lie in [-1, 1), got {a!r}")
        object.__setattr__(self, "a", a)

    @property
    def u(self) -> complex:
        return (1.0 - self.c) / (1.0 - self.c.conjugate())

    @property
    def degree(self) -> int:
        return 1 if self.a == -1.0 else 2

    def _middle(self, z):
        a = self.a
        if a == -1.0:
            return np.full_like(z, -1.0), np.zeros_like(z)
        den = 1.0 - a * z
        return _div(a - z, den), _div(np.full_like(z, a * a - 1.0), den**2)

    def _w(self, z):
        b, db = self._middle(z)
        return self.u * z * b, self.u * (b + z * db)

    def _eval(self, z):
        w, _ = self._w(z)
        return _div(self.c - w, 1.0 - self.c.conjugate() * w)

    def _deriv(self, z):
        w, dw = self._w(z)
        den = 1.0 - self.c.conjugate() * w
        return _div(-dw * (1.0 - abs(self.c) ** 2), den**2)


@dataclass(frozen=True)
class MobiusConjugate(HoloMap):
    """Post-compose ``inner`` with a disk automorphism sending 0 to c.

    Forward form: z -> (c + u w)/(1 + conj(c) u w), w = inner(z).
    Inverse form: z -> conj(u) (w - c)/(1 - conj(c) w), which undoes the forward form.
    """

    c: complex
    u: complex
    inner: HoloMap
    inverse: bool = False

    def __post_init__(self):
        object.__setattr__(self, "c", _disk_point(self.c, "c"))
        object.__setattr__(self, "u", _unimodular(self.u, "u"))

    @property
    def degree(self) -> int:
        return self.inner.degree

    def _outer(self, w):
        c, u = self.c, self.u
        k = 1.0 - abs(c) ** 2
        if self.inverse:
            den = 1.0 - c.conjugate() * w
            return _div(u.conjugate() * (w - c), den), _div(u.conjugate() * k, den**2)
        den = 1.0 + c.conjugate() * u * w
        return _div(c + u * w, den), _div(u * k, den**2)

    def _eval(self, z):
        return self._outer(self.inner._eval(z))[0]

    def _deriv(self, z):
        _, dm = self._outer(self.inner._eval(z))
        return dm * self.inner._deriv(z)


@dataclass(frozen=True)
class Product(HoloMap):
    left: HoloMap
    right: HoloMap

    @property
    def degree(self) -> int:
        return self.left.degree + self.right.degree

    def _eval(self, z):
        return self.left._eval(z) * self.right._eval(z)

    def _deriv(self, z):
        return (self.left._deriv(z) * self.right._eval(z)
                + self.left._eval(z) * self.right._deriv(z))


@dataclass(frozen=True)
class Compose(HoloMap):
    """outer(inner(z))."""

    outer: HoloMap
    inner: HoloMap

    @property
    def degree(self) -> int:
        return self.outer.degree * self.inner.degree

    def _eval(self, z):
        return self.outer._eval(self.inner._eval(z))

    def _deriv(self, z):
        return self.outer._deriv(self.inner._eval(z)) * self.inner._deriv(z)


@dataclass(frozen=True)
class DivideByZ(HoloMap):
    """g(z)/z for an origin-fixing g, with the removable singularity filled in.

    Near the origin the value and derivative come from the Cauchy integral
    over |zeta| = 1/2, which avoids the cancellation in g(z)/z.
    """

    g: HoloMap
    _nodes: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        theta = 2.0 * np.pi * np.arange(_CAUCHY_NODES) / _CAUCHY_NODES
        object.__setattr__(self, "_nodes", _CAUCHY_RADIUS * np.exp(1j * theta))

    @cached_property
    def _samples(self) -> np.ndarray:
        return self.g._eval(self._nodes) / self._nodes

    @property
    def degree(self) -> int:
        return self.g.degree - 1

    def _cauchy(self, z, power):
        zeta = self._nodes
        kernel = zeta[None, :] / (zeta[None, :] - z.reshape(-1, 1)) ** power
        return (kernel @ self._samples / _CAUCHY_NODES).reshape(z.shape)

    def _eval(self, z):
        near = np.abs(z) < _CAUCHY_SWITCH
        out = np.empty_like(z)
        if np.any(near):
            out[near] = self._cauchy(z[near], 1)
        far = ~near
        if np.any(far):
            out[far] = self.g._eval(z[far]) / z[far]
        return out

    def _deriv(self, z):
        near = np.abs(z) < _CAUCHY_SWITCH
        out = np.empty_like(z)
        if np.any(near):
            out[near] = self._cauchy(z[near], 2)
        far = ~near
        if np.any(far):
            zf = z[far]
            out[far] = (self.g._deriv(zf) * zf - self.g._eval(zf)) / zf**2
        return out


def _points(z) -> np.ndarray:
    arr = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(arr)):
        raise ParameterOutOfRange("evaluation points must be finite")
    if np.max(np.abs(arr), initial=0.0) > 1.0 + UNIT_TOL:
        raise ParameterOutOfRange("evaluation points must lie in the closed unit disk")
    return arr


def _unwrap(arr: np.ndarray, out: np.ndarray):
    return complex(out) if arr.ndim == 0 else out


def evaluate(f: HoloMap, z):
    """Value of ``f`` at a point (or array of points) of the closed disk."""
    arr = _points(z)
    return _unwrap(arr, f._eval(np.atleast_1d(arr)).reshape(arr.shape))


def derivative(f: HoloMap, z):
    """Exact derivative of ``f`` at a point (or array of points) of the closed disk."""
    arr = _points(z)
    return _unwrap(arr, f._deriv(np.atleast_1d(arr)).reshape(arr.shape))


def make_extremal(c, a: float) -> ExtremalFamily:
    return ExtremalFamily(c, a)


def normalize_fix_one(zeros) -> FiniteBlaschke:
    """Finite Blaschke product with the given zeros, rotated so that it fixes 1."""
    zeros = tuple(_disk_point(a, f"zeros[{k}]") for k, a in enumerate(zeros))
    p = 1.0 + 0j
    for a in zeros:
        p *= (1.0 - a) / (1.0 - a.conjugate())
    lam = p.conjugate()
    return FiniteBlaschke(lam / abs(lam), zeros)


def as_finite_blaschke(f: HoloMap) -> FiniteBlaschke | None:
    """Rewrite the trivially-Blaschke nodes as a FiniteBlaschke, else None."""
    if isinstance(f, FiniteBlaschke):
        return f
    if isinstance(f, Identity):
        return FiniteBlaschke(1.0, (0j,))
    if isinstance(f, Rotation):
        return FiniteBlaschke(f.lam, (0j,))
    if isinstance(f, BlaschkeFactor):
        return FiniteBlaschke(-1.0, (f.a,))
    return None


def reduce_to_origin(f: HoloMap) -> HoloMap:
    """Möbius-normalize f so that the result fixes 0 and still fixes 1.

    g = ((f - c)/(1 - conj(c) f)) (1 - conj(c))/(1 - c), c = f(0).
    """
    if f.degree == 0:
        raise DegenerateConstant("constant maps have no boundary fixed point")
    c = evaluate(f, 0.0)
    if c == 0:
        return f
    return MobiusConjugate(c, (1.0 - c) / (1.0 - c.conjugate()), f, inverse=True)


def quotient_map(g: HoloMap, tol: float = 1e-10) -> HoloMap:
    """h(z) = g(z)/z for an origin-fixing g, with h(0) = g'(0)."""
    g0 = evaluate(g, 0.0)
    if abs(g0) > tol:
        raise NotOriginFixing(f"|g(0)| = {abs(g0)!r} exceeds {tol!r}")
    if isinstance(g, Identity):
        return FiniteBlaschke(1.0)
    if isinstance(g, Rotation):
        return FiniteBlaschke(g.lam)
    if isinstance(g, FiniteBlaschke) and 0j in g.zeros:
        zeros = list(g.zeros)
        zeros.remove(0j)
        return FiniteBlaschke(g.lam, tuple(zeros))
    return DivideByZ(g)


def unit(theta: float) -> complex:
    """The boundary point with argument theta."""
    return cmath.exp(1j * theta)


def is_automorphism(f: HoloMap) -> bool:
    return f.degree == 1
