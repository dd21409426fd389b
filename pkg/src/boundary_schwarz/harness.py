"""Map specifications, random instance generation and fuzz campaigns."""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .boundary import julia_inequality_check, sample_disk
from .bounds import AMBIGUITY_BAND, bounds_report, extremal_boundary_derivative, family_distance
from .errors import ParameterOutOfRange, ParseError, SchwarzError, ValidationError
from .holo_maps import (
    BlaschkeFactor,
    Compose,
    ExtremalFamily,
    FiniteBlaschke,
    HoloMap,
    Identity,
    MobiusConjugate,
    Product,
    Rotation,
    UNIT_TOL,
    derivative,
    evaluate,
    make_extremal,
    normalize_fix_one,
    quotient_map,
    reduce_to_origin,
)
from .lowner import lowner_check

KINDS = ("identity", "rotation", "factor", "blaschke", "extremal", "mobius", "compose", "product")
_CHILDREN = {"mobius": ("inner",), "compose": ("outer", "inner"), "product": ("left", "right")}

REDUCTION_TOL = 1e-8
SHARPNESS_TOL = 1e-8


# ---------------------------------------------------------------- map specs


@dataclass(frozen=True)
class MapSpec:
    """Serializable description of a HoloMap.

    ``lam`` is optional for blaschke specs; when absent the product is
    rotated so that it fixes 1.
    """

    kind: str
    zeros: tuple[complex, ...] | None = None
    lam: complex | None = None
    c: complex | None = None
    a: complex | float | None = None
    u: complex | None = None
    inverse: bool = False
    children: tuple[MapSpec, ...] = ()

    def realize(self) -> HoloMap:
        kind = self.kind
        if kind == "identity":
            return Identity()
        if kind == "rotation":
            return Rotation(self.lam)
        if kind == "factor":
            return BlaschkeFactor(self.a)
        if kind == "blaschke":
            if self.lam is None:
                return normalize_fix_one(self.zeros)
            return FiniteBlaschke(self.lam, self.zeros)
        if kind == "extremal":
            return make_extremal(self.c, self.a)
        kids = [child.realize() for child in self.children]
        if kind == "mobius":
            return MobiusConjugate(self.c, self.u, kids[0], inverse=self.inverse)
        if kind == "compose":
            return Compose(*kids)
        if kind == "product":
            return Product(*kids)
        raise ValidationError("kind", f"unknown kind {kind!r}")

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.kind == "rotation":
            out["lambda"] = _encode_complex(self.lam)
        elif self.kind == "factor":
            out["a"] = _encode_complex(self.a)
        elif self.kind == "blaschke":
            out["zeros"] = [_encode_complex(z) for z in self.zeros]
            if self.lam is not None:
                out["lambda"] = _encode_complex(self.lam)
        elif self.kind == "extremal":
            out["c"] = _encode_complex(self.c)
            out["a"] = float(self.a)
        elif self.kind == "mobius":
            out["c"] = _encode_complex(self.c)
            out["u"] = _encode_complex(self.u)
            out["inverse"] = self.inverse
        for name, child in zip(_CHILDREN.get(self.kind, ()), self.children):
            out[name] = child.to_json()
        return out


def _encode_complex(z) -> dict:
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def encode_map_spec(spec: MapSpec, indent: int | None = None) -> str:
    return json.dumps(spec.to_json(), indent=indent)


def _number(obj, path: str) -> float:
    if isinstance(obj, bool) or not isinstance(obj, (int, float)):
        raise ValidationError(path, f"expected a number, got {obj!r}")
    if not math.isfinite(obj):
        raise ValidationError(path, "must be finite")
    return float(obj)


def _complex_field(obj, path: str) -> complex:
    if not isinstance(obj, dict) or set(obj) != {"re", "im"}:
        raise ValidationError(path, 'expected an object {"re": ..., "im": ...}')
    return complex(_number(obj["re"], path + ".re"), _number(obj["im"], path + ".im"))


def _disk_field(obj, path: str) -> complex:
    z = _complex_field(obj, path)
    if abs(z) >= 1.0:
        raise ValidationError(path, f"modulus {abs(z)!r} is not < 1")
    return z


def _unit_field(obj, path: str) -> complex:
    z = _complex_field(obj, path)
    if abs(abs(z) - 1.0) > UNIT_TOL:
        raise ValidationError(path, f"modulus {abs(z)!r} is not 1")
    return z


def _require(obj: dict, key: str, path: str):
    if key not in obj:
        raise ValidationError(f"{path}{key}", "missing field")
    return obj[key]


def spec_from_json(obj, path: str = "") -> MapSpec:
    """Validate a decoded JSON object and build the MapSpec it describes."""
    if not isinstance(obj, dict):
        raise ValidationError(path or "<root>", "expected an object")
    kind = _require(obj, "kind", path)
    if kind not in KINDS:
        raise ValidationError(f"{path}kind", f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    if kind == "identity":
        return MapSpec(kind)
    if kind == "rotation":
        return MapSpec(kind, lam=_unit_field(_require(obj, "lambda", path), f"{path}lambda"))
    if kind == "factor":
        return MapSpec(kind, a=_disk_field(_require(obj, "a", path), f"{path}a"))
    if kind == "blaschke":
        zeros = _require(obj, "zeros", path)
        if not isinstance(zeros, list):
            raise ValidationError(f"{path}zeros", "expected a list")
        zs = tuple(_disk_field(z, f"{path}zeros[{k}]") for k, z in enumerate(zeros))
        lam = _unit_field(obj["lambda"], f"{path}lambda") if "lambda" in obj else None
        return MapSpec(kind, zeros=zs, lam=lam)
    if kind == "extremal":
        c = _disk_field(_require(obj, "c", path), f"{path}c")
        a = _number(_require(obj, "a", path), f"{path}a")
        if not -1.0 <= a < 1.0:
            raise ValidationError(f"{path}a", f"{a!r} is not in [-1, 1)")
        return MapSpec(kind, c=c, a=a)
    children = tuple(spec_from_json(_require(obj, name, path), f"{path}{name}.")
                     for name in _CHILDREN[kind])
    if kind == "mobius":
        c = _disk_field(_require(obj, "c", path), f"{path}c")
        u = _unit_field(_require(obj, "u", path), f"{path}u")
        inverse = obj.get("inverse", False)
        if not isinstance(inverse, bool):
            raise ValidationError(f"{path}inverse", "expected a boolean")
        return MapSpec(kind, c=c, u=u, inverse=inverse, children=children)
    return MapSpec(kind, children=children)


def parse_map_spec(text: bytes | str) -> MapSpec:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError("map spec is not valid UTF-8", exc.start) from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from exc
    return spec_from_json(obj)


def map_to_spec(f: HoloMap) -> MapSpec:
    """Inverse of MapSpec.realize for every node of the public grammar."""
    if isinstance(f, Identity):
        return MapSpec("identity")
    if isinstance(f, Rotation):
        return MapSpec("rotation", lam=f.lam)
    if isinstance(f, BlaschkeFactor):
        return MapSpec("factor", a=f.a)
    if isinstance(f, FiniteBlaschke):
        return MapSpec("blaschke", zeros=f.zeros, lam=f.lam)
    if isinstance(f, ExtremalFamily):
        return MapSpec("extremal", c=f.c, a=f.a)
    if isinstance(f, MobiusConjugate):
        return MapSpec("mobius", c=f.c, u=f.u, inverse=f.inverse, children=(map_to_spec(f.inner),))
    if isinstance(f, Compose):
        return MapSpec("compose", children=(map_to_spec(f.outer), map_to_spec(f.inner)))
    if isinstance(f, Product):
        return MapSpec("product", children=(map_to_spec(f.left), map_to_spec(f.right)))
    raise ValidationError("kind", f"{type(f).__name__} has no serialized form")


# ----------------------------------------------------------- generators


def _check_generator_args(degree: int, max_zero_modulus: float):
    if not 1 <= degree <= 8:
        raise ParameterOutOfRange(f"degree must be in [1, 8], got {degree}")
    if not 0.0 < max_zero_modulus <= 0.95:
        raise ParameterOutOfRange(f"max_zero_modulus must be in (0, 0.95], got {max_zero_modulus}")


def _rng(seed: int, *extra: int) -> np.random.Generator:
    return np.random.default_rng([seed % 2**64, *extra])


def _blaschke_from_rng(rng, degree: int, cap: float, origin_zero: bool) -> FiniteBlaschke:
    zeros = sample_disk(degree, cap, rng)
    if origin_zero:
        zeros[0] = 0.0
    return normalize_fix_one(zeros.tolist())


def random_blaschke(degree: int, max_zero_modulus: float, seed: int,
                    origin_zero: bool = False) -> FiniteBlaschke:
    """Normalized finite Blaschke product with zeros uniform by area in |z| <= cap."""
    _check_generator_args(degree, max_zero_modulus)
    return _blaschke_from_rng(_rng(seed), degree, max_zero_modulus, origin_zero)


def random_extremal(seed: int, c_radius: float = 0.8) -> ExtremalFamily:
    rng = _rng(seed)
    return make_extremal(complex(sample_disk(1, c_radius, rng)[0]), float(rng.uniform(-1.0, 1.0)))


# ------------------------------------------------------------ campaigns


@dataclass(frozen=True)
class FuzzConfig:
    count: int = 1000
    max_degree: int = 6
    max_zero_modulus: float = 0.9
    seed: int = 0
    tolerance: float = 1e-9
    extremal_every: int = 10
    origin_every: int = 3
    julia_samples: int = 1000

    def __post_init__(self):
        if self.count < 0:
            raise ParameterOutOfRange("count must be non-negative")
        _check_generator_args(self.max_degree, self.max_zero_modulus)
        if not self.tolerance > 0:
            raise ParameterOutOfRange("tolerance must be positive")


@dataclass
class CampaignSummary:
    maps_tested: int = 0
    violations: list[dict] = field(default_factory=list)
    max_equality_gap_for_extremals: float = 0.0
    runtime_ms: int = 0

    def to_json(self) -> dict:
        return {
            "maps_tested": self.maps_tested,
            "violations": self.violations,
            "max_equality_gap_for_extremals": self.max_equality_gap_for_extremals,
            "runtime_ms": self.runtime_ms,
        }


def _instance(config: FuzzConfig, index: int) -> tuple[HoloMap, bool, np.random.Generator]:
    rng = _rng(config.seed, index)
    if config.extremal_every and index % config.extremal_every == config.extremal_every - 1:
        c = complex(sample_disk(1, 0.8, rng)[0])
        return make_extremal(c, float(rng.uniform(-1.0, 1.0))), True, rng
    degree = int(rng.integers(1, config.max_degree + 1))
    origin = bool(config.origin_every) and index % config.origin_every == 0
    return _blaschke_from_rng(rng, degree, config.max_zero_modulus, origin), False, rng


def _relative(x: float, scale: float) -> float:
    return x / max(1.0, abs(scale))


def check_map(f: HoloMap, config: FuzzConfig, rng: np.random.Generator,
              extremal: bool = False) -> tuple[dict[str, float], float | None]:
    """Run every certification check on one map fixing 1.

    Returns the violated checks with their magnitudes, and the relative
    equality gap when ``f`` is a planted extremal map.
    """
    tol = config.tolerance
    bad: dict[str, float] = {}

    def flag(name: str, magnitude: float, limit: float):
        if not magnitude <= limit:
            bad[name] = float(magnitude)

    rep = bounds_report(f)
    c, d0, actual = rep.c, rep.d0, rep.actual
    flag("schwarz_pick", abs(d0) - (1.0 - abs(c) ** 2), tol)
    flag("frolova", _relative(rep.bound_frolova - actual, actual), tol)
    flag("chain_frolova_strong", _relative(rep.bound_strong - rep.bound_frolova, rep.bound_frolova), tol)
    flag("chain_strong_osserman", _relative(rep.bound_osserman - rep.bound_strong, rep.bound_strong), tol)
    if rep.bound_uho is not None:
        flag("uho_consistency", abs(rep.bound_uho - rep.bound_strong), tol)
    if rep.equality_frolova != (rep.extremal_params is not None) and family_distance(f) > AMBIGUITY_BAND:
        bad["equality_iff_extremal"] = abs(rep.gap_frolova)

    julia = julia_inequality_check(f, 1.0, 1.0, actual, config.julia_samples,
                                   int(rng.integers(2**63)))
    flag("julia", julia.max_relative_violation, tol)

    g = reduce_to_origin(f)
    h = quotient_map(g)
    g1, g0d = derivative(g, 1.0), derivative(g, 0.0)
    flag("reduction_g_origin", abs(evaluate(g, 0.0)), 1e-12)
    flag("reduction_eq9",
         _relative(abs(derivative(f, 1.0) - abs(1 - c) ** 2 / (1 - abs(c) ** 2) * g1), actual),
         REDUCTION_TOL)
    flag("reduction_eq10",
         abs(g0d - d0 / (1 - abs(c) ** 2) * (1 - c.conjugate()) / (1 - c)), REDUCTION_TOL)
    flag("quotient_eq11", _relative(abs(g1 - 1.0 - derivative(h, 1.0)), g1.real), REDUCTION_TOL)

    gap = None
    if extremal:
        gap = abs(_relative(rep.gap_frolova, actual))
        flag("extremal_sharpness", gap, SHARPNESS_TOL)
        closed = extremal_boundary_derivative(f.c, f.a)
        flag("extremal_closed_form", _relative(abs(actual - closed), closed), SHARPNESS_TOL)
        flag("extremal_detected", 0.0 if rep.extremal_params is not None else 1.0, 0.0)
    elif isinstance(f, FiniteBlaschke) and 0j in f.zeros:
        theta1 = float(rng.uniform(0.0, 2.0 * math.pi))
        length = float(rng.uniform(0.0, 2.0 * math.pi)) or 1.0
        arc = lowner_check(f, theta1, theta1 + length)
        flag("lowner_quantitative", _relative(arc.bound_quantitative - arc.sigma, arc.sigma), tol)
        flag("lowner_length", _relative(arc.s - arc.sigma, arc.sigma), tol)
        if arc.is_rotation:
            flag("lowner_rotation_equality", abs(arc.sigma - arc.s), 1e-10)
    return bad, gap


def fuzz_campaign(config: FuzzConfig) -> CampaignSummary:
    start = time.perf_counter()
    summary = CampaignSummary()
    for index in range(config.count):
        f, extremal, rng = _instance(config, index)
        try:
            bad, gap = check_map(f, config, rng, extremal)
        except SchwarzError as exc:
            bad, gap = {f"error:{type(exc).__name__}": None}, None
        summary.maps_tested += 1
        if gap is not None:
            summary.max_equality_gap_for_extremals = max(summary.max_equality_gap_for_extremals, gap)
        spec = map_to_spec(f).to_json()
        for name, magnitude in sorted(bad.items()):
            summary.violations.append({"map_spec": spec, "check_name": name, "magnitude": magnitude})
    summary.runtime_ms = int(round(1000 * (time.perf_counter() - start)))
    return summary
