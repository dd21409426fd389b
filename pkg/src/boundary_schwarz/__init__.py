"""Numerical certification of boundary Schwarz lemma bounds for self-maps of the unit disk."""

from .boundary import (
    AngularDerivativeResult,
    Classification,
    FixedPointInfo,
    RadialSchedule,
    angular_derivative_closed_form,
    angular_derivative_radial,
    classify_fixed_point,
    find_boundary_fixed_points,
    jc_quotient_limit,
    julia_inequality_check,
)
from .bounds import (
    BoundsReport,
    bound_frolova,
    bound_osserman,
    bound_strong_osserman,
    bound_unkelbach_herzig,
    bounds_report,
    is_extremal_for_frolova,
    verify_equality_conditions,
)
from .harness import (
    CampaignSummary,
    FuzzConfig,
    MapSpec,
    fuzz_campaign,
    parse_map_spec,
    random_blaschke,
)
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
    derivative,
    evaluate,
    make_extremal,
    normalize_fix_one,
    quotient_map,
    reduce_to_origin,
)
from .lowner import ArcReport, arc_image_length, lowner_check

__version__ = "0.1.0"
