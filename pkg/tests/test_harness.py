import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from boundary_schwarz.errors import ParameterOutOfRange, ParseError, ValidationError
from boundary_schwarz.harness import (
    FuzzConfig,
    MapSpec,
    encode_map_spec,
    fuzz_campaign,
    map_to_spec,
    parse_map_spec,
    random_blaschke,
)
from boundary_schwarz.holo_maps import ExtremalFamily, FiniteBlaschke, Identity, evaluate

from .strategies import holo_maps


def test_parse_examples():
    spec = parse_map_spec(b'{"kind":"blaschke","zeros":[{"re":0,"im":0},{"re":0.5,"im":0}]}')
    assert spec.kind == "blaschke" and len(spec.zeros) == 2
    assert spec.realize().degree == 2

    spec = parse_map_spec('{"kind":"extremal","c":{"re":0.5,"im":0},"a":0}')
    assert spec.realize() == ExtremalFamily(0.5, 0.0)

    with pytest.raises(ValidationError) as err:
        parse_map_spec('{"kind":"blaschke","zeros":[{"re":1.2,"im":0}]}')
    assert err.value.field == "zeros[0]"


@pytest.mark.parametrize("text,field", [
    ('{"zeros": []}', "kind"),
    ('{"kind": "spiral"}', "kind"),
    ('{"kind": "rotation", "lambda": {"re": 0.5, "im": 0}}', "lambda"),
    ('{"kind": "extremal", "c": {"re": 0, "im": 0}, "a": 1.0}', "a"),
    ('{"kind": "extremal", "c": {"re": 0, "im": 0}, "a": "x"}', "a"),
    ('{"kind": "compose", "outer": {"kind": "identity"}, "inner": {"kind": "factor", "a": {"re": 2, "im": 0}}}',
     "inner.a"),
    ('{"kind": "blaschke", "zeros": [{"re": 0}]}', "zeros[0]"),
    ('[]', "<root>"),
])
def test_validation_errors_name_the_field(text, field):
    with pytest.raises(ValidationError) as err:
        parse_map_spec(text)
    assert err.value.field == field


def test_parse_errors_report_position():
    with pytest.raises(ParseError) as err:
        parse_map_spec('{"kind": "identity",,}')
    assert "line 1" in str(err.value)
    with pytest.raises(ParseError):
        parse_map_spec(b"\xff\xfe")


def test_blaschke_without_lambda_is_normalized():
    f = parse_map_spec('{"kind":"blaschke","zeros":[{"re":0,"im":0},{"re":0,"im":0.5}]}').realize()
    assert abs(f.lam - (0.6 + 0.8j)) < 1e-15


@given(holo_maps())
def test_spec_round_trip(f):
    spec = map_to_spec(f)
    again = parse_map_spec(encode_map_spec(spec))
    assert again == spec
    assert again.realize() == f


def test_random_blaschke_examples():
    f = random_blaschke(2, 0.9, 7)
    assert f.degree == 2 and abs(evaluate(f, 1) - 1) <= 1e-12
    assert max(abs(a) for a in f.zeros) <= 0.9

    g = random_blaschke(1, 0.0001, 1)
    z = 0.9 * np.exp(2j * np.pi * np.linspace(0, 1, 400)) * np.sqrt(np.linspace(0, 1, 400))
    assert np.max(np.abs(evaluate(g, z) - z)) < 1e-3

    assert random_blaschke(5, 0.8, 123) == random_blaschke(5, 0.8, 123)
    assert random_blaschke(5, 0.8, 123) != random_blaschke(5, 0.8, 124)
    assert 0j in random_blaschke(3, 0.8, 5, origin_zero=True).zeros


@pytest.mark.parametrize("degree,cap", [(0, 0.5), (9, 0.5), (2, 0.0), (2, 0.96)])
def test_random_blaschke_rejects(degree, cap):
    with pytest.raises(ParameterOutOfRange):
        random_blaschke(degree, cap, 0)


@given(st.integers(1, 8), st.floats(0.01, 0.95), st.integers(-2**63, 2**63 - 1))
def test_random_blaschke_is_valid(degree, cap, seed):
    f = random_blaschke(degree, cap, seed)
    assert f.degree == degree and abs(evaluate(f, 1) - 1) <= 1e-12


def test_empty_campaign():
    summary = fuzz_campaign(FuzzConfig(count=0))
    assert summary.maps_tested == 0 and summary.violations == []


def test_campaign_with_extremals():
    summary = fuzz_campaign(FuzzConfig(count=100, seed=3))
    assert summary.maps_tested == 100
    assert summary.violations == []
    assert summary.max_equality_gap_for_extremals <= 1e-8


def test_campaign_is_deterministic():
    a = fuzz_campaign(FuzzConfig(count=40, max_degree=4, seed=11)).to_json()
    b = fuzz_campaign(FuzzConfig(count=40, max_degree=4, seed=11)).to_json()
    a.pop("runtime_ms"), b.pop("runtime_ms")
    assert a == b


def test_campaign_reports_violations(monkeypatch):
    # a deliberately broken bound must surface as data, not as an exception
    import boundary_schwarz.bounds as bounds

    monkeypatch.setattr(bounds, "bound_frolova", lambda c, d0: 1e6)
    summary = fuzz_campaign(FuzzConfig(count=5, seed=1))
    names = {v["check_name"] for v in summary.violations}
    assert "frolova" in names
    json.dumps(summary.to_json())


def test_config_validation():
    with pytest.raises(ParameterOutOfRange):
        FuzzConfig(max_degree=9)
    with pytest.raises(ParameterOutOfRange):
        FuzzConfig(count=-1)


def test_spec_kinds_round_trip_json():
    spec = MapSpec("product", children=(MapSpec("identity"), map_to_spec(FiniteBlaschke(1j, (0.2,)))))
    obj = json.loads(encode_map_spec(spec))
    assert obj["left"] == {"kind": "identity"}
    assert parse_map_spec(json.dumps(obj)).realize().degree == 2
    assert map_to_spec(Identity()).to_json() == {"kind": "identity"}
