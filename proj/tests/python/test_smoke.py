import json
import math

import pytest

import minkgeo

SQUARE = json.dumps(
    {
        "type": "hpolytope",
        "normals": [[1, 0], [-1, 0], [0, 1], [0, -1]],
        "offsets": [1, 1, 1, 1],
    }
)
DISC = json.dumps({"type": "ellipsoid", "shape": [[1, 0], [0, 1]]})
TRIANGLE = json.dumps({"type": "vpolytope", "vertices": [[1, 0], [0, 1], [-1, -1]]})
STRIP = json.dumps({"type": "hpolytope", "normals": [[1, 0], [-1, 0], [0, 1]], "offsets": [1, 1, 1]})


def test_parse_gauge_roundtrip():
    sq = minkgeo.Body.parse(SQUARE)
    assert sq.dim == 2
    assert sq.gauge([0.5, -0.25]) == pytest.approx(0.5, abs=1e-12)
    tri = minkgeo.Body.parse(TRIANGLE)
    assert tri.gauge([-1, 0]) == pytest.approx(2.0, abs=1e-9)
    again = minkgeo.Body.parse(sq.to_json())
    assert again.gauge([0.5, -0.25]) == pytest.approx(0.5, abs=1e-12)


def test_parse_rejects_unknown_kind():
    with pytest.raises(minkgeo.GeometryError):
        minkgeo.Body.parse('{"type": "frisbee"}')


def test_distances():
    disc = minkgeo.Body.parse(DISC)
    assert minkgeo.dist(disc, [0, 0], [3, 1]) == pytest.approx(math.sqrt(10), rel=1e-12)
    assert minkgeo.funk(disc, [0, 0], [0.5, 0]) == pytest.approx(math.log(2), abs=1e-12)
    assert minkgeo.hilbert(disc, [0, 0], [0.5, 0]) == pytest.approx(0.5 * math.log(3), abs=1e-12)
    assert minkgeo.simplex_hilbert([1 / 3, 1 / 3, 1 / 3], [0.5, 0.25, 0.25]) == pytest.approx(
        math.log(2), abs=1e-12
    )
    spread = minkgeo.variation_norm_value(3, [1.0, -1.0])
    assert spread == pytest.approx(2.0, abs=1e-12)


def test_classify():
    cls = minkgeo.classify(minkgeo.Body.parse(SQUARE), seed=7, samples=400)["classification"]
    assert cls["finite"] and cls["separating"] and cls["reversible"]
    assert cls["quasi_constant"] == pytest.approx(1.0, abs=1e-9)


def test_check_suite():
    passed, report = minkgeo.check(
        minkgeo.Body.parse(SQUARE), metric="norm", suite="minkowski", seed=3, samples=300
    )
    assert passed
    assert report["results"]["decide"]["minkowski"] is True
    assert report["results"]["axioms"]["verdict"] == "pass"


def test_pathological_rejected():
    passed, report = minkgeo.check_pathological(
        "capped_norm", suite="minkowski", seed=5, samples=300
    )
    assert not passed
    assert report["results"]["midpoint"]["verdict"] == "fail"
    assert report["results"]["midpoint"]["witness"] is not None


def test_tensor_recovers_the_norm():
    t = minkgeo.tensor(minkgeo.Body.parse(DISC), [3.0, 4.0])
    assert t["norm_value"] == pytest.approx(5.0, abs=1e-9)
    assert t["recovered_norm"] == pytest.approx(5.0, abs=1e-6)
    assert t["tensor"]["matrix"][0][0] == pytest.approx(1.0, abs=1e-6)
    assert t["euler_residual"] < 1e-6


def test_mvee_square():
    fit = minkgeo.mvee([[1, 1], [1, -1], [-1, 1], [-1, -1]])["mvee"]
    assert fit["shape"][0][0] == pytest.approx(0.5, abs=1e-5)
    assert abs(fit["center"][0]) < 1e-7 and abs(fit["center"][1]) < 1e-7


def test_is_euclidean():
    accepted = minkgeo.is_euclidean(minkgeo.Body.parse(DISC), seed=2, samples=300)["euclidean_fit"]
    assert accepted["shape"][0][0] == pytest.approx(1.0, abs=1e-8)
    rejected = minkgeo.is_euclidean(minkgeo.Body.parse(SQUARE), seed=2, samples=300)[
        "euclidean_fit"
    ]
    assert "shape" not in rejected
    assert rejected["residual"] >= 0.05


def test_sandwich_and_recession():
    lo, hi = minkgeo.euclidean_sandwich(minkgeo.Body.parse(SQUARE), seed=1, samples=500)
    assert lo <= 1.0 / math.sqrt(2) + 1e-6
    assert hi == pytest.approx(1.0, abs=1e-9)
    strip = minkgeo.Body.parse(STRIP)
    ray = strip.recession_ray()
    assert ray is not None
    assert strip.gauge(ray) <= 1e-9
    assert minkgeo.Body.parse(SQUARE).recession_ray() is None


def test_render_svg_deterministic():
    sq = minkgeo.Body.parse(SQUARE)
    svg = minkgeo.render_svg(sq, directions=90)
    assert svg.startswith('<?xml version="1.0"')
    assert "</svg>" in svg
    assert svg == minkgeo.render_svg(sq, directions=90)
    with pytest.raises(minkgeo.GeometryError):
        minkgeo.render_svg(minkgeo.Body.parse(STRIP))
