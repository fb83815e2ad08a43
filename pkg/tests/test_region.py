import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tracezero.charpoly import coeffs_direct, roots
from tracezero.necessity import check_necessary
from tracezero.pairgraph import table1_representatives
from tracezero.perm import Permutation, power
from tracezero.plot import render_svg
from tracezero.region import (
    EventNotFound,
    RegionPoint,
    SamplerConfig,
    boundary_event,
    boundary_transition,
    compare_envelopes,
    grid,
    hull_pi0,
    outer_envelope,
    pair_curve,
    pair_matrix,
    points_from_csv,
    points_to_csv,
    points_to_json,
    sample_region,
)

P = lambda s: Permutation.parse(s, 5)
PI = P("(1 2 3 4 5)")
BETA = P("(1 2 4)(3 5)")


def test_hull_shapes():
    h2 = hull_pi0(2)
    assert h2.vertices == (1, -1) and h2.edges() == []
    h3 = hull_pi0(3)
    w = cmath.exp(2j * math.pi / 3)
    assert len(h3.vertices) == 3 and abs(h3.vertices[1] - w) < 1e-15
    assert h3.contains(-0.5) and h3.contains(1) and not h3.contains(0)
    h5 = hull_pi0(5)
    assert len(h5.extreme_points) == 4 and len(h5.edges()) == 4
    assert h5.contains(0) and h5.contains(-0.5) and not h5.contains(0.5) and not h5.contains(w)
    with pytest.raises(ValueError):
        hull_pi0(1)


def test_pair_curve_circulant():
    pts = pair_curve((PI, power(PI, 4)), [0.5])
    expect = [math.cos(2 * math.pi * j / 5) for j in range(5)]
    got = sorted(p.re for p in pts)
    assert np.allclose(got, sorted(expect), atol=1e-12)
    assert all(abs(p.im) < 1e-12 for p in pts)


def test_pair_curve_near_zero_tends_to_beta():
    pts = pair_curve((PI, BETA), [1e-7])
    w = cmath.exp(2j * math.pi / 3)
    zs = [p.z for p in pts]
    for target in (1, 1, -1, w, w.conjugate()):
        assert min(abs(z - target) for z in zs) < 1e-3


def test_pair_curve_validation():
    with pytest.raises(ValueError):
        pair_curve((PI, BETA), [0.0])
    with pytest.raises(ValueError):
        pair_curve((PI, P("(1 2 3)")), [0.5])


def test_boundary():
    ev = boundary_event()
    assert abs(ev.t - 0.282) <= 0.005
    assert ev.kind == "hull_edge_crossing"
    assert hull_pi0(5).contains(ev.point, tol=1e-5)
    assert boundary_transition() == ev.t


def test_endpoints_of_path():
    zs = roots(coeffs_direct(BETA.matrix()), assume_root_one=True)
    w = cmath.exp(2j * math.pi / 3)
    assert min(abs(z - w) for z in zs) < 1e-9 and min(abs(z - w.conjugate()) for z in zs) < 1e-9
    zs = roots(coeffs_direct(pair_matrix(PI, BETA, 1.0)), assume_root_one=True)
    fifth = [cmath.exp(2j * math.pi * j / 5) for j in range(5)]
    assert all(min(abs(z - r) for z in zs) < 1e-9 for r in fifth)


def test_boundary_reports_missing_event():
    # constant spectrum: nothing ever happens along the path
    with pytest.raises(EventNotFound):
        boundary_event(PI, PI, step=0.01)


def test_grid():
    g = grid(0.1)
    assert len(g) == 9 and g[0] == pytest.approx(0.1) and g[-1] < 1
    assert len(grid(0.001)) == 999
    assert (grid(0.03) < 1).all()


def test_config_roundtrip_and_validation(tmp_path):
    cfg = SamplerConfig(grid_step=0.025, random_samples=10, support_size=7, seed=2**40, output_path=str(tmp_path / "x.csv"), plot=True)
    again = SamplerConfig.from_text(cfg.to_text())
    assert again == cfg
    assert SamplerConfig.from_text("# comment\n seed = 5 # trailing\n\nplot = yes\n").seed == 5
    for bad in [dict(grid_step=0), dict(grid_step=0.2), dict(support_size=0), dict(support_size=45), dict(random_samples=-1)]:
        with pytest.raises(ValueError):
            SamplerConfig(**bad).validate()
    for text in ["nokey\n", "color = red\n", "plot = maybe\n", "seed = x\n"]:
        with pytest.raises(ValueError):
            SamplerConfig.from_text(text)


@settings(max_examples=40, deadline=None)
@given(
    st.floats(1e-4, 0.1), st.integers(0, 10**6), st.integers(1, 44), st.integers(-(2**63), 2**63 - 1),
    st.booleans(), st.booleans(),
)
def test_config_roundtrip_property(step, n, size, seed, plot, pairs):
    cfg = SamplerConfig(step, n, size, seed, "out/r.csv", plot, pairs)
    assert SamplerConfig.from_text(cfg.to_text()) == cfg


def test_output_dir_env(monkeypatch, tmp_path):
    monkeypatch.setenv("TRACEZERO_OUTPUT_DIR", str(tmp_path))
    assert SamplerConfig().output_path == str(tmp_path / "region.csv")


def test_degenerate_config_emits_hull_only():
    pts = sample_region(SamplerConfig(include_pairs=False, random_samples=0, output_path="-"))
    assert {p.source for p in pts} == {"hull:3", "hull:5"}
    assert len(pts) == 3 + 5


def test_pairs_only_fine_grid():
    pts = sample_region(SamplerConfig(grid_step=0.001, output_path="-"))
    sources = {p.source for p in pts if p.source.startswith("pair:")}
    assert len(sources) == 17
    assert len(pts) == 8 + 17 * 999 * 5


def test_sample_properties():
    cfg = SamplerConfig(grid_step=0.02, random_samples=1500, support_size=6, seed=99, output_path="-")
    pts = sample_region(cfg)
    assert pts == sorted(pts, key=lambda p: (p.source, p.parameter, p.re, p.im))
    assert max(abs(p.z) for p in pts) <= 1 + 1e-9
    for p in pts:
        if p.im == 0:
            assert -1 - 1e-9 <= p.re <= 1 + 1e-9
    # each random sample and each pair grid point contributes the eigenvalue 1
    groups = {}
    for p in pts:
        groups.setdefault((p.source, p.parameter), []).append(p.z)
    for (src, _), zs in groups.items():
        if not src.startswith("hull"):
            assert len(zs) == 5 and 1 in zs
    key = lambda z: (round(z.real, 9), round(z.imag, 9) + 0.0)
    assert sorted(key(p.z) for p in pts) == sorted(key(p.z.conjugate()) for p in pts)
    assert points_to_csv(pts) == points_to_csv(sample_region(cfg))


def test_cover_known_points():
    pts = sample_region(SamplerConfig(grid_step=0.01, output_path="-"))
    zs = np.array([p.z for p in pts if p.source.startswith("pair")])
    for v in hull_pi0(5).extreme_points + (1, -1):
        assert np.abs(zs - v).min() < 0.02


def test_pair_samples_pass_necessity():
    cs = grid(0.05)
    for pi, beta in table1_representatives():
        for c in cs:
            assert check_necessary(coeffs_direct(pair_matrix(pi, beta, c))).passes


def test_csv_json_roundtrip():
    pts = [RegionPoint(0.1234567890123456, -0.5, "pair:01", 0.25), RegionPoint(1.0, 0.0, "hull:5", 5.0)]
    text = points_to_csv(pts)
    assert text.splitlines()[0] == "re,im,source,parameter"
    assert text.splitlines()[1].startswith("0.123456789012,")
    back = points_from_csv(text)
    assert back[1] == pts[1] and abs(back[0].re - pts[0].re) < 1e-12
    assert '"source":"hull:5"' in points_to_json(pts)


def test_envelopes():
    ring = [RegionPoint(math.cos(a), math.sin(a), "pair:00", 0) for a in np.linspace(-3.1, 3.1, 400)]
    inner = [RegionPoint(0.5 * p.re, 0.5 * p.im, "random:0", 0) for p in ring]
    env = outer_envelope(ring, bins=36)
    assert np.allclose(env, 1)
    rep = compare_envelopes(ring, inner, bins=36)
    assert rep["bins_random_beyond_pairs"] == 0 and rep["max_excess"] < 0
    assert np.isnan(outer_envelope([], bins=4)).all()


def test_svg_deterministic():
    pts = sample_region(SamplerConfig(grid_step=0.05, random_samples=50, seed=1, output_path="-"))
    svg = render_svg(pts)
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    assert svg == render_svg(pts)
    assert "polygon" in svg and "polyline" in svg
