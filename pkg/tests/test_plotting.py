import xml.etree.ElementTree as ET

import numpy as np
import pytest

from branchcuts import branch_cuts, classify, parse
from branchcuts.plotting import Window, edge_overlay, plot2d, plot3d, plot32d, read_ppm

NS = "{http://www.w3.org/2000/svg}"


def _svg(text, window=None):
    e = parse(text)
    cuts, _ = classify(e, branch_cuts(e))
    return ET.fromstring(plot2d(cuts, window or Window()))


def test_svg_draws_each_cut_with_status_styles():
    root = _svg("ln(z^2) + sqrt(z)*sqrt(z)")
    paths = root.findall(f"{NS}path")
    assert len(paths) >= 3
    dashes = {p.get("stroke-dasharray") for p in paths}
    # confirmed cuts are solid, the spurious negative axis is dotted
    assert None in dashes and "1,4" in dashes
    texts = [t.text for t in root.findall(f"{NS}text")]
    assert "ln(z^2) + sqrt(z)*sqrt(z)" in texts
    assert "spurious" in texts and "confirmed" in texts


def test_svg_marks_branch_points():
    circles = _svg("sqrt(1 - z^2)").findall(f"{NS}circle")
    centres = sorted((float(c.get("cx")), float(c.get("cy"))) for c in circles)
    # +-1 in the default 600 px window with a 40 px margin
    assert centres == [(190.0, 340.0), (490.0, 340.0)]


def test_svg_empty_notes():
    assert "no branch cuts" in [t.text for t in _svg("exp(z)").findall(f"{NS}text")]
    texts = [t.text for t in _svg("ln(10 - z)").findall(f"{NS}text")]
    assert "no branch cuts in window" in texts


def test_csv_mesh():
    w = Window(-1, 1, -1, 1, 5, 3)
    csv = plot3d(parse("ln(z)"), w).to_csv().splitlines()
    assert csv[0] == "x,y,re,im,mask"
    assert len(csv) == 1 + 15
    rows = [r.split(",") for r in csv[1:]]
    assert [float(r[0]) for r in rows[:5]] == [-1, -0.5, 0, 0.5, 1]
    # the origin is masked
    origin = next(r for r in rows if float(r[0]) == 0 and float(r[1]) == 0)
    assert origin[2:] == ["nan", "nan", "1"]
    r = next(r for r in rows if float(r[0]) == -1 and float(r[1]) == 0)
    assert float(r[3]) == pytest.approx(np.pi)


def test_surface_parts():
    s = plot3d(parse("z"), Window(-1, 1, -2, 2, 3, 5))
    assert s.values.shape == (5, 3)
    assert np.allclose(s.part("re")[0], [-1, 0, 1])
    assert np.allclose(s.part("im")[:, 0], [-2, -1, 0, 1, 2])
    with pytest.raises(ValueError):
        s.part("abs")


def test_ppm_header_and_red_edges():
    w = Window(-2, 2, -2, 2, 41, 31)
    data = plot32d(parse("ln(z)"), w)
    assert data.startswith(b"P6\n41 31\n255\n")
    img = read_ppm(data)
    assert img.shape == (31, 41, 3)
    red = np.all(img == (255, 0, 0), axis=-1)
    rows, cols = np.nonzero(red)
    xs = np.linspace(-2, 2, 41)[cols]
    ys = np.linspace(2, -2, 31)[rows]
    # the only discontinuity is the negative real axis
    assert red.any() and np.all(xs <= 0) and np.all(np.abs(ys) < 0.2)


def test_edge_overlay_is_empty_for_continuous_functions():
    s = plot3d(parse("z^2 + exp(z)"), Window(nx=60, ny=60))
    assert not edge_overlay(s).any()


def test_window_validation():
    with pytest.raises(ValueError):
        Window(1, 0, 0, 1)
    with pytest.raises(ValueError):
        Window(nx=1)


def test_outputs_are_deterministic():
    e = parse("2*arcsin(z) - arcsin(2*z*sqrt(1-z^2))")
    w = Window(nx=50, ny=50)
    assert plot32d(e, w) == plot32d(e, w)
    assert plot3d(e, w).to_csv() == plot3d(e, w).to_csv()
    cuts, _ = classify(e, branch_cuts(e))
    assert plot2d(cuts) == plot2d(cuts)
