import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from branchcuts import EngineConfig, branch_cuts, parse, union_cuts
from branchcuts.cuts import (
    CONFIRMED,
    SPURIOUS,
    CutSet,
    PolylineCut,
    Provenance,
    anchor_point,
    hausdorff,
    same_point_set,
    sample_cut,
    trace,
)
from branchcuts.engine import node_cuts
from branchcuts.errors import EmptyInWindow

JSON_KEYS = {"kind", "fixed", "equation", "interval", "param_map", "param_range", "points", "provenance", "status"}


def _one(text, **kw):
    (c,) = branch_cuts(parse(text), EngineConfig(**kw))
    return c


def test_sample_cut_spreads_points_with_unit_normals():
    c = _one("ln(z)")
    pts = sample_cut(c, 9)
    assert len(pts) == 9
    xs = [p.real for p, _ in pts]
    assert all(abs(p.imag) < 1e-12 for p, _ in pts)
    assert xs == sorted(xs) and -2 <= min(xs) and max(xs) <= 0
    assert np.allclose(np.diff(xs), np.diff(xs)[0], atol=1e-6)
    for p, n in pts:
        assert abs(abs(n) - 1) < 1e-12 and abs(n.real) < 1e-9


def test_sample_cut_offset_shifts_points():
    c = _one("ln(z)")
    a = [p for p, _ in sample_cut(c, 5)]
    b = [p for p, _ in sample_cut(c, 5, offset=0.5)]
    assert all(abs(x - y) > 1e-3 for x, y in zip(a, b))


def test_sample_cut_outside_window():
    c = _one("ln(z - 10)")
    with pytest.raises(EmptyInWindow):
        sample_cut(c, 5, window=(20, 30, -1, 1))
    with pytest.raises(ValueError):
        sample_cut(c, 1)


def test_trace_respects_requested_spacing():
    for c in branch_cuts(parse("arcsin(z^2 - 2)")):
        for _, z in trace(c, (-3, 3, -3, 3), h=0.01):
            assert np.abs(np.diff(z)).max() <= 0.0101


def test_same_point_set_across_representations():
    semi = _one("ln(z)")
    poly = PolylineCut(points=tuple(complex(x) for x in np.linspace(-9, 0, 2001)))
    (para,) = node_cuts(parse("ln(-sqrt(-z))"), (), EngineConfig(approach="parametric"))
    assert same_point_set(semi, semi)
    assert same_point_set(semi, para)
    assert not same_point_set(semi, _one("ln(z - 1)"))
    assert same_point_set(semi, poly, tol=1e-6)


def test_hausdorff_of_polyline_pieces():
    a = np.array([0, 1, 2], dtype=complex)
    pieces = [(None, np.array([0.5j, 2 + 0.5j]))]
    assert hausdorff(a, pieces) == pytest.approx(0.5)
    assert hausdorff(np.zeros(0, dtype=complex), pieces) == 0.0
    assert hausdorff(a, []) == np.inf


def test_anchor_point_is_midway():
    c = _one("ln(z)")
    assert anchor_point(c, (-4, 4, -4, 4)) == pytest.approx(-2, abs=0.06)
    assert anchor_point(_one("ln(20 - z)"), (-4, 4, -4, 4)) is None


def test_describe_and_json_schema():
    cuts = branch_cuts(parse("ln(-sqrt(z))"))
    d = json.loads(cuts.to_json())
    assert d["expression"] == "ln(-sqrt(z))"
    assert len(d["cuts"]) == 2
    for c in d["cuts"]:
        assert JSON_KEYS <= set(c)
        assert c["status"] == CONFIRMED
    kinds = sorted(c["kind"] for c in d["cuts"])
    assert kinds == ["parametric", "semialgebraic"]
    para = next(c for c in d["cuts"] if c["kind"] == "parametric")
    assert para["param_map"] == "a^2" and para["param_range"] == ["-inf", "0"]
    assert cuts.to_text().splitlines() == ["ln(-sqrt(z))", cuts.describe()]


def test_status_is_shown_in_description():
    c = _one("ln(z)").with_status(SPURIOUS)
    assert CutSet(parse("z"), (c,)).describe() == "z in (-inf,0) [spurious]"


_SOURCES = ["ln(z)", "sqrt(z - 1)", "ln(z^2 + 1)", "arcsin(z)", "arctan(z)", "sqrt(1 - z)"]


def _set(texts):
    out = CutSet(parse("z"), ())
    for i, t in enumerate(texts):
        cs = branch_cuts(parse(t))
        tagged = tuple(c.__class__(**{**c.__dict__, "provenance": (Provenance((i,), t, t, "semialg"),)}) for c in cs)
        out = union_cuts(out, CutSet(out.source, tagged))
    return out


def _shape(cs):
    return sorted(c.describe() for c in cs)


@settings(max_examples=20, deadline=None)
@given(st.lists(st.sampled_from(_SOURCES), min_size=1, max_size=3), st.lists(st.sampled_from(_SOURCES), max_size=3))
def test_union_is_commutative_and_idempotent(xs, ys):
    a, b = _set(xs), _set(ys)
    ab = union_cuts(a, b)
    ba = union_cuts(b, a)
    assert _shape(ab) == _shape(ba)
    assert _shape(union_cuts(ab, ab)) == _shape(ab)
    assert _shape(union_cuts(a, a)) == _shape(a)
    assert len(ab) <= len(a) + len(b)


def test_union_keeps_strongest_status():
    c = _one("ln(z)")
    weak = CutSet(parse("z"), (c.with_status(SPURIOUS),))
    strong = CutSet(parse("z"), (c,))
    (m,) = union_cuts(weak, strong)
    assert m.status == CONFIRMED
