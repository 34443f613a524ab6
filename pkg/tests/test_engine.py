import numpy as np
import pytest

from branchcuts import Conventions, EngineConfig, branch_cuts, parse
from branchcuts.cuts import CONFIRMED, POSSIBLY_SPURIOUS, PolylineCut, SemiAlgebraicCut
from branchcuts.errors import NotPolynomial


def _cuts(text, **kw):
    return branch_cuts(parse(text), EngineConfig(**kw))


def test_no_cuts_for_entire_functions():
    assert len(_cuts("exp(z^2) + z")) == 0
    assert _cuts("exp(z)").describe() == "no branch cuts"


def test_constant_argument_has_no_cut():
    assert len(_cuts("ln(2) + z")) == 0
    assert len(_cuts("sqrt(-1)*z")) == 0


def test_integer_powers_are_single_valued():
    assert len(_cuts("z^3 + z^(-2)")) == 0
    assert len(_cuts("z^(1/2)")) == 1


def test_provenance_records_node_path_and_approach():
    cuts = _cuts("ln(z) + sqrt(z - 1)")
    provs = sorted((p.function, p.argument, p.approach) for c in cuts for p in c.provenance)
    assert provs == [("ln", "z", "semialg"), ("sqrt", "z - 1", "semialg")]
    paths = {p.path for c in cuts for p in c.provenance}
    assert len(paths) == 2


def test_union_merges_identical_cuts_from_different_nodes():
    cuts = _cuts("ln(z) + sqrt(z)")
    assert len(cuts) == 1
    (c,) = cuts
    assert sorted(p.function for p in c.provenance) == ["ln", "sqrt"]
    assert c.describe() == "z in (-inf,0)"


def test_nested_node_contributes_its_own_cut():
    cuts = _cuts("ln(-sqrt(z))")
    assert cuts.describe() == "z = a^2, a in (-inf,0); z in (-inf,0)"
    approaches = sorted(p.approach for c in cuts for p in c.provenance)
    assert approaches == ["parametric", "semialg"]


def test_semialg_approach_rejects_non_polynomial_argument():
    with pytest.raises(NotPolynomial):
        _cuts("ln(exp(z) + 1)", approach="semialg")
    with pytest.raises(ValueError):
        EngineConfig(approach="guess")


def test_parametric_approach_on_polynomial_argument():
    semi = _cuts("ln(z^2 - 1)")
    para = _cuts("ln(z^2 - 1)", approach="parametric")
    assert all(isinstance(c, SemiAlgebraicCut) for c in semi)
    assert {c.status for c in para} <= {CONFIRMED, POSSIBLY_SPURIOUS}
    # the same curves: the segment (-1,1) and the imaginary axis
    for c in para:
        z = c.curve(np.array([-3.0, -2.0, -0.5]))
        w = z**2 - 1
        assert np.allclose(w.imag, 0, atol=1e-12) and np.all(w.real < 0)


def test_force_numeric_gives_polylines():
    cuts = _cuts("ln(z^2 - 1)", approach="parametric", force_numeric=True)
    assert len(cuts) > 0 and all(isinstance(c, PolylineCut) for c in cuts)


def test_arccot_convention_changes_cuts():
    recip = _cuts("arccot(z)")
    as64 = _cuts("arccot(z)", conventions=Conventions("as64"))
    assert recip.describe() == "Re(z) = 0 and -1 < Im(z) < 1"
    # counter-clockwise order puts the upper ray first
    assert as64.describe() == "Re(z) = 0 and Im(z) > 1; Re(z) = 0 and Im(z) < -1"


def test_degree_limit_is_configurable():
    from branchcuts.errors import EngineLimit

    with pytest.raises(EngineLimit):
        _cuts("ln(z^5 + 1)", max_degree=4)
    assert len(_cuts("ln(z^5 + 1)", max_degree=5)) == 5


def test_output_order_is_deterministic():
    a = _cuts("ln(z^3 - 1) + sqrt(z)").describe()
    b = _cuts("sqrt(z) + ln(z^3 - 1)").describe()
    assert a == _cuts("ln(z^3 - 1) + sqrt(z)").describe()
    assert sorted(a.split("; ")) == sorted(b.split("; "))
