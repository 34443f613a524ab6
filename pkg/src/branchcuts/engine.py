"""Recursive branch-cut computation over an expression tree."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .catalog import DEFAULT_CONVENTIONS, Conventions, defining_cut
from .cuts import (
    DEFAULT_WINDOW,
    Cut,
    CutSet,
    Provenance,
    hausdorff,
    same_point_set,
    sample_cut,
    trace,
    union_cuts,
)
from .errors import NotPolynomial
from .expr import Expr, Func, Pow, contains_var, is_multivalued, walk
from .parametric import EXP_SHEETS, parametric_cuts
from .poly import polynomial_argument
from .semialg import max_degree_default, semialgebraic_cuts

APPROACHES = ("auto", "semialg", "parametric")


@dataclass(frozen=True)
class EngineConfig:
    approach: str = "auto"
    max_degree: int = field(default_factory=max_degree_default)
    conventions: Conventions = DEFAULT_CONVENTIONS
    numeric_fallback: bool = True
    force_numeric: bool = False
    window: tuple = DEFAULT_WINDOW
    exp_sheets: int = EXP_SHEETS

    def __post_init__(self):
        if self.approach not in APPROACHES:
            raise ValueError(f"unknown approach {self.approach!r}")


def _symbol_and_argument(node: Expr) -> tuple[str, Expr]:
    if isinstance(node, Func):
        return node.name, node.arg
    if isinstance(node, Pow):
        return "pow", node.base
    raise TypeError(f"{node} is not multi-valued")


def node_cuts(node: Expr, path: tuple, config: EngineConfig) -> list[Cut]:
    """Cuts induced by one multi-valued node's defining cut on its argument."""
    symbol, g = _symbol_and_argument(node)
    if not contains_var(g, "z"):
        return []
    d = defining_cut(symbol, config.conventions)
    if d.empty:
        return []
    approach = config.approach
    if approach == "auto":
        approach = "semialg" if polynomial_argument(g) is not None else "parametric"
    if approach == "semialg":
        if polynomial_argument(g) is None:
            raise NotPolynomial(f"argument {g} of {symbol} is not polynomial")
        cuts = semialgebraic_cuts(g, d, config.max_degree)
    else:
        cuts = parametric_cuts(
            g,
            d,
            config.conventions,
            numeric_fallback=config.numeric_fallback,
            force_numeric=config.force_numeric,
            window=config.window,
            sheets=config.exp_sheets,
        )
    prov = Provenance(path, symbol, str(g), approach)
    return [replace(c, provenance=(prov,)) for c in cuts]


def branch_cuts(e: Expr, config: EngineConfig | None = None) -> CutSet:
    """Union of the cuts induced by every multi-valued node of ``e``."""
    config = config or EngineConfig()
    result = CutSet(e, ())
    for path, node in walk(e):
        if is_multivalued(node):
            result = union_cuts(result, CutSet(e, tuple(node_cuts(node, path, config))))
    return result.sorted()


__all__ = [
    "APPROACHES",
    "EngineConfig",
    "branch_cuts",
    "hausdorff",
    "node_cuts",
    "same_point_set",
    "sample_cut",
    "trace",
    "union_cuts",
]
