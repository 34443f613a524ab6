"""Branch cuts of compositions of elementary functions of one complex variable."""

from .catalog import Conventions, defining_cut
from .cuts import CutSet, union_cuts
from .engine import EngineConfig, branch_cuts
from .evaluate import evaluate, evaluate_array, jump_probe
from .expr import parse
from .spurious import ClassifyConfig, classify

__version__ = "0.1.0"

__all__ = [
    "ClassifyConfig",
    "Conventions",
    "CutSet",
    "EngineConfig",
    "branch_cuts",
    "classify",
    "defining_cut",
    "evaluate",
    "evaluate_array",
    "jump_probe",
    "parse",
    "union_cuts",
]
