"""Numeric classification of candidate cuts by probing for jumps.

A candidate cut is sampled at ``samples`` points spread along its length and
the function is probed across it at each.  The verdict is

* ``confirmed`` when a strict majority of the requested samples jump by more
  than ``threshold``;
* ``spurious`` when at least that many probes succeeded and every one of them
  jumps by less than ``threshold / 10``;
* ``possibly-spurious`` otherwise, including when too few probes succeed.

Cuts are never removed, only annotated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .catalog import DEFAULT_CONVENTIONS, Conventions
from .cuts import (
    CONFIRMED,
    DEFAULT_WINDOW,
    POSSIBLY_SPURIOUS,
    SPURIOUS,
    Cut,
    CutSet,
    sample_cut,
)
from .errors import EmptyInWindow, InsufficientSamples, PoleOrSingularity
from .evaluate import JumpReport, jump_probe
from .expr import Expr


@dataclass(frozen=True)
class ClassifyConfig:
    samples: int = 9
    eps: float = 1e-6
    threshold: float = 1e-3
    window: tuple = DEFAULT_WINDOW
    seed: int = 0
    conventions: Conventions = DEFAULT_CONVENTIONS

    def __post_init__(self):
        if self.samples < 2:
            raise ValueError("samples must be at least 2")
        if self.eps <= 0 or self.threshold <= 0:
            raise ValueError("eps and threshold must be positive")


@dataclass(frozen=True)
class SpuriousVerdict:
    cut_id: int
    verdict: str
    evidence: tuple = ()
    samples: int = 0
    threshold: float = 1e-3
    reason: str = ""

    def to_dict(self) -> dict:
        return {
            "cut_id": self.cut_id,
            "verdict": self.verdict,
            "samples": self.samples,
            "threshold": self.threshold,
            "reason": self.reason,
            "evidence": [r.to_dict() for r in self.evidence],
        }


def _probes(e: Expr, cut: Cut, cfg: ClassifyConfig, offset: float, avoid: np.ndarray) -> list[JumpReport]:
    reports = []
    for shift in (offset, offset + 0.5):
        pts = sample_cut(cut, cfg.samples, cfg.window, offset=shift)
        missed = 0
        for p, n in pts:
            if avoid.size and np.abs(avoid - p).min() < 10 * cfg.eps:
                missed += 1
                continue
            try:
                reports.append(jump_probe(e, p, n, cfg.eps, cfg.conventions))
            except PoleOrSingularity:
                missed += 1
        # resample once, shifted along the cut, if singular points were hit
        if not missed:
            break
        if shift != offset:
            break
        reports = []
    return reports


def _verdict(reports: list[JumpReport], cfg: ClassifyConfig) -> tuple[str, str]:
    need = cfg.samples // 2 + 1
    if len(reports) < need:
        return POSSIBLY_SPURIOUS, f"only {len(reports)} of {cfg.samples} probes succeeded"
    above = sum(r.magnitude > cfg.threshold for r in reports)
    if above >= need:
        return CONFIRMED, f"{above} of {len(reports)} probes jump above {cfg.threshold:g}"
    if all(r.magnitude < cfg.threshold / 10 for r in reports):
        return SPURIOUS, f"all {len(reports)} probes below {cfg.threshold / 10:g}"
    return POSSIBLY_SPURIOUS, f"{above} of {len(reports)} probes jump above {cfg.threshold:g}"


def classify_cut(
    e: Expr,
    cut: Cut,
    cfg: ClassifyConfig | None = None,
    cut_id: int = 0,
    branch_points=(),
) -> SpuriousVerdict:
    """Probe one cut; samples closer than ``10*eps`` to a branch point are skipped."""
    cfg = cfg or ClassifyConfig()
    rng = np.random.default_rng([cfg.seed, cut_id])
    offset = float(rng.uniform(-0.25, 0.25))
    avoid = np.asarray(list(branch_points) or list(cut.branch_points()), dtype=complex)
    try:
        reports = _probes(e, cut, cfg, offset, avoid)
    except EmptyInWindow as exc:
        return SpuriousVerdict(cut_id, POSSIBLY_SPURIOUS, (), 0, cfg.threshold, str(InsufficientSamples(str(exc))))
    verdict, reason = _verdict(reports, cfg)
    return SpuriousVerdict(cut_id, verdict, tuple(reports), len(reports), cfg.threshold, reason)


def classify(e: Expr, cuts: CutSet, cfg: ClassifyConfig | None = None) -> tuple[CutSet, list[SpuriousVerdict]]:
    """Annotate every cut of ``cuts`` with a verdict for the expression ``e``."""
    cfg = cfg or ClassifyConfig()
    verdicts = []
    out = []
    bps = [p for c in cuts for p in c.branch_points()]
    for i, cut in enumerate(cuts):
        v = classify_cut(e, cut, cfg, i, bps)
        verdicts.append(v)
        out.append(cut.with_status(v.verdict, v.evidence, v.reason))
    return CutSet(cuts.source, tuple(out)), verdicts
