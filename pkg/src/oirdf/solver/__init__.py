"""Exact computation of gamma_oiR on cylinders."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from ..core import CylinderSpec, Labeling
from . import brute, profile
from .caps import DEFAULT_CAPS, PROFILES, SizeError, SolverCaps, caps_profile
from .profile import CYCLE_LAYERS, PATH_LAYERS, LayerState

BRUTE = "brute"

__all__ = [
    "BRUTE", "CYCLE_LAYERS", "PATH_LAYERS", "DEFAULT_CAPS", "PROFILES", "LayerState",
    "SizeError", "SolveOutcome", "SolverCaps", "brute_force", "caps_profile",
    "extract_witness", "solve_dp",
]


@dataclass(frozen=True)
class SolveOutcome:
    gamma: int
    witness: Labeling | None
    method: str
    stats: dict = field(default_factory=dict, compare=False)


def brute_force(spec: CylinderSpec, caps: SolverCaps = DEFAULT_CAPS) -> SolveOutcome:
    """Minimum weight over all 3^(nm) labelings; the witness is the lexicographically first optimum."""
    if spec.order > caps.brute_cells:
        raise SizeError(f"brute force limited to n*m <= {caps.brute_cells}, got {spec.order}")
    t0 = time.perf_counter()
    gamma, witness, checked = brute.enumerate_min(spec)
    stats = {"labelings": 3 ** spec.order, "checked": checked,
             "elapsed_ms": round((time.perf_counter() - t0) * 1000, 3)}
    return SolveOutcome(gamma, witness, BRUTE, stats)


def solve_dp(spec: CylinderSpec, caps: SolverCaps = DEFAULT_CAPS, *, orientation: str | None = None,
             witness: bool = False) -> SolveOutcome:
    """Exact gamma_oiR by profile DP; ``orientation`` defaults to the cheaper allowed sweep."""
    if orientation is None:
        orientation = profile.choose_orientation(spec, caps)
    elif orientation not in profile.allowed_orientations(spec, caps):
        raise SizeError(f"{orientation} not within caps for {spec.n}x{spec.m}")
    gamma, wit, stats = profile.run(spec, orientation, witness)
    return SolveOutcome(gamma, wit, orientation, stats)


def extract_witness(spec: CylinderSpec, target: int, caps: SolverCaps = DEFAULT_CAPS) -> Labeling:
    """A deterministic optimal labeling; ``target`` must equal gamma_oiR."""
    out = solve_dp(spec, caps, witness=True)
    if out.gamma != target:
        raise ValueError(f"target {target} differs from gamma_oiR = {out.gamma} on {spec.n}x{spec.m}")
    return out.witness
