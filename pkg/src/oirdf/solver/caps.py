from __future__ import annotations

from dataclasses import dataclass


class SizeError(ValueError):
    """The instance exceeds the configured solver caps."""


@dataclass(frozen=True)
class SolverCaps:
    brute_cells: int = 14  # brute force enumerates 3**(n*m) labelings
    seam_width: int = 6  # max n for path layers (seam enumeration)
    row_width: int = 8  # max m for cycle layers
    max_length: int = 10**4  # max length of the swept dimension


DEFAULT_CAPS = SolverCaps()

PROFILES = {
    "default": DEFAULT_CAPS,
    "small": SolverCaps(brute_cells=12, seam_width=4, row_width=6, max_length=1000),
    "large": SolverCaps(brute_cells=16, seam_width=7, row_width=9, max_length=10**4),
}


def caps_profile(name: str) -> SolverCaps:
    try:
        return PROFILES[name]
    except KeyError:
        raise ValueError(f"unknown caps profile {name!r}; choose from {sorted(PROFILES)}") from None
