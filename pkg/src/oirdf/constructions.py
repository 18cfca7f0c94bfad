"""Explicit OIRDF labelings meeting the closed forms.

Each family is a small block tiled over the cylinder followed by an ordered
list of cell overrides (last write wins).  Overrides are written as predicates
on the row/column index grids ``I``, ``J`` so a whole labeling is built with a
handful of vectorized numpy operations.

The override lists are checked cell by cell against reference matrices for
every residue class in tests/test_constructions.py.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .core import CylinderSpec, Labeling

Predicate = Callable[[np.ndarray, np.ndarray, int, int], np.ndarray]


@dataclass(frozen=True)
class PatternBlock:
    """A block repeated along ``axis`` ("columns", "rows" or "both") plus overrides."""

    rows: tuple[str, ...]
    axis: str = "columns"
    overrides: tuple[tuple[Predicate, int], ...] = field(default=())

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    def tile(self, spec: CylinderSpec) -> np.ndarray:
        block = np.array([[int(c) for c in r] for r in self.rows], dtype=np.int8)
        bh, bw = block.shape
        if self.axis == "columns" and bh != spec.n:
            raise ValueError(f"block height {bh} does not match n={spec.n}")
        if self.axis == "rows" and bw != spec.m:
            raise ValueError(f"block width {bw} does not match m={spec.m}")
        I, J = np.indices((spec.n, spec.m))
        return block[I % bh, J % bw]

    def apply(self, spec: CylinderSpec) -> Labeling:
        values = self.tile(spec)
        I, J = np.indices((spec.n, spec.m))
        for pred, v in self.overrides:
            values[pred(I, J, spec.n, spec.m)] = v
        return Labeling(spec, values)


def _need(name, x, lo):
    if x < lo:
        raise ValueError(f"{name} must be >= {lo}, got {x}")


# --- P_1 x C_m ----------------------------------------------------------------
# 2010 repeated; the last block becomes 20110 (m = 1 mod 4) or 201110
# (m = 2 mod 4); m = 3 mod 4 ends in 201, which tiling already produces.

def construct_p1cm(m: int) -> Labeling:
    _need("m", m, 3)
    t = m % 4
    ov = []
    if t == 1:
        ov = [(lambda I, J, n, m: J == m - 2, 1), (lambda I, J, n, m: J == m - 1, 0)]
    elif t == 2:
        ov = [(lambda I, J, n, m: J == m - 3, 1), (lambda I, J, n, m: J == m - 2, 1)]
    return PatternBlock(("2010",), "columns", tuple(ov)).apply(CylinderSpec(1, m))


# --- P_2 x C_m ----------------------------------------------------------------

P2_BLOCK = ("201010", "010201")


def construct_p2cm(m: int) -> Labeling:
    _need("m", m, 3)
    t = m % 6
    ov = []
    if t == 1:
        ov += [(lambda I, J, n, m: (I == 0) & (J == m - 2), 1)]
    if t in (1, 3, 5):
        ov += [(lambda I, J, n, m: (I == 1) & (J == m - 1), 1)]
    if t == 1:
        ov += [(lambda I, J, n, m: (I == 0) & (J == m - 1), 0)]
    return PatternBlock(P2_BLOCK, "columns", tuple(ov)).apply(CylinderSpec(2, m))


# --- P_3 x C_m ----------------------------------------------------------------

P3_BLOCK = ("01", "20", "01")


def construct_p3cm(m: int) -> Labeling:
    _need("m", m, 3)
    ov = []
    if m % 2:
        ov = [(lambda I, J, n, m: J == m - 1, 1)]
    return PatternBlock(P3_BLOCK, "columns", tuple(ov)).apply(CylinderSpec(3, m))


# --- P_n x C_3 ----------------------------------------------------------------

PNC3_BLOCK = ("011", "201", "011", "101", "021", "101")


def construct_pnc3(n: int) -> Labeling:
    _need("n", n, 3)
    ov = []
    if n % 6 in (1, 4):
        ov = [(lambda I, J, n, m: (I == n - 1) & (J == 2), 2)]
    return PatternBlock(PNC3_BLOCK, "rows", tuple(ov)).apply(CylinderSpec(n, 3))


# --- P_n x C_m, n, m >= 4 -------------------------------------------------------

G_BLOCK = ("1020", "0101", "2010", "0101")


def _pncm_overrides(n: int, m: int) -> list[tuple[Predicate, int]]:
    a, b = n % 4, m % 4
    last = lambda I, J, n, m: I == n - 1  # noqa: E731
    ov: list[tuple[Predicate, int]] = []

    if b == 0:
        if a in (0, 2):
            ov.append((lambda I, J, n, m: last(I, J, n, m) & (J % 4 == 3), 2))

    elif b == 1:
        if a == 0:
            ov.append((lambda I, J, n, m: last(I, J, n, m) & (J % 4 == 3), 2))
        if a == 2:
            ov.append((lambda I, J, n, m: last(I, J, n, m) & (J % 4 == 3) & (J <= m - 5), 2))
            ov.append((lambda I, J, n, m: last(I, J, n, m) & (J == m - 1), 2))
        ov.append((lambda I, J, n, m: (I % 4 == 2) & (J == m - 2), 1))
        if a in (0, 1, 3):
            ov.append((lambda I, J, n, m: (I % 2 == 1) & (J == m - 1), 1))
        if a == 2:
            ov.append((lambda I, J, n, m: (I % 4 == 1) & (J == m - 1) & (I <= n - 3), 1))
            ov.append((lambda I, J, n, m: (I % 4 == 3) & (J == m - 1), 1))
        ov.append((lambda I, J, n, m: (I % 4 == 2) & (J == m - 1), 0))

    elif b == 2:
        ov.append((lambda I, J, n, m: (I % 4 == 3) & (J == m - 3), 2))
        ov.append((lambda I, J, n, m: (I % 4 == 1) & (J == m - 1), 2))
        if a == 0:
            ov.append((lambda I, J, n, m: last(I, J, n, m) & (J % 4 == 3), 2))
        if a == 2:
            ov.append((lambda I, J, n, m: last(I, J, n, m) & (J % 4 == 3) & (J <= m - 6), 2))
        if a in (0, 1, 2):
            ov.append((lambda I, J, n, m: (I % 4 == 2) & (J == m - 2), 1))
        if a == 3:
            ov.append((lambda I, J, n, m: (I % 4 == 2) & (J == m - 2) & (I <= n - 4), 1))
        if a == 1:
            ov.append((lambda I, J, n, m: last(I, J, n, m) & (J == m - 1), 1))

    else:
        ov.append((lambda I, J, n, m: (I % 4 == 1) & (J == m - 2), 2))
        if a == 0:
            ov.append((lambda I, J, n, m: last(I, J, n, m) & (J % 4 == 3), 2))
        ov.append((lambda I, J, n, m: (I % 4 == 3) & (J == m - 1), 1))
        if a in (0, 3):
            ov.append((lambda I, J, n, m: (I % 4 <= 1) & (J == m - 1), 1))
        if a == 0:
            ov.append((lambda I, J, n, m: (I == n - 2) & (J == m - 3), 1))
        if a == 1:
            ov.append((lambda I, J, n, m: (I % 4 == 0) & (J == m - 1) & (I <= n - 5), 1))
            ov.append((lambda I, J, n, m: (I % 4 == 1) & (J == m - 1), 1))
        if a == 2:
            ov.append((lambda I, J, n, m: (I % 4 == 0) & (J == m - 1), 1))
            ov.append((lambda I, J, n, m: (I % 4 == 1) & (J == m - 1) & (I <= n - 5), 1))
            ov.append((lambda I, J, n, m: last(I, J, n, m) & (J % 4 == 0) & (J <= m - 7), 1))
    return ov


def pncm_block(n: int, m: int) -> PatternBlock:
    return PatternBlock(G_BLOCK, "both", tuple(_pncm_overrides(n, m)))


def construct_pncm(n: int, m: int) -> Labeling:
    _need("n", n, 4)
    _need("m", m, 4)
    return pncm_block(n, m).apply(CylinderSpec(n, m))


def construct(n: int, m: int) -> Labeling:
    """Pick the family covering (n, m): n <= 3 first, then m = 3, then the general tiling."""
    CylinderSpec(n, m)
    if n == 1:
        return construct_p1cm(m)
    if n == 2:
        return construct_p2cm(m)
    if n == 3:
        return construct_p3cm(m)
    if m == 3:
        return construct_pnc3(n)
    return construct_pncm(n, m)


def family_of(n: int, m: int) -> str:
    if n <= 3:
        return f"P{n}Cm"
    if m == 3:
        return "PnC3"
    return "PnCm"
