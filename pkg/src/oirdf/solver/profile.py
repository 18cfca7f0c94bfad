"""Layered profile DP for gamma_oiR(P_n x C_m).

Two sweep orientations:

* ``dp-path-layers``: layers are columns of height n, swept around the cycle.
  Column 0 is the seam; it is enumerated explicitly and each of its zeros
  without an internal 2-neighbour is assigned to be dominated either by
  column 1 (marked pending in the start profile) or by column m-1 (checked
  at closure).
* ``dp-cycle-layers``: layers are rows of width m with cyclic adjacency,
  swept along the path; no seam is needed and the last row may not leave
  pending zeros.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..core import CylinderSpec, Labeling, validate
from . import _kernels as K
from .caps import SizeError, SolverCaps

PATH_LAYERS = "dp-path-layers"
CYCLE_LAYERS = "dp-cycle-layers"

SYMBOLS = {K.ZP: "0*", K.ZS: "0", K.ONE: "1", K.TWO: "2"}

# parent tables above this many bytes are refused
WITNESS_BYTES = 1 << 28


@dataclass(frozen=True)
class LayerState:
    """One layer's labels and which of its zeros still lack a 2-neighbour."""

    labels: tuple[int, ...]
    pending: frozenset[int] = frozenset()

    def __post_init__(self):
        for p in self.pending:
            if self.labels[p] != 0:
                raise ValueError(f"pending position {p} is not a zero")

    def pack(self) -> int:
        code = 0
        for p, v in enumerate(self.labels):
            sym = (K.ZP if p in self.pending else K.ZS) if v == 0 else (K.ONE if v == 1 else K.TWO)
            code |= sym << (2 * p)
        return code

    @classmethod
    def unpack(cls, code: int, width: int) -> LayerState:
        labels, pending = [], set()
        for p in range(width):
            sym = (code >> (2 * p)) & 3
            labels.append(0 if sym <= K.ZS else sym - 1)
            if sym == K.ZP:
                pending.add(p)
        return cls(tuple(labels), frozenset(pending))

    def independent(self, cyclic: bool = False) -> bool:
        w = len(self.labels)
        pairs = [(p, p + 1) for p in range(w - 1)]
        if cyclic and w >= 3:
            pairs.append((w - 1, 0))
        return not any(self.labels[a] == 0 and self.labels[b] == 0 for a, b in pairs)


@dataclass(frozen=True)
class Seam:
    labels: tuple[int, ...]
    code: int
    cost: int
    zero_mask: int
    two_mask: int
    req_mask: int  # zeros left for column m-1 to dominate


@lru_cache(maxsize=None)
def seams(n: int) -> tuple[Seam, ...]:
    """Every admissible seam column of height n in lexicographic label order."""
    out = []
    for labels in itertools.product((0, 1, 2), repeat=n):
        if any(labels[r] == 0 and labels[r + 1] == 0 for r in range(n - 1)):
            continue
        zero = sum(1 << r for r in range(n) if labels[r] == 0)
        two = sum(1 << r for r in range(n) if labels[r] == 2)
        open_zeros = [r for r in range(n) if labels[r] == 0
                      and not any(0 <= q < n and labels[q] == 2 for q in (r - 1, r + 1))]
        for k in range(len(open_zeros) + 1):
            for to_next in itertools.combinations(open_zeros, k):
                state = LayerState(labels, frozenset(to_next))
                req = sum(1 << r for r in open_zeros if r not in to_next)
                out.append(Seam(labels, state.pack(), sum(labels), zero, two, req))
    return tuple(out)


def _seam_arrays(n: int):
    ss = seams(n)
    arr = lambda attr, dt: np.array([getattr(s, attr) for s in ss], dtype=dt)  # noqa: E731
    return (arr("code", np.int64), arr("cost", np.int32), arr("zero_mask", np.int64),
            arr("two_mask", np.int64), arr("req_mask", np.int64))


def estimated_cost(spec: CylinderSpec, orientation: str) -> int:
    if orientation == PATH_LAYERS:
        return len(seams(spec.n)) * 4 ** spec.n * spec.order
    return 4 ** spec.m * spec.order


def allowed_orientations(spec: CylinderSpec, caps: SolverCaps) -> list[str]:
    out = []
    if spec.n <= caps.seam_width and spec.m <= caps.max_length:
        out.append(PATH_LAYERS)
    if spec.m <= caps.row_width and spec.n <= caps.max_length:
        out.append(CYCLE_LAYERS)
    return out


def choose_orientation(spec: CylinderSpec, caps: SolverCaps) -> str:
    options = allowed_orientations(spec, caps)
    if not options:
        raise SizeError(
            f"{spec.n}x{spec.m} exceeds solver caps: need n <= {caps.seam_width} "
            f"(path layers) or m <= {caps.row_width} (cycle layers), other side <= {caps.max_length}")
    return min(options, key=lambda o: (estimated_cost(spec, o), o))


def _solve_path_layers(spec: CylinderSpec, want_witness: bool):
    n, m = spec.n, spec.m
    codes, costs, zeros, twos, reqs = _seam_arrays(n)
    best, states, trans = K.all_seams(n, m, codes, costs, zeros, twos, reqs)
    k = int(np.argmin(best))  # first seam attaining the minimum
    gamma = int(best[k])
    stats = {"states": int(states.sum()), "transitions": int(trans.sum()), "seams": int(len(best))}
    if not want_witness:
        return gamma, None, stats

    size = 4 ** n
    steps = n * (m - 1)
    _check_witness_budget(steps, size)
    parents = np.zeros((max(steps, 1), size), dtype=np.uint8)
    final, _, _ = K.sweep_columns(n, m - 1, codes[k], costs[k], parents, True)
    b, code = K.closure_costs(final, n, zeros[k], twos[k], reqs[k])
    assert b == gamma
    grid = np.zeros((n, m), dtype=np.int8)
    grid[:, 0] = seams(n)[k].labels
    code = int(code)
    for step in range(steps - 1, -1, -1):
        i, j = step % n, 1 + step // n
        byte = int(parents[step, code])
        grid[i, j] = byte & 3
        code = _undo(code, i, byte, first=i - 1 if i > 0 else None, second=None)
    assert code == int(codes[k])
    return gamma, Labeling(spec, grid), stats


def _solve_cycle_layers(spec: CylinderSpec, want_witness: bool):
    n, m = spec.n, spec.m
    size = 4 ** m
    if want_witness:
        _check_witness_budget(n * m, size)
        parents = np.zeros((n * m, size), dtype=np.uint8)
    else:
        parents = np.zeros((1, 1), dtype=np.uint8)
    final, states, trans = K.sweep_rows(n, m, parents, want_witness)
    no_pending = _no_pending_codes(m)
    masked = np.where(no_pending, final, K.INF)
    code = int(np.argmin(masked))
    gamma = int(masked[code])
    stats = {"states": int(states), "transitions": int(trans)}
    if not want_witness:
        return gamma, None, stats
    grid = np.zeros((n, m), dtype=np.int8)
    for step in range(n * m - 1, -1, -1):
        i, j = divmod(step, m)
        byte = int(parents[step, code])
        grid[i, j] = byte & 3
        code = _undo(code, j, byte, first=j - 1 if j > 0 else None, second=0 if j == m - 1 else None)
    assert code == LayerState((1,) * m).pack()
    return gamma, Labeling(spec, grid), stats


def _undo(code: int, pos: int, byte: int, first, second) -> int:
    """Invert one cell relaxation using its parent byte."""
    code = (code & ~(3 << (2 * pos))) | (((byte >> 2) & 3) << (2 * pos))
    if byte & 16:
        code = (code & ~(3 << (2 * first))) | (K.ZP << (2 * first))
    if byte & 32:
        code = (code & ~(3 << (2 * second))) | (K.ZP << (2 * second))
    return code


@lru_cache(maxsize=None)
def _no_pending_codes(width: int) -> np.ndarray:
    codes = np.arange(4 ** width)
    ok = np.ones(codes.shape, dtype=bool)
    for p in range(width):
        ok &= ((codes >> (2 * p)) & 3) != K.ZP
    return ok


def _check_witness_budget(steps: int, size: int) -> None:
    if steps * size > WITNESS_BYTES:
        raise SizeError(f"witness parent table would need {steps * size} bytes (limit {WITNESS_BYTES})")


def run(spec: CylinderSpec, orientation: str, want_witness: bool):
    t0 = time.perf_counter()
    if orientation == PATH_LAYERS:
        gamma, witness, stats = _solve_path_layers(spec, want_witness)
    elif orientation == CYCLE_LAYERS:
        gamma, witness, stats = _solve_cycle_layers(spec, want_witness)
    else:
        raise ValueError(f"unknown orientation {orientation!r}")
    stats["elapsed_ms"] = round((time.perf_counter() - t0) * 1000, 3)
    if gamma >= K.INF:
        raise RuntimeError(f"no OIRDF found on {spec.n}x{spec.m}; solver bug")
    if witness is not None:
        report = validate(witness)
        if not report.is_valid or witness.weight != gamma:
            raise RuntimeError(f"witness check failed on {spec.n}x{spec.m}: {report.violations[:3]}")
    return gamma, witness, stats
