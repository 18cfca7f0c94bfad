"""Cylinder graph model, labelings and the OIRDF validity check.

Rows index the path P_n (``i``), columns index the cycle C_m (``j``); a
labeling is the n x m matrix of values in {0, 1, 2}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

MAX_DIM = 10**6

UNDOMINATED_ZERO = "undominated-zero"
ADJACENT_ZEROS = "adjacent-zeros"


class FormatError(ValueError):
    """Raised when a labeling file cannot be decoded."""


@dataclass(frozen=True)
class CylinderSpec:
    n: int
    m: int

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or not isinstance(self.m, (int, np.integer)):
            raise TypeError("n and m must be integers")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.m < 3:
            raise ValueError(f"m must be >= 3 (C_m is a cycle), got {self.m}")
        if self.n > MAX_DIM or self.m > MAX_DIM:
            raise ValueError(f"dimensions are capped at {MAX_DIM}")

    @property
    def order(self) -> int:
        return self.n * self.m

    def vertices(self):
        for i in range(self.n):
            for j in range(self.m):
                yield (i, j)


def neighbors(spec: CylinderSpec, i: int, j: int) -> set[tuple[int, int]]:
    """Open neighbourhood of v_{i,j} in P_n x C_m."""
    n, m = spec.n, spec.m
    if not (0 <= i < n and 0 <= j < m):
        raise IndexError(f"vertex ({i}, {j}) outside {n}x{m} cylinder")
    out = {(i, (j - 1) % m), (i, (j + 1) % m)}
    # j-1 and j+1 never coincide mod m once m >= 3
    assert len(out) == 2
    if i > 0:
        out.add((i - 1, j))
    if i < n - 1:
        out.add((i + 1, j))
    return out


@dataclass(frozen=True, eq=False)
class Labeling:
    """An immutable n x m matrix over {0, 1, 2} on a cylinder."""

    spec: CylinderSpec
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        src = np.asarray(self.values)
        if src.shape != (self.spec.n, self.spec.m):
            raise ValueError(f"values shape {src.shape} does not match {self.spec.n}x{self.spec.m}")
        if src.dtype != np.int8 and src.size and (src.min() < 0 or src.max() > 2):
            raise ValueError("labels must lie in {0, 1, 2}")
        arr = np.array(src, dtype=np.int8, copy=True)
        # negatives wrap past 2 when viewed unsigned
        if arr.size and arr.view(np.uint8).max() > 2:
            raise ValueError("labels must lie in {0, 1, 2}")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    @classmethod
    def from_rows(cls, rows) -> Labeling:
        """Build from a sequence of digit strings or integer sequences."""
        grid = [[int(c) for c in r] for r in rows]
        if not grid:
            raise ValueError("empty labeling")
        return cls(CylinderSpec(len(grid), len(grid[0])), np.array(grid))

    @classmethod
    def full(cls, spec: CylinderSpec, value: int) -> Labeling:
        return cls(spec, np.full((spec.n, spec.m), value, dtype=np.int8))

    def __getitem__(self, ij):
        return int(self.values[ij])

    def __eq__(self, other):
        if not isinstance(other, Labeling):
            return NotImplemented
        return self.spec == other.spec and np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash((self.spec, self.values.tobytes()))

    def __repr__(self):
        return f"Labeling({self.spec.n}x{self.spec.m}, {'/'.join(self.rows())})"

    def rows(self) -> list[str]:
        return ["".join(str(int(x)) for x in r) for r in self.values]

    @property
    def weight(self) -> int:
        return weight(self)

    @classmethod
    def _derived(cls, spec: CylinderSpec, arr: np.ndarray) -> Labeling:
        # arr is a fresh rearrangement of checked labels; skip re-validation
        arr = np.ascontiguousarray(arr)
        arr.flags.writeable = False
        obj = object.__new__(cls)
        object.__setattr__(obj, "spec", spec)
        object.__setattr__(obj, "values", arr)
        return obj

    def rotate(self, k: int) -> Labeling:
        """Cyclic column shift by k (a graph automorphism)."""
        k %= self.spec.m
        v = self.values
        m = v.shape[1]
        return Labeling._derived(self.spec, np.concatenate((v[:, m - k:], v[:, :m - k]), axis=1))

    def reverse_rows(self) -> Labeling:
        return Labeling._derived(self.spec, self.values[::-1].copy())

    def reflect_columns(self) -> Labeling:
        return Labeling._derived(self.spec, self.values[:, ::-1].copy())


@dataclass(frozen=True)
class ValidationReport:
    is_valid: bool
    violations: tuple[tuple[str, tuple[int, int]], ...] = ()

    def as_dict(self) -> dict:
        return {
            "is_valid": self.is_valid,
            "violations": [{"kind": k, "vertex": list(v)} for k, v in self.violations],
        }


def weight(f: Labeling) -> int:
    return int(f.values.sum(dtype=np.int64))


# label -> bit flags (bit 0: zero, bit 1: two)
_FLAGS = np.array([1, 0, 2], dtype=np.uint8)


def _neighbour_flags(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-cell flags and the OR of the neighbours' flags (columns wrap, rows do not)."""
    c = np.take(_FLAGS, a)
    cc = np.concatenate((c[:, -1:], c, c[:, :1]), axis=1)
    nb = cc[:, :-2] | cc[:, 2:]
    nb[1:] |= c[:-1]
    nb[:-1] |= c[1:]
    return c, nb


def _any_violation(c: np.ndarray, nb: np.ndarray) -> bool:
    # a zero is fine exactly when its neighbours show a two and no zero
    return bool(((c == 1) & (nb != 2)).any())


def is_oirdf(f: Labeling) -> bool:
    return not _any_violation(*_neighbour_flags(f.values))


def validate(f: Labeling) -> ValidationReport:
    """Check both OIRDF conditions; violations come out in row-major order."""
    c, nb = _neighbour_flags(f.values)
    if not _any_violation(c, nb):
        return ValidationReport(True)
    zero = c == 1
    undominated = zero & (nb & 2 == 0)
    adjacent = zero & (nb & 1 == 1)
    violations = []
    for i, j in zip(*np.nonzero(undominated | adjacent)):
        v = (int(i), int(j))
        if undominated[i, j]:
            violations.append((UNDOMINATED_ZERO, v))
        if adjacent[i, j]:
            violations.append((ADJACENT_ZEROS, v))
    return ValidationReport(False, tuple(violations))


# --- file formats -----------------------------------------------------------

def encode_grid(f: Labeling) -> str:
    return "".join(r + "\n" for r in f.rows())


def decode_grid(text: str) -> Labeling:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise FormatError("empty grid")
    width = len(lines[0])
    grid = []
    for k, line in enumerate(lines):
        if len(line) != width:
            raise FormatError(f"ragged grid: line {k + 1} has {len(line)} cells, expected {width}")
        bad = [c for c in line if c not in "012"]
        if bad:
            raise FormatError(f"bad digit {bad[0]!r} on line {k + 1}")
        grid.append([int(c) for c in line])
    return _labeling_or_format_error(grid)


def encode_record(f: Labeling) -> str:
    return json.dumps({"n": f.spec.n, "m": f.spec.m, "labels": f.values.tolist()})


def decode_record(text: str) -> Labeling:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"not a JSON record: {e}") from None
    if not isinstance(doc, dict) or not {"n", "m", "labels"} <= doc.keys():
        raise FormatError("record needs fields n, m, labels")
    n, m, labels = doc["n"], doc["m"], doc["labels"]
    if not isinstance(n, int) or not isinstance(m, int) or not isinstance(labels, list):
        raise FormatError("n and m must be integers and labels a list")
    if len(labels) != n or any(not isinstance(r, list) or len(r) != m for r in labels):
        raise FormatError(f"labels must be {n} rows of {m} integers")
    if any(x not in (0, 1, 2) or isinstance(x, bool) for r in labels for x in r):
        raise FormatError("labels must lie in {0, 1, 2}")
    return _labeling_or_format_error(labels)


def _labeling_or_format_error(grid) -> Labeling:
    try:
        return Labeling.from_rows(grid)
    except (ValueError, TypeError) as e:
        raise FormatError(str(e)) from None


def decode(text: str) -> Labeling:
    """Decode either format, sniffing a leading ``{`` for the record form."""
    if text.lstrip().startswith("{"):
        return decode_record(text)
    return decode_grid(text)


def read_labeling(path) -> Labeling:
    with open(path) as fh:
        return decode(fh.read())
