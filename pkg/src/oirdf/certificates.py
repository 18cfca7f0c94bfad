"""Lower-bound accounting for P_2 x C_m and P_3 x C_m, plus slice-sum properties.

The bag partitions group the cycle slices V^j (one per column) into
categories whose label sums are bounded below; summing those bounds gives
the lower bound on w(f).  Scans run in ascending j with cyclic neighbours
and guards evaluated at visit time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .core import Labeling, validate

COLUMNS = "columns"
ROWS = "rows"

P2CM, P3CM, PNC3 = "P2Cm", "P3Cm", "PnC3"


class CertificateError(ValueError):
    """Input does not meet a certificate's precondition."""


@dataclass(frozen=True)
class ColumnSums:
    sums: tuple[int, ...]
    axis: str = COLUMNS

    def __getitem__(self, j: int) -> int:
        # indices wrap; only meaningful cyclically along the column axis
        return self.sums[j % len(self.sums)]

    def __len__(self):
        return len(self.sums)

    @property
    def total(self) -> int:
        return sum(self.sums)


def column_sums(f: Labeling, axis: str = COLUMNS) -> ColumnSums:
    if axis == COLUMNS:
        s = f.values.sum(axis=0, dtype=np.int64)
    elif axis == ROWS:
        s = f.values.sum(axis=1, dtype=np.int64)
    else:
        raise ValueError(f"axis must be {COLUMNS!r} or {ROWS!r}")
    return ColumnSums(tuple(int(x) for x in s), axis)


@dataclass(frozen=True)
class Bag:
    category: str  # "B0", "B1" or "B2"
    columns: tuple[int, ...]
    total: int
    first_pass: bool = False


@dataclass(frozen=True)
class BagPartition:
    algorithm: str
    m: int
    weight: int
    bags: tuple[Bag, ...]
    property_b: bool | None = None

    def count(self, category: str) -> int:
        return sum(b.category == category for b in self.bags)

    @property
    def t0(self) -> int:
        return self.count("B0")

    @property
    def t1(self) -> int:
        return self.count("B1")

    @property
    def t2(self) -> int:
        return self.count("B2")

    @property
    def covers_all(self) -> bool:
        seen = [c for b in self.bags for c in b.columns]
        return sorted(seen) == list(range(self.m))

    @property
    def bound(self) -> Fraction:
        if self.algorithm == "algorithm1":
            return Fraction(4 * self.m + self.t1 + 2 * self.t2, 3)
        return Fraction(2 * self.m + self.t1)

    def bag_bound_holds(self, bag: Bag, strict: bool = False) -> bool:
        size = len(bag.columns)
        if self.algorithm == "algorithm1":
            extra = {"B0": 0, "B1": 1, "B2": 2}[bag.category]
            lhs, rhs = 3 * bag.total, 4 * size + extra
        else:
            extra = {"B0": 0, "B1": 1}[bag.category]
            lhs, rhs = bag.total, 2 * size + extra
        return lhs > rhs if strict else lhs >= rhs

    @property
    def bag_bounds_hold(self) -> bool:
        """Weak per-bag inequality everywhere, strict for first-pass B2 bags of Algorithm 1."""
        for b in self.bags:
            strict = self.algorithm == "algorithm1" and b.first_pass
            if not self.bag_bound_holds(b, strict):
                return False
        return True

    @property
    def bound_holds(self) -> bool:
        return self.bound <= self.weight

    def as_dict(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "m": self.m,
            "weight": self.weight,
            "t0": self.t0,
            "t1": self.t1,
            "t2": self.t2,
            "bags": [{"category": b.category, "columns": list(b.columns), "sum": b.total}
                     for b in self.bags],
            "bound": str(self.bound),
            "bound_ceil": math.ceil(self.bound),
            "bound_holds": self.bound_holds,
            "covers_all": self.covers_all,
            "bag_bounds_hold": self.bag_bounds_hold,
            "property_b": self.property_b,
        }


def _require(f: Labeling, n: int | None = None, m: int | None = None) -> None:
    if n is not None and f.spec.n != n:
        raise CertificateError(f"needs n = {n}, got {f.spec.n}")
    if m is not None and f.spec.m != m:
        raise CertificateError(f"needs m = {m}, got {f.spec.m}")
    if not validate(f).is_valid:
        raise CertificateError("labeling is not an OIRDF")


def partition_algorithm1(f: Labeling) -> BagPartition:
    """Three-category bag partition of the columns of an OIRDF on P_2 x C_m."""
    _require(f, n=2)
    s = column_sums(f)
    m = len(s)
    d = [False] * m
    bags = []

    def take(cols, cat, first=False):
        for c in cols:
            d[c] = True
        bags.append(Bag(cat, tuple(cols), sum(s[c] for c in cols), first))

    for j in range(m):
        if s[j] >= 3 and not d[j]:
            cols = [j]
            d[j] = True
            for k in ((j - 1) % m, (j + 1) % m):
                if s[k] == 1 and not d[k]:
                    d[k] = True
                    cols.append(k)
            take(cols, "B2", first=True)

    for j in range(m):
        if s[j] == 2 and not d[j]:
            lo, hi = (j - 1) % m, (j + 1) % m
            if s[lo] == 1 and s[hi] == 1 and not d[lo] and not d[hi]:
                take([lo, j, hi], "B0")
            elif s[lo] == 1 and not d[lo]:
                take([lo, j], "B1")
            elif s[hi] == 1 and not d[hi]:
                take([j, hi], "B1")
            else:
                take([j], "B2")

    return BagPartition("algorithm1", m, f.weight, tuple(bags))


def property_b_holds(s: ColumnSums) -> bool:
    m = len(s)
    return all(2 <= s[j] <= 3 for j in range(m) if s[j - 1] == 1 and s[j + 1] == 1)


def partition_algorithm2(f: Labeling) -> BagPartition:
    """Two-category bag partition of the columns of an OIRDF on P_3 x C_m.

    The bound 2m + t_1 <= w(f) is only guaranteed when f has property (b);
    ``property_b`` on the result says whether it does.
    """
    _require(f, n=3)
    s = column_sums(f)
    m = len(s)
    d = [False] * m
    bags = []

    def take(cols, cat, first=False):
        for c in cols:
            d[c] = True
        bags.append(Bag(cat, tuple(cols), sum(s[c] for c in cols), first))

    for j in range(m):
        if s[j] >= 4 and not d[j]:
            cols = [j]
            d[j] = True
            for k in ((j - 1) % m, (j + 1) % m):
                if s[k] == 1 and not d[k]:
                    d[k] = True
                    cols.append(k)
            take(cols, "B1", first=True)

    for j in range(m):
        if s[j] == 3 and not d[j]:
            hi = (j + 1) % m
            if s[hi] == 1 and not d[hi]:
                take([j, hi], "B0")
            else:
                take([j], "B1")

    for j in range(m):
        if s[j] == 2 and not d[j]:
            take([j], "B0")

    part = BagPartition("algorithm2", m, f.weight, tuple(bags), property_b_holds(s))
    if part.property_b and not part.covers_all:
        raise AssertionError("algorithm 2 left a column unassigned on a property-(b) input")
    return part


# --- slice-sum properties ------------------------------------------------------

@dataclass(frozen=True)
class PropertyCheck:
    name: str
    mandatory: bool
    failures: tuple[int, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.failures


@dataclass(frozen=True)
class PropertyReport:
    family: str
    sums: ColumnSums
    checks: tuple[PropertyCheck, ...] = field(default=())

    @property
    def mandatory_pass(self) -> bool:
        return all(c.passed for c in self.checks if c.mandatory)

    def as_dict(self) -> dict:
        return {
            "family": self.family,
            "sums": list(self.sums.sums),
            "checks": [{"name": c.name, "mandatory": c.mandatory, "passed": c.passed,
                        "failures": list(c.failures)} for c in self.checks],
            "mandatory_pass": self.mandatory_pass,
        }


def check_proof_properties(f: Labeling, family: str) -> PropertyReport:
    """Slice-sum facts every OIRDF of the family satisfies (P3Cm (b) is informational)."""
    if family == P2CM:
        _require(f, n=2)
        s = column_sums(f)
        idx = range(len(s))
        checks = (
            PropertyCheck("column sum >= 1", True, tuple(j for j in idx if s[j] < 1)),
            PropertyCheck("sum 1 column has a neighbour column with sum >= 2", True,
                          tuple(j for j in idx if s[j] == 1 and s[j - 1] < 2 and s[j + 1] < 2)),
        )
    elif family == P3CM:
        _require(f, n=3)
        s = column_sums(f)
        idx = range(len(s))
        checks = (
            PropertyCheck("(a) column sum >= 1", True, tuple(j for j in idx if s[j] < 1)),
            PropertyCheck("(a) sum 1 column: next column sum >= 2", True,
                          tuple(j for j in idx if s[j] == 1 and s[j + 1] < 2)),
            PropertyCheck("(a) sum 1 column: neighbour columns sum >= 6", True,
                          tuple(j for j in idx if s[j] == 1 and s[j - 1] + s[j + 1] < 6)),
            PropertyCheck("(b) between two sum 1 columns the sum is 2 or 3", False,
                          tuple(j for j in idx if s[j - 1] == 1 and s[j + 1] == 1
                                and not 2 <= s[j] <= 3)),
        )
    elif family == PNC3:
        _require(f, m=3)
        if f.spec.n < 3:
            raise CertificateError(f"{PNC3} needs n >= 3, got {f.spec.n}")
        r = column_sums(f, ROWS).sums
        n = len(r)
        checks = (
            PropertyCheck("row sum >= 2", True, tuple(i for i in range(n) if r[i] < 2)),
            PropertyCheck("(a) three consecutive rows sum >= 7", True,
                          tuple(i for i in range(1, n - 1) if r[i - 1] + r[i] + r[i + 1] < 7)),
            PropertyCheck("(b) two end rows sum >= 5", True,
                          tuple(i for i in (0, n - 2) if r[i] + r[i + 1] < 5)),
        )
        s = ColumnSums(r, ROWS)
    else:
        raise CertificateError(f"unknown family {family!r}; expected {P2CM}, {P3CM} or {PNC3}")
    return PropertyReport(family, s, checks)


def certify(f: Labeling) -> dict:
    """Everything the certificate layer can say about f, as a plain record."""
    n, m = f.spec.n, f.spec.m
    out: dict = {"n": n, "m": m, "weight": f.weight}
    if n == 2:
        out["partition"] = partition_algorithm1(f).as_dict()
        out["properties"] = check_proof_properties(f, P2CM).as_dict()
    elif n == 3:
        out["partition"] = partition_algorithm2(f).as_dict()
        out["properties"] = check_proof_properties(f, P3CM).as_dict()
    if m == 3 and n >= 3:
        out["row_properties"] = check_proof_properties(f, PNC3).as_dict()
    if len(out) == 3:
        raise CertificateError(f"no certificate for {n}x{m}: need n in (2, 3) or m = 3")
    return out
