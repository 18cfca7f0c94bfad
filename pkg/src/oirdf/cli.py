"""Command line front end: ``oirdf gamma|construct|verify|certify|table``.

Exit status: 0 success / valid, 1 invalid input semantics or a failed
agreement check, 2 parse or format error, 3 size-cap refusal.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass

from . import formulas
from .certificates import CertificateError, certify
from .constructions import construct
from .core import (CylinderSpec, FormatError, encode_grid, encode_record, is_oirdf, read_labeling,
                   validate)
from .solver import SizeError, brute_force, caps_profile, solve_dp

EXIT_OK, EXIT_INVALID, EXIT_FORMAT, EXIT_SIZE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_range(text: str) -> range:
    """Inclusive ``A..B`` (or a single integer)."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}") from None
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(lo, hi + 1)


def _spec(args) -> CylinderSpec:
    try:
        return CylinderSpec(args.n, args.m)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _emit(args, text: str, record: dict) -> None:
    if getattr(args, "format", "text") == "record":
        if args.stable:
            record.pop("stats", None)
        print(json.dumps(record, sort_keys=True))
    else:
        print(text)


# --- gamma ---------------------------------------------------------------------

def cmd_gamma(args) -> int:
    spec = _spec(args)
    caps = caps_profile(args.caps)
    method = args.method
    exact = formulas.exact_formula(spec.n, spec.m)

    if method == "formula" or (method == "auto" and exact is not None):
        if exact is None:
            bound = formulas.upper_pncm_global(spec.n, spec.m)
            case = formulas.upper_pncm_case(spec.n, spec.m)
            _emit(args,
                  f"no exact formula for n, m >= 4; upper-bound {bound.value} ({bound.source}), "
                  f"construction weight {case.value} ({case.source})",
                  {"n": spec.n, "m": spec.m, "kind": bound.kind, "value": bound.value,
                   "method": "formula", "source": bound.source, "case_value": case.value,
                   "refused": True})
            return EXIT_INVALID
        _emit(args, f"{exact.kind} {exact.value} (formula: {exact.source})",
              {"n": spec.n, "m": spec.m, "kind": exact.kind, "value": exact.value,
               "method": "formula", "source": exact.source})
        return EXIT_OK

    out = brute_force(spec, caps) if method == "brute" else solve_dp(spec, caps)
    provenance = "matches " + exact.source if exact is not None else "computed, no closed form"
    stats = "" if args.stable else f" [{out.stats.get('elapsed_ms')} ms]"
    _emit(args, f"exact {out.gamma} ({'dp' if method != 'brute' else 'brute'}: {out.method}; "
                f"{provenance}){stats}",
          {"n": spec.n, "m": spec.m, "kind": formulas.EXACT, "value": out.gamma, "method": out.method,
           "formula_value": exact.value if exact is not None else None, "stats": out.stats})
    if exact is not None and exact.value != out.gamma:
        print(f"error: solver value {out.gamma} disagrees with {exact.source} ({exact.value})",
              file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


# --- construct / verify / certify ------------------------------------------------

def cmd_construct(args) -> int:
    spec = _spec(args)
    f = construct(spec.n, spec.m)
    if args.format == "record":
        print(encode_record(f))
    else:
        sys.stdout.write(encode_grid(f))
    return EXIT_OK


def cmd_verify(args) -> int:
    f = read_labeling(args.file)
    report = validate(f)
    record = {"n": f.spec.n, "m": f.spec.m, "weight": f.weight, **report.as_dict()}
    lines = [f"{'valid' if report.is_valid else 'invalid'} OIRDF on P{f.spec.n} x C{f.spec.m}, "
             f"weight {f.weight}"]
    lines += [f"  {kind} at {v}" for kind, v in report.violations]
    _emit(args, "\n".join(lines), record)
    return EXIT_OK if report.is_valid else EXIT_INVALID


def cmd_certify(args) -> int:
    f = read_labeling(args.file)
    try:
        record = certify(f)
    except CertificateError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    lines = [f"P{f.spec.n} x C{f.spec.m}, weight {f.weight}"]
    part = record.get("partition")
    if part:
        lines.append(f"{part['algorithm']}: t0={part['t0']} t1={part['t1']} t2={part['t2']} "
                     f"bound={part['bound']} (holds: {part['bound_holds']}, "
                     f"covers all: {part['covers_all']}, property (b): {part['property_b']})")
        for b in part["bags"]:
            lines.append(f"  {b['category']} {b['columns']} sum {b['sum']}")
    ok = True
    for key in ("properties", "row_properties"):
        rep = record.get(key)
        if not rep:
            continue
        for c in rep["checks"]:
            tag = "mandatory" if c["mandatory"] else "informational"
            lines.append(f"  {rep['family']} {c['name']}: {'pass' if c['passed'] else 'FAIL'} "
                         f"({tag}){'' if c['passed'] else ' at ' + str(c['failures'])}")
        ok &= rep["mandatory_pass"]
    if part:
        ok &= part["bound_holds"] or part["property_b"] is False
    _emit(args, "\n".join(lines), record)
    return EXIT_OK if ok else EXIT_INVALID


# --- table -------------------------------------------------------------------------

TABLE_COLUMNS = ("formula", "construction", "dp", "brute", "bound")


@dataclass
class TableRow:
    n: int
    m: int
    formula: formulas.FormulaValue | None = None
    construction: int | None = None
    construction_valid: bool | None = None
    solver: int | None = None
    solver_method: str | None = None
    solver_error: str | None = None
    bound: int | None = None
    case_value: int | None = None
    elapsed_ms: float | None = None

    def flags(self) -> dict:
        """Agreement flags, derived on demand; every one listed must be True."""
        fl = {}
        exact = self.formula is not None and self.formula.kind == formulas.EXACT
        if self.construction is not None:
            fl["construction_valid"] = bool(self.construction_valid)
            if exact:
                fl["construction_eq_formula"] = self.construction == self.formula.value
            if self.case_value is not None:
                fl["construction_eq_case"] = self.construction == self.case_value
            if self.bound is not None:
                fl["construction_le_bound"] = self.construction <= self.bound
        if self.solver is not None:
            if exact:
                fl["solver_eq_formula"] = self.solver == self.formula.value
            if self.construction is not None:
                fl["solver_le_construction"] = self.solver <= self.construction
            if self.bound is not None:
                fl["solver_le_bound"] = self.solver <= self.bound
        return fl

    def record(self, stable: bool) -> dict:
        r = {"n": self.n, "m": self.m}
        if self.formula is not None:
            r.update(formula=self.formula.value, kind=self.formula.kind, source=self.formula.source)
        if self.construction is not None:
            r["construction"] = self.construction
        if self.case_value is not None:
            r["case_value"] = self.case_value
        if self.bound is not None:
            r["bound"] = self.bound
        if self.solver is not None:
            r.update(solver=self.solver, method=self.solver_method)
            r["provenance"] = ("closed-form" if self.formula is not None and self.formula.kind == formulas.EXACT
                               else "computed")
        if self.solver_error is not None:
            r["solver_error"] = self.solver_error
        r["flags"] = self.flags()
        r["ok"] = all(r["flags"].values())
        if not stable and self.elapsed_ms is not None:
            r["elapsed_ms"] = self.elapsed_ms
        return r


def build_row(n: int, m: int, columns, caps) -> TableRow:
    row = TableRow(n, m)
    t0 = time.perf_counter()
    if "formula" in columns:
        row.formula = formulas.best_formula(n, m)
    if "construction" in columns:
        f = construct(n, m)
        row.construction = f.weight
        row.construction_valid = is_oirdf(f)
        if n >= 4 and m >= 4:
            row.case_value = formulas.upper_pncm_case(n, m).value
    if "bound" in columns and n >= 4 and m >= 4:
        row.bound = formulas.upper_pncm_global(n, m).value
    if "dp" in columns or "brute" in columns:
        spec = CylinderSpec(n, m)
        try:
            out = brute_force(spec, caps) if "brute" in columns else solve_dp(spec, caps)
            row.solver, row.solver_method = out.gamma, out.method
        except SizeError as e:
            row.solver_error = str(e)
    row.elapsed_ms = round((time.perf_counter() - t0) * 1000, 3)
    return row


def _format_text(rows, stable: bool) -> str:
    head = ["n", "m", "formula", "kind", "constr", "bound", "solver", "method", "ok"]
    body = []
    for r in rows:
        rec = r.record(stable)
        body.append([str(r.n), str(r.m),
                     "" if r.formula is None else str(r.formula.value),
                     "" if r.formula is None else r.formula.kind,
                     "" if r.construction is None else str(r.construction),
                     "" if r.bound is None else str(r.bound),
                     "refused" if r.solver_error else ("" if r.solver is None else str(r.solver)),
                     r.solver_method or "",
                     "yes" if rec["ok"] else "NO"])
    widths = [max(len(x) for x in col) for col in zip(head, *body)]
    fmt = lambda cells: "  ".join(c.rjust(w) for c, w in zip(cells, widths)).rstrip()  # noqa: E731
    return "\n".join([fmt(head)] + [fmt(b) for b in body])


def cmd_table(args) -> int:
    caps = caps_profile(args.caps)
    columns = [c.strip() for c in args.columns.split(",") if c.strip()]
    unknown = set(columns) - set(TABLE_COLUMNS)
    if unknown:
        raise UsageError(f"unknown table columns {sorted(unknown)}; choose from {TABLE_COLUMNS}")
    if args.n_range is None or args.m_range is None:
        raise UsageError("table needs --n-range and --m-range")
    rows = []
    for n in args.n_range:
        for m in args.m_range:
            try:
                CylinderSpec(n, m)
            except ValueError as e:
                raise UsageError(str(e)) from None
            rows.append(build_row(n, m, columns, caps))
    rows.sort(key=lambda r: (r.n, r.m))
    if args.format == "record":
        for r in rows:
            print(json.dumps(r.record(args.stable), sort_keys=True))
    else:
        print(_format_text(rows, args.stable))
    return EXIT_OK if all(all(r.flags().values()) for r in rows) else EXIT_INVALID


# --- entry point ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="oirdf", description=(
        "Outer independent Roman domination on cylinders P_n x C_m: closed forms, "
        "constructions, exact solving and certificate checks."))
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, formats=("text", "record"), default="text"):
        sp.add_argument("--format", choices=formats, default=default)
        sp.add_argument("--stable", action="store_true", help="omit timing and stats")
        sp.add_argument("--caps", default="default", help="solver caps profile (default, small, large)")

    g = sub.add_parser("gamma", help="gamma_oiR(P_n x C_m)")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--method", choices=("auto", "brute", "dp", "formula"), default="auto")
    common(g)
    g.set_defaults(func=cmd_gamma)

    c = sub.add_parser("construct", help="emit the explicit OIRDF for P_n x C_m")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--m", type=int, required=True)
    common(c, ("grid", "record"), "grid")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="check a labeling file")
    v.add_argument("file")
    common(v)
    v.set_defaults(func=cmd_verify)

    ce = sub.add_parser("certify", help="bag partition and slice-sum properties of a labeling")
    ce.add_argument("file")
    common(ce)
    ce.set_defaults(func=cmd_certify)

    t = sub.add_parser("table", help="formula / construction / solver table")
    t.add_argument("--n-range", type=parse_range)
    t.add_argument("--m-range", type=parse_range)
    t.add_argument("--columns", default="formula,construction,bound",
                   help=f"comma list from {','.join(TABLE_COLUMNS)}")
    common(t)
    t.set_defaults(func=cmd_table)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FormatError as e:
        print(f"format error: {e}", file=sys.stderr)
        return EXIT_FORMAT
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FORMAT
    except SizeError as e:
        print(f"size cap: {e}", file=sys.stderr)
        return EXIT_SIZE
    except (UsageError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
