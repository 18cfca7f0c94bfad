"""Closed forms for the outer independent Roman domination number of P_n x C_m."""

from __future__ import annotations

from dataclasses import dataclass

from .core import MAX_DIM

EXACT = "exact"
UPPER_BOUND = "upper-bound"


@dataclass(frozen=True)
class FormulaValue:
    value: int
    kind: str
    case: dict
    source: str
    integral: bool = True

    def __str__(self):
        return f"{self.kind} {self.value}"


def _check(name: str, x: int, lo: int) -> None:
    if not isinstance(x, int):
        raise TypeError(f"{name} must be an integer")
    if x < lo:
        raise ValueError(f"{name} must be >= {lo}, got {x}")
    if x > MAX_DIM:
        raise ValueError(f"{name} is capped at {MAX_DIM}")


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def gamma_p1cm(m: int) -> FormulaValue:
    _check("m", m, 3)
    return FormulaValue(3 * (m // 4) + m % 4, EXACT, {"m mod 4": m % 4}, "Theorem 1")


def gamma_p2cm(m: int) -> FormulaValue:
    _check("m", m, 3)
    v = _ceil_div(4 * m, 3) + (1 if m % 6 in (3, 5) else 0)
    return FormulaValue(v, EXACT, {"m mod 6": m % 6}, "Theorem 2")


def gamma_p3cm(m: int) -> FormulaValue:
    _check("m", m, 3)
    return FormulaValue(2 * m + m % 2, EXACT, {"m mod 2": m % 2}, "Theorem 3")


def gamma_pnc3(n: int) -> FormulaValue:
    _check("n", n, 3)
    return FormulaValue(_ceil_div(7 * n, 3), EXACT, {"n mod 3": n % 3}, "Theorem 4")


# numerator of the construction weight (over 8) keyed by (m mod 4, n even)
_CASE_NUMERATORS = {
    (0, True): lambda n, m: 5 * m * n + 2 * m,
    (0, False): lambda n, m: 5 * m * n + m,
    (1, True): lambda n, m: 5 * m * n + 3 * n + 2 * m - 2,
    (1, False): lambda n, m: 5 * m * n + 3 * n + m - 1,
    (2, True): lambda n, m: 5 * m * n + 2 * n + 2 * m - 12,
    (2, False): lambda n, m: 5 * m * n + 2 * n + m + 2,
    (3, True): lambda n, m: 5 * m * n + 5 * n + 2 * m - 14,
    (3, False): lambda n, m: 5 * m * n + 5 * n + m + 1,
}


def upper_pncm_case(n: int, m: int) -> FormulaValue:
    """Weight of the tiled construction for n, m >= 4 (selected by m mod 4, n mod 4)."""
    _check("n", n, 4)
    _check("m", m, 4)
    num = _CASE_NUMERATORS[(m % 4, n % 2 == 0)](n, m)
    if num % 8:
        raise ArithmeticError(f"case weight numerator {num} not divisible by 8 at n={n}, m={m}")
    return FormulaValue(num // 8, UPPER_BOUND, {"m mod 4": m % 4, "n mod 4": n % 4},
                        f"Theorem 5 case ({m % 4 + 1})")


def upper_pncm_global(n: int, m: int) -> FormulaValue:
    """floor((5mn + 5n + 2m) / 8); ``integral`` is False when the floor truncates."""
    _check("n", n, 4)
    _check("m", m, 4)
    num = 5 * m * n + 5 * n + 2 * m
    return FormulaValue(num // 8, UPPER_BOUND, {}, "Theorem 5", integral=num % 8 == 0)


def exact_formula(n: int, m: int) -> FormulaValue | None:
    """The exact closed form covering (n, m), or None when only a bound is known."""
    if n == 1:
        return gamma_p1cm(m)
    if n == 2:
        return gamma_p2cm(m)
    if n == 3:
        return gamma_p3cm(m)
    if m == 3:
        return gamma_pnc3(n)
    return None


def best_formula(n: int, m: int) -> FormulaValue:
    exact = exact_formula(n, m)
    return exact if exact is not None else upper_pncm_global(n, m)
