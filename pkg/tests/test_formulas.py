import math

import pytest

from oirdf.formulas import (EXACT, UPPER_BOUND, best_formula, exact_formula, gamma_p1cm, gamma_p2cm,
                            gamma_p3cm, gamma_pnc3, upper_pncm_case, upper_pncm_global)


@pytest.mark.parametrize("m,expected", [(4, 3), (3, 3), (7, 6), (8, 6), (5, 4), (6, 5)])
def test_p1cm(m, expected):
    v = gamma_p1cm(m)
    assert v.value == expected and v.kind == EXACT


@pytest.mark.parametrize("m,expected", [(6, 8), (3, 5), (5, 8), (7, 10), (9, 13), (4, 6), (8, 11)])
def test_p2cm(m, expected):
    assert gamma_p2cm(m).value == expected


@pytest.mark.parametrize("m,expected", [(4, 8), (3, 7), (5, 11), (101, 203)])
def test_p3cm(m, expected):
    assert gamma_p3cm(m).value == expected


@pytest.mark.parametrize("n,expected", [(4, 10), (6, 14), (3, 7), (7, 17), (100, 234)])
def test_pnc3(n, expected):
    assert gamma_pnc3(n).value == expected


def test_boundary_consistency():
    assert gamma_p3cm(3).value == gamma_pnc3(3).value == 7


@pytest.mark.parametrize("n,m,expected", [(4, 4, 11), (5, 5, 18), (7, 7, 36), (5, 4, 13), (6, 6, 24)])
def test_case_values(n, m, expected):
    v = upper_pncm_case(n, m)
    assert v.value == expected and v.kind == UPPER_BOUND


@pytest.mark.parametrize("n,m,expected,integral", [(4, 4, 13, False), (7, 7, 36, False),
                                                    (5, 4, 16, False), (8, 4, 26, True)])
def test_global_bound(n, m, expected, integral):
    v = upper_pncm_global(n, m)
    assert v.value == expected
    assert v.integral is integral
    assert v.value >= upper_pncm_case(n, m).value


def test_case_weights_match_block_accounting():
    """Case formulas equal the per-block weight sums used to derive them."""
    for n in range(4, 60):
        for m in range(4, 60):
            a, b = n % 4, m % 4
            if b == 0:
                tail = {0: 11, 1: 3, 2: 6, 3: 8}[a]
                w = (m // 4) * ((n - 4 if a == 0 else n - a) // 4) * 10 + (m // 4) * tail
            else:
                extra_cols = {1: 5, 2: 6, 3: 3}[b]
                side = {1: 14, 2: 16, 3: 10}[b]
                corner = {1: {0: 15, 1: 4, 2: 8, 3: 11},
                          2: {0: 16, 1: 5, 2: 8, 3: 13},
                          3: {0: 9, 1: 3, 2: 4, 3: 8}}[b][a]
                tail = {0: 11, 1: 3, 2: 6, 3: 8}[a]
                rows = (n - 4 if a == 0 else n - a) // 4
                cols = (m - extra_cols) // 4
                w = cols * rows * 10 + rows * side + cols * tail + corner
            assert upper_pncm_case(n, m).value == w, (n, m)


def test_divisibility_and_ordering_sweep():
    for n in range(4, 1001):
        for m in range(4, 1001, 37 if n % 10 else 1):
            case = upper_pncm_case(n, m)  # raises if a numerator is not a multiple of 8
            assert case.value <= upper_pncm_global(n, m).value


@pytest.mark.parametrize("fn", [gamma_p1cm, gamma_p2cm, gamma_p3cm, gamma_pnc3])
def test_small_inputs_rejected(fn):
    with pytest.raises(ValueError):
        fn(2)


def test_pncm_rejects_small():
    with pytest.raises(ValueError):
        upper_pncm_case(3, 5)
    with pytest.raises(ValueError):
        upper_pncm_global(5, 3)


def test_exact_formula_dispatch():
    assert exact_formula(1, 9).source == "Theorem 1"
    assert exact_formula(3, 3).source == "Theorem 3"
    assert exact_formula(9, 3).source == "Theorem 4"
    assert exact_formula(4, 4) is None
    assert best_formula(4, 4).kind == UPPER_BOUND


def test_closed_forms_against_ceil_expressions():
    for m in range(3, 500):
        assert gamma_p2cm(m).value == math.ceil(4 * m / 3) + (m % 6 in (3, 5))
        assert gamma_pnc3(m).value == math.ceil(7 * m / 3)
