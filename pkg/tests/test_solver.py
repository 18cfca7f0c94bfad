import pytest

from oirdf import formulas
from oirdf.constructions import construct
from oirdf.core import CylinderSpec, Labeling, is_oirdf
from oirdf.solver import (BRUTE, CYCLE_LAYERS, DEFAULT_CAPS, PATH_LAYERS, LayerState, SizeError,
                          SolverCaps, brute_force, caps_profile, extract_witness, solve_dp)
from oirdf.solver import profile

from .oracles import py_brute_force

SMALL = [(n, m) for n in range(1, 5) for m in range(3, 13) if n * m <= 12]


@pytest.mark.parametrize("n,m,gamma", [(1, 3, 3), (2, 3, 5), (3, 4, 8), (2, 300, 400), (3, 101, 203),
                                       (100, 3, 234), (4, 4, 11)])
def test_known_values(n, m, gamma):
    assert solve_dp(CylinderSpec(n, m)).gamma == gamma


@pytest.mark.parametrize("n,m", [(n, m) for n, m in SMALL if n * m <= 9])
def test_matches_python_oracle(n, m):
    best, _ = py_brute_force(n, m)
    assert brute_force(CylinderSpec(n, m)).gamma == best
    assert solve_dp(CylinderSpec(n, m)).gamma == best


@pytest.mark.parametrize("n,m", SMALL)
def test_brute_force_equals_both_orientations(n, m):
    spec = CylinderSpec(n, m)
    ref = brute_force(spec)
    assert ref.method == BRUTE and is_oirdf(ref.witness) and ref.witness.weight == ref.gamma
    for o in profile.allowed_orientations(spec, DEFAULT_CAPS):
        assert solve_dp(spec, orientation=o).gamma == ref.gamma


@pytest.mark.parametrize("n,m", [(4, 9), (5, 7), (6, 5), (6, 8), (3, 8), (7, 6), (5, 8)])
def test_orientations_agree_beyond_brute_force(n, m):
    spec, caps = CylinderSpec(n, m), caps_profile("large")
    a = solve_dp(spec, caps, orientation=PATH_LAYERS, witness=True)
    b = solve_dp(spec, caps, orientation=CYCLE_LAYERS, witness=True)
    assert a.gamma == b.gamma
    assert a.witness.weight == b.witness.weight == a.gamma


def test_brute_witness_is_first_optimum():
    _, optima = py_brute_force(2, 4)
    first = min(tuple(c for row in g for c in row) for g in optima)
    got = brute_force(CylinderSpec(2, 4)).witness
    assert tuple(got.values.ravel()) == first


@pytest.mark.parametrize("n,m", [(3, 10), (5, 6), (7, 4), (2, 31)])
def test_witness_valid_and_deterministic(n, m):
    spec = CylinderSpec(n, m)
    a = solve_dp(spec, witness=True)
    b = solve_dp(spec, witness=True)
    assert a.witness == b.witness
    assert is_oirdf(a.witness) and a.witness.weight == a.gamma
    # every rotation of an optimum is an optimum
    for k in range(m):
        assert is_oirdf(a.witness.rotate(k))


def test_extract_witness_c4():
    f = extract_witness(CylinderSpec(1, 4), 3)
    assert f.rows()[0] in {"2010"[k:] + "2010"[:k] for k in range(4)}


def test_extract_witness_rejects_wrong_target():
    with pytest.raises(ValueError):
        extract_witness(CylinderSpec(1, 4), 2)


def test_layer_state_round_trip():
    s = LayerState((0, 1, 2, 0), frozenset({3}))
    assert LayerState.unpack(s.pack(), 4) == s
    assert s.independent() and not s.independent(cyclic=True)
    with pytest.raises(ValueError):
        LayerState((1, 0), frozenset({0}))


def test_seams_are_independent_columns():
    for s in profile.seams(4):
        assert LayerState(s.labels).independent()
        assert s.req_mask & ~s.zero_mask == 0


def test_caps():
    with pytest.raises(SizeError):
        brute_force(CylinderSpec(4, 4))
    assert brute_force(CylinderSpec(2, 6), SolverCaps(brute_cells=12)).gamma == 8
    with pytest.raises(SizeError):
        solve_dp(CylinderSpec(20, 20))
    with pytest.raises(SizeError):
        solve_dp(CylinderSpec(7, 4), orientation=PATH_LAYERS)
    with pytest.raises(ValueError):
        caps_profile("huge")


def test_orientation_choice():
    assert solve_dp(CylinderSpec(2, 50)).method == PATH_LAYERS
    assert solve_dp(CylinderSpec(50, 3)).method == CYCLE_LAYERS


def test_witness_budget():
    with pytest.raises(SizeError):
        profile._check_witness_budget(10**6, 4**8)


@pytest.mark.parametrize("n,m", [(4, 4), (4, 11), (5, 9), (6, 6), (9, 5), (4, 22)])
def test_sandwich(n, m):
    g = solve_dp(CylinderSpec(n, m)).gamma
    c = construct(n, m).weight
    assert g <= c <= formulas.upper_pncm_global(n, m).value


def test_stats_present():
    out = solve_dp(CylinderSpec(3, 7))
    assert out.stats["states"] > 0 and out.stats["transitions"] > 0 and "elapsed_ms" in out.stats


def test_all_ones_is_never_better():
    for n, m in SMALL:
        assert solve_dp(CylinderSpec(n, m)).gamma <= Labeling.full(CylinderSpec(n, m), 1).weight
