import math

import numpy as np
import pytest

from oirdf.certificates import (P2CM, P3CM, PNC3, ROWS, CertificateError, certify,
                                check_proof_properties, column_sums, partition_algorithm1,
                                partition_algorithm2)
from oirdf.constructions import construct_p2cm, construct_p3cm, construct_pnc3
from oirdf.core import CylinderSpec, Labeling, is_oirdf
from oirdf.solver import solve_dp

from .oracles import repair_sample


class TestColumnSums:
    def test_p2_block(self):
        assert column_sums(Labeling.from_rows(["201010", "010201"])).sums == (2, 1, 1, 2, 1, 1)

    def test_all_ones(self):
        assert column_sums(Labeling.full(CylinderSpec(3, 4), 1)).sums == (3, 3, 3, 3)

    def test_rows_axis(self):
        f = Labeling.from_rows(["011", "201", "011", "101", "021", "101"])
        s = column_sums(f, ROWS)
        assert s.sums == (2, 3, 2, 2, 3, 2) and s.total == f.weight

    def test_cyclic_index(self):
        s = column_sums(Labeling.from_rows(["2010", "0102"]))
        assert s[-1] == s[3] and s[4] == s[0]

    def test_bad_axis(self):
        with pytest.raises(ValueError):
            column_sums(Labeling.full(CylinderSpec(1, 3), 1), "diagonal")


class TestAlgorithm1:
    def test_p2_six(self):
        p = partition_algorithm1(construct_p2cm(6))
        assert (p.t0, p.t1, p.t2) == (2, 0, 0)
        assert p.bound == 8 == p.weight
        assert p.covers_all and p.bag_bounds_hold

    def test_all_ones(self):
        p = partition_algorithm1(Labeling.full(CylinderSpec(2, 3), 1))
        assert [b.category for b in p.bags] == ["B2"] * 3
        assert all(len(b.columns) == 1 for b in p.bags)
        assert p.bound == 6 and p.bound_holds

    def test_p2_nine(self):
        p = partition_algorithm1(construct_p2cm(9))
        assert p.weight == 13 and p.bound <= 13

    def test_first_pass_absorbs_sum_one_neighbours(self):
        # column sum 3 flanked by sum-1 columns
        f = Labeling.from_rows(["1020", "2101"])
        p = partition_algorithm1(f)
        assert p.bags[0].first_pass and p.covers_all and p.bag_bounds_hold

    def test_needs_two_rows(self):
        with pytest.raises(CertificateError):
            partition_algorithm1(construct_p3cm(4))

    def test_rejects_invalid(self):
        with pytest.raises(CertificateError):
            partition_algorithm1(Labeling.from_rows(["000", "222"]))


class TestAlgorithm2:
    def test_p3_four(self):
        p = partition_algorithm2(construct_p3cm(4))
        assert p.t1 == 0 and p.bound == 8 == p.weight and p.property_b

    def test_p3_five(self):
        p = partition_algorithm2(construct_p3cm(5))
        assert p.bound <= 11 == p.weight

    def test_all_twos(self):
        p = partition_algorithm2(Labeling.full(CylinderSpec(3, 3), 2))
        assert [b.category for b in p.bags] == ["B1"] * 3
        assert p.bound == 9 and p.weight == 18

    def test_needs_three_rows(self):
        with pytest.raises(CertificateError):
            partition_algorithm2(construct_p2cm(4))


class TestProperties:
    def test_p3_seven(self):
        r = check_proof_properties(construct_p3cm(7), P3CM)
        assert all(c.passed for c in r.checks if c.name.startswith("(a)"))

    def test_pnc3_ten(self):
        r = check_proof_properties(construct_pnc3(10), PNC3)
        assert r.mandatory_pass and all(c.mandatory for c in r.checks)

    def test_p2_eight(self):
        assert check_proof_properties(construct_p2cm(8), P2CM).mandatory_pass

    def test_failures_are_reported(self):
        # column 3 sums to 4 between two sum-1 columns: (b) fails, nothing mandatory does
        f = Labeling.from_rows(["0102", "1010", "0202"])
        r = check_proof_properties(f, P3CM)
        assert r.mandatory_pass
        (b,) = [c for c in r.checks if not c.mandatory]
        assert b.failures == (3,)
        assert partition_algorithm2(f).property_b is False

    @pytest.mark.parametrize("f,family", [
        (construct_p2cm(5), P3CM), (construct_p3cm(5), P2CM), (construct_p3cm(5), PNC3),
        (Labeling.full(CylinderSpec(2, 3), 1), PNC3), (construct_p2cm(5), "PnCm"),
    ])
    def test_family_mismatch(self, f, family):
        with pytest.raises(CertificateError):
            check_proof_properties(f, family)


@pytest.mark.parametrize("n,m,family", [(2, None, P2CM), (3, None, P3CM), (None, 3, PNC3)])
def test_random_oirdfs_satisfy_mandatory_properties(n, m, family):
    rng = np.random.default_rng(11)
    for _ in range(10_000):
        k = int(rng.integers(3, 25))
        spec = CylinderSpec(n or k, m or k)
        f = repair_sample(spec, rng)
        assert is_oirdf(f)
        assert check_proof_properties(f, family).mandatory_pass, f.rows()
        if family == P2CM:
            p = partition_algorithm1(f)
            assert p.covers_all and p.bound_holds and p.bag_bounds_hold, f.rows()
        elif family == P3CM:
            p = partition_algorithm2(f)
            assert p.covers_all
            if p.property_b:
                assert p.bound_holds and p.bag_bounds_hold, f.rows()


def test_algorithm1_tight_on_solver_witnesses():
    for m in range(3, 65):
        out = solve_dp(CylinderSpec(2, m), witness=True)
        p = partition_algorithm1(out.witness)
        assert p.bound <= out.gamma < p.bound + 1
        assert math.ceil(p.bound) == out.gamma


def test_certify_record():
    rec = certify(construct_p3cm(3))
    assert rec["partition"]["algorithm"] == "algorithm2"
    assert rec["row_properties"]["mandatory_pass"]
    with pytest.raises(CertificateError):
        certify(Labeling.full(CylinderSpec(5, 5), 1))
