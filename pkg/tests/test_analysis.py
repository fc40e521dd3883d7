import dataclasses
import math

import numpy as np
import pytest

from fdehat import (ConfigurationError, FDEProblem, convergence_order, cross_basis_deviation,
                    example1, example2, max_node_error, run_convergence_study, seirs_problem,
                    solve_fde_system)
from fdehat.analysis import range_report

from helpers import LADDER, TABLE_EXAMPLE1, TABLE_EXAMPLE2, table_columns


class TestOrder:
    def test_table_pairs(self):
        assert round(convergence_order(1.68e-1, 3.37e-2), 2) == 2.32
        assert round(convergence_order(8.51e-5, 7.69e-6), 2) == 3.47

    def test_equal(self):
        assert convergence_order(0.3, 0.3) == 0.0

    def test_zero_is_absent(self):
        assert convergence_order(0.0, 1e-3) is None
        assert convergence_order(1e-3, 0.0) is None


class TestMaxNodeError:
    def test_synthetic_exact(self):
        sol = solve_fde_system(FDEProblem(1.0, 1.0, [lambda t, y: 0.0], [2.0],
                                          exact=[lambda t: 2.0]), "ghf", 4)
        np.testing.assert_array_equal(max_node_error(sol), [0.0])

    def test_missing_exact(self):
        with pytest.raises(ConfigurationError):
            max_node_error(solve_fde_system(example2(0.8), "ghf", 4))

    @pytest.mark.parametrize("kind,n,expected", [("ghf", 2, (1.68e-1, 2.24e-1)),
                                                 ("mhf", 4, (9.33e-4, 2.87e-3))])
    def test_table_values(self, kind, n, expected):
        err = max_node_error(solve_fde_system(example1(), kind, n))
        np.testing.assert_allclose(err, expected, rtol=0.05)


@pytest.fixture(scope="module")
def studies():
    out = {}
    for name, prob in (("example1", example1()), ("example2", example2(1.0))):
        for kind in ("ghf", "mhf"):
            out[name, kind] = run_convergence_study(prob, kind, LADDER)
    return out


class TestStudy:
    def test_shape(self, studies):
        rows = studies["example1", "ghf"]
        assert [r.n for r in rows] == LADDER
        assert rows[-1].orders == []
        assert all(not r.failed for r in rows)
        assert all(r.runtime_seconds >= 0 for r in rows)

    def test_ghf_column_example1(self, studies):
        errs, _ = table_columns(TABLE_EXAMPLE1, "ghf")
        for r in studies["example1", "ghf"]:
            assert abs(r.errors[0] - errs[r.n][0]) <= 0.05 * errs[r.n][0]

    def test_mhf_final_row_example2(self, studies):
        assert studies["example2", "mhf"][-1].errors[0] == pytest.approx(6.20e-9, rel=0.05)

    def test_single_row(self):
        rows = run_convergence_study(example1(), "mhf", [4])
        assert len(rows) == 1 and rows[0].orders == []

    def test_ladder_must_double(self):
        with pytest.raises(ConfigurationError):
            run_convergence_study(example1(), "ghf", [2, 6])

    def test_needs_exact(self):
        with pytest.raises(ConfigurationError):
            run_convergence_study(seirs_problem(), "ghf", [20, 40])

    def test_failed_row_is_kept(self):
        blow = FDEProblem(1.0, 3.0, [lambda t, y: -1.0 - y[0] ** 2], [0.0],
                          exact=[lambda t: -math.tan(t)])
        rows = run_convergence_study(blow, "ghf", [4, 8])
        assert rows[0].failed and "block" in rows[0].failure
        assert rows[0].orders == [None]

    def test_workers_preserve_order(self, studies):
        rows = run_convergence_study(example1(), "ghf", LADDER[:5], workers=3)
        for a, b in zip(rows, studies["example1", "ghf"]):
            assert a.n == b.n and a.errors == b.errors

    @pytest.mark.parametrize("name", ["example1", "example2"])
    def test_errors_decrease(self, studies, name, kind):
        rows = studies[name, kind]
        for a, b in zip(rows, rows[1:]):
            assert all(x > y for x, y in zip(a.errors, b.errors))

    @pytest.mark.parametrize("name", ["example1", "example2"])
    def test_ghf_order_band(self, studies, name):
        for r in studies[name, "ghf"]:
            if r.n >= 8 and r.orders:
                assert all(1.8 <= o <= 2.4 for o in r.orders), (r.n, r.orders)

    def test_mhf_order_band_example1(self, studies):
        for r in studies["example1", "mhf"]:
            if r.n >= 8 and r.orders:
                assert all(2.8 <= o <= 3.6 for o in r.orders), (r.n, r.orders)

    @pytest.mark.xfail(strict=True, reason=(
        "the reference table for the linear system itself reports MHF orders near 4.0 for "
        "n >= 16, above the [2.8, 3.6] band; the computed orders follow the table"))
    def test_mhf_order_band_example2(self, studies):
        for r in studies["example2", "mhf"]:
            if r.n >= 8 and r.orders:
                assert all(2.8 <= o <= 3.6 for o in r.orders), (r.n, r.orders)

    def test_mhf_example2_orders_follow_table(self, studies):
        _, orders = table_columns(TABLE_EXAMPLE2, "mhf")
        for r in studies["example2", "mhf"]:
            if r.n >= 64 and r.orders:
                for got, ref in zip(r.orders, orders[r.n]):
                    assert abs(got - ref) <= 0.15


@pytest.fixture(scope="module")
def seirs_runs():
    pr = seirs_problem()
    return {(k, n): solve_fde_system(pr, k, n, best_effort=True)
            for k in ("ghf", "mhf") for n in (20, 40, 80)}


class TestCrossBasis:
    def test_identical(self, seirs_runs):
        s = seirs_runs["ghf", 40]
        assert cross_basis_deviation(s, s) == 0.0

    def test_symmetric(self, seirs_runs):
        a, b = seirs_runs["ghf", 40], seirs_runs["mhf", 80]
        assert cross_basis_deviation(a, b) == cross_basis_deviation(b, a)

    def test_refinement(self, seirs_runs):
        fine = cross_basis_deviation(seirs_runs["ghf", 80], seirs_runs["mhf", 80])
        coarse = cross_basis_deviation(seirs_runs["ghf", 20], seirs_runs["mhf", 20])
        assert fine < coarse

    def test_regression_anchors(self, seirs_runs):
        fine = cross_basis_deviation(seirs_runs["ghf", 80], seirs_runs["mhf", 80])
        assert fine == pytest.approx(0.00929804901256, rel=1e-8)
        # the coarse MHF run contains least-squares blocks, so its anchor is looser
        coarse = cross_basis_deviation(seirs_runs["ghf", 20], seirs_runs["mhf", 20])
        assert coarse == pytest.approx(1.68070514786, rel=1e-3)

    def test_coarse_mhf_is_best_effort(self, seirs_runs):
        assert seirs_runs["mhf", 20].unconverged_blocks
        assert all(seirs_runs[k, n].converged for k in ("ghf", "mhf") for n in (40, 80))
        assert seirs_runs["ghf", 20].converged

    def test_mismatch(self, seirs_runs):
        other = solve_fde_system(example1(), "ghf", 4)
        with pytest.raises(ConfigurationError):
            cross_basis_deviation(seirs_runs["ghf", 20], other)

    def test_parameter_change_is_a_different_problem(self, seirs_runs):
        from fdehat import SeirsParams
        other = solve_fde_system(seirs_problem(SeirsParams(b1=0.1)), "ghf", 20)
        with pytest.raises(ConfigurationError):
            cross_basis_deviation(seirs_runs["ghf", 20], other)


def test_range_report(seirs_runs):
    rep = range_report(seirs_runs["mhf", 80])
    assert all(i in (1, 2, 3, 4) for i in rep)
    inside = range_report(solve_fde_system(example1(), "ghf", 8), lo=-1.0, hi=2.0)
    assert inside == {}
