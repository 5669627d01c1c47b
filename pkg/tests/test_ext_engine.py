from pathlib import Path

import pytest

from isochart import steenrod
from isochart.charts import Chart
from isochart.ext import (
    BudgetExceeded,
    CheckpointError,
    Resolution,
    cobar_ext,
    crho_chart,
    minimal_resolution,
    trigraded_ext_G,
    vanishing_check,
)
from isochart.f2linalg import F2Matrix, rank

GOLDEN = Path(__file__).resolve().parents[1] / "src" / "isochart" / "data" / "golden_ext_chart.tsv"


class TestResolution:
    def test_stage_zero_only(self):
        res = minimal_resolution(0, 9)
        assert res.chart().entries == {(0, 0): (1, ("g0_0_0",))}

    def test_one_line(self, chart_6_12):
        ones = {t: chart_6_12.dim((1, t)) for t in range(13)}
        assert ones == {t: (1 if t in (1, 2, 4, 8) else 0) for t in range(13)}

    def test_h0_tower(self):
        res = minimal_resolution(12, 12)
        chart = res.chart()
        assert all(chart.dim((s, s)) == 1 for s in range(13))
        assert chart.labels((1, 1)) == ("h0",)

    def test_minimality(self, res_6_12):
        for s in range(1, res_6_12.max_s + 1):
            for terms in res_6_12.diffs[s]:
                assert terms
                for _tgt, exps in terms:
                    assert exps != ()

    def test_exactness_ledger(self, res_6_12):
        """rank(d_s) + rank(d_{s+1}) = dim F_{s,t}, rebuilt independently
        with the generic linear algebra."""
        res = res_6_12

        def matrix_of(s, t):
            domain = res.module_basis(s, t)
            codomain = {bm: i for i, bm in enumerate(res.module_basis(s - 1, t))}
            rows = []
            for g, m in domain:
                acc = 0
                for tgt, c in res.diffs[s][g]:
                    for term in steenrod.milnor_product(m, c):
                        acc ^= 1 << codomain[(tgt, term)]
                rows.append(acc)
            return F2Matrix.from_row_bits(rows, max(len(codomain), 1))

        for t in range(res.t_done + 1):
            for s in range(1, res.max_s):
                dim_here = len(res.module_basis(s, t))
                r1 = rank(matrix_of(s, t))
                r2 = rank(matrix_of(s + 1, t))
                assert r1 + r2 == dim_here, (s, t)

    def test_chart_equals_hom_with_zero_differential(self, res_6_12):
        # minimality makes Hom(F, F2) have zero differential, so Ext is
        # just the generator count at each bidegree
        chart = res_6_12.chart()
        for s in range(res_6_12.max_s + 1):
            for t in range(res_6_12.t_done + 1):
                gens = res_6_12.gens_at(s, t)
                assert chart.dim((s, t)) == len(gens)


class TestCobar:
    def test_origin(self):
        assert cobar_ext(2, 4).dim((0, 0)) == 1

    def test_no_primitive_in_degree_3(self):
        assert cobar_ext(1, 3).dim((1, 3)) == 0

    def test_h0_squared(self):
        assert cobar_ext(2, 2).dim((2, 2)) == 1

    def test_oracle_equivalence_small(self):
        window = minimal_resolution(4, 10).chart()
        assert window.dims_equal(cobar_ext(4, 10))


class TestOracleEquivalence:
    def test_full_window(self, chart_6_12):
        assert chart_6_12.dims_equal(cobar_ext(6, 12))


class TestRegrade:
    def test_origin_and_h0(self, chart_6_12):
        pq = crho_chart(chart_6_12)
        assert pq.dim((0, 0)) == 1
        assert pq.dim((1, 1)) == 1  # h0 lands at p = 2t - s = 1

    def test_empty(self):
        assert crho_chart(Chart(("s", "t"))).entries == {}

    def test_total_dimension_preserved(self, chart_6_12):
        assert crho_chart(chart_6_12).total_dim() == chart_6_12.total_dim()

    def test_trigraded_diagonal(self, chart_6_12):
        tri = trigraded_ext_G(chart_6_12)
        assert tri.total_dim() == chart_6_12.total_dim()
        for (s, t, u) in tri.keys():
            assert t == 2 * u
            assert tri.dim((s, t, u)) == chart_6_12.dim((s, u))
        # off-diagonal queries vanish
        assert tri.dim((1, 3, 1)) == 0

    def test_trigraded_empty(self):
        assert trigraded_ext_G(Chart(("s", "t"))).entries == {}


class TestVanishing:
    def test_computed_window_passes(self, chart_6_12):
        assert vanishing_check(crho_chart(chart_6_12)).passed

    def test_injected_negative_weight_fails(self, chart_6_12):
        chart = crho_chart(chart_6_12)
        chart.set((3, -1), 1)
        report = vanishing_check(chart)
        assert not report.passed
        assert "negative weight" in report.first_failure[0]

    def test_origin_dimension(self, chart_6_12):
        assert crho_chart(chart_6_12).dim((0, 0)) == 1


class TestCheckpoint:
    def test_round_trip(self, res_6_12):
        text = res_6_12.to_checkpoint()
        loaded = Resolution.from_checkpoint(text)
        assert loaded.gen_t == res_6_12.gen_t
        assert loaded.diffs == res_6_12.diffs
        assert loaded.t_done == res_6_12.t_done
        assert loaded.to_checkpoint() == text

    def test_resume_matches_uninterrupted(self, res_6_12):
        partial = minimal_resolution(6, 7)
        text = partial.to_checkpoint()
        resumed = minimal_resolution(6, 12, resume=Resolution.from_checkpoint(text))
        assert resumed.to_checkpoint() == res_6_12.to_checkpoint()
        assert resumed.chart() == res_6_12.chart()

    def test_version_mismatch(self):
        with pytest.raises(CheckpointError):
            Resolution.from_checkpoint("ISOCHART-RES v2\nmax_s 3\nt_done 0\n")

    def test_max_s_mismatch(self, res_6_12):
        with pytest.raises(CheckpointError):
            minimal_resolution(
                5, 12, resume=Resolution.from_checkpoint(res_6_12.to_checkpoint())
            )

    def test_truncated_checkpoint(self):
        with pytest.raises(CheckpointError):
            Resolution.from_checkpoint("ISOCHART-RES v1\nmax_s 3\n")


class TestBudget:
    def test_budget_exhaustion_and_resume(self):
        with pytest.raises(BudgetExceeded) as exc:
            minimal_resolution(6, 12, budget_cells=18)  # 3 degrees of 6 cells
        partial = exc.value.resolution
        assert partial.t_done == 3
        resumed = minimal_resolution(6, 12, resume=partial)
        assert resumed.chart() == minimal_resolution(6, 12).chart()


class TestDeterminism:
    def test_worker_count_invariance(self):
        a = minimal_resolution(5, 11, workers=1)
        b = minimal_resolution(5, 11, workers=4)
        assert a.to_checkpoint() == b.to_checkpoint()
        assert a.chart().to_tsv() == b.chart().to_tsv()


def test_golden_chart_regression():
    golden = Chart.from_tsv(GOLDEN.read_text())
    fresh = minimal_resolution(6, 12).chart()
    for (s, t), dim, labels in fresh.items():
        assert golden.dim((s, t)) == dim
        assert golden.labels((s, t)) == labels
