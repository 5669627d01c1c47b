"""Acceptance suite: the exit criteria, one test per criterion.

Run with `pytest tests/test_acceptance.py -s` to see one pass/fail line
per criterion.  Every tolerance is exact; the only non-exact bounds are
the stated wall-clock limits.
"""

import time
from pathlib import Path

import pytest

from isochart import bpbp, deformation, presentations, steenrod
from isochart.charts import Chart
from isochart.cli import main
from isochart.ext import cobar_ext, crho_chart, minimal_resolution, vanishing_check

DATA = Path(__file__).resolve().parents[1] / "src" / "isochart" / "data"
DIFFERENTIALS = DATA / "adams_differentials_stem20.txt"


def conclude(number: int, description: str, ok: bool, detail: str = ""):
    status = "PASS" if ok else "FAIL"
    suffix = f"  [{detail}]" if detail else ""
    print(f"{status} criterion {number}: {description}{suffix}")
    assert ok, f"criterion {number}: {description}{suffix}"


@pytest.fixture(scope="module")
def stem20_charts():
    res = minimal_resolution(12, 32)
    full = res.chart()
    stem = Chart(("s", "t"))
    for (s, t), dim, labels in full.items():
        if t - s <= 20:
            stem.set((s, t), dim, labels)
    return full, stem


def test_criterion_1_oracle_equivalence():
    start = time.perf_counter()
    resolution_chart = minimal_resolution(6, 12).chart()
    cobar_chart = cobar_ext(6, 12)
    elapsed = time.perf_counter() - start
    agree = resolution_chart.dims_equal(cobar_chart)
    conclude(
        1,
        "minimal-resolution chart equals cobar chart for s<=6, t<=12",
        agree and elapsed < 60.0,
        f"{elapsed:.1f}s",
    )


def test_criterion_2_adams_one_line_and_h0_tower():
    chart = minimal_resolution(12, 12).chart()
    oracle = cobar_ext(12, 12)
    one_line_ok = all(
        chart.dim((1, t)) == oracle.dim((1, t)) == (1 if t in (1, 2, 4, 8) else 0)
        for t in range(13)
    )
    tower_ok = all(chart.dim((s, s)) == oracle.dim((s, s)) == 1 for s in range(13))
    conclude(
        2,
        "Ext^{1,t} supported exactly on t in {1,2,4,8} and Ext^{s,s} = 1 for s<=12",
        one_line_ok and tower_ok,
    )


def test_criterion_3_presentation_suite():
    start = time.perf_counter()
    free = presentations.verify_free_basis_over_mbp(20)
    confluence = presentations.confluence_report(window=20, samples=1000, seed=0)
    elapsed = time.perf_counter() - start
    conclude(
        3,
        "Hilbert factorization on |p|+|q| <= 20 and confluence on 1000 monomials",
        free.passed and confluence.passed and elapsed < 10.0,
        f"{elapsed:.1f}s",
    )


def test_criterion_4_cofiber_chart_shape(stem20_charts):
    full, _stem = stem20_charts
    report = vanishing_check(crho_chart(full))
    conclude(
        4,
        "regraded chart vanishes for q < 0 and p > 2q, with dim 1 at (0,0)",
        report.passed,
        "" if report.passed else str(report.first_failure),
    )


def test_criterion_5_smash_binomial_identity(stem20_charts):
    full, _stem = stem20_charts
    crho = crho_chart(full)
    ok = all(deformation.smash_rank_check(crho, n).passed for n in range(1, 5))
    conclude(5, "iterative n-fold smash chart equals binomial closed form, n<=4", ok)


def test_criterion_6_deformation_fibers(tmp_path, capsys):
    start = time.perf_counter()
    code = main([
        "assemble", str(DIFFERENTIALS), "--max-stem", "20", "--max-s", "12",
        "--out", str(tmp_path / "towers.tsv"),
    ])
    elapsed = time.perf_counter() - start
    printed = capsys.readouterr().out
    ok = (
        code == 0
        and "PASS special-fiber" in printed
        and "PASS generic-fiber" in printed
    )
    with capsys.disabled():
        conclude(
            6,
            "bundled differentials through stem 20 pass both fiber checks",
            ok and elapsed < 10.0,
            f"{elapsed:.1f}s",
        )


def test_criterion_7_hopf_algebroid_quotient():
    start = time.perf_counter()
    ctx = bpbp.BPContext(14)
    eta_ok = ctx.right_unit(1) == bpbp.Series(
        14, {((("v", 1), 1),): 1, ((("t", 1), 1),): 2}
    )
    quotient = bpbp.quotient_check(3, 14)
    axioms = bpbp.hopf_axiom_check(3, 14)
    elapsed = time.perf_counter() - start
    conclude(
        7,
        "eta(v1) = v1 + 2 t1; coproducts match the Milnor ones for n<=3; "
        "counit and coassociativity hold at degree bound 14",
        eta_ok and quotient.passed and axioms.passed and elapsed < 30.0,
        f"{elapsed:.1f}s",
    )


def test_criterion_8_colimit_stabilization():
    bound = 14
    top = bpbp.BPContext(bound).max_index
    stabilized = bpbp.pure_isotropic_colimit(top + 1, bound)
    expected = Chart(("d",))
    expected.set((0,), 1)
    shrinking = all(
        bpbp.pure_isotropic_colimit(n, bound).total_dim()
        >= bpbp.pure_isotropic_colimit(n + 1, bound).total_dim()
        for n in range(1, top + 1)
    )
    conclude(
        8,
        "coefficient quotients stabilize to dimension (1, 0, 0, ...) on the window",
        stabilized == expected and shrinking,
    )


def test_criterion_9_determinism(tmp_path, capsys):
    def run_all(tag: str, workers: int):
        base = tmp_path / tag
        base.mkdir()
        assert main(["ext", "6", "12", "--workers", str(workers),
                     "--out", str(base / "ext.tsv"),
                     "--checkpoint", str(base / "ext.ckpt")]) == 0
        assert main(["crho", "6", "12", "--workers", str(workers),
                     "--out", str(base / "crho.tsv")]) == 0
        assert main(["assemble", str(DIFFERENTIALS), "--max-stem", "20",
                     "--out", str(base / "towers.tsv")]) == 0
        return {
            name: (base / name).read_bytes()
            for name in ("ext.tsv", "ext.ckpt", "crho.tsv", "towers.tsv")
        }

    first = run_all("first", 1)
    second = run_all("second", 1)
    wide = run_all("wide", 4)
    capsys.readouterr()
    with capsys.disabled():
        conclude(
            9,
            "repeated runs and worker counts 1 vs 4 give bit-identical artifacts",
            first == second == wide,
        )
