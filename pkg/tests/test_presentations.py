import random

import pytest

from isochart import presentations as pr
from isochart.presentations import BuiltinAlgebra as B


@pytest.fixture(scope="module")
def hz():
    return pr.build_algebra(B.HZ_ISO, 20)


@pytest.fixture(scope="module")
def a_iso():
    return pr.build_algebra(B.A_ISO, 20)


class TestBuiltins:
    def test_generator_degrees(self, hz):
        assert hz.bidegrees[hz.index("rho")] == (-1, -1)
        assert hz.bidegrees[hz.index("r0")] == (1, 0)
        assert hz.bidegrees[hz.index("r2")] == (7, 3)

    def test_a_iso_degrees(self, a_iso):
        assert a_iso.bidegrees[a_iso.index("tau1")] == (3, 1)
        assert a_iso.bidegrees[a_iso.index("xi1")] == (2, 1)
        assert a_iso.bidegrees[a_iso.index("xi2")] == (6, 3)

    def test_rules_homogeneous(self, a_iso):
        for gi, rhs in a_iso.rules.items():
            lhs = [0] * len(a_iso.names)
            lhs[gi] = 2
            want = a_iso.monomial_bidegree(tuple(lhs))
            for m in rhs:
                assert a_iso.monomial_bidegree(m) == want


class TestNormalForm:
    def test_r0_squared(self, hz):
        nf = pr.normal_form(hz, frozenset({hz.monomial({"r0": 2})}))
        assert nf == frozenset({hz.monomial({"rho": 1, "r1": 1})})

    def test_already_normal(self, hz):
        m = frozenset({hz.monomial({"rho": 1, "r0": 1})})
        assert pr.normal_form(hz, m) == m

    def test_r0_fourth_power(self, hz):
        nf = pr.normal_form(hz, frozenset({hz.monomial({"r0": 4})}))
        assert nf == frozenset({hz.monomial({"rho": 3, "r2": 1})})

    def test_tau_rule(self, a_iso):
        nf = pr.normal_form(a_iso, frozenset({a_iso.monomial({"tau0": 2})}))
        assert nf == frozenset(
            {
                a_iso.monomial({"rho": 1, "tau1": 1}),
                a_iso.monomial({"rho": 1, "r0": 1, "xi1": 1}),
                a_iso.monomial({"rho": 1, "tau0": 1, "xi1": 1}),
            }
        )

    def test_preserves_bidegree(self, hz):
        rng = random.Random(3)
        for _ in range(50):
            m = pr._sample_monomial(hz, rng)
            before = hz.monomial_bidegree(m)
            for nm in pr.normal_form(hz, frozenset({m})):
                assert hz.monomial_bidegree(nm) == before

    def test_truncation_error(self, hz):
        top = max(i for i in hz.frontier)
        bad = [0] * len(hz.names)
        bad[top] = 2
        with pytest.raises(pr.TruncationError):
            pr.normal_form(hz, frozenset({tuple(bad)}))

    def test_termination_bound_is_respected(self, a_iso):
        # worst case in the sampler: full exponents everywhere
        rng = random.Random(9)
        for _ in range(20):
            m = pr._sample_monomial(a_iso, rng)
            pr.normal_form(a_iso, frozenset({m}))  # must not raise AssertionError


class TestHilbert:
    def test_unit(self, hz):
        assert pr.hilbert_dim(hz, 0, 0) == 1

    def test_rho(self, hz):
        assert pr.hilbert_dim(hz, -1, -1) == 1

    def test_r0_squared_slot(self, hz):
        basis = pr.hilbert_basis(hz, 2, 0)
        assert [hz.format_monomial(m) for m in basis] == ["rho*r1"]

    def test_window_error(self, hz):
        with pytest.raises(pr.WindowError):
            pr.hilbert_dim(hz, 25, 0)

    def test_dims_bounded_by_one_for_hz(self, hz):
        # free over F2[rho] on squarefree classes: every bidegree is 0/1
        for (p, q) in pr.window_bidegrees(16):
            assert pr.hilbert_dim(hz, p, q) in (0, 1)


class TestSuites:
    def test_free_basis_window_20(self):
        assert pr.verify_free_basis_over_mbp(20).passed

    def test_tau_image(self):
        report = pr.tau_image_check(20)
        assert report.passed

    def test_pure_quotient_hz(self):
        chart = pr.pure_quotient_dims(B.HZ_ISO, 12)
        assert chart.dim((0, 0)) == 1
        assert chart.dim((-2, -2)) == 1
        assert chart.dim((1, 0)) == 0
        assert all(p == q and p <= 0 for (p, q) in chart.keys())

    def test_pure_quotient_a_iso_contains_unit(self):
        chart = pr.pure_quotient_dims(B.A_ISO, 10)
        assert chart.dim((0, 0)) == 1
        # tau0 and rho*xi1 survive the quotient, r0 does not
        assert chart.dim((1, 0)) == 2
        quotient = pr.pure_quotient_algebra(B.A_ISO, 10)
        names = {quotient.format_monomial(m) for m in pr.hilbert_basis(quotient, 1, 0)}
        assert names == {"tau0", "rho*xi1"}

    def test_confluence_small(self):
        assert pr.confluence_report(window=20, samples=120, seed=5).passed

    def test_retract_and_full_suite(self):
        report = pr.presentations_suite(window=14, samples=60, seed=2)
        assert report.passed, report.first_failure
