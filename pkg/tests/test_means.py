import math
from fractions import Fraction

import pytest

from hyperspectra.algebra import poly_eval
from hyperspectra.graphs import cycle_graph, path_graph
from hyperspectra.means import (
    amgm_check,
    geometric_mean_evaluate,
    matching_polynomial,
    matchings_by_size,
)
from hyperspectra.signed import all_positive, char_poly_exact
from hyperspectra.spectrum import beta

K2 = path_graph(2)
P3 = path_graph(3)
C3 = cycle_graph(3)

SAMPLE_POINTS = (3.0, -3.0, 2.5, -2.5, 1.7, -1.7, 0.3)


class TestMatchingPolynomial:
    def test_k2(self):
        assert matching_polynomial(K2) == [Fraction(-1), Fraction(0), Fraction(1)]

    def test_cycle3(self):
        assert matching_polynomial(C3) == [
            Fraction(0),
            Fraction(-3),
            Fraction(0),
            Fraction(1),
        ]

    def test_path3(self):
        assert matching_polynomial(P3) == [
            Fraction(0),
            Fraction(-2),
            Fraction(0),
            Fraction(1),
        ]

    def test_matching_counts(self):
        assert matchings_by_size(C3) == [1, 3]
        assert matchings_by_size(cycle_graph(4)) == [1, 4, 2]

    def test_mean_identity_exact(self, small_corpus):
        for g in small_corpus:
            assert matching_polynomial(g, "direct") == matching_polynomial(
                g, "signed_mean"
            ), g

    def test_forest_matching_equals_char_poly(self, small_corpus):
        for g in small_corpus:
            if not g.is_forest():
                continue
            phi = [Fraction(c) for c in char_poly_exact(all_positive(g))]
            assert matching_polynomial(g) == phi


class TestGeometricMean:
    def test_cycle3_at_3(self):
        assert geometric_mean_evaluate(C3, 3.0) == pytest.approx(
            8 * math.sqrt(5), rel=1e-12
        )

    def test_k2_at_2(self):
        assert geometric_mean_evaluate(K2, 2.0) == pytest.approx(3.0, rel=1e-12)

    def test_path3_at_2(self):
        assert geometric_mean_evaluate(P3, 2.0) == pytest.approx(4.0, rel=1e-12)

    def test_matches_beta_at_sample_points(self, small_corpus):
        for g in small_corpus:
            if g.m == 0:
                continue
            fsf = beta(g)
            for x in SAMPLE_POINTS:
                gm = geometric_mean_evaluate(g, x)
                if gm == 0.0:
                    continue  # x is a root of some signing
                bv = fsf.evaluate_abs(x)
                assert abs(gm - bv) <= 1e-9 * max(1.0, abs(bv)), (g, x)

    def test_exact_zero_at_signing_root(self):
        # 3 is the spectral radius of the all-positive K1,3 star: K1,3 has
        # sqrt(3); use C4 whose balanced signing has eigenvalue 2
        assert geometric_mean_evaluate(cycle_graph(4), 2.0) == 0.0

    def test_edgeless_graph_is_plain_char_poly(self):
        # one signing only, so negative values are fine: lambda^3 at -2
        from hyperspectra.graphs import Graph

        assert geometric_mean_evaluate(Graph(3, ()), -2.0) == -8.0


class TestCycleIdentity:
    def test_beta_squared_equals_shifted_char_poly(self):
        for n in range(3, 7):
            g = cycle_graph(n)
            fsf = beta(g)
            phi = char_poly_exact(all_positive(g))
            for x in SAMPLE_POINTS:
                lhs = fsf.evaluate_abs(x) ** 2
                rhs = abs(poly_eval(phi, Fraction(x) ** 2 - 2))
                assert abs(lhs - rhs) <= 1e-9 * max(1.0, rhs), (n, x)


class TestAmGm:
    def test_cycle3_strict_at_3(self):
        report = amgm_check(C3, 3.0)
        assert report.status == "pass"
        assert report.alpha_value == 18
        assert report.beta_value == pytest.approx(8 * math.sqrt(5), rel=1e-12)
        assert not report.equality

    def test_forest_equality(self):
        report = amgm_check(P3, 2.0)
        assert report.status == "pass"
        assert report.equality

    def test_precondition_unmet_is_skipped(self):
        report = amgm_check(C3, 1.5)
        assert report.status == "skipped"

    def test_never_fails_on_corpus(self, small_corpus):
        for g in small_corpus:
            if g.m == 0:
                continue
            for x in SAMPLE_POINTS:
                report = amgm_check(g, x)
                assert report.status in ("pass", "skipped"), (g, x, report.detail)
                if report.status == "pass":
                    assert float(report.alpha_value) >= report.beta_value - 1e-9
