import math

import pytest

from hyperspectra.algebra import power_sums_from_charpoly
from hyperspectra.errors import ClusterAmbiguityError
from hyperspectra.graphs import Graph, complete_graph, cycle_graph, path_graph
from hyperspectra.signed import (
    SignedGraph,
    all_positive,
    char_poly_exact,
    eigenvalues,
    enumerate_signings,
    is_balanced,
    sigma_set,
    signed_spectral_moment,
    spanning_forest_edges,
    spectral_radius,
)

K2 = path_graph(2)
P3 = path_graph(3)
C3 = cycle_graph(3)


class TestSignings:
    def test_single_edge(self):
        assert len(enumerate_signings(K2)) == 2

    def test_cycle3_switching_classes(self):
        reps = enumerate_signings(C3, up_to_switching=True)
        assert len(reps) == 2
        # the two classes are told apart by their spectra, and together they
        # partition all 8 signings
        rep_polys = {tuple(char_poly_exact(sg)) for sg in reps}
        all_polys = [tuple(char_poly_exact(sg)) for sg in enumerate_signings(C3)]
        assert set(all_polys) == rep_polys
        assert len(rep_polys) == 2

    def test_tree_has_one_class(self):
        assert len(enumerate_signings(P3, up_to_switching=True)) == 1

    def test_class_count_formula(self, small_corpus):
        for g in small_corpus:
            if g.m == 0:
                continue
            reps = enumerate_signings(g, up_to_switching=True)
            assert len(reps) == 2 ** (g.m - g.n + 1)  # connected corpus

    def test_representatives_have_distinct_cycle_sign_vectors(self, small_corpus):
        # fundamental cycle sign products, as a vector over the fixed basis
        for g in small_corpus:
            if g.m == 0:
                continue
            tree = spanning_forest_edges(g)
            free = [i for i in range(g.m) if i not in tree]
            vectors = set()
            for rep in enumerate_signings(g, up_to_switching=True):
                vectors.add(tuple(rep.signs[i] for i in free))
            assert len(vectors) == 2 ** len(free)


class TestCharPoly:
    def test_k2(self):
        assert char_poly_exact(all_positive(K2)) == [-1, 0, 1]

    def test_cycle3_balanced(self):
        assert char_poly_exact(all_positive(C3)) == [-2, -3, 0, 1]

    def test_cycle3_unbalanced(self):
        sg = SignedGraph(C3, (-1, 1, 1))
        assert char_poly_exact(sg) == [2, -3, 0, 1]

    def test_monic_and_degree(self, small_corpus):
        for g in small_corpus:
            poly = char_poly_exact(all_positive(g))
            assert len(poly) == g.n + 1
            assert poly[-1] == 1

    def test_newton_identities_reproduce_moments(self, small_corpus):
        for g in small_corpus:
            for sg in enumerate_signings(g, up_to_switching=True):
                poly = char_poly_exact(sg)
                sums = power_sums_from_charpoly(poly, 2 * g.n)
                for d in range(2 * g.n + 1):
                    assert sums[d] == signed_spectral_moment(sg, d)


class TestEigenvalues:
    def test_cycle3_balanced(self):
        eigs = eigenvalues(all_positive(C3)).eigenvalues
        assert eigs == pytest.approx((2.0, -1.0, -1.0), abs=1e-9)

    def test_cycle3_unbalanced_matches_cosine_form(self):
        # 2 cos((2i-1) pi / 3) for i = 1..3, sorted descending
        eigs = eigenvalues(SignedGraph(C3, (-1, 1, 1))).eigenvalues
        expected = sorted(
            (2 * math.cos((2 * i - 1) * math.pi / 3) for i in (1, 2, 3)),
            reverse=True,
        )
        assert eigs == pytest.approx(tuple(expected), abs=1e-9)

    def test_k2(self):
        assert eigenvalues(all_positive(K2)).eigenvalues == pytest.approx(
            (1.0, -1.0), abs=1e-12
        )

    def test_residual_bound_reported(self):
        spec = eigenvalues(all_positive(complete_graph(5)))
        assert spec.residual_bound <= 1e-9

    def test_switching_invariance(self, small_corpus):
        for g in small_corpus:
            if g.m == 0 or g.n > 4:
                continue
            sg = SignedGraph(g, tuple(-1 if i % 2 else 1 for i in range(g.m)))
            for diag_bits in range(1 << g.n):
                diagonal = [1 if diag_bits >> i & 1 else -1 for i in range(g.n)]
                switched = sg.switched(diagonal)
                assert char_poly_exact(switched) == char_poly_exact(sg)


class TestMoments:
    def test_cycle3(self):
        assert signed_spectral_moment(all_positive(C3), 3) == 6
        assert signed_spectral_moment(SignedGraph(C3, (-1, 1, 1)), 3) == -6

    def test_order_zero(self, small_corpus):
        for g in small_corpus:
            assert signed_spectral_moment(all_positive(g), 0) == g.n


class TestBalance:
    def test_all_positive_cycle(self):
        assert is_balanced(all_positive(C3))

    def test_one_negative_edge(self):
        assert not is_balanced(SignedGraph(C3, (-1, 1, 1)))

    def test_trees_always_balanced(self, small_corpus):
        for g in small_corpus:
            if not g.is_forest() or g.m == 0:
                continue
            for sg in enumerate_signings(g):
                assert is_balanced(sg)

    def test_balance_matches_switching_class_of_all_positive(self):
        for sg in enumerate_signings(C3):
            assert is_balanced(sg) == (
                char_poly_exact(sg) == char_poly_exact(all_positive(C3))
            )


class TestRadiusLemma:
    def test_signed_radius_never_exceeds_unsigned(self, small_corpus):
        # and it is attained at +-rho exactly on the balanced / negated-
        # balanced switching classes
        for g in small_corpus:
            if g.m == 0 or not g.is_connected():
                continue
            rho = spectral_radius(g)
            for sg in enumerate_signings(g):
                eigs = eigenvalues(sg).eigenvalues
                assert max(abs(x) for x in eigs) <= rho + 1e-8
                hits_top = abs(max(eigs) - rho) <= 1e-8
                assert hits_top == is_balanced(sg)
                hits_bottom = abs(min(eigs) + rho) <= 1e-8
                assert hits_bottom == is_balanced(sg.negated())


class TestSigmaSet:
    def test_k2(self):
        assert sigma_set(K2).values == pytest.approx((1.0,), abs=1e-9)

    def test_cycle3(self):
        assert sigma_set(C3).values == pytest.approx((1.0, 2.0, 4.0), abs=1e-9)

    def test_path3(self):
        assert sigma_set(P3).values == pytest.approx((1.0, 2.0), abs=1e-9)

    def test_cycle3_induced_mode_drops_p3(self):
        values = sigma_set(C3, mode="induced_subgraphs").values
        assert values == pytest.approx((1.0, 4.0), abs=1e-9)

    def test_provenance_witnesses_reproduce_values(self):
        sigma = sigma_set(complete_graph(4))
        for value, witness in zip(sigma.values, sigma.provenance):
            assert witness.eigenvalue**2 == pytest.approx(value, rel=1e-9)
            spec = eigenvalues(SignedGraph(witness.subgraph, witness.signs))
            assert min(abs(e - witness.eigenvalue) for e in spec.eigenvalues) < 1e-9

    def test_every_subgraph_eigenvalue_lands_in_a_cluster(self):
        sigma = sigma_set(complete_graph(4))
        from hyperspectra.graphs import connected_subgraph_census

        g = complete_graph(4)
        census = connected_subgraph_census(g, g.m)
        for motif, _ in census.entries:
            for sg in enumerate_signings(motif.graph, up_to_switching=True):
                for lam in eigenvalues(sg).eigenvalues:
                    if lam * lam > sigma.tolerance:
                        sigma.index_of(lam * lam)  # raises if unmatched

    def test_ambiguity_detected(self):
        with pytest.raises(ClusterAmbiguityError):
            sigma_set(C3, tol=0.2)

    def test_empty_graph(self):
        assert len(sigma_set(Graph(3, ()))) == 0
