import pytest

from hyperspectra.errors import BudgetError
from hyperspectra.graphs import (
    Graph,
    complete_graph,
    connected_subgraph_census,
    cycle_graph,
    parse_graph,
    path_graph,
)
from hyperspectra.walks import (
    closed_walk_count,
    closed_walk_profile,
    covering_parity_closed_by_subsets,
    covering_parity_closed_count,
    covering_parity_profile,
    parity_closed_count,
    parity_closed_profile,
)

K2 = path_graph(2)
P3 = path_graph(3)
C3 = cycle_graph(3)


class TestParityClosed:
    def test_length_two_is_twice_edges(self, small_corpus):
        for g in small_corpus:
            assert parity_closed_count(g, 2).value == 2 * g.m

    def test_cycle3_odd_is_zero(self):
        assert parity_closed_count(C3, 3).value == 0

    def test_cycle3_length4(self):
        assert parity_closed_count(C3, 4).value == 18
        assert parity_closed_count(C3, 4, method="signed_mean").value == 18

    def test_path3_length4(self):
        assert parity_closed_count(P3, 4).value == 8

    def test_methods_agree(self, small_corpus):
        for g in small_corpus:
            assert parity_closed_profile(g, 8) == parity_closed_profile(
                g, 8, method="signed_mean"
            )

    def test_odd_lengths_vanish(self, small_corpus):
        for g in small_corpus:
            profile = parity_closed_profile(g, 9)
            assert all(profile[d] == 0 for d in range(1, 10, 2))

    def test_trees_parity_equals_closed(self, small_corpus):
        for g in small_corpus:
            if not g.is_forest():
                continue
            assert parity_closed_profile(g, 8) == closed_walk_profile(g, 8)

    def test_length_zero(self):
        assert parity_closed_count(C3, 0).value == 3

    def test_dp_budget(self):
        wide = Graph(26, tuple((0, i) for i in range(1, 26)))
        with pytest.raises(BudgetError):
            parity_closed_count(wide, 2)

    def test_signed_mean_budget(self):
        wide = Graph(22, tuple((0, i) for i in range(1, 22)))
        with pytest.raises(BudgetError):
            parity_closed_count(wide, 2, method="signed_mean")


class TestClosedWalks:
    def test_k2(self):
        assert closed_walk_count(K2, 4).value == 2

    def test_cycle3(self):
        # eigenvalues 2, -1, -1
        assert closed_walk_count(C3, 4).value == 18

    def test_path3(self):
        # eigenvalues +-sqrt(2), 0
        assert closed_walk_count(P3, 4).value == 8


class TestCovering:
    def test_k2_back_and_forth(self):
        assert covering_parity_closed_count(K2, 2).value == 2

    def test_path3_length4(self):
        assert covering_parity_closed_count(P3, 4).value == 4

    def test_cycle3_too_short(self):
        assert covering_parity_closed_count(C3, 4).value == 0

    def test_zero_below_twice_edges(self, small_corpus):
        for g in small_corpus:
            if g.m == 0 or not g.is_connected():
                continue
            for d in range(0, 2 * g.m):
                assert covering_parity_closed_count(g, d).value == 0

    def test_matches_inclusion_exclusion(self, small_corpus):
        for g in small_corpus:
            if g.m == 0 or g.m > 4 or not g.is_connected():
                continue
            for d in range(0, 9):
                assert (
                    covering_parity_closed_count(g, d).value
                    == covering_parity_closed_by_subsets(g, d).value
                )

    def test_disconnected_rejected(self):
        disconnected = Graph(4, ((0, 1), (2, 3)))
        with pytest.raises(ValueError):
            covering_parity_closed_count(disconnected, 4)


class TestDecomposition:
    def test_parity_decomposes_over_motifs(self, small_corpus):
        # parity-closed walks split by covered support: P_d equals the sum of
        # covering counts weighted by motif occurrence numbers
        for g in small_corpus:
            profile = parity_closed_profile(g, 10)
            for d in range(2, 11, 2):
                total = 0
                if g.m:
                    census = connected_subgraph_census(g, min(d // 2, g.m))
                    for motif, count in census.entries:
                        total += covering_parity_profile(motif.graph, d)[d] * count
                assert total == profile[d], (g, d)

    def test_cycle3_length6_value(self):
        # every closed 6-walk in a triangle is parity-closed
        assert parity_closed_count(C3, 6).value == closed_walk_count(C3, 6).value == 66

    def test_profile_matches_per_length_counts(self):
        profile = parity_closed_profile(complete_graph(4), 6)
        for d in (0, 2, 4, 6):
            assert profile[d] == parity_closed_count(complete_graph(4), d).value


def test_inline_parse_roundtrip():
    g = parse_graph("4 2\n0 1\n2 3")
    assert parity_closed_count(g, 2).value == 4
