"""Orchestrated verification suite replaying every identity the package
implements, on a built-in corpus of desk-scale graphs.

quick scope: K2, P3, P4, C3, C4, C5, K4 minus an edge, K4.
full scope:  every connected graph on at most 5 vertices (heavy moment-system
checks are limited to graphs within the signing budget).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from . import digraphs, means, spectrum, walks
from .graphs import (
    Graph,
    all_connected_graphs,
    complete_graph,
    connected_subgraph_census,
    cycle_graph,
    parse_graph,
    path_graph,
)
from .signed import all_positive, char_poly_exact
from .algebra import poly_eval

SAMPLE_POINTS = (3.0, -3.0, 2.5, -2.5, 1.7, -1.7, 0.3)
FULL_SCOPE_PIPELINE_EDGE_LIMIT = 8


class _PipelineCache:
    """Per-suite-run memo for the expensive moment-system solves, so the
    check groups can share results without any cross-run state."""

    def __init__(self):
        self._charpoly = {}
        self._beta = {}

    def charpoly(self, g, k):
        key = (g, k)
        if key not in self._charpoly:
            self._charpoly[key] = spectrum.char_poly_power(g, k)
        return self._charpoly[key]

    def beta(self, g):
        if g not in self._beta:
            self._beta[g] = spectrum.beta(g)
        return self._beta[g]


def quick_corpus():
    k4_minus_e = Graph(4, tuple(e for e in complete_graph(4).edges if e != (2, 3)))
    return [
        path_graph(2),
        path_graph(3),
        path_graph(4),
        cycle_graph(3),
        cycle_graph(4),
        cycle_graph(5),
        k4_minus_e,
        complete_graph(4),
    ]


def full_corpus():
    graphs = []
    for n in range(1, 6):
        graphs.extend(all_connected_graphs(n))
    return graphs


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str  # "pass", "fail", "skipped"
    detail: str
    elapsed_ms: float


@dataclass(frozen=True)
class VerifyReport:
    checks: tuple

    @property
    def ok(self):
        return all(c.status != "fail" for c in self.checks)

    def summary(self):
        counts = {"pass": 0, "fail": 0, "skipped": 0}
        for c in self.checks:
            counts[c.status] += 1
        return counts


def _check_walk_methods(seeds, ctx, max_d=10):
    for g in seeds:
        dp = walks.parity_closed_profile(g, max_d, method="dp")
        mean = walks.parity_closed_profile(g, max_d, method="signed_mean")
        if dp != mean:
            return "fail", f"method mismatch on {g}: {dp} vs {mean}"
        for d in range(1, max_d + 1, 2):
            if dp[d] != 0:
                return "fail", f"odd-length count {dp[d]} at d={d} on {g}"
        if g.is_tree() or g.is_forest():
            closed = walks.closed_walk_profile(g, max_d)
            if dp != closed:
                return "fail", f"tree closed/parity mismatch on {g}"
    return "pass", f"{len(seeds)} graphs, d <= {max_d}"


def _check_decomposition(seeds, ctx, max_d=10):
    for g in seeds:
        profile = walks.parity_closed_profile(g, max_d)
        for d in range(2, max_d + 1, 2):
            total = 0
            if g.m:
                census = connected_subgraph_census(g, min(d // 2, g.m))
                for motif, count in census.entries:
                    total += (
                        walks.covering_parity_profile(motif.graph, d)[d] * count
                    )
            if total != profile[d]:
                return "fail", f"decomposition off at d={d} on {g}"
    return "pass", f"{len(seeds)} graphs, even d <= {max_d}"


def _synthetic_digraphs():
    return [
        digraphs.Multidigraph(2, (((0, 1), 1), ((1, 0), 1))),
        digraphs.Multidigraph(3, (((0, 1), 1), ((1, 2), 1), ((2, 0), 1))),
        digraphs.Multidigraph(2, (((0, 1), 2), ((1, 0), 2))),
    ]


def _corpus_digraphs(seeds, max_vertices=4, max_arcs=10, max_per_motif=6):
    """Eulerian digraph structures taken from seed motifs."""
    out = []
    seen = set()
    for g in seeds:
        if g.m == 0:
            continue
        census = connected_subgraph_census(g, min(3, g.m))
        for motif, _ in census.entries:
            if motif.v_count > max_vertices or motif.certificate in seen:
                continue
            seen.add(motif.certificate)
            found = 0
            for ell in range(motif.e_count, motif.e_count + 2):
                for d in digraphs.eulerian_structures_on(motif.graph, ell):
                    if d.arc_count <= max_arcs and found < max_per_motif:
                        out.append(d)
                        found += 1
    return out


def _check_best_theorem(seeds, ctx):
    cases = _synthetic_digraphs() + _corpus_digraphs(seeds)
    for d in cases:
        formula = digraphs.eulerian_walk_count(d, method="best")
        brute = digraphs.eulerian_walk_count(d, method="brute")
        if formula != brute:
            return "fail", f"BEST {formula} != brute {brute} on {d.arcs}"
    two_cycle, triangle = cases[0], cases[1]
    if digraphs.eulerian_walk_count(two_cycle) != 2:
        return "fail", "2-cycle should have 2 Eulerian walks"
    if digraphs.eulerian_walk_count(triangle) != 3:
        return "fail", "directed triangle should have 3 Eulerian walks"
    return "pass", f"{len(cases)} digraphs"


def _liftable(dstar):
    mult = dstar.multiplicity_map()
    return all(
        (mult.get((i, j), 0) + mult.get((j, i), 0)) % 2 == 0
        for i, j in dstar.support_edges()
    )


def _check_tree_reduction(seeds, ctx):
    doubled_triangle = digraphs.Multidigraph(
        3, (((0, 1), 2), ((1, 2), 2), ((2, 0), 2))
    )
    cases = [d for d in _synthetic_digraphs() if _liftable(d)]
    cases.append(doubled_triangle)
    cases.extend(d for d in _corpus_digraphs(seeds) if _liftable(d))
    count = 0
    for dstar in cases:
        for k in (3, 4, 5):
            report = digraphs.spanning_tree_reduction_check(dstar, k)
            if not report.ok:
                return "fail", (
                    f"t(D) {report.t_direct} != formula {report.t_formula} "
                    f"for k={k} on {dstar.arcs}"
                )
            count += 1
    return "pass", f"{count} lift identities"


def _check_trace_formula(_seeds, _ctx):
    from .graphs import power_hypergraph

    k2 = path_graph(2)
    h = power_hypergraph(k2, 3)
    expected = [Fraction(0), Fraction(0), Fraction(9), Fraction(0), Fraction(0), Fraction(9)]
    for d in range(1, 7):
        direct = digraphs.naive_tensor_trace(h, d)
        closed = spectrum.script_S(k2, d, 3)
        if direct != expected[d - 1] or direct != closed:
            return "fail", f"trace mismatch at d={d}: {direct} vs {closed}"
    p3 = path_graph(3)
    hp = power_hypergraph(p3, 3)
    for d in (3, 6):
        direct = digraphs.naive_tensor_trace(hp, d)
        closed = spectrum.script_S(p3, d, 3)
        if direct != closed:
            return "fail", f"path trace mismatch at d={d}: {direct} vs {closed}"
    return "pass", "K2 d=1..6 and P3 d=3,6 at k=3"


def _check_multiplicities(seeds, ctx, ks=(3,)):
    checked = 0
    for g in seeds:
        if not g.is_connected() or g.m == 0:
            continue
        for k in ks:
            fsf = ctx.charpoly(g, k)
            expected = (g.n + (k - 2) * g.m) * (k - 1) ** (
                g.n + (k - 2) * g.m - 1
            )
            if fsf.total_degree() != expected:
                return "fail", f"degree identity broken on {g} at k={k}"
            if any(f.mu < 0 or f.residual > spectrum.RESIDUAL_GATE for f in fsf.factors):
                return "fail", f"bad multiplicity on {g} at k={k}"
            checked += 1
    return "pass", f"{checked} (graph, k) systems"


def _check_radius_multiplicity(seeds, ctx, ks=(3, 4)):
    checked = 0
    for g in seeds:
        if not g.is_connected() or g.m == 0:
            continue
        for k in ks:
            fsf = ctx.charpoly(g, k)
            formula = spectrum.spectral_radius_multiplicity(g, k)
            pipeline = spectrum.radius_cluster_exponent(fsf, g)
            if formula != pipeline:
                return "fail", (
                    f"radius multiplicity {pipeline} != formula {formula} "
                    f"on {g} at k={k}"
                )
            checked += 1
    return "pass", f"{checked} (graph, k) cross-checks"


def _check_beta_geometric_mean(seeds, ctx):
    checked = 0
    for g in seeds:
        if g.m == 0:
            continue
        fsf = ctx.beta(g)
        for x in SAMPLE_POINTS:
            gm = means.geometric_mean_evaluate(g, x)
            if gm == 0.0:
                continue  # lands on a root of some signing; identity is 0=0
            bv = fsf.evaluate_abs(x)
            if abs(gm - bv) > 1e-9 * max(1.0, abs(bv)):
                return "fail", f"geometric mean off at {x} on {g}: {gm} vs {bv}"
            checked += 1
    return "pass", f"{checked} evaluations"


def _check_beta_cycle_identity(_seeds, ctx):
    # beta is complex inside the spectral disk (fractional exponents on
    # negative bases), so the identity is compared on absolute values
    for n in range(3, 7):
        g = cycle_graph(n)
        fsf = ctx.beta(g)
        phi = char_poly_exact(all_positive(g))
        for x in SAMPLE_POINTS:
            lhs = fsf.evaluate_abs(x) ** 2
            rhs = abs(poly_eval(phi, Fraction(x) ** 2 - 2))
            if abs(lhs - rhs) > 1e-9 * max(1.0, abs(rhs)):
                return "fail", f"cycle identity off for C{n} at {x}"
    return "pass", "C3..C6 at the sample points, absolute values"


def _check_beta_forest(seeds, ctx):
    for g in seeds:
        if g.m == 0:
            continue
        fsf = ctx.beta(g)
        integral = all(
            isinstance(f.mu, int) or Fraction(f.mu).denominator == 1
            for f in fsf.factors
        ) and Fraction(fsf.mu0).denominator == 1
        if integral != g.is_forest():
            return "fail", f"beta polynomiality mismatch on {g}"
        if g.is_forest():
            phi = char_poly_exact(all_positive(g))
            alpha = means.matching_polynomial(g)
            if [Fraction(c) for c in phi] != alpha:
                return "fail", f"forest beta should equal matching polynomial on {g}"
    return "pass", f"{len(seeds)} graphs"


def _check_beta_radius_exponent(seeds, ctx):
    for g in seeds:
        if not g.is_connected() or g.m == 0:
            continue
        fsf = ctx.beta(g)
        expected = Fraction(1, 2 ** (g.m - g.n + 1))
        actual = Fraction(spectrum.radius_cluster_exponent(fsf, g))
        if actual != expected:
            return "fail", f"rho exponent {actual} != {expected} on {g}"
    return "pass", f"{len(seeds)} graphs"


def _check_godsil_gutman(seeds, ctx):
    for g in seeds:
        direct = means.matching_polynomial(g, method="direct")
        mean = means.matching_polynomial(g, method="signed_mean")
        if direct != mean:
            return "fail", f"matching polynomial mismatch on {g}"
    c3 = cycle_graph(3)
    if means.matching_polynomial(c3) != [Fraction(0), Fraction(-3), Fraction(0), Fraction(1)]:
        return "fail", "C3 matching polynomial should be x^3 - 3x"
    return "pass", f"{len(seeds)} graphs, coefficient-exact"


def _check_amgm(seeds, ctx):
    results = {"pass": 0, "skipped": 0}
    for g in seeds:
        if g.m == 0:
            continue
        for x in SAMPLE_POINTS:
            report = means.amgm_check(g, x)
            if report.status == "fail":
                return "fail", f"AM-GM failed at {x} on {g}: {report.detail}"
            results[report.status] += 1
    return "pass", f"{results['pass']} comparisons, {results['skipped']} skipped"


def _check_radius_convergence(_seeds, _ctx, k=3, ell=30):
    for g in (path_graph(2), path_graph(3), cycle_graph(3)):
        ratio = spectrum.convergence_ratio(g, k, ell)
        target = spectrum.radius_total_multiplicity(g, k)
        if abs(ratio - target) > 0.05 * target:
            return "fail", f"ratio {ratio} not within 5% of {target} on {g}"
    return "pass", f"K2, P3, C3 at ell={ell}"


CHECKS = (
    ("walks/methods-agree", _check_walk_methods),
    ("walks/decomposition", _check_decomposition),
    ("digraphs/best-vs-brute", _check_best_theorem),
    ("digraphs/tree-reduction", _check_tree_reduction),
    ("oracle/trace-formula", _check_trace_formula),
    ("spectrum/multiplicities", _check_multiplicities),
    ("spectrum/radius-multiplicity", _check_radius_multiplicity),
    ("beta/geometric-mean", _check_beta_geometric_mean),
    ("beta/cycle-identity", _check_beta_cycle_identity),
    ("beta/forest-polynomiality", _check_beta_forest),
    ("beta/radius-exponent", _check_beta_radius_exponent),
    ("means/godsil-gutman", _check_godsil_gutman),
    ("means/am-gm", _check_amgm),
    ("walks/radius-convergence", _check_radius_convergence),
)


def run_verify_suite(scope="quick", seed_graphs=None):
    """Run every check group and collect a VerifyReport.

    seed_graphs (parsed Graphs or parse_graph strings) replaces the corpus;
    synthetic digraph cases run regardless of the seeds.
    """
    if scope not in ("quick", "full"):
        raise ValueError(f"unknown scope {scope!r}")
    if seed_graphs is not None:
        seeds = [
            parse_graph(s) if isinstance(s, str) else s for s in seed_graphs
        ]
    else:
        seeds = quick_corpus() if scope == "quick" else full_corpus()
    heavy_seeds = [g for g in seeds if g.m <= FULL_SCOPE_PIPELINE_EDGE_LIMIT]

    ctx = _PipelineCache()
    results = []
    for name, fn in CHECKS:
        chosen = seeds
        if scope == "full" and name.startswith(("spectrum/", "beta/")):
            chosen = heavy_seeds
        start = time.perf_counter()
        try:
            status, detail = fn(chosen, ctx)
        except Exception as exc:  # noqa: BLE001 - verification must not abort
            status, detail = "fail", f"{type(exc).__name__}: {exc}"
        elapsed = (time.perf_counter() - start) * 1000.0
        results.append(CheckResult(name, status, detail, elapsed))
    return VerifyReport(tuple(results))
