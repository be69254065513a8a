"""Signed graphs: signing enumeration, exact characteristic polynomials,
numeric spectra, balance, and the clustered set of squared eigenvalues.

The eigensolver is a cyclic Jacobi iteration written out by hand: it is
deterministic, dependency-free, and converges to machine precision on the
small dense symmetric matrices this package works with.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .algebra import mat_identity, mat_mul, mat_trace
from .errors import BudgetError, ClusterAmbiguityError, ConsistencyError
from .graphs import connected_induced_subgraph_classes, connected_subgraph_census

SIGNING_EDGE_LIMIT = 20
DEFAULT_CLUSTER_TOL = 1e-8
JACOBI_SWEEP_LIMIT = 60


@dataclass(frozen=True)
class SignedGraph:
    """A graph together with a +1/-1 sign per edge (aligned with base.edges)."""

    base: object
    signs: tuple

    def __post_init__(self):
        if len(self.signs) != self.base.m:
            raise ValueError("need exactly one sign per edge")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")
        object.__setattr__(self, "signs", tuple(self.signs))

    def matrix(self):
        a = [[0] * self.base.n for _ in range(self.base.n)]
        for s, (u, v) in zip(self.signs, self.base.edges):
            a[u][v] = s
            a[v][u] = s
        return a

    def negated(self):
        return SignedGraph(self.base, tuple(-s for s in self.signs))

    def switched(self, diagonal):
        """Conjugate by a +-1 diagonal: edge {u,v} picks up d_u * d_v."""
        signs = tuple(
            s * diagonal[u] * diagonal[v]
            for s, (u, v) in zip(self.signs, self.base.edges)
        )
        return SignedGraph(self.base, signs)


def all_positive(g):
    return SignedGraph(g, (1,) * g.m)


def enumerate_signings(g, up_to_switching=False):
    """All 2^|E| signings, or one representative per switching class.

    Representatives fix a spanning forest to +1 and vary the remaining
    (cycle-space) edges, giving 2^(|E|-|V|+c) classes for c components.
    """
    if not up_to_switching:
        if g.m > SIGNING_EDGE_LIMIT:
            raise BudgetError(
                f"signing enumeration supports at most {SIGNING_EDGE_LIMIT} edges"
            )
        return [
            SignedGraph(g, signs)
            for signs in itertools.product((1, -1), repeat=g.m)
        ]
    tree = spanning_forest_edges(g)
    free = [i for i in range(g.m) if i not in tree]
    if len(free) > SIGNING_EDGE_LIMIT:
        raise BudgetError(
            f"cycle space dimension {len(free)} exceeds {SIGNING_EDGE_LIMIT}"
        )
    reps = []
    for combo in itertools.product((1, -1), repeat=len(free)):
        signs = [1] * g.m
        for idx, s in zip(free, combo):
            signs[idx] = s
        reps.append(SignedGraph(g, tuple(signs)))
    return reps


def spanning_forest_edges(g):
    """Edge indexes of a BFS spanning forest."""
    index_of = {e: i for i, e in enumerate(g.edges)}
    nbrs = g.neighbors()
    seen = [False] * g.n
    tree = set()
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = True
        queue = [root]
        while queue:
            u = queue.pop(0)
            for w in nbrs[u]:
                if not seen[w]:
                    seen[w] = True
                    tree.add(index_of[(min(u, w), max(u, w))])
                    queue.append(w)
    return tree


def is_balanced(sg):
    """True iff every cycle has positive sign product, via a spanning-tree
    potential assignment."""
    g = sg.base
    sign_of = {}
    for s, (u, v) in zip(sg.signs, g.edges):
        sign_of[(u, v)] = s
    nbrs = g.neighbors()
    potential = [0] * g.n
    for root in range(g.n):
        if potential[root]:
            continue
        potential[root] = 1
        queue = [root]
        while queue:
            u = queue.pop(0)
            for w in nbrs[u]:
                s = sign_of[(min(u, w), max(u, w))]
                if potential[w] == 0:
                    potential[w] = potential[u] * s
                    queue.append(w)
    for s, (u, v) in zip(sg.signs, g.edges):
        if potential[u] * potential[v] != s:
            return False
    return True


# ---------------------------------------------------------------------------
# exact characteristic polynomial and moments


def char_poly_exact(sg):
    """Integer coefficients of det(lambda I - A), ascending degree.

    Faddeev-LeVerrier with integer matrices; the only divisions are the
    trace-by-step ones, which are exact for integer inputs.
    """
    a = sg.matrix()
    n = len(a)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    mat = [row[:] for row in a]
    for j in range(1, n + 1):
        if j > 1:
            shifted = [row[:] for row in prev]
            for i in range(n):
                shifted[i][i] += coeffs[n - j + 1]
            mat = mat_mul(a, shifted)
        tr = mat_trace(mat)
        q, r = divmod(tr, j)
        if r != 0:
            raise ConsistencyError("Faddeev-LeVerrier trace division not exact")
        coeffs[n - j] = -q
        prev = mat
    return coeffs


def signed_spectral_moment(sg, d):
    """Exact trace of the d-th power of the signed adjacency matrix."""
    if d < 0:
        raise ValueError("moment order must be non-negative")
    a = sg.matrix()
    acc = mat_identity(len(a))
    for _ in range(d):
        acc = mat_mul(acc, a)
    return mat_trace(acc)


# ---------------------------------------------------------------------------
# numeric spectra (cyclic Jacobi)


@dataclass(frozen=True)
class RealSpectrum:
    eigenvalues: tuple  # descending
    residual_bound: float


def _jacobi(a):
    """Cyclic Jacobi rotations; returns (eigenvalues, eigenvector columns)."""
    n = len(a)
    mat = [[float(x) for x in row] for row in a]
    vecs = [[1.0 if i == j else 0.0 for j in range(n)] for i in range(n)]
    for _ in range(JACOBI_SWEEP_LIMIT):
        off = math.sqrt(
            sum(mat[i][j] ** 2 for i in range(n) for j in range(n) if i != j)
        )
        if off < 1e-15 * max(1.0, n):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(mat[p][q]) < 1e-18:
                    continue
                theta = (mat[q][q] - mat[p][p]) / (2.0 * mat[p][q])
                t = math.copysign(1.0, theta) / (
                    abs(theta) + math.sqrt(theta * theta + 1.0)
                )
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for i in range(n):
                    aip, aiq = mat[i][p], mat[i][q]
                    mat[i][p] = c * aip - s * aiq
                    mat[i][q] = s * aip + c * aiq
                for i in range(n):
                    api, aqi = mat[p][i], mat[q][i]
                    mat[p][i] = c * api - s * aqi
                    mat[q][i] = s * api + c * aqi
                for i in range(n):
                    vip, viq = vecs[i][p], vecs[i][q]
                    vecs[i][p] = c * vip - s * viq
                    vecs[i][q] = s * vip + c * viq
    eigs = [mat[i][i] for i in range(n)]
    return eigs, vecs


def eigenvalues(sg, tol=1e-9):
    """Full real spectrum of the signed adjacency matrix, descending order.

    Verifies the eigenpair residuals and the first two exact moment checks
    (sum 0, sum of squares 2|E|) against the requested tolerance.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    a = sg.matrix()
    n = len(a)
    if n == 0:
        return RealSpectrum((), 0.0)
    eigs, vecs = _jacobi(a)
    residual = 0.0
    for j in range(n):
        vec = [vecs[i][j] for i in range(n)]
        err = 0.0
        for i in range(n):
            av = sum(a[i][t] * vec[t] for t in range(n))
            err += (av - eigs[j] * vec[i]) ** 2
        residual = max(residual, math.sqrt(err))
    if residual > tol:
        raise ConsistencyError(
            f"Jacobi residual {residual:.3e} exceeds tolerance {tol:.3e}"
        )
    if abs(sum(eigs)) > tol:
        raise ConsistencyError("eigenvalue sum should vanish")
    if abs(sum(x * x for x in eigs) - 2 * sg.base.m) > tol * max(1, 2 * sg.base.m):
        raise ConsistencyError("eigenvalue square sum should equal 2|E|")
    return RealSpectrum(tuple(sorted(eigs, reverse=True)), residual)


def spectral_radius(g):
    """Spectral radius of the underlying (all-positive) graph."""
    if g.m == 0:
        return 0.0
    return max(abs(x) for x in eigenvalues(all_positive(g)).eigenvalues)


# ---------------------------------------------------------------------------
# the set Sigma of squared eigenvalues over signed subgraphs


@dataclass(frozen=True)
class SigmaWitness:
    subgraph: object  # Graph in canonical form
    signs: tuple
    eigenvalue: float


@dataclass(frozen=True)
class SigmaSet:
    values: tuple  # ascending distinct squared eigenvalues
    tolerance: float
    provenance: tuple  # one SigmaWitness per value

    def __len__(self):
        return len(self.values)

    def index_of(self, sigma_sq, tol=None):
        tol = self.tolerance * 10 if tol is None else tol
        best, best_gap = None, None
        for i, v in enumerate(self.values):
            gap = abs(v - sigma_sq)
            if best_gap is None or gap < best_gap:
                best, best_gap = i, gap
        if best is None or best_gap > tol * max(1.0, abs(sigma_sq)):
            raise KeyError(f"{sigma_sq} is not close to any cluster")
        return best


def sigma_set(g, mode="all_subgraphs", tol=DEFAULT_CLUSTER_TOL):
    """Cluster the squared nonzero eigenvalues over all connected signed
    subgraphs of g (one representative signing per switching class).

    Spectra of disconnected subgraphs are unions of their components', so
    connected subgraphs suffice.  mode="induced_subgraphs" restricts the
    subgraph family to induced ones.
    """
    if g.m == 0:
        return SigmaSet((), tol, ())
    if mode == "all_subgraphs":
        motifs = [m.graph for m, _ in connected_subgraph_census(g, g.m).entries]
    elif mode == "induced_subgraphs":
        motifs = connected_induced_subgraph_classes(g)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    samples = []  # (lambda^2, witness)
    for motif in motifs:
        for rep in enumerate_signings(motif, up_to_switching=True):
            spectrum = eigenvalues(rep, tol=min(tol, 1e-9))
            for lam in spectrum.eigenvalues:
                if lam * lam > tol:
                    samples.append(
                        (lam * lam, SigmaWitness(motif, rep.signs, lam))
                    )
    samples.sort(key=lambda item: item[0])
    clusters = []  # [ [values], witness ]
    for value, witness in samples:
        if clusters and value - clusters[-1][0][-1] <= tol:
            clusters[-1][0].append(value)
        else:
            clusters.append([[value], witness])
    values = []
    witnesses = []
    for member_values, witness in clusters:
        values.append(sum(member_values) / len(member_values))
        witnesses.append(witness)
    for left, right in zip(values, values[1:]):
        if right - left <= 10 * tol:
            raise ClusterAmbiguityError(
                f"clusters at {left} and {right} are closer than 10*tol"
            )
    return SigmaSet(tuple(values), tol, tuple(witnesses))
