"""Graphs, isomorphism certificates, the connected-motif census, and
k-power hypergraph construction.

Conventions used throughout the package:

* vertices are 0-indexed integers below ``n``;
* edges are unordered pairs stored as sorted tuples, the edge list itself
  is kept sorted so that equal graphs compare equal;
* a "subgraph" is an edge subset together with its incident vertices
  (no isolated vertices); a motif is the isomorphism class of a
  connected subgraph with at least one edge.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import BudgetError, GraphParseError

CERTIFICATE_VERTEX_LIMIT = 10


@dataclass(frozen=True)
class Graph:
    """Simple undirected labeled graph."""

    n: int
    edges: tuple

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        seen = set()
        norm = []
        for e in self.edges:
            u, v = e
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if u > v:
                u, v = v, u
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {(u, v)} out of range for n={self.n}")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge {(u, v)}")
            seen.add((u, v))
            norm.append((u, v))
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @property
    def m(self):
        return len(self.edges)

    def adjacency(self):
        a = [[0] * self.n for _ in range(self.n)]
        for u, v in self.edges:
            a[u][v] = 1
            a[v][u] = 1
        return a

    def neighbors(self):
        nbrs = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return [sorted(x) for x in nbrs]

    def degrees(self):
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def is_connected(self):
        if self.n <= 1:
            return True
        nbrs = self.neighbors()
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in nbrs[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def is_tree(self):
        return self.is_connected() and self.m == self.n - 1

    def is_forest(self):
        return not self._has_cycle()

    def _has_cycle(self):
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            ru, rv = find(u), find(v)
            if ru == rv:
                return True
            parent[ru] = rv
        return False

    def relabel(self, mapping):
        """New graph with vertex i renamed mapping[i]."""
        return Graph(self.n, tuple((mapping[u], mapping[v]) for u, v in self.edges))

    def induced(self, vertices):
        """Induced subgraph on the given vertex subset, relabeled 0..len-1."""
        vs = sorted(vertices)
        pos = {v: i for i, v in enumerate(vs)}
        edges = [(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos]
        return Graph(len(vs), tuple(edges))

    def subgraph_of_edges(self, edge_indexes):
        """Subgraph spanned by the given edge indexes: the incident vertices,
        relabeled 0..v-1 in sorted order, plus those edges."""
        chosen = [self.edges[i] for i in sorted(edge_indexes)]
        support = sorted({x for e in chosen for x in e})
        pos = {v: i for i, v in enumerate(support)}
        return Graph(len(support), tuple((pos[u], pos[v]) for u, v in chosen))


def path_graph(n):
    """Path on n vertices (n-1 edges)."""
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle_graph(n):
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def complete_graph(n):
    return Graph(n, tuple(itertools.combinations(range(n), 2)))


def star_graph(n_edges):
    """Star with n_edges leaves, i.e. K_{1,n} on n+1 vertices."""
    return Graph(n_edges + 1, tuple((0, i) for i in range(1, n_edges + 1)))


_BUILTINS = {
    "path": (path_graph, 1),
    "cycle": (cycle_graph, 3),
    "complete": (complete_graph, 1),
    "star": (star_graph, 1),
}


def parse_graph(text):
    """Parse a named builtin ("path:n", "cycle:n", "complete:n", "star:n")
    or an edge list: a header line "n m" followed by m lines "u v".
    """
    stripped = text.strip()
    if ":" in stripped and "\n" not in stripped:
        name, _, arg = stripped.partition(":")
        name = name.strip().lower()
        if name in _BUILTINS:
            builder, minimum = _BUILTINS[name]
            try:
                size = int(arg)
            except ValueError:
                raise GraphParseError(f"bad builtin size {arg!r}") from None
            if size < minimum:
                raise GraphParseError(f"{name}:{size} is too small (minimum {minimum})")
            return builder(size)
        raise GraphParseError(f"unknown builtin {name!r}")

    lines = stripped.splitlines()
    if not lines:
        raise GraphParseError("empty input", line=1)
    header = lines[0].split()
    if len(header) != 2:
        raise GraphParseError("header must be 'n m'", line=1)
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise GraphParseError("header must be two integers", line=1) from None
    if n < 0 or m < 0:
        raise GraphParseError("header counts must be non-negative", line=1)
    if len(lines) - 1 != m:
        raise GraphParseError(
            f"expected {m} edge lines, found {len(lines) - 1}", line=len(lines)
        )
    edges = []
    seen = set()
    for idx, raw in enumerate(lines[1:], start=2):
        parts = raw.split()
        if len(parts) != 2:
            raise GraphParseError(f"malformed edge line {raw!r}", line=idx)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(f"malformed edge line {raw!r}", line=idx) from None
        if u == v:
            raise GraphParseError(f"loop at vertex {u}", line=idx)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(f"vertex label out of range in {raw!r}", line=idx)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphParseError(f"duplicate edge {key}", line=idx)
        seen.add(key)
        edges.append(key)
    return Graph(n, tuple(edges))


# ---------------------------------------------------------------------------
# isomorphism certificates


def _degree_class_permutations(g):
    """Bijections old->new that send vertices into slots grouped by degree
    (degree descending).  Minimizing over this family is isomorphism-safe
    because the slot layout depends only on the degree multiset.
    """
    deg = g.degrees()
    by_degree = {}
    for v in range(g.n):
        by_degree.setdefault(deg[v], []).append(v)
    slot = 0
    groups = []
    for d in sorted(by_degree, reverse=True):
        members = by_degree[d]
        groups.append((members, list(range(slot, slot + len(members)))))
        slot += len(members)
    for assignment in itertools.product(
        *(itertools.permutations(slots) for _, slots in groups)
    ):
        perm = [0] * g.n
        for (members, _), slots in zip(groups, assignment):
            for v, s in zip(members, slots):
                perm[v] = s
        yield perm


def _encode_upper_triangle(g, perm):
    bits = 0
    pos = 0
    adj = set()
    for u, v in g.edges:
        pu, pv = perm[u], perm[v]
        adj.add((min(pu, pv), max(pu, pv)))
    for i in range(g.n):
        for j in range(i + 1, g.n):
            bits = (bits << 1) | (1 if (i, j) in adj else 0)
            pos += 1
    return bits


def canonical_certificate(g, max_vertices=CERTIFICATE_VERTEX_LIMIT):
    """Byte certificate equal for isomorphic graphs and distinct otherwise.

    The certificate is the vertex count followed by the minimum
    upper-triangular adjacency encoding over all degree-respecting
    relabelings (brute force; bounded by max_vertices).
    """
    if g.n > max_vertices:
        raise BudgetError(
            f"certificate supports at most {max_vertices} vertices, got {g.n}"
        )
    best = None
    for perm in _degree_class_permutations(g):
        enc = _encode_upper_triangle(g, perm)
        if best is None or enc < best:
            best = enc
    if best is None:
        best = 0
    nbits = g.n * (g.n - 1) // 2
    nbytes = (nbits + 7) // 8
    return bytes([g.n]) + best.to_bytes(nbytes, "big")


def canonical_form(g, max_vertices=CERTIFICATE_VERTEX_LIMIT):
    """The relabeled copy of g realizing its canonical certificate."""
    if g.n > max_vertices:
        raise BudgetError(
            f"canonical form supports at most {max_vertices} vertices, got {g.n}"
        )
    best = None
    best_perm = None
    for perm in _degree_class_permutations(g):
        enc = _encode_upper_triangle(g, perm)
        if best is None or enc < best:
            best = enc
            best_perm = perm
    if best_perm is None:
        return g
    return g.relabel(best_perm)


def are_isomorphic(a, b):
    """Brute-force isomorphism test (independent of certificates)."""
    if a.n != b.n or a.m != b.m:
        return False
    if sorted(a.degrees()) != sorted(b.degrees()):
        return False
    a_edges = set(a.edges)
    b_edges = set(b.edges)
    deg_a, deg_b = a.degrees(), b.degrees()
    verts_b_by_degree = {}
    for v in range(b.n):
        verts_b_by_degree.setdefault(deg_b[v], []).append(v)
    order = sorted(range(a.n), key=lambda v: (deg_a[v], v))

    def extend(i, mapping, used):
        if i == a.n:
            return True
        v = order[i]
        for w in verts_b_by_degree[deg_a[v]]:
            if w in used:
                continue
            ok = True
            for u in order[:i]:
                has = (min(u, v), max(u, v)) in a_edges
                has_b = (min(mapping[u], w), max(mapping[u], w)) in b_edges
                if has != has_b:
                    ok = False
                    break
            if ok:
                mapping[v] = w
                used.add(w)
                if extend(i + 1, mapping, used):
                    return True
                mapping[v] = None
                used.remove(w)
        return False

    return extend(0, [None] * a.n, set())


# ---------------------------------------------------------------------------
# motif census


@dataclass(frozen=True)
class Motif:
    """Isomorphism class of a connected subgraph: canonical graph + certificate."""

    graph: Graph
    certificate: bytes

    @property
    def v_count(self):
        return self.graph.n

    @property
    def e_count(self):
        return self.graph.m


@dataclass(frozen=True)
class MotifCensus:
    """Motifs of a host graph with exact occurrence counts N(motif)."""

    entries: tuple  # ((Motif, count), ...) sorted by (edges, vertices, certificate)
    max_edges: int

    def __len__(self):
        return len(self.entries)

    def count_for(self, certificate):
        for motif, count in self.entries:
            if motif.certificate == certificate:
                return count
        return 0

    def to_json_obj(self):
        return [
            {
                "certificate": motif.certificate.hex(),
                "edges": motif.e_count,
                "vertices": motif.v_count,
                "count": count,
            }
            for motif, count in self.entries
        ]


def connected_edge_subsets(g, max_edges):
    """All edge-index subsets of size 1..max_edges whose subgraph is connected.

    Grown breadth-first from each seed edge with de-duplication, so every
    subset appears exactly once.
    """
    if max_edges < 1:
        raise ValueError("max_edges must be at least 1")
    nbr_edges = [set() for _ in range(g.m)]
    incidence = {}
    for i, (u, v) in enumerate(g.edges):
        incidence.setdefault(u, []).append(i)
        incidence.setdefault(v, []).append(i)
    for verts in incidence.values():
        for i in verts:
            nbr_edges[i].update(j for j in verts if j != i)

    found = set()
    frontier = [frozenset([i]) for i in range(g.m)]
    found.update(frontier)
    for _ in range(max_edges - 1):
        nxt = []
        for subset in frontier:
            candidates = set()
            for i in subset:
                candidates.update(nbr_edges[i])
            candidates -= subset
            for j in candidates:
                grown = subset | {j}
                if grown not in found:
                    found.add(grown)
                    nxt.append(grown)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def connected_edge_subsets_brute(g, max_edges):
    """Independent oracle: plain subset enumeration plus a connectivity check."""
    out = []
    for size in range(1, max_edges + 1):
        for combo in itertools.combinations(range(g.m), size):
            sub = g.subgraph_of_edges(combo)
            if sub.is_connected():
                out.append(frozenset(combo))
    return out


def connected_subgraph_census(g, max_edges):
    """Count connected subgraphs of g with 1..max_edges edges, grouped by
    isomorphism class."""
    buckets = {}
    for subset in connected_edge_subsets(g, max_edges):
        sub = g.subgraph_of_edges(subset)
        cert = canonical_certificate(sub)
        if cert in buckets:
            buckets[cert][1] += 1
        else:
            buckets[cert] = [Motif(canonical_form(sub), cert), 1]
    entries = sorted(
        ((motif, count) for motif, count in buckets.values()),
        key=lambda mc: (mc[0].e_count, mc[0].v_count, mc[0].certificate),
    )
    return MotifCensus(entries=tuple(entries), max_edges=max_edges)


def connected_induced_subgraph_classes(g):
    """Isomorphism classes of connected induced subgraphs with >= 1 edge."""
    classes = {}
    for size in range(2, g.n + 1):
        for vs in itertools.combinations(range(g.n), size):
            sub = g.induced(vs)
            if sub.m == 0 or not sub.is_connected():
                continue
            cert = canonical_certificate(sub)
            if cert not in classes:
                classes[cert] = canonical_form(sub)
    return [classes[c] for c in sorted(classes)]


def all_connected_graphs(n):
    """All connected graphs on exactly n labeled-irrelevant vertices, up to
    isomorphism, each in canonical form."""
    if n == 1:
        return [Graph(1, ())]
    pairs = list(itertools.combinations(range(n), 2))
    seen = {}
    for bits in range(1 << len(pairs)):
        edges = tuple(pairs[i] for i in range(len(pairs)) if bits >> i & 1)
        if len(edges) < n - 1:
            continue
        g = Graph(n, edges)
        if not g.is_connected():
            continue
        cert = canonical_certificate(g)
        if cert not in seen:
            seen[cert] = canonical_form(g)
    return [seen[c] for c in sorted(seen)]


# ---------------------------------------------------------------------------
# power hypergraphs


@dataclass(frozen=True)
class Hypergraph:
    """k-uniform hypergraph produced by power_hypergraph.

    core_map has one entry per hyperedge: (u, v, cores) where {u, v} is the
    base edge and cores are the k-2 added vertices.
    """

    k: int
    n: int
    hyperedges: tuple
    core_map: tuple

    @property
    def m(self):
        return len(self.hyperedges)


def power_hypergraph(g, k):
    """Blow each edge of g up to a k-vertex hyperedge by appending k-2 fresh
    core vertices; cores are numbered after the base vertices in edge order.
    """
    if k < 3:
        raise ValueError("power hypergraphs need k >= 3")
    hyperedges = []
    core_map = []
    nxt = g.n
    for u, v in g.edges:
        cores = tuple(range(nxt, nxt + k - 2))
        nxt += k - 2
        hyperedges.append((u, v) + cores)
        core_map.append((u, v, cores))
    return Hypergraph(k=k, n=nxt, hyperedges=tuple(hyperedges), core_map=tuple(core_map))
