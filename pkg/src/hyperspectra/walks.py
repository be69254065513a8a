"""Exact counting of closed, parity-closed, and covering parity-closed walks.

Walks are rooted and directed: a walk carries its start vertex and traversal
order, matching trace(A^d) semantics.  A parity-closed walk uses every edge
of the host graph an even number of times; a covering one additionally uses
every edge at least once (hence at least twice).

Every counter here has an independent twin so the two can cross-check each
other: the bitmask dynamic program against the signed-trace average, and the
three-state covering dynamic program against subset inclusion-exclusion.
All arithmetic is arbitrary-precision integer; no floats appear anywhere.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import NamedTuple

from .algebra import mat_power_traces
from .errors import BudgetError, ConsistencyError
from .graphs import canonical_form

PARITY_DP_EDGE_LIMIT = 24
SIGNED_MEAN_EDGE_LIMIT = 20
COVERING_STATE_BUDGET = 40_000_000


class WalkCount(NamedTuple):
    d: int
    value: int


def closed_walk_count(g, d):
    """trace(A^d): the number of closed walks of length d."""
    if d < 0:
        raise ValueError("walk length must be non-negative")
    return WalkCount(d, mat_power_traces(g.adjacency(), d)[d])


def closed_walk_profile(g, max_d):
    return mat_power_traces(g.adjacency(), max_d)


def parity_closed_count(g, d, method="dp"):
    """Closed walks of length d using each edge an even number of times."""
    return WalkCount(d, parity_closed_profile(g, d, method=method)[d])


def parity_closed_profile(g, max_d, method="dp"):
    """Parity-closed walk counts for every length 0..max_d at once."""
    if max_d < 0:
        raise ValueError("walk length must be non-negative")
    if method == "dp":
        return _parity_profile_dp(g, max_d)
    if method == "signed_mean":
        return _parity_profile_signed_mean(g, max_d)
    raise ValueError(f"unknown method {method!r}")


def _parity_profile_dp(g, max_d):
    if g.m > PARITY_DP_EDGE_LIMIT:
        raise BudgetError(
            f"parity bitmask DP supports at most {PARITY_DP_EDGE_LIMIT} edges, got {g.m}"
        )
    moves = [[] for _ in range(g.n)]  # vertex -> [(neighbor, edge bit), ...]
    for i, (u, v) in enumerate(g.edges):
        moves[u].append((v, 1 << i))
        moves[v].append((u, 1 << i))
    profile = [0] * (max_d + 1)
    profile[0] = g.n
    for start in range(g.n):
        states = {(start, 0): 1}
        for t in range(1, max_d + 1):
            nxt = {}
            for (v, mask), cnt in states.items():
                for w, bit in moves[v]:
                    key = (w, mask ^ bit)
                    nxt[key] = nxt.get(key, 0) + cnt
            states = nxt
            profile[t] += states.get((start, 0), 0)
    return profile


def _parity_profile_signed_mean(g, max_d):
    if g.m > SIGNED_MEAN_EDGE_LIMIT:
        raise BudgetError(
            f"signed-mean enumeration supports at most {SIGNED_MEAN_EDGE_LIMIT} "
            f"edges, got {g.m}"
        )
    totals = [0] * (max_d + 1)
    for signs in itertools.product((1, -1), repeat=g.m):
        a = [[0] * g.n for _ in range(g.n)]
        for s, (u, v) in zip(signs, g.edges):
            a[u][v] = s
            a[v][u] = s
        traces = mat_power_traces(a, max_d)
        for t in range(max_d + 1):
            totals[t] += traces[t]
    scale = 1 << g.m
    profile = []
    for t, total in enumerate(totals):
        q, r = divmod(total, scale)
        if r != 0:
            raise ConsistencyError(
                f"signed trace average is not an integer at length {t}"
            )
        profile.append(q)
    return profile


# ---------------------------------------------------------------------------
# covering parity-closed walks


def covering_parity_closed_count(motif, d, state_budget=COVERING_STATE_BUDGET):
    """Closed walks of length d in the motif using every edge a positive even
    number of times."""
    profile = covering_parity_profile(motif, d, state_budget=state_budget)
    return WalkCount(d, profile[d])


def covering_parity_profile(motif, max_d, state_budget=COVERING_STATE_BUDGET):
    """Covering parity-closed counts for all lengths 0..max_d in one sweep.

    Results are cached per isomorphism class since hosts share motifs.
    """
    if not motif.is_connected():
        raise ValueError("covering counts are defined for connected motifs")
    if max_d < 0:
        raise ValueError("walk length must be non-negative")
    if max_d < 2 * motif.m:
        # covering needs every edge at least twice
        return [0] * (max_d + 1)
    cached = _covering_profile_cached(canonical_form(motif), max_d, state_budget)
    return list(cached)


@lru_cache(maxsize=4096)
def _covering_profile_cached(motif, max_d, state_budget):
    n, m = motif.n, motif.m
    if n * 3**m > state_budget:
        raise BudgetError(
            f"covering DP needs {n * 3 ** m} states, budget is {state_budget}"
        )
    # per-edge state digit: 0 unused, 1 odd, 2 even; accept when all digits == 2
    pow3 = [3**i for i in range(m)]
    moves = [[] for _ in range(n)]
    for i, (u, v) in enumerate(motif.edges):
        moves[u].append((v, i))
        moves[v].append((u, i))
    accept = 3**m - 1  # all digits equal to 2
    profile = [0] * (max_d + 1)
    for start in range(n):
        states = {(start, 0): 1}
        for t in range(1, max_d + 1):
            nxt = {}
            for (v, code), cnt in states.items():
                for w, e in moves[v]:
                    digit = code // pow3[e] % 3
                    step = pow3[e] if digit < 2 else -pow3[e]
                    key = (w, code + step)
                    nxt[key] = nxt.get(key, 0) + cnt
            states = nxt
            profile[t] += states.get((start, accept), 0)
    return tuple(profile)


def covering_parity_closed_by_subsets(motif, d):
    """Inclusion-exclusion oracle over edge subsets:
    sum over F of (-1)^(|E|-|F|) times parity-closed walks restricted to F."""
    if not motif.is_connected():
        raise ValueError("covering counts are defined for connected motifs")
    from .graphs import Graph

    total = 0
    for size in range(motif.m + 1):
        for combo in itertools.combinations(range(motif.m), size):
            restricted = Graph(motif.n, tuple(motif.edges[i] for i in combo))
            count = parity_closed_count(restricted, d, method="dp").value
            total += (-1) ** (motif.m - size) * count
    return WalkCount(d, total)
