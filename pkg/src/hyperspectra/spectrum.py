"""The main pipeline: exact spectral moments of k-power hypergraphs, the
moment linear system (M, P, N, D(k)), eigenvalue multiplicities, the factored
characteristic polynomial, the spectral-radius multiplicity, and the k=2
extrapolation beta.

Everything feeding the linear system is exact (integer walk counts, rational
moment scales).  The single inexact step is the Vandermonde-style solve,
which runs in mpmath at a configurable precision; the squared eigenvalues
entering the matrix are refined beforehand to working precision by root
polishing on the exact characteristic polynomial of each cluster's witness
subgraph, so the solve is the only noise source and its residuals are
reported and gated.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

from . import digraphs
from .algebra import poly_trim, squarefree_part
from .errors import ConsistencyError, PrecisionError
from .graphs import connected_subgraph_census
from .signed import (
    DEFAULT_CLUSTER_TOL,
    SignedGraph,
    char_poly_exact,
    sigma_set,
    spectral_radius,
)
from .walks import covering_parity_profile, parity_closed_profile

DEFAULT_PRECISION_BITS = 256
MAX_PRECISION_BITS = 8192
RESIDUAL_GATE = 1e-6


@dataclass(frozen=True)
class MomentSystem:
    """Everything needed to solve for multiplicities at a given k."""

    k: int
    sigma: object  # SigmaSet
    motifs: object  # MotifCensus
    P: tuple  # rows ell = 1..sigma size; columns follow motifs
    N: tuple
    Dk: tuple  # exact Fractions, one per motif
    sigma_refined: tuple  # mpf squared eigenvalues at precision_bits
    precision_bits: int
    condition_estimate: float

    @property
    def size(self):
        return len(self.sigma.values)


@dataclass(frozen=True)
class SpectralFactor:
    sigma_sq: float
    mu: object  # int for k >= 3, Fraction for k = 2
    residual: float
    witness: object  # SigmaWitness


@dataclass(frozen=True)
class FactoredSpectralFunction:
    """lambda^mu0 * prod (lambda^k - sigma_i^2)^mu_i."""

    k: int
    mu0: object
    factors: tuple
    condition_estimate: float

    def total_degree(self):
        return self.mu0 + self.k * sum(f.mu for f in self.factors)

    def exponent_near(self, sigma_sq, rel_tol=1e-6):
        for f in self.factors:
            if abs(f.sigma_sq - sigma_sq) <= rel_tol * max(1.0, abs(sigma_sq)):
                return f.mu
        raise KeyError(f"no factor near sigma^2 = {sigma_sq}")

    def evaluate_abs(self, x, precision_bits=DEFAULT_PRECISION_BITS):
        """prod |x^k - sigma^2|^mu * |x|^mu0; the absolute value of the
        function wherever fractional exponents would otherwise need a
        complex branch choice."""
        with mp.workprec(precision_bits):
            acc = mp.mpf(1)
            xk = mp.mpf(x) ** self.k
            for f in self.factors:
                base = abs(xk - mp.mpf(f.sigma_sq))
                if base == 0:
                    return 0.0
                acc *= base ** _to_mpf(f.mu)
            if self.mu0:
                if x == 0:
                    return 0.0
                acc *= abs(mp.mpf(x)) ** _to_mpf(self.mu0)
            return float(acc)

    def to_text(self):
        parts = []
        if self.mu0:
            parts.append(f"λ^{self.mu0}" if self.mu0 != 1 else "λ")
        for f in self.factors:
            sigma = _format_number(f.sigma_sq)
            mu = str(f.mu)
            factor = f"(λ^{self.k} - {sigma})"
            parts.append(factor if mu == "1" else f"{factor}^{mu}")
        return " ".join(parts) if parts else "1"


def _format_number(x):
    if x == int(x):
        return str(int(x))
    return repr(x)


def _to_mpf(value):
    if isinstance(value, Fraction):
        return mpf(value.numerator) / mpf(value.denominator)
    return mpf(value)


# ---------------------------------------------------------------------------
# spectral moments


def script_S(g, d, k):
    """Exact spectral moment of order d of the k-power of g, as a sum of
    covering parity-closed walk counts over the motif census.  Zero whenever
    k does not divide d; for k = 2 this reduces to the parity-closed count.
    """
    if k < 2:
        raise ValueError("moments are defined for k >= 2")
    if d < 0:
        raise ValueError("moment order must be non-negative")
    if d == 0:
        size = g.n + (k - 2) * g.m
        return Fraction(size * (k - 1) ** (size - 1)) if size else Fraction(0)
    if d % k != 0:
        return Fraction(0)
    ell = d // k
    prefactor = Fraction(k - 1) ** (g.n + g.m * (k - 2) - 1)
    total = Fraction(0)
    if g.m:
        census = connected_subgraph_census(g, min(ell, g.m))
        for motif, count in census.entries:
            profile = covering_parity_profile(motif.graph, 2 * ell)
            p = profile[2 * ell]
            if p:
                total += (
                    digraphs.power_moment_prefactor(motif.v_count, motif.e_count, k)
                    * p
                    * count
                )
    return prefactor * total


# ---------------------------------------------------------------------------
# the moment system


def _polish_sigma_squares(sigma, precision_bits):
    """Refine each cluster value to working precision: the witness signed
    subgraph has an exact characteristic polynomial, so its eigenvalue can
    be root-polished and squared."""
    refined = []
    with mp.workprec(precision_bits):
        for value, witness in zip(sigma.values, sigma.provenance):
            poly = char_poly_exact(SignedGraph(witness.subgraph, witness.signs))
            reduced = squarefree_part(poly_trim(poly))
            roots = mp.polyroots(
                list(reversed(reduced)), maxsteps=200, extraprec=precision_bits
            )
            best = None
            for root in roots:
                if abs(mp.im(root)) > mp.mpf(2) ** (-precision_bits // 4):
                    continue
                root = mp.re(root)
                if best is None or abs(root - witness.eigenvalue) < abs(
                    best - witness.eigenvalue
                ):
                    best = root
            if best is None:
                raise ConsistencyError("witness polynomial lost its real root")
            square = best * best
            if abs(square - value) > 1e-6 * max(1.0, abs(value)):
                raise ConsistencyError(
                    f"polished sigma^2 {square} drifted from cluster {value}"
                )
            refined.append(square)
    return tuple(refined)


def _condition_estimate(sigma_refined, precision_bits):
    size = len(sigma_refined)
    if size == 0:
        return 1.0
    with mp.workprec(precision_bits):
        m = mp.matrix(size)
        for row in range(size):
            for col in range(size):
                m[row, col] = sigma_refined[col] ** (row + 1)
        try:
            inv = m**-1
        except ZeroDivisionError:
            return float("inf")
        norm = mp.mnorm(m, 1) * mp.mnorm(inv, 1)
        try:
            return float(norm)
        except (OverflowError, ValueError):
            return float("inf")


def build_system(g, k, tol=DEFAULT_CLUSTER_TOL, precision_bits=DEFAULT_PRECISION_BITS):
    """Assemble Sigma, the motif census to |Sigma| edges, the moment matrix
    pieces P, N, D(k), and the refined squared eigenvalues."""
    if k < 2:
        raise ValueError("the moment system needs k >= 2")
    sigma = sigma_set(g, mode="all_subgraphs", tol=tol)
    size = len(sigma.values)
    if size == 0:
        return MomentSystem(
            k=k,
            sigma=sigma,
            motifs=None,
            P=(),
            N=(),
            Dk=(),
            sigma_refined=(),
            precision_bits=precision_bits,
            condition_estimate=1.0,
        )
    census = connected_subgraph_census(g, min(size, g.m))
    profiles = [
        covering_parity_profile(motif.graph, 2 * size)
        for motif, _ in census.entries
    ]
    P = tuple(
        tuple(profiles[i][2 * ell] for i in range(len(census.entries)))
        for ell in range(1, size + 1)
    )
    N = tuple(count for _, count in census.entries)
    Dk = tuple(
        digraphs.power_moment_prefactor(motif.v_count, motif.e_count, k)
        for motif, _ in census.entries
    )
    refined = _polish_sigma_squares(sigma, precision_bits)
    cond = _condition_estimate(refined, precision_bits)
    return MomentSystem(
        k=k,
        sigma=sigma,
        motifs=census,
        P=P,
        N=N,
        Dk=Dk,
        sigma_refined=refined,
        precision_bits=precision_bits,
        condition_estimate=cond,
    )


def _solve_multiplicities(system, scale):
    """Solve M x = P D N exactly-as-possible and return scale * x as mpf.

    The right-hand side is exact rational; M uses the refined sigma squares.
    """
    size = system.size
    if size == 0:
        return []
    rhs = []
    for ell in range(size):
        acc = Fraction(0)
        for i in range(len(system.N)):
            acc += system.Dk[i] * system.P[ell][i] * system.N[i]
        rhs.append(acc)
    with mp.workprec(system.precision_bits):
        m = mp.matrix(size)
        for row in range(size):
            for col in range(size):
                m[row, col] = system.sigma_refined[col] ** (row + 1)
        vec = mp.matrix([_to_mpf(x) for x in rhs])
        sol = mp.lu_solve(m, vec)
        factor = _to_mpf(scale)
        return [factor * sol[i] for i in range(size)]


def _snap(value, snap_denominator):
    """Round to the nearest multiple of 1/snap_denominator; returns the
    snapped exact number and the relative residual."""
    scaled = value * snap_denominator
    nearest = int(mp.nint(scaled))
    snapped = Fraction(nearest, snap_denominator)
    residual = abs(value - _to_mpf(snapped)) / max(1.0, abs(_to_mpf(snapped)))
    return snapped, float(residual)


def char_poly_power(
    g,
    k,
    precision_bits=DEFAULT_PRECISION_BITS,
    tol=DEFAULT_CLUSTER_TOL,
):
    """Factored characteristic polynomial of the k-power of a connected graph.

    Multiplicities come from the moment system; each is snapped to an integer
    with its residual recorded, and the exponent of lambda follows from the
    total-degree identity.  Precision escalates automatically (doubling up
    to MAX_PRECISION_BITS) if a residual misses the gate.
    """
    if k < 3:
        raise ValueError("power hypergraphs need k >= 3; use beta for k = 2")
    if not g.is_connected():
        raise ValueError("the characteristic polynomial pipeline needs a connected graph")
    scale = Fraction((k - 1) ** (g.n + (k - 2) * g.m - 1), k)
    total_degree = (g.n + (k - 2) * g.m) * (k - 1) ** (g.n + (k - 2) * g.m - 1)
    bits = precision_bits
    last_error = None
    while bits <= MAX_PRECISION_BITS:
        system = build_system(g, k, tol=tol, precision_bits=bits)
        try:
            raw = _solve_multiplicities(system, scale)
        except ZeroDivisionError:
            last_error = f"moment matrix numerically singular at {bits} bits"
            bits *= 2
            continue
        factors = []
        ok = True
        for value, refined, witness in zip(
            raw, system.sigma_refined, system.sigma.provenance
        ):
            snapped, residual = _snap(value, 1)
            if residual > RESIDUAL_GATE:
                ok = False
                last_error = (
                    f"multiplicity near sigma^2={float(refined)} has residual "
                    f"{residual:.3e} at {bits} bits"
                )
                break
            mu = int(snapped)
            if mu < 0:
                raise ConsistencyError(
                    f"negative multiplicity {mu} near sigma^2={float(refined)}"
                )
            factors.append(
                SpectralFactor(
                    sigma_sq=float(refined),
                    mu=mu,
                    residual=residual,
                    witness=witness,
                )
            )
        if ok:
            mu_sum = sum(f.mu for f in factors)
            mu0 = total_degree - k * mu_sum
            if mu0 < 0:
                raise ConsistencyError(f"negative zero-eigenvalue exponent {mu0}")
            result = FactoredSpectralFunction(
                k=k,
                mu0=mu0,
                factors=tuple(factors),
                condition_estimate=system.condition_estimate,
            )
            _validate_moments(g, k, result, system)
            return result
        bits *= 2
    raise PrecisionError(
        f"{last_error}; raise precision beyond {MAX_PRECISION_BITS} bits"
    )


def _validate_moments(g, k, fsf, system):
    """Check k * sum mu_i sigma_i^(2 ell) against the exact moment for
    ell = 1..min(2|Sigma|, 8)."""
    size = system.size
    if size == 0:
        return
    with mp.workprec(system.precision_bits):
        for ell in range(1, min(2 * size, 8) + 1):
            lhs = mp.mpf(0)
            for f, refined in zip(fsf.factors, system.sigma_refined):
                lhs += _to_mpf(f.mu) * refined**ell
            lhs *= k
            rhs = _to_mpf(script_S(g, ell * k, k))
            if abs(lhs - rhs) > RESIDUAL_GATE * max(1.0, abs(rhs)):
                raise ConsistencyError(
                    f"moment mismatch at ell={ell}: {lhs} vs {rhs}"
                )


def beta(g, precision_bits=DEFAULT_PRECISION_BITS, tol=DEFAULT_CLUSTER_TOL):
    """The k=2 extrapolation of the factored characteristic polynomial.

    Exponents are the solved multiplicities snapped to the dyadic grid
    2^-|E| (they are averages over the 2^|E| signings); zero exponents are
    dropped from the factor list.
    """
    snap_denominator = 2**g.m
    bits = precision_bits
    last_error = None
    while bits <= MAX_PRECISION_BITS:
        system = build_system(g, 2, tol=tol, precision_bits=bits)
        try:
            raw = _solve_multiplicities(system, Fraction(1, 2))
        except ZeroDivisionError:
            last_error = f"moment matrix numerically singular at {bits} bits"
            bits *= 2
            continue
        factors = []
        kept_refined = []
        ok = True
        for value, refined, witness in zip(
            raw, system.sigma_refined, system.sigma.provenance
        ):
            snapped, residual = _snap(value, snap_denominator)
            if residual > RESIDUAL_GATE:
                ok = False
                last_error = (
                    f"beta exponent near sigma^2={float(refined)} has residual "
                    f"{residual:.3e} at {bits} bits"
                )
                break
            if snapped < 0:
                raise ConsistencyError(f"negative beta exponent {snapped}")
            if snapped == 0:
                continue
            mu = int(snapped) if snapped.denominator == 1 else snapped
            factors.append(
                SpectralFactor(
                    sigma_sq=float(refined),
                    mu=mu,
                    residual=residual,
                    witness=witness,
                )
            )
            kept_refined.append(refined)
        if ok:
            mu_sum = sum(Fraction(f.mu) for f in factors)
            mu0 = g.n - 2 * mu_sum
            mu0 = int(mu0) if mu0.denominator == 1 else mu0
            result = FactoredSpectralFunction(
                k=2,
                mu0=mu0,
                factors=tuple(factors),
                condition_estimate=system.condition_estimate,
            )
            _validate_parity_moments(g, result, kept_refined, system)
            if g.m and g.is_connected():
                expected = Fraction(1, 2 ** (g.m - g.n + 1))
                if Fraction(radius_cluster_exponent(result, g)) != expected:
                    raise ConsistencyError(
                        "spectral-radius exponent of beta is not "
                        f"2^-(|E|-|V|+1) = {expected}"
                    )
            return result
        bits *= 2
    raise PrecisionError(
        f"{last_error}; raise precision beyond {MAX_PRECISION_BITS} bits"
    )


def _validate_parity_moments(g, fsf, kept_refined, system):
    """After snapping, 2 * sum mu_i sigma_i^(2 ell) must reproduce the
    parity-closed walk counts for ell = 1..|Sigma|."""
    size = system.size
    if size == 0:
        return
    counts = parity_closed_profile(g, 2 * size)
    with mp.workprec(system.precision_bits):
        for ell in range(1, size + 1):
            lhs = mp.mpf(0)
            for f, refined in zip(fsf.factors, kept_refined):
                lhs += 2 * _to_mpf(f.mu) * refined**ell
            rhs = mp.mpf(counts[2 * ell])
            if abs(lhs - rhs) > 1e-9 * max(1.0, abs(rhs)):
                raise ConsistencyError(
                    f"parity moment mismatch at ell={ell}: {lhs} vs {rhs}"
                )


# ---------------------------------------------------------------------------
# the spectral radius


def spectral_radius_multiplicity(g, k):
    """Multiplicity of the spectral radius of the k-power of a connected
    graph: k^(|E|(k-3)+|V|-1)."""
    if k < 3:
        raise ValueError("defined for k >= 3")
    if not g.is_connected():
        raise ValueError("defined for connected graphs")
    return k ** (g.m * (k - 3) + g.n - 1)


def radius_total_multiplicity(g, k):
    """Total multiplicity of eigenvalues on the spectral circle: k times the
    spectral-radius multiplicity."""
    return k * spectral_radius_multiplicity(g, k)


def radius_cluster_exponent(fsf, g):
    """The pipeline multiplicity at the cluster containing rho(G)^2."""
    rho_sq = spectral_radius(g) ** 2
    return fsf.exponent_near(rho_sq, rel_tol=1e-6)


def convergence_ratio(g, k, ell):
    """Finite-ell approximant 2^(|E|-|V|) k^(|E|(k-3)+|V|) P_{2 ell} / rho^(2 ell)
    of the total spectral-circle multiplicity."""
    if not g.is_connected():
        raise ValueError("defined for connected graphs")
    counts = parity_closed_profile(g, 2 * ell)
    rho = spectral_radius(g)
    with mp.workprec(DEFAULT_PRECISION_BITS):
        value = (
            mpf(2) ** (g.m - g.n)
            * mpf(k) ** (g.m * (k - 3) + g.n)
            * mpf(counts[2 * ell])
            / mpf(rho) ** (2 * ell)
        )
        return float(value)
