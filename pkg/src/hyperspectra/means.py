"""Matching polynomial, the arithmetic-mean identity relating it to signed
characteristic polynomials, the geometric-mean evaluation of the
pseudo-characteristic function, and the AM-GM comparison between the two.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp

from .errors import BudgetError, ConsistencyError
from .signed import SignedGraph, char_poly_exact
from .algebra import poly_eval

MEAN_EDGE_LIMIT = 20


def matchings_by_size(g):
    """m_r = number of r-edge matchings, r = 0..floor(n/2), by recursion
    over the edge list."""
    counts = [0] * (g.n // 2 + 1)
    edges = g.edges

    def extend(start, used, size):
        counts[size] += 1
        for i in range(start, len(edges)):
            u, v = edges[i]
            if u in used or v in used:
                continue
            used.add(u)
            used.add(v)
            extend(i + 1, used, size + 1)
            used.remove(u)
            used.remove(v)

    extend(0, set(), 0)
    return counts


def matching_polynomial(g, method="direct"):
    """sum_r (-1)^r m_r lambda^(n-2r), exact rational coefficients ascending.

    direct counts matchings; signed_mean averages the characteristic
    polynomials of all 2^|E| signings coefficient-wise (the two agree by the
    arithmetic-mean identity and cross-check each other in the test suite).
    """
    if method == "direct":
        coeffs = [Fraction(0)] * (g.n + 1)
        for r, m_r in enumerate(matchings_by_size(g)):
            coeffs[g.n - 2 * r] += Fraction((-1) ** r * m_r)
        return coeffs
    if method == "signed_mean":
        if g.m > MEAN_EDGE_LIMIT:
            raise BudgetError(
                f"signing enumeration supports at most {MEAN_EDGE_LIMIT} edges"
            )
        totals = [0] * (g.n + 1)
        for signs in itertools.product((1, -1), repeat=g.m):
            poly = char_poly_exact(SignedGraph(g, signs))
            for i, c in enumerate(poly):
                totals[i] += c
        scale = Fraction(1, 2**g.m)
        return [scale * c for c in totals]
    raise ValueError(f"unknown method {method!r}")


def signed_char_poly_values(g, lambda0):
    """phi_pi(lambda0) for every signing, as exact rationals (lambda0 is
    taken at its exact binary value)."""
    if g.m > MEAN_EDGE_LIMIT:
        raise BudgetError(
            f"signing enumeration supports at most {MEAN_EDGE_LIMIT} edges"
        )
    x = Fraction(lambda0)
    values = []
    for signs in itertools.product((1, -1), repeat=g.m):
        poly = char_poly_exact(SignedGraph(g, signs))
        values.append(poly_eval(poly, x))
    return values


def geometric_mean_evaluate(g, lambda0, precision_bits=256):
    """(prod_pi phi_pi(lambda0))^(2^-|E|).

    The product is computed exactly; a negative product contradicts the
    geometric-mean identity and is reported as an inconsistency rather than
    silently truncated.  A zero product (lambda0 hits a root of some
    signing) evaluates to exactly 0.
    """
    values = signed_char_poly_values(g, lambda0)
    product = Fraction(1)
    for v in values:
        product *= v
    if g.m == 0:
        # a single signing: the mean is the polynomial value itself
        return float(product)
    if product < 0:
        # impossible for |E| >= 1: each switching class contributes its
        # value an even number 2^(|V|-c) of times
        raise ConsistencyError(
            f"negative signed product at lambda0={lambda0}; this contradicts "
            "the geometric-mean identity"
        )
    if product == 0:
        return 0.0
    with mp.workprec(precision_bits):
        value = mp.mpf(product.numerator) / mp.mpf(product.denominator)
        return float(mp.root(value, 2**g.m))


@dataclass(frozen=True)
class AmgmReport:
    status: str  # "pass", "fail", or "skipped"
    lambda0: float
    alpha_value: Fraction | None
    beta_value: float | None
    equality: bool | None
    detail: str


def amgm_check(g, lambda0, tolerance=1e-9):
    """Arithmetic versus geometric mean of the signed characteristic
    polynomials at lambda0: alpha(lambda0) >= beta(lambda0), with equality
    exactly when all signings agree there.  Skipped (not failed) when some
    phi_pi(lambda0) is negative, since the comparison is conditional on
    non-negative values."""
    values = signed_char_poly_values(g, lambda0)
    if any(v < 0 for v in values):
        return AmgmReport(
            status="skipped",
            lambda0=float(lambda0),
            alpha_value=None,
            beta_value=None,
            equality=None,
            detail="some signed characteristic polynomial is negative here",
        )
    alpha_value = sum(values, Fraction(0)) / 2**g.m
    beta_value = geometric_mean_evaluate(g, lambda0)
    spread = float(max(values) - min(values))
    all_equal = spread <= tolerance
    gap = float(alpha_value) - beta_value
    if gap < -tolerance:
        status = "fail"
        detail = f"alpha - beta = {gap:.3e} is negative"
    elif all_equal != (abs(gap) <= tolerance):
        status = "fail"
        detail = (
            f"equality case mismatch: spread {spread:.3e} but gap {gap:.3e}"
        )
    else:
        status = "pass"
        detail = "equality" if all_equal else f"strict by {gap:.6g}"
    return AmgmReport(
        status=status,
        lambda0=float(lambda0),
        alpha_value=alpha_value,
        beta_value=beta_value,
        equality=all_equal,
        detail=detail,
    )
