"""Partition functions attached to the determinant weight.

Local factor at p: sum of p^(-beta k) over reduced matrices of determinant p^k,
which telescopes to prod_{j=0}^{n-1} (1 - p^(j-beta))^(-1) and diverges for
beta <= n-1.  The global sum over all positive determinants factors as
prod_{j=0}^{n-1} zeta(beta - j); it is checked here by two independent routes
with rigorous interval arithmetic rather than trusted from the product form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .cosets import reduced_count
from .exact import ZetaPartial, riemann_zeta_partial, sys_eps

__all__ = [
    "ZetaValue",
    "det_valuation_counts",
    "zeta_local",
    "zeta_local_partial",
    "zeta_multi",
    "ZetaGlobalResult",
    "zeta_global",
    "summable",
]


@dataclass(frozen=True)
class ZetaValue:
    kind: str  # "exact" | "numeric" | "divergent"
    exact: Fraction | None = None
    approx: float | None = None

    def as_float(self) -> float:
        if self.kind == "divergent":
            raise ValueError("divergent sum has no value")
        if self.kind == "exact":
            return float(self.exact)
        return self.approx


def _as_exact_beta(beta):
    # Fraction for int/Fraction input; floats only when they are whole numbers,
    # otherwise the caller works in floating point.
    if isinstance(beta, float):
        if beta.is_integer():
            return Fraction(int(beta))
        return None
    return Fraction(beta)


def zeta_local(n: int, p: int, beta) -> ZetaValue:
    """Local determinant sum at one prime: exact rational at integer beta."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    exact_beta = _as_exact_beta(beta)
    if float(beta) <= n - 1:
        return ZetaValue("divergent")
    if exact_beta is not None and exact_beta.denominator == 1:
        b = int(exact_beta)
        value = Fraction(1)
        for j in range(n):
            value /= 1 - Fraction(p) ** (j - b)
        return ZetaValue("exact", exact=value)
    value = 1.0
    for j in range(n):
        value /= 1.0 - p ** (j - float(beta))
    return ZetaValue("numeric", approx=value)


def det_valuation_counts(n: int, p: int, kmax: int) -> list:
    """Number of reduced matrices with determinant p^k, for k = 0 .. kmax.

    Computed as complete homogeneous sums of (1, p, ..., p^(n-1)) by the
    geometric recurrence, which agrees with reduced_count(n, p^k)."""
    coeffs = [1] + [0] * kmax
    for j in range(n):
        v = p**j
        for k in range(1, kmax + 1):
            coeffs[k] += v * coeffs[k - 1]
    return coeffs


def zeta_local_partial(n: int, p: int, beta, terms: int) -> ZetaPartial:
    """Partial local sum over determinant valuations k < terms with a tail bound.

    Counts at valuation k are at most B_n p^(k(n-1)) with
    B_n = prod_{j=1}^{n-1} (1 - p^-j)^(-1), giving a geometric tail."""
    if float(beta) <= n - 1:
        raise ValueError(f"local sum diverges for beta <= n-1 (beta={beta})")
    if terms < 1:
        raise ValueError(f"need terms >= 1, got {terms}")
    kmax = terms - 1
    counts = det_valuation_counts(n, p, kmax)
    value = math.fsum(counts[k] * p ** (-float(beta) * k) for k in range(terms))
    b_n = 1.0
    for j in range(1, n):
        b_n /= 1.0 - p ** (-j)
    q = p ** (n - 1 - float(beta))
    tail = b_n * q**terms / (1.0 - q)
    tail += 8 * sys_eps() * (abs(value) + 1.0)
    return ZetaPartial(value=value, tail_bound=tail, terms_used=terms)


def zeta_multi(n: int, primes, beta) -> ZetaValue:
    """Product of local sums over a finite set of primes."""
    primes = sorted(set(int(p) for p in primes))
    if not primes:
        return ZetaValue("exact", exact=Fraction(1))
    parts = [zeta_local(n, p, beta) for p in primes]
    if any(part.kind == "divergent" for part in parts):
        return ZetaValue("divergent")
    if all(part.kind == "exact" for part in parts):
        value = Fraction(1)
        for part in parts:
            value *= part.exact
        return ZetaValue("exact", exact=value)
    value = 1.0
    for part in parts:
        value *= part.as_float()
    return ZetaValue("numeric", approx=value)


# ----- global sum, two routes -----


@dataclass(frozen=True)
class ZetaGlobalResult:
    n: int
    beta: float
    terms: int
    euler_interval: tuple  # (low, high) from partial zeta factors
    direct_interval: tuple  # (low, high) from summing determinant counts
    consistent: bool  # the two intervals overlap
    estimate: float


def _euler_interval(n: int, beta: float, terms: int) -> tuple:
    lo, hi = 1.0, 1.0
    for j in range(n):
        part = riemann_zeta_partial(beta - j, terms)
        lo *= part.value
        hi *= part.value + part.tail_bound
    slop = 16 * sys_eps()
    return lo * (1.0 - slop), hi * (1.0 + slop)


def _direct_tail_two(beta: float, cutoff: int) -> float:
    # sigma_1(m) <= m (1 + ln m): integrate x^(1-beta) (1 + ln x) beyond cutoff
    s = beta - 2.0
    m = float(cutoff)
    return m**-s / s + m**-s * (s * math.log(m) + 1.0) / (s * s)


def _direct_tail_general(n: int, beta: float, cutoff: int) -> float:
    # every factorization d_1 ... d_n of an m > cutoff has some d_i > cutoff^(1/n);
    # bound the sum over each such position by a full product of zeta upper
    # bounds times one geometric-style tail in that position
    d = float(cutoff) ** (1.0 / n)
    total = 0.0
    uppers = []
    for j in range(n):
        part = riemann_zeta_partial(beta - j, max(64, cutoff))
        uppers.append(part.value + part.tail_bound)
    for i in range(1, n + 1):
        a = (n - i) - beta  # exponent of the oversized factor, a < -1
        tail_i = d ** (a + 1.0) / (-a - 1.0) + d**a
        rest = 1.0
        for j in range(1, n + 1):
            if j != i:
                rest *= uppers[n - j]
        total += rest * tail_i
    return total


def zeta_global(n: int, beta, terms: int = 400) -> ZetaGlobalResult:
    """Global determinant sum for beta > n, bracketed two independent ways.

    Route one multiplies partial sums of zeta(beta - j).  Route two sums
    reduced-matrix counts of each determinant up to a cutoff and bounds the
    rest.  Both intervals contain the true value, so they must overlap."""
    beta = float(beta)
    if beta <= n:
        raise ValueError(f"global sum requires beta > n (beta={beta}, n={n})")
    if terms < 8:
        raise ValueError(f"need terms >= 8, got {terms}")
    euler = _euler_interval(n, beta, terms)
    partial = math.fsum(reduced_count(n, m) * m**-beta for m in range(1, terms + 1))
    if n == 2:
        tail = _direct_tail_two(beta, terms)
    else:
        tail = _direct_tail_general(n, beta, terms)
    slop = 16 * sys_eps() * (abs(partial) + 1.0)
    direct = (partial - slop, partial + tail + slop)
    consistent = max(euler[0], direct[0]) <= min(euler[1], direct[1])
    return ZetaGlobalResult(
        n=n,
        beta=beta,
        terms=terms,
        euler_interval=euler,
        direct_interval=direct,
        consistent=consistent,
        estimate=(euler[0] + euler[1]) / 2.0,
    )


def summable(scope: str, n: int, beta) -> bool:
    """Convergence threshold by scope: one prime and finitely many primes need
    beta > n-1, the full sum needs beta > n."""
    if scope in ("local", "multi"):
        return float(beta) > n - 1
    if scope == "global":
        return float(beta) > n
    raise ValueError(f"unknown scope {scope!r}")
