"""Averaging operators on corank-one strata and the phase polynomial they force.

The operator for the diagonal element with l trailing p's acts on functions of
the stratification signature: enumerate the coset representatives, multiply
each against a canonical stratum representative diag(0, p^{k_1}, ...,
p^{k_{n-1}}), re-stratify, average with weight 1/n_l.  Chaining the n-1
operators on a generic stratum eliminates the carry terms and leaves a degree-n
polynomial in x = p^beta whose roots decide where nonzero stationary solutions
exist.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .cosets import coset_count, enumerate_tl_reps
from .exact import ConsistencyError, IntMatrix, RatMatrix, elementary_symmetric, matmul
from .padic import stratify
from .ratfunc import Poly

__all__ = [
    "HeckeElement",
    "StratumFunction",
    "apply_hecke",
    "RecursionStep",
    "RecursionChain",
    "recursion_coefficients",
    "PhasePolynomial",
    "phase_polynomial",
    "phase_roots",
    "coefficient_identity_check",
    "stationary_stratum_solution",
    "PhaseVerdict",
    "kms_classify",
    "kms_breakpoints",
]


@dataclass(frozen=True)
class HeckeElement:
    n: int
    p: int
    l: int  # number of trailing p's on the diagonal

    def __post_init__(self):
        if not 1 <= self.l <= self.n:
            raise ValueError(f"need 1 <= l <= n, got l={self.l}")
        if self.p < 2:
            raise ValueError(f"need p >= 2, got {self.p}")

    def matrix(self) -> IntMatrix:
        return IntMatrix.diagonal(
            [1] * (self.n - self.l) + [self.p] * self.l
        )


def _check_signature(n: int, sig) -> tuple:
    sig = tuple(int(k) for k in sig)
    if len(sig) != n - 1:
        raise ValueError(f"signature must have length {n - 1}, got {sig}")
    if any(sig[i] > sig[i + 1] for i in range(len(sig) - 1)):
        raise ValueError(f"signature must be ascending, got {sig}")
    return sig


@dataclass(frozen=True)
class StratumFunction:
    """Finite rational combination of corank-one stratum indicators."""

    n: int
    p: int
    terms: tuple  # sorted ((signature, Fraction), ...) with zero values dropped

    @staticmethod
    def of(n: int, p: int, mapping) -> "StratumFunction":
        clean = {}
        for sig, val in dict(mapping).items():
            sig = _check_signature(n, sig)
            val = Fraction(val)
            if val != 0:
                clean[sig] = val
        return StratumFunction(n, p, tuple(sorted(clean.items())))

    @staticmethod
    def indicator(n: int, p: int, sig) -> "StratumFunction":
        return StratumFunction.of(n, p, {tuple(sig): Fraction(1)})

    def support(self) -> tuple:
        return tuple(sig for sig, _ in self.terms)

    def value(self, sig) -> Fraction:
        for s, v in self.terms:
            if s == tuple(sig):
                return v
        return Fraction(0)

    def as_dict(self) -> dict:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def scale(self, c) -> "StratumFunction":
        c = Fraction(c)
        return StratumFunction.of(
            self.n, self.p, {s: c * v for s, v in self.terms}
        )

    def __add__(self, other: "StratumFunction") -> "StratumFunction":
        if (self.n, self.p) != (other.n, other.p):
            raise ValueError("stratum functions live on different spaces")
        out = dict(self.terms)
        for s, v in other.terms:
            out[s] = out.get(s, Fraction(0)) + v
        return StratumFunction.of(self.n, self.p, out)

    def __sub__(self, other: "StratumFunction") -> "StratumFunction":
        return self + other.scale(-1)


def _canonical_rep(p: int, sig) -> RatMatrix:
    return RatMatrix.diagonal([Fraction(0)] + [Fraction(p) ** k for k in sig])


def apply_hecke(t: HeckeElement, f: StratumFunction) -> StratumFunction:
    """Image of f under the averaging operator for t, as a stratum function.

    Candidate output signatures are scanned over a finite box that provably
    contains the support (partial minor sums can only drop by at most min(r, l)
    under the coset action); spurious candidates average to zero.
    """
    if (t.n, t.p) != (f.n, f.p):
        raise ValueError("operator and function live on different spaces")
    if f.is_zero():
        return f
    n, p, l = t.n, t.p, t.l
    reps = [r.inner.to_rat() for r in enumerate_tl_reps(n, p, l)]
    n_l = len(reps)
    lookup = f.as_dict()
    sigs = f.support()
    lo = min(min(s) for s in sigs) - l
    hi = max(max(s) for s in sigs) + l
    sums = [sum(s) for s in sigs]
    out = {}
    for u in itertools.combinations_with_replacement(range(lo, hi + 1), n - 1):
        if not min(sums) - l <= sum(u) <= max(sums):
            continue
        xu = _canonical_rep(p, u)
        acc = Fraction(0)
        for h in reps:
            image = stratify(matmul(h, xu), p)
            acc += lookup.get(image.signature, Fraction(0))
        if acc != 0:
            out[u] = acc / n_l
    return StratumFunction.of(n, p, out)


# ----- the elimination chain -----


@dataclass(frozen=True)
class RecursionStep:
    j: int
    coset_count: int  # n_j
    lead_coefficient: int  # p^(n-j), multiplies the previous carry
    delta: StratumFunction  # carry term after subtracting the lead part


@dataclass(frozen=True)
class RecursionChain:
    n: int
    p: int
    base_signature: tuple
    steps: tuple  # RecursionStep for j = 1 .. n-1
    closing_shift_verified: bool  # last carry == indicator shifted by -1 everywhere


def recursion_coefficients(n: int, p: int) -> RecursionChain:
    """Chain n_j * (T_j f) = p^(n-j) * Delta_{j-1} + Delta_j on a generic stratum.

    f is the indicator of a well-separated ascending signature; Delta_0 = f.
    Raises if the first step's same-stratum coefficient is not exactly p^(n-1)
    or the final carry is not exactly the fully shifted indicator (whose
    integral carries the p^(n beta) closing term).
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    base = tuple(3 * i for i in range(n - 1))
    f = StratumFunction.indicator(n, p, base)
    prev = f
    steps = []
    for j in range(1, n):
        t = HeckeElement(n, p, j)
        n_j = len(enumerate_tl_reps(n, p, j))
        image = apply_hecke(t, f).scale(n_j)
        lead = p ** (n - j)
        delta = image - prev.scale(lead)
        if j == 1 and delta.value(base) != 0:
            raise ConsistencyError(
                f"same-stratum coefficient is not p^(n-1) at n={n}, p={p}"
            )
        steps.append(
            RecursionStep(j=j, coset_count=n_j, lead_coefficient=lead, delta=delta)
        )
        prev = delta
    shifted = StratumFunction.indicator(n, p, tuple(k - 1 for k in base))
    closing = prev == shifted
    if not closing:
        raise ConsistencyError(f"chain did not close onto the shifted stratum at n={n}, p={p}")
    return RecursionChain(
        n=n, p=p, base_signature=base, steps=tuple(steps), closing_shift_verified=closing
    )


# ----- phase polynomial -----


@dataclass(frozen=True)
class PhasePolynomial:
    n: int
    p: int
    coefficients: tuple  # ascending in x = p^beta, degree n, leading -1

    def poly(self) -> Poly:
        return Poly.of(self.coefficients)

    def evaluate(self, x):
        return self.poly().evaluate(x)

    def pretty(self) -> str:
        return self.poly().pretty(var="x")


def phase_polynomial(n: int, p: int) -> PhasePolynomial:
    """Eliminate the chain: E_0 = 1, E_j = n_j x^j - p^(n-j) E_{j-1},
    P = n_{n-1} x^(n-1) - p E_{n-2} - x^n."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    counts = {j: int(coset_count(n, p, j)) for j in range(1, n)}
    e = Poly.const(1)
    for j in range(1, n - 1):
        e = Poly.monomial(j, counts[j]) - e.scale(p ** (n - j))
    poly = Poly.monomial(n - 1, counts[n - 1]) - e.scale(p) - Poly.monomial(n, 1)
    coeffs = tuple(poly.coeff(k) for k in range(n + 1))
    return PhasePolynomial(n=n, p=p, coefficients=coeffs)


def phase_roots(n: int, p: int) -> list:
    """Verified roots 1, p, ..., p^(n-1), each by exact synthetic division."""
    quotient = phase_polynomial(n, p).poly()
    roots = [p**i for i in range(n)]
    for r in roots:
        quotient, rem = quotient.divmod(Poly.of([-r, 1]))
        if not rem.is_zero():
            raise ConsistencyError(
                f"x={r} is not an exact root of the phase polynomial (n={n}, p={p})"
            )
    if quotient != Poly.const(-1):
        raise ConsistencyError(
            f"phase polynomial does not factor as -(x-1)...(x-p^(n-1)) for n={n}, p={p}"
        )
    return roots


def coefficient_identity_check(n: int, p: int, l: int) -> bool:
    """p * p^2 * ... * p^(n-1-l) * n_l == E_{n-l}(1, p, ..., p^(n-1))."""
    if not 0 <= l <= n - 1:
        raise ValueError(f"need 0 <= l <= n-1, got {l}")
    lhs = p ** ((n - 1 - l) * (n - l) // 2) * coset_count(n, p, l)
    rhs = elementary_symmetric(n - l, [p**i for i in range(n)])
    return lhs == rhs


def stationary_stratum_solution(n: int, p: int, beta) -> bool:
    """Whether the chain admits a nonzero solution: the phase polynomial
    vanishes at x = p^beta.  True exactly on beta in {0, 1, ..., n-1}."""
    beta = Fraction(beta)
    if beta.denominator != 1:
        return False  # p^beta is irrational, cannot hit an integer root
    x = Fraction(p) ** int(beta)
    return phase_polynomial(n, p).evaluate(x) == 0


# ----- classification -----


@dataclass(frozen=True)
class PhaseVerdict:
    kind: str  # NoState | BoundaryConstructed | UniqueState | ExtremalFamily | Undetermined
    boundary_k: int | None = None
    label: str | None = None


def kms_classify(n: int, beta) -> PhaseVerdict:
    """Phase diagram verdict at inverse temperature beta."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    beta = Fraction(beta)
    if beta == 0:
        return PhaseVerdict("NoState")
    if beta.denominator == 1 and 1 <= beta <= n - 1:
        k = int(beta)
        label = "U\\GL_2(Ẑ)" if (n, k) == (2, 1) else None
        return PhaseVerdict("BoundaryConstructed", boundary_k=k, label=label)
    if beta > n:
        return PhaseVerdict("ExtremalFamily", label=f"Γ\\P×GL_{n}(Ẑ)")
    if beta > n - 1:
        return PhaseVerdict("UniqueState")
    return PhaseVerdict("NoState")


def kms_breakpoints(n: int) -> list:
    """Parameters where the verdict changes: 0, 1, ..., n-1, n."""
    return [Fraction(k) for k in range(n)] + [Fraction(n)]
