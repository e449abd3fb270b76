"""Cylinder-set measures for the determinant scaling condition.

The local measure at p with parameter beta has density |det x|^(beta-n) against
additive Haar on Mat_n(Z_p), normalized to total mass 1.  Every congruence
class then has mass a rational function in the formal variable t = p^(-beta),
computed in closed form from the capped elementary-divisor valuations of any
lift.  Scaling checks decompose the image of a cylinder under an integer
matrix into honestly enumerated classes at a raised level and compare exact
rational functions, so nothing rests on floating point.

The beta = k singular measures put additive Haar on the k free columns of the
rank-k support instead; their masses are plain rationals.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .cosets import enumerate_reduced, smith_divisors
from .exact import IntMatrix, RatMatrix, det, inverse, matmul, sys_eps, valuation
from .padic import rank1_normalize
from .ratfunc import Poly, RatFunc
from .zeta import det_valuation_counts, zeta_local_partial

__all__ = [
    "LocalConstraint",
    "CylinderSet",
    "LocalMassExpr",
    "SingularSupport",
    "haar_mass_poly",
    "haar_mass_gl",
    "gl_residue_count",
    "local_mass_single",
    "local_mass",
    "local_mass_by_cosets",
    "total_mass_series_check",
    "reciprocity_check",
    "refinement_check",
    "image_class_residues",
    "scaling_check",
    "PolarizationResult",
    "polarization_check",
    "singular_mass",
    "singular_scaling_check",
    "ExtremalLabel",
    "extremal_label_beta1_gl2",
]


# ----- cylinder sets -----


@dataclass(frozen=True)
class LocalConstraint:
    p: int
    scale: int  # the set sits inside p^-scale * Mat_n(Z_p)
    level: int  # congruence depth N >= 1
    residue: IntMatrix  # entries reduced mod p^level


@dataclass(frozen=True)
class CylinderSet:
    """Congruence constraints at finitely many primes; unconstrained primes
    carry all of Mat_n(Z_p), and the archimedean factor has unit mass."""

    n: int
    constraints: tuple  # LocalConstraint sorted by p, distinct primes

    @staticmethod
    def of(n: int, constraints) -> "CylinderSet":
        if n < 1:
            raise ValueError(f"need n >= 1, got {n}")
        cleaned = []
        for c in constraints:
            if not isinstance(c, LocalConstraint):
                p, scale, level, residue = c
                c = LocalConstraint(int(p), int(scale), int(level), residue)
            if c.p < 2:
                raise ValueError(f"bad prime {c.p}")
            if c.level < 1:
                raise ValueError(f"need level >= 1, got {c.level}")
            q = c.p**c.level
            rows = c.residue.entries if isinstance(c.residue, IntMatrix) else c.residue
            residue = IntMatrix.from_rows([[e % q for e in row] for row in rows])
            if residue.n != n:
                raise ValueError(f"residue must be {n}x{n}")
            cleaned.append(LocalConstraint(c.p, c.scale, c.level, residue))
        cleaned.sort(key=lambda c: c.p)
        if len({c.p for c in cleaned}) != len(cleaned):
            raise ValueError("one constraint per prime")
        return CylinderSet(n, tuple(cleaned))

    def primes(self) -> tuple:
        return tuple(c.p for c in self.constraints)

    def constraint(self, p: int) -> LocalConstraint | None:
        for c in self.constraints:
            if c.p == p:
                return c
        return None


@dataclass(frozen=True)
class LocalMassExpr:
    """Product over primes of rational functions in t_p = p^(-beta)."""

    factors: tuple  # ((p, RatFunc), ...) sorted by p, trivial factors dropped

    @staticmethod
    def of(pairs) -> "LocalMassExpr":
        merged = {}
        for p, rf in pairs:
            merged[p] = merged.get(p, RatFunc.const(1)) * rf
        one = RatFunc.const(1)
        return LocalMassExpr(
            tuple(sorted((p, rf) for p, rf in merged.items() if rf != one))
        )

    def factor(self, p: int) -> RatFunc:
        for q, rf in self.factors:
            if q == p:
                return rf
        return RatFunc.const(1)

    def __mul__(self, other: "LocalMassExpr") -> "LocalMassExpr":
        return LocalMassExpr.of(self.factors + other.factors)

    def evaluate(self, beta):
        """Specialize every t_p to p^-beta: exact for integer beta, float else."""
        exact = isinstance(beta, int) or (
            isinstance(beta, Fraction) and beta.denominator == 1
        )
        total = Fraction(1) if exact else 1.0
        for p, rf in self.factors:
            t = Fraction(p) ** -int(beta) if exact else float(p) ** -float(beta)
            total = total * rf.evaluate(t)
        return total

    def is_zero(self) -> bool:
        return any(rf.num.is_zero() for _, rf in self.factors)


@dataclass(frozen=True)
class SingularSupport:
    """Rank-k support: matrices (0 | X) with k free trailing columns, twisted
    on the right by a unit matrix at each listed prime."""

    k: int
    twists: tuple  # ((p, IntMatrix), ...) sorted by p

    @staticmethod
    def of(k: int, twists=()) -> "SingularSupport":
        pairs = []
        for p, g in sorted(dict(twists).items()):
            g = g if isinstance(g, IntMatrix) else IntMatrix.from_rows(g)
            d = det(g)
            if d == 0 or valuation(Fraction(d), p) != 0:
                raise ValueError(f"twist at {p} must be a unit matrix")
            pairs.append((int(p), g))
        return SingularSupport(int(k), tuple(pairs))

    def twist(self, p: int) -> IntMatrix | None:
        for q, g in self.twists:
            if q == p:
                return g
        return None


# ----- closed-form local masses -----


def haar_mass_poly(n: int, p: int) -> Poly:
    out = Poly.const(1)
    for j in range(n):
        out = out * Poly.of([1, -(p**j)])
    return out


def haar_mass_gl(n: int, p: int) -> LocalMassExpr:
    """Mass of GL_n(Z_p): prod_{j=0}^{n-1} (1 - p^j t_p)."""
    return LocalMassExpr.of([(p, RatFunc.from_poly(haar_mass_poly(n, p)))])


def gl_residue_count(n: int, p: int, level: int) -> int:
    """#GL_n(Z/p^level) by the closed-form order."""
    if level < 1:
        raise ValueError(f"need level >= 1, got {level}")
    count = p ** (n * n * (level - 1))
    for j in range(n):
        count *= p**n - p**j
    return count


def _capped_signature(n: int, p: int, level: int, rows) -> tuple:
    """(E, m): sum of level-capped divisor valuations, and how many hit the cap.

    The capped valuations of a residue class do not depend on the lift: a
    perturbation by p^level changes a size-r minor by a multiple of p^level
    times a size-(r-1) minor."""
    if level == 0:
        return (0, n)
    e = []
    for d in smith_divisors(IntMatrix.from_rows(rows)):
        if d == 0:
            e.append(level)
        else:
            e.append(min(valuation(d, p), level))
    m = sum(1 for x in e if x == level)
    return (sum(e), m)


@lru_cache(maxsize=None)
def _class_mass(n: int, p: int, level: int, e_total: int, capped: int) -> RatFunc:
    # integral of |det|^(beta-n) over the class, divided by the same integral
    # over all of Mat_n(Z_p); the capped directions contribute a smaller copy
    # of the full integral, the fixed divisors contribute (p^n t)^e factors
    m = capped
    const = Fraction(1, p ** (n * n * level)) * Fraction(p) ** (n * e_total)
    for j in range(m):
        const *= 1 - Fraction(p) ** (j - m)
    num = Poly.monomial(e_total, const)
    den = Poly.const(1)
    for j in range(m):
        den = den * Poly.of([1, -(p ** (n - m + j))])
    z_const = Fraction(1)
    for j in range(n):
        z_const *= 1 - Fraction(p) ** (j - n)
    z_den = haar_mass_poly(n, p)
    return RatFunc.of(num * z_den, den.scale(z_const))


def local_mass_single(n: int, p: int, level: int, residue, scale: int = 0) -> RatFunc:
    """Mass of one local congruence class as a rational function of t = p^-beta."""
    if level < 0:
        raise ValueError(f"need level >= 0, got {level}")
    rows = residue.entries if isinstance(residue, IntMatrix) else residue
    q = p**level if level else 1
    rows = tuple(tuple(e % q for e in row) for row in rows)
    e_total, m = _capped_signature(n, p, level, rows)
    return _class_mass(n, p, level, e_total, m).shift(-n * scale)


def local_mass(c: CylinderSet) -> LocalMassExpr:
    return LocalMassExpr.of(
        (k.p, local_mass_single(c.n, k.p, k.level, k.residue, k.scale))
        for k in c.constraints
    )


def local_mass_by_cosets(n: int, p: int, level: int, residue, scale: int = 0) -> RatFunc:
    """Same mass by enumerating the right cosets h GL_n(Z_p) meeting the class.

    Only classes with every capped divisor valuation below the level have
    finitely many contributing cosets; the determinant valuation v is then
    constant on the class, and each coset of determinant p^v contributes
    t^v p^(nv) / #GL_n(Z/p^level) when the column lattice of h contains the
    lift, i.e. h^-1 x0 is p-integral."""
    if level < 1:
        raise ValueError(f"need level >= 1, got {level}")
    rows = residue.entries if isinstance(residue, IntMatrix) else residue
    q = p**level
    lift = IntMatrix.from_rows([[e % q for e in row] for row in rows])
    e_total, m = _capped_signature(n, p, level, lift.entries)
    if m > 0:
        raise ValueError(
            "class touches the singular locus: coset sum does not terminate"
        )
    count = 0
    target = lift.to_rat()
    for rm in enumerate_reduced(n, p**e_total):
        h = rm.inner.transpose().to_rat()
        if matmul(inverse(h), target).is_integral():
            count += 1
    weight = Fraction(count * p ** (n * e_total), gl_residue_count(n, p, level))
    mass = RatFunc.of(
        Poly.monomial(e_total, weight) * haar_mass_poly(n, p), Poly.const(1)
    )
    return mass.shift(-n * scale)


# ----- identity checks -----


def total_mass_series_check(n: int, p: int, order: int = 10) -> bool:
    """haar_mass * (coset-counted series of 1/haar_mass) == 1 mod t^(order+1).

    The series coefficients come from counting reduced matrices by determinant
    valuation, independently of the closed form they are checked against."""
    counts = det_valuation_counts(n, p, order)
    series = Poly.of([Fraction(c) for c in counts])
    product = (haar_mass_poly(n, p) * series).truncate(order)
    return product == Poly.const(1)


def reciprocity_check(n: int, p: int) -> bool:
    """haar_mass_gl times the local determinant sum equals 1 in t exactly.

    The sum side is assembled factor by factor as a rational function, so the
    cancellation against the mass polynomial is performed by the gcd
    arithmetic rather than assumed."""
    total = RatFunc.const(1)
    for j in range(n):
        total = total * RatFunc.of(Poly.const(1), Poly.of([1, -(p**j)]))
    product = RatFunc.from_poly(haar_mass_poly(n, p)) * total
    return product == RatFunc.const(1)


def refinement_check(n: int, p: int, level: int, residue) -> bool:
    """Mass of a class equals the sum over its p^(n^2) refinements one level down."""
    rows = residue.entries if isinstance(residue, IntMatrix) else residue
    q = p**level
    tally = Counter()
    cells = [(i, j) for i in range(n) for j in range(n)]
    for bump in itertools.product(range(p), repeat=n * n):
        refined = [list(r) for r in rows]
        for (i, j), b in zip(cells, bump):
            refined[i][j] = refined[i][j] % q + b * q
        tally[_capped_signature(n, p, level + 1, refined)] += 1
    total = RatFunc.const(0)
    for (e_total, m), count in sorted(tally.items()):
        total = total + _class_mass(n, p, level + 1, e_total, m) * RatFunc.const(count)
    return total == local_mass_single(n, p, level, rows)


def _prime_factors(m: int) -> dict:
    out = {}
    d = 2
    while d * d <= m:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def image_class_residues(n: int, p: int, g: IntMatrix, level: int, residue):
    """Residues mod p^(level + delta) whose classes partition g * (the class).

    delta is the p-valuation of det g; the image of Mat_n(Z_p) under g is,
    column by column, the column lattice of g, enumerated modulo p^delta."""
    d = det(g)
    if d == 0:
        raise ValueError("g must be invertible")
    delta = valuation(d, p) if d % p == 0 else 0
    rows = residue.entries if isinstance(residue, IntMatrix) else residue
    level2 = level + delta
    q2 = p**level2
    base = [
        [sum(g.entries[i][j] * rows[j][jj] for j in range(n)) % q2 for jj in range(n)]
        for i in range(n)
    ]
    if delta == 0:
        yield tuple(tuple(row) for row in base)
        return
    pd = p**delta
    column_images = set()
    for combo in itertools.product(range(pd), repeat=n):
        column_images.add(
            tuple(sum(g.entries[i][j] * combo[j] for j in range(n)) % pd for i in range(n))
        )
    column_images = sorted(column_images)
    step = p**level
    for cols in itertools.product(column_images, repeat=n):
        yield tuple(
            tuple((base[i][j] + step * cols[j][i]) % q2 for j in range(n))
            for i in range(n)
        )


def _full_constraint(n: int, p: int) -> LocalConstraint:
    zero = IntMatrix.from_rows([[0] * n for _ in range(n)])
    return LocalConstraint(p, 0, 0, zero)


def scaling_check(n: int, g: IntMatrix, c: CylinderSet) -> bool:
    """mass(g C) == (prod_p t_p^(a_p)) * mass(C) exactly, a_p = v_p(det g).

    The left side is computed by decomposing g C into classes at raised level,
    prime by prime, never by applying the scaling rule being tested."""
    if c.n != n or g.n != n:
        raise ValueError("dimension mismatch")
    d = det(g)
    if d <= 0:
        raise ValueError(f"need det g > 0, got {d}")
    factors = _prime_factors(d)
    primes = sorted(set(c.primes()) | set(factors))
    for p in primes:
        k = c.constraint(p) or _full_constraint(n, p)
        delta = factors.get(p, 0)
        expected = local_mass_single(n, p, k.level, k.residue, k.scale).shift(delta)
        tally = Counter()
        for rows in image_class_residues(n, p, g, k.level, k.residue):
            tally[_capped_signature(n, p, k.level + delta, rows)] += 1
        total = RatFunc.const(0)
        for (e_total, m), cnt in sorted(tally.items()):
            total = total + _class_mass(n, p, k.level + delta, e_total, m) * RatFunc.const(cnt)
        if total.shift(-n * k.scale) != expected:
            return False
    return True


@dataclass(frozen=True)
class PolarizationResult:
    ok: bool
    residual: float
    bound: float
    terms: int


def polarization_check(n: int, p: int, beta: float, truncation: int) -> PolarizationResult:
    """|partial coset sum * haar mass - 1| within the geometric tail bound."""
    beta = float(beta)
    if beta <= n - 1:
        raise ValueError(f"diverges for beta <= n-1 (beta={beta})")
    part = zeta_local_partial(n, p, beta, truncation + 1)
    haar = 1.0
    for j in range(n):
        haar *= 1.0 - p ** (j - beta)
    residual = abs(part.value * haar - 1.0)
    bound = part.tail_bound * haar + 64 * sys_eps() * (part.value * haar + 1.0)
    return PolarizationResult(
        ok=residual <= bound, residual=residual, bound=bound, terms=truncation + 1
    )


# ----- beta = k singular measures -----


def _rat_residue(x: Fraction, p: int, modulus: int) -> int:
    # reduce a p-integral rational mod p^N
    den = x.denominator
    if den % p == 0:
        raise ValueError(f"{x} is not p-integral at {p}")
    if modulus == 1:
        return 0
    return x.numerator * pow(den, -1, modulus) % modulus


def _singular_factor(
    n: int, k: int, p: int, constraint: LocalConstraint, support: SingularSupport
) -> Fraction:
    twist = support.twist(p)
    untwist = inverse(twist.to_rat()) if twist is not None else RatMatrix.identity(n)
    q = p**constraint.level
    shifted = matmul(constraint.residue.to_rat(), untwist)
    for i in range(n):
        for j in range(n - k):
            if _rat_residue(shifted.entry(i, j), p, q) != 0:
                return Fraction(0)
    return Fraction(p) ** (n * k * (constraint.scale - constraint.level))


def singular_mass(n: int, k: int, c: CylinderSet, support: SingularSupport):
    """Mass of the cylinder against the beta = k measure on the twisted rank-k
    support: additive Haar on the k free columns, level-0 full cylinder mass 1.

    Returns a LocalMassExpr of constant factors (no t_p dependence remains)."""
    if not 1 <= k <= n - 1:
        raise ValueError(f"need 1 <= k <= n-1, got {k}")
    if support.k != k:
        raise ValueError("support rank mismatch")
    if c.n != n:
        raise ValueError("dimension mismatch")
    return LocalMassExpr.of(
        (kk.p, RatFunc.const(_singular_factor(n, k, kk.p, kk, support)))
        for kk in c.constraints
    )


def singular_scaling_check(
    n: int, k: int, g: IntMatrix, c: CylinderSet, support: SingularSupport
) -> bool:
    """mass(g C) == det(g)^-k * mass(C) for the beta = k singular measure."""
    d = det(g)
    if d <= 0:
        raise ValueError(f"need det g > 0, got {d}")
    factors = _prime_factors(d)
    primes = sorted(set(c.primes()) | set(factors))
    for p in primes:
        kk = c.constraint(p) or _full_constraint(n, p)
        delta = factors.get(p, 0)
        expected = Fraction(p) ** (-delta * k) * _singular_factor(n, k, p, kk, support)
        total = Fraction(0)
        level2 = kk.level + delta
        for rows in image_class_residues(n, p, g, kk.level, kk.residue):
            piece = LocalConstraint(p, kk.scale, level2, IntMatrix.from_rows(rows))
            total += _singular_factor(n, k, p, piece, support)
        if total != expected:
            return False
    return True


# ----- beta = 1 extremal labels for n = 2 -----


@dataclass(frozen=True)
class ExtremalLabel:
    p: int
    row: tuple  # normalized bottom row (1, x) with x p-integral, or (y, 1)
    normalizer: RatMatrix  # unit u with m u in normal position (0 | c)


def _canonical_projective_row(r1: Fraction, r2: Fraction, p: int) -> tuple:
    def val(x):
        return valuation(x, p) if x != 0 else None

    v1, v2 = val(r1), val(r2)
    if v1 is None and v2 is None:
        raise ValueError("zero row has no projective class")
    if v2 is None or (v1 is not None and v1 <= v2):
        return (Fraction(1), r2 / r1)
    return (r1 / r2, Fraction(1))


def extremal_label_beta1_gl2(m: RatMatrix, primes) -> tuple:
    """Which piece of the rank-1 support partition m falls in, per prime.

    Writing m = (0 | c) gamma with gamma a unit, the piece is the left coset
    U gamma of the upper-triangular units; it is reported as the projective
    class of gamma's bottom row, normalized so the minimal-valuation entry
    (first on ties) becomes 1.  Any two decompositions differ by an upper
    unit on the left of gamma and give the same row."""
    labels = []
    for p in sorted(set(int(q) for q in primes)):
        u = rank1_normalize(m, p)
        gamma = inverse(u)
        row = _canonical_projective_row(gamma.entry(1, 0), gamma.entry(1, 1), p)
        labels.append(ExtremalLabel(p=p, row=row, normalizer=u))
    return tuple(labels)
