"""Exact arithmetic kernel: rationals, integer/rational matrices, symmetric sums.

Key choices:
  * rationals are fractions.Fraction everywhere (auto gcd-reduced)
  * determinants are fraction-free Bareiss on integers; rational matrices
    clear denominators row-wise first, so no intermediate rounding anywhere
  * riemann_zeta_partial sums in float via math.fsum and folds the rounding
    slack into the reported tail bound, keeping the bound rigorous
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction

__all__ = [
    "Rational",
    "ConsistencyError",
    "IntMatrix",
    "RatMatrix",
    "ZetaPartial",
    "valuation",
    "elementary_symmetric",
    "riemann_zeta_partial",
    "sys_eps",
    "det",
    "matmul",
    "inverse",
]


class ConsistencyError(RuntimeError):
    """An internally derived identity failed to hold exactly."""


# ----- valuations -----


def valuation(q: Fraction | int, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    if p < 2:
        raise ValueError(f"valuation base must be >= 2, got {p}")
    q = Fraction(q)
    if q == 0:
        raise ValueError("valuation of zero is undefined")

    def _count(m: int) -> int:
        v = 0
        while m % p == 0:
            m //= p
            v += 1
        return v

    return _count(abs(q.numerator)) - _count(q.denominator)


# ----- symmetric polynomials -----


def elementary_symmetric(l: int, values: Sequence[Fraction | int]):
    """E_l(values): sum of all l-fold products of distinct entries."""
    vals = [Fraction(v) for v in values]
    if not 0 <= l <= len(vals):
        raise ValueError(f"need 0 <= l <= {len(vals)}, got l={l}")
    # coefficient DP on prod (1 + v*T)
    coeffs = [Fraction(1)] + [Fraction(0)] * l
    for v in vals:
        for k in range(min(l, len(coeffs) - 1), 0, -1):
            coeffs[k] += v * coeffs[k - 1]
    return coeffs[l]


# ----- partial zeta sums -----


@dataclass(frozen=True)
class ZetaPartial:
    value: float
    tail_bound: float  # rigorous bound on |true - value|, rounding included
    terms_used: int


def riemann_zeta_partial(s: float | Fraction, terms: int) -> ZetaPartial:
    """Partial sum of sum m^-s with an integral-test tail bound.

    Requires s > 1 and terms >= 1.  tail = terms^(1-s)/(s-1) dominates the
    remainder since sum_{m>T} m^-s < int_T^inf x^-s dx.
    """
    sf = float(s)
    if sf <= 1.0:
        raise ValueError(f"zeta partial sum needs s > 1, got {s}")
    if terms < 1:
        raise ValueError(f"need terms >= 1, got {terms}")
    value = math.fsum(m ** (-sf) for m in range(1, terms + 1))
    tail = terms ** (1.0 - sf) / (sf - 1.0)
    slack = 8.0 * sys_eps() * (abs(value) + 1.0)
    return ZetaPartial(value=value, tail_bound=tail + slack, terms_used=terms)


def sys_eps() -> float:
    return 2.220446049250313e-16  # float64 machine epsilon


# ----- matrices -----


def _freeze_rows(rows: Iterable[Iterable], cast) -> tuple:
    out = tuple(tuple(cast(x) for x in row) for row in rows)
    n = len(out)
    if n == 0 or any(len(row) != n for row in out):
        raise ValueError("matrix must be square and nonempty")
    return out


def _cast_int(x) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ValueError(f"integer matrix entry must be int, got {x!r}")
    return x


@dataclass(frozen=True)
class IntMatrix:
    entries: tuple  # tuple of row tuples, int entries

    @staticmethod
    def from_rows(rows) -> "IntMatrix":
        return IntMatrix(_freeze_rows(rows, _cast_int))

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix.from_rows(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def diagonal(values: Sequence[int]) -> "IntMatrix":
        n = len(values)
        return IntMatrix.from_rows(
            [[values[i] if i == j else 0 for j in range(n)] for i in range(n)]
        )

    @property
    def n(self) -> int:
        return len(self.entries)

    def entry(self, i: int, j: int) -> int:
        return self.entries[i][j]

    def to_rat(self) -> "RatMatrix":
        return RatMatrix.from_rows(self.entries)

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows(list(zip(*self.entries)))

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)


@dataclass(frozen=True)
class RatMatrix:
    entries: tuple  # tuple of row tuples, Fraction entries

    @staticmethod
    def from_rows(rows) -> "RatMatrix":
        return RatMatrix(_freeze_rows(rows, Fraction))

    @staticmethod
    def identity(n: int) -> "RatMatrix":
        return RatMatrix.from_rows(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        )

    @staticmethod
    def diagonal(values: Sequence) -> "RatMatrix":
        n = len(values)
        return RatMatrix.from_rows(
            [[values[i] if i == j else 0 for j in range(n)] for i in range(n)]
        )

    @property
    def n(self) -> int:
        return len(self.entries)

    def entry(self, i: int, j: int) -> Fraction:
        return self.entries[i][j]

    def transpose(self) -> "RatMatrix":
        return RatMatrix.from_rows(list(zip(*self.entries)))

    def scale(self, c) -> "RatMatrix":
        c = Fraction(c)
        return RatMatrix.from_rows(
            [[c * x for x in row] for row in self.entries]
        )

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.entries for x in row)

    def to_int(self) -> IntMatrix:
        if not self.is_integral():
            raise ValueError("matrix has non-integer entries")
        return IntMatrix.from_rows(
            [[int(x) for x in row] for row in self.entries]
        )


def _bareiss_int_det(rows: list) -> int:
    # fraction-free elimination; all interior divisions are exact
    n = len(rows)
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def det(m: IntMatrix | RatMatrix):
    """Exact determinant (int for IntMatrix, Fraction for RatMatrix)."""
    if isinstance(m, IntMatrix):
        return _bareiss_int_det(list(m.entries))
    scale = Fraction(1)
    int_rows = []
    for row in m.entries:
        d = math.lcm(*[x.denominator for x in row])
        scale *= d
        int_rows.append([int(x * d) for x in row])
    return Fraction(_bareiss_int_det(int_rows)) / scale


def matmul(a, b):
    """Matrix product; returns RatMatrix unless both factors are integral."""
    if a.n != b.n:
        raise ValueError(f"size mismatch: {a.n} vs {b.n}")
    n = a.n
    rows = [
        [
            sum(a.entries[i][k] * b.entries[k][j] for k in range(n))
            for j in range(n)
        ]
        for i in range(n)
    ]
    if isinstance(a, IntMatrix) and isinstance(b, IntMatrix):
        return IntMatrix.from_rows(rows)
    return RatMatrix.from_rows(rows)


def inverse(m: IntMatrix | RatMatrix) -> RatMatrix:
    """Exact inverse via Gauss-Jordan; raises on singular input."""
    n = m.n
    a = [[Fraction(x) for x in row] for row in m.entries]
    b = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        b[col], b[piv] = b[piv], b[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        b[col] = [x * inv for x in b[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                b[r] = [x - f * y for x, y in zip(b[r], b[col])]
    return RatMatrix.from_rows(b)
