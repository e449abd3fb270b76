"""Coset representatives for integer matrices of fixed positive determinant.

Two families, both as lower triangular canonical forms:
  * enumerate_reduced(n, m): one representative per left SL_n(Z)-orbit of
    {M integer, det M = m}; subdiagonal entries satisfy 0 <= r_ij < r_jj
    (strict, column diagonal), diagonal positive
  * enumerate_tl_reps(n, p, l): representatives of the double coset of
    diag(1,...,1,p,...,p) with l trailing p's, diagonal p^{k_i} with k_i in
    {0,1}, sum k_i = l, subdiagonal bounds p^{k_j (1 - k_i)}

Enumeration order is lexicographic in (diagonal vector, subdiagonal entries
scanned row-major), so output is deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .exact import IntMatrix, det, elementary_symmetric

__all__ = [
    "ReducedMatrix",
    "TlRep",
    "divisors",
    "enumerate_reduced",
    "reduced_count",
    "enumerate_tl_reps",
    "coset_count",
    "smith_divisors",
    "hecke_index",
]


def divisors(m: int) -> list:
    """Sorted positive divisors of m >= 1."""
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d != m // d:
                large.append(m // d)
        d += 1
    return small + large[::-1]


@dataclass(frozen=True)
class ReducedMatrix:
    inner: IntMatrix
    diag: tuple  # diagonal entries, product = det

    @property
    def n(self) -> int:
        return self.inner.n


@dataclass(frozen=True)
class TlRep:
    k: tuple  # 0/1 exponent vector, diagonal is p^{k_i}
    inner: IntMatrix

    @property
    def n(self) -> int:
        return self.inner.n


def _ordered_factorizations(m: int, parts: int) -> Iterator[tuple]:
    if parts == 1:
        yield (m,)
        return
    for d in divisors(m):
        for rest in _ordered_factorizations(m // d, parts - 1):
            yield (d,) + rest


def _subdiagonal_positions(n: int) -> list:
    return [(i, j) for i in range(n) for j in range(i)]


def enumerate_reduced(n: int, m: int) -> list:
    """All reduced lower triangular matrices with determinant m."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    positions = _subdiagonal_positions(n)
    out = []
    for diag in _ordered_factorizations(m, n):
        ranges = [range(diag[j]) for (_, j) in positions]
        for values in itertools.product(*ranges):
            rows = [[0] * n for _ in range(n)]
            for i in range(n):
                rows[i][i] = diag[i]
            for (i, j), v in zip(positions, values):
                rows[i][j] = v
            out.append(ReducedMatrix(IntMatrix.from_rows(rows), diag))
    return out


def reduced_count(n: int, m: int) -> int:
    """Number of reduced matrices with determinant m: sum of prod d_j^(n-j)."""
    if n < 1 or m < 1:
        raise ValueError("need n >= 1 and m >= 1")
    total = 0
    for diag in _ordered_factorizations(m, n):
        prod = 1
        for j, d in enumerate(diag):
            prod *= d ** (n - 1 - j)
        total += prod
    return total


def enumerate_tl_reps(n: int, p: int, l: int) -> list:
    """Double coset representatives for diag(1,..,1,p,..,p) with l trailing p's."""
    if not 0 <= l <= n:
        raise ValueError(f"need 0 <= l <= n, got l={l}")
    if p < 2:
        raise ValueError(f"need p >= 2, got {p}")
    positions = _subdiagonal_positions(n)
    out = []
    for k in itertools.product((0, 1), repeat=n):
        if sum(k) != l:
            continue
        ranges = [range(p ** (k[j] * (1 - k[i]))) for (i, j) in positions]
        for values in itertools.product(*ranges):
            rows = [[0] * n for _ in range(n)]
            for i in range(n):
                rows[i][i] = p ** k[i]
            for (i, j), v in zip(positions, values):
                rows[i][j] = v
            out.append(TlRep(k, IntMatrix.from_rows(rows)))
    return out


def coset_count(n: int, p: int, l: int) -> Fraction:
    """Closed-form coset count E_l(p, p^2, ..., p^n) / p^(l(l+1)/2)."""
    if not 0 <= l <= n:
        raise ValueError(f"need 0 <= l <= n, got l={l}")
    e = elementary_symmetric(l, [p**i for i in range(1, n + 1)])
    return Fraction(e) / p ** (l * (l + 1) // 2)


# ----- integer Smith divisors -----


def smith_divisors(m: IntMatrix) -> tuple:
    """Elementary divisors (d_1 | d_2 | ... ), nonnegative, zeros for rank deficit."""
    n = m.n
    a = [list(row) for row in m.entries]
    out = []
    for k in range(n):
        # locate a pivot of minimal absolute value in the trailing block
        piv = None
        for i in range(k, n):
            for j in range(k, n):
                if a[i][j] != 0 and (piv is None or abs(a[i][j]) < abs(a[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            out.extend([0] * (n - k))
            break
        while True:
            i, j = piv
            a[k], a[i] = a[i], a[k]
            for row in a:
                row[k], row[j] = row[j], row[k]
            # reduce column k, then row k, by Euclid steps
            dirty = False
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    q = a[i][k] // a[k][k]
                    for c in range(k, n):
                        a[i][c] -= q * a[k][c]
                    if a[i][k] != 0:
                        dirty = True
            for j in range(k + 1, n):
                if a[k][j] != 0:
                    q = a[k][j] // a[k][k]
                    for r in range(k, n):
                        a[r][j] -= q * a[r][k]
                    if a[k][j] != 0:
                        dirty = True
            if dirty:
                piv = min(
                    ((i, j) for i in range(k, n) for j in range(k, n) if a[i][j] != 0),
                    key=lambda ij: abs(a[ij[0]][ij[1]]),
                )
                continue
            # divisibility sweep: d_k must divide the rest of the block
            offender = None
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    if a[i][j] % a[k][k] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            for c in range(k, n):
                a[k][c] += a[offender][c]
            piv = (k, k)
        out.append(abs(a[k][k]))
    return tuple(out)


def hecke_index(n: int, g: IntMatrix) -> int:
    """Number of one-sided cosets inside the double coset of g.

    Requires det(g) > 0.  Counts reduced matrices with the same determinant
    and the same elementary divisors as g.
    """
    if g.n != n:
        raise ValueError(f"matrix size {g.n} does not match n={n}")
    d = det(g)
    if d <= 0:
        raise ValueError(f"need positive determinant, got {d}")
    target = smith_divisors(g)
    return sum(
        1 for r in enumerate_reduced(n, d) if smith_divisors(r.inner) == target
    )
