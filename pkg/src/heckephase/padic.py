"""p-adic classification of square rational matrices.

A nonzero singular matrix is two-sided-equivalent to diag(0,...,0, p^{k_1},
..., p^{k_l}) with k_1 <= ... <= k_l, via a left factor of determinant one and
a right factor of unit determinant, both p-integral.  The reduction below runs
that elimination on exact rationals and keeps both factors as a checkable
witness.  Signatures may be negative: entries live in Q_p, not Z_p.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .exact import IntMatrix, RatMatrix, det, valuation

__all__ = [
    "Stratum",
    "SnfWitness",
    "stratify",
    "snf_witnesses",
    "minor_valuations",
    "rank1_normalize",
]


@dataclass(frozen=True)
class Stratum:
    kind: str  # "invertible" | "singular" | "zero"
    det_valuation: int | None = None
    signature: tuple | None = None

    @staticmethod
    def invertible(a: int) -> "Stratum":
        return Stratum("invertible", det_valuation=a)

    @staticmethod
    def singular(signature) -> "Stratum":
        sig = tuple(signature)
        if not sig:
            raise ValueError("singular stratum needs a nonempty signature")
        if any(sig[i] > sig[i + 1] for i in range(len(sig) - 1)):
            raise ValueError(f"signature must be ascending, got {sig}")
        return Stratum("singular", signature=sig)

    @staticmethod
    def zero() -> "Stratum":
        return Stratum("zero")

    def label(self) -> str:
        if self.kind == "invertible":
            return f"Invertible[{self.det_valuation}]"
        if self.kind == "singular":
            return "Singular[" + ",".join(str(k) for k in self.signature) + "]"
        return "Zero"


@dataclass(frozen=True)
class SnfWitness:
    b: RatMatrix  # left factor, det exactly 1, p-integral
    c: RatMatrix  # right factor, det of valuation 0, p-integral
    d: RatMatrix  # diagonal, zeros first, then +p^k ascending


def _as_rat(m) -> RatMatrix:
    return m.to_rat() if isinstance(m, IntMatrix) else m


def _two_sided_reduce(m: RatMatrix, p: int):
    """Return (b, c, d_rows, vals) with b*m*c diagonal, zeros last in d_rows."""
    n = m.n
    a = [[Fraction(x) for x in row] for row in m.entries]
    b = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    c = [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    vals = []
    for s in range(n):
        best = None
        for i in range(s, n):
            for j in range(s, n):
                if a[i][j] != 0:
                    v = valuation(a[i][j], p)
                    if best is None or v < best[0]:
                        best = (v, i, j)
        if best is None:
            break
        v, i, j = best
        if i != s:
            # det-one row swap: (row_s, row_i) -> (row_i, -row_s)
            a[s], a[i] = a[i], [-x for x in a[s]]
            b[s], b[i] = b[i], [-x for x in b[s]]
        if j != s:
            for row in a:
                row[s], row[j] = row[j], row[s]
            for row in c:
                row[s], row[j] = row[j], row[s]
        pivot = a[s][s]
        for r in range(s + 1, n):
            if a[r][s] != 0:
                f = a[r][s] / pivot  # valuation >= 0 by pivot minimality
                a[r] = [x - f * y for x, y in zip(a[r], a[s])]
                b[r] = [x - f * y for x, y in zip(b[r], b[s])]
        for cc in range(s + 1, n):
            if a[s][cc] != 0:
                f = a[s][cc] / pivot
                for r in range(n):
                    a[r][cc] -= f * a[r][s]
                    c[r][cc] -= f * c[r][s]
        unit = pivot / Fraction(p) ** v
        if unit != 1:
            inv = 1 / unit
            for r in range(n):
                a[r][s] *= inv
                c[r][s] *= inv
        vals.append(v)
    return a, b, c, vals


def snf_witnesses(m: RatMatrix | IntMatrix, p: int) -> SnfWitness:
    """Diagonalizing witness (B, C, D) with B*M*C = D exactly; M must be nonzero."""
    m = _as_rat(m)
    if m.is_zero():
        raise ValueError("zero matrix has no diagonalizing witness")
    n = m.n
    a, b, c, vals = _two_sided_reduce(m, p)
    r = len(vals)
    if r < n:
        # move the zero block to the front; permutation applied to rows (into b)
        # and columns (into c) so the diagonal just gets reordered
        perm = list(range(r, n)) + list(range(r))
        a = [a[perm[i]] for i in range(n)]
        b = [b[perm[i]] for i in range(n)]
        for rows in (a, c):
            for i in range(n):
                rows[i] = [rows[i][perm[j]] for j in range(n)]
        if _perm_sign(perm) < 0:
            # restore det(b) = 1; row 0 of the diagonal is now zero, so the
            # matching sign flip never touches a nonzero entry of d
            a[0] = [-x for x in a[0]]
            b[0] = [-x for x in b[0]]
    return SnfWitness(
        b=RatMatrix.from_rows(b),
        c=RatMatrix.from_rows(c),
        d=RatMatrix.from_rows(a),
    )


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = perm[i]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def stratify(m: RatMatrix | IntMatrix, p: int) -> Stratum:
    """Classify m as Zero, Singular(signature), or Invertible(det valuation)."""
    m = _as_rat(m)
    if m.is_zero():
        return Stratum.zero()
    _, _, _, vals = _two_sided_reduce(m, p)
    if len(vals) == m.n:
        return Stratum.invertible(sum(vals))
    return Stratum.singular(vals)


def minor_valuations(m: RatMatrix | IntMatrix, p: int, r: int):
    """Minimum p-adic valuation over all r x r minors; math.inf if they all vanish.

    Independent route for checking signatures: by Cauchy-Binet the value equals
    k_1 + ... + k_r for r up to the rank.
    """
    m = _as_rat(m)
    n = m.n
    if not 1 <= r <= n:
        raise ValueError(f"need 1 <= r <= {n}, got {r}")
    best = math.inf
    for rows in itertools.combinations(range(n), r):
        for cols in itertools.combinations(range(n), r):
            sub = RatMatrix.from_rows(
                [[m.entries[i][j] for j in cols] for i in rows]
            )
            d = det(sub)
            if d != 0:
                best = min(best, valuation(d, p))
    return best


def rank1_normalize(m: RatMatrix | IntMatrix, p: int) -> RatMatrix:
    """For a 2x2 rank-one m, a p-integral unit-determinant g with (m g) e_1 = 0.

    Either the plain column swap, the unipotent [[1,0],[-lam,1]] when
    v_p(lam) >= 0 (lam the column ratio), or swap-then-eliminate when
    v_p(lam) < 0.
    """
    m = _as_rat(m)
    if m.n != 2:
        raise ValueError(f"need a 2x2 matrix, got size {m.n}")
    if m.is_zero():
        raise ValueError("zero matrix is not rank one")
    if det(m) != 0:
        raise ValueError("invertible matrix is not rank one")
    e = m.entries
    col1_zero = e[0][0] == 0 and e[1][0] == 0
    col2_zero = e[0][1] == 0 and e[1][1] == 0
    if col1_zero:
        return RatMatrix.identity(2)
    swap = RatMatrix.from_rows([[0, 1], [1, 0]])
    if col2_zero:
        return swap
    lam = e[0][0] / e[0][1] if e[0][1] != 0 else e[1][0] / e[1][1]
    if valuation(lam, p) >= 0:
        return RatMatrix.from_rows([[1, 0], [-lam, 1]])
    return RatMatrix.from_rows([[-1 / lam, 1], [1, 0]])
