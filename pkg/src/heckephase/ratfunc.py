"""Dense univariate polynomials and rational functions over Fraction.

Small by design: only what exact mass/phase bookkeeping needs (ring ops,
exact division, monic gcd, canonical quotients, truncated power series).
Coefficients are ascending; the zero polynomial is the empty tuple.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = ["Poly", "RatFunc"]


@dataclass(frozen=True)
class Poly:
    coeffs: tuple  # ascending Fraction coefficients, no trailing zeros

    @staticmethod
    def of(coeffs: Sequence) -> "Poly":
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return Poly(tuple(cs))

    @staticmethod
    def const(c) -> "Poly":
        return Poly.of([c])

    @staticmethod
    def x() -> "Poly":
        return Poly.of([0, 1])

    @staticmethod
    def monomial(k: int, c=1) -> "Poly":
        return Poly.of([0] * k + [c])

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no degree")
        return len(self.coeffs) - 1

    def leading(self) -> Fraction:
        return self.coeffs[-1]

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __add__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly.of(
            [self.coeff(k) + other.coeff(k) for k in range(n)]
        )

    def __sub__(self, other: "Poly") -> "Poly":
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly.of(
            [self.coeff(k) - other.coeff(k) for k in range(n)]
        )

    def __neg__(self) -> "Poly":
        return Poly.of([-c for c in self.coeffs])

    def __mul__(self, other: "Poly") -> "Poly":
        if self.is_zero() or other.is_zero():
            return Poly.of([])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly.of(out)

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        return Poly.of([c * a for a in self.coeffs])

    def shift(self, k: int) -> "Poly":
        """Multiply by x^k (k >= 0)."""
        if k < 0:
            raise ValueError("use RatFunc for negative shifts")
        return Poly.of([Fraction(0)] * k + list(self.coeffs))

    def divmod(self, d: "Poly") -> tuple:
        if d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = d.degree()
        lead = d.leading()
        q = [Fraction(0)] * max(0, len(rem) - dd)
        for k in range(len(rem) - 1, dd - 1, -1):
            if rem[k] == 0:
                continue
            f = rem[k] / lead
            q[k - dd] = f
            for j, c in enumerate(d.coeffs):
                rem[k - dd + j] -= f * c
        return Poly.of(q), Poly.of(rem)

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        if a.is_zero():
            return a
        return a.scale(1 / a.leading())  # monic

    def evaluate(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + (c if isinstance(x, (int, Fraction)) else float(c))
        return acc

    def truncate(self, order: int) -> "Poly":
        """Drop all terms of degree > order."""
        return Poly.of(list(self.coeffs[: order + 1]))

    def series_reciprocal(self, order: int) -> "Poly":
        """Power series of 1/self up to x^order; needs nonzero constant term."""
        if self.coeff(0) == 0:
            raise ValueError("no power series inverse: constant term is zero")
        inv0 = 1 / self.coeff(0)
        out = [inv0]
        for k in range(1, order + 1):
            s = sum(self.coeff(i) * out[k - i] for i in range(1, k + 1))
            out.append(-inv0 * s)
        return Poly.of(out)

    def pretty(self, var: str = "t") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                mon = var if k == 1 else f"{var}^{k}"
                if c == 1:
                    parts.append(mon)
                elif c == -1:
                    parts.append(f"-{mon}")
                else:
                    parts.append(f"{c}*{mon}")
        out = parts[0]
        for part in parts[1:]:
            out += f" - {part[1:]}" if part.startswith("-") else f" + {part}"
        return out


@dataclass(frozen=True)
class RatFunc:
    num: Poly
    den: Poly

    @staticmethod
    def of(num: Poly, den: Poly) -> "RatFunc":
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            return RatFunc(Poly.of([]), Poly.const(1))
        g = num.gcd(den)
        num = num.divmod(g)[0]
        den = den.divmod(g)[0]
        lead = den.leading()  # canonical form: monic denominator
        return RatFunc(num.scale(1 / lead), den.scale(1 / lead))

    @staticmethod
    def const(c) -> "RatFunc":
        return RatFunc.of(Poly.const(c), Poly.const(1))

    @staticmethod
    def from_poly(p: Poly) -> "RatFunc":
        return RatFunc.of(p, Poly.const(1))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc.of(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc.of(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc.of(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc.of(self.num * other.den, self.den * other.num)

    def shift(self, k: int) -> "RatFunc":
        """Multiply by x^k, k may be negative."""
        if k >= 0:
            return RatFunc.of(self.num.shift(k), self.den)
        return RatFunc.of(self.num, self.den.shift(-k))

    def evaluate(self, x):
        d = self.den.evaluate(x)
        if d == 0:
            raise ZeroDivisionError("pole of rational function")
        return self.num.evaluate(x) / d

    def series(self, order: int) -> Poly:
        """Power series expansion up to x^order; denominator must not vanish at 0."""
        return (self.num * self.den.series_reciprocal(order)).truncate(order)

    def is_polynomial(self) -> bool:
        return self.den == Poly.const(1)

    def pretty(self, var: str = "t") -> str:
        if self.is_polynomial():
            return self.num.pretty(var)
        return f"({self.num.pretty(var)}) / ({self.den.pretty(var)})"
