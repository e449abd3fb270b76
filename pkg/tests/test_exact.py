import itertools
import math
import random
from fractions import Fraction

import pytest

from heckephase import (
    IntMatrix,
    RatMatrix,
    det,
    elementary_symmetric,
    inverse,
    matmul,
    riemann_zeta_partial,
    valuation,
)


def brute_det(rows):
    n = len(rows)
    total = 0
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        prod = sign
        for i in range(n):
            prod *= rows[i][perm[i]]
        total += prod
    return total


def test_valuation_examples():
    assert valuation(12, 2) == 2
    assert valuation(12, 3) == 1
    assert valuation(Fraction(3, 4), 2) == -2
    assert valuation(Fraction(9, 2), 3) == 2
    assert valuation(1, 5) == 0
    assert valuation(-8, 2) == 3


def test_valuation_rejects_zero_and_bad_base():
    with pytest.raises(ValueError):
        valuation(0, 2)
    with pytest.raises(ValueError):
        valuation(3, 1)


def test_valuation_multiplicative():
    rng = random.Random(101)
    for _ in range(200):
        p = rng.choice([2, 3, 5, 7])
        a = Fraction(rng.randint(1, 400), rng.randint(1, 400))
        b = Fraction(rng.randint(1, 400), rng.randint(1, 400))
        assert valuation(a * b, p) == valuation(a, p) + valuation(b, p)


def test_elementary_symmetric_against_brute_combinations():
    rng = random.Random(202)
    for _ in range(50):
        k = rng.randint(1, 6)
        vals = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(k)]
        for l in range(k + 1):
            brute = sum(
                math.prod(combo) for combo in itertools.combinations(vals, l)
            )
            assert elementary_symmetric(l, vals) == brute


def test_elementary_symmetric_edges():
    assert elementary_symmetric(0, [5, 7]) == 1
    assert elementary_symmetric(2, [5, 7]) == 35
    with pytest.raises(ValueError):
        elementary_symmetric(3, [5, 7])


def test_zeta_partial_brackets_pi_squared_over_six():
    part = riemann_zeta_partial(2, 2000)
    assert abs(part.value - math.pi**2 / 6) <= part.tail_bound
    assert part.terms_used == 2000


def test_zeta_partial_validation():
    with pytest.raises(ValueError):
        riemann_zeta_partial(1, 10)
    with pytest.raises(ValueError):
        riemann_zeta_partial(2, 0)


def test_int_matrix_validation():
    with pytest.raises(ValueError):
        IntMatrix.from_rows([[1, 2], [3]])
    with pytest.raises(ValueError):
        IntMatrix.from_rows([])
    with pytest.raises(ValueError):
        IntMatrix.from_rows([[True, 0], [0, 1]])
    with pytest.raises(ValueError):
        IntMatrix.from_rows([[1.5, 0], [0, 1]])


def test_rat_matrix_to_int_round_trip():
    m = RatMatrix.from_rows([[1, 2], [3, 4]])
    assert m.to_int() == IntMatrix.from_rows([[1, 2], [3, 4]])
    with pytest.raises(ValueError):
        RatMatrix.from_rows([[Fraction(1, 2), 0], [0, 1]]).to_int()


def test_det_matches_permutation_expansion():
    rng = random.Random(303)
    for _ in range(120):
        n = rng.randint(1, 4)
        rows = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        assert det(IntMatrix.from_rows(rows)) == brute_det(rows)


def test_det_rational_matches_permutation_expansion():
    rng = random.Random(404)
    for _ in range(80):
        n = rng.randint(1, 3)
        rows = [
            [Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(n)]
            for _ in range(n)
        ]
        assert det(RatMatrix.from_rows(rows)) == brute_det(rows)


def test_det_singular_constructions():
    # repeated row and zero row must give exactly zero
    assert det(IntMatrix.from_rows([[1, 2], [2, 4]])) == 0
    assert det(IntMatrix.from_rows([[0, 0], [5, 7]])) == 0
    assert det(IntMatrix.from_rows([[1, 2, 3], [4, 5, 6], [5, 7, 9]])) == 0


def test_matmul_types_and_values():
    a = IntMatrix.from_rows([[1, 2], [3, 4]])
    b = IntMatrix.from_rows([[0, 1], [1, 0]])
    assert isinstance(matmul(a, b), IntMatrix)
    assert matmul(a, b) == IntMatrix.from_rows([[2, 1], [4, 3]])
    c = RatMatrix.from_rows([[Fraction(1, 2), 0], [0, 1]])
    assert isinstance(matmul(a, c), RatMatrix)
    with pytest.raises(ValueError):
        matmul(a, RatMatrix.from_rows([[1]]))


def test_inverse_round_trip():
    rng = random.Random(505)
    done = 0
    while done < 60:
        n = rng.randint(1, 4)
        rows = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
        m = IntMatrix.from_rows(rows)
        if det(m) == 0:
            continue
        assert matmul(m.to_rat(), inverse(m)) == RatMatrix.identity(n)
        assert matmul(inverse(m), m.to_rat()) == RatMatrix.identity(n)
        done += 1


def test_inverse_rejects_singular():
    with pytest.raises(ValueError):
        inverse(IntMatrix.from_rows([[1, 2], [2, 4]]))


def test_transpose_and_diagonal_helpers():
    m = IntMatrix.from_rows([[1, 2], [3, 4]])
    assert m.transpose() == IntMatrix.from_rows([[1, 3], [2, 4]])
    assert IntMatrix.diagonal([2, 3]).entries == ((2, 0), (0, 3))
    assert RatMatrix.diagonal([Fraction(1, 2), 1]).entry(0, 0) == Fraction(1, 2)
    assert IntMatrix.identity(3).is_zero() is False
