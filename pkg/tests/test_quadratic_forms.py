import random
from fractions import Fraction

import pytest

from slicetool.exact_algebra import DiagonalForm, IntMatrix, rational_congruence_diagonalize
from slicetool.quadratic_forms import (
    PadicVerdict,
    SeifertMatrix,
    hasse_symbol,
    hilbert_symbol_odd,
    legendre_symbol,
    padic_genus_obstruction,
    scan_obstruction_primes,
    seifert_discriminant,
)

PRIMES = [3, 5, 7, 11, 13, 17, 19, 23]


def random_nonzero_rational(rng):
    num = 0
    while num == 0:
        num = rng.randint(-60, 60)
    den = rng.randint(1, 30)
    return Fraction(num, den)


class TestLegendre:
    def test_examples(self):
        assert legendre_symbol(1, 3) == 1
        assert legendre_symbol(2, 5) == -1
        assert legendre_symbol(13, 3) == 1
        assert legendre_symbol(6, 3) == 0

    def test_euler_criterion_oracle(self):
        for p in PRIMES:
            squares = {x * x % p for x in range(1, p)}
            for a in range(1, p):
                expected = 1 if a in squares else -1
                assert legendre_symbol(a, p) == expected

    def test_rejects_bad_prime(self):
        with pytest.raises(ValueError):
            legendre_symbol(3, 2)
        with pytest.raises(ValueError):
            legendre_symbol(3, 9)


class TestHilbertSymbol:
    def test_examples(self):
        assert hilbert_symbol_odd(1, 7, 3) == 1
        assert hilbert_symbol_odd(3, 3, 3) == -1
        assert hilbert_symbol_odd(2, 5, 5) == -1

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            hilbert_symbol_odd(0, 1, 3)

    def test_symmetry_and_bimultiplicativity(self):
        rng = random.Random(5)
        for _ in range(400):
            p = rng.choice(PRIMES)
            a = random_nonzero_rational(rng)
            b = random_nonzero_rational(rng)
            c = random_nonzero_rational(rng)
            assert hilbert_symbol_odd(a, b, p) == hilbert_symbol_odd(b, a, p)
            assert hilbert_symbol_odd(a, b * c, p) == hilbert_symbol_odd(
                a, b, p
            ) * hilbert_symbol_odd(a, c, p)

    def test_norm_relations(self):
        rng = random.Random(9)
        for _ in range(400):
            p = rng.choice(PRIMES)
            a = random_nonzero_rational(rng)
            assert hilbert_symbol_odd(a, -a, p) == 1
            if a != 1:
                assert hilbert_symbol_odd(a, 1 - a, p) == 1


class TestHasse:
    def test_examples(self):
        assert hasse_symbol(DiagonalForm([1, 1, 1, 1]), 7) == 1
        assert hasse_symbol(DiagonalForm([3, 3]), 3) == -1
        assert hasse_symbol(DiagonalForm([1, -1]), 3) == 1

    def test_diagonalization_independence(self):
        # the verdict must not depend on which diagonalization was used
        rng = random.Random(31)
        trials = 0
        while trials < 40:
            n = rng.choice([2, 4])
            rows = [[0] * n for _ in range(n)]
            for i in range(n):
                for j in range(i, n):
                    rows[i][j] = rows[j][i] = rng.randint(-3, 3)
            m = IntMatrix.from_rows(rows)
            from slicetool.exact_algebra import integer_det

            if integer_det(m) == 0:
                continue
            trials += 1
            u_rows = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
            for _ in range(10):
                i, j = rng.sample(range(n), 2)
                c = rng.choice([-1, 1, 2])
                for k in range(n):
                    u_rows[i][k] += c * u_rows[j][k]
            u = IntMatrix.from_rows(u_rows)
            m2 = u.transpose() * m * u
            for p in (3, 5, 7):
                assert hasse_symbol(
                    rational_congruence_diagonalize(m), p
                ) == hasse_symbol(rational_congruence_diagonalize(m2), p)


TREFOIL = SeifertMatrix(IntMatrix.from_rows([[-1, 1], [0, -1]]))
SPLIT_GENUS_ONE = SeifertMatrix(IntMatrix.from_rows([[0, 1], [0, 0]]))
APPENDIX_12N642 = SeifertMatrix(
    IntMatrix.from_rows([[1, 0, 0, 0], [1, 1, 0, -1], [1, -1, 1, -1], [1, 0, 0, 1]])
)


class TestSeifertMatrix:
    def test_invariants_enforced(self):
        with pytest.raises(ValueError):
            SeifertMatrix(IntMatrix.from_rows([[1, 2, 3], [4, 5, 6], [7, 8, 9]]))
        with pytest.raises(ValueError):
            # antisymmetrization not unimodular
            SeifertMatrix(IntMatrix.from_rows([[1, 2], [0, 1]]))

    def test_alexander_normalization(self):
        for theta in (TREFOIL, SPLIT_GENUS_ONE, APPENDIX_12N642):
            alex = theta.alexander_polynomial()
            assert abs(alex.evaluate(1)) == 1


class TestDiscriminant:
    def test_12n642(self):
        assert seifert_discriminant(APPENDIX_12N642) == -27

    def test_discriminant_abs_is_det(self):
        for theta in (TREFOIL, APPENDIX_12N642):
            alex = theta.alexander_polynomial()
            assert abs(seifert_discriminant(theta)) == abs(alex.evaluate(-1))

    def test_trefoil(self):
        # g = 1: sign (-1)^(1*1) = -1, det(S) = 3
        assert seifert_discriminant(TREFOIL) == -3


class TestObstruction:
    def test_split_form_does_not_fire(self):
        v = padic_genus_obstruction(SPLIT_GENUS_ONE, 3)
        assert v.discriminant == 1
        assert v.hasse == 1
        assert not v.fires

    def test_12n642_does_not_fire_at_3(self):
        v = padic_genus_obstruction(APPENDIX_12N642, 3)
        assert v.valuation == 3 and v.valuation % 2 == 1
        assert not v.fires

    def test_verdict_invariant(self):
        v = padic_genus_obstruction(APPENDIX_12N642, 5)
        assert v.fires == (v.valuation % 2 == 0 and v.unit_residue_is_one and v.hasse == -1)

    def test_scan_split_form_empty(self):
        assert scan_obstruction_primes(SPLIT_GENUS_ONE, 100) == []

    def test_scan_bound_validation(self):
        with pytest.raises(ValueError):
            scan_obstruction_primes(TREFOIL, 2)

    def test_json_round_trip_fields(self):
        v = padic_genus_obstruction(TREFOIL, 3)
        d = v.to_json()
        assert set(d) == {
            "prime",
            "discriminant",
            "valuation",
            "unit_residue_is_one",
            "hasse",
            "fires",
        }
