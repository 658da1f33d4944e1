import math

import pytest

from cubicrigid import frobres as fr
from cubicrigid.errors import (InexactDivisionError, NotPrimeError,
                               ResourceLimitError)
from cubicrigid.exactpoly import ModBivarPoly
from conftest import random_mod_bivar

Op = fr.FrobeniusOperator


class TestOperatorAlgebra:
    def test_multiply_examples(self):
        assert fr.op_multiply(Op((-1, 1)), Op((1, 1))) == Op((-1, 0, 1))
        d, n = 2, 3
        shifted = fr.op_multiply(Op.tau_power(d), Op.tau_pow_minus_one(n))
        assert shifted == Op((0, 0, -1, 0, 0, 1))
        assert fr.op_multiply(Op((-1, 1)), Op((1, 1, 1))) == Op((-1, 0, 0, 1))

    def test_divide_exact(self):
        assert fr.op_divide_exact(Op((-1, 0, 1)), Op((-1, 1))) == Op((1, 1))
        assert fr.op_divide_exact(Op.tau_pow_minus_one(6),
                                  Op.tau_pow_minus_one(2)) == Op((1, 0, 1, 0, 1))

    def test_divide_inexact(self):
        with pytest.raises(InexactDivisionError):
            fr.op_divide_exact(Op((-1, 0, 1)), Op((2, 1)))

    def test_canonical_trailing(self):
        assert Op((1, 2, 0, 0)).coefficients == (1, 2)
        assert Op((0, 0)).is_zero

    def test_str(self):
        assert str(Op((-1, 0, 1))) == "tau^2 - 1"
        assert str(Op.zero()) == "0"


class TestApplyOperator:
    def test_examples(self):
        t_mono = ModBivarPoly.monomial(3, 1, 0, names=("T", "y"))
        assert fr.apply_operator(Op.tau_power(1), t_mono) == \
            ModBivarPoly(3, {(3, 0): 1}, names=("T", "y"))
        art = fr.apply_operator(Op((-1, 1)), t_mono)
        assert art == ModBivarPoly(3, {(3, 0): 1, (1, 0): 2}, names=("T", "y"))
        # tau applied after (tau - 1): (T^3 - T)^3 expanded in char 3
        cubed = fr.apply_operator(fr.op_multiply(Op.tau_power(1), Op((-1, 1))), t_mono)
        assert cubed == ModBivarPoly(3, {(9, 0): 1, (3, 0): 2}, names=("T", "y"))

    def test_action_is_ring_action(self, rng):
        for p in (2, 3, 5):
            for _ in range(15):
                a = Op(tuple(rng.randint(-3, 3) for _ in range(rng.randint(1, 4))))
                b = Op(tuple(rng.randint(-3, 3) for _ in range(rng.randint(1, 4))))
                f = random_mod_bivar(rng, p, max_deg=3, terms=4)
                lhs = fr.apply_operator(fr.op_multiply(a, b), f)
                rhs = fr.apply_operator(a, fr.apply_operator(b, f))
                assert lhs == rhs

    def test_additivity(self, rng):
        for p in (2, 3, 5):
            for _ in range(15):
                op = Op(tuple(rng.randint(-3, 3) for _ in range(rng.randint(1, 4))))
                f = random_mod_bivar(rng, p, max_deg=3, terms=4)
                g = random_mod_bivar(rng, p, max_deg=3, terms=4)
                assert fr.apply_operator(op, f + g) == \
                    fr.apply_operator(op, f) + fr.apply_operator(op, g)


class TestFieldTower:
    @pytest.mark.parametrize("p,k", [(2, 1), (2, 2), (2, 4), (3, 2), (5, 2), (3, 3)])
    def test_carrier_and_frobenius(self, p, k):
        tower = fr.FieldTower(p, k)
        elems = tower.elements()
        assert len(elems) == p ** k
        image = {tower.frobenius(e) for e in elems}
        assert image == set(elems)  # Frobenius permutes the carrier
        fixed = [e for e in elems if tower.frobenius(e) == e]
        assert len(fixed) == p      # and fixes exactly the prime field

    def test_modulus_deterministic_and_monic(self):
        t1 = fr.FieldTower(3, 2)
        t2 = fr.FieldTower(3, 2)
        assert t1.modulus == t2.modulus
        assert t1.modulus[-1] == 1
        assert len(t1.modulus) == 3

    @pytest.mark.parametrize("p,big_k,d", [(2, 4, 1), (2, 4, 2), (3, 2, 1),
                                           (5, 2, 1), (5, 2, 2)])
    def test_fixed_field_sizes(self, p, big_k, d):
        tower = fr.FieldTower(p, big_k)
        assert len(tower.fixed_field(d)) == p ** math.gcd(d, big_k)

    def test_not_prime(self):
        with pytest.raises(NotPrimeError):
            fr.FieldTower(4, 2)


class TestSumProduct:
    def test_closed_examples(self):
        assert fr.sum_product_closed(3, 1, 1) == ModBivarPoly(
            3, {(9, 0): 1, (3, 0): 2}, names=("T", "y"))
        assert fr.sum_product_closed(2, 1, 2) == ModBivarPoly(
            2, {(8, 0): 1, (2, 0): 1}, names=("T", "y"))
        # (T^5 - T)^5 over F_5, via the generic power as an oracle
        art5 = ModBivarPoly(5, {(5, 0): 1, (1, 0): -1}, names=("T", "y"))
        assert fr.sum_product_closed(5, 1, 1) == art5 ** 5

    @pytest.mark.parametrize("p", [2, 3, 5])
    @pytest.mark.parametrize("n", [1, 2])
    @pytest.mark.parametrize("m", [1, 2])
    def test_degree_is_p_to_n_plus_m(self, p, n, m):
        assert fr.sum_product_closed(p, n, m).deg_x == p ** (n + m)

    @pytest.mark.parametrize("p", [2, 3, 5])
    @pytest.mark.parametrize("n", [1, 2])
    @pytest.mark.parametrize("m", [1, 2])
    def test_brute_force_matches(self, p, n, m):
        assert fr.brute_force_sum_product(p, n, m) == fr.sum_product_closed(p, n, m)

    def test_budget(self):
        with pytest.raises(ResourceLimitError) as exc:
            fr.brute_force_sum_product(3, 2, 2, budget=10)
        assert exc.value.limit == 10


class TestArtinSchreierResultant:
    def test_closed_examples(self):
        assert fr.artin_schreier_resultant_closed(3, 1, 1) == ModBivarPoly(
            3, {(3, 0): 1, (0, 3): 2}, names=("A", "B"))
        assert fr.artin_schreier_resultant_closed(3, 1, 2) == ModBivarPoly(
            3, {(9, 0): 1, (3, 0): 1, (0, 3): 2}, names=("A", "B"))
        assert fr.artin_schreier_resultant_closed(2, 2, 2) == ModBivarPoly(
            2, {(4, 0): 1, (0, 4): 1}, names=("A", "B"))

    @pytest.mark.parametrize("p,n,m", [(2, 1, 1), (2, 1, 2), (2, 2, 2),
                                       (3, 1, 1), (3, 1, 2), (3, 2, 1),
                                       (3, 2, 2), (5, 1, 1), (5, 1, 2)])
    def test_oracle_matches_up_to_sign(self, p, n, m):
        oracle = fr.artin_schreier_resultant_oracle(p, n, m)
        closed = fr.artin_schreier_resultant_closed(p, n, m)
        assert fr.match_sign(oracle, closed) is not None

    def test_oracle_2_1_1_exact(self):
        # char 2: sign invisible, A^2 + B^2 on the nose
        assert fr.artin_schreier_resultant_oracle(2, 1, 1) == \
            ModBivarPoly(2, {(2, 0): 1, (0, 2): 1}, names=("A", "B"))

    def test_oracle_budget(self):
        with pytest.raises(ResourceLimitError):
            fr.artin_schreier_resultant_oracle(5, 2, 2, budget=40)

    def test_match_sign_none(self):
        a = ModBivarPoly(3, {(1, 0): 1}, names=("A", "B"))
        b = ModBivarPoly(3, {(0, 1): 1}, names=("A", "B"))
        assert fr.match_sign(a, b) is None
