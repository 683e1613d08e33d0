from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from motivic.local_field import (
    KElement,
    PiMonomial,
    class_of_product,
    is_nth_power,
    nth_power_class,
    parse_fraction,
    unit_part,
    valuation,
)

from strategies import monomials

pi = PiMonomial.pi_power


def mono(c, k=0):
    return PiMonomial(Fraction(c), k)


class TestValuation:
    def test_monomial(self):
        assert valuation(mono(Fraction(2, 5), 3)) == 3

    def test_one(self):
        assert valuation(KElement(1)) == 0

    def test_cancellation(self):
        # (pi^2 + pi^3) / pi^5 = (1 + pi) / pi^3
        x = KElement([0, 0, 1, 1], [0, 0, 0, 0, 0, 1])
        assert valuation(x) == -3
        assert x == KElement([1, 1], [0, 0, 0, 1])

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            valuation(KElement(0))

    def test_kelement_reduced_monic(self):
        x = KElement([2, 2], [0, 4, 4])  # (2 + 2pi) / (4pi + 4pi^2) = 1 / (2 pi)
        assert x.denominator == [Fraction(0), Fraction(1)]
        assert x.numerator == [Fraction(1, 2)]

    def test_kelement_units(self):
        assert KElement([3, 1]).is_unit()
        assert not KElement([0, 1]).is_unit()
        assert KElement([0, 1]).is_integral()
        assert not KElement([1], [0, 1]).is_integral()

    def test_kelement_json_roundtrip(self):
        x = KElement([Fraction(1, 3), 0, 2], [1, 1])
        assert KElement.from_dict(x.to_dict()) == x

    @given(monomials(), monomials())
    def test_valuation_additive(self, x, y):
        assert valuation(x * y) == valuation(x) + valuation(y)
        assert valuation(x.to_kelement() * y.to_kelement()) == valuation(x) + valuation(y)


class TestUnitPart:
    def test_examples(self):
        assert unit_part(mono(2, 13)) == mono(2)
        assert unit_part(mono(Fraction(-3, 7))) == mono(Fraction(-3, 7))
        assert unit_part(mono(5, -2)) == mono(5)

    @given(monomials())
    def test_factorization(self, x):
        assert unit_part(x) * pi(x.valuation) == x


class TestPiMonomial:
    def test_zero_coefficient_rejected(self):
        with pytest.raises(ValueError):
            PiMonomial(Fraction(0), 1)

    def test_json(self):
        x = mono(Fraction(-3, 7), -4)
        assert x.to_dict() == {"c": "-3/7", "k": -4}
        assert PiMonomial.from_dict(x.to_dict()) == x

    def test_json_errors(self):
        with pytest.raises(ValueError):
            PiMonomial.from_dict({"c": "1/2"})
        with pytest.raises(ValueError):
            PiMonomial.from_dict({"c": "1/2", "k": 1.5})

    def test_parse_fraction(self):
        assert parse_fraction("3/7") == Fraction(3, 7)
        assert parse_fraction(4) == Fraction(4)
        with pytest.raises(TypeError):
            parse_fraction(True)

    def test_unit_integral(self):
        assert mono(3).is_unit() and mono(3).is_integral()
        assert pi(2).is_integral() and not pi(2).is_unit()
        assert not pi(-1).is_integral()


class TestNthPowerClass:
    def test_derived_example(self):
        assert nth_power_class(mono(32, 7), 5) == pi(2)

    def test_level_one(self):
        assert nth_power_class(mono(Fraction(-7, 3), 11), 1) == PiMonomial.one()

    def test_negative_cube(self):
        assert nth_power_class(mono(-8, 3), 3) == PiMonomial.one()

    def test_sign_kept_for_even_level(self):
        assert nth_power_class(mono(-4), 2) == mono(-1)
        assert not is_nth_power(mono(-1), 2)

    def test_denominators(self):
        # 1/2 = 2^-1 ~ 2^(n-1)
        assert nth_power_class(mono(Fraction(1, 2)), 5) == mono(16)

    def test_bad_level(self):
        for n in (0, -3):
            with pytest.raises(ValueError):
                nth_power_class(mono(2), n)

    def test_factor_cap(self):
        with pytest.raises(ValueError):
            nth_power_class(mono(2**64 + 1), 3)

    @given(monomials(), st.integers(1, 9))
    def test_idempotent(self, x, n):
        c = nth_power_class(x, n)
        assert nth_power_class(c, n) == c

    @given(monomials(), monomials(), st.integers(1, 9))
    def test_multiplicative(self, x, y, n):
        cx, cy = nth_power_class(x, n), nth_power_class(y, n)
        assert nth_power_class(x * y, n) == class_of_product([cx, cy], n)

    @given(monomials(), st.integers(1, 9))
    def test_ratio_is_nth_power(self, x, n):
        ratio = x / nth_power_class(x, n)
        assert ratio.exponent % n == 0
        assert is_nth_power(ratio, n)

    @given(monomials(), monomials(), st.integers(1, 6))
    def test_equal_class_iff_ratio_is_power(self, x, y, n):
        same = nth_power_class(x, n) == nth_power_class(y, n)
        assert same == is_nth_power(x / y, n)

    @given(monomials(), st.integers(1, 6))
    def test_nth_powers_are_trivial(self, x, n):
        assert class_of_product([x] * n, n) == PiMonomial.one()
