from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from motivic.local_field import PiMonomial
from motivic.motive import (
    MonodromyMatrix,
    Motive,
    compute_monodromy,
    level_n_monodromy,
    plus_minus_motives,
    raynaud_decompose,
    split_pm,
    tate_motive,
)

from strategies import motives

pi = PiMonomial.pi_power


def mono(c, k=0):
    return PiMonomial(Fraction(c), k)


EXAMPLE = Motive.from_rows([[pi(1), mono(2)], [mono(3, -4), pi(2)]])


class TestMonodromy:
    def test_tate_curve(self):
        for n, r, s in [(5, 2, 3), (2, 0, 1), (8, 1, 7)]:
            assert compute_monodromy(tate_motive(Fraction(3, 7), n, r, s)).tolist() == [[n * r + s]]

    def test_unit_motive(self):
        m = Motive.from_rows([[mono(2), mono(-5)]])
        assert compute_monodromy(m).tolist() == [[0, 0]]

    def test_two_by_two(self):
        assert compute_monodromy(EXAMPLE).tolist() == [[1, 0], [-4, 2]]

    def test_nu_and_transpose(self):
        mu = compute_monodromy(EXAMPLE)
        assert mu.nu(0).tolist() == [1, -4]
        assert mu.nu_dual.tolist() == [[1, -4], [0, 2]]

    def test_read_only(self):
        mu = compute_monodromy(EXAMPLE)
        with pytest.raises(ValueError):
            mu.mu[0, 0] = 5


class TestRaynaud:
    def test_tate_example(self):
        u1, u2 = raynaud_decompose(tate_motive(2, 5, 2, 3))
        assert u1.entries == ((mono(2),),)
        assert u2.entries == ((pi(13),),)

    def test_unit_motive(self):
        m = Motive.from_rows([[mono(2), mono(-5)]])
        u1, u2 = raynaud_decompose(m)
        assert u1 == m and u2 == Motive.trivial(2, 1)

    def test_tate_pi(self):
        u1, u2 = raynaud_decompose(Motive.from_rows([[pi(1)]]))
        assert u1 == Motive.trivial(1, 1)
        assert u2.entries == ((pi(1),),)

    @given(motives())
    def test_decomposition(self, m):
        u1, u2 = raynaud_decompose(m)
        assert u1 * u2 == m
        assert u1.is_good_reduction()
        assert compute_monodromy(u2) == compute_monodromy(m)
        assert not compute_monodromy(u1).mu.any()

    @given(motives())
    def test_idempotent(self, m):
        u1, u2 = raynaud_decompose(m)
        assert raynaud_decompose(u1) == (u1, Motive.trivial(m.r, m.d))
        assert raynaud_decompose(u2) == (Motive.trivial(m.r, m.d), u2)

    @given(motives(), st.integers(1, 6))
    def test_n_multiplication(self, m, n):
        u1, u2 = raynaud_decompose(m)
        assert raynaud_decompose(m**n) == (u1**n, u2**n)


class TestSplitAndLevel:
    def test_split_example(self):
        plus, minus = split_pm(MonodromyMatrix([[1, 0], [-4, 2]]))
        assert plus.tolist() == [[1, 0], [0, 2]]
        assert minus.tolist() == [[0, 0], [-4, 0]]

    def test_split_trivial(self):
        plus, minus = split_pm(MonodromyMatrix([[13]]))
        assert plus.tolist() == [[13]] and minus.tolist() == [[0]]
        z = MonodromyMatrix(np.zeros((2, 3), dtype=int))
        assert split_pm(z) == (z, z)

    @given(motives())
    def test_plus_minus_motives(self, m):
        plus, minus = plus_minus_motives(m)
        _, u2 = raynaud_decompose(m)
        assert plus * minus == u2
        p, q = split_pm(compute_monodromy(m))
        assert compute_monodromy(plus) == p and compute_monodromy(minus) == q

    def test_level_n(self):
        assert level_n_monodromy(MonodromyMatrix([[13]]), 5).tolist() == [[3]]
        assert level_n_monodromy(MonodromyMatrix([[-4]]), 5).tolist() == [[1]]
        assert not level_n_monodromy(MonodromyMatrix([[7, -3]]), 1).any()
        with pytest.raises(ValueError):
            level_n_monodromy(MonodromyMatrix([[1]]), 0)


class TestTateMotive:
    def test_entry(self):
        assert tate_motive(2, 5, 2, 3).entries == ((mono(2, 13),),)

    def test_trivial(self):
        assert tate_motive(1, 5, 0, 0) == Motive.trivial(1, 1)
        assert tate_motive(Fraction(-3, 7), 4, 0, 0).is_good_reduction()

    @pytest.mark.parametrize("n,r,s", [(5, 0, 5), (5, 0, -1), (3, -1, 0), (0, 0, 0)])
    def test_domain_errors(self, n, r, s):
        with pytest.raises(ValueError):
            tate_motive(2, n, r, s)


class TestMotiveValidation:
    def test_shapes(self):
        with pytest.raises(ValueError):
            Motive(2, 1, ((pi(1),),))
        with pytest.raises(TypeError):
            Motive(1, 1, ((2,),))

    def test_json_roundtrip(self):
        assert Motive.from_dict(EXAMPLE.to_dict()) == EXAMPLE

    def test_ramified_rejected(self):
        data = dict(EXAMPLE.to_dict(), e=2)
        with pytest.raises(ValueError, match="ramification"):
            Motive.from_dict(data)

    def test_missing_field(self):
        with pytest.raises(ValueError):
            Motive.from_dict({"r": 1, "d": 1})
