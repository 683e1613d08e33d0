import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from motivic.cocycles import carry_table
from motivic.dieudonne import (
    PrecisionError,
    TruncatedSeries,
    artin_hasse_log,
    artin_hasse_roundtrip,
    build_dieudonne,
    check_invariants,
    coproduct_identity_check,
    id1_check,
    is_p_integral,
    padic_log,
    second_kind_integral,
)
from motivic.motive import MonodromyMatrix

primes = st.sampled_from([2, 3, 5, 7, 13])


@st.composite
def mu_matrices(draw, max_rank=3, bound=9):
    d = draw(st.integers(1, max_rank))
    r = draw(st.integers(1, max_rank))
    return MonodromyMatrix([[draw(st.integers(-bound, bound)) for _ in range(r)] for _ in range(d)])


class TestDieudonne:
    def test_tate_example(self):
        D = build_dieudonne(MonodromyMatrix([[13]]), 5, 2)
        assert D.Nop.tolist() == [[0, 0], [13, 0]]
        assert D.F.tolist() == [[5, 0], [0, 1]]
        assert D.V.tolist() == [[1, 0], [0, 5]]
        assert np.array_equal(D.mat(D.F, D.Nop, D.V), D.Nop)

    def test_zero_monodromy(self):
        D = build_dieudonne(MonodromyMatrix(np.zeros((2, 3), dtype=int)), 3, 2)
        assert not D.Nop.any()

    def test_block_layout(self):
        D = build_dieudonne(MonodromyMatrix([[1, 2], [3, 4], [5, 6]]), 7, 1)
        # toric chi_i -> sum_j mu[i][j] e_j: lower-left block is mu transposed
        assert D.Nop[3:, :3].tolist() == [[1, 3, 5], [2, 4, 6]]

    def test_negative_entries_reduced(self):
        D = build_dieudonne(MonodromyMatrix([[-1]]), 3, 2)
        assert D.Nop.tolist() == [[0, 0], [8, 0]]

    @pytest.mark.parametrize("p", [1, 4, 9, 0, -3])
    def test_not_prime(self, p):
        with pytest.raises(ValueError):
            build_dieudonne(MonodromyMatrix([[1]]), p, 1)

    def test_bad_m(self):
        with pytest.raises(ValueError):
            build_dieudonne(MonodromyMatrix([[1]]), 3, 0)

    @given(mu_matrices(), primes, st.integers(1, 4))
    def test_invariants(self, mu, p, m):
        checks = check_invariants(build_dieudonne(mu, p, m))
        assert all(checks.values()), checks

    @pytest.mark.parametrize("p,m", [(2, 1), (3, 3), (5, 2), (13, 4)])
    def test_id1(self, p, m):
        assert id1_check(p, m)

    def test_json(self):
        D = build_dieudonne(MonodromyMatrix([[2, -1]]), 3, 2)
        assert D.to_dict() == {"p": 3, "m": 2, "d": 1, "r": 2,
                               "F": [[3, 0, 0], [0, 1, 0], [0, 0, 1]],
                               "V": [[1, 0, 0], [0, 3, 0], [0, 0, 3]],
                               "N": [[0, 0, 0], [2, 0, 0], [8, 0, 0]]}


class TestCoproduct:
    def test_sign(self):
        assert coproduct_identity_check(5, 1) == -1

    def test_zero_row(self):
        n = 9
        a = np.arange(n)
        defect = (a[0] + a) % n - a[0] - a
        assert not defect.any() and not carry_table(n)[0].any()

    def test_exhaustive_p2_m3(self):
        n = 8
        for a, b in itertools.product(range(n), repeat=2):
            lhs = Fraction((a + b) % n, n) - Fraction(a, n) - Fraction(b, n)
            assert lhs == -int(carry_table(n)[a, b])
        assert coproduct_identity_check(2, 3) == -1

    def test_level_cap(self):
        with pytest.raises(ValueError):
            coproduct_identity_check(101, 2)


def _mul(a, b, n):
    out = [Fraction(0)] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        for j, y in enumerate(b[: n + 1 - i]):
            out[i + j] += x * y
    return out


def _compose(f, g, n):
    """f(g(Y)) for g(0) = 0."""
    out = [Fraction(0)] * (n + 1)
    power = [Fraction(1)] + [Fraction(0)] * n
    for c in f[: n + 1]:
        out = [o + c * q for o, q in zip(out, power)]
        power = _mul(power, g, n)
    return out


def artin_hasse_log_oracle(p, n):
    """l = E^-1(1/(1+Y)) with E the Artin-Hasse exponential, by fixed-point inversion."""
    arg = [Fraction(0)] + [Fraction(p_) for p_ in ((-1) ** k for k in range(1, n + 1))]  # 1/(1+Y) - 1
    s = [Fraction(0)] * (n + 1)
    q, i = 1, 0
    while q <= n:
        s[q] += Fraction(1, p**i)
        q, i = q * p, i + 1
    # E(x) - 1 = exp(s(x)) - 1, computed naively
    e = [Fraction(1)] + [Fraction(0)] * n
    term = [Fraction(1)] + [Fraction(0)] * n
    for k in range(1, n + 1):
        term = [t / k for t in _mul(term, s, n)]
        e = [a + b for a, b in zip(e, term)]
    em1 = [Fraction(0)] + e[1:]
    # compositional inverse G of em1, G = z - (em1(G) - G)
    G = [Fraction(0), Fraction(1)] + [Fraction(0)] * (n - 1)
    for _ in range(n):
        comp = _compose(em1, G, n)
        G = [g - (c - z) for g, c, z in zip(G, comp, [Fraction(0), Fraction(1)] + [Fraction(0)] * (n - 1))]
    return _compose(G, arg, n)


class TestArtinHasse:
    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_matches_oracle(self, p):
        assert list(artin_hasse_log(p, 14).coefficients) == artin_hasse_log_oracle(p, 14)

    def test_frozen_p2(self):
        l = artin_hasse_log(2, 5)
        assert list(l.coefficients) == [0, -1, 0, Fraction(-1, 3), Fraction(-1, 3), Fraction(-8, 15)]

    def test_degree_one(self):
        for p in (2, 3, 5):
            assert list(artin_hasse_log(p, 1).coefficients) == [0, -1]

    def test_p2_degree4_roundtrip(self):
        l = artin_hasse_log(2, 4)
        assert artin_hasse_roundtrip(l, 2)
        assert all(is_p_integral(c, 2) for c in l.coefficients)

    def test_p3_degree9(self):
        assert artin_hasse_roundtrip(artin_hasse_log(3, 9), 3)

    def test_not_log(self):
        # the plain -log(1+Y) fails the round trip once degree >= p
        fake = TruncatedSeries.from_list([0] + [Fraction((-1) ** k, k) for k in range(1, 7)], 6)
        assert not artin_hasse_roundtrip(fake, 3)

    def test_degree_bound(self):
        with pytest.raises(ValueError):
            artin_hasse_log(2, 201)

    def test_first_kind(self):
        # -log(1+Y) = sum_i p^-i l^(p^i)
        p, n = 3, 12
        l = artin_hasse_log(p, n)
        s = l + (l**3).scale(Fraction(1, 3)) + (l**9).scale(Fraction(1, 9))
        assert list(s.coefficients) == [0] + [Fraction((-1) ** k, k) for k in range(1, n + 1)]


class TestSeries:
    def test_exp_log_inverse(self):
        y = TruncatedSeries.variable(8)
        assert (y.scale(2)).exp()[3] == Fraction(8, 6)

    def test_pow(self):
        one_plus_y = TruncatedSeries.from_list([1, 1], 6)
        assert list((one_plus_y**4).coefficients) == [1, 4, 6, 4, 1, 0, 0]

    def test_exp_needs_zero_constant(self):
        with pytest.raises(ValueError):
            TruncatedSeries.from_list([1, 1], 3).exp()


def log_oracle(u, p, m, terms=80):
    total = sum((Fraction((-1) ** (k + 1) * (u - 1) ** k, k) for k in range(1, terms)), Fraction(0))
    q = p**m
    return total.numerator * pow(total.denominator, -1, q) % q


class TestPadicLog:
    def test_one(self):
        assert padic_log(1, 5, 3) == 0

    def test_frozen(self):
        assert log_oracle(6, 5, 3) == 55
        assert padic_log(6, 5, 3) == 55
        assert padic_log(36, 5, 3) == 110 == (2 * padic_log(6, 5, 3)) % 125

    def test_precondition(self):
        with pytest.raises(ValueError):
            padic_log(3, 2, 4)
        with pytest.raises(ValueError):
            padic_log(7, 5, 2)

    @pytest.mark.parametrize("p,m", [(2, 5), (3, 4), (5, 3), (7, 2)])
    def test_against_oracle(self, p, m):
        step = 4 if p == 2 else p
        for t in range(1, 12):
            u = 1 + step * t
            assert padic_log(u, p, m) == log_oracle(u, p, m)

    @given(primes, st.integers(1, 5), st.integers(0, 10**6), st.integers(0, 10**6))
    def test_additive(self, p, m, s, t):
        step = 4 if p == 2 else p
        u, v = 1 + step * s, 1 + step * t
        q = p**m
        assert padic_log(u * v, p, m) == (padic_log(u, p, m) + padic_log(v, p, m)) % q

    def test_residue_only(self):
        assert padic_log(6, 5, 2) == padic_log(6 + 25 * 7, 5, 2)


class TestSecondKind:
    def test_trivial(self):
        h = second_kind_integral([1, 1], 3, 2)
        assert all(v == 0 for v in h.table.values())

    def test_r1(self):
        h = second_kind_integral([6], 5, 1)
        assert len(h.table) == 5
        assert h((0,)) == 0
        assert h.check_coboundary()

    def test_two_generators(self):
        h = second_kind_integral([6, 1], 5, 1)
        for a, b in itertools.product(range(5), repeat=2):
            assert h((a, b)) == h((a, 0))

    def test_precision_error(self):
        with pytest.raises(PrecisionError):
            second_kind_integral([6], 5, 2, precision=3)

    def test_precondition(self):
        with pytest.raises(ValueError):
            second_kind_integral([7], 5, 1)

    def test_detects_wrong_logs(self):
        h = second_kind_integral([6], 5, 2)
        broken = type(h)(h.p, h.m, h.r, h.precision, (h.logs[0] + 1,), h.table)
        assert not broken.check_coboundary()

    @pytest.mark.parametrize("p,m", [(5, 1), (3, 2), (2, 3)])
    def test_coboundary_levels(self, p, m):
        step = 4 if p == 2 else p
        for units in ([1 + step], [1 + 2 * step, 1 + step * step]):
            assert second_kind_integral(units, p, m).check_coboundary()
