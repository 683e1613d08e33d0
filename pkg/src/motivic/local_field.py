"""Exact model of a discretely valued field K = Q(pi) with the pi-adic valuation.

Two element types are provided:

* :class:`PiMonomial` -- ``c * pi**k`` with ``c`` a nonzero rational. Every
  motive handled by the package has monomial entries, and Kummer classes
  (classes modulo n-th powers) are only computed for monomials.
* :class:`KElement` -- a general rational function in ``pi``; supports
  valuation, unit and integrality tests and field arithmetic.

The residue characteristic plays no role here; everything that depends on
``p`` lives in :mod:`motivic.dieudonne`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from sympy import Poly, QQ, Rational, factorint, symbols

__all__ = [
    "FACTOR_CAP",
    "KElement",
    "PiMonomial",
    "class_of_product",
    "is_nth_power",
    "monomial_product",
    "nth_power_class",
    "parse_fraction",
    "unit_part",
    "valuation",
]

FACTOR_CAP = 2**63

_PI = symbols("pi")

Scalar = Union[int, Fraction, str]


def parse_fraction(value: Scalar) -> Fraction:
    """Read ``"num/den"`` strings, ints and Fractions into a Fraction."""
    if isinstance(value, bool):
        raise TypeError("booleans are not field coefficients")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot read {value!r} as an exact rational")


def _format_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class PiMonomial:
    """The element ``coeff * pi**exponent`` of K*."""

    coeff: Fraction
    exponent: int = 0

    def __post_init__(self):
        c = parse_fraction(self.coeff)
        if c == 0:
            raise ValueError("PiMonomial coefficient must be nonzero")
        if not isinstance(self.exponent, int) or isinstance(self.exponent, bool):
            raise TypeError("PiMonomial exponent must be an integer")
        object.__setattr__(self, "coeff", c)

    @classmethod
    def one(cls) -> "PiMonomial":
        return cls(Fraction(1), 0)

    @classmethod
    def pi_power(cls, k: int) -> "PiMonomial":
        return cls(Fraction(1), k)

    @property
    def valuation(self) -> int:
        return self.exponent

    def is_unit(self) -> bool:
        return self.exponent == 0

    def is_integral(self) -> bool:
        return self.exponent >= 0

    def __mul__(self, other: "PiMonomial") -> "PiMonomial":
        if not isinstance(other, PiMonomial):
            return NotImplemented
        return PiMonomial(self.coeff * other.coeff, self.exponent + other.exponent)

    def __truediv__(self, other: "PiMonomial") -> "PiMonomial":
        if not isinstance(other, PiMonomial):
            return NotImplemented
        return PiMonomial(self.coeff / other.coeff, self.exponent - other.exponent)

    def __pow__(self, e: int) -> "PiMonomial":
        return PiMonomial(self.coeff**e, self.exponent * e)

    def inverse(self) -> "PiMonomial":
        return PiMonomial(1 / self.coeff, -self.exponent)

    def to_kelement(self) -> "KElement":
        return KElement.from_monomial(self)

    def to_dict(self) -> dict:
        return {"c": _format_fraction(self.coeff), "k": self.exponent}

    @classmethod
    def from_dict(cls, data: dict) -> "PiMonomial":
        try:
            c, k = data["c"], data["k"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"PiMonomial JSON needs 'c' and 'k': {data!r}") from exc
        if not isinstance(k, int) or isinstance(k, bool):
            raise ValueError(f"PiMonomial exponent must be an integer, got {k!r}")
        return cls(parse_fraction(c), k)

    def __str__(self) -> str:
        c = str(self.coeff)
        if self.exponent == 0:
            return c
        return f"{c}*pi^{self.exponent}"


class KElement:
    """An element num/den of Q(pi), kept with gcd 1 and a monic denominator."""

    __slots__ = ("_num", "_den")

    def __init__(self, num, den=None):
        num = self._poly(num)
        den = self._poly([1] if den is None else den)
        if den.is_zero:
            raise ZeroDivisionError("KElement denominator is zero")
        if num.is_zero:
            num, den = Poly(0, _PI, domain=QQ), Poly(1, _PI, domain=QQ)
        else:
            g = num.gcd(den)
            num = num.exquo(g)
            den = den.exquo(g)
            lc = den.LC()
            num = num.quo_ground(lc)
            den = den.quo_ground(lc)
        self._num = num
        self._den = den

    @staticmethod
    def _poly(value) -> Poly:
        if isinstance(value, Poly):
            return value.set_domain(QQ)
        if isinstance(value, (int, Fraction, str)):
            value = [value]
        coeffs = [Rational(str(parse_fraction(c))) for c in value]
        # Poly wants high -> low
        return Poly(list(reversed(coeffs)) or [0], _PI, domain=QQ)

    @classmethod
    def from_monomial(cls, m: PiMonomial) -> "KElement":
        coeff = Rational(m.coeff.numerator, m.coeff.denominator)
        if m.exponent >= 0:
            return cls(Poly(coeff * _PI**m.exponent, _PI, domain=QQ))
        return cls(Poly(coeff, _PI, domain=QQ), Poly(_PI ** (-m.exponent), _PI, domain=QQ))

    @staticmethod
    def _coeffs(p: Poly) -> list[Fraction]:
        out = [Fraction(int(c.p), int(c.q)) for c in reversed(p.all_coeffs())]
        return out

    @property
    def numerator(self) -> list[Fraction]:
        """Coefficients of the numerator, low degree first."""
        return self._coeffs(self._num)

    @property
    def denominator(self) -> list[Fraction]:
        return self._coeffs(self._den)

    def is_zero(self) -> bool:
        return self._num.is_zero

    @staticmethod
    def _ord(p: Poly) -> int:
        for i, c in enumerate(reversed(p.all_coeffs())):
            if c != 0:
                return i
        raise ValueError("order of the zero polynomial")

    def valuation(self) -> int:
        if self.is_zero():
            raise ValueError("valuation of zero is undefined")
        return self._ord(self._num) - self._ord(self._den)

    def is_unit(self) -> bool:
        return self.valuation() == 0

    def is_integral(self) -> bool:
        return self.is_zero() or self.valuation() >= 0

    def __mul__(self, other: "KElement") -> "KElement":
        other = _as_kelement(other)
        return KElement(self._num * other._num, self._den * other._den)

    def __truediv__(self, other: "KElement") -> "KElement":
        other = _as_kelement(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero in K")
        return KElement(self._num * other._den, self._den * other._num)

    def __add__(self, other: "KElement") -> "KElement":
        other = _as_kelement(other)
        return KElement(self._num * other._den + other._num * self._den, self._den * other._den)

    def __neg__(self) -> "KElement":
        return KElement(-self._num, self._den)

    def __sub__(self, other: "KElement") -> "KElement":
        return self + (-_as_kelement(other))

    def __eq__(self, other) -> bool:
        if isinstance(other, PiMonomial):
            other = KElement.from_monomial(other)
        if not isinstance(other, KElement):
            return NotImplemented
        return self._num == other._num and self._den == other._den

    def __hash__(self):
        return hash((tuple(self.numerator), tuple(self.denominator)))

    def to_dict(self) -> dict:
        return {
            "num": [_format_fraction(c) for c in self.numerator],
            "den": [_format_fraction(c) for c in self.denominator],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "KElement":
        return cls(data["num"], data.get("den", [1]))

    def __repr__(self) -> str:
        return f"KElement(({self._num.as_expr()})/({self._den.as_expr()}))"


def _as_kelement(x) -> KElement:
    if isinstance(x, KElement):
        return x
    if isinstance(x, PiMonomial):
        return KElement.from_monomial(x)
    if isinstance(x, (int, Fraction)):
        return KElement([x])
    raise TypeError(f"not an element of K: {x!r}")


def valuation(x: Union[KElement, PiMonomial]) -> int:
    """pi-adic valuation; raises ``ValueError`` on zero."""
    if isinstance(x, PiMonomial):
        return x.exponent
    return _as_kelement(x).valuation()


def unit_part(x: PiMonomial) -> PiMonomial:
    """The unit ``c`` of ``x = c * pi**k``."""
    return PiMonomial(x.coeff, 0)


def _prime_exponents(q: int) -> dict[int, int]:
    if q > FACTOR_CAP:
        raise ValueError(f"coefficient part {q} exceeds the factorization cap 2**63")
    return factorint(q) if q > 1 else {}


def nth_power_class(x: PiMonomial, n: int) -> PiMonomial:
    """Canonical representative of ``x`` modulo n-th powers of K*.

    The exponent of pi is reduced into ``[0, n)`` and the prime exponents of
    the coefficient are reduced into ``[0, n)`` (a prime in the denominator
    with exponent e contributes ``-e mod n`` to the numerator). For odd ``n``
    the sign is absorbed since ``-1 = (-1)**n``; for even ``n`` it is kept.
    """
    return class_of_product([x], n)


def class_of_product(factors: Sequence[PiMonomial], n: int) -> PiMonomial:
    """``nth_power_class`` of a product, factoring each coefficient separately.

    Every factor must respect the factorization cap; the product need not.
    """
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"level n must be a positive integer, got {n!r}")
    if n == 1:
        return PiMonomial.one()
    exps: dict[int, int] = {}
    negative = False
    exponent = 0
    for x in factors:
        c = x.coeff
        negative ^= c < 0
        exponent += x.exponent
        for prime, e in _prime_exponents(abs(c.numerator)).items():
            exps[prime] = exps.get(prime, 0) + e
        for prime, e in _prime_exponents(c.denominator).items():
            exps[prime] = exps.get(prime, 0) - e
    coeff = 1
    for prime in sorted(exps):
        coeff *= prime ** (exps[prime] % n)
    sign = -1 if (negative and n % 2 == 0) else 1
    return PiMonomial(Fraction(sign * coeff), exponent % n)


def is_nth_power(x: PiMonomial, n: int) -> bool:
    """Whether ``x`` is an n-th power in Q(pi)*."""
    return nth_power_class(x, n) == PiMonomial.one()


def monomial_product(factors: Sequence[PiMonomial]) -> PiMonomial:
    out = PiMonomial.one()
    for f in factors:
        out = out * f
    return out
