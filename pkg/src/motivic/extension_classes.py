"""Kummer classes of the n-torsion sequences of a toric 1-motive.

``Ext((Z/n)^r, mu_n^d)`` over K is ``(K*/K*^n)^{d x r}``; the class of the
n-torsion sequence of ``u`` is ``u`` read entrywise modulo n-th powers, and
Baer sum is entrywise multiplication. Kato's decomposition of a
logarithmic extension as (classical part, monodromy N) becomes, at class
level, ``class(u) = class(u1) * pi**N``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .local_field import PiMonomial, class_of_product, nth_power_class
from .motive import (
    Motive,
    compute_monodromy,
    level_n_monodromy,
    raynaud_decompose,
    tate_motive,
)

__all__ = [
    "KatoPair",
    "KummerClass",
    "baer_sum_class",
    "enumerate_kato_pairs",
    "eta_class",
    "extends_over_R",
    "kato_pair",
    "push_theorem_check",
    "pushout_theta",
    "reconstruct",
    "theta_class",
]


def _check_level(n) -> int:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
        raise ValueError(f"level n must be a positive integer, got {n!r}")
    return int(n)


@dataclass(frozen=True)
class KummerClass:
    n: int
    r: int
    d: int
    cls: tuple[tuple[PiMonomial, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(nth_power_class(x, self.n) for x in row) for row in self.cls)
        if len(rows) != self.d or any(len(row) != self.r for row in rows):
            raise ValueError(f"class table must be {self.d}x{self.r}")
        object.__setattr__(self, "cls", rows)

    @classmethod
    def trivial(cls, n: int, r: int, d: int) -> "KummerClass":
        one = PiMonomial.one()
        return cls(n, r, d, tuple(tuple(one for _ in range(r)) for _ in range(d)))

    def is_trivial(self) -> bool:
        return all(x == PiMonomial.one() for row in self.cls for x in row)

    @property
    def exponents(self) -> np.ndarray:
        return np.array([[x.exponent for x in row] for row in self.cls], dtype=np.int64)

    def __add__(self, other: "KummerClass") -> "KummerClass":
        return baer_sum_class(self, other)

    def __neg__(self) -> "KummerClass":
        return KummerClass(self.n, self.r, self.d, tuple(tuple(x.inverse() for x in row) for row in self.cls))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "d": self.d,
            "cls": [[x.to_dict() for x in row] for row in self.cls],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "KummerClass":
        rows = tuple(tuple(PiMonomial.from_dict(x) for x in row) for row in data["cls"])
        return cls(int(data["n"]), int(data["r"]), int(data["d"]), rows)


@dataclass(frozen=True, eq=False)
class KatoPair:
    """Classical extension class over R together with the monodromy N mod n."""

    classical: KummerClass
    N: np.ndarray

    def __post_init__(self):
        N = np.mod(np.array(self.N, dtype=np.int64), self.classical.n)
        if N.shape != (self.classical.d, self.classical.r):
            raise ValueError("N must be a d x r matrix")
        if any(x.exponent != 0 for row in self.classical.cls for x in row):
            raise ValueError("classical part must consist of unit classes")
        N.setflags(write=False)
        object.__setattr__(self, "N", N)

    def __eq__(self, other) -> bool:
        if not isinstance(other, KatoPair):
            return NotImplemented
        return self.classical == other.classical and bool(np.array_equal(self.N, other.N))

    def __hash__(self):
        return hash((self.classical, self.N.tobytes()))

    def to_dict(self) -> dict:
        return {"classical": self.classical.to_dict(), "N": self.N.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> "KatoPair":
        return cls(KummerClass.from_dict(data["classical"]), np.array(data["N"], dtype=np.int64))


def eta_class(m: Motive, n: int) -> KummerClass:
    n = _check_level(n)
    return KummerClass(n, m.r, m.d, m.entries)


def baer_sum_class(c1: KummerClass, c2: KummerClass) -> KummerClass:
    if (c1.n, c1.r, c1.d) != (c2.n, c2.r, c2.d):
        raise ValueError(f"shape mismatch: {(c1.n, c1.r, c1.d)} vs {(c2.n, c2.r, c2.d)}")
    rows = tuple(tuple(class_of_product((x, y), c1.n) for x, y in zip(a, b)) for a, b in zip(c1.cls, c2.cls))
    return KummerClass(c1.n, c1.r, c1.d, rows)


def theta_class(n: int) -> KummerClass:
    """Class of the n-torsion sequence of the Tate motive ``1 -> pi``."""
    n = _check_level(n)
    if n == 1:
        return KummerClass.trivial(1, 1, 1)
    return eta_class(tate_motive(1, n, 0, 1), n)


def pushout_theta(N: np.ndarray, n: int) -> KummerClass:
    """``N_*(theta tensor Y/nY)``: the class with entries ``pi**N[i][j]``."""
    N = np.asarray(N, dtype=np.int64)
    d, r = N.shape
    rows = tuple(tuple(PiMonomial.pi_power(int(v)) for v in row) for row in N)
    return KummerClass(n, r, d, rows)


def extends_over_R(m: Motive, n: int) -> bool:
    """Whether every monodromy entry is divisible by ``n``."""
    n = _check_level(n)
    return bool(np.all(compute_monodromy(m).mu % n == 0))


def kato_pair(m: Motive, n: int) -> KatoPair:
    n = _check_level(n)
    u1, _ = raynaud_decompose(m)
    return KatoPair(eta_class(u1, n), level_n_monodromy(compute_monodromy(m), n))


def reconstruct(pair: KatoPair) -> KummerClass:
    """The inverse direction: ``classical + N_*(theta)``."""
    return baer_sum_class(pair.classical, pushout_theta(pair.N, pair.classical.n))


def push_theorem_check(m: Motive, n: int) -> bool:
    """Class of ``u2`` equals the push-out of theta along the level-n monodromy."""
    n = _check_level(n)
    _, u2 = raynaud_decompose(m)
    nu_n = level_n_monodromy(compute_monodromy(m), n)
    return eta_class(u2, n) == pushout_theta(nu_n, n)


def enumerate_kato_pairs(n: int, primes: Sequence[int] = (2, 3)) -> Iterator[KatoPair]:
    """Every pair (unit class, N) with r = d = 1 and coefficients built from ``primes``."""
    n = _check_level(n)
    signs = (1, -1) if n % 2 == 0 else (1,)
    for sign, exps, N in itertools.product(signs, itertools.product(range(n), repeat=len(primes)), range(n)):
        c = Fraction(sign)
        for p, e in zip(primes, exps):
            c *= p**e
        yield KatoPair(KummerClass(n, 1, 1, ((PiMonomial(c, 0),),)), np.array([[N]]))
