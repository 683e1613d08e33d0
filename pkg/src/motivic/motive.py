"""Strict toric 1-motives ``u: Z^r -> G_m^d`` and their geometric monodromy.

A motive is stored as its d x r matrix ``U`` with ``U[i][j] = e_i^*(u(e_j))``.
Throughout the package the monodromy matrix uses the same layout,
``mu[i][j] = mu(e_j, e_i^*)`` (torus character first), so the transposed
monodromy ``nu^vee`` is literally ``mu.T``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .local_field import PiMonomial, parse_fraction

__all__ = [
    "MonodromyMatrix",
    "Motive",
    "compute_monodromy",
    "level_n_monodromy",
    "plus_minus_motives",
    "random_motive",
    "raynaud_decompose",
    "split_pm",
    "tate_motive",
]


@dataclass(frozen=True)
class Motive:
    """Matrix form of ``u: Z^r -> G_m^d`` over K = Q(pi)."""

    r: int
    d: int
    entries: tuple[tuple[PiMonomial, ...], ...]

    def __post_init__(self):
        if self.r < 1 or self.d < 1:
            raise ValueError(f"motive ranks must be >= 1, got r={self.r}, d={self.d}")
        rows = tuple(tuple(row) for row in self.entries)
        if len(rows) != self.d or any(len(row) != self.r for row in rows):
            raise ValueError(f"entries must be a {self.d}x{self.r} matrix")
        for row in rows:
            for x in row:
                if not isinstance(x, PiMonomial):
                    raise TypeError(f"motive entries must be PiMonomials, got {x!r}")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[PiMonomial]]) -> "Motive":
        rows = [list(row) for row in rows]
        return cls(r=len(rows[0]), d=len(rows), entries=tuple(map(tuple, rows)))

    @classmethod
    def trivial(cls, r: int, d: int) -> "Motive":
        one = PiMonomial.one()
        return cls(r, d, tuple(tuple(one for _ in range(r)) for _ in range(d)))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.d, self.r)

    def __getitem__(self, ij: tuple[int, int]) -> PiMonomial:
        i, j = ij
        return self.entries[i][j]

    def _zip(self, other: "Motive", op) -> "Motive":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        return Motive(
            self.r,
            self.d,
            tuple(tuple(op(x, y) for x, y in zip(a, b)) for a, b in zip(self.entries, other.entries)),
        )

    def __mul__(self, other: "Motive") -> "Motive":
        """Sum of motives, written multiplicatively in the torus."""
        return self._zip(other, lambda x, y: x * y)

    def inverse(self) -> "Motive":
        return self.map(lambda x: x.inverse())

    def __pow__(self, e: int) -> "Motive":
        return self.map(lambda x: x**e)

    def map(self, fn) -> "Motive":
        return Motive(self.r, self.d, tuple(tuple(fn(x) for x in row) for row in self.entries))

    def is_good_reduction(self) -> bool:
        return all(x.is_unit() for row in self.entries for x in row)

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "d": self.d,
            "entries": [[x.to_dict() for x in row] for row in self.entries],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Motive":
        if not isinstance(data, dict):
            raise ValueError("motive JSON must be an object")
        e = data.get("e", 1)
        if e != 1:
            raise ValueError(
                f"ramification index e={e} is not supported; only split motives over K (e = 1)"
            )
        missing = {"r", "d", "entries"} - set(data)
        if missing:
            raise ValueError(f"motive JSON is missing {sorted(missing)}")
        rows = tuple(tuple(PiMonomial.from_dict(x) for x in row) for row in data["entries"])
        return cls(int(data["r"]), int(data["d"]), rows)


@dataclass(frozen=True, eq=False)
class MonodromyMatrix:
    """Integer d x r matrix ``mu[i][j] = mu(e_j, e_i^*)``."""

    mu: np.ndarray

    def __post_init__(self):
        arr = np.array(self.mu, dtype=np.int64)
        if arr.ndim != 2:
            raise ValueError("monodromy must be a 2-d integer matrix")
        arr.setflags(write=False)
        object.__setattr__(self, "mu", arr)

    @property
    def d(self) -> int:
        return self.mu.shape[0]

    @property
    def r(self) -> int:
        return self.mu.shape[1]

    def nu(self, j: int) -> np.ndarray:
        """``nu(e_j) = mu(e_j, -)`` as a vector indexed by torus characters."""
        return self.mu[:, j]

    @property
    def nu_dual(self) -> np.ndarray:
        return self.mu.T

    def __eq__(self, other) -> bool:
        if not isinstance(other, MonodromyMatrix):
            return NotImplemented
        return self.mu.shape == other.mu.shape and bool(np.all(self.mu == other.mu))

    def __hash__(self):
        return hash(self.mu.tobytes())

    def tolist(self) -> list[list[int]]:
        return self.mu.tolist()


def compute_monodromy(m: Motive) -> MonodromyMatrix:
    """``mu[i][j] = v(U[i][j])`` (the unramified, trivial abelian part case)."""
    return MonodromyMatrix([[x.valuation for x in row] for row in m.entries])


def raynaud_decompose(m: Motive) -> tuple[Motive, Motive]:
    """Split ``u = u1 * u2`` with ``u2 = pi**mu`` and ``u1`` of good reduction."""
    u1 = m.map(lambda x: PiMonomial(x.coeff, 0))
    u2 = m.map(lambda x: PiMonomial.pi_power(x.exponent))
    return u1, u2


def split_pm(mu: MonodromyMatrix) -> tuple[MonodromyMatrix, MonodromyMatrix]:
    a = mu.mu
    return MonodromyMatrix(np.maximum(a, 0)), MonodromyMatrix(np.minimum(a, 0))


def plus_minus_motives(m: Motive) -> tuple[Motive, Motive]:
    """The motives ``pi**mu_plus`` and ``pi**mu_minus`` whose product is ``u2``."""
    plus = m.map(lambda x: PiMonomial.pi_power(max(x.exponent, 0)))
    minus = m.map(lambda x: PiMonomial.pi_power(min(x.exponent, 0)))
    return plus, minus


def level_n_monodromy(mu: MonodromyMatrix, n: int) -> np.ndarray:
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"level n must be a positive integer, got {n!r}")
    return np.mod(mu.mu, n)


def tate_motive(c, n: int, r: int, s: int) -> Motive:
    """``u: Z -> G_m, 1 -> c * pi**(n*r + s)`` (a Tate curve when c is a unit)."""
    c = parse_fraction(c)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0 <= s <= n - 1:
        raise ValueError(f"s must lie in [0, n-1], got s={s} for n={n}")
    if r < 0:
        raise ValueError(f"r must be >= 0, got {r}")
    return Motive(1, 1, ((PiMonomial(c, n * r + s),),))


def _random_coeff(rng: random.Random, primes: Iterable[int], max_exp: int) -> Fraction:
    c = Fraction(rng.choice((1, -1)))
    for p in primes:
        c *= Fraction(p) ** rng.randint(-max_exp, max_exp)
    return c


def random_motive(
    rng: random.Random,
    r: int | None = None,
    d: int | None = None,
    *,
    max_rank: int = 3,
    max_valuation: int = 9,
    primes: Sequence[int] = (2, 3, 5, 7),
    max_prime_exp: int = 3,
) -> Motive:
    """Seeded random monomial motive used by property checks."""
    r = rng.randint(1, max_rank) if r is None else r
    d = rng.randint(1, max_rank) if d is None else d
    rows = tuple(
        tuple(
            PiMonomial(_random_coeff(rng, primes, max_prime_exp), rng.randint(-max_valuation, max_valuation))
            for _ in range(r)
        )
        for _ in range(d)
    )
    return Motive(r, d, rows)
