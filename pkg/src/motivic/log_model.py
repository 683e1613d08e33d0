"""Explicit algebra of the finite logarithmic model of ``n M``.

The model is ``B[T_1..T_d] / (T_i**n - b_i)`` with ``B = R^{(Z/n)^r}``, so
it is determined by d tables ``b_i: (Z/n)^r -> R``. Each table is the
pointwise product of three factors: the unit part ``b1`` coming from ``u1``
and the two pieces ``bplus``, ``bminus`` coming from the positive and
negative parts of the monodromy.

Points ``a`` are enumerated lexicographically, each coordinate represented
by ``a_j`` in ``[0, n)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .local_field import PiMonomial, is_nth_power, monomial_product
from .motive import Motive, compute_monodromy, raynaud_decompose, split_pm

__all__ = [
    "DEFAULT_POINT_LIMIT",
    "IntegralityReport",
    "ModelAlgebra",
    "build_model_algebra",
    "generic_fibre_check",
    "integrality_report",
]

DEFAULT_POINT_LIMIT = 10**6

Table = tuple[tuple[PiMonomial, ...], ...]  # [i][point index]


def _point_key(a: tuple[int, ...]) -> str:
    return ",".join(str(x) for x in a)


def _table_to_json(points, table: Table) -> list[dict]:
    return [{_point_key(a): v.to_dict() for a, v in zip(points, row)} for row in table]


def _table_from_json(points, data) -> Table:
    return tuple(tuple(PiMonomial.from_dict(row[_point_key(a)]) for a in points) for row in data)


@dataclass(frozen=True)
class ModelAlgebra:
    n: int
    r: int
    d: int
    points: tuple[tuple[int, ...], ...]
    b: Table
    b1: Table = field(repr=False)
    bplus: Table = field(repr=False)
    bminus: Table = field(repr=False)

    def value(self, i: int, a) -> PiMonomial:
        return self.b[i][self._index(a)]

    def _index(self, a) -> int:
        k = 0
        for x in a:
            k = k * self.n + int(x) % self.n
        return k

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "d": self.d,
            "b": _table_to_json(self.points, self.b),
            "factors": {
                "b1": _table_to_json(self.points, self.b1),
                "bplus": _table_to_json(self.points, self.bplus),
                "bminus": _table_to_json(self.points, self.bminus),
            },
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ModelAlgebra":
        n, r, d = int(data["n"]), int(data["r"]), int(data["d"])
        points = tuple(itertools.product(range(n), repeat=r))
        factors = data["factors"]
        return cls(
            n,
            r,
            d,
            points,
            _table_from_json(points, data["b"]),
            _table_from_json(points, factors["b1"]),
            _table_from_json(points, factors["bplus"]),
            _table_from_json(points, factors["bminus"]),
        )


def build_model_algebra(m: Motive, n: int, limit_points: int = DEFAULT_POINT_LIMIT) -> ModelAlgebra:
    if not isinstance(m, Motive):
        raise TypeError(f"expected a monomial Motive, got {type(m).__name__}")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ValueError(f"level n must be a positive integer, got {n!r}")
    if n**m.r > limit_points:
        raise ValueError(f"n**r = {n}**{m.r} exceeds the point limit {limit_points}")
    u1, _ = raynaud_decompose(m)
    plus, minus = split_pm(compute_monodromy(m))
    mu_p, mu_m = plus.mu, minus.mu
    points = tuple(itertools.product(range(n), repeat=m.r))

    b1, bp, bm, b = [], [], [], []
    for i in range(m.d):
        units = u1.entries[i]
        r1, rp, rm, rb = [], [], [], []
        for a in points:
            x1 = monomial_product([units[j] ** a[j] for j in range(m.r)])
            xp = PiMonomial.pi_power(sum(a[j] * int(mu_p[i, j]) for j in range(m.r)))
            xm = PiMonomial.pi_power(sum((n - a[j]) * -int(mu_m[i, j]) for j in range(m.r) if a[j]))
            r1.append(x1)
            rp.append(xp)
            rm.append(xm)
            rb.append(x1 * xp * xm)
        b1.append(tuple(r1))
        bp.append(tuple(rp))
        bm.append(tuple(rm))
        b.append(tuple(rb))
    return ModelAlgebra(n, m.r, m.d, points, tuple(b), tuple(b1), tuple(bp), tuple(bm))


def generic_fibre_check(alg: ModelAlgebra, m: Motive) -> bool:
    """Whether every ``b_i(a) / prod_j U[i][j]**a_j`` is an n-th power in K*."""
    if (alg.r, alg.d) != (m.r, m.d):
        return False
    for i in range(alg.d):
        row = m.entries[i]
        for a, v in zip(alg.points, alg.b[i]):
            expected = monomial_product([row[j] ** a[j] for j in range(alg.r)])
            if not is_nth_power(v / expected, alg.n):
                return False
    return True


@dataclass(frozen=True)
class IntegralityReport:
    min_valuation: int
    integral: bool
    non_unit_points: tuple[tuple[tuple[int, ...], ...], ...]  # per torus index i

    def to_dict(self) -> dict:
        return {
            "min_valuation": self.min_valuation,
            "integral": self.integral,
            "non_unit_points": [[list(a) for a in pts] for pts in self.non_unit_points],
        }


def integrality_report(alg: ModelAlgebra) -> IntegralityReport:
    """Minimum valuation of all ``b_i(a)`` and the points where ``b_i`` is not a unit."""
    min_val = min(v.valuation for row in alg.b for v in row)
    non_units = tuple(
        tuple(a for a, v in zip(alg.points, row) if not v.is_unit()) for row in alg.b
    )
    return IntegralityReport(min_val, min_val >= 0, non_units)
