"""Finite abelian groups and homomorphisms between them.

:class:`FinAbGroup` is the standard form ``Z/m_1 + ... + Z/m_k`` with
elements stored as coordinate tuples. An order of 0 stands for a copy of Z;
such groups can carry cocycle values but cannot be enumerated.

:class:`TableGroup` is an arbitrary finite abelian group given by an
explicit element list and addition function. Subgroups, quotients and fibre
products built during the extension computations land here.
"""

from __future__ import annotations

import itertools
from functools import cached_property
from typing import Callable, Hashable, Iterable, Optional, Sequence

import numpy as np

__all__ = ["AbelianGroup", "FinAbGroup", "TableGroup", "direct_product", "fibre_product", "quotient"]


class AbelianGroup:
    """Common interface: enumerable elements with an index table for addition."""

    zero: Hashable

    def add(self, x, y):
        raise NotImplementedError

    def neg(self, x):
        raise NotImplementedError

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def scalar(self, t: int, x):
        out = self.zero
        base = x if t >= 0 else self.neg(x)
        for _ in range(abs(t)):
            out = self.add(out, base)
        return out

    @property
    def elements(self) -> list:
        raise NotImplementedError

    @cached_property
    def index(self) -> dict:
        return {x: i for i, x in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def add_table(self) -> np.ndarray:
        els = self.elements
        idx = self.index
        n = len(els)
        table = np.empty((n, n), dtype=np.int64)
        for i, x in enumerate(els):
            for j in range(i, n):
                k = idx[self.add(x, els[j])]
                table[i, j] = k
                table[j, i] = k
        return table

    @cached_property
    def neg_table(self) -> np.ndarray:
        return np.array([self.index[self.neg(x)] for x in self.elements], dtype=np.int64)

    @cached_property
    def generators(self) -> list:
        """A small generating set found greedily (largest element orders first)."""
        els = self.elements
        span = {self.zero}
        gens = []
        by_order = sorted(els, key=lambda x: (-self.element_order(x), self.index[x]))
        for g in by_order:
            if g in span:
                continue
            gens.append(g)
            multiples = [self.scalar(t, g) for t in range(self.element_order(g))]
            span = {self.add(x, y) for x in span for y in multiples}
            if len(span) == len(els):
                break
        return gens

    def element_order(self, x) -> int:
        k, y = 1, x
        while y != self.zero:
            y = self.add(y, x)
            k += 1
        return k

    def is_isomorphic(self, other: "AbelianGroup") -> bool:
        return sorted(self.invariants()) == sorted(other.invariants())

    def invariants(self) -> list[int]:
        """Invariant factors ``d_1 | d_2 | ...`` (all > 1)."""
        from .smith import invariant_factors

        gens = self.generators
        rels = _relations(self, gens)
        return invariant_factors(rels, len(gens))


def _relations(G: AbelianGroup, gens: Sequence) -> list[list[int]]:
    """Triangular relation matrix for ``gens``: row i expresses ``t_i * g_i``
    (least ``t_i`` landing in the span of earlier gens) in earlier gens."""
    k = len(gens)
    span: dict = {G.zero: [0] * k}
    rels = []
    for i, g in enumerate(gens):
        t, x = 1, g
        while x not in span:
            x = G.add(x, g)
            t += 1
        row = [-c for c in span[x]]
        row[i] += t
        rels.append(row)
        new = dict(span)
        for s, coeffs in span.items():
            y = s
            for c in range(1, t):
                y = G.add(y, g)
                vec = list(coeffs)
                vec[i] += c
                new[y] = vec
        span = new
    return rels


class FinAbGroup(AbelianGroup):
    """``Z/m_1 + ... + Z/m_k``; elements are k-tuples of ints."""

    def __init__(self, cyclic_orders: Iterable[int]):
        orders = tuple(int(m) for m in cyclic_orders)
        if any(m < 0 for m in orders):
            raise ValueError(f"cyclic orders must be >= 0 (0 = Z), got {orders}")
        self.cyclic_orders = orders
        self.zero = tuple(0 for _ in orders)

    @property
    def rank(self) -> int:
        return len(self.cyclic_orders)

    def is_finite(self) -> bool:
        return all(m > 0 for m in self.cyclic_orders)

    def reduce(self, x) -> tuple:
        if len(x) != self.rank:
            raise ValueError(f"element {x!r} has wrong length for {self}")
        return tuple(int(v) % m if m else int(v) for v, m in zip(x, self.cyclic_orders))

    def reduce_array(self, arr: np.ndarray) -> np.ndarray:
        """Reduce an array whose last axis holds coordinates."""
        out = np.array(arr, dtype=np.int64, copy=True)
        for k, m in enumerate(self.cyclic_orders):
            if m:
                out[..., k] %= m
        return out

    def add(self, x, y):
        return self.reduce(tuple(a + b for a, b in zip(x, y)))

    def neg(self, x):
        return self.reduce(tuple(-a for a in x))

    def scalar(self, t: int, x):
        return self.reduce(tuple(t * a for a in x))

    @cached_property
    def elements(self) -> list[tuple]:
        if not self.is_finite():
            raise ValueError(f"{self} is infinite and cannot be enumerated")
        return [tuple(e) for e in itertools.product(*[range(m) for m in self.cyclic_orders])]

    @property
    def order(self) -> int:
        if not self.is_finite():
            raise ValueError(f"{self} is infinite")
        out = 1
        for m in self.cyclic_orders:
            out *= m
        return out

    @cached_property
    def index(self) -> dict:
        return {x: i for i, x in enumerate(self.elements)}

    def index_of(self, x) -> int:
        i = 0
        for v, m in zip(self.reduce(x), self.cyclic_orders):
            i = i * m + v
        return i

    @cached_property
    def coords(self) -> np.ndarray:
        """Coordinates of all elements, shape (order, rank)."""
        return np.array(self.elements, dtype=np.int64).reshape(self.order, self.rank)

    @cached_property
    def add_table(self) -> np.ndarray:
        c = self.coords
        s = self.reduce_array(c[:, None, :] + c[None, :, :])
        return self._index_array(s)

    def _index_array(self, coords: np.ndarray) -> np.ndarray:
        idx = np.zeros(coords.shape[:-1], dtype=np.int64)
        for k, m in enumerate(self.cyclic_orders):
            idx = idx * m + coords[..., k]
        return idx

    @cached_property
    def generators(self) -> list[tuple]:
        return [
            tuple(int(i == k) for i in range(self.rank))
            for k, m in enumerate(self.cyclic_orders)
            if m != 1
        ]

    def invariants(self) -> list[int]:
        from .smith import invariant_factors

        k = self.rank
        rels = [[m if i == j else 0 for j in range(k)] for i, m in enumerate(self.cyclic_orders)]
        return invariant_factors(rels, k) if k else []

    def __eq__(self, other) -> bool:
        return isinstance(other, FinAbGroup) and self.cyclic_orders == other.cyclic_orders

    def __hash__(self):
        return hash(("FinAbGroup", self.cyclic_orders))

    def __repr__(self) -> str:
        if not self.cyclic_orders:
            return "FinAbGroup(trivial)"
        return "FinAbGroup(" + " + ".join("Z" if m == 0 else f"Z/{m}" for m in self.cyclic_orders) + ")"

    def to_dict(self) -> list[int]:
        return list(self.cyclic_orders)


class TableGroup(AbelianGroup):
    """Finite abelian group given by an element list and an addition rule."""

    def __init__(
        self,
        elements: Sequence[Hashable],
        add: Callable,
        zero: Hashable,
        neg: Optional[Callable] = None,
        name: str = "G",
    ):
        self._elements = list(elements)
        self._add = add
        self._neg = neg
        self.zero = zero
        self.name = name

    @property
    def elements(self) -> list:
        return self._elements

    def add(self, x, y):
        return self._add(x, y)

    def neg(self, x):
        if self._neg is not None:
            return self._neg(x)
        for y in self._elements:
            if self._add(x, y) == self.zero:
                return y
        raise ValueError(f"{x!r} has no inverse")

    def __repr__(self) -> str:
        return f"TableGroup({self.name}, order={self.order})"


def direct_product(G: AbelianGroup, H: AbelianGroup) -> TableGroup:
    els = [(g, h) for g in G.elements for h in H.elements]
    return TableGroup(
        els,
        lambda x, y: (G.add(x[0], y[0]), H.add(x[1], y[1])),
        (G.zero, H.zero),
        lambda x: (G.neg(x[0]), H.neg(x[1])),
        name=f"{G!r} x {H!r}",
    )


def fibre_product(G: AbelianGroup, f: Callable, H: AbelianGroup, g: Callable) -> TableGroup:
    """``{(x, y) : f(x) == g(y)}`` inside ``G x H``."""
    by_image: dict = {}
    for y in H.elements:
        by_image.setdefault(g(y), []).append(y)
    els = [(x, y) for x in G.elements for y in by_image.get(f(x), [])]
    return TableGroup(
        els,
        lambda a, b: (G.add(a[0], b[0]), H.add(a[1], b[1])),
        (G.zero, H.zero),
        lambda a: (G.neg(a[0]), H.neg(a[1])),
        name="fibre product",
    )


def quotient(G: AbelianGroup, subgroup: Sequence) -> tuple[TableGroup, Callable]:
    """``G / S`` with cosets named by their least member (in G's order).

    Returns the quotient group and the projection ``G -> G/S``.
    """
    S = list(subgroup)
    idx = G.index
    canon: dict = {}
    for x in G.elements:
        if x in canon:
            continue
        coset = [G.add(x, s) for s in S]
        rep = min(coset, key=idx.__getitem__)
        for y in coset:
            canon[y] = rep
    reps = sorted(set(canon.values()), key=idx.__getitem__)
    Q = TableGroup(
        reps,
        lambda a, b: canon[G.add(a, b)],
        canon[G.zero],
        lambda a: canon[G.neg(a)],
        name="quotient",
    )
    return Q, canon.__getitem__
