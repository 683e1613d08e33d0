"""Symmetric 2-cocycles on finite abelian groups.

A :class:`Cocycle2` on a finite group ``A`` with values in a standard group
``B`` (see :class:`~motivic.groups.FinAbGroup`) is a dense table of
coordinates. The extension it presents is ``E = B x A`` with

    (b, a) + (b', a') = (b + b' + c(a, a'), a + a'),

so the section ``a -> (0, a)`` has factor set ``c``. Every construction in
this module (Baer sums, push-outs, pull-backs, the vertical sequences of a
Baer sum) uses that same convention.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .groups import AbelianGroup, FinAbGroup, TableGroup, fibre_product, quotient
from .local_field import PiMonomial
from .smith import smith_normal_form, solve_congruences

__all__ = [
    "Cocycle2",
    "ExtensionGroup",
    "KCocycle",
    "PsiReport",
    "SectionMap",
    "ShortExactSequence",
    "additive_factor_set",
    "baer_vertical_data",
    "VerticalData",
    "baer_sum",
    "carry_cocycle",
    "carry_table",
    "classical_factor_set",
    "coboundary",
    "ext_class_representatives",
    "extension_group",
    "is_coboundary",
    "is_cocycle",
    "multiplicative_factor_set",
    "pullback",
    "pushforward",
    "random_cocycle",
    "standard_cocycle",
    "standard_section",
    "verify_psi_relation",
]

# candidate count up to which the lexicographically least trivialization is searched
LEX_SEARCH_CAP = 4096

HomLike = Union[Callable, np.ndarray, Sequence[Sequence[int]]]


class Cocycle2:
    """Dense 2-cochain ``A x A -> B`` (values as B-coordinates)."""

    def __init__(self, A: AbelianGroup, B: FinAbGroup, table):
        if not isinstance(B, FinAbGroup):
            raise TypeError("cocycle values must live in a FinAbGroup")
        n = A.order
        arr = np.asarray(table, dtype=np.int64)
        if arr.ndim == 2 and B.rank == 1:
            arr = arr[..., None]
        if arr.shape != (n, n, B.rank):
            raise ValueError(f"table shape {arr.shape} does not match |A|={n}, rank B={B.rank}")
        self.A = A
        self.B = B
        self.table = B.reduce_array(arr)
        self.table.setflags(write=False)

    @classmethod
    def from_function(cls, A: AbelianGroup, B: FinAbGroup, fn: Callable) -> "Cocycle2":
        els = A.elements
        table = np.array([[B.reduce(fn(a, b)) for b in els] for a in els], dtype=np.int64)
        return cls(A, B, table.reshape(len(els), len(els), B.rank))

    @classmethod
    def zero(cls, A: AbelianGroup, B: FinAbGroup) -> "Cocycle2":
        n = A.order
        return cls(A, B, np.zeros((n, n, B.rank), dtype=np.int64))

    def value(self, a, b) -> tuple:
        idx = self.A.index
        return tuple(int(v) for v in self.table[idx[a], idx[b]])

    __call__ = value

    def is_normalized(self) -> bool:
        z = self.A.index[self.A.zero]
        return not self.table[z].any() and not self.table[:, z].any()

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.table, self.table.transpose(1, 0, 2)))

    def __add__(self, other: "Cocycle2") -> "Cocycle2":
        _check_same(self, other)
        return Cocycle2(self.A, self.B, self.table + other.table)

    def __neg__(self) -> "Cocycle2":
        return Cocycle2(self.A, self.B, -self.table)

    def __sub__(self, other: "Cocycle2") -> "Cocycle2":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cocycle2):
            return NotImplemented
        return (
            self.B == other.B
            and self.A.elements == other.A.elements
            and bool(np.array_equal(self.table, other.table))
        )

    __hash__ = None

    def to_dict(self) -> dict:
        if not isinstance(self.A, FinAbGroup):
            raise ValueError("only cocycles on standard groups serialize")
        vals = self.table.reshape(self.A.order**2, self.B.rank).tolist()
        if self.B.rank == 1:
            vals = [v[0] for v in vals]
        return {"A": self.A.to_dict(), "B": self.B.to_dict(), "table": vals}

    @classmethod
    def from_dict(cls, data: dict) -> "Cocycle2":
        A = FinAbGroup(data["A"])
        B = FinAbGroup(data["B"])
        n = A.order
        arr = np.array(data["table"], dtype=np.int64).reshape(n, n, B.rank)
        return cls(A, B, arr)

    def __repr__(self) -> str:
        return f"Cocycle2(A={self.A!r}, B={self.B!r})"


def _check_same(c1: Cocycle2, c2: Cocycle2) -> None:
    if c1.B != c2.B or c1.A.elements != c2.A.elements:
        raise ValueError(f"group mismatch: {c1!r} vs {c2!r}")


def is_cocycle(c: Cocycle2) -> bool:
    """Normalized, symmetric, and ``c(a,b) + c(a+b,z) == c(b,z) + c(a,b+z)``."""
    if not (c.is_normalized() and c.is_symmetric()):
        return False
    add = c.A.add_table
    t = c.table
    n = c.A.order
    # chunk over the first argument to bound memory
    for a in range(n):
        ab = add[a]  # a + b for every b
        lhs = t[a][:, None, :] + t[ab][:, :, :]  # [b, z]
        rhs = t[:, :, :] + t[a][add][:, :, :]  # c(b,z) + c(a, b+z)
        if not np.array_equal(c.B.reduce_array(lhs), c.B.reduce_array(rhs)):
            return False
    return True


def coboundary(A: AbelianGroup, B: FinAbGroup, h) -> Cocycle2:
    """``(dh)(a, b) = h(a) + h(b) - h(a + b)`` for a table ``h`` (|A| x rank B)."""
    h = np.asarray(h, dtype=np.int64).reshape(A.order, B.rank)
    add = A.add_table
    table = h[:, None, :] + h[None, :, :] - h[add]
    return Cocycle2(A, B, table)


def _spanning_tree(A: AbelianGroup, gens: Sequence):
    """BFS over the Cayley graph; returns (order, parent edge per node)."""
    idx = A.index
    add = A.add_table
    gidx = [idx[g] for g in gens]
    z = idx[A.zero]
    parent = {z: None}
    order = [z]
    queue = deque([z])
    extra = []
    while queue:
        a = queue.popleft()
        for t, g in enumerate(gidx):
            b = int(add[a, g])
            if b not in parent:
                parent[b] = (a, t)
                order.append(b)
                queue.append(b)
            else:
                extra.append((a, t, b))
    return order, parent, extra, gidx


def is_coboundary(c: Cocycle2) -> Optional[np.ndarray]:
    """Return ``h`` (|A| x rank B, ``h(0) = 0``) with ``dh == c``, or ``None``.

    ``h`` is pinned by its values ``x_g`` on a generating set: walking a
    spanning tree of the Cayley graph gives ``h(a) = C[a] x + k[a]`` and the
    remaining edges give linear congruences in ``x``, solved one coordinate
    of ``B`` at a time through the Smith normal form. When the solution set
    is small the lexicographically least ``h`` is returned.
    """
    if not (c.is_normalized() and c.is_symmetric()):
        return None
    A, B = c.A, c.B
    n, rk = A.order, B.rank
    gens = list(A.generators)
    t = len(gens)
    order, parent, extra, gidx = _spanning_tree(A, gens)
    C = np.zeros((n, t), dtype=object)
    K = np.zeros((n, rk), dtype=object)
    tab = c.table
    for node in order[1:]:
        a, g = parent[node]
        C[node] = C[a]
        C[node, g] += 1
        K[node] = K[a] - tab[a, gidx[g]]
    x = np.zeros((t, rk), dtype=object)
    kernels = []
    for k, m in enumerate(B.cyclic_orders):
        rows: dict = {}
        for a, g, b in extra:
            lhs = list(C[a])
            lhs[g] += 1
            lhs = tuple(int(u - v) for u, v in zip(lhs, C[b]))
            rhs = int(K[b, k] - K[a, k] + tab[a, gidx[g], k])
            if m:
                lhs = tuple(u % m for u in lhs)
                rhs %= m
            if not any(lhs):
                if (rhs % m if m else rhs) != 0:
                    return None
                continue
            rows.setdefault(lhs, set()).add(rhs)
        eqs, rhss = [], []
        for lhs, vals in rows.items():
            vals = sorted(vals)
            # two different right-hand sides for one row: subtract to a 0 = d equation
            for v in vals[1:]:
                if (v - vals[0]) % m if m else v - vals[0]:
                    return None
            eqs.append(list(lhs))
            rhss.append(vals[0])
        if t == 0:
            continue
        sol = solve_congruences(eqs, rhss, m) if eqs else (
            [0] * t,
            [[int(i == j) for i in range(t)] for j in range(t)],
            [m] * t,
        )
        if sol is None:
            return None
        x0, kgens, korders = sol
        x[:, k] = x0
        kernels.append((k, kgens, korders))

    def build(xv):
        h = (C.dot(xv) + K) if t else K.copy()
        return B.reduce_array(np.array(h, dtype=np.int64).reshape(n, rk))

    h = build(x)
    # lexicographically least trivialization when the solution set is small
    total = 1
    for _, _, korders in kernels:
        for o in korders:
            total *= o if o else 1
            if o == 0:
                total = 0
    if 1 < total <= LEX_SEARCH_CAP:
        best = None
        choices = []
        for k, kgens, korders in kernels:
            choices.extend((k, g, o) for g, o in zip(kgens, korders) if o > 1)
        for coeffs in itertools.product(*[range(o) for _, _, o in choices]):
            xv = x.copy()
            for (k, g, _), cf in zip(choices, coeffs):
                xv[:, k] = [u + cf * v for u, v in zip(xv[:, k], g)]
            cand = build(xv)
            key = tuple(cand.ravel().tolist())
            if best is None or key < best[0]:
                best = (key, cand)
        h = best[1]
    if not np.array_equal(coboundary(A, B, h).table, c.table):
        return None
    return h


def baer_sum(c1: Cocycle2, c2: Cocycle2) -> Cocycle2:
    return c1 + c2


def _as_hom(phi: HomLike, source: FinAbGroup, target: FinAbGroup) -> Callable:
    if callable(phi):
        return lambda x: target.reduce(phi(x))
    mat = np.asarray(phi, dtype=object)
    if mat.shape != (target.rank, source.rank):
        raise ValueError(f"hom matrix shape {mat.shape} != {(target.rank, source.rank)}")
    return lambda x: target.reduce(tuple(int(v) for v in mat.dot(np.array(x, dtype=object))))


def pushforward(phi: HomLike, c: Cocycle2, target: FinAbGroup) -> Cocycle2:
    """Push-out along ``phi: B -> target`` (callable or integer matrix)."""
    f = _as_hom(phi, c.B, target)
    flat = c.table.reshape(c.A.order**2, c.B.rank)
    cache: dict = {}
    out = np.empty((flat.shape[0], target.rank), dtype=np.int64)
    for i, v in enumerate(map(tuple, flat.tolist())):
        if v not in cache:
            cache[v] = f(v)
        out[i] = cache[v]
    n = c.A.order
    return Cocycle2(c.A, target, out.reshape(n, n, target.rank))


def pullback(psi: Callable, c: Cocycle2, source: AbelianGroup) -> Cocycle2:
    """Pull-back along ``psi: source -> A``."""
    idx = c.A.index
    try:
        img = np.array([idx[psi(a)] for a in source.elements], dtype=np.int64)
    except KeyError as exc:
        raise ValueError(f"psi sends an element outside {c.A!r}") from exc
    return Cocycle2(source, c.B, c.table[np.ix_(img, img)])


def carry_table(n: int) -> np.ndarray:
    """``gamma(a, b) = [sigma(a) + sigma(b)]``, i.e. 1 iff ``a + b >= n``."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    a = np.arange(n)
    return (a[:, None] + a[None, :] >= n).astype(np.int64)


def carry_cocycle(n: int, modulus: int = 0) -> Cocycle2:
    """The carry cocycle on Z/n with values in Z (``modulus=0``) or Z/modulus."""
    return Cocycle2(FinAbGroup([n]), FinAbGroup([modulus]), carry_table(n))


def standard_cocycle(A: FinAbGroup, B: FinAbGroup, classes: Sequence) -> Cocycle2:
    """``c(a, b) = sum_j gamma_{m_j}(a_j, b_j) * x_j`` for one class ``x_j`` per factor.

    Its extension class in ``Ext(A, B) = + B / m_j B`` is ``(x_j mod m_j B)``.
    """
    if len(classes) != A.rank:
        raise ValueError("need one class per cyclic factor of A")
    coords = A.coords
    out = np.zeros((A.order, A.order, B.rank), dtype=np.int64)
    for j, (m, xj) in enumerate(zip(A.cyclic_orders, classes)):
        gamma = (coords[:, None, j] + coords[None, :, j] >= m).astype(np.int64)
        out += gamma[..., None] * np.array(B.reduce(xj), dtype=np.int64)
    return Cocycle2(A, B, out)


def ext_class_representatives(A: FinAbGroup, B: FinAbGroup) -> list[tuple]:
    """One tuple of classes per element of ``Ext(A, B)``."""
    per_factor = []
    for m in A.cyclic_orders:
        seen, reps = set(), []
        for x in B.elements:
            key = _coset_key(B, x, m)
            if key not in seen:
                seen.add(key)
                reps.append(x)
        per_factor.append(reps)
    return [tuple(choice) for choice in itertools.product(*per_factor)]


def _coset_key(B: FinAbGroup, x, m: int) -> tuple:
    # canonical form of x modulo m*B, coordinatewise (B is a product of cyclics)
    out = []
    for v, order in zip(x, B.cyclic_orders):
        g = np.gcd(m, order) if order else m
        out.append(v % g if g else v)
    return tuple(out)


def random_cocycle(rng: random.Random, A: FinAbGroup, B: FinAbGroup, *, twist: bool = True) -> Cocycle2:
    """Random extension class, shifted by a random coboundary when ``twist``."""
    classes = [tuple(rng.randrange(o) for o in B.cyclic_orders) for _ in A.cyclic_orders]
    c = standard_cocycle(A, B, classes)
    if twist and A.order > 1:
        h = np.array(
            [[0] * B.rank] + [[rng.randrange(o) for o in B.cyclic_orders] for _ in range(A.order - 1)],
            dtype=np.int64,
        ).reshape(A.order, B.rank)
        c = c + coboundary(A, B, h)
    return c


class ExtensionGroup(AbelianGroup):
    """``E = B x A`` with the twisted law; see the module docstring."""

    def __init__(self, c: Cocycle2):
        self.cocycle = c
        self.A = c.A
        self.B = c.B
        self.zero = (c.B.zero, c.A.zero)
        self._idx = c.A.index

    def add(self, x, y):
        (b, a), (b2, a2) = x, y
        cv = self.cocycle.table[self._idx[a], self._idx[a2]]
        return (self.B.reduce(tuple(int(u + v + w) for u, v, w in zip(b, b2, cv))), self.A.add(a, a2))

    def neg(self, x):
        b, a = x
        na = self.A.neg(a)
        cv = self.cocycle.table[self._idx[a], self._idx[na]]
        return (self.B.reduce(tuple(-int(u) - int(w) for u, w in zip(b, cv))), na)

    @cached_property
    def elements(self) -> list:
        return [(b, a) for a in self.A.elements for b in self.B.elements]

    def embed(self, b) -> tuple:
        return (self.B.reduce(b), self.A.zero)

    def project(self, x):
        return x[1]

    def lift(self, a) -> tuple:
        return (self.B.zero, a)

    @cached_property
    def _a_gens(self) -> list:
        return list(self.A.generators)

    @cached_property
    def _a_coords(self) -> dict:
        """Coefficients of every element of A in terms of ``_a_gens``."""
        gens = self._a_gens
        A = self.A
        span: dict = {A.zero: [0] * len(gens)}
        for i, g in enumerate(gens):
            new = dict(span)
            for s, coeffs in span.items():
                y = s
                for cf in range(1, A.element_order(g)):
                    y = A.add(y, g)
                    if y not in new:
                        vec = list(coeffs)
                        vec[i] += cf
                        new[y] = vec
            span = new
        return span

    def _combo(self, coeffs: Sequence[int], base: tuple) -> tuple:
        x = base
        for cf, g in zip(coeffs, self._a_gens):
            x = self.add(x, self.scalar(int(cf), self.lift(g)))
        return x

    @cached_property
    def relation_matrix(self) -> list[list[int]]:
        """Relations on generators ``(B unit vectors) + (lifts of A's gens)``."""
        from .groups import _relations

        rb = self.B.rank
        gens = self._a_gens
        rows = []
        for k, m in enumerate(self.B.cyclic_orders):
            rows.append([m if i == k else 0 for i in range(rb)] + [0] * len(gens))
        for rel in _relations(self.A, gens):
            b, a = self._combo(rel, self.zero)
            assert a == self.A.zero
            rows.append([-int(v) for v in b] + list(rel))
        return rows

    @cached_property
    def _smith(self):
        return smith_normal_form(self.relation_matrix)

    @cached_property
    def _diag(self) -> list[int]:
        ngens = self.B.rank + len(self._a_gens)
        d = self._smith.diagonal
        return d + [0] * (ngens - len(d))

    @cached_property
    def standard(self) -> FinAbGroup:
        """Isomorphism type as a standard group (invariant factors, 0 = Z)."""
        return FinAbGroup([d for d in self._diag if d != 1])

    def invariants(self) -> list[int]:
        return list(self.standard.cyclic_orders)

    def to_standard(self, x) -> tuple:
        b, a = x
        coeffs = self._a_coords[a]
        y = self._combo(coeffs, self.zero)
        rest = tuple(int(u) - int(v) for u, v in zip(b, y[0]))
        v = list(rest) + list(coeffs)
        V = self._smith.V
        w = [sum(v[r] * V[r][col] for r in range(len(v))) for col in range(len(v))]
        return self.standard.reduce(tuple(wc for wc, d in zip(w, self._diag) if d != 1))

    def from_standard(self, y) -> tuple:
        y = self.standard.reduce(y)
        it = iter(y)
        w = [next(it) if d != 1 else 0 for d in self._diag]
        Vi = self._smith.V_inv
        v = [sum(w[r] * Vi[r][col] for r in range(len(w))) for col in range(len(w))]
        rb = self.B.rank
        base = self.embed(tuple(v[:rb]))
        return self._combo(v[rb:], base)

    def __repr__(self) -> str:
        return f"ExtensionGroup({self.cocycle!r}) ~ {self.standard!r}"


def extension_group(c: Cocycle2) -> ExtensionGroup:
    return ExtensionGroup(c)


@dataclass
class SectionMap:
    """A set-theoretic section of ``projection: target -> source``."""

    source: AbelianGroup
    table: dict
    projection: Callable

    def check(self) -> bool:
        return all(self.projection(v) == a for a, v in self.table.items()) and (
            self.table.get(self.source.zero, 0) == 0
        )

    def __call__(self, a):
        return self.table[a]


def standard_section(n: int) -> SectionMap:
    """``sigma(a) = a~ / n`` with ``0 <= sigma(a) < 1`` on Z/n inside (1/n)Z / Z."""
    A = FinAbGroup([n])
    table = {a: Fraction(a[0], n) for a in A.elements}
    proj = lambda q: ((q.numerator * (n // q.denominator)) % n,)  # noqa: E731
    return SectionMap(A, table, proj)


def additive_factor_set(mu_row: Sequence[int], n: int) -> Cocycle2:
    """``c(a, b) = sum_i gamma_n(a_i, b_i) * mu_i`` on (Z/n)^r with values in Z."""
    r = len(mu_row)
    A = FinAbGroup([n] * r)
    return standard_cocycle(A, FinAbGroup([0]), [(int(m),) for m in mu_row])


class KCocycle:
    """2-cochain on a finite group with values in K* (PiMonomial table)."""

    def __init__(self, A: FinAbGroup, table: Sequence[Sequence[PiMonomial]]):
        self.A = A
        self.table = [list(row) for row in table]

    def value(self, a, b) -> PiMonomial:
        idx = self.A.index
        return self.table[idx[a]][idx[b]]

    def is_cocycle(self) -> bool:
        """Multiplicative identity ``c(a,b) c(a+b,z) == c(b,z) c(a,b+z)``."""
        add = self.A.add_table
        n = self.A.order
        T = self.table
        z = self.A.index[self.A.zero]
        one = PiMonomial.one()
        if any(T[z][i] != one or T[i][z] != one for i in range(n)):
            return False
        for a in range(n):
            for b in range(n):
                if T[a][b] != T[b][a]:
                    return False
                ab = add[a, b]
                for c in range(n):
                    if T[a][b] * T[ab][c] != T[b][c] * T[a][add[b, c]]:
                        return False
        return True

    def valuation_table(self) -> np.ndarray:
        return np.array([[x.valuation for x in row] for row in self.table], dtype=np.int64)

    def is_unit_valued(self) -> bool:
        return all(x.is_unit() for row in self.table for x in row)


def multiplicative_factor_set(mu_row: Sequence[int], n: int) -> KCocycle:
    """``pi ** (-sum_i gamma_n(a_i, b_i) * mu_i)``."""
    add = additive_factor_set(mu_row, n)
    vals = add.table[..., 0]
    return KCocycle(add.A, [[PiMonomial.pi_power(-int(v)) for v in row] for row in vals])


def classical_factor_set(units: Sequence[PiMonomial], n: int) -> KCocycle:
    """``prod_i u_i ** (-gamma_n(a_i, b_i))`` for unit ``u_i``."""
    for u in units:
        if not u.is_unit():
            raise ValueError(f"classical factor set needs units, got {u}")
    r = len(units)
    A = FinAbGroup([n] * r)
    coords = A.coords
    gam = [(coords[:, None, i] + coords[None, :, i] >= n) for i in range(r)]
    table = []
    for x in range(A.order):
        row = []
        for y in range(A.order):
            v = PiMonomial.one()
            for i, u in enumerate(units):
                if gam[i][x, y]:
                    v = v * u.inverse()
            row.append(v)
        table.append(row)
    return KCocycle(A, table)


# --- vertical sequences of a Baer sum ---------------------------------------


@dataclass
class ShortExactSequence:
    """``0 -> I --w--> L --k--> P -> 0`` between finite groups."""

    I: FinAbGroup
    L: FinAbGroup
    P: AbelianGroup
    w: Callable
    k: Callable

    def validate(self) -> None:
        I, L, P = self.I, self.L, self.P
        for x in I.elements:
            for y in I.elements:
                if self.w(I.add(x, y)) != L.add(self.w(x), self.w(y)):
                    raise ValueError("w is not a homomorphism")
        for x in L.elements:
            for y in L.elements:
                if self.k(L.add(x, y)) != P.add(self.k(x), self.k(y)):
                    raise ValueError("k is not a homomorphism")
        image_w = {self.w(x) for x in I.elements}
        if len(image_w) != I.order:
            raise ValueError("w is not injective")
        if {self.k(x) for x in L.elements} != set(P.elements):
            raise ValueError("k is not surjective")
        kernel_k = {x for x in L.elements if self.k(x) == P.zero}
        if kernel_k != image_w:
            raise ValueError("image of w differs from kernel of k")

    @classmethod
    def from_cocycle(cls, c: Cocycle2) -> "ShortExactSequence":
        """The extension of ``c.A`` by ``c.B`` presented by ``c``, with L in standard form."""
        E = ExtensionGroup(c)
        L = E.standard
        return cls(
            I=c.B,
            L=L,
            P=c.A,
            w=lambda i: E.to_standard(E.embed(i)),
            k=lambda l: E.project(E.from_standard(l)),
        )


@dataclass
class VerticalData:
    """Factor sets on ``Q`` of the three sequences compared by the Baer-sum check."""

    psi: Cocycle2
    iota_psi1: Cocycle2
    f_eta2tilde: Cocycle2
    sigma_is_section: bool
    iota_is_isomorphism: bool
    order_M: int


@dataclass
class PsiReport:
    """Outcome of :func:`verify_psi_relation` with the intermediate checks."""

    holds: bool
    sigma_is_section: bool
    iota_is_isomorphism: bool
    order_M: int
    order_Q: int
    trivialization: Optional[np.ndarray] = field(default=None, repr=False)

    def __bool__(self) -> bool:
        return self.holds


def _middle_cocycle(M: AbelianGroup, Q: AbelianGroup, section: Callable, tau_inv: dict, I: FinAbGroup) -> Cocycle2:
    """Factor set of ``0 -> I -> M -> Q -> 0`` for a section ``Q -> M``."""
    els = Q.elements
    s = {q: section(q) for q in els}
    table = np.empty((len(els), len(els), I.rank), dtype=np.int64)
    for i, q in enumerate(els):
        for j, q2 in enumerate(els):
            diff = M.sub(M.add(s[q], s[q2]), s[Q.add(q, q2)])
            table[i, j] = tau_inv[diff]
    return Cocycle2(Q, I, table)


def baer_vertical_data(
    psibar: ShortExactSequence,
    eta1: Cocycle2,
    eta2tilde: Cocycle2,
    w: Optional[Callable] = None,
) -> VerticalData:
    """Build the vertical middle sequences of ``eta1``, ``eta1 + w_* eta2tilde``.

    ``psibar`` is ``0 -> I -> L -> P -> 0``; ``eta1`` an extension of ``N`` by
    ``L``; ``eta2tilde`` an extension of ``N`` by ``I``. The Baer sum
    ``eta = eta1 + w_* eta2tilde`` is built as a genuine fibre product modulo
    the antidiagonal, its push-out along ``k`` and the vertical sequence
    ``0 -> I -> M -> Q -> 0`` are computed as quotients, and the comparison
    isomorphism ``iota: Q -> Q1`` comes from the canonical section
    ``sigma^c`` of ``Q2 -> N``.
    """
    psibar.validate()
    I, L, P = psibar.I, psibar.L, psibar.P
    w = psibar.w if w is None else w
    k = psibar.k
    if eta1.B != L or eta2tilde.B != I:
        raise ValueError("eta1 must take values in L and eta2tilde in I")
    if eta1.A.elements != eta2tilde.A.elements:
        raise ValueError("eta1 and eta2tilde must be extensions of the same N")
    for name, c in (("eta1", eta1), ("eta2tilde", eta2tilde)):
        if not is_cocycle(c):
            raise ValueError(f"{name} is not a symmetric normalized 2-cocycle")
    N = eta1.A

    M1 = ExtensionGroup(eta1)
    Mt2 = ExtensionGroup(eta2tilde)
    eta2 = pushforward(w, eta2tilde, L)
    M2 = ExtensionGroup(eta2)

    def delta(x):  # Mt2 -> M2
        return (w(x[0]), x[1])

    # Baer sum: (M1 x_N M2) / {(l, -l)}
    FP = fibre_product(M1, M1.project, M2, M2.project)
    antidiag = [(M1.embed(l), M2.embed(L.neg(l))) for l in L.elements]
    M, to_M = quotient(FP, antidiag)

    def h(mm):
        return M1.project(mm[0])

    tau_img = {i: to_M((M1.embed(w(i)), M2.zero)) for i in I.elements}
    Q, g = quotient(M, list(tau_img.values()))
    tau_inv = {v: I.reduce(i) for i, v in tau_img.items()}

    tau1_img = {i: M1.embed(w(i)) for i in I.elements}
    Q1, g1 = quotient(M1, list(tau1_img.values()))
    tau1_inv = {v: I.reduce(i) for i, v in tau1_img.items()}

    Q2, g2 = quotient(M2, [M2.embed(w(i)) for i in I.elements])

    # canonical section: sigma_c(htilde2(x)) = g2(delta(x)); (0, n) is a preimage of n
    sigma_c = {n: g2(delta(Mt2.lift(n))) for n in N.elements}
    sigma_ok = all(M2.project(sigma_c[n]) == n for n in N.elements) and all(
        sigma_c[N.add(a, b)] == Q2.add(sigma_c[a], sigma_c[b]) for a in N.elements for b in N.elements
    )

    # P-parts: ker(Q2 -> N) -> ker(Q1 -> N) through L
    kappa = {g2(M2.embed(l)): g1(M1.embed(l)) for l in L.elements}

    def iota(q):
        m1, m2 = q  # representatives of Q are fibre-product elements
        q2 = g2(m2)
        p_part = Q2.sub(q2, sigma_c[M2.project(m2)])
        return Q1.add(g1(m1), kappa[p_part])

    iota_map = {q: iota(q) for q in Q.elements}
    iota_ok = (
        len(set(iota_map.values())) == Q1.order == Q.order
        and all(iota_map[Q.add(a, b)] == Q1.add(iota_map[a], iota_map[b]) for a in Q.elements for b in Q.elements)
        and all(M1.project(iota_map[q]) == h(q) for q in Q.elements)
    )

    psi = _middle_cocycle(M, Q, lambda q: q, tau_inv, I)
    psi1 = _middle_cocycle(M1, Q1, lambda q: q, tau1_inv, I)
    return VerticalData(
        psi=psi,
        iota_psi1=pullback(lambda q: iota_map[q], psi1, Q),
        f_eta2tilde=pullback(h, eta2tilde, Q),
        sigma_is_section=sigma_ok,
        iota_is_isomorphism=iota_ok,
        order_M=M.order,
    )


def verify_psi_relation(
    psibar: ShortExactSequence,
    eta1: Cocycle2,
    eta2tilde: Cocycle2,
    w: Optional[Callable] = None,
) -> PsiReport:
    """Check ``psi ~ iota^* psi1 + f^* eta2tilde`` for the vertical middle sequences.

    Only existence of the isomorphism is decided: the difference of factor
    sets must be a coboundary on ``Q``. Raises ``ValueError`` on non-exact
    input.
    """
    data = baer_vertical_data(psibar, eta1, eta2tilde, w)
    triv = is_coboundary(data.psi - (data.iota_psi1 + data.f_eta2tilde))
    return PsiReport(
        holds=triv is not None and data.sigma_is_section and data.iota_is_isomorphism,
        sigma_is_section=data.sigma_is_section,
        iota_is_isomorphism=data.iota_is_isomorphism,
        order_M=data.order_M,
        order_Q=data.psi.A.order,
        trivialization=triv,
    )
