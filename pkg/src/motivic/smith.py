"""Smith normal form over Z with exact Python integers.

``smith_normal_form(A)`` returns ``D, V, V_inv`` and optionally ``U`` with
``U @ A @ V == D``. Row operations can also be replayed on extra right-hand
side columns without materializing ``U``, which keeps tall systems (many
equations, few unknowns) cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence

__all__ = ["SmithForm", "smith_normal_form", "solve_congruences", "invariant_factors"]

Matrix = list[list[int]]


@dataclass
class SmithForm:
    D: Matrix
    V: Matrix
    V_inv: Matrix
    U: Optional[Matrix]
    rhs: Optional[Matrix]  # U @ rhs, when rhs columns were supplied

    @property
    def diagonal(self) -> list[int]:
        k = min(len(self.D), len(self.D[0]) if self.D else 0)
        return [self.D[i][i] for i in range(k)]


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(
    A: Sequence[Sequence[int]],
    rhs: Optional[Sequence[Sequence[int]]] = None,
    *,
    track_u: bool = False,
) -> SmithForm:
    """Diagonalize ``A`` with unimodular row/column operations.

    The diagonal entries are non-negative and each divides the next.
    ``rhs`` (rows x k) receives every row operation applied to ``A``.
    """
    M = [[int(x) for x in row] for row in A]
    m = len(M)
    n = len(M[0]) if m else 0
    R = [[int(x) for x in row] for row in rhs] if rhs is not None else None
    U = _identity(m) if track_u else None
    V = _identity(n)
    Vi = _identity(n)

    def row_swap(i, j):
        M[i], M[j] = M[j], M[i]
        if R is not None:
            R[i], R[j] = R[j], R[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def row_addmul(dst, src, q):
        # row_dst += q * row_src
        if q == 0:
            return
        rs, rd = M[src], M[dst]
        for c in range(n):
            if rs[c]:
                rd[c] += q * rs[c]
        if R is not None:
            R[dst] = [a + q * b for a, b in zip(R[dst], R[src])]
        if U is not None:
            U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def row_neg(i):
        M[i] = [-x for x in M[i]]
        if R is not None:
            R[i] = [-x for x in R[i]]
        if U is not None:
            U[i] = [-x for x in U[i]]

    def col_swap(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def col_addmul(dst, src, q):
        # col_dst += q * col_src
        if q == 0:
            return
        for row in M:
            if row[src]:
                row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]
        Vi[src] = [a - q * b for a, b in zip(Vi[src], Vi[dst])]

    t = 0
    while t < min(m, n):
        # smallest nonzero entry in the remaining block becomes the pivot
        best = None
        for i in range(t, m):
            row = M[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            row_swap(t, pi)
        if pj != t:
            col_swap(t, pj)
        while True:
            done = True
            p = M[t][t]
            for i in range(t + 1, m):
                if M[i][t]:
                    row_addmul(i, t, -(M[i][t] // p))
                    if M[i][t]:
                        done = False
            for j in range(t + 1, n):
                if M[t][j]:
                    col_addmul(j, t, -(M[t][j] // p))
                    if M[t][j]:
                        done = False
            if done:
                # divisibility of the remaining block by the pivot
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if M[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                row_addmul(t, bad, 1)
                continue
            # move the smallest nonzero of row/column t to the pivot
            cand = [(abs(M[i][t]), i, t) for i in range(t, m) if M[i][t]]
            cand += [(abs(M[t][j]), t, j) for j in range(t, n) if M[t][j]]
            _, ci, cj = min(cand)
            if ci != t:
                row_swap(t, ci)
            if cj != t:
                col_swap(t, cj)
        if M[t][t] < 0:
            row_neg(t)
        t += 1
    return SmithForm(D=M, V=V, V_inv=Vi, U=U, rhs=R)


def invariant_factors(relations: Sequence[Sequence[int]], ngens: int) -> list[int]:
    """Cyclic orders of ``Z^ngens / rowspace(relations)``; 0 stands for Z.

    Trivial factors (1) are dropped.
    """
    if not relations:
        return [0] * ngens
    sf = smith_normal_form(relations)
    diag = sf.diagonal + [0] * (ngens - len(sf.diagonal))
    return [d for d in diag if d != 1]


def _mod(x: int, m: int) -> int:
    return x % m if m else x


def solve_congruences(
    A: Sequence[Sequence[int]], b: Sequence[int], modulus: int
) -> Optional[tuple[list[int], list[list[int]], list[int]]]:
    """Solve ``A x = b`` over Z/modulus (modulus 0 means over Z).

    Returns ``(x0, kernel_gens, kernel_orders)`` where every solution is
    ``x0 + sum c_i * kernel_gens[i]`` with ``c_i`` taken mod
    ``kernel_orders[i]`` (0 meaning unbounded), or ``None`` when unsolvable.
    """
    n = len(A[0]) if A else 0
    if not A:
        return [0] * n, [[int(i == j) for i in range(n)] for j in range(n)], [modulus] * n
    sf = smith_normal_form(A, rhs=[[v] for v in b])
    c = [row[0] for row in sf.rhs]
    diag = sf.diagonal
    y = [0] * n
    gens_y: list[tuple[int, int]] = []  # (column, step)
    for i in range(len(A)):
        d = diag[i] if i < len(diag) else 0
        if d == 0:
            if _mod(c[i], modulus) != 0:
                return None
            continue
        if modulus:
            g = gcd(d, modulus)
            if c[i] % g:
                return None
            mg = modulus // g
            y[i] = ((c[i] // g) * pow(d // g, -1, mg)) % mg if mg > 1 else 0
            if g > 1:
                gens_y.append((i, mg))
        else:
            if c[i] % d:
                return None
            y[i] = c[i] // d
    for j in range(n):
        if j >= len(diag) or diag[j] == 0:
            gens_y.append((j, 1))
    V = sf.V
    x0 = [_mod(sum(V[r][k] * y[k] for k in range(n)), modulus) for r in range(n)]
    kernel = []
    orders = []
    for col, step in gens_y:
        kernel.append([_mod(V[r][col] * step, modulus) for r in range(n)])
        orders.append(modulus // step if modulus else 0)
    return x0, kernel, orders
