"""Truncated Dieudonne computations over Z/p^m with residue field F_p.

With k = F_p the Witt vectors are Z_p and Frobenius acts trivially, so
every semilinear map is an honest matrix. The module of the p-divisible
group attached to a toric 1-motive is taken in split form: a toric block
(basis ``chi_i (x) delta``, i < d) followed by an etale block (basis
``e_j^vee (x) zeta``, j < r). On it ``F = diag(p, 1)`` and
``V = diag(1, p)`` blockwise, and the monodromy operator ``Nop`` sends the
toric block to the etale block through the transposed monodromy.

Also here: exact truncated power series (for the Artin-Hasse logarithm),
p-adic logarithms of principal units modulo p^m, and the tables of the
integral of the second kind attached to a list of principal units.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
from sympy import isprime

from .cocycles import carry_table
from .motive import MonodromyMatrix

__all__ = [
    "DieudonneData",
    "IntegralSecondKind",
    "PrecisionError",
    "TruncatedSeries",
    "artin_hasse_log",
    "artin_hasse_roundtrip",
    "build_dieudonne",
    "check_invariants",
    "coproduct_identity_check",
    "id1_check",
    "is_p_integral",
    "padic_log",
    "second_kind_integral",
]


class PrecisionError(ArithmeticError):
    """Requested working precision cannot support the division by p^m."""


def _check_prime(p) -> int:
    if not isinstance(p, (int, np.integer)) or isinstance(p, bool) or not isprime(int(p)):
        raise ValueError(f"p must be a prime, got {p!r}")
    return int(p)


def _check_m(m) -> int:
    if not isinstance(m, (int, np.integer)) or isinstance(m, bool) or m < 1:
        raise ValueError(f"truncation level m must be >= 1, got {m!r}")
    return int(m)


# --- Dieudonne module --------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DieudonneData:
    p: int
    m: int
    d: int
    r: int
    F: np.ndarray
    V: np.ndarray
    Nop: np.ndarray

    @property
    def modulus(self) -> int:
        return self.p**self.m

    @property
    def size(self) -> int:
        return self.d + self.r

    def mat(self, *factors: np.ndarray) -> np.ndarray:
        """Product of matrices reduced mod p^m after every step."""
        q = self.modulus
        out = np.eye(self.size, dtype=np.int64)
        for f in factors:
            out = (out @ f) % q
        return out

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "d": self.d,
            "r": self.r,
            "F": self.F.tolist(),
            "V": self.V.tolist(),
            "N": self.Nop.tolist(),
        }


def build_dieudonne(mu: MonodromyMatrix, p: int, m: int) -> DieudonneData:
    p, m = _check_prime(p), _check_m(m)
    q = p**m
    d, r = mu.d, mu.r
    F = np.diag([p % q] * d + [1 % q] * r).astype(np.int64)
    V = np.diag([1 % q] * d + [p % q] * r).astype(np.int64)
    Nop = np.zeros((d + r, d + r), dtype=np.int64)
    # column i (toric chi_i) maps to sum_j mu[i][j] * (etale e_j)
    Nop[d:, :d] = np.mod(mu.nu_dual, q)
    for a in (F, V, Nop):
        a.setflags(write=False)
    return DieudonneData(p, m, d, r, F, V, Nop)


def check_invariants(D: DieudonneData) -> dict[str, bool]:
    q = D.modulus
    pI = (D.p * np.eye(D.size, dtype=np.int64)) % q
    zero = np.zeros((D.size, D.size), dtype=np.int64)
    N = D.Nop
    return {
        "FV=p": bool(np.array_equal(D.mat(D.F, D.V), pI)),
        "VF=p": bool(np.array_equal(D.mat(D.V, D.F), pI)),
        "N^2=0": bool(np.array_equal(D.mat(N, N), zero)),
        "FNV=N": bool(np.array_equal(D.mat(D.F, N, D.V), N)),
        "N toric->etale": bool(not N[:, D.d :].any() and not N[: D.d, :].any()),
    }


def id1_check(p: int, m: int) -> bool:
    """``F o id(1) o V = id(1)`` for the 1x1 blocks, ``delta -> zeta``."""
    one = build_dieudonne(MonodromyMatrix([[1]]), p, m)
    id1 = np.array([[0, 0], [1, 0]], dtype=np.int64)
    return bool(np.array_equal(one.mat(one.F, id1, one.V), id1))


def coproduct_identity_check(p: int, m: int, *, chunk: int = 512) -> Optional[int]:
    """Global sign ``eps`` with ``h(a+b) - h(a) - h(b) = eps * gamma(a, b)``.

    ``h(a) = a~ / p^m`` on Z/p^m; the defect is compared against the carry
    cocycle on every pair. Returns ``None`` if no single sign fits.
    """
    p, m = _check_prime(p), _check_m(m)
    n = p**m
    if n > 10**4:
        raise ValueError(f"p^m = {n} exceeds 10**4")
    gamma = carry_table(n)
    a = np.arange(n)
    signs = {1, -1}
    for start in range(0, n, chunk):
        rows = a[start : start + chunk, None]
        # n * (h(a+b) - h(a) - h(b)), an integer
        defect = (rows + a[None, :]) % n - rows - a[None, :]
        g = gamma[start : start + chunk]
        signs = {s for s in signs if np.array_equal(defect, s * n * g)}
        if not signs:
            return None
    # n >= 2, so gamma(n-1, n-1) = 1 pins the sign down
    return signs.pop()


# --- truncated power series --------------------------------------------------


@dataclass(frozen=True)
class TruncatedSeries:
    """Exact power series ``sum c_k Y^k`` known modulo ``Y^(degree+1)``."""

    coefficients: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(Fraction(c) for c in self.coefficients))
        if not self.coefficients:
            raise ValueError("a truncated series needs at least the constant term")

    @classmethod
    def from_list(cls, coeffs: Sequence, degree: int) -> "TruncatedSeries":
        cs = [Fraction(c) for c in coeffs[: degree + 1]]
        return cls(tuple(cs + [Fraction(0)] * (degree + 1 - len(cs))))

    @classmethod
    def variable(cls, degree: int) -> "TruncatedSeries":
        return cls.from_list([0, 1], degree)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, k: int) -> Fraction:
        return self.coefficients[k]

    def _same(self, other: "TruncatedSeries") -> int:
        return min(self.degree, other.degree)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = self._same(other)
        return TruncatedSeries(tuple(self[k] + other[k] for k in range(n + 1)))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + other.scale(-1)

    def scale(self, c) -> "TruncatedSeries":
        c = Fraction(c)
        return TruncatedSeries(tuple(c * x for x in self.coefficients))

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = self._same(other)
        a, b = self.coefficients, other.coefficients
        out = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            if a[i]:
                ai = a[i]
                for j in range(n + 1 - i):
                    if b[j]:
                        out[i + j] += ai * b[j]
        return TruncatedSeries(tuple(out))

    def __pow__(self, e: int) -> "TruncatedSeries":
        out = TruncatedSeries.from_list([1], self.degree)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def exp(self) -> "TruncatedSeries":
        """``exp(f)`` for ``f(0) = 0`` via ``k g_k = sum_j j f_j g_{k-j}``."""
        if self[0] != 0:
            raise ValueError("exp needs a series without constant term")
        f, n = self.coefficients, self.degree
        g = [Fraction(1)] + [Fraction(0)] * n
        for k in range(1, n + 1):
            g[k] = sum((j * f[j] * g[k - j] for j in range(1, k + 1) if f[j]), Fraction(0)) / k
        return TruncatedSeries(tuple(g))

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = self._same(other)
        return self.coefficients[: n + 1] == other.coefficients[: n + 1]

    def __hash__(self):
        return hash(self.coefficients)

    def to_dict(self) -> dict:
        return {"degree": self.degree, "coefficients": [f"{c.numerator}/{c.denominator}" for c in self.coefficients]}


def is_p_integral(x: Fraction, p: int) -> bool:
    return Fraction(x).denominator % p != 0


def _log1p_neg(degree: int) -> list[Fraction]:
    """Coefficients of ``-log(1+Y)``."""
    return [Fraction(0)] + [Fraction((-1) ** k, k) for k in range(1, degree + 1)]


def artin_hasse_log(p: int, degree: int) -> TruncatedSeries:
    """``l(Y)`` with ``sum_i p^-i l^(p^i) = -log(1+Y)``, solved degree by degree.

    Write ``l = -Y w`` with ``w(0) = 1``. The power ``w^N`` obeys Miller's
    recurrence ``g_k = (1/k) sum_j ((N+1) j - k) w_j g_{k-j}``, and for
    ``N = p^i >= 2`` the coefficient of ``Y^k`` in ``l^N`` only needs
    ``w_1 .. w_{k-N}``, which are already known at step k.
    """
    p = _check_prime(p)
    if not isinstance(degree, int) or degree < 0 or degree > 200:
        raise ValueError(f"degree must lie in [0, 200], got {degree!r}")
    target = _log1p_neg(degree)
    powers = []
    N = p
    while N <= degree:
        powers.append(N)
        N *= p
    w = [Fraction(1)] + [Fraction(0)] * degree
    g = {N: [Fraction(1)] for N in powers}  # coefficients of w^N
    l = [Fraction(0)] * (degree + 1)
    for k in range(1, degree + 1):
        rest = Fraction(0)
        for i, N in enumerate(powers, start=1):
            if N > k:
                break
            gn = g[N]
            t = k - N
            while len(gn) <= t:
                s = len(gn)
                gn.append(sum(((N + 1) * j - s) * w[j] * gn[s - j] for j in range(1, s + 1)) / s)
            rest += Fraction((-1) ** N, p**i) * gn[t]
        l[k] = target[k] - rest
        # l_k = -w_{k-1}
        w[k - 1] = -l[k]
    return TruncatedSeries(tuple(l))


def artin_hasse_roundtrip(l: TruncatedSeries, p: int) -> bool:
    """``exp(-sum_i p^-i l^(p^i)) == 1 + Y`` to the degree of ``l``."""
    n = l.degree
    s = l
    N, i = p, 1
    while N <= n:
        s = s + (l**N).scale(Fraction(1, p**i))
        N, i = N * p, i + 1
    return s.scale(-1).exp() == TruncatedSeries.from_list([1, 1], n)


# --- p-adic logarithm and integrals of the second kind -----------------------


def padic_log(u: int, p: int, m: int) -> int:
    """``log u`` modulo ``p^m`` for a principal unit ``u``.

    ``u`` only matters modulo ``p^m``: each term ``(u-1)^k / k`` with
    ``k = p^e k'`` is evaluated as ``((u-1)^k mod p^(m+e)) / p^e`` times the
    inverse of ``k'``.
    """
    p, m = _check_prime(p), _check_m(m)
    q = p**m
    u = int(u)
    need = 4 if p == 2 else p
    if (u - 1) % need:
        raise ValueError(f"log needs u = 1 mod {need}; got u = {u} for p = {p}")
    x = (u - 1) % q
    if x == 0:
        return 0
    total = 0
    k = 1
    # terms have valuation >= k - log_p(k) >= m beyond this bound
    while k <= 2 * m + 8 or k - _vp_floor_log(k, p) < m:
        e, kk = 0, k
        while kk % p == 0:
            kk //= p
            e += 1
        num = pow(x, k, q * p**e)
        if num % p**e:
            raise ArithmeticError("non-integral log term; precondition violated")
        term = (num // p**e) * pow(kk, -1, q)
        total += term if k % 2 else -term
        k += 1
    return total % q


def _vp_floor_log(k: int, p: int) -> int:
    e = 0
    while p ** (e + 1) <= k:
        e += 1
    return e


@dataclass(frozen=True)
class IntegralSecondKind:
    """``h(a) = sum_i (a_i~ / p^m) * L_i`` on ``(Z/p^m)^r`` with ``L_i = -log u_i``.

    ``L_i`` is known modulo ``p^precision``, so each value ``h(a)`` is known
    modulo ``p^(precision - m)``.
    """

    p: int
    m: int
    r: int
    precision: int
    logs: tuple[int, ...]  # L_i mod p^precision
    table: dict

    @property
    def level(self) -> int:
        return self.p**self.m

    def __call__(self, a) -> Fraction:
        n = self.level
        return self.table[tuple(int(x) % n for x in a)]

    def congruent(self, x: Fraction, y: Fraction) -> bool:
        """``x = y`` modulo ``p^m Z_(p)``."""
        diff = Fraction(x) - Fraction(y)
        if diff == 0:
            return True
        return diff.denominator % self.p != 0 and diff.numerator % self.level == 0

    def coboundary_counterexample(self) -> Optional[tuple]:
        """First pair violating ``h(a)+h(b)-h(a+b) = sum gamma(a_i,b_i) L_i``."""
        n = self.level
        pts = list(self.table)
        gamma = carry_table(n)
        for a in pts:
            for b in pts:
                s = tuple((x + y) % n for x, y in zip(a, b))
                lhs = self.table[a] + self.table[b] - self.table[s]
                rhs = sum(int(gamma[x, y]) * L for x, y, L in zip(a, b, self.logs))
                if not self.congruent(lhs, rhs):
                    return a, b, lhs, rhs
        return None

    def check_coboundary(self) -> bool:
        return self.coboundary_counterexample() is None

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "precision": self.precision,
            "logs": list(self.logs),
            "table": {",".join(map(str, a)): f"{v.numerator}/{v.denominator}" for a, v in self.table.items()},
        }


def second_kind_integral(
    units: Sequence[int], p: int, m: int, *, precision: Optional[int] = None
) -> IntegralSecondKind:
    """Tables of ``h`` for principal units ``u_i`` (one per lattice generator).

    Dividing by ``p^m`` costs m digits, so the logarithms are computed
    modulo ``p^precision`` with ``precision >= 2m`` (the default).
    """
    p, m = _check_prime(p), _check_m(m)
    prec = 2 * m if precision is None else int(precision)
    if prec < 2 * m:
        raise PrecisionError(f"precision {prec} < 2m = {2 * m}: h would not be determined mod p^{m}")
    units = [int(u) for u in units]
    if not units:
        raise ValueError("at least one unit is required")
    Q = p**prec
    logs = tuple((-padic_log(u, p, prec)) % Q for u in units)
    n = p**m
    table = {
        a: sum((Fraction(x * L, n) for x, L in zip(a, logs)), Fraction(0))
        for a in itertools.product(range(n), repeat=len(units))
    }
    return IntegralSecondKind(p, m, len(units), prec, logs, table)
