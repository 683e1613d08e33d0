"""Seeded verification suites behind ``motivic verify``.

Each suite returns a list of :class:`Check` results. A failed check carries
the first failing input in JSON form so it can be replayed directly.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Iterator, Optional

from .cocycles import (
    ShortExactSequence,
    carry_cocycle,
    ext_class_representatives,
    extension_group,
    is_cocycle,
    random_cocycle,
    standard_cocycle,
    verify_psi_relation,
)
from .dieudonne import (
    artin_hasse_log,
    artin_hasse_roundtrip,
    build_dieudonne,
    check_invariants,
    coproduct_identity_check,
    id1_check,
    is_p_integral,
    second_kind_integral,
)
from .extension_classes import (
    baer_sum_class,
    eta_class,
    extends_over_R,
    kato_pair,
    push_theorem_check,
    reconstruct,
)
from .groups import FinAbGroup
from .log_model import build_model_algebra, generic_fibre_check, integrality_report
from .motive import (
    MonodromyMatrix,
    Motive,
    compute_monodromy,
    plus_minus_motives,
    random_motive,
    raynaud_decompose,
)

__all__ = [
    "Check",
    "GROUP_TYPES_UP_TO_4",
    "SUITES",
    "exhaustive_psi_instances",
    "psi_instance",
    "random_psi_instance",
    "run_suite",
]

GROUP_TYPES_UP_TO_4 = [(), (2,), (3,), (4,), (2, 2)]


@dataclass
class Check:
    name: str
    passed: bool
    cases: int
    counterexample: Optional[Any] = None

    def to_dict(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "cases": self.cases}
        if not self.passed:
            out["counterexample"] = self.counterexample
        return out


def _check(name: str, cases: Iterable, predicate: Callable[[Any], bool], describe: Callable[[Any], Any]) -> Check:
    count = 0
    for case in cases:
        count += 1
        if not predicate(case):
            return Check(name, False, count, describe(case))
    return Check(name, True, count)


def _order(orders) -> int:
    out = 1
    for m in orders:
        out *= m
    return out


# --- instances of the Baer-sum vertical sequence check ----------------------


@dataclass
class PsiInstance:
    psibar: ShortExactSequence
    eta1: Any
    eta2tilde: Any
    description: dict = field(default_factory=dict)


def psi_instance(P, I, N, psi_classes, eta1_classes, eta2_classes) -> PsiInstance:
    """Standard-form instance: ``psibar`` from classes in Ext(P, I), and so on."""
    Pg, Ig, Ng = FinAbGroup(P), FinAbGroup(I), FinAbGroup(N)
    psibar = ShortExactSequence.from_cocycle(standard_cocycle(Pg, Ig, psi_classes))
    eta1 = standard_cocycle(Ng, psibar.L, eta1_classes)
    eta2 = standard_cocycle(Ng, Ig, eta2_classes)
    desc = {
        "P": list(P),
        "I": list(I),
        "N": list(N),
        "psibar": [list(x) for x in psi_classes],
        "eta1": [list(x) for x in eta1_classes],
        "eta2tilde": [list(x) for x in eta2_classes],
    }
    return PsiInstance(psibar, eta1, eta2, desc)


def exhaustive_psi_instances(max_order: int = 4) -> Iterator[PsiInstance]:
    """Every class choice for group types with ``|I||P|, |N| <= max_order``."""
    types = [t for t in GROUP_TYPES_UP_TO_4 if _order(t) <= max_order]
    for P, I, N in itertools.product(types, repeat=3):
        if _order(P) * _order(I) > max_order:
            continue
        Pg, Ig, Ng = FinAbGroup(P), FinAbGroup(I), FinAbGroup(N)
        for psi_cls in ext_class_representatives(Pg, Ig):
            L = ShortExactSequence.from_cocycle(standard_cocycle(Pg, Ig, psi_cls)).L
            for e1 in ext_class_representatives(Ng, L):
                for e2 in ext_class_representatives(Ng, Ig):
                    yield psi_instance(P, I, N, psi_cls, e1, e2)


def _random_type(rng: random.Random, max_order: int) -> tuple:
    while True:
        k = rng.randint(0, 2)
        t = tuple(rng.randint(2, max_order) for _ in range(k))
        if _order(t) <= max_order:
            return t


def random_psi_instance(rng: random.Random, max_order: int = 12) -> PsiInstance:
    """Random instance with every group order (including |L| = |I||P|) bounded."""
    while True:
        P, I, N = (_random_type(rng, max_order) for _ in range(3))
        if _order(P) * _order(I) <= max_order:
            break
    Pg, Ig, Ng = FinAbGroup(P), FinAbGroup(I), FinAbGroup(N)
    psi_cls = [tuple(rng.randrange(o) for o in I) for _ in P]
    psibar = ShortExactSequence.from_cocycle(standard_cocycle(Pg, Ig, psi_cls))
    eta1 = random_cocycle(rng, Ng, psibar.L)
    eta2 = random_cocycle(rng, Ng, Ig)
    desc = {"P": list(P), "I": list(I), "N": list(N), "psibar": [list(x) for x in psi_cls],
            "eta1": eta1.to_dict(), "eta2tilde": eta2.to_dict()}
    return PsiInstance(psibar, eta1, eta2, desc)


# --- suites -----------------------------------------------------------------


def _motives(rng: random.Random, count: int, **kw) -> list[Motive]:
    return [random_motive(rng, **kw) for _ in range(count)]


def _with_n(rng: random.Random, motives, max_n: int = 8):
    return [(m, rng.randint(1, max_n)) for m in motives]


def _mn(case) -> dict:
    m, n = case[0], case[1]
    return {"motive": m.to_dict(), "n": n}


def suite_motive(rng: random.Random, size: int) -> list[Check]:
    ms = _motives(rng, size)

    def decomposes(m):
        u1, u2 = raynaud_decompose(m)
        plus, minus = plus_minus_motives(m)
        return u1 * u2 == m and plus * minus == u2 and u1.is_good_reduction()

    def mu_additive(pair):
        a, b = pair
        return compute_monodromy(a * b).mu.tolist() == (compute_monodromy(a).mu + compute_monodromy(b).mu).tolist()

    pairs = [(m, random_motive(rng, m.r, m.d)) for m in ms]
    return [
        _check("raynaud decomposition u = u1 * u2", ms, decomposes, lambda m: {"motive": m.to_dict()}),
        _check("monodromy is additive", pairs, mu_additive, lambda p: [x.to_dict() for x in p]),
    ]


def suite_extension_classes(rng: random.Random, size: int) -> list[Check]:
    cases = _with_n(rng, _motives(rng, size))
    pairs = [(m, random_motive(rng, m.r, m.d), n) for m, n in cases]

    def baer(c):
        m, m2, n = c
        return eta_class(m * m2, n) == baer_sum_class(eta_class(m, n), eta_class(m2, n))

    def good_reduction(c):
        m, n = c
        a = extends_over_R(m, n)
        b = not kato_pair(m, n).N.any()
        c2 = eta_class(raynaud_decompose(m)[1], n).is_trivial()
        return a == b == c2

    def roundtrip(c):
        m, n = c
        return reconstruct(kato_pair(m, n)) == eta_class(m, n)

    def pm(c):
        m, n = c
        u1, _ = raynaud_decompose(m)
        plus, minus = plus_minus_motives(m)
        total = baer_sum_class(baer_sum_class(eta_class(u1, n), eta_class(plus, n)), eta_class(minus, n))
        return total == eta_class(m, n)

    return [
        _check("eta_class is a homomorphism", pairs, baer,
               lambda c: {"motive": c[0].to_dict(), "other": c[1].to_dict(), "n": c[2]}),
        _check("good reduction criterion", cases, good_reduction, _mn),
        _check("push-out theorem", cases, lambda c: push_theorem_check(*c), _mn),
        _check("Kato pair reconstruction", cases, roundtrip, _mn),
        _check("plus/minus decomposition", cases, pm, _mn),
    ]


def suite_log_model(rng: random.Random, size: int) -> list[Check]:
    cases = []
    while len(cases) < size:
        m = random_motive(rng, max_rank=2)
        n = rng.randint(1, 8)
        if n**m.r <= 10**4:
            cases.append((m, n))
    algs = [(m, n, build_model_algebra(m, n)) for m, n in cases]
    return [
        _check("model algebra is integral", algs, lambda c: integrality_report(c[2]).integral, _mn),
        _check("generic fibre presents the torsion", algs, lambda c: generic_fibre_check(c[2], c[0]), _mn),
    ]


def suite_cocycles(rng: random.Random, size: int) -> list[Check]:
    carry = list(range(1, 65))
    levels = [2, 3, 4, 5, 8, 9]
    psi_cases = [random_psi_instance(rng, 8) for _ in range(max(1, size // 10))]
    return [
        _check("carry cocycle is a cocycle", carry, lambda n: is_cocycle(carry_cocycle(n, n)), lambda n: {"n": n}),
        _check("carry extension is cyclic of order q^2", levels,
               lambda q: extension_group(carry_cocycle(q, q)).invariants() == [q * q], lambda q: {"q": q}),
        _check("Baer-sum vertical sequences", psi_cases,
               lambda inst: bool(verify_psi_relation(inst.psibar, inst.eta1, inst.eta2tilde)),
               lambda inst: inst.description),
    ]


def suite_dieudonne(rng: random.Random, size: int) -> list[Check]:
    mats = []
    for _ in range(size):
        d, r = rng.randint(1, 3), rng.randint(1, 3)
        mu = [[rng.randint(-9, 9) for _ in range(r)] for _ in range(d)]
        mats.append((mu, rng.choice([2, 3, 5, 13]), rng.randint(1, 4)))

    def identities(c):
        mu, p, m = c
        return all(check_invariants(build_dieudonne(MonodromyMatrix(mu), p, m)).values())

    levels = [(2, 1), (3, 1), (2, 2), (5, 1), (2, 3), (3, 2), (5, 2)]
    sk = [(p, m, r) for p, m in [(5, 1), (3, 2), (2, 3)] for r in (1, 2)]

    def second_kind(c):
        p, m, r = c
        step = 4 if p == 2 else p
        units = [1 + step * rng.randint(0, 20) for _ in range(r)]
        return second_kind_integral(units, p, m).check_coboundary()

    def ah(p):
        l = artin_hasse_log(p, 30)
        return all(is_p_integral(c, p) for c in l.coefficients) and artin_hasse_roundtrip(l, p)

    return [
        _check("FV = VF = p, N^2 = 0, FNV = N", mats, identities,
               lambda c: {"mu": c[0], "p": c[1], "m": c[2]}),
        _check("id(1) intertwines F and V", levels, lambda c: id1_check(*c), lambda c: {"p": c[0], "m": c[1]}),
        _check("coproduct identity with sign -1", levels,
               lambda c: coproduct_identity_check(*c) == -1, lambda c: {"p": c[0], "m": c[1]}),
        _check("Artin-Hasse log integrality and round trip", [2, 3, 5], ah, lambda p: {"p": p, "degree": 30}),
        _check("second-kind integral coboundary", sk, second_kind, lambda c: {"p": c[0], "m": c[1], "r": c[2]}),
    ]


SUITES: dict[str, Callable[[random.Random, int], list[Check]]] = {
    "motive": suite_motive,
    "extension_classes": suite_extension_classes,
    "log_model": suite_log_model,
    "cocycles": suite_cocycles,
    "dieudonne": suite_dieudonne,
}


def run_suite(name: str, seed: int, size: int = 100) -> dict[str, list[Check]]:
    """Run one suite (or ``all``) with a fresh generator per suite."""
    names = list(SUITES) if name == "all" else [name]
    out = {}
    for s in names:
        if s not in SUITES:
            raise ValueError(f"unknown suite {s!r}; choose from {['all', *SUITES]}")
        out[s] = SUITES[s](random.Random(f"{seed}:{s}"), size)
    return out
