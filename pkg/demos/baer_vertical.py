"""Carry cocycle, its extension, and the vertical Baer-sum relation.

The carry cocycle on Z/q defines the extension Z/q^2. The sweep over all
small group types checks that the vertical sequence built from a Baer sum
agrees with the pushed class up to a coboundary.
"""

import random

from motivic.cocycles import carry_cocycle, extension_group, is_cocycle, verify_psi_relation
from motivic.suites import exhaustive_psi_instances, random_psi_instance

for q in (2, 3, 4, 5, 8, 9):
    c = carry_cocycle(q, q)
    print(f"q={q}: cocycle={is_cocycle(c)}  extension invariants={extension_group(c).invariants()}")

count = sum(1 for inst in exhaustive_psi_instances(4) if verify_psi_relation(inst.psibar, inst.eta1, inst.eta2tilde))
print("exhaustive instances with orders <= 4 passing:", count)

rng = random.Random(0)
inst = random_psi_instance(rng, 12)
print("random instance:", inst.description["P"], inst.description["I"], inst.description["N"],
      "->", bool(verify_psi_relation(inst.psibar, inst.eta1, inst.eta2tilde)))
