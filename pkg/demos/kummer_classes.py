"""Kummer classes of a 2x2 motive and the Baer sum.

The class map is a homomorphism: the class of a product is the Baer sum
of the classes. The unit part and the pi-power part can be read off
separately.
"""

import random

from motivic import baer_sum_class, eta_class, random_motive, raynaud_decompose

rng = random.Random(7)
n = 6
u = random_motive(rng, 2, 2, max_valuation=4)
v = random_motive(rng, 2, 2, max_valuation=4)

print("u =", u.to_dict()["entries"])
print("v =", v.to_dict()["entries"])
cu, cv = eta_class(u, n), eta_class(v, n)
print("class(u) mod 6-th powers:", [[str(x) for x in row] for row in cu.cls])
print("class(u v) == class(u) + class(v):", eta_class(u * v, n) == baer_sum_class(cu, cv))

u1, u2 = raynaud_decompose(u)
print("unit part class:", [[str(x) for x in row] for row in eta_class(u1, n).cls])
print("pi-power part exponents mod 6:", eta_class(u2, n).exponents.tolist())
