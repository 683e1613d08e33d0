"""Dieudonne module of the p-divisible group of a Tate curve, truncated mod p^m.

F and V act diagonally on the toric and etale parts, the monodromy
operator N sends toric to etale, and the identities FV = VF = p,
N^2 = 0 and FNV = N hold. The carry cocycle reappears as the defect of
h(a) = a / p^m, and the Artin-Hasse logarithm of 1 + Y is p-integral.
"""

from motivic import MonodromyMatrix
from motivic.dieudonne import (
    artin_hasse_log,
    build_dieudonne,
    check_invariants,
    coproduct_identity_check,
    padic_log,
    second_kind_integral,
)

D = build_dieudonne(MonodromyMatrix([[13]]), 5, 2)
print("F =", D.F.tolist(), " V =", D.V.tolist(), " N =", D.Nop.tolist())
print(check_invariants(D))

for p, m in [(2, 3), (3, 2), (5, 2)]:
    print(f"p^m = {p**m}: coproduct sign {coproduct_identity_check(p, m)}")

l = artin_hasse_log(2, 8)
print("Artin-Hasse log of 1+Y, p = 2:", [str(c) for c in l.coefficients])

print("log 6 mod 125 =", padic_log(6, 5, 3))
h = second_kind_integral([6], 5, 1)
print("h on Z/5 for u = 6:", [str(h((a,))) for a in range(5)], " coboundary:", h.check_coboundary())
