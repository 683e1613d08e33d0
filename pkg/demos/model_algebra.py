"""The algebra of the finite log model of the n-torsion.

For the motive pi the table is b(a) = pi^a. For 1/pi it is pi^(n - a)
off zero. Both tables lie in R and present the n-torsion on the generic
fibre.
"""

from fractions import Fraction

from motivic import Motive, PiMonomial, build_model_algebra, generic_fibre_check, integrality_report

n = 5
for k in (1, -1):
    m = Motive(1, 1, ((PiMonomial(Fraction(1), k),),))
    alg = build_model_algebra(m, n)
    print(f"u = pi^{k}:", [str(v) for v in alg.b[0]])
    print("  integral:", integrality_report(alg).integral, " generic fibre:", generic_fibre_check(alg, m))

m = Motive(2, 1, ((PiMonomial(Fraction(3), 2), PiMonomial(Fraction(-1, 2), -1)),))
alg = build_model_algebra(m, 3)
report = integrality_report(alg)
print("u = (3 pi^2, -pi^-1/2), n = 3")
for a in alg.points:
    print(" ", a, alg.value(0, a))
print("  min valuation:", report.min_valuation)
