"""Torsion of a Tate curve q = eps * pi^(n r + s).

The level-n monodromy of q is s, and the Kummer class of its n-torsion
splits into the class of the unit eps plus s copies of the class of pi.
"""

from fractions import Fraction

from motivic import compute_monodromy, eta_class, extends_over_R, kato_pair, reconstruct, tate_motive

n = 5
for eps in (2, Fraction(3, 7), -5):
    for s in range(n):
        q = tate_motive(eps, n, 1, s)
        pair = kato_pair(q, n)
        assert reconstruct(pair) == eta_class(q, n)
        print(
            f"eps={str(eps):>4} s={s}  mu={compute_monodromy(q).mu[0, 0]:>2}"
            f"  classical={pair.classical.cls[0][0].coeff!s:>4}  N={pair.N[0, 0]}"
            f"  extends over R: {extends_over_R(q, n)}"
        )
