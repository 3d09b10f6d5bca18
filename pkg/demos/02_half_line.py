"""Scott distance on the half-line from compact elements.

On ``([0, inf], d_R)`` every finite number is compact, and the sup over
compact ``b`` of ``inf_a d(b, a) (-) d(b, x)`` comes out as ``x (-) max A``.
The exact path evaluates the summand at its kinks.  The other path bisects
``[0, max]`` and returns an interval whose width is at most ``eps``.

    python demos/02_half_line.py
"""

from __future__ import annotations

from fractions import Fraction

from approach_lab.algebraic import (
    AlgebraicSpec, colimit_dL, colimit_dR, delta_P, plus, rep_dL, rep_dR, scott_distance_algebraic, wmin,
)
from approach_lab.costs import fmt
from approach_lab.spaces import CanonicalSpace

DR = AlgebraicSpec(CanonicalSpace("DR"), basis="grid(1/4)")

for x, A in [(5, [1, 3]), (2, [3]), (Fraction(22, 7), [Fraction(1, 3), Fraction(5, 2)])]:
    lo, hi = scott_distance_algebraic(DR, x, A)
    print(f"sigma({fmt(Fraction(x))}, {{{', '.join(fmt(Fraction(a)) for a in A)}}}) = {fmt(lo)}"
          f"   closed form {fmt(delta_P(x, A))}")

x, A = Fraction(22, 7), [Fraction(1, 3), Fraction(5, 2)]
for k in (4, 10, 20):
    lo, hi = scott_distance_algebraic(DR, x, A, eps=Fraction(1, 2**k), breakpoints=False)
    print(f"eps = 2^-{k:<2}  [{fmt(lo)}, {fmt(hi)}]  width {fmt(hi - lo)}")

# Colimits of weights built from representables stay exact.
print("\ncolim d_L(-, 5)       =", fmt(colimit_dL(rep_dL(5))))
print("colim d_L(-, 5) + 2   =", fmt(colimit_dL(plus(rep_dL(5), 2))))
print("colim min(d_R(-,5), d_R(-,2)) =", fmt(colimit_dR(wmin(rep_dR(5), rep_dR(2)))))
