"""A space on [0, 1] where c-Scott and d-Scott closed sets part ways.

Zero is special: every point is at distance 0 from it, and it is at
distance 1 from everything else.  The balls ``(2^-n, 2^-n)`` climb to
``(0, 0)`` even though their centres have no Yoneda limit.  The weight that
is 1 at 0 and 0 elsewhere is a Scott weight, yet any Scott closed set of
balls that holds the positive points also holds ``(0, 0)``.

    python demos/03_gn_space.py
"""

from __future__ import annotations

from fractions import Fraction

from approach_lab.algebraic import GNSeq, GNSpace, gn_case_study
from approach_lab.balls import BallChain

X = GNSpace()
half = Fraction(1, 2)
print("d(1/2, 1/4) =", X.d(half, Fraction(1, 4)))
print("d(1/2, 0)   =", X.d(half, 0), "   d(0, 1/2) =", X.d(0, half))

chain = BallChain("geometric", centers=GNSeq(0, half, half), base=0, scale=half, ratio=half)
print("\nfirst balls:", ", ".join(str(chain.at(n)) for n in range(4)), "...")
print("join:", X.chain_join(chain))
print("centres have a Yoneda limit:", X.yoneda_limit(chain.centers, X.sample_grid(8)) is not None)
print("join after shifting radii by 1/2:", X.chain_join(chain.shifted(half)))

rep = gn_case_study()
print()
for name in ("metric", "chain_join", "scott_weight", "separation"):
    print(f"{name:>13}: {'ok' if getattr(rep, name) else 'FAILED'}")
print(f"{'time':>13}: {rep.seconds:.2f}s")
