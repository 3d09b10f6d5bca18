"""A three-point space, its two point-set distances and its four topologies.

    python demos/01_finite_space.py
"""

from __future__ import annotations

from pathlib import Path

from approach_lab.approach import alexandroff, scott_distance_finite
from approach_lab.balls import topologies
from approach_lab.costs import fmt
from approach_lab.io import load_space, load_weight
from approach_lab.weights import colimits, is_cauchy, is_flat, yoneda_embed

DATA = Path(__file__).parent / "data"

W = load_space(DATA / "W.json")
print("points:", ", ".join(W.points))
for x in W.points:
    print("  d(%s, -) =" % x, " ".join(fmt(W.d(x, y)) for y in W.points))

# Nothing here is symmetric, so Alexandroff and Scott distances could in
# principle disagree.  On a finite space they never do.
gamma = alexandroff(W)
sigma = scott_distance_finite(W)
print("\nGamma(a, {b,c}) =", fmt(gamma.delta("a", ["b", "c"])))
print("sigma(a, {b,c}) =", fmt(sigma.delta("a", ["b", "c"])))
print("distance to the empty set:", fmt(gamma.delta("a", [])))
print("tables agree:", gamma == sigma)

# Weights: the file's weight happens to be d(-, b).
phi = load_weight(DATA / "phi.json")
print("\nphi =", phi)
print("phi == y(b):", phi == yoneda_embed(W, "b"))
print("flat:", is_flat(phi), " Cauchy:", is_cauchy(phi), " colimits:", sorted(colimits(phi)))

# Every off-diagonal distance is positive, so each topology is discrete.
for name, T in topologies(W).items():
    print(f"{name:>8}: {len(T.closed)} closed sets")
