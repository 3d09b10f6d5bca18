"""Run a short battery, then break the library on purpose and watch it fail.

    python demos/04_battery.py [trials]
"""

from __future__ import annotations

import json
import sys

from approach_lab import _mutation
from approach_lab.harness import TrialConfig, replay, run_battery

trials = int(sys.argv[1]) if len(sys.argv) > 1 else 40
cfg = TrialConfig(seed=11, trials=trials)
print(run_battery(cfg).render())

# inf - inf = inf instead of 0; the Yoneda lemma check notices first.
with _mutation.mutate("inf_tminus"):
    rep = run_battery(TrialConfig(seed=7, trials=30, checks=("B2", "B11")))
print("\nwith inf - inf = inf:", "PASS" if rep.ok else "FAIL")
w = rep.witnesses[0]
print("witness:", json.dumps(w.to_obj())[:160], "...")
print("replays to the same locus:", replay(w) == w.locus)
