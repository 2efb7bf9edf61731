"""Rigidity versus layer drawings on every small connected graph.

For each connected graph on at most five points, lengths are read off
random placements on a small integer range (so coincidences happen
often) and the brute-force rigidity test is compared with the search for
a layer drawing.  They should disagree on nothing.
"""

import time

from ppg.atlas import run_atlas

start = time.perf_counter()
report = run_atlas(5, samples=50, seed=0)
print(report.to_json() | {"cases": len(report.inconsistent)},
      f"{time.perf_counter() - start:.1f}s")
