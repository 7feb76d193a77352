"""The verification corpus: exhaustive small posets, oracles, sweeps.

    python demos/05_corpus_sweep.py
"""

import json

from zircons import (
    enumerate_matchings,
    enumerate_posets,
    enumerate_special_matchings,
    is_special,
    mobius,
    mobius_oracle,
    run_sweep,
)

# Every poset on up to 6 elements, one representative per isomorphism
# class; the counts reproduce the known sequence 1, 2, 5, 16, 63, 318.
for n in range(1, 6):
    print(f"isomorphism classes on {n} elements:", sum(1 for _ in enumerate_posets(n)))

# Two independent routes to the same answers, compared pointwise:
# pruned enumeration vs filtered brute force, and the Mobius recursion
# vs exact zeta-matrix inversion.
P = next(p for p in enumerate_posets(4) if len(p.covers) == 4 and len(p.maximal_elements) == 1)
print("\nsample poset covers:", P.covers)
clever = enumerate_special_matchings(P)
brute = [m for m in enumerate_matchings(P) if is_special(P, m).ok]
print("special matchings, two routes:", len(clever), "==", len(brute))
x, y = P.minimal_elements[0], P.maximal_elements[0]
print("mobius two routes:", mobius(P, x, y), "==", mobius_oracle(P, x, y))

# A sweep bundles every check over a whole corpus and reports verdicts,
# witnesses, and summary counts. Zero violations is the expected state.
report = run_sweep({"mode": "exhaustive", "max_n": 5}, jobs=1)
print("\nsweep summary:")
print(json.dumps(report.summary, indent=2))
