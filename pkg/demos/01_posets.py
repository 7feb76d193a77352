"""Tour of the poset core: building, querying, Mobius values, export.

Run from the repo root after `pip install -e .`:

    python demos/01_posets.py
"""

from zircons import (
    automorphisms,
    build_poset,
    interval,
    leq,
    mobius,
    poset_to_dot,
    principal_ideal,
    rank_function,
)

# A poset can be given as arbitrary order relations; redundant pairs are
# removed by transitive reduction. The pair (0, 3) below is implied.
diamond = build_poset(
    [0, 1, 2, 3],
    [(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)],
    mode="relations",
)
print("diamond covers:", diamond.covers)

print("0 <= 3:", leq(diamond, 0, 3))
print("1 <= 2:", leq(diamond, 1, 2), "(the two middle elements are incomparable)")

# Ideals and intervals are induced subposets with covers recomputed.
print("ideal below 1:", principal_ideal(diamond, 1).elements)
print("interval [0, 3]:", interval(diamond, 0, 3).elements)

# The diamond is graded; the kite below is not (paths of length 2 and 3
# between the same endpoints cannot carry a rank function).
print("diamond ranks:", rank_function(diamond))
kite = build_poset(
    ["x", "y", "z", "u", "v"],
    [("x", "y"), ("y", "z"), ("x", "u"), ("u", "v"), ("v", "z")],
)
print("kite ranks:", rank_function(kite))

# Mobius values come from the classical downward recursion.
print("mobius(0, 3) on the diamond:", mobius(diamond, 0, 3))

# Order automorphisms are found by signature-pruned backtracking.
print("diamond automorphisms:")
for phi in automorphisms(diamond):
    print("   ", phi.image)

print("\nDOT export of the diamond:")
print(poset_to_dot(diamond))
