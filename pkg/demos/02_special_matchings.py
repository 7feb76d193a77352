"""Special matchings: the defining condition, witnesses, enumeration,
and the lifting property.

    python demos/02_special_matchings.py
"""

from zircons import (
    build_poset,
    enumerate_special_matchings,
    is_matching,
    is_special,
    matching_pairs,
    verify_lifting,
)

diamond = build_poset([0, 1, 2, 3], [(0, 1), (0, 2), (1, 3), (2, 3)])

# A matching pairs every element with a Hasse neighbor...
M = {"0": "1", "1": "0", "2": "3", "3": "2"}
print("is a matching:", is_matching(diamond, M))

# ...and it is special when for every cover p < q either M(p) = q or
# M(p) < M(q). Both perfect matchings of the diamond qualify.
for m in enumerate_special_matchings(diamond):
    print("special matching:", matching_pairs(m))

# On the N-shaped poset the only perfect matching fails the condition;
# the verdict carries the violating cover as a witness.
n_poset = build_poset(["a", "b", "c", "d"], [("a", "c"), ("a", "d"), ("b", "d")])
verdict = is_special(n_poset, {"a": "c", "c": "a", "b": "d", "d": "b"})
print("N-poset verdict:", verdict.ok, "witness cover:", verdict.witness)

# Special matchings satisfy the lifting property: for x < y with
# M(y) < y, M(x) stays below y, and below M(y) whenever M(x) < x.
# verify_lifting re-checks this exhaustively (it is a theorem, so a
# witness would mean a bug in this library, not new mathematics).
print("lifting check:", verify_lifting(diamond, M).ok)
