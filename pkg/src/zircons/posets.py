"""Finite partially ordered sets stored as Hasse diagrams.

Elements are opaque string ids (numeric inputs are stringified so that
JSON round-trips are uniform). A poset keeps its cover relation together
with the cached reachability closure; instances are immutable after
construction and all operations are pure, so they are safe to share
across threads. Only finite posets are representable, hence
local-finiteness hypotheses hold vacuously throughout.
"""

from __future__ import annotations

import math
import threading
from typing import Iterable, Iterator, Mapping, Optional, Sequence

import numpy as np

__all__ = [
    "Poset",
    "PosetMap",
    "PosetError",
    "CycleError",
    "DuplicateElementError",
    "UnknownElementError",
    "RedundantCoverError",
    "NotComparableError",
    "NotAutomorphismError",
    "build_poset",
    "leq",
    "principal_ideal",
    "interval",
    "rank_function",
    "mobius",
    "automorphisms",
    "is_automorphism",
    "induced_subposet",
    "are_isomorphic",
    "is_bounded",
    "poset_to_dict",
    "poset_from_dict",
    "poset_to_dot",
    "map_to_dict",
    "map_from_dict",
]


class PosetError(ValueError):
    """Malformed poset input or invalid query."""


class CycleError(PosetError):
    """The supplied relations contain a directed cycle."""


class DuplicateElementError(PosetError):
    """An element id occurs more than once."""


class UnknownElementError(PosetError):
    """An id does not belong to the poset."""


class RedundantCoverError(PosetError):
    """A pair given as a cover is implied by other pairs."""


class NotComparableError(PosetError):
    """An operation required x <= y but the elements are incomparable."""


class NotAutomorphismError(PosetError):
    """A mapping fails to be an order automorphism."""


def _closure(adj: np.ndarray) -> np.ndarray:
    """Transitive closure of a boolean relation by repeated squaring."""
    reach = adj.astype(np.uint8)
    while True:
        step = (reach @ reach > 0).astype(np.uint8)
        grown = reach | step
        if np.array_equal(grown, reach):
            return reach.astype(bool)
        reach = grown


def _reduction(lt: np.ndarray) -> np.ndarray:
    """Covers of a transitively closed strict relation.

    A pair survives iff it has no 2-step witness x < z < y.
    """
    two_step = (lt.astype(np.uint8) @ lt.astype(np.uint8)) > 0
    return lt & ~two_step


class Poset:
    """Immutable finite poset: ids, cover pairs, and the strict closure.

    Construct through :func:`build_poset` (validating) or serialization
    helpers. The raw constructor trusts that ``covers`` is an acyclic,
    transitively reduced set.
    """

    __slots__ = (
        "elements",
        "covers",
        "_index",
        "_lt",
        "_cover_set",
        "_up",
        "_down",
        "_rank",
        "_topo",
        "_minimals",
        "_maximals",
        "_mobius_cols",
        "_mobius_lock",
    )

    def __init__(self, elements: Iterable, covers: Iterable, *, _lt: Optional[np.ndarray] = None):
        ids = tuple(str(e) for e in elements)
        index: dict[str, int] = {}
        for pos, e in enumerate(ids):
            if e in index:
                raise DuplicateElementError(f"duplicate element id {e!r}")
            index[e] = pos
        n = len(ids)
        pair_idx = []
        for a, b in covers:
            a, b = str(a), str(b)
            if a not in index or b not in index:
                raise UnknownElementError(f"cover ({a!r}, {b!r}) references an unknown id")
            pair_idx.append((index[a], index[b]))
        pair_idx = sorted(set(pair_idx))

        self.elements = ids
        self.covers = tuple((ids[i], ids[j]) for i, j in pair_idx)
        self._index = index
        self._cover_set = frozenset(pair_idx)
        if _lt is None:
            adj = np.zeros((n, n), dtype=bool)
            for i, j in pair_idx:
                adj[i, j] = True
            _lt = _closure(adj)
        self._lt = _lt
        self._lt.setflags(write=False)
        if self._lt.diagonal().any():
            bad = ids[int(np.argmax(self._lt.diagonal()))]
            raise CycleError(f"cycle through element {bad!r}")

        up: list[list[int]] = [[] for _ in range(n)]
        down: list[list[int]] = [[] for _ in range(n)]
        for i, j in pair_idx:
            up[i].append(j)
            down[j].append(i)
        self._up = tuple(tuple(sorted(v)) for v in up)
        self._down = tuple(tuple(sorted(v)) for v in down)
        self._minimals = tuple(ids[i] for i in range(n) if not down[i])
        self._maximals = tuple(ids[i] for i in range(n) if not up[i])
        # sorting by |strict downset| is a linear extension of a closed order
        downset_sizes = self._lt.sum(axis=0)
        self._topo = tuple(sorted(range(n), key=lambda i: (int(downset_sizes[i]), i)))
        self._rank = self._compute_rank()
        self._mobius_cols: dict[int, dict[int, int]] = {}
        self._mobius_lock = threading.Lock()

    def _compute_rank(self) -> Optional[tuple[int, ...]]:
        n = len(self.elements)
        rank = [None] * n
        for root in range(n):
            if rank[root] is not None:
                continue
            rank[root] = 0
            component = [root]
            queue = [root]
            while queue:
                i = queue.pop()
                for j in self._up[i]:
                    want = rank[i] + 1
                    if rank[j] is None:
                        rank[j] = want
                        component.append(j)
                        queue.append(j)
                    elif rank[j] != want:
                        return None
                for j in self._down[i]:
                    want = rank[i] - 1
                    if rank[j] is None:
                        rank[j] = want
                        component.append(j)
                        queue.append(j)
                    elif rank[j] != want:
                        return None
            base = min(rank[i] for i in component)
            for i in component:
                rank[i] -= base
        return tuple(rank)

    @property
    def n(self) -> int:
        return len(self.elements)

    @property
    def minimal_elements(self) -> tuple[str, ...]:
        return self._minimals

    @property
    def maximal_elements(self) -> tuple[str, ...]:
        return self._maximals

    def index(self, x) -> int:
        try:
            return self._index[str(x)]
        except KeyError:
            raise UnknownElementError(f"unknown element id {x!r}") from None

    def upper_covers(self, x) -> tuple[str, ...]:
        return tuple(self.elements[j] for j in self._up[self.index(x)])

    def lower_covers(self, x) -> tuple[str, ...]:
        return tuple(self.elements[j] for j in self._down[self.index(x)])

    def hasse_neighbors(self, x) -> tuple[str, ...]:
        i = self.index(x)
        return tuple(self.elements[j] for j in sorted(self._down[i] + self._up[i]))

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, x) -> bool:
        return str(x) in self._index

    def __iter__(self) -> Iterator[str]:
        return iter(self.elements)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return self.elements == other.elements and self._cover_set == other._cover_set

    def __hash__(self) -> int:
        return hash((self.elements, self._cover_set))

    def __repr__(self) -> str:
        return f"Poset(n={len(self.elements)}, covers={len(self.covers)})"


class PosetMap:
    """A validated order automorphism of a poset.

    ``source`` is the carrier poset and ``image`` the underlying dict.
    The constructor rejects anything that is not a bijective map
    preserving the order in both directions.
    """

    __slots__ = ("source", "image", "_perm")

    def __init__(self, source: Poset, image: Mapping, *, _trusted_perm: Optional[tuple[int, ...]] = None):
        self.source = source
        if _trusted_perm is not None:
            self._perm = _trusted_perm
            self.image = {source.elements[i]: source.elements[j] for i, j in enumerate(_trusted_perm)}
            return
        mapping = {str(k): str(v) for k, v in image.items()}
        if set(mapping) != set(source.elements):
            raise NotAutomorphismError("map is not total on the element set")
        perm = []
        for e in source.elements:
            v = mapping[e]
            if v not in source._index:
                raise UnknownElementError(f"image {v!r} is not an element")
            perm.append(source._index[v])
        if len(set(perm)) != len(perm):
            raise NotAutomorphismError("map is not a bijection")
        arr = np.asarray(perm)
        if not np.array_equal(source._lt[np.ix_(arr, arr)], source._lt):
            raise NotAutomorphismError("map does not preserve the order both ways")
        self._perm = tuple(perm)
        self.image = mapping

    def __call__(self, x) -> str:
        return self.source.elements[self._perm[self.source.index(x)]]

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self._perm))

    def inverse(self) -> "PosetMap":
        inv = [0] * len(self._perm)
        for i, j in enumerate(self._perm):
            inv[j] = i
        return PosetMap(self.source, {}, _trusted_perm=tuple(inv))

    def compose(self, other: "PosetMap") -> "PosetMap":
        """self after other (apply ``other`` first)."""
        if other.source is not self.source and other.source != self.source:
            raise NotAutomorphismError("composition requires maps on the same poset")
        perm = tuple(self._perm[j] for j in other._perm)
        return PosetMap(self.source, {}, _trusted_perm=perm)

    def power(self, k: int) -> "PosetMap":
        n = len(self._perm)
        if k < 0:
            return self.inverse().power(-k)
        result = tuple(range(n))
        base = self._perm
        while k:
            if k & 1:
                result = tuple(base[i] for i in result)
            base = tuple(base[i] for i in base)
            k >>= 1
        return PosetMap(self.source, {}, _trusted_perm=result)

    def order(self) -> int:
        """Multiplicative order, the lcm of the cycle lengths."""
        seen = [False] * len(self._perm)
        out = 1
        for start in range(len(self._perm)):
            if seen[start]:
                continue
            length = 0
            i = start
            while not seen[i]:
                seen[i] = True
                i = self._perm[i]
                length += 1
            out = math.lcm(out, length)
        return out

    def fixed_points(self) -> tuple[str, ...]:
        return tuple(self.source.elements[i] for i, j in enumerate(self._perm) if i == j)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PosetMap):
            return NotImplemented
        return self.source == other.source and self._perm == other._perm

    def __hash__(self) -> int:
        return hash((self.source.elements, self._perm))

    def __repr__(self) -> str:
        moved = sum(1 for i, j in enumerate(self._perm) if i != j)
        return f"PosetMap(n={len(self._perm)}, moved={moved})"


def build_poset(elements: Sequence, relations: Iterable, mode: str = "covers") -> Poset:
    """Build and validate a poset from covers or arbitrary order relations.

    In ``relations`` mode the input pairs are transitively closed and then
    reduced; in ``covers`` mode the pairs must already be exactly the
    transitive reduction of their closure, otherwise the redundant pairs
    are reported.
    """
    if mode not in ("covers", "relations"):
        raise PosetError(f"unknown mode {mode!r}")
    ids = [str(e) for e in elements]
    index: dict[str, int] = {}
    for e in ids:
        if e in index:
            raise DuplicateElementError(f"duplicate element id {e!r}")
        index[e] = len(index)
    n = len(ids)
    adj = np.zeros((n, n), dtype=bool)
    for a, b in relations:
        a, b = str(a), str(b)
        if a not in index or b not in index:
            raise UnknownElementError(f"pair ({a!r}, {b!r}) references an unknown id")
        if a == b:
            if mode == "covers":
                raise RedundantCoverError(f"element {a!r} cannot cover itself")
            continue  # reflexive pairs are vacuous as relations
        adj[index[a], index[b]] = True
    lt = _closure(adj)
    if lt.diagonal().any():
        bad = ids[int(np.argmax(lt.diagonal()))]
        raise CycleError(f"cycle through element {bad!r}")
    covers = _reduction(lt)
    if mode == "covers":
        redundant = adj & ~covers
        if redundant.any():
            i, j = map(int, np.argwhere(redundant)[0])
            raise RedundantCoverError(
                f"pair ({ids[i]!r}, {ids[j]!r}) is implied by other covers"
            )
    pairs = [(ids[i], ids[j]) for i, j in np.argwhere(covers)]
    return Poset(ids, pairs, _lt=lt)


def leq(P: Poset, x, y) -> bool:
    """x <= y in the reflexive order."""
    i, j = P.index(x), P.index(y)
    return i == j or bool(P._lt[i, j])


def induced_subposet(P: Poset, subset: Iterable) -> Poset:
    """Order restriction to a subset; covers are recomputed from scratch."""
    idxs = sorted({P.index(x) for x in subset})
    arr = np.asarray(idxs, dtype=int)
    sub_lt = P._lt[np.ix_(arr, arr)].copy()
    sub_ids = [P.elements[i] for i in idxs]
    cov = _reduction(sub_lt)
    pairs = [(sub_ids[i], sub_ids[j]) for i, j in np.argwhere(cov)]
    return Poset(sub_ids, pairs, _lt=sub_lt)


def principal_ideal(P: Poset, x) -> Poset:
    """Subposet on everything weakly below x."""
    i = P.index(x)
    members = [P.elements[j] for j in range(len(P)) if j == i or P._lt[j, i]]
    return induced_subposet(P, members)


def interval(P: Poset, x, y) -> Poset:
    """Subposet on {z : x <= z <= y}; requires x <= y."""
    if not leq(P, x, y):
        raise NotComparableError(f"{x!r} is not below {y!r}")
    i, j = P.index(x), P.index(y)
    members = [
        P.elements[k]
        for k in range(len(P))
        if (k == i or P._lt[i, k]) and (k == j or P._lt[k, j])
    ]
    return induced_subposet(P, members)


def rank_function(P: Poset) -> Optional[dict[str, int]]:
    """Rank function normalized to 0 per connected component, if one exists."""
    if P._rank is None:
        return None
    return {e: P._rank[i] for i, e in enumerate(P.elements)}


def mobius(P: Poset, x, y) -> int:
    """Mobius value computed by downward recursion, memoized per column."""
    ix, iy = P.index(x), P.index(y)
    if not (ix == iy or P._lt[ix, iy]):
        raise NotComparableError(f"{x!r} is not below {y!r}")
    with P._mobius_lock:
        col = P._mobius_cols.setdefault(ix, {ix: 1})
        if iy not in col:
            members = [
                z
                for z in P._topo
                if (z == ix or P._lt[ix, z]) and (z == iy or P._lt[z, iy])
            ]
            for pos, z in enumerate(members):
                if z in col:
                    continue
                col[z] = -sum(col[w] for w in members[:pos] if P._lt[w, z])
        return col[iy]


def is_bounded(P: Poset) -> bool:
    """True iff the poset has a unique minimum and a unique maximum."""
    return len(P.minimal_elements) == 1 and len(P.maximal_elements) == 1


def _signatures(P: Poset) -> list[tuple[int, int, int, int, int]]:
    n = len(P)
    rank = P._rank if P._rank is not None else tuple([-1] * n)
    down_sizes = P._lt.sum(axis=0)
    up_sizes = P._lt.sum(axis=1)
    return [
        (len(P._down[i]), len(P._up[i]), rank[i], int(down_sizes[i]), int(up_sizes[i]))
        for i in range(n)
    ]


def _iso_search(P: Poset, Q: Poset, find_all: bool) -> list[tuple[int, ...]]:
    """Cover-preserving bijections P -> Q by backtracking.

    Since both relations are closures of their covers, preserving covers
    in both directions is the same as being an order isomorphism.
    """
    n = len(P)
    if n != len(Q) or len(P.covers) != len(Q.covers):
        return []
    if (P._rank is None) != (Q._rank is None):
        return []
    sig_p = _signatures(P)
    sig_q = _signatures(Q)
    if sorted(sig_p) != sorted(sig_q):
        return []
    candidates: dict[tuple, list[int]] = {}
    for j, s in enumerate(sig_q):
        candidates.setdefault(s, []).append(j)
    # rarest signatures first, ties broken by id position
    order = sorted(range(n), key=lambda i: (len(candidates[sig_p[i]]), sig_p[i], i))
    cov_p = np.zeros((n, n), dtype=bool)
    for a, b in P._cover_set:
        cov_p[a, b] = True
    cov_q = np.zeros((n, n), dtype=bool)
    for a, b in Q._cover_set:
        cov_q[a, b] = True

    found: list[tuple[int, ...]] = []
    mapping = [-1] * n
    used = [False] * n

    def extend(pos: int) -> bool:
        if pos == n:
            found.append(tuple(mapping))
            return not find_all
        v = order[pos]
        for w in candidates[sig_p[v]]:
            if used[w]:
                continue
            ok = True
            for u in order[:pos]:
                mu = mapping[u]
                if cov_p[u, v] != cov_q[mu, w] or cov_p[v, u] != cov_q[w, mu]:
                    ok = False
                    break
            if not ok:
                continue
            mapping[v] = w
            used[w] = True
            if extend(pos + 1):
                return True
            used[w] = False
            mapping[v] = -1
        return False

    extend(0)
    return found


def automorphisms(P: Poset) -> list[PosetMap]:
    """All order automorphisms, deterministically ordered; contains identity."""
    perms = _iso_search(P, P, find_all=True)
    perms.sort()
    return [PosetMap(P, {}, _trusted_perm=perm) for perm in perms]


def is_automorphism(P: Poset, f: Mapping) -> bool:
    """True iff f is a bijective self-map preserving <= in both directions."""
    mapping = {str(k): str(v) for k, v in f.items()}
    for k, v in mapping.items():
        if k not in P._index or v not in P._index:
            raise UnknownElementError("map references unknown ids")
    if set(mapping) != set(P.elements):
        return False
    try:
        PosetMap(P, mapping)
    except NotAutomorphismError:
        return False
    return True


def are_isomorphic(P: Poset, Q: Poset) -> Optional[dict[str, str]]:
    """An order isomorphism P -> Q as a dict, or None."""
    perms = _iso_search(P, Q, find_all=False)
    if not perms:
        return None
    perm = perms[0]
    return {P.elements[i]: Q.elements[j] for i, j in enumerate(perm)}


# -- serialization ----------------------------------------------------------

def poset_to_dict(P: Poset) -> dict:
    return {
        "elements": list(P.elements),
        "covers": sorted([a, b] for a, b in P.covers),
    }


def poset_from_dict(obj: Mapping) -> Poset:
    if not isinstance(obj, Mapping) or "elements" not in obj or "covers" not in obj:
        raise PosetError('poset JSON must have "elements" and "covers"')
    return build_poset(obj["elements"], [tuple(p) for p in obj["covers"]], mode="covers")


def map_to_dict(f: PosetMap | Mapping) -> dict:
    image = f.image if isinstance(f, PosetMap) else {str(k): str(v) for k, v in f.items()}
    return {"map": dict(sorted(image.items()))}


def map_from_dict(obj: Mapping) -> dict[str, str]:
    if not isinstance(obj, Mapping) or "map" not in obj or not isinstance(obj["map"], Mapping):
        raise PosetError('map JSON must have a "map" object')
    return {str(k): str(v) for k, v in obj["map"].items()}


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def poset_to_dot(P: Poset, name: str = "poset") -> str:
    """Graphviz source: one node per element, one edge per cover, bottom-up."""
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for e in P.elements:
        lines.append(f"  {_dot_quote(e)};")
    for a, b in sorted(P.covers):
        lines.append(f"  {_dot_quote(a)} -> {_dot_quote(b)};")
    ranks = rank_function(P)
    if ranks is not None:
        by_level: dict[int, list[str]] = {}
        for e, r in ranks.items():
            by_level.setdefault(r, []).append(e)
        for r in sorted(by_level):
            row = " ".join(f"{_dot_quote(e)};" for e in sorted(by_level[r]))
            lines.append(f"  {{ rank=same; {row} }}")
    lines.append("}")
    return "\n".join(lines) + "\n"
