import itertools

import pytest
from hypothesis import given, settings, strategies as st

from zircons import (
    CycleError,
    DuplicateElementError,
    NotComparableError,
    RedundantCoverError,
    UnknownElementError,
    are_isomorphic,
    automorphisms,
    build_poset,
    induced_subposet,
    interval,
    is_automorphism,
    leq,
    map_from_dict,
    map_to_dict,
    mobius,
    mobius_oracle,
    poset_from_dict,
    poset_to_dict,
    poset_to_dot,
    principal_ideal,
    rank_function,
)
from zircons.posets import PosetMap


def brute_covers(elements, relations):
    """Independent transitive-reduction oracle over all pairs."""
    lt = {(a, b) for a, b in relations if a != b}
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(lt), list(lt)):
            if b == c and (a, d) not in lt:
                lt.add((a, d))
                changed = True
    return {
        (a, b)
        for a, b in lt
        if not any((a, z) in lt and (z, b) in lt for z in elements)
    }


class TestBuild:
    def test_two_element_chain(self):
        P = build_poset([0, 1], [(0, 1)])
        assert P.covers == (("0", "1"),)

    def test_relations_mode_reduces_diamond(self):
        els = ["0", "1", "2", "3"]
        rels = [("0", "1"), ("0", "2"), ("1", "3"), ("2", "3"), ("0", "3")]
        P = build_poset(els, rels, mode="relations")
        assert set(P.covers) == brute_covers(els, rels)
        assert ("0", "3") not in P.covers

    def test_cycle_detected(self):
        with pytest.raises(CycleError):
            build_poset([0, 1], [(0, 1), (1, 0)], mode="relations")

    def test_duplicate_id(self):
        with pytest.raises(DuplicateElementError):
            build_poset([0, 0], [])

    def test_unknown_id_in_pair(self):
        with pytest.raises(UnknownElementError):
            build_poset([0, 1], [(0, 9)])

    def test_covers_mode_rejects_redundant_pair(self):
        with pytest.raises(RedundantCoverError):
            build_poset(
                [0, 1, 2, 3],
                [(0, 1), (0, 2), (1, 3), (2, 3), (0, 3)],
                mode="covers",
            )

    def test_covers_mode_rejects_self_cover(self):
        with pytest.raises(RedundantCoverError):
            build_poset([0], [(0, 0)], mode="covers")


class TestOrderQueries:
    def test_leq_diamond(self, diamond):
        assert leq(diamond, 0, 3)
        assert not leq(diamond, 1, 2)
        for x in diamond.elements:
            assert leq(diamond, x, x)

    def test_leq_unknown(self, diamond):
        with pytest.raises(UnknownElementError):
            leq(diamond, "0", "zzz")

    def test_leq_axioms_on_corpus(self, corpus_to_5):
        for P in corpus_to_5:
            if len(P) > 4:
                continue
            for x, y, z in itertools.product(P.elements, repeat=3):
                if leq(P, x, y) and leq(P, y, x):
                    assert x == y
                if leq(P, x, y) and leq(P, y, z):
                    assert leq(P, x, z)

    def test_covers_have_no_two_step_witness(self, corpus_to_5):
        for P in corpus_to_5:
            for a, b in P.covers:
                assert not any(
                    leq(P, a, z) and leq(P, z, b) and z not in (a, b)
                    for z in P.elements
                )


class TestIdealsIntervals:
    def test_principal_ideal_top(self, diamond):
        assert principal_ideal(diamond, 3) == diamond

    def test_principal_ideal_chain(self, diamond):
        P = principal_ideal(diamond, 1)
        assert P.elements == ("0", "1") and P.covers == (("0", "1"),)

    def test_principal_ideal_hexagon(self, hexagon):
        P = principal_ideal(hexagon, "s1.s2")
        assert set(P.elements) == {"e", "s1", "s2", "s1.s2"}
        assert set(P.covers) == {
            ("e", "s1"),
            ("e", "s2"),
            ("s1", "s1.s2"),
            ("s2", "s1.s2"),
        }

    def test_interval_point(self, diamond):
        P = interval(diamond, 1, 1)
        assert P.elements == ("1",) and P.covers == ()

    def test_interval_whole(self, diamond):
        assert interval(diamond, 0, 3) == diamond

    def test_interval_hexagon_is_diamond(self, hexagon, diamond):
        P = interval(hexagon, "s1", "s1.s2.s1")
        assert set(P.elements) == {"s1", "s1.s2", "s2.s1", "s1.s2.s1"}
        assert are_isomorphic(P, diamond) is not None

    def test_interval_requires_comparable(self, diamond):
        with pytest.raises(NotComparableError):
            interval(diamond, 1, 2)


class TestRank:
    def test_diamond(self, diamond):
        assert rank_function(diamond) == {"0": 0, "1": 1, "2": 1, "3": 2}

    def test_n_poset(self, n_poset):
        assert rank_function(n_poset) == {"a": 0, "b": 0, "c": 1, "d": 1}

    def test_kite_is_unranked(self):
        kite = build_poset(
            ["x", "y", "z", "u", "v"],
            [("x", "y"), ("y", "z"), ("x", "u"), ("u", "v"), ("v", "z")],
        )
        assert rank_function(kite) is None

    def test_rank_invariant_on_corpus(self, corpus_to_5):
        for P in corpus_to_5:
            ranks = rank_function(P)
            if ranks is None:
                continue
            for a, b in P.covers:
                assert ranks[a] == ranks[b] - 1


class TestMobius:
    def test_reflexive_base(self, corpus_to_5):
        for P in corpus_to_5[:20]:
            for x in P.elements:
                assert mobius(P, x, x) == 1

    def test_diamond(self, diamond):
        assert mobius(diamond, 0, 3) == 1

    def test_hexagon(self, hexagon):
        assert mobius(hexagon, "e", "s1.s2.s1") == -1

    def test_incomparable_raises(self, diamond):
        with pytest.raises(NotComparableError):
            mobius(diamond, 1, 2)

    def test_recursion_identity_on_corpus(self, corpus_to_5):
        for P in corpus_to_5:
            for x in P.elements:
                for y in P.elements:
                    if not leq(P, x, y):
                        continue
                    total = sum(
                        mobius(P, x, z)
                        for z in P.elements
                        if leq(P, x, z) and leq(P, z, y)
                    )
                    assert total == (1 if x == y else 0)

    def test_against_zeta_inversion_oracle(self, corpus_to_5):
        for P in corpus_to_5:
            for x in P.elements:
                for y in P.elements:
                    if leq(P, x, y):
                        assert mobius(P, x, y) == mobius_oracle(P, x, y)


def brute_automorphisms(P):
    """Exhaustive bijection check, independent of the search code."""
    out = []
    n = len(P.elements)
    for perm in itertools.permutations(range(n)):
        ok = True
        for i in range(n):
            for j in range(n):
                a = leq(P, P.elements[i], P.elements[j])
                b = leq(P, P.elements[perm[i]], P.elements[perm[j]])
                if a != b:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append({P.elements[i]: P.elements[perm[i]] for i in range(n)})
    return out


class TestAutomorphisms:
    def test_chain_is_rigid(self):
        P = build_poset([0, 1], [(0, 1)])
        maps = automorphisms(P)
        assert len(maps) == 1 and maps[0].is_identity()

    def test_diamond(self, diamond):
        maps = automorphisms(diamond)
        images = [m.image for m in maps]
        assert images == brute_automorphisms(diamond)
        assert {"0": "0", "1": "2", "2": "1", "3": "3"} in images
        assert len(maps) == 2

    def test_hexagon_group(self, hexagon):
        # the two middle ranks are joined by all four covers, so both rank
        # levels can be permuted independently: a Klein four-group
        maps = automorphisms(hexagon)
        assert len(brute_automorphisms(hexagon)) == 4
        assert len(maps) == 4
        flip = {
            "e": "e",
            "s1": "s2",
            "s2": "s1",
            "s1.s2": "s2.s1",
            "s2.s1": "s1.s2",
            "s1.s2.s1": "s1.s2.s1",
        }
        assert flip in [m.image for m in maps]

    def test_all_pass_is_automorphism_and_close_under_composition(self, corpus_to_5):
        for P in corpus_to_5:
            if len(P) > 5:
                continue
            maps = automorphisms(P)
            assert any(m.is_identity() for m in maps)
            for m in maps:
                assert is_automorphism(P, m.image)
            perms = {m._perm for m in maps}
            for f in maps:
                for g in maps:
                    assert f.compose(g)._perm in perms

    def test_is_automorphism_rejects_order_reversal(self, diamond):
        assert not is_automorphism(
            diamond, {"0": "3", "3": "0", "1": "1", "2": "2"}
        )

    def test_is_automorphism_unknown_ids(self, diamond):
        with pytest.raises(UnknownElementError):
            is_automorphism(diamond, {"0": "9", "1": "1", "2": "2", "3": "3"})


class TestInducedSubposet:
    def test_full_subset(self, hexagon):
        assert induced_subposet(hexagon, hexagon.elements) == hexagon

    def test_new_cover_appears(self, hexagon):
        P = induced_subposet(hexagon, ["e", "s1.s2.s1"])
        assert P.covers == (("e", "s1.s2.s1"),)

    def test_antichain(self, hexagon):
        P = induced_subposet(hexagon, ["s1", "s2"])
        assert P.covers == ()


class TestIsomorphism:
    def test_self(self, diamond):
        m = are_isomorphic(diamond, diamond)
        assert m is not None and is_automorphism(diamond, m)

    def test_diamond_vs_n_poset(self, diamond, n_poset):
        assert are_isomorphic(diamond, n_poset) is None

    def test_finds_map_across_relabeling(self, hexagon):
        relabeled = build_poset(
            [f"x{i}" for i in range(6)],
            [
                (f"x{hexagon.index(a)}", f"x{hexagon.index(b)}")
                for a, b in hexagon.covers
            ],
            mode="covers",
        )
        m = are_isomorphic(hexagon, relabeled)
        assert m is not None
        for a, b in hexagon.covers:
            assert leq(relabeled, m[a], m[b])


class TestSerialization:
    def test_poset_round_trip(self, hexagon):
        assert poset_from_dict(poset_to_dict(hexagon)) == hexagon

    def test_map_round_trip(self, diamond):
        f = PosetMap(diamond, {"0": "0", "1": "2", "2": "1", "3": "3"})
        assert map_from_dict(map_to_dict(f)) == f.image

    def test_dot_output(self, diamond):
        dot = poset_to_dot(diamond)
        assert '"0" -> "1";' in dot and "rankdir=BT" in dot
        assert "rank=same" in dot  # graded, so layers are aligned


@st.composite
def relation_lists(draw):
    n = draw(st.integers(min_value=1, max_value=6))
    pairs = draw(
        st.lists(
            st.tuples(
                st.integers(min_value=0, max_value=n - 1),
                st.integers(min_value=0, max_value=n - 1),
            ),
            max_size=12,
        )
    )
    forward = [(a, b) if a < b else (b, a) for a, b in pairs if a != b]
    return n, forward


@given(relation_lists())
@settings(max_examples=60, deadline=None)
def test_build_poset_properties(data):
    n, rels = data
    P = build_poset(list(range(n)), rels, mode="relations")
    for a, b in rels:
        assert leq(P, a, b)
    for a, b in P.covers:
        assert not any(
            leq(P, a, z) and leq(P, z, b) and z not in (a, b) for z in P.elements
        )
    # rebuilding from the emitted covers is the identity
    assert build_poset(P.elements, P.covers, mode="covers") == P
