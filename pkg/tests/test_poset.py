from fractions import Fraction
from itertools import permutations

import pytest

from artifact.errors import BadParams, CycleDetected, NonPositiveWeight, NotAnExtension, TooLarge, UnknownElement
from artifact.poset import (
    adjacent_transposition,
    build_poset,
    builtin_posets,
    canonical_chain_weights,
    has_belt,
    ideal_sizes,
    is_tree_poset_with_bottom,
    linear_extensions,
    poset_from_dict,
    weight_predicates,
    young_weights,
)

POSET126 = {"elements": ["a", "b", "c", "d", "z"], "relations": [["a", "b"], ["b", "c"], ["a", "z"], ["d", "c"]]}


def brute_extension_count(P) -> int:
    return sum(1 for w in permutations(P.elements) if P.is_extension(w))


def test_transitive_closure_and_covers():
    P = poset_from_dict(POSET126)
    assert P.lt("a", "c")
    assert not P.comparable("d", "z")
    assert set(P.cover_pairs) == {("a", "b"), ("b", "c"), ("a", "z"), ("d", "c")}
    assert P.height == 3
    assert set(P.minimal()) == {"a", "d"}


def test_cycles_and_unknown_elements_rejected():
    with pytest.raises(CycleDetected):
        build_poset("ab", [("a", "b"), ("b", "a")])
    with pytest.raises(UnknownElement):
        build_poset("ab", [("a", "q")])
    with pytest.raises(NonPositiveWeight):
        build_poset("ab", [], {"a": 1, "b": 0})


def test_linear_extension_counts():
    P = poset_from_dict(POSET126)
    exts = linear_extensions(P)
    assert len(exts) == brute_extension_count(P) == 11
    assert all(P.is_extension(L) for L in exts)
    assert len(set(exts)) == len(exts)
    # 2 x 3 rectangle: Catalan number 5
    assert len(linear_extensions(builtin_posets("grid", {"a": 2, "b": 3}))) == 5


def test_entringer_shape_has_euler_number_extensions():
    Q3 = builtin_posets("skew_shape", {"lambda": [3, 2, 1], "mu": [1], "dual": True})
    assert len(Q3) == 5
    assert len(linear_extensions(Q3)) == brute_extension_count(Q3) == 16


def test_square_shape_counts_standard_tableaux():
    P = builtin_posets("skew_shape", {"lambda": [3, 3, 3], "dual": True})
    assert len(linear_extensions(P)) == 42


def test_extension_cap():
    with pytest.raises(TooLarge):
        linear_extensions(builtin_posets("antichain", {"n": 5}), cap=4)


def test_builtin_families():
    assert builtin_posets("chain", {"n": 4}).height == 4
    assert len(linear_extensions(builtin_posets("antichain", {"n": 4}))) == 24
    perm = builtin_posets("permutation", {"sigma": "2143"})
    assert len(linear_extensions(perm)) == brute_extension_count(perm)
    T = builtin_posets("tree", {"root": "r", "edges": [["r", "a"], ["r", "b"], ["a", "c"]]})
    assert T.lt("r", "c") and not T.comparable("b", "c")
    with pytest.raises(BadParams):
        builtin_posets("skew_shape", {"lambda": [1, 2]})
    with pytest.raises(BadParams):
        builtin_posets("tree", {"root": "r", "edges": [["r", "a"], ["a", "r"]]})


def test_ideal_sizes_and_belts():
    P = poset_from_dict(POSET126)
    assert ideal_sizes(P, "z") == (1, 0)
    assert ideal_sizes(P, "b") == (1, 1)
    # inc(z) = {b, c, d}; b < c but d is incomparable to b
    assert not has_belt(P, "z")
    assert has_belt(P, "a")


def test_weight_predicates():
    P = poset_from_dict(POSET126)
    wp = weight_predicates(P, {"a": 2, "b": 2, "c": 1, "d": 1, "z": 1})
    assert wp.order_reversing
    # a is covered by b and z: 2 < 2 + 1
    assert not wp.cover_monotone
    assert wp.witnesses["cover_monotone"] == "a"
    wp = weight_predicates(P, {"a": 1, "b": 2, "c": 1, "d": 1, "z": 1})
    assert not wp.order_reversing
    assert wp.witnesses["order_reversing"] == ("a", "b")


def test_canonical_chain_weights_count_maximal_chains():
    P = builtin_posets("tree", {"root": "r", "edges": [["r", "a"], ["r", "b"], ["a", "c"], ["a", "d"], ["b", "e"]]})
    w = canonical_chain_weights(P)
    assert w == {"r": 3, "a": 2, "b": 1, "c": 1, "d": 1, "e": 1}
    assert weight_predicates(P, w).cover_monotone


def test_tree_with_bottom_detection():
    assert is_tree_poset_with_bottom(builtin_posets("antichain", {"n": 3}))
    assert is_tree_poset_with_bottom(build_poset("abc", [("a", "b"), ("a", "c")]))
    # leaves at different depths
    assert not is_tree_poset_with_bottom(build_poset("abc", [("a", "b")]))
    # two lower covers
    assert not is_tree_poset_with_bottom(build_poset("abc", [("a", "c"), ("b", "c")]))


def test_adjacent_transposition():
    P = poset_from_dict(POSET126)
    assert adjacent_transposition(P, "dazbc", 1) == tuple("adzbc")
    assert adjacent_transposition(P, "adzbc", 1) == tuple("dazbc")
    # a < z, so swapping them is a no-op
    assert adjacent_transposition(P, "azdbc", 1) == tuple("azdbc")
    with pytest.raises(NotAnExtension):
        adjacent_transposition(P, "zadbc", 1)


def test_young_weights_on_dual_shape():
    P = builtin_posets("skew_shape", {"lambda": [2, 1], "dual": True})
    w = young_weights(P)
    assert w == {"0,0": 1, "0,1": 1, "1,0": 1}
    Q = builtin_posets("skew_shape", {"lambda": [2, 2], "dual": True})
    assert young_weights(Q)["1,1"] == Fraction(2)
    # binomial weights grow toward the bottom of the dual shape
    assert weight_predicates(Q, young_weights(Q)).order_reversing
