from fractions import Fraction
from itertools import permutations

import pytest

from artifact import inequalities as I
from artifact.counting import product_weight
from artifact.errors import CMViolated, NoBelt, NotAdmissible, NotInterval, NotOrderReversing, SubmodViolated, ZeroMiddleTerm
from artifact.poset import build_poset, builtin_posets, poset_from_dict
from artifact.structures import greedoid_from_dict, matroid_from_dict, morphism_from_dict, polymatroid_from_dict

K4E = {"type": "graphic", "edges": {"a": [1, 2], "b": [2, 3], "c": [1, 4], "d": [3, 4], "e": [1, 3]}}
POSET126 = {"elements": ["a", "b", "c", "d", "z"], "relations": [["a", "b"], ["b", "c"], ["a", "z"], ["d", "c"]]}
TREE6 = {"elements": ["r", "a", "b", "c", "d", "e"], "relations": [["r", "a"], ["r", "b"], ["a", "c"], ["a", "d"], ["b", "e"]]}
WIDTH2 = {"elements": ["a", "b", "c", "d", "e"], "relations": [["a", "b"], ["b", "c"], ["a", "d"], ["d", "e"], ["b", "e"]]}


def sides(rep):
    return rep.lhs, rep.rhs


def test_uniform_matroid_attains_strong_and_refined_bounds():
    s = I.matroid_suite(matroid_from_dict({"type": "uniform", "n": 4, "r": 2}), None, 1)
    assert sides(s["strong"]) == (16, 16)
    assert sides(s["refined"]) == (16, 16)
    assert s.ok and all(s.consistency.values())


def test_k4_minus_edge_chain_of_bounds():
    s = I.matroid_suite(matroid_from_dict(K4E), None, 2)
    assert [s[n].rhs for n in ("plain", "one_sided", "strong", "refined")] == [40, 60, 80, 90]
    assert s["refined"].lhs == 100
    assert not s["strong"].conditions["girth"].passed
    assert s.consistency["monotone"]


def test_weighted_matroid_equality_conditions():
    # ME2 fails once one weight differs, so the refined bound is strict
    w = {"a": 1, "b": 1, "c": 1, "d": 1, "e": 2}
    s = I.matroid_suite(matroid_from_dict(K4E), w, 1)
    assert not s["refined"].equality
    assert not s["refined"].conditions["ME2"].passed
    assert all(s.consistency.values())


def test_graphical_bounds():
    cycle = I.graphical_special({"edges": [[1, 2], [2, 3], [3, 4], [4, 5], [5, 1]]})
    assert sides(cycle["cycle_bound"]) == (100, 100)
    assert sides(cycle["clique_bound_2"]) == (100, 90)
    k4 = I.graphical_special({"edges": [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]]})
    assert sides(k4["cycle_bound"]) == (225, 216)
    assert cycle.ok and k4.ok


def test_field_bound_is_tight_on_the_fano_plane():
    fano = matroid_from_dict(
        {"type": "vector_gf", "q": 2, "vectors": [[0, 0, 1], [0, 1, 0], [0, 1, 1], [1, 0, 0], [1, 0, 1], [1, 1, 0], [1, 1, 1]]}
    )
    assert sides(I.field_bound(fano, 2, 1)) == (49, 49)
    assert sides(I.field_bound(fano, 2, 2)) == (441, 441)


def test_polymatroid_suites():
    D = polymatroid_from_dict({"type": "ball", "n": 2, "r": 3})
    for t in (1, Fraction(1, 2), 0):
        for k in (1, 2):
            s = I.polymatroid_suite(D, None, t, k)
            assert s.ok and all(s.consistency.values())
    degenerate = polymatroid_from_dict({"type": "box", "caps": [0, 2, 2]})
    s = I.polymatroid_suite(degenerate, None, 1, 1)
    assert s["refined"].holds and s.consistency == {}


def test_tree_antimatroid_equalities():
    P = poset_from_dict(TREE6)
    assert sides(I.antimatroid_suite(P, "canonical", 1)["plain"]) == (9, 9)
    assert sides(I.antimatroid_suite(P, "canonical", 2)["plain"]) == (81, 81)
    s3 = I.antimatroid_suite(P, "canonical", 3)
    assert sides(s3["plain"]) == (729, 594)
    assert s3.data["total_equality"] and s3.data["tree_with_chain_weights"]


def test_total_equality_does_not_force_chain_weights():
    # leaf weights are free: equality below the height holds without proportionality
    P = build_poset("abc", [("a", "b"), ("a", "c")])
    s = I.antimatroid_suite(P, {"a": 3, "b": 2, "c": 1}, 1)
    assert s.data["total_equality"]
    assert s.data["tree_with_tight_weights"]
    assert not s.data["tree_with_chain_weights"]
    assert s.consistency["total"]


def test_antimatroid_requires_cover_monotone_weights():
    with pytest.raises(CMViolated):
        I.antimatroid_suite(poset_from_dict(TREE6), {"r": 1, "a": 2, "b": 1, "c": 1, "d": 1, "e": 1}, 1)


def test_square_shape_breaks_log_concavity():
    P = builtin_posets("skew_shape", {"lambda": [4, 4, 4, 4], "dual": True})
    with pytest.raises(CMViolated):
        I.antimatroid_suite(P, "uniform", 3)


def test_greedoid_suites_on_lifts():
    free4 = product_weight(greedoid_from_dict({"type": "from_matroid", "matroid": {"type": "free", "n": 4}}))
    s = I.greedoid_suite(free4, 2)
    assert sides(s["plain"]) == (144, 96)
    G = greedoid_from_dict({"type": "from_matroid", "matroid": K4E})
    assert sides(I.greedoid_suite(product_weight(G), 2)["plain"]) == (400, 240)
    refined = I.greedoid_suite(product_weight(G, None, [1, 1, 1, Fraction(3, 2)]), 2)
    assert sides(refined["plain"]) == (400, 360)
    assert refined.consistency["triple"]


def test_greedoid_suite_guards():
    square = builtin_posets("skew_shape", {"lambda": [4, 4, 4, 4], "dual": True})
    G = greedoid_from_dict(
        {"type": "poset_antimatroid", "poset": {"elements": list(square.elements), "relations": list(square.cover_pairs)}, "max_length": 5}
    )
    with pytest.raises(NotAdmissible):
        I.greedoid_suite(product_weight(G), 3)
    # feasible sets {}, b, c, ab, ac, abc: a greedoid without the interval property
    words = [[], ["b"], ["c"], ["b", "a"], ["c", "a"], ["b", "a", "c"], ["c", "a", "b"]]
    G = greedoid_from_dict({"type": "explicit", "words": words})
    assert G.flags.is_greedoid and not G.flags.is_interval
    with pytest.raises(NotInterval):
        I.greedoid_suite(product_weight(G), 1)


def test_morphism_suite():
    phi = morphism_from_dict(
        {"source": {"type": "free", "n": 4}, "target": {"type": "uniform", "n": 4, "r": 2}, "phi": {str(i): str(i) for i in range(1, 5)}}
    )
    s3 = I.morphism_suite(phi, None, 3)
    assert sides(s3["strong"]) == (16, 16) and sides(s3["refined"]) == (16, 16)
    s2 = I.morphism_suite(phi, None, 2)
    assert s2["strong"].lhs == 36 and not s2["strong"].conditions["full_image"].passed
    # B(1) = 0: reported as not applicable unless positivity is demanded
    assert I.morphism_suite(phi, None, 1)["strong"].notes
    with pytest.raises(ZeroMiddleTerm):
        I.morphism_suite(phi, None, 1, require_positive=True)


def test_stanley_suite_on_small_poset():
    P = poset_from_dict(POSET126)
    assert sides(I.stanley_suite(P, None, "z", 3)["plain"]) == (9, 6)
    eq = I.stanley_suite(P, None, "z", 4)
    assert sides(eq["plain"]) == (9, 9)
    assert all(eq.data["items"].values())
    with pytest.raises(NotOrderReversing):
        I.stanley_suite(P, {"a": 1, "b": 2, "c": 1, "d": 1, "z": 1}, "z", 3)


def test_stanley_matches_brute_force_with_weights():
    P = poset_from_dict(POSET126)
    w = {"a": 3, "b": 2, "c": 1, "d": 2, "z": 1}
    N = [Fraction(0)] * 7
    for L in permutations(P.elements):
        if P.is_extension(L):
            i = L.index("z")
            v = Fraction(1)
            for x in L[:i]:
                v *= w[x]
            N[i + 1] += v
    for k in (2, 3, 4):
        rep = I.stanley_suite(P, w, "z", k)["plain"]
        assert (rep.lhs, rep.rhs) == (N[k] ** 2, N[k - 1] * N[k + 1])


def test_entringer_shape():
    Q3 = builtin_posets("skew_shape", {"lambda": [3, 2, 1], "mu": [1], "dual": True})
    assert sides(I.stanley_suite(Q3, None, "0,1", 4)["plain"]) == (36, 16)
    assert sides(I.stanley_suite(Q3, None, "1,1", 2)["plain"]) == (36, 24)


def test_antichain_equality_with_vacuous_fg():
    A = builtin_posets("antichain", {"n": 4})
    s = I.stanley_suite(A, None, "1", 2)
    assert sides(s["plain"]) == (36, 36)
    assert s.data["fg_vacuous"]
    assert s.consistency["items"]


def test_combinatorial_equivalence():
    P = poset_from_dict(POSET126)
    assert I.combinatorial_equivalence(P, "z", 4) == (True, True)
    assert I.combinatorial_equivalence(P, "z", 3) == (False, False)
    # z = a sits first in every extension
    assert I.combinatorial_equivalence(P, "a", 3) is None


def test_belt_suites():
    P = poset_from_dict(WIDTH2)
    w = {"a": 5, "b": 4, "c": 1, "d": 3, "e": 2}
    for z in P.elements:
        if not I.has_belt(P, z):
            continue
        for k in range(2, len(P)):
            assert I.stanley_belt_suite(P, z, k, weights=w).ok
    with pytest.raises(NoBelt):
        I.stanley_belt_suite(poset_from_dict(POSET126), "z", 3, weights="uniform")


def test_tropical_weight_of_empty_ideal_is_minimum():
    P = poset_from_dict(WIDTH2)
    iw = I.tropical_ideal_weight(P, {"a": 5, "b": 4, "c": 1, "d": 3, "e": 2})
    assert iw(frozenset()) == 1
    assert iw(frozenset("ab")) == 5


def test_submodular_mode_rejects_bad_ideal_weights():
    P = build_poset("abz", [("a", "b")])
    ideals = P.lower_ideals()
    good = {S: Fraction(1) for S in ideals}
    assert I.stanley_belt_suite(P, "z", 2, mode="submodular", ideal_weight=good).ok
    bad = dict(good)
    bad[frozenset("ab")] = Fraction(5)
    with pytest.raises(SubmodViolated):
        I.stanley_belt_suite(P, "z", 2, mode="submodular", ideal_weight=bad)
