from fractions import Fraction
from itertools import permutations

import pytest

from artifact import oracle
from artifact.counting import (
    antimatroid_series,
    check_k_admissible,
    language_series,
    local_series,
    matroid_series,
    morphism_series,
    pi_exponent,
    polymatroid_series,
    product_weight,
    refined_scale,
    stanley_series,
)
from artifact.errors import BadParams, WeightDomainMismatch
from artifact.poset import builtin_posets, poset_from_dict
from artifact.structures import greedoid_from_dict, matroid_from_dict, morphism_from_dict, polymatroid_from_dict

K4E = {"type": "graphic", "edges": {"a": [1, 2], "b": [2, 3], "c": [1, 4], "d": [3, 4], "e": [1, 3]}}
POSET126 = {"elements": ["a", "b", "c", "d", "z"], "relations": [["a", "b"], ["b", "c"], ["a", "z"], ["d", "c"]]}
F = Fraction


def test_pi_exponent():
    assert pi_exponent([0, 1, 1]) == 0
    assert pi_exponent([2, 3]) == 1 + 3


def test_matroid_series_against_oracle():
    weights = {"a": 1, "b": 2, "c": 1, "d": 1, "e": "3/2"}
    inst = oracle.Instance("k4e", "matroid", K4E, weights=weights)
    expected = oracle.brute_counts(inst)["series"]
    assert list(matroid_series(matroid_from_dict(K4E), weights).values) == expected
    assert list(matroid_series(matroid_from_dict(K4E)).values) == [1, 5, 10, 8]


def test_weight_domain_is_checked():
    M = matroid_from_dict(K4E)
    with pytest.raises(WeightDomainMismatch):
        matroid_series(M, {"a": 1})
    with pytest.raises(WeightDomainMismatch):
        matroid_series(M, {"a": 1, "b": 1, "c": 1, "d": 1, "e": 0})


def test_polymatroid_series_frozen():
    D = polymatroid_from_dict({"type": "ball", "n": 2, "r": 3})
    assert polymatroid_series(D, t=1).values == (1, 2, 2, F(4, 3))
    # t^pi damps the repeated coordinates
    assert polymatroid_series(D, t=F(1, 2)).values == (1, 2, F(3, 2), F(13, 24))
    with pytest.raises(BadParams):
        polymatroid_series(D, t=2)


def test_morphism_series():
    phi = morphism_from_dict(
        {"source": {"type": "free", "n": 4}, "target": {"type": "uniform", "n": 4, "r": 2}, "phi": {str(i): str(i) for i in range(1, 5)}}
    )
    assert morphism_series(phi).values == (0, 0, 6, 4, 1)


def test_antimatroid_series_counts_feasible_words():
    P = poset_from_dict(POSET126)
    w = {"a": 3, "b": 2, "c": 1, "d": 2, "z": 1}
    L = antimatroid_series(P, w)
    for k in range(len(P) + 1):
        brute = sum(
            _prod(w[x] for x in W)
            for W in permutations(P.elements, k)
            if all(P.is_lower_ideal(W[:j]) for j in range(1, k + 1))
        )
        assert L[k] == brute
    assert antimatroid_series(poset_from_dict(POSET126)).values == (1, 2, 4, 8, 11, 11)


def _prod(values):
    out = F(1)
    for v in values:
        out *= v
    return out


def test_stanley_series_by_position_of_z():
    P = poset_from_dict(POSET126)
    N = stanley_series(P, "z")
    assert N.start == 1
    assert N.values == (0, 2, 3, 3, 3)
    w = {"a": 2, "b": 1, "c": 1, "d": 3, "z": 1}
    Nw = stanley_series(P, "z", w)
    brute = [F(0)] * 5
    for L in permutations(P.elements):
        if P.is_extension(L):
            i = L.index("z")
            brute[i] += _prod(w[x] for x in L[:i])
    assert list(Nw.values) == brute


def test_entringer_row_sums_to_euler_number():
    Q3 = builtin_posets("skew_shape", {"lambda": [3, 2, 1], "mu": [1], "dual": True})
    for z in Q3.elements:
        assert sum(stanley_series(Q3, z).values) == 16


def test_language_series_of_lifts():
    free4 = product_weight(greedoid_from_dict({"type": "from_matroid", "matroid": {"type": "free", "n": 4}}))
    assert language_series(free4).values == (1, 4, 12, 24, 24)
    scaled = product_weight(free4.language, None, [1, 1, 1, 3])
    assert language_series(scaled).values == (1, 4, 12, 72, 24)
    ball = greedoid_from_dict({"type": "from_polymatroid", "polymatroid": {"type": "ball", "n": 2, "r": 3}})
    # the lift counts words, so J_t is multiplied by l!
    assert language_series(product_weight(ball, t=1)).values == (1, 2, 4, 8)


def test_local_series():
    W = product_weight(greedoid_from_dict({"type": "from_matroid", "matroid": K4E}))
    assert local_series(W, (), 1) == 5
    assert local_series(W, ("a",), 1) == 4
    assert local_series(W, ("a", "b"), 1) == 2


def test_refined_scale():
    assert refined_scale(4, 1, 3) == [1, 1, F(3, 2), 1, 1]
    assert refined_scale(3, 1, 2, t=F(1, 2)) == [1, 1, F(4, 3), 1]
    with pytest.raises(BadParams):
        refined_scale(3, 1, 1, t=0)


def test_admissibility_of_lifts_and_antimatroids():
    free4 = product_weight(greedoid_from_dict({"type": "from_matroid", "matroid": {"type": "free", "n": 4}}))
    assert all(check_k_admissible(free4, k).ok for k in range(1, 4))
    square = builtin_posets("skew_shape", {"lambda": [4, 4, 4, 4], "dual": True})
    G = greedoid_from_dict(
        {"type": "poset_antimatroid", "poset": {"elements": list(square.elements), "relations": list(square.cover_pairs)}, "max_length": 5}
    )
    assert not check_k_admissible(product_weight(G), 3).ok
