import json
from fractions import Fraction
from pathlib import Path

import pytest

from artifact import atlas
from artifact.counting import product_weight
from artifact.errors import NoSuchEdge, NotAGlobalPair, NotASink, RankOutOfRange
from artifact.linalg import check_OPE
from artifact.oracle import brute_stanley_matrix
from artifact.poset import build_poset, linear_extensions, poset_from_dict
from artifact.rational import Q
from artifact.structures import greedoid_from_dict

GOLDEN = Path(__file__).parent / "fixtures" / "golden"
K4E = {"type": "graphic", "edges": {"a": [1, 2], "b": [2, 3], "c": [1, 4], "d": [3, 4], "e": [1, 3]}}
POSET126 = {"elements": ["a", "b", "c", "d", "z"], "relations": [["a", "b"], ["b", "c"], ["a", "z"], ["d", "c"]]}
REFINED = [1, 1, 1, Fraction(3, 2)]


def golden(name):
    return json.loads((GOLDEN / name).read_text())


def rows(data):
    return [[Q(x) for x in r] for r in data]


def lifted(matroid, scale=REFINED):
    return product_weight(greedoid_from_dict({"type": "from_matroid", "matroid": matroid}), None, scale)


def global_pair(labels, kind):
    if kind == "greedoid":
        return {x: int(x != atlas.STAR) for x in labels}, {x: int(x == atlas.STAR) for x in labels}
    return {x: int(x.endswith("_down")) for x in labels}, {x: int(x.endswith("_up")) for x in labels}


@pytest.mark.parametrize("fixture,matroid", [("greedoid_free4.json", {"type": "free", "n": 4}), ("greedoid_k4e.json", K4E)])
def test_greedoid_root_matrices_match_printed_values(fixture, matroid):
    g = golden(fixture)
    W = lifted(matroid)
    for m in (1, 2):
        A = atlas.greedoid_matrix(W, (), m)
        assert list(A.labels) == g["labels"]
        assert A.rows() == rows(g[f"A{m}"])


def test_greedoid_root_brackets():
    for matroid, expected in (({"type": "free", "n": 4}, (36, 12, 4)), (K4E, (72, 20, 5))):
        A = atlas.greedoid_matrix(lifted(matroid), (), 2)
        f, g = global_pair(A.labels, "greedoid")
        assert atlas._brackets(A, f, g) == expected


def test_stanley_matrices_match_corrected_values():
    g = golden("stanley126_corrected.json")
    P = poset_from_dict(POSET126)
    for k in (3, 4):
        C = atlas.stanley_matrix(P, "z", k)
        assert list(C.labels) == g["labels"]
        assert C.rows() == rows(g[f"C{k}"])


def test_printed_stanley_matrices_differ_only_in_recorded_cells():
    printed, corrected = golden("stanley126_printed.json"), golden("stanley126_corrected.json")
    labels = printed["labels"]
    for key in ("C3", "C4"):
        diff = {
            (labels[i], labels[j])
            for i, row in enumerate(printed[key])
            for j, x in enumerate(row)
            if Q(x) != Q(corrected[key][i][j])
        }
        recorded = {(a, b) for a, b, _ in corrected["corrections"][key]}
        assert diff <= recorded | {(b, a) for a, b in recorded}
        assert diff


def test_stanley_matrices_match_literal_definition():
    P = poset_from_dict(POSET126)
    less = {(x, y) for x in P.elements for y in P.elements if P.lt(x, y)}
    w = {"a": 3, "b": 2, "c": 1, "d": 2, "z": 1}
    exts = linear_extensions(P)
    for k in (2, 3, 4):
        C = atlas.stanley_matrix(P, "z", k, weights=w)
        assert C == brute_stanley_matrix(P.elements, less, "z", w, (), (), k, exts)


def test_stanley_brackets():
    P = poset_from_dict(POSET126)
    for k, expected in ((3, (3, 3, 2)), (4, (3, 3, 3))):
        C = atlas.stanley_matrix(P, "z", k)
        f, g = global_pair(C.labels, "stanley")
        assert atlas._brackets(C, f, g) == expected


def test_greedoid_slice_structure_and_properties():
    W = lifted({"type": "free", "n": 4})
    sl = atlas.build_greedoid_atlas(W, 2)
    assert sl.root == atlas.VertexId((), 1, 1)
    assert len(sl.sinks()) == 5
    lg = atlas.check_local_global(sl)
    assert lg.ok
    for r in lg.reports.values():
        assert r.Hyp
        if not r.sink and 0 < r.id.t < 1:
            assert all(getattr(r, p) for p in r.PROPS)
    with pytest.raises(RankOutOfRange):
        atlas.build_greedoid_atlas(W, 4)


def test_sink_normal_form():
    W = lifted({"type": "free", "n": 4})
    sl = atlas.build_greedoid_atlas(W, 2)
    for v in sl.sinks():
        nf = atlas.sink_normal_form(v, W)
        assert nf.agrees and nf.star == nf.ope_original
        if nf.applicable and len(v.id.context) == 1:
            assert nf.matches_formula
            assert nf.N[(atlas.STAR, atlas.STAR)] == Fraction(3, 2)
    with pytest.raises(NotASink):
        atlas.sink_normal_form(sl.vertex(sl.root), W)


def test_equality_propagates_from_the_root():
    W = lifted({"type": "free", "n": 4})
    sl = atlas.build_greedoid_atlas(W, 2)
    f, g = global_pair(sl.labels, "greedoid")
    rep = atlas.check_sEqu_propagation(sl, f, g)
    assert rep.s == 3 and rep.root_holds
    assert rep.propagation_ok and rep.kernel_ok
    assert rep.functional_targets
    with pytest.raises(NotAGlobalPair):
        atlas.check_sEqu_propagation(sl, {x: 0 for x in sl.labels}, {x: 0 for x in sl.labels})


def test_stanley_slice_interior_vertices_pass():
    P = poset_from_dict(POSET126)
    sl = atlas.build_stanley_atlas(P, "z", 3)
    lg = atlas.check_local_global(sl)
    assert lg.ok
    for r in lg.reports.values():
        assert r.Hyp
        if not r.sink and 0 < r.id.t < 1:
            assert all(getattr(r, p) for p in r.PROPS)


def test_stanley_endpoint_vertex_breaks_inheritance():
    # b < a < d with c free; at t = 1 the matrix C(3) is supported on d_up only,
    # and the projection fills the other coordinates with h = 0
    P = build_poset("abcd", [("b", "a"), ("a", "d")])
    sl = atlas.build_stanley_atlas(P, "b", 2)
    top = atlas.check_vertex_properties(sl, atlas.VertexId(((), ()), 2, 1))
    assert sl.vertex(top.id).M.support() == ("d_up",)
    assert top.Inh is False and top.Pull is False
    assert top.witnesses["Inh"] == ("d_up", "d_up", 1, 0)
    assert top.Hyp
    for t in (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)):
        r = atlas.check_vertex_properties(sl, atlas.VertexId(((), ()), 2, t))
        assert r.Inh and r.Pull and r.Hyp


def test_projection_requires_an_edge():
    sl = atlas.build_greedoid_atlas(lifted({"type": "free", "n": 4}), 2)
    sink = sl.sinks()[0]
    with pytest.raises(NoSuchEdge):
        atlas.project(sl, sink, "1", {x: 1 for x in sl.labels})


def test_line_graph_of_extensions():
    P = poset_from_dict(POSET126)
    rep = atlas.line_graph_connectivity(P, "z", 3)
    assert rep.n_edges == 8
    assert rep.connected and rep.adjacency_matches and rep.transposition_adjacency


def test_hyp_holds_at_every_vertex_of_lifted_k4_minus_edge():
    sl = atlas.build_greedoid_atlas(lifted(K4E), 2)
    assert all(check_OPE(v.M) for v in sl.vertices.values())
