"""Acceptance suite: one PASS/FAIL line per criterion.

Criteria whose literal statement does not hold print FAIL; the tests still pass
because they assert the observed state exactly (see notes/decisions.md).
"""

import json
import random
import time
from functools import lru_cache
from itertools import combinations
from pathlib import Path

import pytest

from artifact import atlas, inequalities as I, oracle
from artifact.counting import antimatroid_series, check_k_admissible, product_weight
from artifact.errors import CMViolated, NoBelt
from artifact.poset import has_belt, linear_extensions, poset_from_dict
from artifact.rational import Q
from artifact.structures import continuation_number, greedoid_from_dict, matroid_from_dict, morphism_from_dict, polymatroid_from_dict

GOLDEN = Path(__file__).parent / "fixtures" / "golden"
K4E = {"type": "graphic", "edges": {"a": [1, 2], "b": [2, 3], "c": [1, 4], "d": [3, 4], "e": [1, 3]}}
POSET126 = {"elements": ["a", "b", "c", "d", "z"], "relations": [["a", "b"], ["b", "c"], ["a", "z"], ["d", "c"]]}
REFINED = [1, 1, 1, Q("3/2")]
SEED = 2024


def golden(name):
    return json.loads((GOLDEN / name).read_text())


def rows(data):
    return [[Q(x) for x in r] for r in data]


def lifted(matroid):
    return product_weight(greedoid_from_dict({"type": "from_matroid", "matroid": matroid}), None, REFINED)


@lru_cache(maxsize=None)
def random_posets(count: int = 200) -> tuple:
    """(data, order-reversing weights, cover-monotone weights) for seeded random posets on <= 7 elements."""
    rng = random.Random(SEED)
    out = []
    for _ in range(count):
        n = rng.randint(3, 7)
        d = oracle.random_poset(rng, n, rng.choice([0.3, 0.45, 0.6]))
        out.append((d, oracle.random_order_reversing(rng, d), oracle.random_cover_monotone(rng, d)))
    return tuple(out)


def corpus_posets() -> list:
    """Builder posets (except the large square shape) and the seeded random posets."""
    out = []
    for inst in oracle.default_corpus(0):
        if inst.kind == "poset" and inst.name != "square4":
            w = inst.weights if isinstance(inst.weights, dict) else None
            out.append((poset_from_dict(inst.data), w))
    out += [(poset_from_dict(d), w) for d, w, _ in random_posets()]
    return out


def width(P) -> int:
    best = 1
    for r in range(2, len(P) + 1):
        if any(all(not P.comparable(a, b) for a, b in combinations(S, 2)) for S in combinations(P.elements, r)):
            best = r
        else:
            break
    return best


def test_criterion_1_golden_matrices(verdict):
    t0 = time.perf_counter()
    greedoid_ok = True
    for fixture, matroid in (("greedoid_free4.json", {"type": "free", "n": 4}), ("greedoid_k4e.json", K4E)):
        g = golden(fixture)
        sl = atlas.build_greedoid_atlas(lifted(matroid), 2)
        # the root at t = 1 carries A((), 2); its interior companions mix in A((), 1)
        greedoid_ok &= sl.vertex(sl.root).M.rows() == rows(g["A2"])
        greedoid_ok &= atlas.greedoid_matrix(sl.source, (), 1).rows() == rows(g["A1"])

    printed, corrected = golden("stanley126_printed.json"), golden("stanley126_corrected.json")
    P = poset_from_dict(POSET126)
    labels = printed["labels"]
    misprints = {}
    corrected_ok = True
    for k in (3, 4):
        # the root (-, -, k-1, 1) of the slice carries C(k)
        sl = atlas.build_stanley_atlas(P, "z", k)
        core = sl.vertex(sl.root).M
        corrected_ok &= core.rows() == rows(corrected[f"C{k}"])
        misprints[k] = sorted(
            (a, b) for i, a in enumerate(labels) for j, b in enumerate(labels) if Q(printed[f"C{k}"][i][j]) != core[(a, b)]
        )
    elapsed = time.perf_counter() - t0

    assert greedoid_ok and corrected_ok
    # the printed C(3) is not even symmetric: only the c_up row is off
    assert misprints == {
        3: [("c_up", "c_down"), ("c_up", "d_down")],
        4: [("a_down", "b_down"), ("a_down", "d_down"), ("b_down", "a_down"), ("d_down", "a_down")],
    }
    assert elapsed < 1.0
    verdict(
        1,
        False,
        "both greedoid matrix pairs reproduced exactly; the printed Stanley matrices differ from the "
        f"definition in {sum(map(len, misprints.values()))} entries (recorded misprints), corrected values reproduced; "
        f"{elapsed:.2f}s",
    )


def test_criterion_2_bracket_values(verdict):
    found = {}
    for name, matroid in (("free", {"type": "free", "n": 4}), ("K4-e", K4E)):
        W = lifted(matroid)
        A = atlas.greedoid_matrix(W, (), 2)
        v = {x: int(x != atlas.STAR) for x in A.labels}
        w = {x: int(x == atlas.STAR) for x in A.labels}
        rep = I.greedoid_suite(W, 2)["plain"]
        found[name] = ((A.bilinear(v, w), A.bilinear(v, v), A.bilinear(w, w)), rep.lhs, rep.rhs, rep.equality)
    s = I.stanley_suite(poset_from_dict(POSET126), None, "z", 3)
    N = s.data["series"]
    found["stanley"] = (tuple(N[1:4]), s["plain"].lhs, s["plain"].rhs, s["plain"].equality)

    expected = {
        "free": ((12, 36, 4), 144, 144, True),
        "K4-e": ((20, 72, 5), 400, 360, False),
        "stanley": ((2, 3, 3), 9, 6, False),
    }
    assert found == expected
    verdict(2, True, "free (12,36,4) 144=144; K4-e (20,72,5) 400>360; Stanley (2,3,3) 9>6")


def test_criterion_3_equality_families(verdict):
    t0 = time.perf_counter()
    uniform_bad = [
        (n, r, k)
        for n in range(1, 9)
        for r in range(2, n + 1)
        for k in range(1, r)
        if not I.matroid_suite(matroid_from_dict({"type": "uniform", "n": n, "r": r}), None, k)["strong"].equality
    ]
    field = {}
    for q in (2, 3):
        vecs = [[a, b] for a in range(q) for b in range(q) if (a, b) != (0, 0)]
        M = matroid_from_dict({"type": "vector_gf", "q": q, "vectors": vecs})
        s = I.matroid_suite(M, None, 1)
        field[q] = (continuation_number(M, 0), s["refined"].equality)
    cycles = {}
    for n in range(4, 9):
        s = I.graphical_special({"edges": [[i, i % n + 1] for i in range(1, n + 1)]})
        cycles[n] = s["cycle_bound"].equality
    k4 = I.graphical_special({"edges": [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]]})["cycle_bound"]
    k4e = I.graphical_special({"edges": list(K4E["edges"].values())})["cycle_bound"]
    elapsed = time.perf_counter() - t0

    assert uniform_bad == []
    assert all(cycles.values())
    assert k4.holds and not k4.equality and k4e.holds and not k4e.equality
    # GF(3)^2: eight nonzero vectors on four lines, so p(0) = 4 rather than q^2 - 1 = 8
    assert field == {2: (3, True), 3: (4, True)}
    assert elapsed < 30
    verdict(
        3,
        False,
        "U(n,r) strong equality for n<=8, cycle equality for n=4..8, strict on K4 and K4-e all hold; "
        f"GF(3)^2 has p(0)=4, not q^2-1=8 (refined equality holds with p=4); {elapsed:.1f}s",
    )


def _truncation(M, j: int) -> dict:
    return {
        "type": "explicit",
        "ground": list(M.ground),
        "independents": [list(S) for S in M.independents if len(S) <= j],
    }


def test_criterion_4_condition_value_consistency(verdict):
    bad: list = []
    suites = 0

    def check(suite, tag):
        nonlocal suites
        suites += 1
        if not all(suite.consistency.values()):
            bad.append((tag, suite.kind, suite.k, {k: v for k, v in suite.consistency.items() if not v}))

    for i, (d, w_rev, w_cm) in enumerate(random_posets()):
        P = poset_from_dict(d)
        for z in P.elements:
            for k in range(2, len(P)):
                check(I.stanley_suite(P, w_rev, z, k), f"poset{i}:{z}")
        for k in range(1, len(P)):
            check(I.antimatroid_suite(P, w_cm, k), f"poset{i}")
        if len(P) <= 5:
            W = product_weight(greedoid_from_dict({"type": "poset_antimatroid", "poset": d}), w_cm)
            for k in range(1, W.language.rank):
                if check_k_admissible(W, k).ok:
                    check(I.greedoid_suite(W, k), f"poset{i}:greedoid")

    graphs = [g for nv in range(1, 6) for g in oracle.graphs_up_to_iso(nv)]
    for gi, g in enumerate(graphs):
        if not g["edges"]:
            continue
        M = matroid_from_dict({"type": "graphic", **g})
        for k in range(1, M.rank):
            check(I.matroid_suite(M, None, k), f"graph{gi}")
        for j in range(1, M.rank):
            phi = morphism_from_dict({"source": _truncation(M, M.rank), "target": _truncation(M, j), "phi": {x: x for x in M.ground}})
            for k in range(1, M.rank):
                check(I.morphism_suite(phi, None, k), f"graph{gi}->trunc{j}")

    for inst in oracle.builder_instances():
        if inst.kind == "matroid":
            M = matroid_from_dict(inst.data)
            for k in range(1, M.rank):
                check(I.matroid_suite(M, inst.weights, k), inst.name)
        elif inst.kind == "polymatroid":
            D = polymatroid_from_dict(inst.data)
            for k in range(1, D.rank):
                check(I.polymatroid_suite(D, inst.weights, inst.params.get("t", 1), k), inst.name)
        elif inst.kind == "morphism":
            phi = morphism_from_dict(inst.data)
            for k in range(1, phi.source.rank):
                check(I.morphism_suite(phi, inst.weights, k), inst.name)
        elif inst.kind == "greedoid":
            W = oracle.core_weighted_language(inst)
            for k in range(1, W.language.rank):
                if check_k_admissible(W, k).ok:
                    check(I.greedoid_suite(W, k), inst.name)
        elif inst.kind == "poset" and "z" in inst.params:
            P = poset_from_dict(inst.data)
            w = inst.weights if isinstance(inst.weights, dict) else None
            for k in range(2, len(P)):
                check(I.stanley_suite(P, w, inst.params["z"], k), inst.name)

    assert bad == []
    verdict(4, True, f"{suites} suites over {len(random_posets())} random posets, {len(graphs)} graphs and the builders; 0 discrepancies")


def _corpus_slices() -> list:
    out = []
    for inst in oracle.default_corpus(0):
        out += [(inst, sl) for sl in oracle.core_slices(inst)]
        if inst.kind == "greedoid":
            W = oracle.core_weighted_language(inst)
            for k in range(1, W.language.rank):
                if k not in inst.params.get("atlas_k", []) and check_k_admissible(W, k).ok:
                    out.append((inst, atlas.build_greedoid_atlas(W, k)))
    return out


def test_criterion_5_atlas_properties(verdict):
    t0 = time.perf_counter()
    endpoint_failures = []
    other_failures = []
    sinks_ok = True
    vertices = 0
    slices = _corpus_slices()
    for inst, sl in slices:
        lg = atlas.check_local_global(sl)
        assert lg.ok, (inst.name, lg.violations)
        for r in lg.reports.values():
            vertices += 1
            endpoint = r.id.t in (0, 1)
            for p in r.PROPS:
                if getattr(r, p) is not False:
                    continue
                if endpoint and p in ("Irr", "hPos"):
                    continue
                (endpoint_failures if endpoint else other_failures).append((inst.name, sl.kind, str(r.id), p))
        if sl.kind == "greedoid":
            for v in sl.sinks():
                nf = atlas.sink_normal_form(v, sl.source)
                sinks_ok &= nf.agrees and nf.star == nf.ope_original
    elapsed = time.perf_counter() - t0

    assert other_failures == []
    assert sinks_ok
    # the only exceptions: Stanley vertices at t in {0, 1} where the matrix support shrinks
    assert {(kind, p) for _, kind, _, p in endpoint_failures} == {("stanley", "Inh"), ("stanley", "Pull")}
    assert {name for name, *_ in endpoint_failures} == {"poset_0_2", "poset_0_10"}
    assert elapsed < 120
    verdict(
        5,
        False,
        f"{len(slices)} slices, {vertices} vertices: every property holds at t in (0,1), Hyp and sink (*) hold everywhere; "
        f"{len(endpoint_failures)} Inh/Pull failures at Stanley endpoint vertices t in {{0,1}}; {elapsed:.1f}s",
    )


def test_criterion_6_square_shape_negative_control(verdict):
    inst = next(i for i in oracle.builder_instances() if i.name == "square4")
    P = poset_from_dict(inst.data)
    with pytest.raises(CMViolated):
        I.antimatroid_suite(P, "uniform", 3)
    G = greedoid_from_dict({"type": "poset_antimatroid", "poset": inst.data, "max_length": 5})
    adm = check_k_admissible(product_weight(G), 3)
    L = antimatroid_series(P).values[:5]
    assert not adm.ok
    assert L == (1, 1, 2, 4, 10)
    assert (L[3] ** 2, L[2] * L[4]) == (16, 20)
    verdict(6, True, "CM violated, not 3-admissible, L=(1,1,2,4,10) with 16 < 20 at k=3")


def test_criterion_7_stanley_machinery(verdict):
    posets = corpus_posets()
    graphs = equivalences = belts = rejected = 0
    for P, w in posets:
        exts = linear_extensions(P)
        for z in P.elements:
            for k in range(2, len(P)):
                if any(L.index(z) + 1 in (k - 1, k, k + 1) for L in exts):
                    rep = atlas.line_graph_connectivity(P, z, k)
                    assert rep.connected and rep.adjacency_matches and rep.transposition_adjacency, (P, z, k)
                    graphs += 1
                eq = I.combinatorial_equivalence(P, z, k)
                if eq is not None:
                    assert eq[0] == eq[1], (P, z, k)
                    equivalences += 1
        if width(P) <= 2:
            for z in P.elements:
                for k in range(2, len(P)):
                    assert I.stanley_belt_suite(P, z, k, weights=w or "uniform").ok
                    belts += 1
        for z in P.elements:
            if not has_belt(P, z) and len(P) > 2:
                with pytest.raises(NoBelt):
                    I.stanley_belt_suite(P, z, 2, weights=w or "uniform")
                rejected += 1
    assert graphs and equivalences and belts and rejected
    verdict(
        7,
        True,
        f"{graphs} line graphs connected, {equivalences} equivalence checks, {belts} belt suites, {rejected} non-belt inputs rejected",
    )


def test_criterion_8_oracle(verdict):
    t0 = time.perf_counter()
    rep = oracle.crosscheck(oracle.default_corpus(0))
    elapsed = time.perf_counter() - t0
    assert rep.ok, rep.mismatches[:3]
    assert elapsed < 60
    verdict(8, True, f"{rep.instances} instances, {rep.comparisons} comparisons, 0 mismatches, {elapsed:.1f}s")
