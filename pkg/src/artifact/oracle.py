"""Brute-force recomputation of every counted quantity.

Everything here is deliberately naive: structures are re-read from their
JSON description, sets are enumerated with ``itertools`` and matrix entries
are summed word by word.  Nothing is imported from ``structures`` or
``counting``; the cross-check calls into those modules only to obtain the
values being certified.
"""

from __future__ import annotations

import json
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from pathlib import Path
from typing import Mapping

from .errors import BadParams, TooLarge
from .linalg import LabeledSymMatrix
from .rational import Q, to_jsonable

ZERO = Fraction(0)
ONE = Fraction(1)
SET_CAP = 10
POSET_CAP = 8
WORD_CAP = 8


# ---------------------------------------------------------------------------
# naive readers


def _edge_list(graph: Mapping) -> tuple[list[str], list[tuple[str, str, str]]]:
    raw = graph.get("edges", [])
    if isinstance(raw, Mapping):
        edges = [(str(k), str(v[0]), str(v[1])) for k, v in raw.items()]
    else:
        edges = [
            (str(e[0]), str(e[1]), str(e[2])) if len(e) == 3 else (f"e{i + 1}", str(e[0]), str(e[1]))
            for i, e in enumerate(raw)
        ]
    verts = [str(v) for v in graph.get("vertices", [])]
    for _, u, v in edges:
        for x in (u, v):
            if x not in verts:
                verts.append(x)
    return verts, edges


def _acyclic(pairs) -> bool:
    # a graph is a forest iff every component has one edge fewer than vertices
    verts = {x for e in pairs for x in e}
    comps = 0
    seen: set = set()
    for s in verts:
        if s in seen:
            continue
        comps += 1
        stack = [s]
        seen.add(s)
        while stack:
            u = stack.pop()
            for a, b in pairs:
                for p, r in ((a, b), (b, a)):
                    if p == u and r not in seen:
                        seen.add(r)
                        stack.append(r)
    return len(pairs) == len(verts) - comps


def _gf_independent(vectors, q: int) -> bool:
    for coeffs in product(range(q), repeat=len(vectors)):
        if any(coeffs) and all(sum(c * v[i] for c, v in zip(coeffs, vectors)) % q == 0 for i in range(len(vectors[0]))):
            return False
    return True


def oracle_matroid(data: Mapping) -> tuple[list[str], set[frozenset]]:
    kind = data.get("type")
    if kind == "graphic":
        _, edges = _edge_list(data.get("graph", data))
        ground = [e for e, _, _ in edges]
        ends = {e: (u, v) for e, u, v in edges}
        ind = {
            frozenset(S)
            for r in range(len(ground) + 1)
            for S in combinations(ground, r)
            if _acyclic([ends[e] for e in S])
        }
    elif kind in ("free", "uniform"):
        n = int(data["n"])
        r = n if kind == "free" else int(data["r"])
        ground = [str(x) for x in data.get("ground") or range(1, n + 1)]
        ind = {frozenset(S) for j in range(r + 1) for S in combinations(ground, j)}
    elif kind == "vector_gf":
        q = int(data["q"])
        vecs = [list(map(int, v)) for v in data["vectors"]]
        ground = [str(x) for x in data.get("labels") or [f"v{i + 1}" for i in range(len(vecs))]]
        vec = dict(zip(ground, vecs))
        ind = {
            frozenset(S)
            for j in range(len(ground) + 1)
            for S in combinations(ground, j)
            if not S or _gf_independent([vec[x] for x in S], q)
        }
    elif kind == "steiner":
        t = int(data["t"])
        ground = [str(x) for x in data.get("ground") or range(1, int(data["n"]) + 1)]
        blocks = [set(map(str, B)) for B in data["blocks"]]
        ind = {frozenset(S) for j in range(t + 1) for S in combinations(ground, j)}
        ind |= {frozenset(S) for S in combinations(ground, t + 1) if not any(set(S) <= B for B in blocks)}
    elif kind == "explicit":
        ground = [str(x) for x in data["ground"]]
        ind = {frozenset(map(str, S)) for S in data["independents"]}
    else:
        raise BadParams(f"oracle cannot read matroid type {kind!r}")
    if len(ground) > SET_CAP:
        raise TooLarge("ground set above the oracle cap")
    return ground, ind


def oracle_polymatroid(data: Mapping) -> tuple[int, set[tuple]]:
    kind = data.get("type")
    if kind == "ball":
        n, r = int(data["n"]), int(data["r"])
        return n, {a for a in product(range(r + 1), repeat=n) if sum(a) <= r}
    if kind == "box":
        caps = [int(c) for c in data["caps"]]
        r = int(data.get("r", sum(caps)))
        return len(caps), {a for a in product(*(range(c + 1) for c in caps)) if sum(a) <= r}
    if kind == "explicit":
        return int(data["n"]), {tuple(map(int, a)) for a in data["independents"]}
    if kind == "matroid":
        ground, ind = oracle_matroid(data["matroid"])
        return len(ground), {tuple(int(x in S) for x in ground) for S in ind}
    raise BadParams(f"oracle cannot read polymatroid type {kind!r}")


def oracle_poset(data: Mapping) -> tuple[list[str], set[tuple[str, str]]]:
    """Elements and the full strict order, closed by repeated search."""
    elements = [str(x) for x in data["elements"]]
    if len(elements) > 16:
        raise TooLarge("poset above the oracle cap")
    succ = {x: set() for x in elements}
    for a, b in data.get("relations", ()):
        succ[str(a)].add(str(b))
    less = set()
    for x in elements:
        stack, seen = list(succ[x]), set()
        while stack:
            y = stack.pop()
            if y not in seen:
                seen.add(y)
                stack.extend(succ[y])
        less |= {(x, y) for y in seen}
    return elements, less


def _below_map(elements, less) -> dict:
    return {x: {y for y in elements if (y, x) in less} for x in elements}


def oracle_extensions(elements, less) -> list[tuple]:
    if len(elements) > POSET_CAP:
        raise TooLarge("too many elements for permutation enumeration")
    below = _below_map(elements, less)
    out = []
    for perm in permutations(elements):
        pos = {x: i for i, x in enumerate(perm)}
        if all(pos[y] < pos[x] for x in elements for y in below[x]):
            out.append(perm)
    return out


def oracle_feasible_words(elements, less, length: int) -> list[tuple]:
    below = _below_map(elements, less)
    out = []
    for w in permutations(elements, length):
        seen = set()
        ok = True
        for x in w:
            if not below[x] <= seen:
                ok = False
                break
            seen.add(x)
        if ok:
            out.append(w)
    return out


def _poly_letter(x: str) -> int:
    return int(x[1:].split("_")[0])


def oracle_words(data: Mapping) -> list[tuple]:
    """All words of a greedoid language described by ``data``."""
    kind = data.get("type")
    cap = data.get("max_length")
    if kind == "from_matroid":
        ground, ind = oracle_matroid(data["matroid"])
        words = [w for S in ind for w in permutations(sorted(S, key=ground.index))]
    elif kind == "poset_antimatroid":
        elements, less = oracle_poset(data["poset"])
        top = len(elements) if cap is None else min(cap, len(elements))
        words = [w for j in range(top + 1) for w in oracle_feasible_words(elements, less, j)]
    elif kind == "from_polymatroid":
        n, J = oracle_polymatroid(data["polymatroid"])
        words, frontier = [()], [((), (0,) * n)]
        while frontier:
            nxt = []
            for w, a in frontier:
                for i in range(n):
                    b = a[:i] + (a[i] + 1,) + a[i + 1:]
                    if b in J:
                        nxt.append((w + (f"x{i + 1}_{b[i]}",), b))
            words += [w for w, _ in nxt]
            frontier = nxt
    elif kind == "branching":
        raw = data["edges"]
        edges = (
            {str(k): (str(v[0]), str(v[1])) for k, v in raw.items()}
            if isinstance(raw, Mapping)
            else {f"{u}->{v}": (str(u), str(v)) for u, v in raw}
        )
        words = []
        for j in range(len(edges) + 1):
            for w in permutations(edges, j):
                reached = {str(data["root"])}
                ok = True
                for e in w:
                    u, v = edges[e]
                    if v not in reached or u in reached:
                        ok = False
                        break
                    reached.add(u)
                if ok:
                    words.append(w)
    elif kind == "explicit":
        words = [tuple(map(str, w)) for w in data["words"]]
    else:
        raise BadParams(f"oracle cannot read greedoid type {kind!r}")
    if cap is not None:
        words = [w for w in words if len(w) <= cap]
    return words


# ---------------------------------------------------------------------------
# instances


@dataclass
class Instance:
    """A structure description plus weights and the checks to run on it.

    kind is one of matroid, polymatroid, poset, greedoid, morphism.
    params may hold: t (polymatroid), z and stanley_k (poset), atlas_k,
    scale (greedoid), max_length (antimatroid series length).
    """

    name: str
    kind: str
    data: dict
    weights: object = None
    params: dict = field(default_factory=dict)
    expected: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {"name": self.name, "kind": self.kind, "data": self.data, "weights": self.weights, "params": self.params}
        if self.expected:
            out["expected"] = self.expected
        return out


def instance_from_dict(d: Mapping) -> Instance:
    try:
        return Instance(
            d["name"], d["kind"], dict(d["data"]), d.get("weights"), dict(d.get("params", {})), dict(d.get("expected", {}))
        )
    except KeyError as exc:
        raise BadParams(f"corpus instance missing {exc}") from exc


def _w(labels, weights) -> dict:
    if weights is None or weights == "uniform":
        return {x: ONE for x in labels}
    return {str(k): Q(v) for k, v in weights.items()}


def _prod(vals) -> Fraction:
    return math.prod(vals, start=ONE)


def _greedoid_q(inst: Instance):
    """Word weight c_len * prod omega, with t^pi for polymatroid lifts."""
    scale = [Q(c) for c in inst.params.get("scale", [])]
    c = lambda l: scale[l] if l < len(scale) else ONE
    t = inst.params.get("t")
    data = inst.data
    if data.get("type") == "from_polymatroid":
        n, _ = oracle_polymatroid(data["polymatroid"])
        w = _w([str(i + 1) for i in range(n)], inst.weights)
        tt = Q(t if t is not None else 1)

        def q(word):
            a = [0] * n
            for x in word:
                a[_poly_letter(x) - 1] += 1
            return c(len(word)) * tt ** sum(math.comb(v, 2) for v in a) * _prod(w[str(i + 1)] ** v for i, v in enumerate(a))

        return q
    weights = inst.weights
    if isinstance(weights, Mapping):
        w = {str(k): Q(v) for k, v in weights.items()}
        return lambda word: c(len(word)) * _prod(w[x] for x in word)
    return lambda word: c(len(word))


def _p_numbers(objects_by_size, cnt, together) -> list[int]:
    """p(k) by explicit pairwise class construction."""
    out = []
    for objs in objects_by_size[:-1]:
        best = 0
        for S in objs:
            c = cnt(S)
            classes: list[set] = []
            for x in c:
                for C in classes:
                    if not together(S, x, next(iter(C))):
                        C.add(x)
                        break
                else:
                    classes.append({x})
            best = max(best, len(classes))
        out.append(best)
    return out


def brute_counts(inst: Instance) -> dict:
    """All countable series of an instance, recomputed naively."""
    kind = inst.kind
    out: dict = {}
    if kind == "matroid":
        ground, ind = oracle_matroid(inst.data)
        w = _w(ground, inst.weights)
        r = max(len(S) for S in ind)
        by = [[S for S in ind if len(S) == j] for j in range(r + 1)]
        out["series"] = [sum((_prod(w[x] for x in S) for S in lst), ZERO) for lst in by]
        out["p"] = _p_numbers(
            by,
            lambda S: [x for x in ground if x not in S and S | {x} in ind],
            lambda S, x, y: S | {x, y} in ind,
        )
        n = len(ground)
        out["girth"] = next((j for j in range(n + 1) if len(by[j] if j <= r else []) < math.comb(n, j)), math.inf)
    elif kind == "polymatroid":
        n, J = oracle_polymatroid(inst.data)
        w = _w([str(i + 1) for i in range(n)], inst.weights)
        t = Q(inst.params.get("t", 1))
        r = max(sum(a) for a in J)
        by = [[a for a in J if sum(a) == j] for j in range(r + 1)]
        out["series"] = [
            sum(
                (
                    t ** sum(math.comb(v, 2) for v in a)
                    * _prod(w[str(i + 1)] ** v for i, v in enumerate(a))
                    / _prod(math.factorial(v) for v in a)
                    for a in lst
                ),
                ZERO,
            )
            for lst in by
        ]
        plus = lambda a, i: a[:i] + (a[i] + 1,) + a[i + 1:]
        out["p"] = _p_numbers(
            by,
            lambda a: [i for i in range(n) if plus(a, i) in J],
            lambda a, i, j: plus(plus(a, i), j) in J,
        )
        if all(plus((0,) * n, i) in J for i in range(n)):
            out["polygirth"] = next(
                (j for j in range(r + 2) if len(by[j] if j <= r else []) < math.comb(n + j - 1, j)), math.inf
            )
    elif kind == "poset":
        elements, less = oracle_poset(inst.data)
        w = _w(elements, inst.weights if inst.weights is not None else inst.data.get("weights"))
        top = inst.params.get("max_length", len(elements))
        out["antimatroid"] = [
            sum((_prod(w[x] for x in word) for word in oracle_feasible_words(elements, less, j)), ZERO)
            for j in range(top + 1)
        ]
        z = inst.params.get("z")
        if z is not None:
            n = len(elements)
            N = [ZERO] * n
            for L in oracle_extensions(elements, less):
                i = L.index(z)
                N[i] += _prod(w[x] for x in L[:i])
            out["stanley"] = N
    elif kind == "greedoid":
        words = oracle_words(inst.data)
        q = _greedoid_q(inst)
        r = max(len(x) for x in words)
        out["series"] = [sum((q(x) for x in words if len(x) == j), ZERO) for j in range(r + 1)]
    elif kind == "morphism":
        ground, ind = oracle_matroid(inst.data["source"])
        tground, tind = oracle_matroid(inst.data["target"])
        phi = {str(k): str(v) for k, v in inst.data["phi"].items()}
        trank = max(len(S) for S in tind)
        g = lambda S: max(len(A) for A in tind if A <= {phi[x] for x in S})
        w = _w(ground, inst.weights)
        r = max(len(S) for S in ind)
        bases = [[S for S in ind if len(S) == j and g(S) == trank] for j in range(r + 1)]
        out["series"] = [sum((_prod(w[x] for x in S) for S in lst), ZERO) for lst in bases]
    else:
        raise BadParams(f"unknown instance kind {kind!r}")
    return out


# ---------------------------------------------------------------------------
# matrices


def brute_greedoid_matrix(words: list[tuple], q, alphabet, alpha: tuple, m: int) -> LabeledSymMatrix:
    """A(alpha, m) summed word by word over the language."""
    L = set(words)
    labels = tuple(alphabet) + ("*",)
    M = LabeledSymMatrix(labels)
    rows = M._rows
    if alpha not in L:
        return M
    def tail_sum(prefix):
        return sum((q(w) for w in words if len(w) == len(prefix) + m - 1 and w[: len(prefix)] == prefix), ZERO)

    idx = {x: i for i, x in enumerate(labels)}
    for x in alphabet:
        if alpha + (x,) not in L:
            continue
        rows[idx[x]][idx["*"]] = rows[idx["*"]][idx[x]] = tail_sum(alpha + (x,))
        for y in alphabet:
            if y == x:
                continue
            if alpha + (y,) in L:
                rows[idx[x]][idx[y]] = tail_sum(alpha + (x, y))
            elif alpha + (x, y) in L:
                rows[idx[x]][idx[x]] += tail_sum(alpha + (x, y))
    rows[idx["*"]][idx["*"]] = tail_sum(alpha)
    return M


def brute_stanley_matrix(
    elements, less, z, weights: Mapping, alpha: tuple, beta: tuple, k: int, exts=None
) -> LabeledSymMatrix:
    """C(alpha, beta, k) from the seven-case definition, entry by entry."""
    rest = [x for x in elements if x != z]
    labels = tuple(f"{x}_down" for x in rest) + tuple(f"{x}_up" for x in rest)
    exts = oracle_extensions(elements, less) if exts is None else exts
    n, a, b = len(elements), len(alpha), len(beta)
    mids = []
    for L in exts:
        if L[:a] == alpha and L[n - b:] == beta:
            i = L.index(z)
            mids.append((L[a : n - b], _prod(weights[x] for x in L[:i])))

    def s(pred):
        return sum((q for g, q in mids if pred(g)), ZERO)

    lt = lambda x, y: (x, y) in less
    inc = lambda x, y: x != y and not lt(x, y) and not lt(y, x)
    entries = {}
    for x in rest:
        for y in rest:
            dx, dy, ux, uy = f"{x}_down", f"{y}_down", f"{x}_up", f"{y}_up"
            # down x up: x gamma y with z at position k of the middle word
            entries[(dx, uy)] = s(lambda g: g[0] == x and g[-1] == y and g[k - 1] == z)
            if inc(x, y):
                entries[(dx, dy)] = s(lambda g: g[:2] == (x, y) and g[k] == z)
                entries[(ux, uy)] = s(lambda g: g[-2:] == (x, y) and g[k - 2] == z)
            elif x == y:
                entries[(dx, dx)] = s(lambda g: g[0] == x and lt(x, g[1]) and g[k] == z)
                entries[(ux, ux)] = s(lambda g: g[-1] == x and lt(g[-2], x) and g[k - 2] == z)
    M = LabeledSymMatrix(labels)
    idx = {lab: i for i, lab in enumerate(labels)}
    for (p, r), v in entries.items():
        M._rows[idx[p]][idx[r]] = v
        if p.endswith("_down") and r.endswith("_up"):
            M._rows[idx[r]][idx[p]] = v
    return M


def brute_matrix(inst: Instance, vid) -> LabeledSymMatrix:
    """Matrix of the atlas vertex ``vid`` (a VertexId-like object)."""
    t = Q(vid.t)
    if inst.kind == "greedoid":
        words = oracle_words(inst.data)
        q = _greedoid_q(inst)
        alphabet = _alphabet(words)
        alpha, m = tuple(vid.context), vid.level
        if m == 0:
            return brute_greedoid_matrix(words, q, alphabet, alpha, 1)
        hi = brute_greedoid_matrix(words, q, alphabet, alpha, m + 1)
        lo = brute_greedoid_matrix(words, q, alphabet, alpha, m)
        return hi.scale(t) + lo.scale(1 - t)
    if inst.kind == "poset":
        elements, less = oracle_poset(inst.data)
        w = _w(elements, inst.weights if inst.weights is not None else inst.data.get("weights"))
        alpha, beta = vid.context
        z = inst.params["z"]
        exts = oracle_extensions(elements, less)
        n = len(elements)
        if n - 3 - len(alpha) - len(beta) == 0:
            return brute_stanley_matrix(elements, less, z, w, alpha, beta, 2, exts)
        hi = brute_stanley_matrix(elements, less, z, w, alpha, beta, vid.level + 1, exts)
        lo = brute_stanley_matrix(elements, less, z, w, alpha, beta, vid.level, exts)
        return hi.scale(t) + lo.scale(1 - t)
    raise BadParams(f"no atlas for instance kind {inst.kind!r}")


def _alphabet(words) -> list:
    seen = []
    for w in sorted(words, key=lambda w: (len(w), w)):
        for x in w:
            if x not in seen:
                seen.append(x)
    return seen


# ---------------------------------------------------------------------------
# random families


def random_poset(rng: random.Random, n: int, density: float = 0.35) -> dict:
    """Random poset: each pair i < j of a shuffled labelling is related with probability density."""
    names = [chr(ord("a") + i) for i in range(n)]
    order = names[:]
    rng.shuffle(order)
    rel = [[order[i], order[j]] for i in range(n) for j in range(i + 1, n) if rng.random() < density]
    return {"elements": names, "relations": rel}


def random_order_reversing(rng: random.Random, data: Mapping, ties: float = 0.3) -> dict:
    """Random rational weights with w(x) >= w(y) whenever x < y."""
    elements, less = oracle_poset(data)
    w: dict[str, Fraction] = {}
    pending = list(elements)
    while pending:
        for x in pending:
            above = [y for y in elements if (x, y) in less]
            if all(y in w for y in above):
                base = max((w[y] for y in above), default=ONE)
                step = ZERO if rng.random() < ties else Fraction(rng.randint(1, 6), rng.randint(1, 4))
                w[x] = base + step
                pending.remove(x)
                break
    return {x: w[x] for x in elements}


def random_cover_monotone(rng: random.Random, data: Mapping, ties: float = 0.5) -> dict:
    """Random weights with w(x) >= sum of w over the covers of x."""
    elements, less = oracle_poset(data)
    covers = {
        x: [y for y in elements if (x, y) in less and not any((x, u) in less and (u, y) in less for u in elements)]
        for x in elements
    }
    w: dict[str, Fraction] = {}
    pending = list(elements)
    while pending:
        for x in pending:
            if all(y in w for y in covers[x]):
                base = sum((w[y] for y in covers[x]), ZERO) or ONE
                w[x] = base + (ZERO if rng.random() < ties else Fraction(rng.randint(1, 3), rng.randint(1, 3)))
                pending.remove(x)
                break
    return {x: w[x] for x in elements}


def graphs_up_to_iso(nv: int) -> list[dict]:
    """One representative of every isomorphism class of simple graphs on nv vertices."""
    verts = [str(i + 1) for i in range(nv)]
    pairs = list(combinations(range(nv), 2))
    seen = set()
    out = []
    for mask in range(1 << len(pairs)):
        E = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        canon = min(
            tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in E)) for perm in permutations(range(nv))
        )
        if canon in seen:
            continue
        seen.add(canon)
        out.append({"vertices": verts, "edges": [[verts[u], verts[v]] for u, v in E]})
    return out


def random_graph(rng: random.Random, nv: int, density: float = 0.6) -> dict:
    verts = [str(i + 1) for i in range(nv)]
    while True:
        E = [[u, v] for u, v in combinations(verts, 2) if rng.random() < density]
        ends = [tuple(e) for e in E]
        reach = {verts[0]}
        grew = True
        while grew:
            grew = False
            for u, v in ends:
                if (u in reach) != (v in reach):
                    reach |= {u, v}
                    grew = True
        if len(reach) == nv:
            return {"vertices": verts, "edges": E}


# ---------------------------------------------------------------------------
# corpus


def builder_instances() -> list[Instance]:
    free4 = {"type": "free", "n": 4}
    k4e = {"type": "graphic", "edges": {"a": [1, 2], "b": [2, 3], "c": [1, 4], "d": [3, 4], "e": [1, 3]}}
    poset126 = {
        "elements": ["a", "b", "c", "d", "z"],
        "relations": [["a", "b"], ["b", "c"], ["a", "z"], ["d", "c"]],
    }
    tree = {
        "elements": ["r", "a", "b", "c", "d", "e"],
        "relations": [["r", "a"], ["r", "b"], ["a", "c"], ["a", "d"], ["b", "e"]],
    }
    square4 = {
        "elements": [f"{i},{j}" for i in range(4) for j in range(4)],
        "relations": [[f"{i},{j}", f"{i - 1},{j}"] for i in range(1, 4) for j in range(4)]
        + [[f"{i},{j}", f"{i},{j - 1}"] for i in range(4) for j in range(1, 4)],
    }
    entringer = {
        "elements": ["1", "2", "3", "4", "5"],
        "relations": [["2", "1"], ["2", "3"], ["4", "3"], ["4", "5"]],
    }
    return [
        Instance("free4", "matroid", free4),
        Instance("k4_minus_edge", "matroid", k4e),
        Instance("uniform_4_2", "matroid", {"type": "uniform", "n": 4, "r": 2}),
        Instance("gf2_plane", "matroid", {"type": "vector_gf", "q": 2, "vectors": [[1, 0], [0, 1], [1, 1]]}),
        Instance(
            "gf3_plane",
            "matroid",
            {"type": "vector_gf", "q": 3, "vectors": [[a, b] for a in range(3) for b in range(3) if (a, b) != (0, 0)]},
        ),
        Instance(
            "fano_points",
            "matroid",
            {"type": "vector_gf", "q": 2, "vectors": [[a, b, c] for a in (0, 1) for b in (0, 1) for c in (0, 1)][1:]},
        ),
        Instance("cycle5", "matroid", {"type": "graphic", "edges": [[1, 2], [2, 3], [3, 4], [4, 5], [5, 1]]}),
        Instance("k4", "matroid", {"type": "graphic", "edges": [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4], [3, 4]]}),
        Instance("weighted_k4e", "matroid", k4e, {"a": 2, "b": 1, "c": "1/2", "d": 3, "e": 1}),
        Instance("ball_2_3", "polymatroid", {"type": "ball", "n": 2, "r": 3}, None, {"t": 1}),
        Instance("ball_2_3_half", "polymatroid", {"type": "ball", "n": 2, "r": 3}, None, {"t": "1/2"}),
        Instance("box_123", "polymatroid", {"type": "box", "caps": [1, 2, 3], "r": 4}, {"1": 2, "2": 1, "3": "1/3"}, {"t": "1/3"}),
        Instance("poset126", "poset", poset126, None, {"z": "z", "atlas_k": [3]}),
        Instance("antichain4", "poset", {"elements": ["1", "2", "3", "4"]}, None, {"z": "1", "atlas_k": [2]}),
        Instance("entringer5", "poset", entringer, None, {"z": "1", "atlas_k": [2, 3]}),
        Instance("tree6", "poset", tree, {"r": 3, "a": 2, "b": 1, "c": 1, "d": 1, "e": 1}, {"z": "c"}),
        Instance("square4", "poset", square4, "uniform", {"max_length": 5}),
        Instance("free4_lift", "greedoid", {"type": "from_matroid", "matroid": free4}, None, {"scale": [1, 1, 1, "3/2"], "atlas_k": [2]}),
        Instance("k4e_lift", "greedoid", {"type": "from_matroid", "matroid": k4e}, None, {"scale": [1, 1, 1, "3/2"], "atlas_k": [2]}),
        Instance(
            "tree_antimatroid",
            "greedoid",
            {"type": "poset_antimatroid", "poset": tree},
            {"r": 3, "a": 2, "b": 1, "c": 1, "d": 1, "e": 1},
            {"atlas_k": [2]},
        ),
        Instance(
            "ball_lift",
            "greedoid",
            {"type": "from_polymatroid", "polymatroid": {"type": "ball", "n": 2, "r": 3}},
            None,
            {"t": "1/2", "scale": [1, 1, "4/3"], "atlas_k": [1]},
        ),
        Instance(
            "branching_triangle",
            "greedoid",
            {"type": "branching", "root": "r", "edges": [["a", "r"], ["b", "r"], ["a", "b"], ["b", "a"]]},
        ),
        Instance(
            "free4_to_line",
            "morphism",
            {"source": free4, "target": {"type": "uniform", "n": 4, "r": 1}, "phi": {str(i): str(i) for i in range(1, 5)}},
        ),
        Instance(
            "free4_to_u42",
            "morphism",
            {"source": free4, "target": {"type": "uniform", "n": 4, "r": 2}, "phi": {str(i): str(i) for i in range(1, 5)}},
        ),
    ]


def random_instances(seed: int = 0, posets: int = 12, graphs: int = 6) -> list[Instance]:
    rng = random.Random(seed)
    out = []
    for i in range(posets):
        n = rng.randint(4, 6)
        data = random_poset(rng, n)
        w = random_order_reversing(rng, data)
        z = rng.choice(data["elements"])
        out.append(Instance(f"poset_{seed}_{i}", "poset", data, w, {"z": z, "atlas_k": [rng.randint(2, n - 1)]}))
    for i in range(graphs):
        data = random_graph(rng, rng.randint(3, 5))
        out.append(Instance(f"graph_{seed}_{i}", "matroid", {"type": "graphic", **data}))
    return out


def default_corpus(seed: int = 0) -> list[Instance]:
    return builder_instances() + random_instances(seed)


def load_manifest(path) -> list[Instance]:
    """Read a corpus manifest: {"instances": [...], "files": [...], "random": {"seed", "posets", "graphs"}}."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except OSError as exc:
        raise BadParams(f"cannot read manifest {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise BadParams(f"manifest {path} is not valid JSON: {exc}") from exc
    out = [instance_from_dict(d) for d in doc.get("instances", [])]
    for f in doc.get("files", []):
        try:
            sub = json.loads((path.parent / f).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise BadParams(f"cannot read corpus file {f}: {exc}") from exc
        out += [instance_from_dict(d) for d in (sub if isinstance(sub, list) else [sub])]
    if "random" in doc:
        r = doc["random"]
        out += random_instances(int(r.get("seed", 0)), int(r.get("posets", 12)), int(r.get("graphs", 6)))
    if doc.get("builders", False):
        out = builder_instances() + out
    return out


# ---------------------------------------------------------------------------
# cross-check


@dataclass
class CrosscheckReport:
    instances: int = 0
    comparisons: int = 0
    mismatches: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        return {
            "instances": self.instances,
            "comparisons": self.comparisons,
            "mismatches": to_jsonable(self.mismatches),
            "ok": self.ok,
        }


def core_counts(inst: Instance) -> dict:
    """The same quantities computed by the main modules."""
    from . import counting, structures
    from .poset import poset_from_dict

    out: dict = {}
    if inst.kind == "matroid":
        M = structures.matroid_from_dict(inst.data)
        out["series"] = list(counting.matroid_series(M, inst.weights).values)
        out["p"] = [structures.continuation_number(M, j) for j in range(M.rank)]
        out["girth"] = structures.girth_and_polygirth(M)
    elif inst.kind == "polymatroid":
        D = structures.polymatroid_from_dict(inst.data)
        out["series"] = list(counting.polymatroid_series(D, inst.weights, inst.params.get("t", 1)).values)
        out["p"] = [structures.continuation_number(D, j) for j in range(D.rank)]
        if D.nondegenerate:
            out["polygirth"] = structures.girth_and_polygirth(D)
    elif inst.kind == "poset":
        P = poset_from_dict(inst.data)
        w = inst.weights if inst.weights is not None else inst.data.get("weights")
        top = inst.params.get("max_length", len(P))
        series = counting.antimatroid_series(P, w if w is not None else "uniform").values
        out["antimatroid"] = list(series[: top + 1])
        if inst.params.get("z") is not None:
            out["stanley"] = list(counting.stanley_series(P, inst.params["z"], w if w is not None else "uniform").values)
    elif inst.kind == "greedoid":
        W = core_weighted_language(inst)
        out["series"] = list(counting.language_series(W).values)
    elif inst.kind == "morphism":
        phi = structures.morphism_from_dict(inst.data)
        out["series"] = list(counting.morphism_series(phi, inst.weights).values)
    return out


def core_weighted_language(inst: Instance):
    from . import counting, structures

    G = structures.greedoid_from_dict(inst.data)
    t = inst.params.get("t")
    if inst.data.get("type") == "from_polymatroid":
        return counting.product_weight(G, inst.weights, inst.params.get("scale"), t=t if t is not None else 1)
    return counting.product_weight(G, inst.weights, inst.params.get("scale"))


def core_slices(inst: Instance) -> list:
    from . import atlas
    from .poset import poset_from_dict

    out = []
    for k in inst.params.get("atlas_k", []):
        if inst.kind == "greedoid":
            out.append(atlas.build_greedoid_atlas(core_weighted_language(inst), k))
        elif inst.kind == "poset":
            P = poset_from_dict(inst.data)
            w = inst.weights if inst.weights is not None else inst.data.get("weights")
            out.append(atlas.build_stanley_atlas(P, inst.params["z"], k, weights=w if isinstance(w, Mapping) else None))
    return out


def _frozen(v):
    if isinstance(v, list):
        return [_frozen(x) for x in v]
    if v == "inf":
        return math.inf
    return Q(v)


def crosscheck(corpus: list[Instance] | None = None, matrices: bool = True) -> CrosscheckReport:
    start = time.perf_counter()
    corpus = default_corpus() if corpus is None else corpus
    rep = CrosscheckReport()
    for inst in corpus:
        rep.instances += 1
        mine, theirs = brute_counts(inst), core_counts(inst)
        for key in sorted(set(mine) | set(theirs)):
            rep.comparisons += 1
            a, b = mine.get(key), theirs.get(key)
            if a is not None and b is not None and not isinstance(a, (int, float)):
                a, b = list(a), list(b)
            if a != b:
                rep.mismatches.append({"instance": inst.to_dict(), "quantity": key, "oracle": a, "core": b})
        # frozen values carried by a fixture must match the oracle too
        for key, want in inst.expected.items():
            rep.comparisons += 1
            a = mine.get(key)
            if _frozen(want) != (list(a) if isinstance(a, (list, tuple)) else a):
                rep.mismatches.append({"instance": inst.to_dict(), "quantity": key, "oracle": a, "expected": want})
        if not matrices:
            continue
        for sl in core_slices(inst):
            for vid, v in sl.vertices.items():
                rep.comparisons += 1
                ref = brute_matrix(inst, vid)
                if set(ref.labels) != set(v.M.labels) or ref.permuted(v.M.labels) != v.M:
                    rep.mismatches.append(
                        {"instance": inst.to_dict(), "quantity": f"matrix {vid}", "oracle": ref.to_dict(), "core": v.M.to_dict()}
                    )
    rep.seconds = time.perf_counter() - start
    return rep
