"""Matroids, discrete polymatroids, greedoid languages and matroid morphisms.

All families are stored explicitly (enumerated), which keeps every axiom
check exhaustive at desk scale.  The module also hosts the lifts of matroids,
polymatroids, poset antimatroids and branchings to greedoid languages, and
the derived data (continuations, parallel classes, descendants) that the
counting and atlas code consumes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
from math import comb
from typing import Iterable, Mapping, Sequence

from .errors import (
    AxiomViolation,
    BadParams,
    Degenerate,
    NotAMorphism,
    NotPrefixClosed,
    RankOutOfRange,
    TooLarge,
    WordNotInLanguage,
)
from .poset import Poset

GROUND_CAP = 10
WORD_CAP = 200_000


def _sorted_set(S, order) -> tuple:
    return tuple(sorted(S, key=order.__getitem__))


@dataclass(frozen=True)
class AxiomReport:
    ok: bool
    checks: dict
    witnesses: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# matroids


def check_matroid_axioms(family: Iterable[Iterable], ground: Sequence | None = None) -> AxiomReport:
    fam = {frozenset(map(str, S)) for S in family}
    if ground is None:
        ground = sorted(set().union(*fam)) if fam else []
    ground = [str(x) for x in ground]
    if len(ground) > GROUND_CAP:
        raise TooLarge(f"ground set of size {len(ground)} exceeds cap {GROUND_CAP}")
    order = {x: i for i, x in enumerate(ground)}
    key = lambda S: (len(S), sorted(order[x] for x in S))
    checks, wit = {}, {}
    checks["contains_empty"] = frozenset() in fam
    if not checks["contains_empty"]:
        wit["contains_empty"] = ()
    checks["hereditary"] = True
    for S in sorted(fam, key=key):
        bad = next((S - {x} for x in _sorted_set(S, order) if S - {x} not in fam), None)
        if bad is not None:
            checks["hereditary"] = False
            wit["hereditary"] = _sorted_set(S, order)
            break
    checks["exchange"] = True
    fam_sorted = sorted(fam, key=key)
    for S in fam_sorted:
        for T in fam_sorted:
            if len(S) < len(T) and not any(S | {x} in fam for x in T - S):
                checks["exchange"] = False
                wit["exchange"] = (_sorted_set(S, order), _sorted_set(T, order))
                break
        if not checks["exchange"]:
            break
    return AxiomReport(all(checks.values()), checks, wit)


class Matroid:
    def __init__(self, ground: Sequence, independents: Iterable[Iterable], name: str = ""):
        self.ground = tuple(str(x) for x in ground)
        self.order = {x: i for i, x in enumerate(self.ground)}
        self.independents = frozenset(frozenset(map(str, S)) for S in independents)
        self.name = name

    def __repr__(self) -> str:
        return f"Matroid({self.name or 'explicit'}, n={len(self.ground)}, rank={self.rank})"

    @cached_property
    def by_size(self) -> list[list[frozenset]]:
        r = max((len(S) for S in self.independents), default=0)
        out = [[] for _ in range(r + 1)]
        for S in self.independents:
            out[len(S)].append(S)
        for lst in out:
            lst.sort(key=lambda S: sorted(self.order[x] for x in S))
        return out

    @property
    def rank(self) -> int:
        return len(self.by_size) - 1

    def I(self, k: int) -> int:
        return len(self.by_size[k]) if 0 <= k <= self.rank else 0

    def is_independent(self, S) -> bool:
        return frozenset(S) in self.independents

    def rank_of(self, S) -> int:
        S = frozenset(S)
        return max(len(A) for A in self.independents if A <= S)

    def cnt(self, S) -> tuple:
        S = frozenset(S)
        return tuple(x for x in self.ground if x not in S and (S | {x}) in self.independents)

    def par(self, S) -> list[tuple]:
        """Parallel classes of Cnt(S): x ~ y iff S+x+y is dependent (or x = y)."""
        S = frozenset(S)
        return _classes(self.cnt(S), lambda x, y: (S | {x, y}) not in self.independents)

    def to_dict(self) -> dict:
        return {
            "type": "explicit",
            "ground": list(self.ground),
            "independents": [list(_sorted_set(S, self.order)) for lst in self.by_size for S in lst],
        }


def _classes(items: Sequence, related) -> list[tuple]:
    classes: list[list] = []
    for x in items:
        for C in classes:
            if related(C[0], x):
                C.append(x)
                break
        else:
            classes.append([x])
    return [tuple(C) for C in classes]


def _is_equivalence(items: Sequence, related) -> bool:
    rel = lambda x, y: x == y or related(x, y)
    for x, y in product(items, repeat=2):
        if rel(x, y) != rel(y, x):
            return False
    for x, y, z in product(items, repeat=3):
        if rel(x, y) and rel(y, z) and not rel(x, z):
            return False
    return True


def _rank_mod_p(vectors: list[list[int]], p: int) -> int:
    rows = [[v % p for v in vec] for vec in vectors]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], p - 2, p)
        rows[rank] = [(v * inv) % p for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [(a - f * b) % p for a, b in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def _is_prime(q: int) -> bool:
    return q >= 2 and all(q % d for d in range(2, math.isqrt(q) + 1))


def _is_forest(edges: list[tuple]) -> bool:
    parent: dict = {}

    def find(a):
        while parent.setdefault(a, a) != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def graph_edges(graph: Mapping) -> tuple[list[str], dict[str, tuple]]:
    """Normalize {"vertices": [...], "edges": {label: [u, v]} | [[u, v], ...]}."""
    raw = graph.get("edges", [])
    if isinstance(raw, Mapping):
        edges = {str(k): (str(v[0]), str(v[1])) for k, v in raw.items()}
    else:
        edges = {}
        for i, e in enumerate(raw):
            if len(e) == 3:
                edges[str(e[0])] = (str(e[1]), str(e[2]))
            else:
                edges[f"e{i + 1}"] = (str(e[0]), str(e[1]))
    vertices = [str(v) for v in graph.get("vertices", [])]
    for u, v in edges.values():
        if u == v:
            raise BadParams("loops are not allowed in graphic inputs")
        for x in (u, v):
            if x not in vertices:
                vertices.append(x)
    return vertices, edges


def build_matroid(kind: str, params: Mapping | None = None) -> Matroid:
    params = dict(params or {})
    try:
        if kind == "free":
            n = int(params["n"])
            ground = params.get("ground") or [str(i) for i in range(1, n + 1)]
            M = Matroid(ground, _all_subsets(ground, n), f"free({n})")
        elif kind == "uniform":
            n, r = int(params["n"]), int(params["r"])
            if not 0 <= r <= n:
                raise BadParams("need 0 <= r <= n")
            ground = params.get("ground") or [str(i) for i in range(1, n + 1)]
            M = Matroid(ground, _all_subsets(ground, r), f"U({n},{r})")
        elif kind == "graphic":
            _, edges = graph_edges(params.get("graph", params))
            labels = list(edges)
            if len(labels) > GROUND_CAP:
                raise TooLarge("graph has too many edges")
            ind = [S for S in _all_subsets(labels, len(labels)) if _is_forest([edges[e] for e in S])]
            M = Matroid(labels, ind, "graphic")
        elif kind == "vector_gf":
            q = int(params["q"])
            if not _is_prime(q):
                raise BadParams("only prime q is supported")
            vecs = [list(map(int, v)) for v in params["vectors"]]
            labels = [str(x) for x in params.get("labels") or [f"v{i + 1}" for i in range(len(vecs))]]
            if len(labels) > GROUND_CAP:
                raise TooLarge("too many vectors")
            idx = dict(zip(labels, vecs))
            ind = [
                S
                for S in _all_subsets(labels, len(labels))
                if not S or _rank_mod_p([idx[x] for x in S], q) == len(S)
            ]
            M = Matroid(labels, ind, f"GF({q})")
        elif kind == "steiner":
            t, m, n = int(params["t"]), int(params["m"]), int(params["n"])
            ground = [str(x) for x in params.get("ground") or range(1, n + 1)]
            blocks = [frozenset(map(str, B)) for B in params["blocks"]]
            _check_steiner(t, m, ground, blocks)
            ind = [S for S in _all_subsets(ground, t)]
            ind += [S for S in combinations(ground, t + 1) if not any(set(S) <= B for B in blocks)]
            M = Matroid(ground, ind, f"S({t},{m},{n})")
        elif kind == "explicit":
            ground = [str(x) for x in params["ground"]]
            M = Matroid(ground, params["independents"], "explicit")
        else:
            raise BadParams(f"unknown matroid kind {kind!r}")
    except (KeyError, TypeError, ValueError) as exc:
        raise BadParams(f"bad parameters for {kind}: {exc}") from exc
    if len(M.ground) > GROUND_CAP:
        raise TooLarge(f"ground set exceeds cap {GROUND_CAP}")
    rep = check_matroid_axioms(M.independents, M.ground)
    if not rep.ok:
        raise AxiomViolation(f"{kind} input violates matroid axioms: {rep.checks}", witness=rep.witnesses)
    return M


def matroid_from_dict(data: Mapping) -> Matroid:
    if "type" not in data:
        raise BadParams("matroid description needs a 'type'")
    return build_matroid(data["type"], {k: v for k, v in data.items() if k != "type"})


def _all_subsets(ground, max_size):
    out = []
    for k in range(max_size + 1):
        out.extend(combinations(ground, k))
    return out


def _check_steiner(t, m, ground, blocks):
    if not t < m < len(ground):
        raise AxiomViolation("Steiner system needs t < m < n")
    if any(len(B) != m or not B <= set(ground) for B in blocks):
        raise AxiomViolation("every block must be an m-subset of the ground set")
    for T in combinations(ground, t):
        hits = sum(1 for B in blocks if set(T) <= B)
        if hits != 1:
            raise AxiomViolation(f"t-subset {T} lies in {hits} blocks", witness=T)


# ---------------------------------------------------------------------------
# discrete polymatroids


class DiscretePolymatroid:
    def __init__(self, n: int, independents: Iterable[Sequence[int]], name: str = ""):
        self.n = int(n)
        self.independents = frozenset(tuple(int(v) for v in a) for a in independents)
        if any(len(a) != self.n for a in self.independents):
            raise BadParams("vector length does not match n")
        self.name = name

    def __repr__(self) -> str:
        return f"DiscretePolymatroid({self.name or 'explicit'}, n={self.n}, rank={self.rank})"

    @cached_property
    def by_size(self) -> list[list[tuple]]:
        r = max((sum(a) for a in self.independents), default=0)
        out = [[] for _ in range(r + 1)]
        for a in sorted(self.independents):
            out[sum(a)].append(a)
        return out

    @property
    def rank(self) -> int:
        return len(self.by_size) - 1

    def J(self, k: int) -> int:
        return len(self.by_size[k]) if 0 <= k <= self.rank else 0

    def contains(self, a) -> bool:
        return tuple(a) in self.independents

    def cnt(self, a) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if _plus(a, i) in self.independents)

    def par(self, a) -> list[tuple]:
        return _classes(self.cnt(a), lambda i, j: _plus(_plus(a, i), j) not in self.independents)

    @property
    def nondegenerate(self) -> bool:
        return all(_plus((0,) * self.n, i) in self.independents for i in range(self.n))

    def to_dict(self) -> dict:
        return {"n": self.n, "independents": [list(a) for lst in self.by_size for a in lst]}


def _plus(a, i, by: int = 1) -> tuple:
    a = list(a)
    a[i] += by
    return tuple(a)


def check_polymatroid_axioms(D: DiscretePolymatroid) -> AxiomReport:
    checks, wit = {}, {}
    J = D.independents
    checks["contains_zero"] = (0,) * D.n in J
    checks["hereditary"] = True
    for a in sorted(J):
        for i in range(D.n):
            if a[i] > 0 and _plus(a, i, -1) not in J:
                checks["hereditary"] = False
                wit["hereditary"] = a
                break
        if not checks["hereditary"]:
            break
    checks["exchange"] = True
    for a in sorted(J):
        for b in sorted(J):
            if sum(a) < sum(b) and not any(a[i] < b[i] and _plus(a, i) in J for i in range(D.n)):
                checks["exchange"] = False
                wit["exchange"] = (a, b)
                break
        if not checks["exchange"]:
            break
    return AxiomReport(all(checks.values()), checks, wit)


def build_polymatroid(kind: str, params: Mapping | None = None) -> DiscretePolymatroid:
    """Polymatroid builders: "ball" {|a| <= r}, "box" with caps, "explicit", "matroid"."""
    params = dict(params or {})
    try:
        if kind == "ball":
            n, r = int(params["n"]), int(params["r"])
            vecs = [a for a in product(range(r + 1), repeat=n) if sum(a) <= r]
            D = DiscretePolymatroid(n, vecs, f"ball({n},{r})")
        elif kind == "box":
            caps = [int(c) for c in params["caps"]]
            r = int(params.get("r", sum(caps)))
            vecs = [a for a in product(*(range(c + 1) for c in caps)) if sum(a) <= r]
            D = DiscretePolymatroid(len(caps), vecs, "box")
        elif kind == "explicit":
            D = DiscretePolymatroid(int(params["n"]), params["independents"], "explicit")
        elif kind == "matroid":
            M = params["matroid"]
            if not isinstance(M, Matroid):
                M = matroid_from_dict(M)
            D = matroid_as_polymatroid(M)
        else:
            raise BadParams(f"unknown polymatroid kind {kind!r}")
    except (KeyError, TypeError, ValueError) as exc:
        raise BadParams(f"bad parameters for {kind}: {exc}") from exc
    rep = check_polymatroid_axioms(D)
    if not rep.ok:
        raise AxiomViolation(f"polymatroid axioms fail: {rep.checks}", witness=rep.witnesses)
    return D


def polymatroid_from_dict(data: Mapping) -> DiscretePolymatroid:
    if "type" not in data:
        raise BadParams("polymatroid description needs a 'type'")
    return build_polymatroid(data["type"], {k: v for k, v in data.items() if k != "type"})


def matroid_as_polymatroid(M: Matroid) -> DiscretePolymatroid:
    vecs = [tuple(1 if x in S else 0 for x in M.ground) for S in M.independents]
    return DiscretePolymatroid(len(M.ground), vecs, f"poly[{M.name}]")


# ---------------------------------------------------------------------------
# greedoid languages


@dataclass(frozen=True)
class GreedoidFlags:
    is_greedoid: bool
    is_interval: bool
    is_weak_local: bool
    is_antimatroid: bool
    witnesses: dict = field(default_factory=dict)


def check_greedoid_axioms(words: Iterable[Sequence], alphabet: Sequence | None = None) -> GreedoidFlags:
    L = {tuple(w) for w in words}
    if alphabet is None:
        seen = []
        for w in sorted(L, key=lambda w: (len(w), w)):
            for x in w:
                if x not in seen:
                    seen.append(x)
        alphabet = seen
    alphabet = tuple(alphabet)
    order = {x: i for i, x in enumerate(alphabet)}
    for w in L:
        if len(set(w)) != len(w):
            raise AxiomViolation(f"word {w!r} is not simple", witness=w)
        if any(x not in order for x in w):
            raise AxiomViolation(f"word {w!r} uses letters outside the alphabet", witness=w)
    if () not in L:
        raise NotPrefixClosed("the empty word is missing", witness=())
    wkey = lambda w: (len(w), [order[x] for x in w])
    for w in sorted(L, key=wkey):
        if w[:-1] not in L:
            raise NotPrefixClosed(f"prefix of {w!r} is missing", witness=w)
    if len(L) > WORD_CAP:
        raise TooLarge(f"language has {len(L)} words")
    words_sorted = sorted(L, key=wkey)
    by_len: dict[int, list] = {}
    for w in words_sorted:
        by_len.setdefault(len(w), []).append(w)
    sets_by_len = {k: sorted({frozenset(w) for w in ws}, key=lambda s: sorted(order[x] for x in s))
                   for k, ws in by_len.items()}
    wit = {}

    # exchange: enough to compare beta with the letter sets of words one longer
    greedoid = True
    for beta in words_sorted:
        for S in sets_by_len.get(len(beta) + 1, ()):
            if not any(beta + (x,) in L for x in S):
                greedoid = False
                wit["exchange"] = (beta, tuple(sorted(S, key=order.__getitem__)))
                break
        if not greedoid:
            break

    interval = True
    for w in words_sorted:
        if not interval:
            break
        x = w[-1] if w else None
        for a in range(len(w)):
            alpha = w[:a]
            if alpha + (x,) not in L:
                continue
            for b in range(a, len(w) - 1):
                if w[:b] + (x,) not in L:
                    interval = False
                    wit["interval"] = (alpha, w[a:b], w[b:-1], x)
                    break
            if not interval:
                break

    weak_local = True
    for w in words_sorted:
        if len(w) < 3:
            continue
        alpha, x, y, z = w[:-3], w[-3], w[-2], w[-1]
        if alpha + (x, z) in L and alpha + (y, z) in L and alpha + (z,) not in L:
            weak_local = False
            wit["weak_local"] = (alpha, x, y, z)
            break

    antimatroid = all(any(x in w for w in L) for x in alphabet)
    if not antimatroid:
        wit["antimatroid"] = next(x for x in alphabet if not any(x in w for w in L))
    else:
        all_sets = sorted({frozenset(w) for w in L}, key=lambda s: (len(s), sorted(order[x] for x in s)))
        for beta in words_sorted:
            bs = set(beta)
            for S in all_sets:
                if S - bs and not any(beta + (y,) in L for y in S if y not in bs):
                    antimatroid = False
                    wit["antimatroid"] = (tuple(sorted(S, key=order.__getitem__)), beta)
                    break
            if not antimatroid:
                break
    return GreedoidFlags(greedoid, greedoid and interval, weak_local, antimatroid, wit)


class GreedoidLanguage:
    def __init__(self, alphabet: Sequence, words: Iterable[Sequence], name: str = "", check: bool = True):
        self.alphabet = tuple(alphabet)
        self.order = {x: i for i, x in enumerate(self.alphabet)}
        self.words = frozenset(tuple(w) for w in words)
        self.name = name
        self._flags = check_greedoid_axioms(self.words, self.alphabet) if check else None

    @property
    def flags(self) -> GreedoidFlags:
        if self._flags is None:
            self._flags = check_greedoid_axioms(self.words, self.alphabet)
        return self._flags

    def __repr__(self) -> str:
        return f"GreedoidLanguage({self.name or 'explicit'}, |X|={len(self.alphabet)}, |L|={len(self.words)})"

    def __contains__(self, w) -> bool:
        return tuple(w) in self.words

    @cached_property
    def by_length(self) -> list[list[tuple]]:
        r = max((len(w) for w in self.words), default=0)
        out = [[] for _ in range(r + 1)]
        for w in self.words:
            out[len(w)].append(w)
        for lst in out:
            lst.sort(key=lambda w: [self.order[x] for x in w])
        return out

    @property
    def rank(self) -> int:
        return len(self.by_length) - 1

    def cnt(self, alpha) -> tuple:
        alpha = tuple(alpha)
        s = set(alpha)
        return tuple(x for x in self.alphabet if x not in s and alpha + (x,) in self.words)

    def completions(self, alpha, k: int) -> list[tuple]:
        """Cnt_k(alpha): words beta of length k with alpha+beta in L."""
        alpha = tuple(alpha)
        if alpha not in self.words:
            return []
        out = [()]
        for _ in range(k):
            out = [b + (x,) for b in out for x in self.cnt(alpha + b)]
        return out

    def to_dict(self) -> dict:
        return {
            "type": "explicit",
            "alphabet": list(self.alphabet),
            "words": [list(w) for lst in self.by_length for w in lst],
        }


def lift_to_greedoid(source, max_length: int | None = None) -> GreedoidLanguage:
    """Greedoid language of a matroid, polymatroid, poset or rooted digraph.

    ``max_length`` truncates the language (a truncated greedoid is again a
    greedoid); it exists to keep large antimatroids tractable.
    """
    cap = math.inf if max_length is None else max_length
    if isinstance(source, Matroid):
        words = []
        for S in source.independents:
            if len(S) <= cap:
                from itertools import permutations

                words.extend(permutations(_sorted_set(S, source.order)))
        if len(words) > WORD_CAP:
            raise TooLarge("lifted language too large")
        return GreedoidLanguage(source.ground, words, f"lift[{source.name}]")
    if isinstance(source, DiscretePolymatroid):
        return _lift_polymatroid(source, cap)
    if isinstance(source, Poset):
        return _lift_poset(source, cap)
    if isinstance(source, Mapping) and "root" in source:
        return _lift_branching(source, cap)
    raise BadParams(f"cannot lift {type(source).__name__}")


def poly_letter(i: int, j: int) -> str:
    """Letter x_ij of the polymatroid lift (i is 1-based, j-th copy of e_i)."""
    return f"x{i}_{j}"


def poly_letter_parse(x: str) -> tuple[int, int]:
    i, j = x[1:].split("_")
    return int(i), int(j)


def _lift_polymatroid(D: DiscretePolymatroid, cap) -> GreedoidLanguage:
    top = [max((a[i] for a in D.independents), default=0) for i in range(D.n)]
    alphabet = [poly_letter(i + 1, j) for i in range(D.n) for j in range(1, top[i] + 1)]
    words = [()]
    frontier = [((), (0,) * D.n)]
    while frontier:
        nxt = []
        for w, a in frontier:
            if len(w) >= cap:
                continue
            for i in range(D.n):
                b = _plus(a, i)
                if b in D.independents:
                    w2 = w + (poly_letter(i + 1, b[i]),)
                    words.append(w2)
                    nxt.append((w2, b))
        if len(words) > WORD_CAP:
            raise TooLarge("lifted language too large")
        frontier = nxt
    return GreedoidLanguage(alphabet, words, f"lift[{D.name}]")


def _lift_poset(P: Poset, cap) -> GreedoidLanguage:
    words = [()]
    frontier = [()]
    while frontier:
        nxt = []
        for w in frontier:
            if len(w) >= cap:
                continue
            s = set(w)
            for x in P.elements:
                if x not in s and all(y in s for y in P.below(x)):
                    nxt.append(w + (x,))
        words.extend(nxt)
        if len(words) > WORD_CAP:
            raise TooLarge("poset antimatroid language too large")
        frontier = nxt
    return GreedoidLanguage(P.elements, words, "antimatroid")


def _lift_branching(source: Mapping, cap) -> GreedoidLanguage:
    root = str(source["root"])
    raw = source["edges"]
    if isinstance(raw, Mapping):
        edges = {str(k): (str(v[0]), str(v[1])) for k, v in raw.items()}
    else:
        edges = {f"{u}->{v}": (str(u), str(v)) for u, v in raw}
    labels = list(edges)
    words = [()]
    frontier = [((), frozenset([root]))]
    while frontier:
        nxt = []
        for w, verts in frontier:
            if len(w) >= cap:
                continue
            for e in labels:
                u, v = edges[e]
                if v in verts and u not in verts:
                    w2 = w + (e,)
                    words.append(w2)
                    nxt.append((w2, verts | {u}))
        if len(words) > WORD_CAP:
            raise TooLarge("branching language too large")
        frontier = nxt
    return GreedoidLanguage(labels, words, "branching")


def greedoid_from_dict(data: Mapping) -> GreedoidLanguage:
    from .poset import poset_from_dict

    kind = data.get("type")
    if kind == "from_matroid":
        return lift_to_greedoid(matroid_from_dict(data["matroid"]), data.get("max_length"))
    if kind == "from_polymatroid":
        return lift_to_greedoid(polymatroid_from_dict(data["polymatroid"]), data.get("max_length"))
    if kind == "poset_antimatroid":
        return lift_to_greedoid(poset_from_dict(data["poset"]), data.get("max_length"))
    if kind == "branching":
        return lift_to_greedoid({"root": data["root"], "edges": data["edges"]}, data.get("max_length"))
    if kind == "explicit":
        words = [tuple(map(str, w)) for w in data["words"]]
        alphabet = data.get("alphabet")
        return GreedoidLanguage(alphabet if alphabet is not None else _alphabet_of(words), words, "explicit")
    raise BadParams(f"unknown greedoid type {kind!r}")


def _alphabet_of(words):
    seen = []
    for w in sorted(words, key=lambda w: (len(w), w)):
        for x in w:
            if x not in seen:
                seen.append(x)
    return seen


# ---------------------------------------------------------------------------
# derived data


@dataclass(frozen=True)
class DerivedData:
    alpha: tuple
    cnt: tuple
    par: list
    des: dict
    pas: dict
    act: dict
    equivalence_ok: bool


def derived_data(G: GreedoidLanguage, alpha: Sequence) -> DerivedData:
    alpha = tuple(alpha)
    if alpha not in G.words:
        raise WordNotInLanguage(f"{alpha!r} is not in the language", witness=alpha)
    L = G.words
    cnt = G.cnt(alpha)
    rel = lambda x, y: alpha + (x, y) not in L
    par = _classes(cnt, rel)
    des = {
        x: tuple(y for y in G.alphabet if alpha + (x, y) in L and alpha + (y,) not in L)
        for x in cnt
    }
    pas, act = {}, {}
    for x, y in product(cnt, repeat=2):
        if x == y:
            continue
        P, A = [], []
        for z in G.alphabet:
            if z in (x, y) or alpha + (z,) in L or alpha + (x, y, z) not in L:
                continue
            xz, yz = alpha + (x, z) in L, alpha + (y, z) in L
            if not xz and not yz:
                P.append(z)
            elif xz and yz:
                A.append(z)
        pas[(x, y)] = tuple(P)
        act[(x, y)] = tuple(A)
    return DerivedData(alpha, cnt, par, des, pas, act, _is_equivalence(cnt, rel))


def parallel_classes(struct, obj) -> list[tuple]:
    if isinstance(struct, Matroid):
        return struct.par(obj)
    if isinstance(struct, DiscretePolymatroid):
        return struct.par(obj)
    if isinstance(struct, GreedoidLanguage):
        return derived_data(struct, obj).par
    raise BadParams(f"no parallel classes for {type(struct).__name__}")


def continuation_number(struct, k: int) -> int:
    """p(k): the largest number of parallel classes over objects of size k."""
    if isinstance(struct, MatroidMorphism):
        if not 0 <= k < struct.source.rank:
            raise RankOutOfRange(f"k={k} outside [0, {struct.source.rank})")
        B = struct.bases_by_size().get(k, [])
        return max((len(struct.source.par(S)) for S in B), default=0)
    rank = struct.rank
    if not 0 <= k < rank:
        raise RankOutOfRange(f"k={k} outside [0, {rank})")
    if isinstance(struct, Matroid):
        return max(len(struct.par(S)) for S in struct.by_size[k])
    if isinstance(struct, DiscretePolymatroid):
        return max(len(struct.par(a)) for a in struct.by_size[k])
    if isinstance(struct, GreedoidLanguage):
        return max(len(derived_data(struct, a).par) for a in struct.by_length[k])
    raise BadParams(f"no continuation number for {type(struct).__name__}")


def girth_and_polygirth(struct):
    """Girth of a matroid or polygirth of a nondegenerate polymatroid.

    Returns ``math.inf`` when no size witnesses a dependency (e.g. free matroids).
    """
    if isinstance(struct, Matroid):
        n = len(struct.ground)
        for k in range(n + 1):
            if struct.I(k) < comb(n, k):
                return k
        return math.inf
    if isinstance(struct, DiscretePolymatroid):
        if not struct.nondegenerate:
            missing = next(i for i in range(struct.n) if _plus((0,) * struct.n, i) not in struct.independents)
            raise Degenerate(f"e_{missing + 1} is not independent", witness=missing + 1)
        n = struct.n
        for k in range(struct.rank + 2):
            if struct.J(k) < comb(n + k - 1, k):
                return k
        return math.inf
    raise BadParams(f"no girth for {type(struct).__name__}")


# ---------------------------------------------------------------------------
# morphisms


class MatroidMorphism:
    def __init__(self, source: Matroid, target: Matroid, phi: Mapping):
        self.source = source
        self.target = target
        self.phi = {str(k): str(v) for k, v in phi.items()}
        missing = [x for x in source.ground if x not in self.phi]
        if missing:
            raise BadParams(f"phi is undefined on {missing[0]!r}")
        bad = [x for x in source.ground if self.phi[x] not in target.order]
        if bad:
            raise BadParams(f"phi({bad[0]!r}) is not in the target ground set")
        self._g: dict[frozenset, int] = {}

    def f(self, S) -> int:
        return self.source.rank_of(S)

    def g_phi(self, S) -> int:
        image = frozenset(self.phi[x] for x in S)
        if image not in self._g:
            self._g[image] = self.target.rank_of(image)
        return self._g[image]

    def is_basis(self, S) -> bool:
        return self.source.is_independent(S) and self.g_phi(S) == self.target.rank

    def bases_by_size(self) -> dict[int, list[frozenset]]:
        out = {}
        for k, lst in enumerate(self.source.by_size):
            out[k] = [S for S in lst if self.g_phi(S) == self.target.rank]
        return out

    def validate(self) -> None:
        X = self.source.ground
        for S in sorted(_all_subsets(X, len(X)), key=lambda s: (len(s), [self.source.order[x] for x in s])):
            S = frozenset(S)
            for x in X:
                if x in S:
                    continue
                T = S | {x}
                if self.g_phi(T) - self.g_phi(S) > self.f(T) - self.f(S):
                    raise NotAMorphism(
                        "rank condition fails",
                        witness=(_sorted_set(S, self.source.order), _sorted_set(T, self.source.order)),
                    )


@dataclass(frozen=True)
class MorphismOps:
    valid: bool
    bases_by_size: dict
    exchange_ok: bool
    exchange_witnesses: dict


def morphism_ops(phi: MatroidMorphism) -> MorphismOps:
    phi.validate()
    B = phi.bases_by_size()
    order = phi.source.order
    wits = {}
    ok = True
    for k, lst in B.items():
        for S, T in product(lst, repeat=2):
            if S == T:
                continue
            found = None
            for z in _sorted_set(S - T, order):
                for w in _sorted_set(T - S, order):
                    if phi.is_basis((S - {z}) | {w}):
                        found = (z, w)
                        break
                if found:
                    break
            if found is None:
                ok = False
            wits[(_sorted_set(S, order), _sorted_set(T, order))] = found
    return MorphismOps(True, B, ok, wits)


def morphism_from_dict(data: Mapping) -> MatroidMorphism:
    try:
        return MatroidMorphism(matroid_from_dict(data["source"]), matroid_from_dict(data["target"]), data["phi"])
    except KeyError as exc:
        raise BadParams(f"morphism description is missing {exc}") from exc
