"""Finite posets, linear extensions, ideals and the built-in poset families."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Iterable, Mapping, Sequence

from .errors import (
    BadParams,
    CycleDetected,
    MissingWeights,
    NonPositiveWeight,
    NotAnExtension,
    TooLarge,
    UnknownElement,
)
from .rational import Q

DEFAULT_CAP = 12


class Poset:
    """A finite poset on string labels, stored as a transitively closed relation.

    ``less[i][j]`` is True iff element i is strictly below element j.
    Internal indices follow the input order of ``elements``.
    """

    def __init__(self, elements: Sequence[str], less: Sequence[Sequence[bool]], weights=None):
        self.elements = tuple(elements)
        self.index = {x: i for i, x in enumerate(self.elements)}
        self.less = tuple(tuple(bool(b) for b in row) for row in less)
        self.weights = None if weights is None else {x: Q(weights[x]) for x in self.elements}

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        rel = [(x, y) for x, y in self.cover_pairs]
        return f"Poset({list(self.elements)!r}, covers={rel!r})"

    def _i(self, x) -> int:
        try:
            return self.index[x]
        except KeyError:
            raise UnknownElement(f"unknown element {x!r}", witness=x) from None

    def lt(self, x, y) -> bool:
        return self.less[self._i(x)][self._i(y)]

    def comparable(self, x, y) -> bool:
        i, j = self._i(x), self._i(y)
        return i == j or self.less[i][j] or self.less[j][i]

    def below(self, x) -> tuple:
        j = self._i(x)
        return tuple(y for i, y in enumerate(self.elements) if self.less[i][j])

    def above(self, x) -> tuple:
        i = self._i(x)
        return tuple(y for j, y in enumerate(self.elements) if self.less[i][j])

    def inc(self, x) -> tuple:
        return tuple(y for y in self.elements if not self.comparable(x, y))

    @cached_property
    def cover_pairs(self) -> tuple:
        n = len(self.elements)
        out = []
        for i in range(n):
            for j in range(n):
                if self.less[i][j] and not any(self.less[i][k] and self.less[k][j] for k in range(n)):
                    out.append((self.elements[i], self.elements[j]))
        return tuple(out)

    def covers(self, x) -> tuple:
        """Cov(x): the elements covering x."""
        return tuple(y for a, y in self.cover_pairs if a == x)

    def lower_covers(self, x) -> tuple:
        return tuple(a for a, y in self.cover_pairs if y == x)

    def minimal(self) -> tuple:
        return tuple(x for x in self.elements if not self.below(x))

    def maximal(self) -> tuple:
        return tuple(x for x in self.elements if not self.above(x))

    @cached_property
    def height(self) -> int:
        """Number of elements in a longest chain."""
        best: dict[str, int] = {}
        for x in self.topological_order:
            best[x] = 1 + max((best[y] for y in self.lower_covers(x)), default=0)
        return max(best.values(), default=0)

    @cached_property
    def topological_order(self) -> tuple:
        order, done = [], set()
        while len(order) < len(self.elements):
            for x in self.elements:
                if x not in done and all(y in done for y in self.below(x)):
                    order.append(x)
                    done.add(x)
                    break
        return tuple(order)

    def is_lower_ideal(self, S: Iterable) -> bool:
        S = set(S)
        return all(y in S for x in S for y in self.below(x))

    def lower_ideals(self) -> list[frozenset]:
        ideals = {frozenset()}
        frontier = [frozenset()]
        while frontier:
            nxt = []
            for S in frontier:
                for x in self.elements:
                    if x not in S and all(y in S for y in self.below(x)):
                        T = S | {x}
                        if T not in ideals:
                            ideals.add(T)
                            nxt.append(T)
            frontier = nxt
        return sorted(ideals, key=lambda s: (len(s), sorted(self.index[x] for x in s)))

    def with_weights(self, weights: Mapping) -> "Poset":
        return _validated(self.elements, self.less, weights)

    def is_extension(self, word: Sequence) -> bool:
        if sorted(map(self._i, word)) != list(range(len(self.elements))):
            return False
        pos = {x: k for k, x in enumerate(word)}
        return all(pos[a] < pos[b] for a, b in self.cover_pairs)

    def is_feasible_word(self, word: Sequence) -> bool:
        """Simple word in which every element is preceded by everything below it."""
        seen = set()
        for x in word:
            if x in seen or any(y not in seen for y in self.below(x)):
                return False
            seen.add(x)
        return True

    def to_dict(self) -> dict:
        d = {"elements": list(self.elements), "relations": [list(p) for p in self.cover_pairs]}
        if self.weights is not None:
            d["weights"] = dict(self.weights)
        return d


def _validated(elements, less, weights) -> Poset:
    if weights is not None:
        missing = [x for x in elements if x not in weights]
        if missing:
            raise MissingWeights(f"no weight for {missing[0]!r}", witness=missing[0])
        for x in elements:
            if Q(weights[x]) <= 0:
                raise NonPositiveWeight(f"weight of {x!r} is not positive", witness=x)
    return Poset(elements, less, weights)


def build_poset(elements: Sequence, relations: Iterable = (), weights: Mapping | None = None) -> Poset:
    """Poset generated by ``relations`` (pairs (x, y) meaning x < y)."""
    elements = [str(x) for x in elements]
    if len(set(elements)) != len(elements):
        raise BadParams("duplicate elements")
    idx = {x: i for i, x in enumerate(elements)}
    n = len(elements)
    less = [[False] * n for _ in range(n)]
    for pair in relations:
        x, y = (str(v) for v in pair)
        for v in (x, y):
            if v not in idx:
                raise UnknownElement(f"relation mentions unknown element {v!r}", witness=v)
        if x == y:
            raise CycleDetected(f"reflexive relation on {x!r}", witness=(x, y))
        less[idx[x]][idx[y]] = True
    for k in range(n):
        for i in range(n):
            if less[i][k]:
                row_k = less[k]
                row_i = less[i]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = True
    for i in range(n):
        if less[i][i]:
            raise CycleDetected(f"cycle through {elements[i]!r}", witness=elements[i])
    if weights is not None:
        weights = {str(k): v for k, v in weights.items()}
    return _validated(elements, less, weights)


def poset_from_dict(data: Mapping) -> Poset:
    try:
        return build_poset(data["elements"], data.get("relations", ()), data.get("weights"))
    except (KeyError, TypeError) as exc:
        raise BadParams(f"malformed poset description: {exc}") from exc


def linear_extensions(P: Poset, cap: int = DEFAULT_CAP) -> list[tuple]:
    """All linear extensions, in lexicographic order of element indices.

    The result is memoized on the poset (its relation is immutable); callers
    get a fresh list each time.
    """
    n = len(P)
    if n > cap:
        raise TooLarge(f"{n} elements exceeds the enumeration cap {cap}")
    cached = P.__dict__.get("_extensions")
    if cached is not None:
        return list(cached)
    below = [[i for i in range(n) if P.less[i][j]] for j in range(n)]
    out: list[tuple] = []
    word: list[int] = []
    placed = [False] * n

    def rec():
        if len(word) == n:
            out.append(tuple(P.elements[i] for i in word))
            return
        for j in range(n):
            if not placed[j] and all(placed[i] for i in below[j]):
                placed[j] = True
                word.append(j)
                rec()
                word.pop()
                placed[j] = False

    rec()
    P._extensions = tuple(out)
    return out


def ideal_sizes(P: Poset, x) -> tuple[int, int]:
    """(f, g) = sizes of the strict lower and strict upper sets of x."""
    return len(P.below(x)), len(P.above(x))


@dataclass(frozen=True)
class WeightPredicates:
    order_reversing: bool
    cover_monotone: bool
    witnesses: dict = field(default_factory=dict)


def weight_predicates(P: Poset, weights: Mapping | None = None) -> WeightPredicates:
    w = P.weights if weights is None else {x: Q(weights[x]) for x in P.elements}
    if w is None:
        raise MissingWeights("poset carries no weights")
    witnesses = {}
    rev = True
    for x, y in ((x, y) for x in P.elements for y in P.above(x)):
        if w[x] < w[y]:
            rev = False
            witnesses["order_reversing"] = (x, y)
            break
    cm = True
    for x in P.elements:
        if w[x] < sum((w[y] for y in P.covers(x)), Fraction(0)):
            cm = False
            witnesses["cover_monotone"] = x
            break
    return WeightPredicates(rev, cm, witnesses)


def canonical_chain_weights(P: Poset) -> dict[str, Fraction]:
    """omega(x) = number of maximal chains of P starting at x."""
    w: dict[str, Fraction] = {}
    for x in reversed(P.topological_order):
        cov = P.covers(x)
        w[x] = Fraction(1) if not cov else sum((w[y] for y in cov), Fraction(0))
    return {x: w[x] for x in P.elements}


def has_belt(P: Poset, z) -> bool:
    """True iff the elements incomparable to z are empty or form a chain."""
    inc = P.inc(z)
    return all(P.comparable(a, b) for i, a in enumerate(inc) for b in inc[i + 1:])


def adjacent_transposition(P: Poset, word: Sequence, i: int) -> tuple:
    """Swap positions i, i+1 (1-indexed) when the two letters are incomparable."""
    word = tuple(word)
    if not P.is_extension(word):
        raise NotAnExtension(f"{word!r} is not a linear extension", witness=word)
    if not 1 <= i < len(word):
        raise BadParams(f"position {i} out of range")
    a, b = word[i - 1], word[i]
    if P.comparable(a, b):
        return word
    return word[: i - 1] + (b, a) + word[i + 1:]


def is_tree_poset_with_bottom(P: Poset) -> bool:
    """P + a new minimum is a rooted tree poset with all leaves equidistant.

    Equivalently: every element has at most one lower cover, and every
    maximal element sits at the same depth.
    """
    if len(P) == 0:
        return False
    depth = {}
    for x in P.topological_order:
        low = P.lower_covers(x)
        if len(low) > 1:
            return False
        depth[x] = 1 if not low else depth[low[0]] + 1
    return len({depth[x] for x in P.maximal()}) == 1


# ---------------------------------------------------------------------------
# built-in families


def _names(params, n):
    names = params.get("elements")
    if names is None:
        return [str(i) for i in range(1, n + 1)]
    if len(names) != n:
        raise BadParams("elements list has the wrong length")
    return [str(x) for x in names]


def builtin_posets(kind: str, params: Mapping | None = None) -> Poset:
    params = dict(params or {})
    try:
        if kind == "chain":
            n = int(params.get("n", len(params.get("elements", ()))))
            names = _names(params, n)
            return build_poset(names, list(zip(names, names[1:])))
        if kind == "antichain":
            n = int(params.get("n", len(params.get("elements", ()))))
            return build_poset(_names(params, n), [])
        if kind == "permutation":
            sigma = params["sigma"]
            if isinstance(sigma, str):
                sigma = [int(c) for c in sigma]
            sigma = [int(s) for s in sigma]
            n = len(sigma)
            if sorted(sigma) != list(range(1, n + 1)):
                raise BadParams("sigma is not a permutation of 1..n")
            names = [str(i) for i in range(1, n + 1)]
            rel = [
                (names[i], names[j])
                for i in range(n)
                for j in range(i + 1, n)
                if sigma[i] < sigma[j]
            ]
            return build_poset(names, rel)
        if kind == "skew_shape":
            lam = [int(v) for v in params["lambda"]]
            mu = [int(v) for v in params.get("mu", [])]
            mu = mu + [0] * (len(lam) - len(mu))
            if len(mu) > len(lam) or any(m > l for m, l in zip(mu, lam)):
                raise BadParams("mu is not contained in lambda")
            if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)) or any(
                mu[i] < mu[i + 1] for i in range(len(mu) - 1)
            ):
                raise BadParams("partitions must be weakly decreasing")
            cells = [(i, j) for i in range(len(lam)) for j in range(mu[i], lam[i])]
            names = [f"{i},{j}" for i, j in cells]
            dual = bool(params.get("dual", False))
            rel = []
            for a, (i, j) in enumerate(cells):
                for b, (k, l) in enumerate(cells):
                    if (k, l) in ((i + 1, j), (i, j + 1)):
                        rel.append((names[b], names[a]) if dual else (names[a], names[b]))
            return build_poset(names, rel)
        if kind == "tree":
            edges = [tuple(map(str, e)) for e in params["edges"]]
            root = str(params["root"])
            nodes = [root]
            for u, v in edges:
                for x in (u, v):
                    if x not in nodes:
                        nodes.append(x)
            adj = {x: [] for x in nodes}
            for u, v in edges:
                adj[u].append(v)
                adj[v].append(u)
            parent = {root: None}
            order = [root]
            for x in order:
                for y in adj[x]:
                    if y not in parent:
                        parent[y] = x
                        order.append(y)
            if len(parent) != len(nodes) or len(edges) != len(nodes) - 1:
                raise BadParams("edges do not form a tree")
            rel = [(parent[x], x) for x in order if parent[x] is not None]
            return build_poset(order, rel)
        if kind == "grid":
            a, b = int(params["a"]), int(params["b"])
            names = [f"{i},{j}" for i in range(a) for j in range(b)]
            rel = []
            for i in range(a):
                for j in range(b):
                    if i + 1 < a:
                        rel.append((f"{i},{j}", f"{i + 1},{j}"))
                    if j + 1 < b:
                        rel.append((f"{i},{j}", f"{i},{j + 1}"))
            return build_poset(names, rel)
    except (KeyError, TypeError, ValueError) as exc:
        raise BadParams(f"bad parameters for {kind}: {exc}") from exc
    raise BadParams(f"unknown poset kind {kind!r}")


def young_weights(P: Poset) -> dict[str, Fraction]:
    """omega(i,j) = C(i+j, i) on cells labelled "i,j"."""
    out = {}
    for x in P.elements:
        i, j = (int(v) for v in x.split(","))
        out[x] = Fraction(comb(i + j, i))
    return out
