"""Weighted counting sequences and the k-admissibility verifier."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Sequence

from .errors import (
    BadParams,
    NotAParallelClass,
    RankOutOfRange,
    WeightDomainMismatch,
    WordNotInLanguage,
)
from .poset import Poset, linear_extensions
from .rational import Q
from .structures import (
    DiscretePolymatroid,
    GreedoidLanguage,
    Matroid,
    MatroidMorphism,
    derived_data,
    poly_letter_parse,
)

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class CountSeries:
    """values[i] is the count at index start + i; other indices read as 0."""

    kind: str
    values: tuple
    start: int = 0

    def __getitem__(self, k: int) -> Fraction:
        i = k - self.start
        return self.values[i] if 0 <= i < len(self.values) else ZERO

    def __len__(self) -> int:
        return len(self.values)

    def as_dict(self) -> dict[int, Fraction]:
        return {self.start + i: v for i, v in enumerate(self.values)}

    def to_dict(self) -> dict:
        return {"kind": self.kind, "start": self.start, "values": list(self.values)}


def _weights(labels: Sequence, weights) -> dict:
    if weights is None or weights == "uniform":
        return {x: ONE for x in labels}
    w = {str(k): Q(v) for k, v in weights.items()}
    labels = [str(x) for x in labels]
    if set(w) != set(labels):
        extra = sorted(set(w) - set(labels))
        missing = sorted(set(labels) - set(w))
        raise WeightDomainMismatch(
            f"weights do not match the ground set (missing {missing}, extra {extra})",
            witness=(missing or extra)[0],
        )
    if any(v <= 0 for v in w.values()):
        bad = next(x for x in labels if w[x] <= 0)
        raise WeightDomainMismatch(f"weight of {bad!r} is not positive", witness=bad)
    return w


def _prod(values) -> Fraction:
    out = ONE
    for v in values:
        out *= v
    return out


def pi_exponent(a: Sequence[int]) -> int:
    """pi(a) = sum of binom(a_i, 2); zero on 0/1 vectors."""
    return sum(comb(ai, 2) for ai in a)


# ---------------------------------------------------------------------------
# count series


def matroid_series(M: Matroid, weights=None) -> CountSeries:
    w = _weights(M.ground, weights)
    vals = tuple(sum((_prod(w[x] for x in S) for S in lst), ZERO) for lst in M.by_size)
    return CountSeries("I" if weights in (None, "uniform") else "I_omega", vals)


def polymatroid_series(D: DiscretePolymatroid, weights=None, t=1) -> CountSeries:
    t = Q(t)
    if not 0 <= t <= 1:
        raise BadParams("t must lie in [0, 1]")
    w = _weights([str(i + 1) for i in range(D.n)], weights)
    ws = [w[str(i + 1)] for i in range(D.n)]
    vals = []
    for lst in D.by_size:
        total = ZERO
        for a in lst:
            term = t ** pi_exponent(a) * _prod(wi**ai for wi, ai in zip(ws, a))
            total += term / _prod(factorial(ai) for ai in a)
        vals.append(total)
    return CountSeries("J_omega_t", tuple(vals))


def morphism_series(phi: MatroidMorphism, weights=None) -> CountSeries:
    w = _weights(phi.source.ground, weights)
    B = phi.bases_by_size()
    vals = tuple(sum((_prod(w[x] for x in S) for S in B[k]), ZERO) for k in range(len(B)))
    return CountSeries("B_omega", vals)


def antimatroid_series(P: Poset, weights=None) -> CountSeries:
    """L(k) = sum over feasible words of length k of the product of weights.

    Computed over lower ideals: each ideal S contributes e(S) * omega(S), where
    e(S) counts the feasible orderings of S.
    """
    w = _weights(P.elements, weights if weights is not None else P.weights)
    ext = {frozenset(): 1}
    layer = [frozenset()]
    vals = [ONE]
    for _ in range(len(P)):
        nxt: dict[frozenset, int] = {}
        for S in layer:
            for x in P.elements:
                if x not in S and all(y in S for y in P.below(x)):
                    T = S | {x}
                    nxt[T] = nxt.get(T, 0) + ext[S]
        ext.update(nxt)
        layer = list(nxt)
        vals.append(sum((cnt * _prod(w[x] for x in T) for T, cnt in nxt.items()), ZERO))
    return CountSeries("L_omega", tuple(vals))


def stanley_series(P: Poset, z, weights=None, q: Callable | None = None, cap: int | None = None) -> CountSeries:
    """N(k) for k = 1..n; by default N_omega with omega(L) the product below z.

    ``q`` overrides the extension weight: it receives the linear extension and
    the position index of z (0-based) and returns a rational.
    """
    P._i(z)
    if q is None:
        w = _weights(P.elements, weights if weights is not None else P.weights)
        q = lambda L, i: _prod(w[x] for x in L[:i])
    n = len(P)
    vals = [ZERO] * n
    exts = linear_extensions(P) if cap is None else linear_extensions(P, cap)
    for L in exts:
        i = L.index(z)
        vals[i] += q(L, i)
    return CountSeries("N_omega", tuple(vals), start=1)


def language_series(W: "WeightedLanguage") -> CountSeries:
    G = W.language
    return CountSeries("L_q", tuple(sum((W.q(a) for a in lst), ZERO) for lst in G.by_length))


def count_series(struct, weights=None, **params) -> CountSeries:
    """Dispatch on the structure type.

    params: ``t`` for polymatroids; ``z`` for posets (Stanley series, else the
    antimatroid series); ``q`` to override Stanley extension weights.
    """
    if isinstance(struct, WeightedLanguage):
        return language_series(struct)
    if isinstance(struct, MatroidMorphism):
        return morphism_series(struct, weights)
    if isinstance(struct, Matroid):
        return matroid_series(struct, weights)
    if isinstance(struct, DiscretePolymatroid):
        return polymatroid_series(struct, weights, params.get("t", 1))
    if isinstance(struct, Poset):
        if params.get("z") is not None:
            return stanley_series(struct, params["z"], weights, params.get("q"))
        return antimatroid_series(struct, weights)
    if isinstance(struct, GreedoidLanguage):
        return language_series(product_weight(struct, weights))
    raise BadParams(f"no count series for {type(struct).__name__}")


# ---------------------------------------------------------------------------
# weighted languages


class WeightedLanguage:
    """A greedoid language with word weight q and scale sequence c.

    q is extended by 0 outside the language; omega(a) = q(a) / c_|a|.
    """

    def __init__(self, language: GreedoidLanguage, q: Callable[[tuple], Fraction], scale: Sequence | None = None):
        self.language = language
        self._q = q
        m = language.rank
        c = [Q(v) for v in (scale or [])]
        if len(c) > m + 1:
            c = c[: m + 1]
        c += [ONE] * (m + 1 - len(c))
        if any(v <= 0 for v in c):
            raise BadParams("scale sequence must be positive")
        self.scale = tuple(c)
        self._cache: dict[tuple, Fraction] = {}

    def __repr__(self) -> str:
        return f"WeightedLanguage({self.language!r}, scale={[str(c) for c in self.scale]})"

    def c(self, l: int) -> Fraction:
        return self.scale[l] if 0 <= l < len(self.scale) else ONE

    def q(self, word) -> Fraction:
        word = tuple(word)
        if word not in self._cache:
            self._cache[word] = Q(self._q(word)) if word in self.language.words else ZERO
        return self._cache[word]

    def omega(self, word) -> Fraction:
        word = tuple(word)
        return self.q(word) / self.c(len(word))

    def with_scale(self, scale: Sequence) -> "WeightedLanguage":
        return WeightedLanguage(self.language, self._q, scale)


def product_weight(
    G: GreedoidLanguage,
    omega=None,
    c: Sequence | None = None,
    *,
    t=None,
    morphism: MatroidMorphism | None = None,
) -> WeightedLanguage:
    """q(x1..xl) = c_l * prod omega(x_i).

    With ``t`` the language is a polymatroid lift and q(alpha) = c_l
    t^pi(a) omega(a), with omega keyed by element index "1".."n".  With a
    morphism, q vanishes on words whose letter set is not a basis of it.
    """
    scale = [Q(v) for v in (c or [])]
    scale += [ONE] * (G.rank + 1 - len(scale))
    cl = lambda l: scale[l] if l < len(scale) else ONE
    if t is not None:
        t = Q(t)
        if not 0 <= t <= 1:
            raise BadParams("t must lie in [0, 1]")
        n = max((poly_letter_parse(x)[0] for x in G.alphabet), default=0)
        w = _weights([str(i + 1) for i in range(n)], omega)

        def q(word):
            a = [0] * n
            for x in word:
                a[poly_letter_parse(x)[0] - 1] += 1
            return cl(len(word)) * t ** pi_exponent(a) * _prod(w[str(i + 1)] ** ai for i, ai in enumerate(a))

    else:
        w = _weights(G.alphabet, omega)
        if morphism is not None:

            def q(word):
                if not morphism.is_basis(word):
                    return ZERO
                return cl(len(word)) * _prod(w[x] for x in word)

        else:

            def q(word):
                return cl(len(word)) * _prod(w[x] for x in word)

    return WeightedLanguage(G, q, scale)


def refined_scale(rank: int, k: int, p: int, t=0) -> list[Fraction]:
    """Scale with c_l = 1 except c_{k+1} = 1 + (1 - t)/(p - 1 + t)."""
    t = Q(t)
    if p - 1 + t == 0:
        raise BadParams("refined scale undefined: p(k-1) = 1 and t = 0")
    c = [ONE] * (rank + 1)
    if k + 1 <= rank:
        c[k + 1] = 1 + (1 - t) / (p - 1 + t)
    return c


def local_series(W: WeightedLanguage, alpha, k: int) -> Fraction:
    """L_{q,alpha}(k): sum of q(alpha beta) over beta in Cnt_k(alpha)."""
    alpha = tuple(alpha)
    if alpha not in W.language.words:
        raise WordNotInLanguage(f"{alpha!r} is not in the language", witness=alpha)
    return sum((W.q(alpha + b) for b in W.language.completions(alpha, k)), ZERO)


def b_alpha(W: WeightedLanguage, alpha, C) -> Fraction:
    alpha = tuple(alpha)
    d = derived_data(W.language, alpha)
    C = tuple(C)
    if not any(set(C) == set(P) for P in d.par):
        raise NotAParallelClass(f"{C!r} is not a parallel class of {alpha!r}", witness=C)
    return _b(W, alpha, C, d.des)


def _b(W: WeightedLanguage, alpha, C, des) -> Fraction:
    if len(C) >= 2:
        return ZERO
    x = C[0]
    wax = W.omega(alpha + (x,))
    if wax == 0:
        return ZERO
    wa = W.omega(alpha)
    return sum((wa * W.omega(alpha + (x, y)) for y in des[x]), ZERO) / (wax * wax)


# ---------------------------------------------------------------------------
# admissibility


PROPERTIES = ("ContInv", "PAMon", "LogMod", "FewDes", "SynMon", "ScaleMon")


@dataclass
class AdmissibilityReport:
    k: int
    properties: dict = field(default_factory=lambda: {p: True for p in PROPERTIES})
    witnesses: dict = field(default_factory=dict)
    weak_local: bool = False
    pamon_direct: bool = True

    @property
    def ok(self) -> bool:
        return all(self.properties.values())

    def fail(self, prop: str, witness) -> None:
        if self.properties[prop]:
            self.properties[prop] = False
            self.witnesses[prop] = witness

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "ok": self.ok,
            "properties": dict(self.properties),
            "witnesses": self.witnesses,
            "weak_local": self.weak_local,
            "pamon_direct": self.pamon_direct,
        }


def scale_mon_holds(factor: Fraction, bs: Sequence[Fraction]) -> bool:
    """factor * sum 1/(1 - b) <= 1, with b = 1 read in the limit."""
    if factor == 0:
        return True
    if factor < 0:
        return all(b <= 1 for b in bs)
    if any(b >= 1 for b in bs):
        return False
    return factor * sum((1 / (1 - b) for b in bs), ZERO) <= 1


def check_k_admissible(W: WeightedLanguage, k: int, fast: bool = False) -> AdmissibilityReport:
    G = W.language
    if not 1 <= k < G.rank:
        raise RankOutOfRange(f"k={k} outside [1, {G.rank})")
    rep = AdmissibilityReport(k, weak_local=G.flags.is_weak_local)
    rep.pamon_direct = not (fast and rep.weak_local)
    L = G.words
    alphas = [a for l in range(k) for a in G.by_length[l]]

    # ContInv: swap adjacent letters x, y at every position p < k
    for w in sorted(L, key=lambda w: (len(w), [G.order[x] for x in w])):
        for p in range(min(k, len(w) - 1)):
            alpha, x, y = w[:p], w[p], w[p + 1]
            if alpha + (y,) not in L:
                continue
            swapped = alpha + (y, x) + w[p + 2:]
            if W.q(w) != W.q(swapped):
                rep.fail("ContInv", {"word": w, "swapped": swapped})
                break
        if not rep.properties["ContInv"]:
            break

    for alpha in alphas:
        d = derived_data(G, alpha)
        l = len(alpha)
        wa = W.omega(alpha)
        for x in d.cnt:
            for y in d.cnt:
                if x == y:
                    continue
                if G.order[x] < G.order[y] and alpha + (x, y) in L:
                    vals = (W.omega(alpha + (x,)), W.omega(alpha + (y,)), W.omega(alpha + (x, y)))
                    if wa > 0 and all(v > 0 for v in vals) and vals[0] * vals[1] != wa * vals[2]:
                        rep.fail("LogMod", {"alpha": alpha, "x": x, "y": y})
                if rep.pamon_direct:
                    pas, act = d.pas[(x, y)], d.act[(x, y)]
                    for j in range(G.rank - l - 2):
                        lhs = sum((local_series(W, alpha + (x, y, z), j) for z in pas), ZERO)
                        rhs = sum((local_series(W, alpha + (x, y, z), j) for z in act), ZERO)
                        if lhs < rhs:
                            rep.fail("PAMon", {"alpha": alpha, "x": x, "y": y, "k": j})
                            break
                elif d.act[(x, y)]:
                    rep.fail("PAMon", {"alpha": alpha, "x": x, "y": y, "active": d.act[(x, y)]})
        for C in d.par:
            if len(C) >= 2:
                bad = next((x for x in C if d.des[x]), None)
                if bad is not None:
                    rep.fail("FewDes", {"alpha": alpha, "class": C, "x": bad})
        for x in d.cnt:
            wax = W.omega(alpha + (x,))
            rhs = sum((wa * W.omega(alpha + (x, y)) for y in d.des[x]), ZERO)
            if wax * wax < rhs:
                rep.fail("SynMon", {"alpha": alpha, "x": x, "lhs": wax * wax, "rhs": rhs})
        factor = 1 - W.c(l + 1) ** 2 / (W.c(l) * W.c(l + 2))
        bs = [_b(W, alpha, C, d.des) for C in d.par]
        if not scale_mon_holds(factor, bs):
            rep.fail("ScaleMon", {"alpha": alpha, "factor": factor, "b": bs})
    return rep
