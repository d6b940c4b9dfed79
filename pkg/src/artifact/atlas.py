"""Combinatorial atlases for interval greedoids and for linear extensions.

A slice of an atlas is materialized on a finite grid of mixing parameters t.
Each vertex carries a symmetric matrix M, a vector h and out-edges labelled by
the support of M; the projection map of every edge is the broadcast map
(T v)_y = v_y on supp(M) and v_x elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .counting import WeightedLanguage, local_series
from .errors import (
    EmptyEdgeSet,
    NoSuchEdge,
    NotAGlobalPair,
    NotASink,
    NotInterval,
    NotOrderReversing,
    RankOutOfRange,
    BadParams,
)
from .linalg import LabeledSymMatrix, check_OPE, is_irreducible_on_support, is_psd, star_condition
from .poset import Poset, linear_extensions, weight_predicates
from .rational import Q, exact_sqrt
from .structures import derived_data

ZERO = Fraction(0)
ONE = Fraction(1)
STAR = "*"
DEFAULT_T_GRID = (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1))


@dataclass(frozen=True)
class VertexId:
    """context is alpha (greedoid) or (alpha, beta) (Stanley); level is m or k."""

    context: tuple
    level: int
    t: Fraction

    def __str__(self) -> str:
        ctx = "|".join("".join(map(str, w)) or "-" for w in self.context) if _is_pair(self.context) else (
            " ".join(map(str, self.context)) or "-"
        )
        return f"({ctx}, {self.level}, {self.t})"


def _is_pair(ctx) -> bool:
    return len(ctx) == 2 and all(isinstance(w, tuple) for w in ctx)


@dataclass
class AtlasVertex:
    id: VertexId
    M: LabeledSymMatrix
    h: dict
    sink: bool
    out: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "id": str(self.id),
            "sink": self.sink,
            "M": self.M.to_dict(),
            "h": [self.h[x] for x in self.M.labels],
        }


@dataclass
class AtlasSlice:
    kind: str
    labels: tuple
    k: int
    root: VertexId
    vertices: dict
    t_grid: tuple
    source: object = None

    @property
    def edges(self) -> list[tuple]:
        return [(v.id, x, tgt) for v in self.vertices.values() for x, tgt in v.out.items()]

    def vertex(self, vid) -> AtlasVertex:
        return vid if isinstance(vid, AtlasVertex) else self.vertices[vid]

    def sinks(self) -> list[AtlasVertex]:
        return [v for v in self.vertices.values() if v.sink]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "k": self.k,
            "root": str(self.root),
            "labels": list(self.labels),
            "vertices": [v.to_dict() for v in self.vertices.values()],
        }


def _t_grid(t_grid) -> tuple:
    grid = sorted({Q(t) for t in (t_grid if t_grid is not None else DEFAULT_T_GRID)} | {ZERO, ONE})
    if any(not 0 <= t <= 1 for t in grid):
        raise BadParams("t values must lie in [0, 1]")
    return tuple(grid)


# ---------------------------------------------------------------------------
# greedoid atlas


def greedoid_matrix(W: WeightedLanguage, alpha, m: int) -> LabeledSymMatrix:
    """A(alpha, m) over the letters plus the extra symbol '*'."""
    G = W.language
    labels = G.alphabet + (STAR,)
    alpha = tuple(alpha)
    A = LabeledSymMatrix(labels)
    if alpha not in G.words or m < 1:
        return A
    d = derived_data(G, alpha)
    rows = A._rows
    idx = A._index
    for x in d.cnt:
        ax = alpha + (x,)
        v = local_series(W, ax, m - 1)
        rows[idx[x]][idx[STAR]] = rows[idx[STAR]][idx[x]] = v
        diag = ZERO
        for y in d.des[x]:
            diag += local_series(W, ax + (y,), m - 1)
        rows[idx[x]][idx[x]] = diag
        for y in d.cnt:
            if y != x and ax + (y,) in G.words:
                rows[idx[x]][idx[y]] = local_series(W, ax + (y,), m - 1)
    rows[idx[STAR]][idx[STAR]] = local_series(W, alpha, m - 1)
    for i in range(len(labels)):
        for j in range(i):
            if rows[i][j] != rows[j][i]:
                raise BadParams(
                    f"weight breaks continuation invariance at ({labels[i]}, {labels[j]})",
                    witness=(alpha, labels[i], labels[j]),
                )
    return A


def _mix(t: Fraction, A: LabeledSymMatrix | None, B: LabeledSymMatrix | None) -> LabeledSymMatrix:
    """t * A + (1 - t) * B, skipping a term whose coefficient vanishes."""
    if t == 1:
        return A
    if t == 0:
        return B
    return A.scale(t) + B.scale(1 - t)


def build_greedoid_atlas(W: WeightedLanguage, k: int, t_grid=None) -> AtlasSlice:
    G = W.language
    if not G.flags.is_interval:
        raise NotInterval("the language is not an interval greedoid", witness=G.flags.witnesses.get("interval"))
    if not 1 <= k < G.rank:
        raise RankOutOfRange(f"k={k} outside [1, {G.rank})")
    grid = _t_grid(t_grid)
    labels = G.alphabet + (STAR,)
    cache: dict[tuple, LabeledSymMatrix] = {}

    def A(alpha, m):
        key = (alpha, m)
        if key not in cache:
            cache[key] = greedoid_matrix(W, alpha, m)
        return cache[key]

    vertices: dict[VertexId, AtlasVertex] = {}

    def h_of(t):
        return {x: (1 - t if x == STAR else t) for x in labels}

    def make(alpha, m, t):
        vid = VertexId(alpha, m, t)
        if vid in vertices:
            return vid
        if m == 0:
            M = A(alpha, 1)
            vertices[vid] = AtlasVertex(vid, M, h_of(ONE), True)
            return vid
        M = _mix(t, A(alpha, m + 1), None if t == 1 else A(alpha, m))
        v = AtlasVertex(vid, M, h_of(t), False)
        vertices[vid] = v
        for x in M.support():
            target = (alpha, m - 1, ONE) if x == STAR else (alpha + (x,), m - 1, ONE)
            v.out[x] = make(*target)
        return vid

    root = None
    for t in (grid if k > 1 else (ONE,)):
        vid = make((), k - 1, t)
        if t == 1:
            root = vid
    # every reached (alpha, m) context also gets the interior grid values
    for vid in list(vertices):
        if vid.level >= 1:
            for t in grid:
                make(vid.context, vid.level, t)
    return AtlasSlice("greedoid", labels, k, root, vertices, grid, W)


# ---------------------------------------------------------------------------
# Stanley atlas


def stanley_labels(P: Poset, z) -> tuple:
    rest = [x for x in P.elements if x != z]
    return tuple(f"{x}_down" for x in rest) + tuple(f"{x}_up" for x in rest)


class _StanleyData:
    def __init__(self, P: Poset, z, weights, cap):
        self.P = P
        self.z = z
        w = {x: Q(v) for x, v in (weights or P.weights or {x: 1 for x in P.elements}).items()}
        self.w = w
        self.ext = []
        for L in linear_extensions(P, cap):
            q = ONE
            for x in L[: L.index(z)]:
                q *= w[x]
            self.ext.append((L, q))
        self.labels = stanley_labels(P, z)
        self._ctx: dict = {}
        self._C: dict = {}

    def fillings(self, alpha, beta) -> list[tuple[tuple, Fraction]]:
        key = (alpha, beta)
        if key not in self._ctx:
            a, b = len(alpha), len(beta)
            n = len(self.P)
            self._ctx[key] = [
                (L[a : n - b], q) for L, q in self.ext if L[:a] == alpha and L[n - b :] == beta
            ]
        return self._ctx[key]

    def C(self, alpha, beta, k) -> LabeledSymMatrix:
        key = (alpha, beta, k)
        if key in self._C:
            return self._C[key]
        P, z = self.P, self.z
        C = LabeledSymMatrix(self.labels)
        rows, idx = C._rows, C._index
        size = len(self.P) - len(alpha) - len(beta)
        if not 1 < k < size:
            raise BadParams(f"C(alpha, beta, k) needs 1 < k < {size}")
        for g, q in self.fillings(alpha, beta):
            if g[k - 1] == z:
                i, j = idx[f"{g[0]}_down"], idx[f"{g[-1]}_up"]
                rows[i][j] += q
                rows[j][i] += q
            if g[k] == z:
                x, y = g[0], g[1]
                if P.lt(x, y):
                    rows[idx[f"{x}_down"]][idx[f"{x}_down"]] += q
                else:
                    rows[idx[f"{x}_down"]][idx[f"{y}_down"]] += q
            if g[k - 2] == z:
                x, y = g[-2], g[-1]
                if P.lt(x, y):
                    rows[idx[f"{y}_up"]][idx[f"{y}_up"]] += q
                else:
                    rows[idx[f"{x}_up"]][idx[f"{y}_up"]] += q
        for i in range(C.dim):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise BadParams(f"asymmetric Stanley matrix at ({self.labels[i]}, {self.labels[j]})")
        self._C[key] = C
        return C


def stanley_matrix(P: Poset, z, k: int, alpha=(), beta=(), weights=None, cap: int | None = None) -> LabeledSymMatrix:
    data = _StanleyData(P, z, weights, cap or 12)
    return data.C(tuple(alpha), tuple(beta), k)


def build_stanley_atlas(P: Poset, z, k: int, t_grid=None, weights=None, cap: int = 12) -> AtlasSlice:
    n = len(P)
    P._i(z)
    if not 2 <= k <= n - 1:
        raise BadParams(f"k={k} outside [2, {n - 1}]")
    w = weights or P.weights or {x: 1 for x in P.elements}
    wp = weight_predicates(P, w)
    if not wp.order_reversing:
        raise NotOrderReversing("weights are not order-reversing", witness=wp.witnesses.get("order_reversing"))
    data = _StanleyData(P, z, w, cap)
    grid = _t_grid(t_grid)
    labels = data.labels
    vertices: dict[VertexId, AtlasVertex] = {}

    def h_of(t):
        return {x: (t if x.endswith("_down") else 1 - t) for x in labels}

    def make(alpha, beta, kk, t):
        vid = VertexId((alpha, beta), kk, t)
        if vid in vertices:
            return vid
        m = n - 3 - len(alpha) - len(beta)
        if m == 0:
            M = data.C(alpha, beta, 2)
            vertices[vid] = AtlasVertex(vid, M, h_of(ZERO), True)
            return vid
        M = _mix(t, None if t == 0 else data.C(alpha, beta, kk + 1), None if t == 1 else data.C(alpha, beta, kk))
        v = AtlasVertex(vid, M, h_of(t), False)
        vertices[vid] = v
        for lab in M.support():
            x, side = lab.rsplit("_", 1)
            a2, b2 = (alpha + (x,), beta) if side == "down" else (alpha, (x,) + beta)
            v.out[lab] = make(a2, b2, kk - 1, ONE) if kk > 2 else make(a2, b2, 2, ZERO)
        return vid

    if n == 3:
        root = make((), (), 2, ZERO)
    else:
        for t in grid:
            make((), (), k - 1 if k > 2 else 2, t)
        root = VertexId(((), ()), k - 1, ONE) if k > 2 else VertexId(((), ()), 2, ZERO)
        for vid in list(vertices):
            if not vertices[vid].sink:
                for t in grid:
                    make(vid.context[0], vid.context[1], vid.level, t)
    return AtlasSlice("stanley", labels, k, root, vertices, grid, data)


# ---------------------------------------------------------------------------
# projections and vertex properties


def project(slice_: AtlasSlice, v, x, vec) -> dict:
    """T<x> applied to vec (a label -> value mapping or aligned sequence)."""
    v = slice_.vertex(v)
    if x not in v.out:
        raise NoSuchEdge(f"no out-edge labelled {x!r} at {v.id}", witness=x)
    vals = v.M.vec(vec)
    supp = set(v.M.support())
    vx = vals[v.M.index(x)]
    return {y: (vals[i] if y in supp else vx) for i, y in enumerate(v.M.labels)}


def _basis(labels, j) -> dict:
    return {y: (ONE if y == j else ZERO) for y in labels}


@dataclass
class VertexReport:
    id: VertexId
    sink: bool
    Inh: bool | None = None
    Proj: bool | None = None
    TInv: bool | None = None
    KNon: bool | None = None
    Ksym: bool | None = None
    Irr: bool | None = None
    hPos: bool | None = None
    Pull: bool | None = None
    Hyp: bool | None = None
    K: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)

    PROPS = ("Inh", "Proj", "TInv", "KNon", "Ksym", "Irr", "hPos", "Pull", "Hyp")

    def to_dict(self) -> dict:
        out = {"id": str(self.id), "sink": self.sink}
        out.update({p: getattr(self, p) for p in self.PROPS})
        if self.witnesses:
            out["witnesses"] = self.witnesses
        return out


def check_vertex_properties(slice_: AtlasSlice, v) -> VertexReport:
    v = slice_.vertex(v)
    M = v.M
    rep = VertexReport(v.id, v.sink)
    rep.Hyp = check_OPE(M)
    if v.sink:
        return rep
    supp = M.support()
    labels = M.labels
    rep.Irr = is_irreducible_on_support(M)
    rep.hPos = all(v.h[x] > 0 for x in supp)
    if not supp:
        rep.Inh = rep.Proj = rep.TInv = rep.KNon = rep.Ksym = rep.Pull = True
        return rep
    tgt = {i: slice_.vertex(v.out[i]) for i in supp}
    Th = {i: project(slice_, v, i, v.h) for i in supp}
    images = {i: {j: project(slice_, v, i, _basis(labels, j)) for j in labels} for i in supp}

    rep.Inh = True
    for i in supp:
        Mi = tgt[i].M
        for j in labels:
            lhs = M[(i, j)]
            rhs = Mi.bilinear(images[i][j], Th[i])
            if lhs != rhs:
                rep.Inh = False
                rep.witnesses.setdefault("Inh", (i, j, lhs, rhs))

    rep.Proj = True
    sset = set(supp)
    for i in supp:
        for j in labels:
            u = images[i][j]
            for y in tgt[i].M.support():
                want = (ONE if y == j else ZERO) if y in sset else (ONE if i == j else ZERO)
                if u[y] != want:
                    rep.Proj = False
                    rep.witnesses.setdefault("Proj", (i, j, y))

    rep.TInv = True
    for a in supp:
        for b in supp:
            for c in supp:
                if len({a, b, c}) == 3:
                    x1, x2, x3 = tgt[a].M[(b, c)], tgt[b].M[(c, a)], tgt[c].M[(a, b)]
                    if not x1 == x2 == x3:
                        rep.TInv = False
                        rep.witnesses.setdefault("TInv", (a, b, c))

    fam = {i: [x for x in tgt[i].M.support() if x == i or x not in sset] for i in supp}
    K = {}
    for i in supp:
        for j in supp:
            if i != j:
                s = sum((tgt[j].M[(i, x)] for x in fam[j]), ZERO)
                K[(i, j)] = v.h[j] * tgt[i].M[(j, j)] - v.h[j] * s
    rep.K = K
    rep.KNon = all(val >= 0 for val in K.values())
    if not rep.KNon:
        rep.witnesses["KNon"] = next(key for key, val in K.items() if val < 0)
    rep.Ksym = all(K[(i, j)] == K[(j, i)] for (i, j) in K)
    if not rep.Ksym:
        rep.witnesses["Ksym"] = next(key for key in K if K[key] != K[(key[1], key[0])])

    Q_rows = [[-M._rows[a][b] for b in range(len(labels))] for a in range(len(labels))]
    for i in supp:
        Mi = tgt[i].M
        img = [Mi.vec(images[i][j]) for j in labels]
        MiT = [Mi.apply(u) for u in img]
        hi = v.h[i]
        if hi == 0:
            continue
        for a in range(len(labels)):
            for b in range(a, len(labels)):
                val = hi * sum((p * r for p, r in zip(img[a], MiT[b]) if p and r), ZERO)
                if val:
                    Q_rows[a][b] += val
                    if a != b:
                        Q_rows[b][a] += val
    rep.Pull = is_psd(LabeledSymMatrix._trusted(labels, Q_rows))
    return rep


@dataclass
class LocalGlobalReport:
    ok: bool
    checked_hyp: int
    checked_pull: int
    violations: list
    reports: dict

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "checked_hyp": self.checked_hyp,
            "checked_pull": self.checked_pull,
            "violations": self.violations,
            "vertices": [r.to_dict() for r in self.reports.values()],
        }


def check_local_global(slice_: AtlasSlice, reports: Mapping | None = None) -> LocalGlobalReport:
    reports = dict(reports or {})
    for vid in slice_.vertices:
        if vid not in reports:
            reports[vid] = check_vertex_properties(slice_, vid)
    violations = []
    n_hyp = n_pull = 0
    for vid, v in slice_.vertices.items():
        r = reports[vid]
        if v.sink:
            continue
        if r.Inh and r.Proj and r.TInv and r.KNon:
            n_pull += 1
            if not r.Pull:
                violations.append({"vertex": str(vid), "rule": "Pull"})
        regular = r.Irr and r.hPos
        if r.Inh and r.Pull and regular and all(reports[t].Hyp for t in v.out.values()):
            n_hyp += 1
            if not r.Hyp:
                violations.append({"vertex": str(vid), "rule": "Hyp"})
    return LocalGlobalReport(not violations, n_hyp, n_pull, violations, reports)


# ---------------------------------------------------------------------------
# sinks


@dataclass
class SinkNormalForm:
    applicable: bool
    N: LabeledSymMatrix | None
    expected: LabeledSymMatrix | None
    matches_formula: bool
    star: bool
    ope_original: bool
    ope_normal: bool
    note: str = ""

    @property
    def agrees(self) -> bool:
        return self.ope_original == self.ope_normal

    def to_dict(self) -> dict:
        return {
            "applicable": self.applicable,
            "N": self.N,
            "matches_formula": self.matches_formula,
            "star": self.star,
            "ope_original": self.ope_original,
            "ope_normal": self.ope_normal,
            "note": self.note,
        }


def sink_normal_form(v: AtlasVertex, W: WeightedLanguage) -> SinkNormalForm:
    """Eliminate parallel classes and rescale a greedoid sink to unit off-diagonals."""
    if not v.sink or v.id.level != 0 or _is_pair(v.id.context):
        raise NotASink(f"{v.id} is not a greedoid sink", witness=str(v.id))
    alpha = tuple(v.id.context)
    M = v.M
    ope = check_OPE(M)
    G = W.language
    if alpha not in G.words or W.q(alpha) == 0:
        return SinkNormalForm(False, None, None, True, True, ope, ope, "zero matrix")
    d = derived_data(G, alpha)
    classes = [tuple(x for x in C if W.q(alpha + (x,)) > 0) for C in d.par]
    classes = [C for C in classes if C]
    l = len(alpha)
    wa = W.omega(alpha)
    labels = M.labels
    rows = M.rows()
    idx = M._index
    for C in classes:
        x = C[0]
        for y in C[1:]:
            r = W.omega(alpha + (y,)) / W.omega(alpha + (x,))
            iy, ix = idx[y], idx[x]
            for c in range(len(labels)):
                rows[iy][c] -= r * rows[ix][c]
            for c in range(len(labels)):
                rows[c][iy] -= r * rows[c][ix]
    reps = [C[0] for C in classes]
    keep = reps + [STAR]
    zeroed = all(
        not any(rows[idx[y]]) for C in classes for y in C[1:]
    )
    c1, c2 = W.c(l + 1), W.c(l + 2)
    d2 = {x: wa / (c2 * W.omega(alpha + (x,)) ** 2) for x in reps}
    d2[STAR] = c2 / (c1 * c1 * wa)
    N_rows = []
    rational = True
    for a in keep:
        row = []
        for b in keep:
            e = rows[idx[a]][idx[b]]
            root = exact_sqrt(e * e * d2[a] * d2[b])
            if root is None:
                rational = False
                root = ZERO
            row.append(root if e >= 0 else -root)
        N_rows.append(row)
    N = LabeledSymMatrix._trusted(tuple(keep), N_rows)
    bvals = []
    for C in classes:
        if len(C) >= 2:
            bvals.append(ZERO)
        else:
            x = C[0]
            bvals.append(sum((wa * W.omega(alpha + (x, y)) for y in d.des[x]), ZERO) / W.omega(alpha + (x,)) ** 2)
    last = W.c(l) * c2 / (c1 * c1)
    exp_rows = [[ONE if i != j else ZERO for j in range(len(keep))] for i in range(len(keep))]
    for i, b in enumerate(bvals):
        exp_rows[i][i] = b
    exp_rows[-1][-1] = last
    expected = LabeledSymMatrix._trusted(tuple(keep), exp_rows)
    note = "" if rational and zeroed else "elimination left irrational or nonzero entries"
    return SinkNormalForm(
        True, N, expected, rational and zeroed and N == expected, star_condition(expected), ope, check_OPE(N), note
    )


# ---------------------------------------------------------------------------
# equality propagation


@dataclass
class SEquReport:
    s: Fraction | None
    root_holds: bool
    per_vertex: dict
    functional_edges: list
    functional_targets: list
    propagation_ok: bool
    kernel_ok: bool
    kernel_checked: int

    def to_dict(self) -> dict:
        return {
            "s": self.s,
            "root_holds": self.root_holds,
            "functional_edges": [(str(a), x, str(b)) for a, x, b in self.functional_edges],
            "functional_targets": [str(t) for t in self.functional_targets],
            "propagation_ok": self.propagation_ok,
            "kernel_ok": self.kernel_ok,
            "kernel_checked": self.kernel_checked,
            "per_vertex": {str(k): v for k, v in self.per_vertex.items()},
        }


def _brackets(M: LabeledSymMatrix, f, g):
    return M.bilinear(f, f), M.bilinear(g, f), M.bilinear(g, g)


def s_equ_holds(M: LabeledSymMatrix, f, g, s: Fraction) -> bool:
    ff, gf, gg = _brackets(M, f, g)
    return ff == s * gf and gf == s * gg


def check_sEqu_propagation(slice_: AtlasSlice, f, g, s=None) -> SEquReport:
    labels = slice_.labels
    f = {x: Q(f.get(x, 0)) for x in labels} if isinstance(f, Mapping) else dict(zip(labels, map(Q, f)))
    g = {x: Q(g.get(x, 0)) for x in labels} if isinstance(g, Mapping) else dict(zip(labels, map(Q, g)))
    if any(f[x] < 0 or g[x] < 0 for x in labels) or any(f[x] + g[x] <= 0 for x in labels):
        raise NotAGlobalPair("f and g must be nonnegative with f + g strictly positive")
    root = slice_.vertex(slice_.root)
    if s is None:
        _, gf, gg = _brackets(root.M, f, g)
        s = gf / gg if gg else None
    else:
        s = Q(s)
    per_vertex = {}
    kernel_ok, kernel_checked = True, 0
    for vid, v in slice_.vertices.items():
        holds = s is not None and s > 0 and s_equ_holds(v.M, f, g, s)
        per_vertex[vid] = holds
        if holds and check_OPE(v.M):
            z = [f[x] - s * g[x] for x in labels]
            if v.M.bilinear(z, z) == 0:
                kernel_checked += 1
                if any(v.M.apply(z)):
                    kernel_ok = False

    def functional_source(v: AtlasVertex) -> bool:
        if v.sink or any(f[x] != v.h[x] for x in labels):
            return False
        for i in v.M.support():
            Tf, Tg = project(slice_, v, i, f), project(slice_, v, i, g)
            tgt = slice_.vertex(v.out[i])
            for j in tgt.M.support():
                if Tf[j] != f[j] or Tg[j] != g[j]:
                    return False
        return True

    edges = []
    for v in slice_.vertices.values():
        if functional_source(v):
            for i in v.M.support():
                if v.h[i] != 0:
                    edges.append((v.id, i, v.out[i]))
    adj: dict = {}
    for a, _, b in edges:
        adj.setdefault(a, []).append(b)
    targets, stack, seen = [], [root.id], {root.id}
    while stack:
        u = stack.pop()
        for b in adj.get(u, []):
            if b not in seen:
                seen.add(b)
                targets.append(b)
                stack.append(b)
    root_holds = per_vertex[root.id]
    propagation_ok = (not root_holds) or all(per_vertex[t] for t in targets)
    return SEquReport(s, root_holds, per_vertex, edges, targets, propagation_ok, kernel_ok, kernel_checked)


# ---------------------------------------------------------------------------
# line graph of extensions


@dataclass
class LineGraphReport:
    k: int
    n_edges: int
    connected: bool
    adjacency_matches: bool
    transposition_adjacency: bool
    mismatches: list

    def to_dict(self) -> dict:
        return self.__dict__.copy()


def _incidence(P: Poset, z, k: int, L: tuple):
    """Endpoints of extension L viewed as an edge of the graph on the doubled alphabet."""
    pos = L.index(z) + 1
    if pos == k + 1:
        x, y = L[0], L[1]
        return (f"{x}_down",) * 2 if P.lt(x, y) else (f"{x}_down", f"{y}_down")
    if pos == k:
        return (f"{L[0]}_down", f"{L[-1]}_up")
    x, y = L[-1], L[-2]
    return (f"{x}_up",) * 2 if P.lt(y, x) else (f"{x}_up", f"{y}_up")


def line_graph_connectivity(P: Poset, z, k: int, weights=None, cap: int = 12) -> LineGraphReport:
    n = len(P)
    if not 2 <= k <= n - 1:
        raise BadParams(f"k={k} outside [2, {n - 1}]")
    E = [L for L in linear_extensions(P, cap) if L.index(z) + 1 in (k - 1, k, k + 1)]
    if not E:
        raise EmptyEdgeSet(f"no extension places {z!r} near position {k}")
    ends = [set(_incidence(P, z, k, L)) for L in E]
    by_vertex: dict = {}
    for i, e in enumerate(ends):
        for x in e:
            by_vertex.setdefault(x, []).append(i)
    seen, stack = {0}, [0]
    while stack:
        i = stack.pop()
        for x in ends[i]:
            for j in by_vertex[x]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
    connected = len(seen) == len(E)

    C = stanley_matrix(P, z, k, weights=weights or {x: 1 for x in P.elements}, cap=cap)
    adjacent = set()
    for e in ends:
        a, b = tuple(e) if len(e) == 2 else (next(iter(e)),) * 2
        adjacent.add((a, b))
        adjacent.add((b, a))
    mismatches = [
        (x, y) for x in C.labels for y in C.labels if ((C[(x, y)] > 0) != ((x, y) in adjacent))
    ]

    # extensions related by one adjacent transposition are adjacent in the line graph
    trans_ok = True
    for i, L in enumerate(E):
        for j in range(i + 1, len(E)):
            share = bool(ends[i] & ends[j])
            M2 = E[j]
            diff = [p for p in range(n) if L[p] != M2[p]]
            swap = len(diff) == 2 and diff[1] == diff[0] + 1 and L[diff[0]] == M2[diff[1]] and not P.comparable(
                L[diff[0]], L[diff[1]]
            )
            if swap and not share:
                trans_ok = False
                break
        if not trans_ok:
            break
    return LineGraphReport(k, len(E), connected, not mismatches, trans_ok, mismatches)
