"""Exact symmetric linear algebra over the rationals.

The authoritative routines work on ``Fraction`` entries: inertia comes from a
symmetric LDL^T style elimination (Sylvester's law of inertia), so the sign
counts are certified.  A cyclic Jacobi iteration in floating point is kept as
a diagnostic cross-check only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import InputError, SideConditionViolated

Label = Hashable
ZERO = Fraction(0)


class LabeledSymMatrix:
    """Dense symmetric matrix whose rows and columns are indexed by labels."""

    __slots__ = ("labels", "_index", "_rows")

    def __init__(self, labels: Iterable[Label], rows: Sequence[Sequence] | None = None):
        self.labels = tuple(labels)
        if len(set(self.labels)) != len(self.labels):
            raise InputError("duplicate labels")
        self._index = {x: i for i, x in enumerate(self.labels)}
        n = len(self.labels)
        if rows is None:
            self._rows = [[ZERO] * n for _ in range(n)]
            return
        if len(rows) != n or any(len(r) != n for r in rows):
            raise InputError("matrix shape does not match labels")
        self._rows = [[Fraction(v) for v in r] for r in rows]
        for i in range(n):
            for j in range(i + 1, n):
                if self._rows[i][j] != self._rows[j][i]:
                    raise InputError(
                        f"matrix not symmetric at ({self.labels[i]!r}, {self.labels[j]!r})",
                        witness=(self.labels[i], self.labels[j]),
                    )

    @classmethod
    def from_entries(cls, labels, entries: Mapping) -> "LabeledSymMatrix":
        """Build from a sparse map (x, y) -> value; the transpose is filled in."""
        M = cls(labels)
        for (x, y), v in entries.items():
            v = Fraction(v)
            i, j = M._index[x], M._index[y]
            if i != j and M._rows[j][i] not in (ZERO, v):
                raise InputError(f"conflicting entries at ({x!r}, {y!r})")
            M._rows[i][j] = v
            M._rows[j][i] = v
        return M

    @classmethod
    def _trusted(cls, labels, rows) -> "LabeledSymMatrix":
        M = cls.__new__(cls)
        M.labels = tuple(labels)
        M._index = {x: i for i, x in enumerate(M.labels)}
        M._rows = rows
        return M

    # access
    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, x) -> int:
        return self._index[x]

    def __getitem__(self, key) -> Fraction:
        x, y = key
        return self._rows[self._index[x]][self._index[y]]

    def rows(self) -> list[list[Fraction]]:
        return [r[:] for r in self._rows]

    def __eq__(self, other) -> bool:
        if not isinstance(other, LabeledSymMatrix):
            return NotImplemented
        return self.labels == other.labels and self._rows == other._rows

    def __hash__(self):
        return hash((self.labels, tuple(map(tuple, self._rows))))

    def __repr__(self) -> str:
        return f"LabeledSymMatrix(labels={self.labels!r}, rows={self._rows!r})"

    def to_dict(self) -> dict:
        return {"labels": list(self.labels), "rows": self.rows()}

    # structure
    def support(self) -> tuple:
        """Labels whose row is not identically zero, in label order."""
        return tuple(x for x, r in zip(self.labels, self._rows) if any(r))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._rows)

    def restrict(self, labels: Iterable[Label]) -> "LabeledSymMatrix":
        labels = tuple(labels)
        idx = [self._index[x] for x in labels]
        return LabeledSymMatrix._trusted(labels, [[self._rows[i][j] for j in idx] for i in idx])

    def permuted(self, labels: Iterable[Label]) -> "LabeledSymMatrix":
        labels = tuple(labels)
        if set(labels) != set(self.labels) or len(labels) != self.dim:
            raise InputError("permutation must use the same label set")
        return self.restrict(labels)

    def congruent_diag(self, d: Mapping) -> "LabeledSymMatrix":
        """Return D M D for the diagonal matrix with entries d[x] (default 1)."""
        s = [Fraction(d.get(x, 1)) for x in self.labels]
        n = self.dim
        return LabeledSymMatrix._trusted(
            self.labels, [[s[i] * self._rows[i][j] * s[j] for j in range(n)] for i in range(n)]
        )

    # arithmetic
    def __add__(self, other: "LabeledSymMatrix") -> "LabeledSymMatrix":
        if self.labels != other.labels:
            raise InputError("label mismatch in matrix sum")
        n = self.dim
        return LabeledSymMatrix._trusted(
            self.labels, [[self._rows[i][j] + other._rows[i][j] for j in range(n)] for i in range(n)]
        )

    def __sub__(self, other: "LabeledSymMatrix") -> "LabeledSymMatrix":
        return self + other.scale(-1)

    def scale(self, c) -> "LabeledSymMatrix":
        c = Fraction(c)
        return LabeledSymMatrix._trusted(self.labels, [[c * v for v in r] for r in self._rows])

    def vec(self, v) -> list[Fraction]:
        """Coerce a label->value mapping or an aligned sequence to a list."""
        if isinstance(v, Mapping):
            unknown = set(v) - set(self.labels)
            if unknown:
                raise InputError(f"vector has unknown labels {sorted(map(str, unknown))}")
            return [Fraction(v.get(x, 0)) for x in self.labels]
        v = list(v)
        if len(v) != self.dim:
            raise InputError("vector length does not match matrix dimension")
        return [Fraction(a) for a in v]

    def apply(self, v) -> list[Fraction]:
        v = self.vec(v)
        return [sum((a * b for a, b in zip(r, v) if a and b), ZERO) for r in self._rows]

    def bilinear(self, v, w) -> Fraction:
        """<v, M w>."""
        v = self.vec(v)
        Mw = self.apply(w)
        return sum((a * b for a, b in zip(v, Mw) if a and b), ZERO)


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: tuple[float, ...]
    n_pos: int
    n_zero: int
    n_neg: int
    tolerance: float
    floating_signature: tuple[int, int, int]

    @property
    def signature(self) -> tuple[int, int, int]:
        return (self.n_pos, self.n_zero, self.n_neg)

    @property
    def floating_agrees(self) -> bool:
        return self.floating_signature == self.signature


@dataclass(frozen=True)
class HypResult:
    lhs: Fraction
    rhs: Fraction
    holds: bool
    equality: bool


def exact_inertia(rows: Sequence[Sequence]) -> tuple[int, int, int]:
    """(n_pos, n_zero, n_neg) of a rational symmetric matrix.

    Symmetric elimination with full pivoting: the largest |diagonal| pivot is
    used (ties go to the smallest index).  When the remaining diagonal is
    zero but some off-diagonal a_ij is not, the 2x2 block [[0,a],[a,0]]
    (one positive, one negative eigenvalue) is eliminated instead.
    """
    A = [[Fraction(v) for v in r] for r in rows]
    active = list(range(len(A)))
    pos = neg = 0
    while active:
        piv = None
        for i in active:
            d = A[i][i]
            if d and (piv is None or abs(d) > abs(A[piv][piv])):
                piv = i
        if piv is not None:
            d = A[piv][piv]
            if d > 0:
                pos += 1
            else:
                neg += 1
            active.remove(piv)
            prow = A[piv]
            for i in active:
                f = A[i][piv]
                if f:
                    f = f / d
                    Ai = A[i]
                    for j in active:
                        if prow[j]:
                            Ai[j] -= f * prow[j]
            continue
        pair = next(((i, j) for a, i in enumerate(active) for j in active[a + 1:] if A[i][j]), None)
        if pair is None:
            return pos, len(active), neg
        i, j = pair
        a = A[i][j]
        pos += 1
        neg += 1
        active.remove(i)
        active.remove(j)
        ri = {c: A[i][c] for c in active}
        rj = {c: A[j][c] for c in active}
        for r in active:
            if ri[r] or rj[r]:
                Ar = A[r]
                for c in active:
                    delta = ri[r] * rj[c] + rj[r] * ri[c]
                    if delta:
                        Ar[c] -= delta / a
    return pos, 0, neg


def jacobi_eigenvalues(rows: Sequence[Sequence], sweeps: int = 60) -> list[float]:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations."""
    a = [[float(v) for v in r] for r in rows]
    n = len(a)
    for _ in range(sweeps):
        off = sum(a[p][q] ** 2 for p in range(n) for q in range(p + 1, n))
        scale = sum(a[p][p] ** 2 for p in range(n)) + off
        if off <= 1e-30 * max(scale, 1e-300):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p][q]
                if apq == 0.0:
                    continue
                theta = (a[q][q] - a[p][p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp, akq = a[k][p], a[k][q]
                    a[k][p] = c * akp - s * akq
                    a[k][q] = s * akp + c * akq
                for k in range(n):
                    apk, aqk = a[p][k], a[q][k]
                    a[p][k] = c * apk - s * aqk
                    a[q][k] = s * apk + c * aqk
    return sorted((a[i][i] for i in range(n)), reverse=True)


def signature(M: LabeledSymMatrix, tolerance: float = 1e-10) -> Spectrum:
    pos, zero, neg = exact_inertia(M.rows())
    eig = jacobi_eigenvalues(M.rows()) if M.dim else []
    scale = max((abs(x) for x in eig), default=0.0) or 1.0
    fpos = sum(1 for x in eig if x > tolerance * scale)
    fneg = sum(1 for x in eig if x < -tolerance * scale)
    return Spectrum(tuple(eig), pos, zero, neg, tolerance, (fpos, len(eig) - fpos - fneg, fneg))


def check_OPE(M: LabeledSymMatrix) -> bool:
    """At most one positive eigenvalue (counted with multiplicity)."""
    return exact_inertia(M.rows())[0] <= 1


def check_hyp_pair(M: LabeledSymMatrix, v, w) -> HypResult:
    ww = M.bilinear(w, w)
    if ww <= 0:
        raise SideConditionViolated(f"<w, M w> = {ww} is not positive", witness=ww)
    vw = M.bilinear(v, w)
    vv = M.bilinear(v, v)
    lhs, rhs = vw * vw, vv * ww
    return HypResult(lhs, rhs, lhs >= rhs, lhs == rhs)


def is_irreducible_on_support(M: LabeledSymMatrix) -> bool:
    supp = [M.index(x) for x in M.support()]
    if not supp:
        return True
    rows = M._rows
    seen = {supp[0]}
    stack = [supp[0]]
    while stack:
        i = stack.pop()
        for j in supp:
            if j not in seen and rows[i][j]:
                seen.add(j)
                stack.append(j)
    return len(seen) == len(supp)


def is_psd(M: LabeledSymMatrix) -> bool:
    return exact_inertia(M.rows())[2] == 0


def star_condition(N: LabeledSymMatrix) -> bool:
    """Sufficient condition for hyperbolicity of an all-ones-off-diagonal matrix.

    N must have off-diagonal entries 1, its first n diagonal entries at most
    1, and the last diagonal entry L must satisfy L >= sum_i (L-1)/(1-N_ii).
    Terms with N_ii = 1 are read in the limit N_ii -> 1 from below: they are
    0 when L = 1, -inf when L < 1 and +inf when L > 1.
    """
    n = N.dim
    if n == 0:
        return True
    rows = N._rows
    if any(rows[i][j] != 1 for i in range(n) for j in range(n) if i != j):
        return False
    diag = [rows[i][i] for i in range(n - 1)]
    last = rows[n - 1][n - 1]
    if any(d > 1 for d in diag):
        return False
    total = ZERO
    for d in diag:
        if d == 1:
            if last > 1:
                return False
            if last < 1:
                return True
            continue
        total += (last - 1) / (1 - d)
    return last >= total
