"""Exact linear algebra over the rationals.

Vectors are lists/tuples of Fraction, matrices are lists of rows.  Everything
here is deterministic: pivots are always chosen as the first nonzero entry in
column order, so bases produced from the same input are reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vec = list[Fraction]
Mat = list[list[Fraction]]

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def zeros(n: int) -> Vec:
    return [ZERO] * n


def vec_add(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vec:
    return [x + y for x, y in zip(a, b)]

def vec_sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vec:
    return [x - y for x, y in zip(a, b)]

def vec_scale(a: Sequence[Fraction], c: Fraction) -> Vec:
    return [c * x for x in a]

def vec_is_zero(a: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in a)


def mat_mul(a: Mat, b: Mat) -> Mat:
    nb = len(b)
    cols = len(b[0]) if nb else 0
    out = []
    for row in a:
        acc = [ZERO] * cols
        for k, rk in enumerate(row):
            if rk:
                brow = b[k]
                for j in range(cols):
                    if brow[j]:
                        acc[j] += rk * brow[j]
        out.append(acc)
    return out


def mat_vec(a: Mat, v: Sequence[Fraction]) -> Vec:
    return [sum((rk * vk for rk, vk in zip(row, v) if rk and vk), ZERO) for row in a]


def transpose(a: Mat) -> Mat:
    return [list(col) for col in zip(*a)] if a else []


def identity(n: int) -> Mat:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def mat_sub(a: Mat, b: Mat) -> Mat:
    return [vec_sub(ra, rb) for ra, rb in zip(a, b)]


def mat_is_zero(a: Mat) -> bool:
    return all(vec_is_zero(r) for r in a)


def rref(rows: Iterable[Sequence[Fraction]]) -> tuple[Mat, list[int]]:
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        if pv != 1:
            m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [row for row in m[:r]], pivots


def rank(rows: Iterable[Sequence[Fraction]]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Iterable[Sequence[Fraction]], ncols: int | None = None) -> list[Vec]:
    """Basis of the right kernel {v : A v = 0}, ordered by free column."""
    m = [list(r) for r in rows]
    if not m:
        if ncols is None:
            return []
        return [[ONE if i == j else ZERO for j in range(ncols)] for i in range(ncols)]
    n = len(m[0])
    red, pivots = rref(m)
    pivset = set(pivots)
    basis = []
    for free in range(n):
        if free in pivset:
            continue
        v = zeros(n)
        v[free] = ONE
        for i, p in enumerate(pivots):
            v[p] = -red[i][free]
        basis.append(v)
    return basis


def solve(a: Mat, b: Sequence[Fraction]) -> Vec | None:
    """One solution of A x = b, or None if inconsistent."""
    if not a:
        return [] if vec_is_zero(b) else None
    n = len(a[0])
    aug = [list(row) + [bv] for row, bv in zip(a, b)]
    red, pivots = rref(aug)
    for row in red:
        if all(x == 0 for x in row[:n]) and row[n] != 0:
            return None
    x = zeros(n)
    for i, p in enumerate(pivots):
        if p == n:
            return None
        x[p] = red[i][n]
    return x


def inverse(a: Mat) -> Mat:
    n = len(a)
    aug = [list(row) + list(idr) for row, idr in zip(a, identity(n))]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red[:n]]


class Echelon:
    """Incrementally maintained echelon basis of a subspace of Q^n.

    Rows are stored sparsely (column -> value).  Supports reduction of
    vectors modulo the subspace and membership tests; insertion order plus
    smallest-column pivoting keeps results deterministic.
    """

    def __init__(self, n: int):
        self.n = n
        self.rows: list[dict[int, Fraction]] = []
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.rows)

    @staticmethod
    def _sparse(v) -> dict[int, Fraction]:
        if isinstance(v, dict):
            return {c: x for c, x in v.items() if x}
        return {c: x for c, x in enumerate(v) if x}

    def reduce_sparse(self, v) -> dict[int, Fraction]:
        w = self._sparse(v)
        for row, p in zip(self.rows, self.pivots):
            f = w.get(p)
            if f:
                for c, y in row.items():
                    nv = w.get(c, ZERO) - f * y
                    if nv:
                        w[c] = nv
                    else:
                        w.pop(c, None)
        return w

    def reduce(self, v: Sequence[Fraction]) -> Vec:
        w = self.reduce_sparse(v)
        out = zeros(self.n)
        for c, x in w.items():
            out[c] = x
        return out

    def contains(self, v) -> bool:
        return not self.reduce_sparse(v)

    def insert(self, v) -> bool:
        """Add v to the span; returns True if the dimension grew."""
        w = self.reduce_sparse(v)
        if not w:
            return False
        p = min(w)
        pv = w[p]
        if pv != 1:
            w = {c: x / pv for c, x in w.items()}
        for row in self.rows:
            f = row.get(p)
            if f:
                for c, y in w.items():
                    nv = row.get(c, ZERO) - f * y
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
        self.rows.append(w)
        self.pivots.append(p)
        return True


def span_dim(vectors: Iterable[Sequence[Fraction]], n: int) -> int:
    ech = Echelon(n)
    for v in vectors:
        ech.insert(v)
    return ech.dim


def nullspace_sparse(rows: Iterable, ncols: int) -> list[Vec]:
    """Basis of the right kernel via sparse elimination and back-substitution.

    Agrees with `nullspace` up to the choice of basis: one vector per free
    column, with unit entry at the free column, in column order.
    """
    ech = Echelon(ncols)
    for r in rows:
        ech.insert(r)
    pivset = set(ech.pivots)
    basis = []
    order = list(range(len(ech.rows)))
    for free in range(ncols):
        if free in pivset:
            continue
        v: dict[int, Fraction] = {free: ONE}
        for i in reversed(order):
            row = ech.rows[i]
            p = ech.pivots[i]
            s = ZERO
            for c, y in row.items():
                if c != p:
                    xv = v.get(c)
                    if xv:
                        s += y * xv
            if s:
                v[p] = -s / row[p]
        dense = zeros(ncols)
        for c, x in v.items():
            dense[c] = x
        basis.append(dense)
    return basis


class LinSolver:
    """Repeated exact solves of C x = v for a fixed column collection C."""

    def __init__(self, columns: Sequence[Sequence[Fraction]], n: int):
        self.n = n
        self.k = len(columns)
        # Row-reduce [C | I_k-tracking] once; each solve is a reduction pass.
        self._ech = Echelon(n + self.k)
        for j, col in enumerate(columns):
            ext = list(col) + [ZERO] * self.k
            ext[n + j] = ONE
            self._ech.insert(ext)

    def coords(self, v: Sequence[Fraction]) -> Vec | None:
        """Coefficients x with sum_j x_j C_j = v, or None if v not in span."""
        w = self._ech.reduce(list(v) + [ZERO] * self.k)
        if not vec_is_zero(w[: self.n]):
            return None
        return [-c for c in w[self.n:]]


class Quotient:
    """Quotient of a subspace ker ⊇ sub by the subspace, with projection.

    `kernel_vectors` spans the ambient space of interest (e.g. cocycles) and
    `sub_vectors` the part to quotient out (e.g. coboundaries).  The quotient
    basis is chosen greedily from `kernel_vectors` in the order given.
    """

    def __init__(self, n: int, sub_vectors: Sequence[Sequence[Fraction]],
                 kernel_vectors: Sequence[Sequence[Fraction]]):
        self.n = n
        ech = Echelon(n)
        self._sub_basis: list[Vec] = []
        for v in sub_vectors:
            if ech.insert(v):
                self._sub_basis.append(list(v))
        self.basis: list[Vec] = []
        for v in kernel_vectors:
            if ech.insert(v):
                self.basis.append(list(v))
        self.dim = len(self.basis)
        self._solver = LinSolver(self._sub_basis + self.basis, n)

    def project(self, v: Sequence[Fraction]) -> Vec:
        """Class coordinates of v in the quotient basis."""
        x = self._solver.coords(v)
        if x is None:
            raise ValueError("vector does not lie in the span of the quotient presentation")
        return x[len(self._sub_basis):]
