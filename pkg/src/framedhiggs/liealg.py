"""Reductive Lie algebra arithmetic in exact rationals.

Matrix models for the classical families gl(r), sl(r), so(r), sp(2r) in their
defining representations, the trace form, annihilator subspaces, invariant
polynomials, and per-marked-point framing data.  Exceptional types carry
tabulated numerical data only (no matrix model).

Conventions:
  * so(r) is realized with the symmetric form antidiag(1,...,1), so its
    standard torus is diagonal and all structure constants are rational.
  * sp(2r) uses J = [[0, I], [-I, 0]]; the torus is diag(t, -t).
  * The invariant form is the trace form of the defining representation; on
    the one-dimensional center of gl(r) this restricts to sigma'(z, z') =
    tr(z z'), which is nondegenerate.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactlinalg import (Echelon, LinSolver, Mat, Vec, ZERO, ONE, frac,
                          nullspace, rank, span_dim)

Matrix = tuple[tuple[Fraction, ...], ...]

_EXCEPTIONAL = {
    # dim, rank, degrees
    "g2": (14, 2, (2, 6)),
    "f4": (52, 4, (2, 6, 8, 12)),
    "e6": (78, 6, (2, 5, 6, 8, 9, 12)),
    "e7": (133, 7, (2, 6, 8, 10, 12, 14, 18)),
    "e8": (248, 8, (2, 8, 12, 14, 18, 20, 24, 30)),
}

_ID_RE = re.compile(r"^\s*(gl|sl|so|sp)\s*\(?\s*(\d+)\s*\)?\s*$")


class UnsupportedGroupError(ValueError):
    pass


@dataclass(frozen=True)
class GroupData:
    """Numeric invariants of a connected reductive group."""
    group_id: str
    family: str                 # gl | sl | so | sp | exceptional
    matrix_size: int | None     # size of the defining representation, if any
    dim: int
    rank: int
    dim_borel: int
    dim_torus: int
    dim_center_alg: int         # dim Z(g)
    dim_center_grp: int         # dim Z(G)
    degrees: tuple[int, ...]

    def __post_init__(self):
        assert 2 * self.dim_borel == self.dim + self.dim_torus
        assert len(self.degrees) == self.rank
        assert sum(2 * d - 1 for d in self.degrees) == self.dim


def parse_group_id(group_id: str) -> tuple[str, int | None]:
    gid = group_id.strip().lower()
    if gid in _EXCEPTIONAL:
        return gid, None
    m = _ID_RE.match(gid)
    if not m:
        raise UnsupportedGroupError(f"unsupported group id {group_id!r}")
    family, num = m.group(1), int(m.group(2))
    if family in ("gl", "sl") and num < 1 or family == "sl" and num < 2:
        raise UnsupportedGroupError(f"{family}({num}) is not supported (need rank >= 1)")
    if family == "so" and num < 3:
        raise UnsupportedGroupError(f"so({num}) is not supported (need r >= 3)")
    if family == "sp":
        if num < 2 or num % 2:
            raise UnsupportedGroupError(f"sp({num}) requires an even size >= 2")
    return family, num


def group_data(group_id: str) -> GroupData:
    """Tabulated Lie data for a supported group id such as 'sl(2)' or 'so5'."""
    family, num = parse_group_id(group_id)
    canon = family if num is None else f"{family}({num})"
    if family in _EXCEPTIONAL:
        dim, rk, degs = _EXCEPTIONAL[family]
        return GroupData(canon, "exceptional", None, dim, rk, (dim + rk) // 2,
                         rk, 0, 0, degs)
    r = num
    if family == "gl":
        dim, rk, degs = r * r, r, tuple(range(1, r + 1))
        torus, zalg, zgrp = r, 1, 1
    elif family == "sl":
        dim, rk, degs = r * r - 1, r - 1, tuple(range(2, r + 1))
        torus, zalg, zgrp = r - 1, 0, 0
    elif family == "so":
        k = r // 2
        dim, rk = r * (r - 1) // 2, k
        if r % 2:
            degs = tuple(2 * i for i in range(1, k + 1))
        else:
            degs = tuple(2 * i for i in range(1, k)) + (k,)
        torus, zalg, zgrp = k, 0, 0
    else:  # sp
        r2 = num
        k = r2 // 2
        dim, rk, degs = k * (2 * k + 1), k, tuple(2 * i for i in range(1, k + 1))
        torus, zalg, zgrp = k, 0, 0
    return GroupData(canon, family, num, dim, rk, (dim + torus) // 2, torus,
                     zalg, zgrp, degs)


# ---------------------------------------------------------------------------
# matrix models
# ---------------------------------------------------------------------------

def _unit(n: int, a: int, b: int) -> Matrix:
    return tuple(tuple(ONE if (i, j) == (a, b) else ZERO for j in range(n)) for i in range(n))


def _madd(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))

def _msub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))

def _mscale(a: Matrix, c: Fraction) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)

def _mmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(n)), ZERO)
                       for j in range(n)) for i in range(n))

def _mzero(n: int) -> Matrix:
    return tuple(tuple(ZERO for _ in range(n)) for _ in range(n))

def mat_trace(a: Matrix) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), ZERO)

def mat_commutator(a: Matrix, b: Matrix) -> Matrix:
    return _msub(_mmul(a, b), _mmul(b, a))

def flatten(a: Matrix) -> Vec:
    return [x for row in a for x in row]

def unflatten(v: Sequence[Fraction], n: int) -> Matrix:
    return tuple(tuple(v[i * n + j] for j in range(n)) for i in range(n))


def to_matrix(entries) -> Matrix:
    return tuple(tuple(frac(x) for x in row) for row in entries)


def algebra_basis(group: GroupData) -> list[Matrix]:
    """Deterministic basis of the algebra in the defining representation."""
    if group.family == "exceptional":
        raise UnsupportedGroupError(f"{group.group_id} has no matrix model (dimension data only)")
    n = group.matrix_size
    basis: list[Matrix] = []
    if group.family == "gl":
        for a in range(n):
            for b in range(n):
                basis.append(_unit(n, a, b))
    elif group.family == "sl":
        for a in range(n):
            for b in range(n):
                if a != b:
                    basis.append(_unit(n, a, b))
        for i in range(n - 1):
            basis.append(_msub(_unit(n, i, i), _unit(n, i + 1, i + 1)))
    elif group.family == "so":
        # so(Q) = Q * (skew matrices) for Q = antidiag(1..1), since Q^2 = I.
        q = tuple(tuple(ONE if i + j == n - 1 else ZERO for j in range(n)) for i in range(n))
        for a in range(n):
            for b in range(a + 1, n):
                basis.append(_mmul(q, _msub(_unit(n, a, b), _unit(n, b, a))))
    else:  # sp
        k = n // 2
        jm = [[ZERO] * n for _ in range(n)]
        for i in range(k):
            jm[i][k + i] = ONE
            jm[k + i][i] = -ONE
        j = tuple(tuple(row) for row in jm)
        minus_j = _mscale(j, -ONE)
        for a in range(n):
            for b in range(a, n):
                sym = _madd(_unit(n, a, b), _unit(n, b, a))
                basis.append(_mmul(minus_j, sym))
    assert len(basis) == group.dim
    return basis


def torus_basis(group: GroupData) -> list[Matrix]:
    """Basis of the fixed (diagonal) Cartan torus of the matrix model."""
    n = group.matrix_size
    if group.family == "gl":
        return [_unit(n, i, i) for i in range(n)]
    if group.family == "sl":
        return [_msub(_unit(n, i, i), _unit(n, i + 1, i + 1)) for i in range(n - 1)]
    if group.family == "so":
        return [_msub(_unit(n, i, i), _unit(n, n - 1 - i, n - 1 - i)) for i in range(n // 2)]
    if group.family == "sp":
        k = n // 2
        return [_msub(_unit(n, i, i), _unit(n, k + i, k + i)) for i in range(k)]
    raise UnsupportedGroupError(group.group_id)


@dataclass(frozen=True)
class AlgebraElement:
    """A matrix in the defining representation with its algebra tag."""
    matrix: Matrix
    group_id: str

    @property
    def size(self) -> int:
        return len(self.matrix)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        _check_same(self, other)
        return AlgebraElement(_madd(self.matrix, other.matrix), self.group_id)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        _check_same(self, other)
        return AlgebraElement(_msub(self.matrix, other.matrix), self.group_id)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(_mscale(self.matrix, -ONE), self.group_id)

    def scale(self, c) -> "AlgebraElement":
        return AlgebraElement(_mscale(self.matrix, frac(c)), self.group_id)

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.matrix for x in row)


def _check_same(a: AlgebraElement, b: AlgebraElement):
    if a.group_id != b.group_id:
        raise ValueError(f"algebra mismatch: {a.group_id} vs {b.group_id}")
    if len(a.matrix) != len(b.matrix):
        raise ValueError("matrix size mismatch")


class AlgebraModel:
    """A group plus its basis, coordinate maps and membership tests."""

    def __init__(self, group_id: str):
        self.group = group_data(group_id)
        if self.group.family == "exceptional":
            raise UnsupportedGroupError(
                f"{self.group.group_id} is not supported for evaluation (dimension data only)")
        self.n = self.group.matrix_size
        self.basis = algebra_basis(self.group)
        self.torus = torus_basis(self.group)
        self._coord_solver = LinSolver([flatten(m) for m in self.basis], self.n * self.n)

    def element(self, entries, validate: bool = True) -> AlgebraElement:
        m = to_matrix(entries)
        if len(m) != self.n or any(len(r) != self.n for r in m):
            raise ValueError(f"expected a {self.n}x{self.n} matrix for {self.group.group_id}")
        el = AlgebraElement(m, self.group.group_id)
        if validate and not self.contains(el):
            raise ValueError(f"matrix is not an element of {self.group.group_id}")
        return el

    def zero(self) -> AlgebraElement:
        return AlgebraElement(_mzero(self.n), self.group.group_id)

    def contains(self, el: AlgebraElement) -> bool:
        return self._coord_solver.coords(flatten(el.matrix)) is not None

    def coords(self, el: AlgebraElement) -> Vec:
        c = self._coord_solver.coords(flatten(el.matrix))
        if c is None:
            raise ValueError(f"matrix is not an element of {self.group.group_id}")
        return c

    def from_coords(self, coords: Sequence[Fraction]) -> AlgebraElement:
        m = _mzero(self.n)
        for c, b in zip(coords, self.basis):
            if c:
                m = _madd(m, _mscale(b, frac(c)))
        return AlgebraElement(m, self.group.group_id)


def bracket(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Commutator ab - ba."""
    _check_same(a, b)
    return AlgebraElement(mat_commutator(a.matrix, b.matrix), a.group_id)


@dataclass(frozen=True)
class InvariantForm:
    """Nondegenerate invariant symmetric bilinear form.

    The default is the trace form of the defining representation.  The form
    on the center is a free choice; center_scale rescales it (the evaluation
    becomes tr(ab) + (center_scale - 1) tr(a) tr(b) / size, which changes
    nothing on trace-free algebras).  Downstream dimension results must not
    depend on this choice, which the test suite checks.
    """
    group_id: str
    center_scale: Fraction = ONE

    def __post_init__(self):
        if self.center_scale == 0:
            raise ValueError("center_scale must be nonzero (nondegeneracy)")

    def __call__(self, a: AlgebraElement, b: AlgebraElement) -> Fraction:
        _check_same(a, b)
        if a.group_id != self.group_id:
            raise ValueError(f"form for {self.group_id} applied to {a.group_id} elements")
        val = mat_trace(_mmul(a.matrix, b.matrix))
        if self.center_scale != 1:
            val += (self.center_scale - 1) * mat_trace(a.matrix) * mat_trace(b.matrix) \
                / len(a.matrix)
        return val

    def gram(self, elements: Sequence[AlgebraElement]) -> Mat:
        return [[self(a, b) for b in elements] for a in elements]


def trace_form(group_id: str, center_scale: Fraction = ONE) -> InvariantForm:
    return InvariantForm(group_data(group_id).group_id, center_scale)


def check_invariance(form: InvariantForm, a: AlgebraElement, b: AlgebraElement,
                     c: AlgebraElement) -> Fraction:
    """Invariance residual sigma([a,c], b) + sigma(c, [a,b]); zero for valid forms."""
    return form(bracket(a, c), b) + form(c, bracket(a, b))


def perp_subspace(form: InvariantForm, subspace: Sequence[AlgebraElement],
                  model: AlgebraModel) -> list[AlgebraElement]:
    """Basis of the annihilator {v : sigma(v, h) = 0 for all h in the span}."""
    coords = [model.coords(h) for h in subspace]
    if coords and rank(coords) < len(coords):
        raise ValueError("subspace basis is linearly dependent")
    gram_rows = []
    for h in subspace:
        gram_rows.append([form(h, bi) for bi in
                          (AlgebraElement(b, model.group.group_id) for b in model.basis)])
    kernel = nullspace(gram_rows, ncols=model.group.dim)
    return [model.from_coords(v) for v in kernel]


# ---------------------------------------------------------------------------
# invariant polynomials
# ---------------------------------------------------------------------------

def char_poly_elementary(m: Matrix) -> list[Fraction]:
    """Elementary symmetric functions e_1..e_n of the eigenvalues of m.

    det(tI - m) = sum_k (-1)^k e_k t^(n-k); computed by Newton's identities
    from exact power traces.
    """
    n = len(m)
    power = m
    psums = []
    for _ in range(n):
        psums.append(mat_trace(power))
        power = _mmul(power, m)
    e = [ONE]
    for k in range(1, n + 1):
        acc = ZERO
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * e[k - i] * psums[i - 1]
        e.append(acc / k)
    return e[1:]


def pfaffian(m: Matrix) -> Fraction:
    """Pfaffian of a skew-symmetric matrix (recursive first-row expansion)."""
    n = len(m)
    if n % 2:
        return ZERO
    if n == 0:
        return ONE
    if any(m[i][j] != -m[j][i] for i in range(n) for j in range(i, n)):
        raise ValueError("pfaffian of a non-skew matrix")
    if n == 2:
        return m[0][1]
    total = ZERO
    for j in range(1, n):
        if m[0][j] == 0:
            continue
        keep = [i for i in range(1, n) if i != j]
        sub = tuple(tuple(m[a][b] for b in keep) for a in keep)
        total += (-1) ** (j - 1) * m[0][j] * pfaffian(sub)
    return total


def invariant_polynomials(group_id: str, el: AlgebraElement) -> tuple[Fraction, ...]:
    """Values p_1(m), ..., p_r(m) of the generators of degrees d_1 < ... < d_r.

    gl(r): all elementary symmetric functions of the eigenvalues; sl(r): the
    trace is dropped; so/sp: the even ones, with the Pfaffian replacing e_2k
    for so(2k).
    """
    g = group_data(group_id)
    if g.family == "exceptional":
        raise UnsupportedGroupError(f"{g.group_id} is not supported for evaluation")
    if el.group_id != g.group_id:
        raise ValueError(f"element tagged {el.group_id} passed to {g.group_id}")
    e = char_poly_elementary(el.matrix)
    if g.family == "gl":
        return tuple(e)
    if g.family == "sl":
        return tuple(e[1:])
    if g.family == "sp":
        return tuple(e[2 * i - 1] for i in range(1, g.rank + 1))
    # so(r)
    r = g.matrix_size
    k = r // 2
    if r % 2:
        return tuple(e[2 * i - 1] for i in range(1, k + 1))
    vals = [e[2 * i - 1] for i in range(1, k)]
    q = tuple(tuple(ONE if i + j == r - 1 else ZERO for j in range(r)) for i in range(r))
    vals.append(pfaffian(_mmul(q, el.matrix)))
    return tuple(vals)


# ---------------------------------------------------------------------------
# framings
# ---------------------------------------------------------------------------

@dataclass
class FramingSpec:
    """Per-marked-point framing subalgebra with derived annihilator data."""
    model: AlgebraModel
    form: InvariantForm
    subalgebra: list[AlgebraElement]        # basis of h_x; empty for a trivial framing
    perp: list[AlgebraElement] = field(init=False)
    dim_torus_cap: int = field(init=False)  # dim(h_x ∩ fixed torus)
    center_stab_dim: int | None = None      # dim Z_{H_x}(G), user supplied

    def __post_init__(self):
        g = self.model.group
        if len(self.subalgebra) >= g.dim:
            raise ValueError("framing subgroup must be a proper subgroup (dim h_x < dim g)")
        coords = [self.model.coords(h) for h in self.subalgebra]
        if coords and rank(coords) < len(coords):
            raise ValueError("framing subalgebra basis is linearly dependent")
        ech = Echelon(g.dim)
        for c in coords:
            ech.insert(c)
        for a in self.subalgebra:
            for b in self.subalgebra:
                if not ech.contains(self.model.coords(bracket(a, b))):
                    raise ValueError("framing subspace is not closed under the bracket")
        self.perp = perp_subspace(self.form, self.subalgebra, self.model)
        if len(self.subalgebra) + len(self.perp) != g.dim:
            raise ValueError("annihilator dimension check failed")
        pech = Echelon(g.dim)
        for p in self.perp:
            pech.insert(self.model.coords(p))
        for a in self.subalgebra:
            for p in self.perp:
                if not pech.contains(self.model.coords(bracket(a, p))):
                    raise ValueError("bracket stability [h, h_perp] ⊆ h_perp failed")
        tor = [self.model.coords(AlgebraElement(t, g.group_id)) for t in self.model.torus]
        both = span_dim(coords + tor, g.dim)
        self.dim_torus_cap = len(coords) + len(tor) - both

    @property
    def dim(self) -> int:
        return len(self.subalgebra)


def trivial_framing(model: AlgebraModel, form: InvariantForm) -> FramingSpec:
    return FramingSpec(model, form, [], center_stab_dim=model.group.dim_center_grp)


def torus_framing(model: AlgebraModel, form: InvariantForm) -> FramingSpec:
    gid = model.group.group_id
    return FramingSpec(model, form, [AlgebraElement(t, gid) for t in model.torus])
