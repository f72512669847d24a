"""The Hitchin map on residue data and the product Lie-Poisson bracket.

Residue tuples (A_1, ..., A_n) with sum zero describe the Higgs field
theta(z) = sum_i A_i dz/(z - x_i) on the trivialized rational curve.  The
invariant-polynomial coefficients of theta are exact polynomial functions of
the matrix entries; the chart Poisson structure is the product Lie-Poisson
bracket transported by the trace form, with gradients projected into the
algebra.  Brackets are exact; floating point appears only in the flow
integrator.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .exactlinalg import Mat, ZERO, ONE, frac, inverse, mat_vec, vec_is_zero
from .liealg import AlgebraElement, AlgebraModel, flatten, mat_trace
from .rationalfn import RatContext, VSection

Monomial = tuple[tuple[int, int], ...]   # sorted ((var, exp), ...)


class PolyObservable:
    """Sparse multivariate polynomial with exact rational coefficients.

    Variables index the entries of the residue matrices; the site layout is
    owned by the ambient GaudinSystem.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Monomial, Fraction] | None = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c != 0}

    @classmethod
    def constant(cls, c) -> "PolyObservable":
        c = frac(c)
        return cls({(): c} if c else {})

    @classmethod
    def variable(cls, idx: int) -> "PolyObservable":
        return cls({((idx, 1),): ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e for _, e in m) for m in self.terms), default=0)

    def __add__(self, o: "PolyObservable") -> "PolyObservable":
        out = dict(self.terms)
        for m, c in o.terms.items():
            out[m] = out.get(m, ZERO) + c
        return PolyObservable(out)

    def __sub__(self, o: "PolyObservable") -> "PolyObservable":
        return self + o.scale(-ONE)

    def scale(self, c) -> "PolyObservable":
        c = frac(c)
        return PolyObservable({m: c * x for m, x in self.terms.items()})

    def __mul__(self, o: "PolyObservable") -> "PolyObservable":
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                vars_: dict[int, int] = dict(m1)
                for v, e in m2:
                    vars_[v] = vars_.get(v, 0) + e
                key = tuple(sorted(vars_.items()))
                out[key] = out.get(key, ZERO) + c1 * c2
        return PolyObservable(out)

    def diff(self, var: int) -> "PolyObservable":
        out: dict[Monomial, Fraction] = {}
        for m, c in self.terms.items():
            for i, (v, e) in enumerate(m):
                if v == var:
                    rest = m[:i] + ((v, e - 1),) + m[i + 1:] if e > 1 else m[:i] + m[i + 1:]
                    out[rest] = out.get(rest, ZERO) + c * e
                    break
        return PolyObservable(out)

    def __call__(self, values: Sequence[Fraction]) -> Fraction:
        acc = ZERO
        for m, c in self.terms.items():
            term = c
            for v, e in m:
                term *= values[v] ** e
            acc += term
        return acc

    def compiled(self) -> Callable[[np.ndarray], float]:
        data = [(float(c), [(v, e) for v, e in m]) for m, c in self.terms.items()]

        def run(values: np.ndarray) -> float:
            acc = 0.0
            for c, mono in data:
                t = c
                for v, e in mono:
                    t *= values[v] ** e
                acc += t
            return acc
        return run


def _newton_elementary(power_traces: list, k_max: int, const: Callable) -> list:
    """Elementary symmetric functions from power traces over any Q-algebra."""
    e = [const(1)]
    for k in range(1, k_max + 1):
        acc = const(0)
        for i in range(1, k + 1):
            term = e[k - i] * power_traces[i - 1]
            acc = acc + (term if i % 2 else term.scale(-1))
        e.append(acc.scale(Fraction(1, k)))
    return e[1:]


def _pfaffian_generic(m: list, const: Callable):
    n = len(m)
    if n == 0:
        return const(1)
    acc = const(0)
    for j in range(1, n):
        keep = [i for i in range(1, n) if i != j]
        sub = [[m[a][b] for b in keep] for a in keep]
        term = m[0][j] * _pfaffian_generic(sub, const)
        acc = acc + (term if j % 2 else term.scale(-1))
    return acc


@dataclass(frozen=True)
class HitchinPoint:
    """Partial-fraction coefficients of the invariant polynomials of theta.

    coeffs[k][(i, j)] is the coefficient of (z - x_i)^(-j) in p_k(theta(z)),
    in the basis dual to the standard partial-fraction frame of pluri-forms
    with poles bounded by d_k D.  Normalization: trace form on the defining
    representation.
    """
    group_id: str
    degrees: tuple[int, ...]
    coeffs: tuple[dict[tuple[int, int], Fraction], ...]

    def flat(self) -> list[Fraction]:
        out = []
        for k, d in enumerate(self.degrees):
            n = max((i for i, _ in self.coeffs[k]), default=-1) + 1
            for i in range(n):
                for j in range(1, d + 1):
                    out.append(self.coeffs[k].get((i, j), ZERO))
        return out

    def is_zero(self) -> bool:
        return all(v == 0 for c in self.coeffs for v in c.values())


class GaudinSystem:
    """Residue-tuple phase space for a classical group and marked points."""

    def __init__(self, model: AlgebraModel, points: Sequence[Fraction]):
        self.model = model
        self.points = tuple(frac(p) for p in points)
        if len(set(self.points)) != len(self.points) or any(p == 0 for p in self.points):
            raise ValueError("marked points must be distinct, finite and nonzero")
        self.n = len(self.points)
        self.s = model.n
        self.group = model.group
        # trace-orthogonal projection onto the algebra, as a map of basis
        # coordinates: coords(pi(Y)) = R @ flatten(Y^T)' with rows tr(B_j Y).
        basis = model.basis
        gram = [[mat_trace(_mat_mul(a, b)) for b in basis] for a in basis]
        tmat = [flatten(_transpose(b)) for b in basis]
        self._grad_rows = _mat_mul_rect(inverse(gram), tmat)   # dim x s^2
        self._coeff_functions: dict[int, dict[tuple[int, int], PolyObservable]] | None = None
        self._interp_cache: dict[int, tuple] = {}
        self._pf_functions: dict[tuple[int, int], PolyObservable] | None = None

    # -- variable layout ------------------------------------------------------

    @property
    def nvars(self) -> int:
        return self.n * self.s * self.s

    def var(self, site: int, a: int, b: int) -> int:
        return site * self.s * self.s + a * self.s + b

    def coordinate(self, site: int, a: int, b: int) -> PolyObservable:
        return PolyObservable.variable(self.var(site, a, b))

    def pairing_observable(self, site: int, el: AlgebraElement) -> PolyObservable:
        """The linear observable A_site |-> tr(A_site el)."""
        obs = PolyObservable()
        for a in range(self.s):
            for b in range(self.s):
                if el.matrix[b][a]:
                    obs = obs + self.coordinate(site, a, b).scale(el.matrix[b][a])
        return obs

    def flatten_point(self, residues: Sequence[AlgebraElement]) -> list[Fraction]:
        vals: list[Fraction] = []
        for el in residues:
            vals.extend(flatten(el.matrix))
        return vals

    # -- symbolic residue matrices --------------------------------------------

    def site_matrix(self, site: int) -> list[list[PolyObservable]]:
        return [[self.coordinate(site, a, b) for b in range(self.s)] for a in range(self.s)]

    def theta_matrix_at(self, t: Fraction) -> list[list[PolyObservable]]:
        """Entries of theta(t) = sum_i A_i / (t - x_i) as polynomials."""
        t = frac(t)
        out = [[PolyObservable() for _ in range(self.s)] for _ in range(self.s)]
        for i, x in enumerate(self.points):
            w = ONE / (t - x)
            for a in range(self.s):
                for b in range(self.s):
                    out[a][b] = out[a][b] + self.coordinate(i, a, b).scale(w)
        return out

    def invariant_values(self, mat: list[list[PolyObservable]]) -> list[PolyObservable]:
        """p_1..p_r of a symbolic matrix, following the group's conventions."""
        g = self.group
        s = len(mat)
        traces = []
        power = mat
        for _ in range(s):
            traces.append(_sum_obs(power[i][i] for i in range(s)))
            power = _obs_mat_mul(power, mat)
        e = _newton_elementary(traces, s, PolyObservable.constant)
        if g.family == "gl":
            return e
        if g.family == "sl":
            return e[1:]
        if g.family == "sp":
            return [e[2 * i - 1] for i in range(1, g.rank + 1)]
        r = g.matrix_size
        k = r // 2
        if r % 2:
            return [e[2 * i - 1] for i in range(1, k + 1)]
        vals = [e[2 * i - 1] for i in range(1, k)]
        q = [[ONE if i + j == r - 1 else ZERO for j in range(r)] for i in range(r)]
        qm = [[_sum_obs(mat[l][b].scale(q[a][l]) for l in range(r) if q[a][l])
               for b in range(r)] for a in range(r)]
        vals.append(_pfaffian_generic(qm, PolyObservable.constant))
        return vals

    # -- the Hitchin coefficient functions --------------------------------------

    def _interp_data(self, k: int):
        """Sample points and the inverse interpolation matrix for degree index k.

        p_k(theta(z)) decays at infinity, so it is an exact combination of
        (z - x_i)^(-j), j <= d_k; coefficients are recovered from values at
        fresh sample points by solving the exact interpolation system.
        """
        if k not in self._interp_cache:
            d = self.group.degrees[k]
            cols = [(i, j) for i in range(self.n) for j in range(1, d + 1)]
            ts = []
            t = max(self.points) + 1
            while len(ts) < len(cols):
                if t not in self.points:
                    ts.append(t)
                t += 1
            vmat = [[ONE / (t - self.points[i]) ** j for (i, j) in cols] for t in ts]
            self._interp_cache[k] = (cols, ts, inverse(vmat))
        return self._interp_cache[k]

    def theta_value_at(self, t: Fraction, residues: Sequence[AlgebraElement]):
        acc = None
        for x, el in zip(self.points, residues):
            w = ONE / (t - x)
            term = tuple(tuple(w * v for v in row) for row in el.matrix)
            acc = term if acc is None else tuple(
                tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(acc, term))
        return acc

    def coefficient_functions(self) -> dict[int, dict[tuple[int, int], PolyObservable]]:
        """Symbolic partial-fraction coefficient functions of p_k(theta(z))."""
        if self._coeff_functions is not None:
            return self._coeff_functions
        out: dict[int, dict[tuple[int, int], PolyObservable]] = {}
        invariant_cache: dict[Fraction, list[PolyObservable]] = {}

        def invariants_at(t: Fraction) -> list[PolyObservable]:
            if t not in invariant_cache:
                invariant_cache[t] = self.invariant_values(self.theta_matrix_at(t))
            return invariant_cache[t]

        for k in range(len(self.group.degrees)):
            cols, ts, vinv = self._interp_data(k)
            sym_values = [invariants_at(t)[k] for t in ts]
            coeffs: dict[tuple[int, int], PolyObservable] = {}
            for row, col in zip(vinv, cols):
                acc = PolyObservable()
                for w, val in zip(row, sym_values):
                    if w:
                        acc = acc + val.scale(w)
                coeffs[col] = acc
            out[k] = coeffs
        self._coeff_functions = out
        return out

    def coefficient_function_list(self) -> list[tuple[int, int, int, PolyObservable]]:
        fns = self.coefficient_functions()
        out = []
        for k in sorted(fns):
            for (i, j) in sorted(fns[k]):
                out.append((k, i, j, fns[k][(i, j)]))
        return out

    def hitchin_point(self, residues: Sequence[AlgebraElement]) -> HitchinPoint:
        """Evaluate the map at a residue tuple; requires sum A_i = 0.

        Verifies holomorphy at infinity: p_k(theta) must vanish to order 2 d_k,
        which is checked exactly on the partial-fraction expansion.
        """
        total = residues[0]
        for el in residues[1:]:
            total = total + el
        if not total.is_zero():
            raise ValueError("sum of residues must vanish (holomorphy at infinity)")
        gid = self.group.group_id
        from .liealg import invariant_polynomials
        value_cache: dict[Fraction, tuple] = {}

        def invariants_at(t):
            if t not in value_cache:
                el = AlgebraElement(self.theta_value_at(t, residues), gid)
                value_cache[t] = invariant_polynomials(gid, el)
            return value_cache[t]

        coeffs = []
        ctx = RatContext(self.points, 1)
        for k, d in enumerate(self.group.degrees):
            cols, ts, vinv = self._interp_data(k)
            values = [invariants_at(t)[k] for t in ts]
            solved = mat_vec(vinv, values)
            ck = dict(zip(cols, solved))
            coeffs.append({key: v for key, v in ck.items() if v != 0})
            pp: dict[int, dict[int, list[Fraction]]] = {}
            for (i, j), v in ck.items():
                if v:
                    pp.setdefault(i, {})[j] = [v]
            expansion = VSection(ctx, pp=pp)
            for order in range(1, 2 * d):
                if not vec_is_zero(expansion.infinity_coeff(order)):
                    raise AssertionError(
                        f"holomorphy at infinity fails at order {order} for degree {d}")
        return HitchinPoint(self.group.group_id, self.group.degrees, tuple(coeffs))

    # -- Lie-Poisson structure ---------------------------------------------------

    def sigma_gradient_at(self, fn: PolyObservable, site: int,
                          values: Sequence[Fraction]) -> AlgebraElement:
        """The algebra element nabla_site fn with tr(nabla xi) = D_xi fn."""
        flat_t = []
        for b in range(self.s):
            for a in range(self.s):
                flat_t.append(fn.diff(self.var(site, a, b))(values))
        coords = mat_vec(self._grad_rows, flat_t)
        return self.model.from_coords(coords)

    def bracket_at(self, f: PolyObservable, g: PolyObservable,
                   residues: Sequence[AlgebraElement]) -> Fraction:
        """{f, g} = sum_i tr(A_i [nabla_i f, nabla_i g]) at the given point."""
        values = self.flatten_point(residues)
        acc = ZERO
        for i, el in enumerate(residues):
            df = self.sigma_gradient_at(f, i, values)
            dg = self.sigma_gradient_at(g, i, values)
            comm = _mat_commutator(df.matrix, dg.matrix)
            acc += mat_trace(_mat_mul(el.matrix, comm))
        return acc

    def bracket_symbolic(self, f: PolyObservable, g: PolyObservable) -> PolyObservable:
        """{f, g} as an exact polynomial observable."""
        acc = PolyObservable()
        for i in range(self.n):
            df = self._symbolic_gradient(f, i)
            dg = self._symbolic_gradient(g, i)
            comm = _obs_mat_sub(_obs_mat_mul(df, dg), _obs_mat_mul(dg, df))
            for a in range(self.s):
                for b in range(self.s):
                    acc = acc + (self.coordinate(i, a, b) * comm[b][a])
        return acc

    def _symbolic_gradient(self, fn: PolyObservable, site: int) -> list[list[PolyObservable]]:
        partials = []
        for b in range(self.s):
            for a in range(self.s):
                partials.append(fn.diff(self.var(site, a, b)))
        coords = []
        for row in self._grad_rows:
            acc = PolyObservable()
            for w, p in zip(row, partials):
                if w:
                    acc = acc + p.scale(w)
            coords.append(acc)
        out = [[PolyObservable() for _ in range(self.s)] for _ in range(self.s)]
        for c, bmat in zip(coords, self.model.basis):
            for a in range(self.s):
                for b in range(self.s):
                    if bmat[a][b]:
                        out[a][b] = out[a][b] + c.scale(bmat[a][b])
        return out

    def _elementary_index(self, k: int) -> int | None:
        """The subscript of the elementary symmetric function realizing the
        k-th invariant degree, or None for the Pfaffian of so(2r)."""
        g = self.group
        if g.family == "gl":
            return k + 1
        if g.family == "sl":
            return k + 2
        if g.family in ("sp", "so"):
            r = g.matrix_size
            if g.family == "so" and r % 2 == 0 and k == g.rank - 1:
                return None
            return 2 * (k + 1)
        raise ValueError(g.family)

    @staticmethod
    def _char_gradient_matrices(x) -> list:
        """P_m(X) = sum_{j<=m} (-1)^j e_{m-j}(X) X^j, so that the directional
        derivative of e_{m+1} at X along V is tr(P_m(X) V)."""
        s = len(x)
        powers = [tuple(tuple(ONE if i == j else ZERO for j in range(s))
                        for i in range(s))]
        for _ in range(s - 1):
            powers.append(_mat_mul(powers[-1], x))
        traces = [mat_trace(_mat_mul(p, x)) for p in powers]
        e = [ONE]
        for k in range(1, s + 1):
            acc = ZERO
            for i in range(1, k + 1):
                acc += (-1) ** (i - 1) * e[k - i] * traces[i - 1]
            e.append(acc / k)
        out = []
        for m in range(s):
            acc = [[ZERO] * s for _ in range(s)]
            for j in range(m + 1):
                coeff = (-1) ** j * e[m - j]
                if coeff:
                    pj = powers[j]
                    for a in range(s):
                        for b in range(s):
                            acc[a][b] += coeff * pj[a][b]
            out.append(acc)
        return out

    def _pfaffian_functions(self) -> dict[tuple[int, int], PolyObservable]:
        """Symbolic coefficient functions of the Pfaffian component (so(2r))."""
        if self._pf_functions is not None:
            return self._pf_functions
        k = self.group.rank - 1
        cols, ts, vinv = self._interp_data(k)
        r = self.group.matrix_size
        q = [[ONE if i + j == r - 1 else ZERO for j in range(r)] for i in range(r)]
        values = []
        for t in ts:
            mat = self.theta_matrix_at(t)
            qm = [[_sum_obs(mat[l][b].scale(q[a][l]) for l in range(r) if q[a][l])
                   for b in range(r)] for a in range(r)]
            values.append(_pfaffian_generic(qm, PolyObservable.constant))
        out = {}
        for row, col in zip(vinv, cols):
            acc = PolyObservable()
            for w, val in zip(row, values):
                if w:
                    acc = acc + val.scale(w)
            out[col] = acc
        self._pf_functions = out
        return out

    def coefficient_gradients_at(self, residues: Sequence[AlgebraElement]):
        """Site sigma-gradients of every invariant coefficient at a point.

        Returns a list of ((degree_index, site, order), [gradient matrix per
        site]) using the exact derivative of the elementary symmetric
        functions; the Pfaffian component of so(2r) falls back to symbolic
        differentiation.
        """
        out = []
        grad_cache: dict[Fraction, list] = {}
        values = None
        for k in range(len(self.group.degrees)):
            cols, ts, vinv = self._interp_data(k)
            ke = self._elementary_index(k)
            if ke is None:
                vals = values if values is not None else self.flatten_point(residues)
                values = vals
                for col, fn in sorted(self._pfaffian_functions().items()):
                    grads = []
                    for l in range(self.n):
                        mat = self._symbolic_gradient(fn, l)
                        grads.append(tuple(tuple(entry(vals) for entry in row)
                                           for row in mat))
                    out.append(((k, col[0], col[1]), grads))
                continue
            for t in ts:
                if t not in grad_cache:
                    grad_cache[t] = self._char_gradient_matrices(
                        self.theta_value_at(t, residues))
            for row, col in zip(vinv, cols):
                grads = []
                for l in range(self.n):
                    combo = [[ZERO] * self.s for _ in range(self.s)]
                    for w, t in zip(row, ts):
                        if w:
                            factor = w / (t - self.points[l])
                            p = grad_cache[t][ke - 1]
                            for a in range(self.s):
                                for b in range(self.s):
                                    combo[a][b] += factor * p[a][b]
                    flat = [combo[a][b] for a in range(self.s) for b in range(self.s)]
                    coords = mat_vec(self._grad_rows, flat)
                    grads.append(self.model.from_coords(coords).matrix)
                out.append(((k, col[0], col[1]), grads))
        return out

    def commutativity_check(self, residue_tuples: Sequence[Sequence[AlgebraElement]]):
        """Max |{H_a, H_b}| over all pairs of coefficient functions and points."""
        worst = ZERO
        worst_pair = None
        for residues in residue_tuples:
            data = self.coefficient_gradients_at(residues)
            for ia in range(len(data)):
                for ib in range(ia + 1, len(data)):
                    val = ZERO
                    for i, el in enumerate(residues):
                        comm = _mat_commutator(data[ia][1][i], data[ib][1][i])
                        val += mat_trace(_mat_mul(el.matrix, comm))
                    if abs(val) > abs(worst):
                        worst = val
                        worst_pair = (data[ia][0], data[ib][0])
        return worst, worst_pair

    # -- Hamiltonian flow (floating point) ----------------------------------------

    def integrate_flow(self, residues: Sequence[AlgebraElement], hamiltonian: PolyObservable,
                       t_end: float, steps: int, drift_tolerance: float | None = None):
        """Fixed-step RK4 integration of dA_i/dt = [A_i, nabla_i H].

        Returns (trajectory endpoints, drift report).  The drift report lists
        the relative drift of every Hitchin coefficient along the trajectory;
        if drift_tolerance is given, exceeding it raises FlowToleranceError.
        """
        s = self.s
        grad_polys = []
        for i in range(self.n):
            mat = self._symbolic_gradient(hamiltonian, i)
            grad_polys.append([[mat[a][b].compiled() for b in range(s)] for a in range(s)])
        fns = self.coefficient_function_list()
        compiled_fns = [(k, i, j, fn.compiled()) for (k, i, j, fn) in fns]

        state = np.array([[ [float(x) for x in row] for row in el.matrix]
                          for el in residues])  # (n, s, s)

        def rhs(st: np.ndarray) -> np.ndarray:
            flat = st.reshape(-1)
            out = np.empty_like(st)
            for i in range(self.n):
                g = np.array([[grad_polys[i][a][b](flat) for b in range(s)] for a in range(s)])
                out[i] = st[i] @ g - g @ st[i]
            return out

        h = t_end / steps
        start_vals = [fn(state.reshape(-1)) for (_, _, _, fn) in compiled_fns]
        scale = max(1.0, max(abs(v) for v in start_vals)) if start_vals else 1.0
        traj = [state.copy()]
        for _ in range(steps):
            k1 = rhs(state)
            k2 = rhs(state + 0.5 * h * k1)
            k3 = rhs(state + 0.5 * h * k2)
            k4 = rhs(state + h * k3)
            state = state + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        traj.append(state.copy())
        end_vals = [fn(state.reshape(-1)) for (_, _, _, fn) in compiled_fns]
        report = []
        for (k, i, j, _), v0, v1 in zip(compiled_fns, start_vals, end_vals):
            rel = abs(v1 - v0) / max(abs(v0), 1e-3 * scale)
            report.append({"degree_index": k, "site": i, "order": j,
                           "start": v0, "end": v1, "relative_drift": rel})
        worst = max((r["relative_drift"] for r in report), default=0.0)
        if drift_tolerance is not None and worst > drift_tolerance:
            bad = max(report, key=lambda r: r["relative_drift"])
            raise FlowToleranceError(
                f"conserved-quantity drift {worst:.3e} exceeds tolerance "
                f"{drift_tolerance:.3e} (coefficient {bad['degree_index']},"
                f"{bad['site']},{bad['order']}); reduce the step size")
        return traj, report


class FlowToleranceError(RuntimeError):
    pass


# -- small matrix helpers over plain lists / observables ----------------------

def _mat_mul(a, b):
    n = len(a)
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(n)), ZERO)
                       for j in range(n)) for i in range(n))

def _mat_commutator(a, b):
    n = len(a)
    ab = _mat_mul(a, b)
    ba = _mat_mul(b, a)
    return tuple(tuple(ab[i][j] - ba[i][j] for j in range(n)) for i in range(n))

def _transpose(a):
    return tuple(tuple(a[j][i] for j in range(len(a))) for i in range(len(a)))

def _mat_mul_rect(a: Mat, b: Mat) -> Mat:
    cols = len(b[0])
    return [[sum((a[i][k] * b[k][j] for k in range(len(b)) if a[i][k]), ZERO)
             for j in range(cols)] for i in range(len(a))]

def _sum_obs(items) -> PolyObservable:
    acc = PolyObservable()
    for it in items:
        acc = acc + it
    return acc

def _obs_mat_mul(a, b):
    n = len(a)
    out = [[PolyObservable() for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = PolyObservable()
            for k in range(n):
                acc = acc + (a[i][k] * b[k][j])
            out[i][j] = acc
    return out

def _obs_mat_sub(a, b):
    n = len(a)
    return [[a[i][j] - b[i][j] for j in range(n)] for i in range(n)]


# -- model-level convenience wrappers -----------------------------------------

def system_for_model(model) -> GaudinSystem:
    """GaudinSystem on the marked points of a framed model."""
    return GaudinSystem(model.algebra, model.curve.points)


def hitchin_map(model) -> HitchinPoint:
    """Invariant-coefficient point of a framed model's Higgs field."""
    return system_for_model(model).hitchin_point(model.residues)


def lie_poisson_bracket(system: GaudinSystem, f: PolyObservable, g: PolyObservable,
                        residues: Sequence[AlgebraElement] | None = None):
    """{f, g}: exact scalar at a residue tuple, symbolic observable otherwise."""
    if residues is None:
        return system.bracket_symbolic(f, g)
    return system.bracket_at(f, g, residues)


def commutativity_check(model, random_points: int = 5, seed: int = 0,
                        height: int = 10):
    """Max |{H_a, H_b}| at the model point and seeded random residue tuples."""
    import random as _random
    from .sampling import random_residue_tuple
    system = system_for_model(model)
    rng = _random.Random(seed)
    tuples = [list(model.residues)]
    for _ in range(random_points):
        tuples.append(random_residue_tuple(model.algebra, rng, system.n, height,
                                           zero_sum=False))
    return system.commutativity_check(tuples)


def hamiltonian_flow(model, hamiltonian: PolyObservable, t_end: float,
                     steps: int, drift_tolerance: float | None = None):
    """Fixed-step flow of a polynomial Hamiltonian from the model's residues."""
    return system_for_model(model).integrate_flow(
        model.residues, hamiltonian, t_end, steps, drift_tolerance)
