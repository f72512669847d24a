"""Deformation complexes of framed Higgs data and their hypercohomology.

For an explicit model on the rational curve (trivial bundle, residue matrices
A_i at marked points x_i, theta(z) = sum A_i dz/(z - x_i)) this module builds
the two-term complexes

    twisted:       ad           --[theta, .]-->  ad ⊗ K(D)
    framed:        ad_fr        --[theta, .]-->  ad_fr^perp ⊗ K(D)
    twisted_dual:  ad(-D)       --[theta, .]-->  ad ⊗ K

where ad_fr consists of sections valued in the framing subalgebra h_x at each
marked point and ad_fr^perp of one-forms with residues in the annihilator
h_x^perp.  Hypercohomology is the cohomology of the mapping cone over the
two-chart Cech presentation; everything is exact rational linear algebra.

The cup-product pairing on first hypercohomology contracts the mixed
components with the invariant form and evaluates the class in H^1(K) by the
sum of residues over the marked points:

    <a, b> = sum_i Res_{x_i} [ sigma(u0_a, c_b) - sigma(c_a, u1_b) ]

for cocycles a = (c_a, u0_a, u1_a).  Skew-symmetry and representative
independence are exact consequences of the invariance identity and the
annihilator pairing conditions, and both are asserted in the test suite
rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .curve import (Layout, MarkedCurve, SheafSpec, Window, default_window,
                    make_spec, sections_off_divisor, sections_on_affine_chart)
from .exactlinalg import (Echelon, LinSolver, Mat, Quotient, Vec, ZERO, ONE,
                          inverse, mat_vec, mat_is_zero, mat_mul, nullspace,
                          nullspace_sparse, zeros)
from .liealg import (AlgebraElement, AlgebraModel, FramingSpec, InvariantForm,
                     bracket, trace_form)
from .rationalfn import RatContext, VSection, pairing_residue_at_point

TWISTED = "twisted"            # deformations of the underlying twisted pair
FRAMED = "framed"              # deformations of the framed triple
TWISTED_DUAL = "twisted_dual"  # Serre dual of the twisted complex


class ModelError(ValueError):
    pass


@dataclass
class FramedHiggsModel:
    """Explicit rational-curve model: marked points, framings, residues."""
    algebra: AlgebraModel
    form: InvariantForm
    curve: MarkedCurve
    framings: tuple[FramingSpec, ...]
    residues: tuple[AlgebraElement, ...]

    def __post_init__(self):
        if self.curve.genus != 0:
            raise ModelError("the explicit engine runs on the rational curve (genus 0)")
        n = self.curve.n
        if len(self.framings) != n or len(self.residues) != n:
            raise ModelError("one framing and one residue matrix per marked point")
        dim = self.algebra.group.dim
        self._h_coords = []
        self._perp_coords = []
        for fr in self.framings:
            self._h_coords.append([self.algebra.coords(h) for h in fr.subalgebra])
            self._perp_coords.append([self.algebra.coords(p) for p in fr.perp])
        for i, (el, fr) in enumerate(zip(self.residues, self.framings)):
            ech = Echelon(dim)
            for v in self._perp_coords[i]:
                ech.insert(v)
            if not ech.contains(self.algebra.coords(el)):
                raise ModelError(
                    f"residue matrix at point {i} is not compatible with the framing "
                    "(it must lie in the annihilator of the framing subalgebra)")
        total = self.residues[0]
        for el in self.residues[1:]:
            total = total + el
        if not total.is_zero():
            raise ModelError("residue matrices must sum to zero "
                             "(holomorphy of the Higgs field at infinity)")
        basis_els = [AlgebraElement(b, self.algebra.group.group_id)
                     for b in self.algebra.basis]
        self._gram = [[self.form(a, b) for b in basis_els] for a in basis_els]
        self._ad = [self._ad_matrix(el) for el in self.residues]
        self.context = RatContext(self.curve.points, dim)

    def _ad_matrix(self, el: AlgebraElement) -> Mat:
        cols = []
        for b in self.algebra.basis:
            img = bracket(el, AlgebraElement(b, el.group_id))
            cols.append(self.algebra.coords(img))
        return [[cols[j][i] for j in range(len(cols))] for i in range(len(cols[0]))]

    @property
    def dim(self) -> int:
        return self.algebra.group.dim

    def gram_apply(self, a: Vec, b: Vec) -> Fraction:
        gb = mat_vec(self._gram, b)
        return sum((x * y for x, y in zip(a, gb) if x and y), ZERO)

    def f_theta(self, s: VSection) -> VSection:
        """[theta, s]: multiply by each residue adjoint over its pole."""
        out = VSection.zero(self.context)
        for i, ad in enumerate(self._ad):
            out = out + s.mul_pole(i).map_fiber(lambda v, a=ad: mat_vec(a, v))
        return out

    def higgs_field(self) -> VSection:
        """theta as a coordinate-valued section (the coefficient of dz)."""
        out = VSection.zero(self.context)
        for i, el in enumerate(self.residues):
            out = out + VSection.principal(self.context, i, 1, self.algebra.coords(el))
        return out

    def complex_specs(self, kind: str) -> tuple[SheafSpec, SheafSpec]:
        m = self.dim
        n = self.curve.n
        if kind == TWISTED:
            return (make_spec(m, [0] * n, None, 0),
                    make_spec(m, [1] * n, None, -2, is_form=True))
        if kind == FRAMED:
            return (make_spec(m, [0] * n, self._h_coords, 0),
                    make_spec(m, [1] * n, self._perp_coords, -2, is_form=True))
        if kind == TWISTED_DUAL:
            return (make_spec(m, [-1] * n, None, 0),
                    make_spec(m, [0] * n, None, -2, is_form=True))
        raise ValueError(f"unknown complex kind {kind!r}")

    def all_specs(self) -> list[SheafSpec]:
        out = []
        for kind in (TWISTED, FRAMED, TWISTED_DUAL):
            out.extend(self.complex_specs(kind))
        return out


def framed_higgs_model(group_id: str, points: Sequence, residues: Sequence,
                       framing: str | Sequence = "trivial") -> FramedHiggsModel:
    """Convenience constructor from matrix entries and a framing selector.

    framing: 'trivial', 'torus', or a per-point list of subalgebra bases
    (each a list of matrices; an empty list is a trivial framing).
    """
    from .liealg import torus_framing, trivial_framing
    algebra = AlgebraModel(group_id)
    form = trace_form(group_id)
    pts = tuple(Fraction(p) if not isinstance(p, Fraction) else p for p in points)
    curve = MarkedCurve(0, pts)
    if isinstance(framing, str):
        if framing == "trivial":
            frs = tuple(trivial_framing(algebra, form) for _ in pts)
        elif framing == "torus":
            frs = tuple(torus_framing(algebra, form) for _ in pts)
        else:
            raise ValueError(f"unknown framing selector {framing!r}")
    else:
        frs = tuple(
            FramingSpec(algebra, form,
                        [algebra.element(b) for b in per_point])
            for per_point in framing)
    res = tuple(el if isinstance(el, AlgebraElement) else algebra.element(el)
                for el in residues)
    return FramedHiggsModel(algebra, form, curve, frs, res)


@dataclass
class ComplexModel:
    """Assembled two-term complex with its Cech windows."""
    kind: str
    f0: SheafSpec
    f1: SheafSpec
    window0: Window   # pole window for C^1(F0); F1 uses window0.pole + 1
    containment_checked: bool = False


class Hypercohomology:
    """Mapping-cone computation shared by the complexes of one model."""

    def __init__(self, model: FramedHiggsModel, kind: str,
                 window: Window | None = None, check_containment: bool = True):
        self.model = model
        self.kind = kind
        f0, f1 = model.complex_specs(kind)
        self.f0, self.f1 = f0, f1
        base = window or default_window(model.all_specs())
        self.window0 = base
        self.window1 = Window(base.pole + 1, base.degree)
        ctx = model.context
        self.ctx = ctx

        self.f0_u0 = sections_on_affine_chart(ctx, f0, self.window0)
        self.f0_u1 = sections_off_divisor(ctx, f0, self.window0)
        self.f1_u0 = sections_on_affine_chart(ctx, f1, self.window1)
        self.f1_u1 = sections_off_divisor(ctx, f1, self.window1)
        self.c_layout = Layout(ctx, self.window0)
        self.t2_layout = Layout(ctx, self.window1)
        self.u_layout = Layout(ctx, self.window1)

        self._u0_solver = LinSolver([self.u_layout.to_coords(s) for s in self.f1_u0],
                                    self.u_layout.dim)
        self._u1_solver = LinSolver([self.u_layout.to_coords(s) for s in self.f1_u1],
                                    self.u_layout.dim)

        if check_containment:
            self._check_bracket_containment()

        self._assemble()

    def _check_bracket_containment(self):
        """The bracket with theta must map F0-chart sections into F1 ones."""
        for s in self.f0_u0:
            img = self.model.f_theta(s)
            if self._u0_solver.coords(self.u_layout.to_coords(img)) is None:
                raise AssertionError(
                    f"[theta, .] does not preserve the {self.kind} subsheaf structure")

    def _assemble(self):
        model = self.model
        n_u0, n_u1 = len(self.f1_u0), len(self.f1_u1)
        c_dim = self.c_layout.dim
        self.t1_params = n_u0 + n_u1 + c_dim

        # d1(c, u0, u1) = (u1 - u0) - [theta, c] in T^2 coordinates
        cols: list[Vec] = []
        for s in self.f1_u0:
            cols.append([-x for x in self.t2_layout.to_coords(s)])
        for s in self.f1_u1:
            cols.append(self.t2_layout.to_coords(s))
        for idx in range(c_dim):
            unit = zeros(c_dim)
            unit[idx] = ONE
            sec = self.c_layout.from_coords(unit)
            cols.append([-x for x in self.t2_layout.to_coords(model.f_theta(sec))])
        d1_rows = [[cols[j][i] for j in range(len(cols))] for i in range(self.t2_layout.dim)]

        # d0(s0, s1) = (s1 - s0, [theta, s0], [theta, s1]) in T^1 parameters
        d0_cols: list[Vec] = []
        for s in self.f0_u0:
            img = self.model.f_theta(s)
            u0c = self._u0_solver.coords(self.u_layout.to_coords(img))
            if u0c is None:
                raise AssertionError("bracket image leaves the F1 affine-chart sections")
            vec = list(u0c) + zeros(n_u1) + [-x for x in self.c_layout.to_coords(s)]
            d0_cols.append(vec)
        for s in self.f0_u1:
            img = self.model.f_theta(s)
            u1c = self._u1_solver.coords(self.u_layout.to_coords(img))
            if u1c is None:
                raise AssertionError("bracket image leaves the F1 off-divisor sections")
            vec = zeros(n_u0) + list(u1c) + self.c_layout.to_coords(s)
            d0_cols.append(vec)

        kernel = nullspace_sparse(d1_rows, ncols=self.t1_params)
        self.quotient = Quotient(self.t1_params, d0_cols, kernel)
        self.h1 = self.quotient.dim

        # H^0 = ker d0
        d0_rows = [[d0_cols[j][i] for j in range(len(d0_cols))]
                   for i in range(self.t1_params)]
        self.h0 = len(nullspace_sparse(d0_rows, ncols=len(d0_cols)))

        # H^2 = T^2 / im d1; rank d1 = t1 - dim ker d1
        self.h2 = self.t2_layout.dim - (self.t1_params - len(kernel))

        self.chi0 = self.f0.euler_char()
        self.chi1 = self.f1.euler_char()
        if self.h0 - self.h1 + self.h2 != self.chi0 - self.chi1:
            raise AssertionError(
                f"Euler characteristic identity fails for the {self.kind} complex: "
                f"{self.h0} - {self.h1} + {self.h2} != {self.chi0} - {self.chi1} "
                "(Laurent window too small?)")

    # -- cocycles ---------------------------------------------------------------

    def rep_of_params(self, params: Sequence[Fraction]) -> tuple[VSection, VSection, VSection]:
        n_u0, n_u1 = len(self.f1_u0), len(self.f1_u1)
        u0 = VSection.zero(self.ctx)
        for x, s in zip(params[:n_u0], self.f1_u0):
            if x:
                u0 = u0 + s.scale(x)
        u1 = VSection.zero(self.ctx)
        for x, s in zip(params[n_u0:n_u0 + n_u1], self.f1_u1):
            if x:
                u1 = u1 + s.scale(x)
        c = self.c_layout.from_coords(list(params[n_u0 + n_u1:]))
        return (c, u0, u1)

    def basis_reps(self) -> list[tuple[VSection, VSection, VSection]]:
        return [self.rep_of_params(p) for p in self.quotient.basis]

    def project_cocycle(self, c: VSection, u0: VSection, u1: VSection) -> Vec:
        x0 = self._u0_solver.coords(self.u_layout.to_coords(u0))
        x1 = self._u1_solver.coords(self.u_layout.to_coords(u1))
        if x0 is None or x1 is None:
            raise ValueError("cochain components do not satisfy the sheaf conditions")
        params = list(x0) + list(x1) + self.c_layout.to_coords(c)
        return self.quotient.project(params)

    def random_coboundary(self, rng) -> tuple[VSection, VSection, VSection]:
        """d0 of a random 0-cochain, for representative-independence tests."""
        s0 = VSection.zero(self.ctx)
        for s in self.f0_u0:
            s0 = s0 + s.scale(Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
        s1 = VSection.zero(self.ctx)
        for s in self.f0_u1:
            s1 = s1 + s.scale(Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
        return (s1 - s0, self.model.f_theta(s0), self.model.f_theta(s1))

    def result(self) -> "HypercohResult":
        return HypercohResult(self.kind, self.h0, self.h1, self.h2,
                              self.chi0, self.chi1)


@dataclass(frozen=True)
class HypercohResult:
    kind: str
    h0: int
    h1: int
    h2: int
    chi0: int
    chi1: int

    @property
    def euler_identity(self) -> bool:
        return self.h0 - self.h1 + self.h2 == self.chi0 - self.chi1


def build_complexes(model: FramedHiggsModel) -> tuple[ComplexModel, ComplexModel]:
    """The twisted and framed complexes, with the subsheaf mapping check.

    The constructive check that [theta, .] maps framing-valued sections into
    annihilator-valued one-forms happens at each marked point on a spanning
    set; failures indicate residues incompatible with the framing.
    """
    window = default_window(model.all_specs())
    out = []
    for kind in (TWISTED, FRAMED):
        f0, f1 = model.complex_specs(kind)
        Hypercohomology(model, kind, window)  # containment check runs here
        out.append(ComplexModel(kind, f0, f1, window, containment_checked=True))
    return out[0], out[1]


def hyper_pair(model: FramedHiggsModel,
               rep_a: tuple[VSection, VSection, VSection],
               rep_b: tuple[VSection, VSection, VSection]) -> Fraction:
    """Cup-product pairing of two first-hypercohomology cocycles.

    sum over marked points of Res [ sigma(u0_a, c_b) - sigma(c_a, u1_b) ];
    the value depends only on the classes.
    """
    c_a, u0_a, _ = rep_a
    c_b, _, u1_b = rep_b
    acc = ZERO
    for i in range(model.curve.n):
        acc += pairing_residue_at_point(u0_a, c_b, model.gram_apply, i)
        acc -= pairing_residue_at_point(c_a, u1_b, model.gram_apply, i)
    return acc


class DeformationTheory:
    """All hypercohomology data of one model, with the derived matrices."""

    def __init__(self, model: FramedHiggsModel):
        self.model = model
        self.window = default_window(model.all_specs())
        self._cones: dict[str, Hypercohomology] = {}

    def cone(self, kind: str) -> Hypercohomology:
        if kind not in self._cones:
            self._cones[kind] = Hypercohomology(self.model, kind, self.window)
        return self._cones[kind]

    def dims(self, kind: str) -> HypercohResult:
        return self.cone(kind).result()

    # -- matrices -------------------------------------------------------------

    def symplectic_matrix(self) -> Mat:
        """Gram matrix of the pairing on the framed first hypercohomology."""
        reps = self.cone(FRAMED).basis_reps()
        phi = [[hyper_pair(self.model, a, b) for b in reps] for a in reps]
        for i in range(len(phi)):
            for j in range(len(phi)):
                if phi[i][j] != -phi[j][i]:
                    raise AssertionError("symplectic pairing is not exactly skew "
                                         "(assembly bug)")
        return phi

    def forgetful_matrix(self) -> Mat:
        """Classes of framed cocycles inside the twisted hypercohomology."""
        tw = self.cone(TWISTED)
        cols = [tw.project_cocycle(*rep) for rep in self.cone(FRAMED).basis_reps()]
        return [[cols[j][i] for j in range(len(cols))]
                for i in range(tw.h1)] if cols else [[] for _ in range(tw.h1)]

    def poisson_matrix(self) -> Mat:
        """Map induced by inclusion from the dual twisted complex to the
        twisted one; realizes the Poisson anchor in these bases."""
        tw = self.cone(TWISTED)
        cols = [tw.project_cocycle(*rep) for rep in self.cone(TWISTED_DUAL).basis_reps()]
        return [[cols[j][i] for j in range(len(cols))]
                for i in range(tw.h1)] if cols else [[] for _ in range(tw.h1)]

    def forgetful_adjoint_matrix(self) -> Mat:
        """Covector matrix of the adjoint of the forgetful map.

        Entry (i, j) pairs the i-th framed basis class against the j-th dual
        twisted basis class under the cup pairing; reps include directly.
        """
        framed_reps = self.cone(FRAMED).basis_reps()
        dual_reps = self.cone(TWISTED_DUAL).basis_reps()
        return [[hyper_pair(self.model, fa, wb) for wb in dual_reps]
                for fa in framed_reps]

    def serre_pairing_matrix(self) -> Mat:
        """Pairing between the twisted hypercohomology and its Serre dual."""
        tw_reps = self.cone(TWISTED).basis_reps()
        dual_reps = self.cone(TWISTED_DUAL).basis_reps()
        return [[hyper_pair(self.model, t, w) for w in dual_reps] for t in tw_reps]

    def poisson_skew_residual(self) -> Fraction:
        """max |<P a, b> + <P b, a>| over dual-basis classes a, b."""
        tw = self.cone(TWISTED)
        dual_reps = self.cone(TWISTED_DUAL).basis_reps()
        p_cols = [tw.project_cocycle(*rep) for rep in dual_reps]
        tw_reps = tw.basis_reps()

        def pair_class_with_dual(coords: Vec, dual_rep) -> Fraction:
            acc = ZERO
            for x, rep in zip(coords, tw_reps):
                if x:
                    acc += x * hyper_pair(self.model, rep, dual_rep)
            return acc

        worst = ZERO
        for a in range(len(dual_reps)):
            for b in range(len(dual_reps)):
                val = pair_class_with_dual(p_cols[a], dual_reps[b]) + \
                    pair_class_with_dual(p_cols[b], dual_reps[a])
                if abs(val) > abs(worst):
                    worst = val
        return worst


@dataclass
class PoissonMapCheck:
    ok: bool
    residual: Mat
    phi_rank: int
    framed_dims: HypercohResult
    twisted_dims: HypercohResult
    dual_dims: HypercohResult
    degenerate_directions: list[Vec]


def verify_poisson_map(theory: DeformationTheory, corrupt_sign: bool = False) -> PoissonMapCheck:
    """Exact matrix identity: forgetful ∘ pairing^{-1} ∘ forgetful-adjoint
    equals the inclusion-induced map on the twisted hypercohomology.

    Requires the framed pairing to be invertible (vanishing h^0 and h^2 of the
    framed complex); otherwise the degenerate directions are reported.
    corrupt_sign flips the adjoint for negative-control testing.
    """
    framed = theory.dims(FRAMED)
    twisted = theory.dims(TWISTED)
    dual = theory.dims(TWISTED_DUAL)
    phi = theory.symplectic_matrix()
    degenerate = nullspace(phi, ncols=len(phi)) if phi else []
    if framed.h0 != 0 or framed.h2 != 0 or degenerate:
        return PoissonMapCheck(False, [], len(phi) - len(degenerate),
                               framed, twisted, dual, degenerate)
    dphi = theory.forgetful_matrix()
    p = theory.poisson_matrix()
    adj = theory.forgetful_adjoint_matrix()
    if corrupt_sign:
        adj = [[-x for x in row] for row in adj]
    lhs = mat_mul(mat_mul(dphi, inverse(phi)), adj)
    residual = [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(lhs, p)]
    return PoissonMapCheck(mat_is_zero(residual), residual, len(phi),
                           framed, twisted, dual, [])
