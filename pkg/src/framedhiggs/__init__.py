"""Exact-arithmetic toolkit for framed Higgs bundles on the rational curve.

Subpackages:
  liealg       matrix models of the classical algebras, invariant forms,
               invariant polynomials, framing subalgebras
  curve        sheaves of rational sections and their cohomology
  dimensions   closed-form moduli/base/fiber dimensions and the audit
  deformation  deformation complexes, hypercohomology, the symplectic pairing
               and the Poisson-anchor matrix identity
  gaudin       the Hitchin map on residue tuples, Lie-Poisson brackets, flows
  spectral     spectral curves, discriminants, branch data, genus identities
  cli          the `hfb` batch runner
"""

__version__ = "0.1.0"

from .curve import (H1Presentation, INFINITY, MarkedCurve, SheafSpec, Window,
                    check_serre_dual, global_sections, h1_presentation,
                    make_spec, residue, serre_dual_spec, serre_pairing)
from .deformation import (FRAMED, TWISTED, TWISTED_DUAL, DeformationTheory,
                          FramedHiggsModel, HypercohResult, Hypercohomology,
                          build_complexes, framed_higgs_model, hyper_pair,
                          verify_poisson_map)
from .dimensions import (DimReport, consistency_audit, audit_grid,
                         dim_moduli_framed, dim_moduli_higgs, hitchin_base_dim,
                         hitchin_fiber_dim, torsor_dims)
from .gaudin import (FlowToleranceError, GaudinSystem, HitchinPoint,
                     PolyObservable, commutativity_check, hamiltonian_flow,
                     hitchin_map, lie_poisson_bracket)
from .liealg import (AlgebraElement, AlgebraModel, FramingSpec, GroupData,
                     InvariantForm, UnsupportedGroupError, bracket,
                     check_invariance, group_data, invariant_polynomials,
                     perp_subspace, torus_framing, trace_form, trivial_framing)
from .rationalfn import Poly, RatContext, VSection
from .sampling import random_algebra_element, random_residue_tuple, seeded_model
from .spectral import (SpectralCurveReport, spectral_data, spectral_genus,
                       torsor_fiber_report)
