import random
from fractions import Fraction as F

import pytest

from framedhiggs.dimensions import hitchin_base_dim, hitchin_fiber_dim
from framedhiggs.liealg import AlgebraModel
from framedhiggs.sampling import random_algebra_element
from framedhiggs.spectral import (spectral_data, spectral_genus,
                                  torsor_fiber_report)

PTS3 = (F(1), F(2), F(3))


def balanced(model, rng, n, h=4):
    els = [random_algebra_element(model, rng, h) for _ in range(n - 1)]
    total = els[0]
    for e in els[1:]:
        total = total + e
    els.append(total.scale(-1))
    return els


# ---------------------------------------------------------------------------
# genus identities
# ---------------------------------------------------------------------------

def test_spectral_genus_examples():
    assert spectral_genus(2, 2, 1) == 6
    assert spectral_genus(2, 1, 2) == 3
    assert spectral_genus(3, 2, 1) == 13


def test_spectral_genus_full_grid():
    for r in range(2, 6):
        for g in range(0, 5):
            for n in range(1, 6):
                gs = spectral_genus(r, g, n)
                assert gs == hitchin_fiber_dim(f"gl({r})", g, n, allow_genus_zero=True)


def test_spectral_genus_rejects_bad_input():
    with pytest.raises(ValueError):
        spectral_genus(1, 1, 1)
    with pytest.raises(ValueError):
        spectral_genus(2, 1, 0)


# ---------------------------------------------------------------------------
# spectral data of explicit models
# ---------------------------------------------------------------------------

def test_zero_field_is_globally_degenerate():
    m = AlgebraModel("sl(2)")
    z = m.zero()
    rep = spectral_data(m, PTS3, [z, z, z])
    assert rep.degenerate and not rep.smooth


def test_generic_sl2_model_is_smooth_unramified():
    rng = random.Random(3)
    m = AlgebraModel("sl(2)")
    els = balanced(m, rng, 3)
    rep = spectral_data(m, PTS3, els)
    assert not rep.degenerate
    assert rep.unramified_over_marked and rep.squarefree and rep.smooth
    assert rep.branch_degree == 2
    assert rep.genus == 0 == spectral_genus(2, 0, 3)
    finite = sum(mult for _, mult in rep.rational_branch_points) + \
        sum(1 for _ in rep.isolated_branch_boxes)
    assert finite + rep.infinity_multiplicity == rep.branch_degree


def test_nilpotent_residue_ramifies_over_marked_point():
    rng = random.Random(5)
    m = AlgebraModel("sl(2)")
    nil = m.element([[0, 1], [0, 0]])
    b = random_algebra_element(m, rng, 3)
    els = [nil, b, (nil + b).scale(-1)]
    rep = spectral_data(m, PTS3, els)
    assert rep.disc_at_marked[0] == 0
    assert not rep.unramified_over_marked
    assert not rep.in_nonramified_smooth_locus()


def test_regular_semisimple_iff_nonzero_marked_discriminant():
    m = AlgebraModel("sl(2)")
    # regular semisimple residue: distinct eigenvalues -> nonzero discriminant
    rs = m.element([[1, 0], [0, -1]])
    b = m.element([[0, 1], [1, 0]])
    els = [rs, b, (rs + b).scale(-1)]
    rep = spectral_data(m, PTS3, els)
    assert rep.disc_at_marked[0] != 0
    # nilpotent (non-semisimple): zero discriminant, checked both directions
    nil = m.element([[0, 1], [0, 0]])
    els2 = [nil, b, (nil + b).scale(-1)]
    rep2 = spectral_data(m, PTS3, els2)
    assert rep2.disc_at_marked[0] == 0


def test_branch_count_matches_disc_degree_squarefree():
    rng = random.Random(11)
    m = AlgebraModel("sl(3)")
    els = balanced(m, rng, 3, 2)
    rep = spectral_data(m, (F(1), F(2), F(3)), els)
    if rep.squarefree:
        finite_count = sum(mult for _, mult in rep.rational_branch_points) + \
            len(rep.isolated_branch_boxes)
        assert finite_count == rep.disc_numerator.degree
        assert rep.branch_degree == 6


def test_isolating_boxes_contain_roots():
    rng = random.Random(3)
    m = AlgebraModel("sl(2)")
    els = balanced(m, rng, 3)
    rep = spectral_data(m, PTS3, els)
    for box in rep.isolated_branch_boxes:
        if box[0] == "real":
            _, lo, hi = box
            assert hi - lo <= F(2, 10 ** 9)
            assert rep.disc_numerator(lo) * rep.disc_numerator(hi) <= 0


def test_rank_restriction():
    m = AlgebraModel("sp(4)")
    with pytest.raises(ValueError, match="gl\\(r\\) or sl\\(r\\)"):
        spectral_data(m, (F(1),), [m.zero()])


# ---------------------------------------------------------------------------
# torsor dimension reports
# ---------------------------------------------------------------------------

def test_torsor_formula_level_gl2_single_point():
    # formula level at genus 2, n = 1: framed fiber 6 + 4 - 1 = 9 and the
    # relatively framed fiber 6 + 2 - 1 = 7 equals the base dimension
    from framedhiggs.dimensions import torsor_dims
    fiber = hitchin_fiber_dim("gl(2)", 2, 1)
    tors = torsor_dims("gl(2)", 1)
    assert fiber + tors.framed_over_unframed == 9
    assert fiber + tors.relative_over_unframed == 7 == hitchin_base_dim("gl(2)", 2, 1)


def test_torsor_report_formula_level_gl2():
    rng = random.Random(7)
    m = AlgebraModel("gl(2)")
    els = balanced(m, rng, 3, 2)
    rep = spectral_data(m, PTS3, els)
    if rep.in_nonramified_smooth_locus():
        tr = torsor_fiber_report(rep, genus=2)
        assert tr.framed_fiber_dim == hitchin_fiber_dim("gl(2)", 2, 3) + 3 * 4 - 1
        assert tr.relative_fiber_dim == tr.base_dim == hitchin_base_dim("gl(2)", 2, 3)


def test_torsor_report_genus_zero_diagnostic():
    rng = random.Random(3)
    m = AlgebraModel("gl(2)")
    els = balanced(m, rng, 3, 3)
    rep = spectral_data(m, PTS3, els)
    if rep.in_nonramified_smooth_locus():
        tr = torsor_fiber_report(rep, genus=0)
        assert tr.relative_fiber_dim == tr.base_dim == hitchin_base_dim("gl(2)", 0, 3)
        assert any("genus 0" in note for note in tr.notes)


def test_torsor_report_outside_locus_emits_flags_only():
    m = AlgebraModel("sl(2)")
    nil = m.element([[0, 1], [0, 0]])
    rng = random.Random(5)
    b = random_algebra_element(m, rng, 3)
    rep = spectral_data(m, PTS3, [nil, b, (nil + b).scale(-1)])
    tr = torsor_fiber_report(rep)
    assert not tr.in_nonramified_smooth_locus
    assert tr.framed_fiber_dim is None and tr.base_dim is None
    assert tr.notes
