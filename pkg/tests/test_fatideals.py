from fractions import Fraction

import pytest

from kleinwiman.errors import FatIdealError
from kleinwiman.fatideals import (GradedPiece, alpha_symbolic,
                                  asymptotic_resurgence_bounds,
                                  containment_inequality_certificate,
                                  containment_report, jacobian_minor_generators,
                                  line_product, membership,
                                  orbit_count_decompositions, power_piece,
                                  resurgence_report, symbolic_piece,
                                  vanishes_to_order)
from kleinwiman.groups import act_on_poly
from kleinwiman.poly import Poly


def test_symbolic_piece_dims_klein(klein_points_modp):
    assert symbolic_piece(klein_points_modp, 1, 8).dim == 3
    assert symbolic_piece(klein_points_modp, 0, 6).dim == 28  # full S_6
    assert symbolic_piece(klein_points_modp, 1, 7).dim == 0


def test_alpha_values(klein_points_modp, char7_points):
    assert alpha_symbolic(klein_points_modp, 1) == 8
    assert alpha_symbolic(char7_points, 1) == 8
    assert alpha_symbolic(char7_points, 2) == 16
    with pytest.raises(FatIdealError):
        alpha_symbolic(char7_points, 3, cap=10)


def test_minimal_generators(klein_gens_modp, char7_gens, wiman_gens_modp):
    assert {d: len(v) for d, v in klein_gens_modp.by_degree.items()} == {8: 3}
    assert klein_gens_modp.alpha == klein_gens_modp.omega == 8
    assert {d: len(v) for d, v in char7_gens.by_degree.items()} == {8: 3, 9: 1}
    assert char7_gens.alpha == 8 and char7_gens.omega == 9
    assert {d: len(v) for d, v in wiman_gens_modp.by_degree.items()} == {16: 3}


def test_jacobian_minor_examples(klein_modp):
    x, y = Poly.variable(klein_modp, 0), Poly.variable(klein_modp, 1)
    minors = jacobian_minor_generators(x, y)
    assert [m.text() for m in minors] == ["1", "0", "0"]


def test_minors_span_ideal_piece(klein_points_modp, klein_inv_modp):
    minors = jacobian_minor_generators(klein_inv_modp.phi[4],
                                       klein_inv_modp.phi[6])
    sp = symbolic_piece(klein_points_modp, 1, 8)
    assert sp.dim == 3
    assert all(membership(m, sp) for m in minors)
    piece_from_minors = GradedPiece(
        8, klein_modp_field(klein_points_modp),
        sp.monomials, [m.coeff_vector(sp.monomials) for m in minors])
    assert piece_from_minors.dim == 3


def klein_modp_field(ps):
    return ps.field


def test_minor_span_group_stable(klein_points_modp, klein_inv_modp):
    """Applying a group generator to a minor stays in the degree-8 span."""
    minors = jacobian_minor_generators(klein_inv_modp.phi[4],
                                       klein_inv_modp.phi[6])
    sp = symbolic_piece(klein_points_modp, 1, 8)
    from kleinwiman.configs import build_klein
    G = build_klein(klein_points_modp.field).group
    for g in G.gens:
        for m in minors:
            assert membership(act_on_poly(g, m), sp)


def test_wiman_minors(wiman_points_modp, wiman_inv_modp):
    minors = jacobian_minor_generators(wiman_inv_modp.phi[6],
                                       wiman_inv_modp.phi[12])
    sp = symbolic_piece(wiman_points_modp, 1, 16)
    assert sp.dim == 3
    assert all(membership(m, sp) for m in minors)


def test_power_piece_dims(klein_points_modp, klein_gens_modp):
    assert power_piece(klein_gens_modp, 2, 16).dim == 6
    # the r = 1 piece is the ideal itself, degree by degree
    for d in (8, 9, 10):
        assert power_piece(klein_gens_modp, 1, d).dim \
            == symbolic_piece(klein_points_modp, 1, d).dim
    assert power_piece(klein_gens_modp, 2, 21).dim == 105


def test_power_piece_precondition(klein_gens_modp):
    with pytest.raises(FatIdealError):
        power_piece(klein_gens_modp, 2, 40)


def test_membership_basics(klein_points_modp, klein_inv_modp, klein_gens_modp):
    phi21 = klein_inv_modp.phi[21]
    sp = symbolic_piece(klein_points_modp, 3, 21)
    assert membership(phi21, sp)
    assert vanishes_to_order(phi21, klein_points_modp, 3)
    assert not membership(phi21, power_piece(klein_gens_modp, 2, 21))
    zero = Poly.zero(klein_points_modp.field)
    assert membership(zero, sp)
    with pytest.raises(FatIdealError):
        membership(klein_inv_modp.phi[4], sp)


def test_monotonicity_properties(char7_points, char7_gens):
    """Symbolic pieces decrease in m; ordinary powers sit inside symbolic."""
    for d in (16, 18, 21):
        sm1 = symbolic_piece(char7_points, 1, d)
        sm2 = symbolic_piece(char7_points, 2, d)
        sm3 = symbolic_piece(char7_points, 3, d)
        for f in sm3.basis_polys():
            assert membership(f, sm2)
        for f in sm2.basis_polys():
            assert membership(f, sm1)
    for (r, d) in ((2, 16), (2, 18), (2, 21)):
        pw = power_piece(char7_gens, r, d)
        sm = symbolic_piece(char7_points, r, d)
        for f in pw.basis_polys():
            assert membership(f, sm)


def test_orbit_count_audits():
    assert orbit_count_decompositions((28, 21, 24, 56, 42, 84, 168), 49) \
        == [(1, 1, 0, 0, 0, 0, 0)]
    assert orbit_count_decompositions((60, 45, 36, 72, 90, 180, 360), 201) \
        == [(2, 1, 1, 0, 0, 0, 0)]


def test_char7_line_product_membership(char7_config, char7_points, char7_gens):
    F = line_product(char7_config)
    assert F.degree() == 21
    assert vanishes_to_order(F, char7_points, 3)
    assert membership(F, symbolic_piece(char7_points, 3, 21))
    assert not membership(F, power_piece(char7_gens, 2, 21))


def test_char7_containment_reports(char7_points, char7_gens):
    rep23 = containment_report(char7_points, 2, 3, 20, gens=char7_gens)
    assert not rep23["contained_degreewise"]
    assert rep23["witness_degree"] == 16
    rep32 = containment_report(char7_points, 3, 2, 30, gens=char7_gens)
    assert not rep32["contained_degreewise"]
    assert rep32["witness_degree"] == 21
    assert "degree_cap_caveat" in rep32


def test_inequality_certificates():
    # the three recorded regularity patterns all close at their r threshold
    assert containment_inequality_certificate(Fraction(58, 9), (8, 6), 2)["holds"]
    assert containment_inequality_certificate(Fraction(27, 2), (16, 14), 2)["holds"]
    assert containment_inequality_certificate(Fraction(25, 4), (9, 6), 8)["holds"]
    assert not containment_inequality_certificate(Fraction(5, 1), (8, 6), 2)["holds"]


def test_resurgence_report_char7(char7_points, char7_gens):
    rep = resurgence_report("klein-char7", char7_points, char7_gens,
                            Fraction(25, 4), {"lower": "reference-constant"})
    assert rep["resurgence"] == Fraction(3, 2)
    assert rep["inequality_certificate"]["holds"]
    assert "small_r_note" in rep


def test_asymptotic_bounds():
    b = asymptotic_resurgence_bounds(8, 8, Fraction(661, 102), Fraction(13, 2))
    assert b["lower"] == Fraction(16, 13)
    assert b["upper"] == Fraction(816, 661)
    bw = asymptotic_resurgence_bounds(16, 16, Fraction(27, 2), Fraction(27, 2))
    assert bw["lower"] == bw["upper"] == Fraction(32, 27)
    b7 = asymptotic_resurgence_bounds(8, 9, Fraction(25, 4), Fraction(25, 4))
    assert b7["lower"] == Fraction(32, 25) and b7["upper"] == Fraction(36, 25)


def test_exact_symbolic_piece_small(klein_points_exact):
    sp = symbolic_piece(klein_points_exact, 1, 8)
    assert sp.dim == 3


def test_conditions_exact_vs_modp_dim(klein_points_exact, klein_points_modp):
    for (m, d) in ((1, 8), (1, 9), (2, 12)):
        assert symbolic_piece(klein_points_exact, m, d).dim \
            == symbolic_piece(klein_points_modp, m, d).dim
