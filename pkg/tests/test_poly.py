import random

import pytest

from kleinwiman.fields import RationalField, preset_field
from kleinwiman.poly import (Poly, bordered_hessian_det, hessian_det,
                             jacobian_det, local_expand, monomials_of_degree,
                             multiplicity_at, normalize_point, poly_arith,
                             weighted_basis)

Q = RationalField()


def _xyz(field):
    return [Poly.variable(field, i) for i in range(3)]


def test_partial_derivative():
    x, y, z = _xyz(Q)
    f = x ** 3 * y + y ** 3 * z + z ** 3 * x
    assert f.partial_derivative(0) == x ** 2 * y * 3 + z ** 3


def test_square_mod7():
    f7 = preset_field("klein-mod7")
    x, y, _ = _xyz(f7)
    assert ((x + y) ** 2).text() == "x^2 + 2*x*y + y^2"


def test_product_of_invariants_is_invariant(klein_inv_exact):
    from kleinwiman.groups import act_on_poly
    prod = klein_inv_exact.phi[4] * klein_inv_exact.phi[6]
    assert prod.degree() == 10
    for g in klein_inv_exact.config.group:
        assert act_on_poly(g, prod) == prod


def test_determinant_examples():
    x, y, z = _xyz(Q)
    phi4 = x ** 3 * y + y ** 3 * z + z ** 3 * x
    phi6 = x * y ** 5 + y * z ** 5 + z * x ** 5 - (x ** 2 * y ** 2 * z ** 2).scale(5)
    assert hessian_det(phi4) == phi6.scale(-54)
    assert jacobian_det(x, y, z) == Poly.constant(Q, 1)


def test_determinants_vs_evaluation_oracle():
    """Evaluate the polynomial determinants at random points and compare with
    scalar determinants of the evaluated matrices."""
    f = preset_field("klein-mod4733")
    rng = random.Random(7)
    x, y, z = _xyz(f)
    for _ in range(5):
        coeffs = [f.coerce(rng.randrange(4733)) for _ in range(10)]
        mono3 = [Poly(f, {e: c}) for e, c in zip(monomials_of_degree(3, 3), coeffs)]
        cub = mono3[0]
        for m in mono3[1:]:
            cub = cub + m
        g = (x + y).scale(f.coerce(rng.randrange(1, 100))) ** 3
        H = hessian_det(cub)
        B = bordered_hessian_det(cub, g)
        for _ in range(10):
            pt = [rng.randrange(4733) for _ in range(3)]
            hess = [[cub.partial_derivative(i).partial_derivative(j).evaluate(pt)
                     for j in range(3)] for i in range(3)]
            grad = [g.partial_derivative(i).evaluate(pt) for i in range(3)]
            assert H.evaluate(pt) == _det3(f, hess)
            assert B.evaluate(pt) == _det4_bordered(f, hess, grad)


def _det3(f, m):
    t1 = f.mul(m[0][0], f.sub(f.mul(m[1][1], m[2][2]), f.mul(m[1][2], m[2][1])))
    t2 = f.mul(m[0][1], f.sub(f.mul(m[1][0], m[2][2]), f.mul(m[1][2], m[2][0])))
    t3 = f.mul(m[0][2], f.sub(f.mul(m[1][0], m[2][1]), f.mul(m[1][1], m[2][0])))
    return f.add(f.sub(t1, t2), t3)


def _det4_bordered(f, hess, grad):
    # Laplace along the last column of [[hess, grad], [grad^T, 0]]
    m = [row + [g] for row, g in zip(hess, grad)] + [grad + [f.zero]]
    total = f.zero
    for i in range(4):
        if f.is_zero(m[i][3]):
            continue
        sub = [[m[r][c] for c in range(3)] for r in range(4) if r != i]
        minor = _det3(f, sub)
        term = f.mul(m[i][3], minor)
        total = f.add(total, term if i % 2 == 1 else f.neg(term))
    return total


def test_weighted_basis_counts_vs_series_oracle():
    """Counts match the coefficients of the product of geometric series,
    expanded independently."""
    for weights, dmax in [((4, 6, 14), 100), ((6, 12, 30), 120)]:
        series = [0] * (dmax + 1)
        series[0] = 1
        for w in weights:
            out = list(series)
            for d in range(w, dmax + 1):
                out[d] += out[d - w]
            series = out
        for d in range(dmax + 1):
            assert len(weighted_basis(weights, d)) == series[d]


def test_weighted_basis_examples():
    assert len(weighted_basis((4, 6, 14), 18)) == 3
    assert set(weighted_basis((4, 6, 14), 18)) == {(3, 1, 0), (0, 3, 0), (1, 0, 1)}
    assert len(weighted_basis((4, 6, 14), 42)) == 9
    assert len(weighted_basis((6, 12, 30), 90)) == 18
    taylor = [1, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1, 0, 2, 0, 2, 0, 2, 0, 3]
    for d, want in enumerate(taylor):
        assert len(weighted_basis((4, 6, 14), d)) == want


def test_local_expand_unit_and_centers():
    x, y, z = _xyz(Q)
    t = local_expand(z, (1, 2, 1), 2)
    assert t.coeff(0, 0) == 1 and t.order_of_vanishing() == 0
    with pytest.raises(ValueError):
        local_expand(z, (1, 2, 0), 2, chart=2)


def test_local_expand_multiplicative():
    f = preset_field("klein-mod4733")
    rng = random.Random(11)
    for _ in range(6):
        terms_f = {e: f.coerce(rng.randrange(4733))
                   for e in rng.sample(monomials_of_degree(3, 5), 6)}
        terms_g = {e: f.coerce(rng.randrange(4733))
                   for e in rng.sample(monomials_of_degree(3, 4), 5)}
        a, b = Poly(f, terms_f), Poly(f, terms_g)
        pt = (rng.randrange(4733), rng.randrange(4733), 1)
        m = 6
        lhs = local_expand(a * b, pt, m)
        rhs = local_expand(a, pt, m) * local_expand(b, pt, m)
        assert lhs == rhs


def test_multiplicity_of_line_product_at_triple_point(klein_inv_exact):
    assert multiplicity_at(klein_inv_exact.phi[21], (1, 1, 1), cap=5) == 3


def test_poly_arith_entry_point():
    x, y, _ = _xyz(Q)
    assert poly_arith(x, y, "add") == x + y
    assert poly_arith(x, y, "mul") == x * y
    assert poly_arith(x + y, 2, "pow") == x ** 2 + (x * y).scale(2) + y ** 2


def test_canonical_text_deterministic():
    x, y, z = _xyz(Q)
    f = (x + y + z) ** 2
    assert f.text() == ("x^2 + 2*x*y + 2*x*z + y^2 + 2*y*z + z^2")


def test_normalize_point():
    f = preset_field("klein-mod4733")
    assert normalize_point(f, (2, 4, 2)) == (1, 2, 1)
    assert normalize_point(f, (3, 0, 0)) == (1, 0, 0)
    with pytest.raises(ValueError):
        normalize_point(f, (0, 0, 0))
