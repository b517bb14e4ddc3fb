import random
from fractions import Fraction

import pytest

from kleinwiman.divisors import (DivisorClass, KLEIN_CURVE_42,
                                 KLEIN_LIMIT_CLASS, WIMAN_CURVE_90,
                                 WIMAN_NEF_CANDIDATE, combine, intersect,
                                 klein_dk, klein_lower_bound, line_class,
                                 negative_curve_search, self_int,
                                 verify_divisor_identity, waldschmidt_bounds)
from kleinwiman.errors import EngineError
from kleinwiman.series import SeriesSpec, series_basis


def test_intersection_examples():
    assert self_int(line_class("klein")) == -147
    assert self_int(DivisorClass.make("klein", 42, 0, 8)) == -28
    assert self_int(DivisorClass.make("wiman", 90, 0, 4, 8)) == -300
    assert self_int(WIMAN_NEF_CANDIDATE) == 0
    assert intersect(WIMAN_NEF_CANDIDATE, line_class("wiman")) == 0
    assert self_int(line_class("wiman")) == 45 ** 2 - 25 * 36 - 16 * 45 - 9 * 120


def test_bilinearity_and_symmetry():
    rng = random.Random(2)
    for _ in range(25):
        a, b, c = (DivisorClass.make("klein", rng.randrange(-9, 10),
                                     Fraction(rng.randrange(-9, 10), rng.randrange(1, 4)),
                                     rng.randrange(-9, 10))
                   for _ in range(3))
        lam = Fraction(rng.randrange(-5, 6), rng.randrange(1, 5))
        assert intersect(a, b) == intersect(b, a)
        assert intersect(combine([(1, a), (lam, b)]), c) \
            == intersect(a, c) + lam * intersect(b, c)


def test_limit_class_orthogonal_to_lines():
    assert intersect(KLEIN_LIMIT_CLASS, line_class("klein")) == 0
    for k in (1, 2, Fraction(16, 7), 7):
        assert intersect(klein_dk(k), line_class("klein")) > 0


def test_divisor_identities():
    a = line_class("klein")
    assert verify_divisor_identity([(8, a), (7, KLEIN_CURVE_42)],
                                   [(7, klein_dk(Fraction(16, 7)))])
    aw = line_class("wiman")
    assert verify_divisor_identity([(2, aw), (3, WIMAN_CURVE_90)],
                                   [(10, WIMAN_NEF_CANDIDATE)])
    assert verify_divisor_identity([(1, a)], [(1, a)])
    assert not verify_divisor_identity([(1, a)], [(2, a)])


def test_mismatched_configurations():
    with pytest.raises(EngineError):
        intersect(line_class("klein"), line_class("wiman"))


def test_negsearch_trivial_cap(klein_modp):
    assert [c.as_text() for c in negative_curve_search("klein", klein_modp, 2)] \
        == ["21H - 4E4 - 3E3"]


def test_negsearch_to_60(klein_modp):
    led = negative_curve_search("klein", klein_modp, 60)
    assert [c.as_text() for c in led] \
        == ["21H - 4E4 - 3E3", "18H - 4E4", "42H - 8E3"]


def test_ledger_entries_postconditions(klein_modp):
    """Every found class has negative self-intersection, meets earlier entries
    nonnegatively, and has a nonempty series."""
    led = negative_curve_search("klein", klein_modp, 60)
    for i, c in enumerate(led):
        assert self_int(c) < 0
        for prev in led[:i]:
            assert intersect(c, prev) >= 0
        if i > 0:  # the line class itself is not a series member
            spec = SeriesSpec("klein", int(c.degree), m4=int(c.mults[0]),
                              m3=int(c.mults[1]))
            assert series_basis(spec, klein_modp).dim > 0


def test_waldschmidt_klein(klein_modp):
    rep = waldschmidt_bounds("klein", klein_modp, curve_only=True)
    assert rep["lower"] == Fraction(58, 9)
    assert rep["upper"] == Fraction(13, 2)
    led = negative_curve_search("klein", klein_modp, 60)
    rep2 = waldschmidt_bounds("klein", klein_modp, ledger=led, ledger_dmax=60)
    assert rep2["lower"] == klein_lower_bound(2) == Fraction(206, 32)


def test_waldschmidt_wiman(wiman_modp):
    rep = waldschmidt_bounds("wiman", wiman_modp)
    assert rep["exact"] == Fraction(27, 2)


def test_klein_lower_bound_values():
    assert klein_lower_bound(7) == Fraction(661, 102)
    assert klein_lower_bound(Fraction(16, 7)) == Fraction(58, 9)
