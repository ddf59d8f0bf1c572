"""Sparse rational polynomials against a dense evaluation oracle."""

import random
from fractions import Fraction

import pytest

from diffgb import Poly, RingSpec
from diffgb.orders import deglex, lex
from helpers import rand_point, rand_poly


def P(nvars, items):
    return Poly(nvars, {e: Fraction(c) for e, c in items})


def test_additive_inverse():
    x1 = Poly.variable(2, 0)
    assert (x1 + (-x1)).is_zero()
    assert x1 - x1 == 0


def test_product_expansion():
    x1 = Poly.variable(2, 0)
    x2 = Poly.variable(2, 1)
    assert x1 * (x2 - x1) == P(2, [((1, 1), 1), ((2, 0), -1)])
    assert (x2 - x1) * (x2 + x1) == P(2, [((0, 2), 1), ((2, 0), -1)])


def test_canonical_form_drops_zeros():
    p = P(2, [((1, 0), 1)]) + P(2, [((1, 0), -1), ((0, 1), 2)])
    assert (1, 0) not in p.terms
    assert p == P(2, [((0, 1), 2)])


def test_constant_and_scalar_mixing():
    p = Poly.constant(2, Fraction(3, 2))
    assert p + Fraction(1, 2) == 2
    assert p * 2 == 3
    assert Poly.one(2) ** 5 == 1


def test_power_matches_repeated_product():
    rng = random.Random(21)
    for _ in range(20):
        p = rand_poly(rng, 2)
        q = Poly.one(2)
        for k in range(4):
            assert p ** k == q
            q = q * p


def test_ring_mismatch_rejected():
    with pytest.raises(ValueError):
        Poly.variable(2, 0) + Poly.variable(3, 0)
    with pytest.raises(ValueError):
        Poly.variable(2, 0) * Poly.variable(3, 0)


def test_arithmetic_against_evaluation_oracle():
    rng = random.Random(22)
    for _ in range(60):
        nv = rng.randint(1, 3)
        f = rand_poly(rng, nv, max_deg=3, max_terms=4, zero_ok=True)
        g = rand_poly(rng, nv, max_deg=3, max_terms=4, zero_ok=True)
        fg, fpg, fmg = f * g, f + g, f - g
        for _ in range(20):
            pt = rand_point(rng, nv)
            fv, gv = f.eval(pt), g.eval(pt)
            assert fg.eval(pt) == fv * gv
            assert fpg.eval(pt) == fv + gv
            assert fmg.eval(pt) == fv - gv


def test_partial_power_rule():
    # d/dx1 of x1^2 x2 is 2 x1 x2
    p = P(2, [((2, 1), 1)])
    assert p.partial(0) == P(2, [((1, 1), 2)])
    assert p.partial(1) == P(2, [((2, 0), 1)])
    assert Poly.constant(2, Fraction(5)).partial(0).is_zero()


def test_partial_product_rule_fuzz():
    rng = random.Random(23)
    for _ in range(50):
        f = rand_poly(rng, 2, max_deg=3)
        g = rand_poly(rng, 2, max_deg=3)
        i = rng.randrange(2)
        assert (f * g).partial(i) == f.partial(i) * g + f * g.partial(i)


def test_partial_multi_matches_iterated():
    rng = random.Random(24)
    for _ in range(30):
        f = rand_poly(rng, 2, max_deg=4, max_terms=4)
        gamma = (rng.randint(0, 2), rng.randint(0, 2))
        expect = f
        for i, k in enumerate(gamma):
            for _ in range(k):
                expect = expect.partial(i)
        assert f.partial_multi(gamma) == expect


def test_parameter_variables_carry_no_derivation():
    ring = RingSpec(1, 1)  # one derivation variable, one parameter
    p = Poly.variable(2, 1)  # the parameter
    assert ring.diff(p, 0).is_zero()
    with pytest.raises(ValueError):
        ring.diff(p, 1)


def test_leading_data_and_monic():
    o = deglex()
    p = P(2, [((1, 1), 2), ((2, 0), -4), ((0, 0), 6)])
    assert p.lm(o) == (2, 0)
    assert p.lc(o) == -4
    assert p.monic(o).lc(o) == 1
    assert p.monic(o) * -4 == p


def test_leading_respects_order_choice():
    p = P(2, [((0, 2), 1), ((1, 0), 1)])
    assert p.lm(lex()) == (1, 0)
    assert p.lm(deglex()) == (0, 2)


def test_content_and_primitive():
    o = deglex()
    p = P(2, [((1, 0), Fraction(4, 3)), ((0, 1), Fraction(-2, 3))])
    assert p.content() == Fraction(2, 3)
    prim = p.primitive(o)
    assert prim == P(2, [((1, 0), 2), ((0, 1), -1)])
    assert (-p).primitive(o) == prim
    assert Poly.zero(2).primitive(o).is_zero()


def test_degree_and_zero_conventions():
    assert Poly.zero(2).degree() == -1
    assert Poly.one(2).degree() == 0
    assert P(2, [((2, 3), 1)]).degree() == 5
    with pytest.raises(ValueError):
        Poly.zero(2).leading(deglex())


def test_printing_reads_naturally():
    x1 = Poly.variable(2, 0)
    x2 = Poly.variable(2, 1)
    assert (x2 - x1).to_str(("x1", "x2")) == "x2 - x1"
    assert (x1 * x2 - x1 * x1).to_str(("x1", "x2")) == "x1*x2 - x1^2"
    assert (x1 * x1 * 3 + 1).to_str(("x1", "x2")) == "3*x1^2 + 1"
    assert Poly.zero(2).to_str(("x1", "x2")) == "0"
    assert (-x1).to_str(("x1", "x2")) == "-x1"


def test_hash_equals_contract():
    a = P(2, [((1, 0), 1), ((0, 1), 1)])
    b = P(2, [((0, 1), 1), ((1, 0), 1)])
    assert a == b and hash(a) == hash(b)
    assert len({a, b}) == 1
