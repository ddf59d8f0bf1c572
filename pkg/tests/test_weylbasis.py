"""Classical bases under the elimination order, and the one-way bridge
from them to the d-part base criterion."""

import random

import pytest

from diffgb import (
    DiffOp,
    GeneratorSet,
    MonomialOrder,
    RingSpec,
    WeylExp,
    WeylOrder,
    buchberger_weyl,
    complete,
    divide_weyl,
    exp_full,
    gb_implies_delta_check,
    is_delta_groebner,
    is_gb,
    member,
    s_operator_weyl,
)
from diffgb.deltabasis import CompletionCapExceeded
from helpers import example6_ops, rand_op, rand_poly, ring1, ring2

W = WeylOrder(MonomialOrder("deglex"), MonomialOrder("deglex"))


def test_elimination_order_compares_d_part_first():
    lo = WeylExp((9, 9), (0, 1))
    hi = WeylExp((0, 0), (1, 1))
    assert W.compare(lo, hi) < 0
    assert W.compare(hi, hi) == 0
    # ties on the d-part fall back to the x-part
    a = WeylExp((1, 0), (1, 0))
    b = WeylExp((0, 1), (1, 0))
    assert W.compare(a, b) > 0


def test_exp_full_running_pair():
    _, p1, p2 = example6_ops()
    assert exp_full(p1, W) == WeylExp((1, 0), (1, 0))
    assert exp_full(p2, W) == WeylExp((1, 0), (0, 1))


def test_exp_full_rejects_parameters_and_zero():
    ring = RingSpec(1, 1)
    with pytest.raises(ValueError):
        exp_full(ring.d(0), W)
    r = ring2()
    with pytest.raises(ValueError):
        exp_full(DiffOp.zero(r), W)


def test_exp_full_multiplicative_fuzz():
    rng = random.Random(61)
    r = ring2()
    for _ in range(40):
        p = rand_op(rng, r)
        q = rand_op(rng, r)
        wp, wq, wpq = exp_full(p, W), exp_full(q, W), exp_full(p * q, W)
        assert wpq.x == tuple(a + b for a, b in zip(wp.x, wq.x))
        assert wpq.d == tuple(a + b for a, b in zip(wp.d, wq.d))


def test_s_operator_running_pair():
    r, p1, p2 = example6_ops()
    s = s_operator_weyl(p1, p2, W)
    assert s == r.d(1) * p1 + r.d(0) * p2
    assert exp_full(s, W) == WeylExp((0, 1), (1, 1))


def test_running_pair_is_never_classical_base():
    rng = random.Random(62)
    _, p1, p2 = example6_ops()
    assert not is_gb([p1, p2], W)
    # stays false for random polynomial parameters a, b, d
    r = ring2()
    for _ in range(5):
        a = rand_poly(rng, 2, max_deg=2, max_terms=2)
        b = rand_poly(rng, 2, max_deg=2, max_terms=2)
        d = rand_poly(rng, 2, max_deg=2, max_terms=2)
        p1 = r.embed(r.x(0)) * r.d(0) + r.embed(a) * r.d(1) + r.embed(b)
        p2 = r.embed(r.x(1) - r.x(0)) * r.d(1) - r.embed(d)
        assert not is_gb([p1, p2], W)


def test_division_identity_fuzz():
    rng = random.Random(63)
    r = ring2()
    for _ in range(30):
        gens = [rand_op(rng, r) for _ in range(rng.randint(1, 3))]
        p = rand_op(rng, r, max_order=3, max_terms=4)
        qs, rem = divide_weyl(p, gens, W)
        rebuilt = rem
        for q, g in zip(qs, gens):
            rebuilt = rebuilt + q * g
        assert rebuilt == p
        # no remainder monomial is divisible by a leading exponent
        heads = [exp_full(g, W) for g in gens]
        for beta, coeff in rem.terms.items():
            for e in coeff.terms:
                assert not any(
                    all(a <= b for a, b in zip(h.d, beta))
                    and all(a <= b for a, b in zip(h.x, e))
                    for h in heads)


def test_division_bounds_cofactors_fuzz():
    rng = random.Random(64)
    r = ring1()
    for _ in range(30):
        gens = [rand_op(rng, r) for _ in range(2)]
        p = rand_op(rng, r, max_order=3)
        qs, rem = divide_weyl(p, gens, W)
        top = exp_full(p, W)
        for q, g in zip(qs, gens):
            if not q.is_zero():
                assert W.compare(exp_full(q * g, W), top) <= 0


def test_coprime_leads_still_interact():
    # in the first Weyl algebra the pair (x1, d1) has coprime leading
    # monomials yet S = d1 x1 - x1 d1 = 1, so the ideal is everything
    r = ring1()
    x1 = r.embed(r.x(0))
    d1 = r.d(0)
    assert s_operator_weyl(x1, d1, W) in (r.embed(1), r.embed(-1))
    assert not is_gb([x1, d1], W)
    g = buchberger_weyl([x1, d1], W)
    assert g.ops == (r.embed(1),)


def test_buchberger_weyl_output_is_base():
    rng = random.Random(65)
    r = ring2()
    for _ in range(10):
        gens = [rand_op(rng, r, max_order=1, max_terms=2, max_deg=1)
                for _ in range(2)]
        g = buchberger_weyl(gens, W)
        assert is_gb(list(g.ops), W)
        for p in gens:
            assert divide_weyl(p, list(g.ops), W)[1].is_zero()


def test_buchberger_weyl_running_pair():
    r, p1, p2 = example6_ops()
    g = buchberger_weyl([p1, p2], W)
    assert is_gb(list(g.ops), W)
    for p in (p1, p2):
        assert divide_weyl(p, list(g.ops), W)[1].is_zero()
    # cross route: every classical basis element lies in the ideal
    b = complete([p1, p2])
    for p in g.ops:
        assert member(p, b)[0]


def test_buchberger_weyl_cap():
    r, p1, p2 = example6_ops()
    with pytest.raises(CompletionCapExceeded):
        buchberger_weyl([p1, p2], W, cap=0)


def test_classical_base_passes_delta_criterion():
    # the positive bridge, checked on computed bases
    rng = random.Random(66)
    r = ring2()
    for _ in range(10):
        gens = [rand_op(rng, r, max_order=1, max_terms=2, max_deg=1)
                for _ in range(2)]
        g = buchberger_weyl(gens, W)
        assert gb_implies_delta_check(list(g.ops), W)
        assert is_delta_groebner(GeneratorSet(list(g.ops), r))


def test_bridge_is_vacuous_for_non_bases():
    _, p1, p2 = example6_ops()
    assert gb_implies_delta_check([p1, p2], W)  # not a base, nothing to check


def test_delta_base_need_not_be_classical_base():
    # the converse direction fails on the running pair
    _, p1, p2 = example6_ops()
    assert is_delta_groebner(GeneratorSet([p1, p2]))
    assert not is_gb([p1, p2], W)
