"""Classical Groebner bases in the Weyl algebra A_n = Q<x, d> (m = 0).

Exponents are pairs (x-part, d-part) compared by an elimination order:
the d-parts first, then the x-parts.  Leading exponents multiply under
operator composition because every Leibniz correction is smaller in
both parts, so the usual division/Buchberger loop goes through.  No
pair-skipping criteria are applied; the coprime-lead shortcut is not
sound here (x and d have coprime leads but [d, x] = 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import NamedTuple

from .deltabasis import CompletionCapExceeded, GeneratorSet, is_delta_groebner
from .diffop import DiffOp, RingSpec
from .orders import MonomialOrder, lcm_exp, sub_exp
from .poly import Poly


class WeylExp(NamedTuple):
    """Full exponent of a monomial x^a d^b."""

    x: tuple
    d: tuple

    @property
    def flat(self) -> tuple:
        return self.x + self.d


@dataclass(frozen=True)
class WeylOrder:
    """Elimination order on WeylExp: compare d-parts, then x-parts."""

    order_x: MonomialOrder = MonomialOrder("deglex")
    order_d: MonomialOrder = MonomialOrder("deglex")

    def key(self, w: WeylExp):
        return (self.order_d.key(w.d), self.order_x.key(w.x))

    def compare(self, a: WeylExp, b: WeylExp) -> int:
        ka, kb = self.key(a), self.key(b)
        if ka < kb:
            return -1
        if ka > kb:
            return 1
        return 0


def _w_divides(a: WeylExp, b: WeylExp) -> bool:
    return all(p <= q for p, q in zip(a.flat, b.flat))


def _require_weyl(p: DiffOp) -> None:
    if p.ring.m:
        raise ValueError("classical bases need a pure operator ring (m = 0)")


def exp_full(p: DiffOp, worder: WeylOrder) -> WeylExp:
    """Largest monomial exponent of p under the elimination order:
    the x-exponent of the leading monomial of the leading d-coefficient,
    paired with the leading d-exponent."""
    _require_weyl(p)
    if p.is_zero():
        raise ValueError("the zero operator has no leading exponent")
    beta = worder.order_d.max(p.terms)
    return WeylExp(p.terms[beta].lm(worder.order_x), beta)


def _lead_full(p: DiffOp, worder: WeylOrder) -> tuple[WeylExp, Fraction]:
    beta = worder.order_d.max(p.terms)
    coeff = p.terms[beta]
    e, c = coeff.leading(worder.order_x)
    return WeylExp(e, beta), c


def divide_weyl(p: DiffOp, gens, worder: WeylOrder, _stats: dict | None = None):
    """Full division in the Weyl algebra.

    Returns (cofactors, remainder) with p = sum q_i*gens_i + r, no
    monomial of r divisible by any leading exponent of gens, and
    exp_full of every q_i*gens_i bounded by exp_full(p).
    """
    gens = list(gens)
    _require_weyl(p)
    if any(g.is_zero() for g in gens):
        raise ValueError("division by a zero operator")
    ring = p.ring
    nv = ring.nvars
    heads = [_lead_full(g, worder) for g in gens]
    kd, kx = worder.order_d.key, worder.order_x.key

    # mutable working copy: d-exponent -> x-exponent -> coefficient,
    # zero entries dropped eagerly so max() only sees live monomials
    work = {beta: dict(pl.terms) for beta, pl in p.terms.items()}
    cofd = [{} for _ in gens]
    remd = {}

    def sub_into(op):
        for beta, pl in op.terms.items():
            slot = work.setdefault(beta, {})
            for xe, c in pl.terms.items():
                nc = slot.get(xe, 0) - c
                if nc:
                    slot[xe] = nc
                else:
                    slot.pop(xe, None)
            if not slot:
                del work[beta]

    prev = None
    while work:
        beta = max(work, key=kd)
        slot = work[beta]
        xe = max(slot, key=kx)
        c = slot[xe]
        we = WeylExp(xe, beta)
        if prev is not None:
            assert worder.compare(we, prev) < 0  # strict descent
        prev = we
        if _stats is not None:
            _stats["division_steps"] += 1
        for i, (hw, hc) in enumerate(heads):
            if _w_divides(hw, we):
                dshift = sub_exp(we.d, hw.d)
                mono = DiffOp.term(
                    ring, dshift,
                    Poly.monomial(nv, sub_exp(we.x, hw.x), c / hc))
                cslot = cofd[i].setdefault(dshift, {})
                cslot[sub_exp(we.x, hw.x)] = c / hc
                sub_into(mono * gens[i])
                break
        else:
            remd.setdefault(beta, {})[xe] = c
            del slot[xe]
            if not slot:
                del work[beta]

    cof = [DiffOp(ring, {b: Poly(nv, xs) for b, xs in d.items()})
           for d in cofd]
    rem = DiffOp(ring, {b: Poly(nv, xs) for b, xs in remd.items()})
    return cof, rem


def _primitive_weyl(p: DiffOp, worder: WeylOrder) -> DiffOp:
    """Integer-primitive scaling with positive lead under ``worder``."""
    if p.is_zero():
        return p
    coeffs = [c for q in p.terms.values() for c in q.terms.values()]
    g = gcd(*(abs(c.numerator) for c in coeffs))
    l = lcm(*(c.denominator for c in coeffs))
    out = Fraction(l, g) * p
    if _lead_full(out, worder)[1] < 0:
        out = -out
    return out


def s_operator_weyl(f: DiffOp, g: DiffOp, worder: WeylOrder) -> DiffOp:
    """S-operator cancelling the two leading monomials."""
    wf, cf = _lead_full(f, worder)
    wg, cg = _lead_full(g, worder)
    ring = f.ring
    nv = ring.nvars
    l = WeylExp(lcm_exp(wf.x, wg.x), lcm_exp(wf.d, wg.d))
    mf = DiffOp.term(ring, sub_exp(l.d, wf.d),
                     Poly.monomial(nv, sub_exp(l.x, wf.x), Fraction(1) / cf))
    mg = DiffOp.term(ring, sub_exp(l.d, wg.d),
                     Poly.monomial(nv, sub_exp(l.x, wg.x), Fraction(1) / cg))
    return mf * f - mg * g


@dataclass
class WeylGB:
    """Deterministic Buchberger output plus operation counters."""

    ops: tuple[DiffOp, ...]
    worder: WeylOrder
    stats: dict = field(default_factory=dict)


def buchberger_weyl(gens, worder: WeylOrder, cap: int = 10000) -> WeylGB:
    """Buchberger's algorithm under the elimination order.

    Output elements are integer-primitive with positive leading sign,
    inter-reduced and sorted ascending by leading exponent.  Raises
    CompletionCapExceeded after ``cap`` additions.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    for g in gens:
        _require_weyl(g)
    ring = gens[0].ring
    stats = {"s_pairs": 0, "reductions": 0, "division_steps": 0, "additions": 0}

    basis: list[DiffOp] = []
    leads: list[WeylExp] = []
    for g in gens:
        if g.is_zero():
            continue
        # integer-primitive keeps the rationals small through the long
        # division chains; the output pass renormalizes anyway
        g = _primitive_weyl(g, worder)
        basis.append(g)
        leads.append(_lead_full(g, worder)[0])
    if not basis:
        raise ValueError("all generators are zero")

    def is_unit_op(g: DiffOp) -> bool:
        terms = g.terms
        if len(terms) != 1:
            return False
        (beta, coeff), = terms.items()
        return not any(beta) and coeff.degree() == 0

    def pair_key(i, j):
        wi, wj = leads[i], leads[j]
        l = WeylExp(lcm_exp(wi.x, wj.x), lcm_exp(wi.d, wj.d))
        return (worder.key(l), i, j)

    pairs = {(i, j): pair_key(i, j)
             for i in range(len(basis)) for j in range(i + 1, len(basis))}

    def chain_skip(i, j):
        # lcm(i,j) covered by a third lead whose pairs with i and j are
        # both treated already: S(i,j) then reduces through those two.
        # A skipped pair counts as treated; citations only ever point at
        # pairs popped earlier, so no two pairs can excuse each other.
        wi, wj = leads[i], leads[j]
        l = WeylExp(lcm_exp(wi.x, wj.x), lcm_exp(wi.d, wj.d))
        for k in range(len(basis)):
            if k == i or k == j or not _w_divides(leads[k], l):
                continue
            a = (i, k) if i < k else (k, i)
            b = (j, k) if j < k else (k, j)
            if a not in pairs and b not in pairs:
                return True
        return False

    while pairs:
        i, j = min(pairs, key=pairs.__getitem__)
        del pairs[(i, j)]
        stats["s_pairs"] += 1
        if chain_skip(i, j):
            continue
        s = s_operator_weyl(basis[i], basis[j], worder)
        if s.is_zero():
            continue
        _, r = divide_weyl(s, basis, worder, _stats=stats)
        stats["reductions"] += 1
        if r.is_zero():
            continue
        if stats["additions"] >= cap:
            raise CompletionCapExceeded(
                f"basis construction exceeded the cap of {cap} additions")
        r = _primitive_weyl(r, worder)
        new = len(basis)
        basis.append(r)
        leads.append(_lead_full(r, worder)[0])
        stats["additions"] += 1
        if is_unit_op(r):
            # the whole ring: every remaining pair reduces to zero
            pairs.clear()
            break
        pairs.update(((t, new), pair_key(t, new)) for t in range(new))

    # minimal: drop elements whose lead another lead divides
    order_idx = sorted(range(len(basis)),
                       key=lambda t: (worder.key(leads[t]), t))
    keep: list[int] = []
    for t in order_idx:
        if not any(_w_divides(leads[u], leads[t]) for u in keep):
            keep.append(t)

    final = []
    for t in keep:
        others = [basis[u] for u in keep if u != t]
        if others:
            _, r = divide_weyl(basis[t], others, worder)
        else:
            r = basis[t]
        final.append(_primitive_weyl(r, worder))
    final.sort(key=lambda g: worder.key(exp_full(g, worder)))
    return WeylGB(tuple(final), worder, stats)


def is_gb(gens, worder: WeylOrder) -> bool:
    """Buchberger criterion: every S-operator divides to remainder zero."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("need at least one nonzero operator")
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            s = s_operator_weyl(gens[i], gens[j], worder)
            if s.is_zero():
                continue
            if not divide_weyl(s, gens, worder)[1].is_zero():
                return False
    return True


def gb_implies_delta_check(gens, worder: WeylOrder) -> bool:
    """One-way consistency between the two base notions: a classical
    base under the elimination order must also pass the d-part base
    criterion for the d-order alone.  Vacuously true for non-bases."""
    gens = [g for g in gens if not g.is_zero()]
    if not is_gb(gens, worder):
        return True
    ring = gens[0].ring
    if ring.order_delta != worder.order_d:
        ring = RingSpec(ring.n, ring.m, ring.names, ring.dnames, worder.order_d)
        gens = [DiffOp(ring, g.terms) for g in gens]
    return is_delta_groebner(GeneratorSet(gens, ring))
