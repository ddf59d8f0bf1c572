"""Shared builders and independent oracles for the test suite.

The oracles deliberately avoid the code paths they are used to check:
naive Buchberger works with a FIFO queue and no pair criteria, the
membership oracle is dense linear algebra over the rationals, and the
product oracle moves one derivation at a time instead of using the
closed Leibniz formula.
"""

from fractions import Fraction

from diffgb import DiffOp, MonomialOrder, Poly, ProblemFile, RingSpec
from diffgb.orders import add_exp, divides, sub_exp
from diffgb.problems import parse_expression


# -- construction shortcuts --------------------------------------------------

def ring1(order="deglex"):
    return RingSpec(1, order_delta=MonomialOrder(order))


def ring2(order="deglex", m=0):
    return RingSpec(2, m, order_delta=MonomialOrder(order))


def parse_op(ring, text, **named):
    """Operator from source text in the given ring."""
    pf = ProblemFile(ring, dict(named), None)
    return parse_expression(text, pf)


def example6_ops(ring=None, b="x1", d="1"):
    """The running pair P1 = x1 d1 + x1 d2 + b, P2 = (x2-x1) d2 - d."""
    if ring is None:
        ring = ring2()
    p1 = parse_op(ring, f"x1*d1 + x1*d2 + ({b})")
    p2 = parse_op(ring, f"(x2 - x1)*d2 - ({d})")
    return ring, p1, p2


def cone_example_ops(ring=None):
    """P1 = x1 d1^2 + x2 d1 and P2 = x2 d2^2 + x1 d2 under lex d1 > d2."""
    if ring is None:
        ring = ring2(order="lex")
    p1 = parse_op(ring, "x1*d1^2 + x2*d1")
    p2 = parse_op(ring, "x2*d2^2 + x1*d2")
    return ring, p1, p2


# -- random data -------------------------------------------------------------

def rand_poly(rng, nvars, max_deg=2, max_terms=3, zero_ok=False):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        e = [0] * nvars
        for _ in range(rng.randint(0, max_deg)):
            e[rng.randrange(nvars)] += 1
        c = rng.choice([-3, -2, -1, 1, 2, 3])
        terms[tuple(e)] = terms.get(tuple(e), 0) + c
    p = Poly(nvars, {e: Fraction(c) for e, c in terms.items() if c})
    if p.is_zero() and not zero_ok:
        return Poly.constant(nvars, Fraction(rng.choice([-2, -1, 1, 2])))
    return p


def rand_op(rng, ring, max_order=2, max_terms=3, max_deg=2, zero_ok=False):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        e = [0] * ring.n
        for _ in range(rng.randint(0, max_order)):
            e[rng.randrange(ring.n)] += 1
        c = rand_poly(rng, ring.nvars, max_deg, 2, zero_ok=True)
        e = tuple(e)
        terms[e] = terms[e] + c if e in terms else c
    op = DiffOp(ring, {e: c for e, c in terms.items() if not c.is_zero()})
    if op.is_zero() and not zero_ok:
        return DiffOp.term(ring, (0,) * ring.n,
                           Poly.constant(ring.nvars, Fraction(1)))
    return op


def rand_point(rng, nvars):
    return [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(nvars)]


# -- polynomial division and Buchberger, the slow way ------------------------

def naive_divide(f, gens, order):
    """Remainder of f under repeated leading-term elimination."""
    rem = Poly.zero(f.nvars)
    cur = f
    while not cur.is_zero():
        e, c = cur.leading(order)
        hit = False
        for g in gens:
            ge, gc = g.leading(order)
            if divides(ge, e):
                mono = Poly.monomial(f.nvars, sub_exp(e, ge), c / gc)
                cur = cur - mono * g
                hit = True
                break
        if not hit:
            mono = Poly.monomial(f.nvars, e, c)
            rem = rem + mono
            cur = cur - mono
    return rem


def naive_reduced_groebner(gens, order):
    """FIFO Buchberger without pair criteria, then full inter-reduction.

    Returns the unique reduced basis as a sorted list, so results can be
    compared against the fast implementation by plain equality.
    """
    basis = [g for g in gens if not g.is_zero()]
    if not basis:
        return []
    queue = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
    while queue:
        i, j = queue.pop(0)
        fi, fj = basis[i], basis[j]
        ei, ci = fi.leading(order)
        ej, cj = fj.leading(order)
        l = tuple(max(a, b) for a, b in zip(ei, ej))
        s = (Poly.monomial(fi.nvars, sub_exp(l, ei), Fraction(1) / ci) * fi
             - Poly.monomial(fj.nvars, sub_exp(l, ej), Fraction(1) / cj) * fj)
        r = naive_divide(s, basis, order)
        if not r.is_zero():
            basis.append(r)
            queue.extend((t, len(basis) - 1) for t in range(len(basis) - 1))
    mins = []
    for g in sorted(basis, key=lambda p: order.key(p.lm(order))):
        if not any(divides(h.lm(order), g.lm(order)) for h in mins):
            mins.append(g)
    out = []
    for i, g in enumerate(mins):
        others = mins[:i] + mins[i + 1:]
        r = naive_divide(g, others, order) if others else g
        if not r.is_zero():
            out.append(r.monic(order))
    out.sort(key=lambda p: order.key(p.lm(order)))
    return out


# -- dense linear-algebra membership oracle ----------------------------------

def _monomials_up_to(nvars, bound):
    out = [()]
    for _ in range(nvars):
        out = [e + (k,) for e in out for k in range(bound + 1 - sum(e))]
    return out


def linear_membership(f, gens, bound):
    """Is f a combination sum q_i g_i with deg q_i g_i <= bound?

    Solved as an exact linear system over the monomial basis, no
    Groebner machinery involved.  A True answer proves membership; a
    False answer only rules out cofactors up to the bound.
    """
    nvars = f.nvars
    if f.is_zero():
        return True
    if f.degree() > bound:
        return False
    rows = _monomials_up_to(nvars, bound)
    row_index = {e: i for i, e in enumerate(rows)}
    columns = []
    for g in gens:
        if g.is_zero():
            continue
        room = bound - g.degree()
        if room < 0:
            continue
        for e in _monomials_up_to(nvars, room):
            prod = Poly.monomial(nvars, e, Fraction(1)) * g
            col = [Fraction(0)] * len(rows)
            for ee, c in prod.terms.items():
                col[row_index[ee]] = c
            columns.append(col)
    if not columns:
        return False
    target = [Fraction(0)] * len(rows)
    for e, c in f.terms.items():
        target[row_index[e]] = c
    # gaussian elimination on the augmented system, column vectors
    m = [[columns[j][i] for j in range(len(columns))] + [target[i]]
         for i in range(len(rows))]
    nrows, ncols = len(m), len(columns)
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == nrows:
            break
    for i in range(nrows):
        if all(v == 0 for v in m[i][:-1]) and m[i][-1] != 0:
            return False
    return True


# -- one-step operator product oracle ----------------------------------------

def apply_d(op, i):
    """Left multiplication by a single derivation symbol."""
    ring = op.ring
    acc = {}

    def put(e, p):
        acc[e] = acc[e] + p if e in acc else p

    for e, c in op.terms.items():
        up = list(e)
        up[i] += 1
        put(tuple(up), c)
        dc = c.partial(i)
        if not dc.is_zero():
            put(e, dc)
    return DiffOp(ring, {e: p for e, p in acc.items() if not p.is_zero()})


def slow_mul(p, q):
    """Operator product moving one derivation across at a time."""
    ring = p.ring
    total = DiffOp.zero(ring)
    for e, c in p.terms.items():
        part = q
        for i in range(ring.n):
            for _ in range(e[i]):
                part = apply_d(part, i)
        scaled = DiffOp(ring, {ee: c * cc for ee, cc in part.terms.items()})
        total = total + scaled
    return total
