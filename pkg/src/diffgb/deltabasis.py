"""Reduction and completion for left ideals of differential operators.

Everything here works with the d-part invariants of operators: an
exponent alpha is covered by a generator P when exp_delta(P) divides
alpha componentwise, and the cone ideal at alpha collects the leading
coefficients of the covering generators.  An operator is reduced when
its leading coefficient escapes the cone ideal at its leading exponent.
Completion adds reduced nonzero remainders of the S-operators until
every one of them reduces to zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diffop import DiffOp, RingSpec
from .groebner import PolyIdeal, syzygies
from .orders import ExpVec, divides, lcm_exp, sub_exp
from .poly import Poly


class CompletionCapExceeded(RuntimeError):
    """Raised when completion would add more elements than the cap allows."""


class GeneratorSet:
    """Ordered nonzero generators over one ring, with cached cone ideals."""

    def __init__(self, ops, ring: RingSpec | None = None):
        ops = tuple(ops)
        if not ops:
            raise ValueError("need at least one generator")
        if ring is None:
            ring = ops[0].ring
        for p in ops:
            if not isinstance(p, DiffOp) or p.ring != ring:
                raise ValueError("generators must be operators over one ring")
            if p.is_zero():
                raise ValueError("zero operators cannot generate")
        self.ops = ops
        self.ring = ring
        self._exps: tuple[ExpVec, ...] | None = None
        self._cones: dict[tuple[int, ...], PolyIdeal] = {}
        self._targets: list[ExpVec] | None = None

    @classmethod
    def wrap(cls, f) -> "GeneratorSet":
        return f if isinstance(f, GeneratorSet) else cls(f)

    def __iter__(self):
        return iter(self.ops)

    def __len__(self):
        return len(self.ops)

    def __getitem__(self, i):
        return self.ops[i]

    @property
    def exps(self) -> tuple[ExpVec, ...]:
        if self._exps is None:
            self._exps = tuple(p.exp_delta() for p in self.ops)
        return self._exps

    def participants(self, alpha: ExpVec) -> tuple[int, ...]:
        """Indices whose leading d-exponent divides alpha."""
        return tuple(i for i, e in enumerate(self.exps) if divides(e, alpha))

    def cone_ideal(self, alpha: ExpVec) -> PolyIdeal:
        idxs = self.participants(alpha)
        if idxs not in self._cones:
            gens = tuple(self.ops[i].c_delta() for i in idxs)
            self._cones[idxs] = PolyIdeal(gens, self.ring.x_order())
        return self._cones[idxs]


def cone_coefficients(alpha: ExpVec, f) -> list[Poly]:
    """Leading coefficients of the generators covering alpha."""
    f = GeneratorSet.wrap(f)
    return [f[i].c_delta() for i in f.participants(alpha)]


def cone_ideal(alpha: ExpVec, f) -> PolyIdeal:
    """Ideal of H generated by the covering leading coefficients
    (the zero ideal when nothing covers alpha)."""
    f = GeneratorSet.wrap(f)
    return f.cone_ideal(alpha)


def is_reduced(p: DiffOp, f) -> bool:
    """True when p is zero, its leading exponent escapes every cone, or
    its leading coefficient is outside the cone ideal there."""
    if p.is_zero():
        return True
    f = GeneratorSet.wrap(f)
    alpha = p.exp_delta()
    if not f.participants(alpha):
        return True
    return not f.cone_ideal(alpha).contains(p.c_delta())


@dataclass
class ReductionTrace:
    """Certificate P = sum cofactors[i] * F[i] + remainder."""

    cofactors: tuple[DiffOp, ...]
    remainder: DiffOp
    steps: int = 0


def reduce(p: DiffOp, f, tail: bool = False) -> ReductionTrace:
    """Deterministic division of p by the generator set f.

    Postconditions: the trace identity holds exactly, the remainder is
    reduced, and max over the order of exp_delta(cofactor*generator)
    and exp_delta(remainder) equals exp_delta(p).  Cofactors for each
    cancellation come from the commutative membership certificate of
    the leading coefficient over the covering generators, in input
    order.  With ``tail`` the irreducible head is peeled off and the
    rest keeps reducing instead of stopping at the first stuck head.
    """
    f = GeneratorSet.wrap(f)
    ring = f.ring
    if p.ring != ring:
        raise ValueError("operator ring mismatch")
    order = ring.order_delta
    cof = [DiffOp.zero(ring) for _ in f.ops]
    rem = DiffOp.zero(ring)
    cur = p
    steps = 0
    prev = None
    while not cur.is_zero():
        alpha = cur.exp_delta()
        if prev is not None:
            assert order.compare(alpha, prev) < 0  # strict descent
        prev = alpha
        idxs = f.participants(alpha)
        qs = None
        if idxs:
            qs = f.cone_ideal(alpha).member_with_cofactors(cur.c_delta())
        if qs is not None:
            steps += 1
            for pos, i in enumerate(idxs):
                q = qs[pos]
                if q.is_zero():
                    continue
                t = DiffOp.term(ring, sub_exp(alpha, f.exps[i]), q)
                cof[i] = cof[i] + t
                cur = cur - t * f.ops[i]
            continue
        if not tail:
            rem = cur
            break
        head = DiffOp.term(ring, alpha, cur.c_delta())
        rem = rem + head
        cur = cur - head
        steps += 1
    return ReductionTrace(tuple(cof), rem, steps)


def lcm_targets(f) -> list[ExpVec]:
    """Closure of the leading exponents under componentwise lcm,
    sorted ascending in the active order."""
    f = GeneratorSet.wrap(f)
    if f._targets is None:
        exps = set(f.exps)
        targets = set(exps)
        while True:
            fresh = {lcm_exp(a, b) for a in targets for b in exps} - targets
            if not fresh:
                break
            targets |= fresh
        f._targets = sorted(targets, key=f.ring.order_delta.key)
    return list(f._targets)


@dataclass
class SDeltaOp:
    """S-operator at alpha: the syzygy vector over the full generator
    list and the resulting combination sum lam[k] d^(alpha-exp_k) F[k]."""

    alpha: ExpVec
    lam: tuple[Poly, ...]
    operator: DiffOp


def s_delta_operators(f, alpha: ExpVec) -> list[SDeltaOp]:
    """All S-operators at the lcm target alpha, one per syzygy generator
    of the covering leading coefficients.  Nonzero results drop strictly
    below alpha in the order."""
    f = GeneratorSet.wrap(f)
    ring = f.ring
    if alpha not in lcm_targets(f):
        raise ValueError(f"{alpha} is not an lcm target of the generator exponents")
    idxs = f.participants(alpha)
    coeffs = [f[i].c_delta() for i in idxs]
    out = []
    for part in syzygies(coeffs, ring.x_order()):
        lam = [Poly.zero(ring.nvars) for _ in f.ops]
        op = DiffOp.zero(ring)
        for pos, i in enumerate(idxs):
            lam[i] = part[pos]
            if part[pos].is_zero():
                continue
            op = op + DiffOp.term(ring, sub_exp(alpha, f.exps[i]), part[pos]) * f.ops[i]
        if not op.is_zero():
            assert ring.order_delta.compare(op.exp_delta(), alpha) < 0
        out.append(SDeltaOp(alpha, tuple(lam), op))
    return out


def _first_failure(f: GeneratorSet, stats: dict | None = None):
    """First S-operator with a nonzero deterministic remainder, or None."""
    for alpha in lcm_targets(f):
        for sop in s_delta_operators(f, alpha):
            if stats is not None:
                stats["s_operators"] += 1
            if sop.operator.is_zero():
                continue
            tr = reduce(sop.operator, f)
            if stats is not None:
                stats["reductions"] += 1
                stats["reduction_steps"] += tr.steps
            if not tr.remainder.is_zero():
                return sop, tr
    return None


def is_delta_groebner(f) -> bool:
    """Base criterion: every S-operator reduces to zero."""
    return _first_failure(GeneratorSet.wrap(f)) is None


def minimal_stair(exps, order) -> tuple[ExpVec, ...]:
    """Minimal antichain of the exponent set under componentwise order."""
    uniq = set(exps)
    mins = [e for e in uniq if not any(o != e and divides(o, e) for o in uniq)]
    return tuple(sorted(mins, key=order.key))


@dataclass
class DeltaBasis:
    """A certified base: completion output with stair and cone ideals."""

    ops: tuple[DiffOp, ...]
    ring: RingSpec
    stair: tuple[ExpVec, ...]
    cones: dict[ExpVec, PolyIdeal]
    stats: dict = field(default_factory=dict)
    _gens: GeneratorSet | None = field(default=None, repr=False, compare=False)

    @property
    def genset(self) -> GeneratorSet:
        if self._gens is None:
            self._gens = GeneratorSet(self.ops, self.ring)
        return self._gens


def complete(f, cap: int = 10000) -> DeltaBasis:
    """Run completion: repeatedly append the normalized remainder of the
    first failing S-operator until everything reduces to zero.

    Raises CompletionCapExceeded after ``cap`` additions.
    """
    f = GeneratorSet.wrap(f)
    ring = f.ring
    ops = list(f.ops)
    stats = {"rounds": 0, "s_operators": 0, "reductions": 0,
             "reduction_steps": 0, "additions": 0}
    gs = GeneratorSet(tuple(ops), ring)
    while True:
        stats["rounds"] += 1
        hit = _first_failure(gs, stats)
        if hit is None:
            break
        _, tr = hit
        if stats["additions"] >= cap:
            raise CompletionCapExceeded(
                f"completion exceeded the cap of {cap} additions")
        ops.append(tr.remainder.primitive())
        stats["additions"] += 1
        gs = GeneratorSet(tuple(ops), ring)
    stair = minimal_stair(gs.exps, ring.order_delta)
    cones = {a: gs.cone_ideal(a) for a in stair}
    return DeltaBasis(tuple(ops), ring, stair, cones, stats, gs)


def delta_stair(b: DeltaBasis) -> tuple[ExpVec, ...]:
    """Minimal generators of the exponent set of the ideal."""
    return b.stair


def cone_ideal_of_ideal(alpha: ExpVec, b: DeltaBasis) -> PolyIdeal:
    """Cone ideal of the full ideal at alpha; for a certified base this
    equals the cone ideal of the base itself."""
    return b.genset.cone_ideal(alpha)


def member(p: DiffOp, b: DeltaBasis):
    """Ideal membership through reduction by a certified base.

    Returns (True, trace) with the trace as certificate, or (False, None).
    """
    tr = reduce(p, b.genset)
    if tr.remainder.is_zero():
        return True, tr
    return False, None
