"""Exponent vectors in N^k and the monomial orderings used everywhere else.

An exponent vector is a plain tuple of nonnegative ints.  Orderings are
total, compatible with addition and have 0 as least element, so every
strictly decreasing chain of exponents is finite.
"""

from __future__ import annotations

from dataclasses import dataclass

ExpVec = tuple  # tuple[int, ...]

LT, EQ, GT = -1, 0, 1

ORDER_KINDS = ("lex", "deglex", "degrevlex")


def _same_length(a: ExpVec, b: ExpVec) -> None:
    if len(a) != len(b):
        raise ValueError(f"exponent length mismatch: {len(a)} vs {len(b)}")


def add_exp(a: ExpVec, b: ExpVec) -> ExpVec:
    _same_length(a, b)
    return tuple(x + y for x, y in zip(a, b))


def sub_exp(a: ExpVec, b: ExpVec) -> ExpVec:
    """Componentwise difference; only defined when it stays in N^k."""
    _same_length(a, b)
    out = tuple(x - y for x, y in zip(a, b))
    if any(x < 0 for x in out):
        raise ValueError(f"{a} - {b} leaves N^{len(a)}")
    return out


def lcm_exp(a: ExpVec, b: ExpVec) -> ExpVec:
    _same_length(a, b)
    return tuple(max(x, y) for x, y in zip(a, b))


def divides(a: ExpVec, b: ExpVec) -> bool:
    """True iff b lies in the translated cone a + N^k."""
    _same_length(a, b)
    return all(x <= y for x, y in zip(a, b))


def total_degree(a: ExpVec) -> int:
    return sum(a)


@dataclass(frozen=True)
class MonomialOrder:
    """A term order on N^k: lex, deglex or degrevlex.

    ``prec`` lists variable indices from most to least significant.
    ``None`` means declaration order (index 0 most significant).
    """

    kind: str = "deglex"
    prec: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if self.kind not in ORDER_KINDS:
            raise ValueError(f"unknown order kind {self.kind!r}")
        if self.prec is not None:
            p = tuple(self.prec)
            if sorted(p) != list(range(len(p))):
                raise ValueError(f"precedence {p} is not a permutation")
            object.__setattr__(self, "prec", p)
        # memo for key(); not a field, so eq/hash stay structural
        object.__setattr__(self, "_key_cache", {})

    def _indices(self, k: int):
        if self.prec is None:
            return range(k)
        if len(self.prec) != k:
            raise ValueError(f"precedence has {len(self.prec)} entries, exponent has {k}")
        return self.prec

    def key(self, e: ExpVec):
        """Sort key; larger key means larger exponent."""
        k = self._key_cache.get(e)
        if k is not None:
            return k
        idx = self._indices(len(e))
        if self.kind == "lex":
            k = tuple(e[i] for i in idx)
        elif self.kind == "deglex":
            k = (sum(e), tuple(e[i] for i in idx))
        else:
            # degrevlex: grade first, then the *smallest* trailing part wins
            k = (sum(e), tuple(-e[i] for i in reversed(list(idx))))
        self._key_cache[e] = k
        return k

    def compare(self, a: ExpVec, b: ExpVec) -> int:
        _same_length(a, b)
        ka, kb = self.key(a), self.key(b)
        if ka < kb:
            return LT
        if ka > kb:
            return GT
        return EQ

    def max(self, exps) -> ExpVec:
        return max(exps, key=self.key)

    def sorted(self, exps, reverse: bool = False) -> list:
        return sorted(exps, key=self.key, reverse=reverse)


def lex(prec: tuple[int, ...] | None = None) -> MonomialOrder:
    return MonomialOrder("lex", prec)


def deglex(prec: tuple[int, ...] | None = None) -> MonomialOrder:
    return MonomialOrder("deglex", prec)


def degrevlex(prec: tuple[int, ...] | None = None) -> MonomialOrder:
    return MonomialOrder("degrevlex", prec)
