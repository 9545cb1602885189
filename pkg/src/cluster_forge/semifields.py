"""Tropical semifields of Laurent monomials and the tropicalization map.

An element of the tropical semifield on variables ``p1..pr`` is a single
Laurent monomial; semifield addition takes the componentwise minimum of
exponent vectors, multiplication adds them.  The tropicalization map sends a
subtraction-free rational function to the semifield by evaluating its
factored form with + replaced by the tropical sum.
"""

from __future__ import annotations

from .exact_algebra import LaurentPoly, PosRatFunc, VariableSetMismatch


class TropMonomial:
    """Laurent monomial in a tropical semifield: just an exponent vector."""

    __slots__ = ("vars", "exps")

    def __init__(self, vars, exps):
        self.vars = tuple(vars)
        self.exps = tuple(exps)
        if len(self.exps) != len(self.vars):
            raise ValueError("exponent vector length mismatch")

    @classmethod
    def one(cls, vars):
        return cls(vars, [0] * len(vars))

    @classmethod
    def variable(cls, vars, name):
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return cls(vars, e)

    def mul(self, other):
        self._check(other)
        return TropMonomial(self.vars, [a + b for a, b in zip(self.exps, other.exps)])

    def inv(self):
        return TropMonomial(self.vars, [-x for x in self.exps])

    def power(self, k):
        return TropMonomial(self.vars, [x * k for x in self.exps])

    def is_one(self):
        return not any(self.exps)

    def _check(self, other):
        if self.vars != other.vars:
            raise VariableSetMismatch("tropical variable sets differ")

    def __eq__(self, other):
        return (isinstance(other, TropMonomial)
                and self.vars == other.vars and self.exps == other.exps)

    def __hash__(self):
        return hash((self.vars, self.exps))

    def to_laurent(self, target_vars=None):
        """The same monomial as a LaurentPoly, optionally over a larger
        variable set (unlisted slots get exponent zero)."""
        tv = tuple(target_vars) if target_vars is not None else self.vars
        e = [0] * len(tv)
        for v, x in zip(self.vars, self.exps):
            e[tv.index(v)] += x
        return LaurentPoly.monomial(tv, e)

    def to_posrat(self, target_vars=None):
        tv = tuple(target_vars) if target_vars is not None else self.vars
        e = [0] * len(tv)
        for v, x in zip(self.vars, self.exps):
            e[tv.index(v)] += x
        return PosRatFunc.monomial(tv, e)

    def to_text(self):
        return self.to_laurent().to_text()

    def __repr__(self):
        return f"TropMonomial({self.to_text()})"


def trop_add(a, b):
    """Semifield sum: componentwise minimum of exponent vectors."""
    a._check(b)
    return TropMonomial(a.vars, [min(x, y) for x, y in zip(a.exps, b.exps)])


def trop_sum(monomials):
    it = iter(monomials)
    out = next(it)
    for m in it:
        out = trop_add(out, m)
    return out


def p_plus_minus(p):
    """Split a tropical monomial into coprime nonnegative parts (plus, minus)
    with p == plus / minus."""
    plus = TropMonomial(p.vars, [max(x, 0) for x in p.exps])
    minus = TropMonomial(p.vars, [max(-x, 0) for x in p.exps])
    return plus, minus


def bracket(p, sign_source):
    """Sign-selected part of a tropical monomial: the minus part for a
    negative selector, one for zero, the plus part for a positive selector."""
    if sign_source < 0:
        return p_plus_minus(p)[1]
    if sign_source > 0:
        return p_plus_minus(p)[0]
    return TropMonomial.one(p.vars)


def tropicalize_poly(poly, trop_vars=None):
    """Tropical sum over the terms of a positive polynomial."""
    if poly.is_zero() or not poly.all_coefs_positive():
        raise ValueError("tropicalization needs a positive polynomial")
    tv = tuple(trop_vars) if trop_vars is not None else poly.vars
    idx = [poly.vars.index(v) for v in tv]
    mins = None
    for e in poly.terms:
        proj = [e[i] for i in idx]
        if mins is None:
            mins = proj
        else:
            mins = [min(a, b) for a, b in zip(mins, proj)]
    return TropMonomial(tv, mins)


def tropicalize(f, trop_vars=None):
    """Image of a subtraction-free rational function in the tropical
    semifield, evaluated on the factored form (a semifield morphism, so the
    result is representation independent)."""
    tv = tuple(trop_vars) if trop_vars is not None else f.vars
    idx = [f.vars.index(v) for v in tv]
    exps = [f.unit[i] for i in idx]
    for p, k in f.factors.items():
        m = tropicalize_poly(p, tv)
        for j, x in enumerate(m.exps):
            exps[j] += x * k
    return TropMonomial(tv, exps)
