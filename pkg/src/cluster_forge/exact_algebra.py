"""Exact multivariate Laurent-polynomial and factored rational-function arithmetic.

Everything is exact: coefficients are arbitrary-precision integers, exponents
are machine integers, and all comparisons are symbolic.  Values are immutable
after construction and safe to share between threads.

Two layers:

* ``LaurentPoly`` — a Laurent polynomial as a map from exponent vectors to
  nonzero integer coefficients, over an explicit ordered variable set.
* ``PosRatFunc`` — a subtraction-free rational function kept in factored
  positive form: a unit monomial (coefficient +1) times a product of integer
  powers of canonical positive polynomials.  Mutation dynamics only ever
  multiply/divide by known factors, so cancellation is exponent arithmetic on
  the factor dictionary plus trial exact division; no general multivariate
  GCD is needed.  Equality is by cross-multiplication.

``RatPair`` is a signed numerator/denominator pair used where subtraction or
rational scalars are unavoidable (fiber specialization at rational points).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class ExactAlgebraError(Exception):
    """Base class for arithmetic failures in this module."""


class VariableSetMismatch(ExactAlgebraError):
    pass


class InexactDivision(ExactAlgebraError):
    pass


class InhomogeneousError(ExactAlgebraError):
    pass


class LimitError(ExactAlgebraError):
    pass


class PositivityError(ExactAlgebraError):
    pass


def graded_lex_key(exps):
    """Sort key realizing the global graded-lexicographic term order."""
    return (sum(exps), exps)


def _check_same_vars(a, b):
    if a.vars != b.vars:
        raise VariableSetMismatch(f"variable sets differ: {a.vars} vs {b.vars}")


class LaurentPoly:
    """Immutable Laurent polynomial with integer coefficients.

    ``terms`` maps exponent tuples (one slot per variable in ``vars``) to
    nonzero integers.  The zero polynomial has an empty term map.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars, terms):
        self.vars = tuple(vars)
        nv = len(self.vars)
        clean = {}
        for e, c in terms.items():
            if c:
                e = tuple(e)
                if len(e) != nv:
                    raise ExactAlgebraError(
                        f"exponent vector {e} has wrong length for {self.vars}")
                clean[e] = c
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, vars):
        return cls(vars, {})

    @classmethod
    def one(cls, vars):
        return cls(vars, {tuple([0] * len(vars)): 1})

    @classmethod
    def constant(cls, vars, c):
        return cls(vars, {tuple([0] * len(vars)): c} if c else {})

    @classmethod
    def monomial(cls, vars, exps, coef=1):
        return cls(vars, {tuple(exps): coef} if coef else {})

    @classmethod
    def variable(cls, vars, name):
        vars = tuple(vars)
        i = vars.index(name)
        e = [0] * len(vars)
        e[i] = 1
        return cls(vars, {tuple(e): 1})

    # -- basic queries -------------------------------------------------
    def is_zero(self):
        return not self.terms

    def is_one(self):
        return self.terms == {tuple([0] * len(self.vars)): 1}

    def is_monomial(self):
        return len(self.terms) == 1

    def monomial_parts(self):
        """Return (exps, coef) for a single-term polynomial."""
        if len(self.terms) != 1:
            raise ExactAlgebraError("not a monomial")
        ((e, c),) = self.terms.items()
        return e, c

    def num_terms(self):
        return len(self.terms)

    def constant_coef(self):
        return self.terms.get(tuple([0] * len(self.vars)), 0)

    def all_coefs_positive(self):
        return all(c > 0 for c in self.terms.values())

    def integer_content(self):
        g = 0
        for c in self.terms.values():
            g = gcd(g, abs(c))
        return g

    def min_exponents(self):
        """Componentwise minimum exponent vector (the monomial content)."""
        if not self.terms:
            raise ExactAlgebraError("zero polynomial has no monomial content")
        its = iter(self.terms)
        m = list(next(its))
        for e in its:
            for i, x in enumerate(e):
                if x < m[i]:
                    m[i] = x
        return tuple(m)

    def sorted_terms(self):
        """Terms in descending graded-lex order (leading term first)."""
        return sorted(self.terms.items(), key=lambda t: graded_lex_key(t[0]),
                      reverse=True)

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        _check_same_vars(self, other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return LaurentPoly(self.vars, terms)

    def __neg__(self):
        return LaurentPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        _check_same_vars(self, other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, 0) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return LaurentPoly(self.vars, terms)

    def scale(self, c):
        if not c:
            return LaurentPoly.zero(self.vars)
        return LaurentPoly(self.vars, {e: c * v for e, v in self.terms.items()})

    def shift(self, exps):
        """Multiply by the monomial with exponent vector ``exps``."""
        return LaurentPoly(
            self.vars,
            {tuple(a + b for a, b in zip(e, exps)): c
             for e, c in self.terms.items()})

    def power(self, k):
        if k < 0:
            raise ExactAlgebraError("negative power of a polynomial")
        r = LaurentPoly.one(self.vars)
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    # -- substitution ----------------------------------------------------
    def substitute_monomials(self, images, target_vars=None):
        """Replace each variable by a monomial.

        ``images`` maps a variable name to an exponent vector over
        ``target_vars`` (default: same variable set).  Variables absent from
        ``images`` must exist in the target set and map to themselves.
        """
        tv = tuple(target_vars) if target_vars is not None else self.vars
        cols = []
        for i, v in enumerate(self.vars):
            if v in images:
                cols.append(tuple(images[v]))
            else:
                e = [0] * len(tv)
                e[tv.index(v)] = 1
                cols.append(tuple(e))
        terms = {}
        for e, c in self.terms.items():
            out = [0] * len(tv)
            for i, x in enumerate(e):
                if x:
                    col = cols[i]
                    for j, y in enumerate(col):
                        out[j] += x * y
            key = tuple(out)
            s = terms.get(key, 0) + c
            if s:
                terms[key] = s
            else:
                terms.pop(key, None)
        return LaurentPoly(tv, terms)

    # -- equality / hashing ----------------------------------------------
    def __eq__(self, other):
        return (isinstance(other, LaurentPoly)
                and self.vars == other.vars and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            items = tuple(sorted(self.terms.items()))
            self._hash = hash((self.vars, items))
        return self._hash

    # -- text form ---------------------------------------------------------
    def to_text(self):
        """Canonical text serialization: descending graded-lex term order,
        ``coef*var^exp`` with ``*`` separators."""
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            factors = []
            for v, x in zip(self.vars, e):
                if x == 1:
                    factors.append(v)
                elif x:
                    factors.append(f"{v}^{x}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"LaurentPoly({self.to_text()})"


def poly_exact_div(a, b):
    """Exact division in the integer Laurent ring; fails loudly otherwise.

    Both operands are shifted into the ordinary polynomial ring, divided by
    leading terms (graded-lex) over the rationals, and the quotient must come
    out with integer coefficients and zero remainder.
    """
    _check_same_vars(a, b)
    if b.is_zero():
        raise InexactDivision("division by zero polynomial")
    if a.is_zero():
        return LaurentPoly.zero(a.vars)
    ma = a.min_exponents()
    mb = b.min_exponents()
    ap = {tuple(x - y for x, y in zip(e, ma)): Fraction(c)
          for e, c in a.terms.items()}
    bp = {tuple(x - y for x, y in zip(e, mb)): Fraction(c)
          for e, c in b.terms.items()}
    lead_b = max(bp, key=graded_lex_key)
    cb = bp[lead_b]
    quot = {}
    rem = ap
    while rem:
        lead_r = max(rem, key=graded_lex_key)
        diff = tuple(x - y for x, y in zip(lead_r, lead_b))
        if any(x < 0 for x in diff):
            raise InexactDivision("leading term not divisible")
        q = rem[lead_r] / cb
        quot[diff] = q
        for e, c in bp.items():
            key = tuple(x + y for x, y in zip(e, diff))
            s = rem.get(key, 0) - q * c
            if s:
                rem[key] = s
            else:
                rem.pop(key, None)
    shift = tuple(x - y for x, y in zip(ma, mb))
    terms = {}
    for e, c in quot.items():
        if c.denominator != 1:
            raise InexactDivision("quotient has non-integer coefficient")
        terms[tuple(x + y for x, y in zip(e, shift))] = int(c)
    return LaurentPoly(a.vars, terms)


def poly_arith(a, b, op):
    """Dispatch basic polynomial arithmetic by name: add, mul, exact_div."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "exact_div":
        return poly_exact_div(a, b)
    raise ExactAlgebraError(f"unknown op {op!r}")


def _canonical_factor(poly):
    """Split a positive polynomial into (unit exponent shift, canonical key).

    The key has componentwise-minimal exponent 0 and integer content 1; fails
    loudly when the integer content is not 1 (the factored representation has
    nowhere to put a constant).
    """
    if poly.is_zero():
        raise PositivityError("zero cannot be a factor")
    if not poly.all_coefs_positive():
        raise PositivityError(f"factor has nonpositive coefficient: {poly.to_text()}")
    shift = poly.min_exponents()
    if poly.integer_content() != 1:
        raise PositivityError(
            f"factor has integer content != 1: {poly.to_text()}")
    key = LaurentPoly(
        poly.vars,
        {tuple(x - y for x, y in zip(e, shift)): c
         for e, c in poly.terms.items()})
    return shift, key


class PosRatFunc:
    """Subtraction-free rational function in factored positive form.

    ``unit`` is the exponent vector of a monomial with coefficient +1;
    ``factors`` maps canonical positive polynomials (content 1, minimal
    exponent 0, coefficients > 0) to nonzero integer exponents.
    """

    __slots__ = ("vars", "unit", "factors")

    def __init__(self, vars, unit, factors):
        self.vars = tuple(vars)
        self.unit = tuple(unit)
        clean = {}
        for p, e in factors.items():
            if e:
                if p.vars != self.vars:
                    raise VariableSetMismatch("factor over a different variable set")
                if p.is_one():
                    continue
                clean[p] = e
        self.factors = clean

    # -- constructors ---------------------------------------------------
    @classmethod
    def one(cls, vars):
        return cls(vars, [0] * len(vars), {})

    @classmethod
    def monomial(cls, vars, exps):
        return cls(vars, exps, {})

    @classmethod
    def variable(cls, vars, name):
        vars = tuple(vars)
        e = [0] * len(vars)
        e[vars.index(name)] = 1
        return cls(vars, e, {})

    @classmethod
    def from_poly(cls, poly, power=1):
        """Positive polynomial, canonicalized, raised to an integer power."""
        shift, key = _canonical_factor(poly)
        unit = tuple(x * power for x in shift)
        if key.is_one():
            return cls(poly.vars, unit, {})
        return cls(poly.vars, unit, {key: power})

    # -- multiplicative structure ----------------------------------------
    def mul(self, other):
        _check_same_vars(self, other)
        unit = tuple(a + b for a, b in zip(self.unit, other.unit))
        factors = dict(self.factors)
        for p, e in other.factors.items():
            s = factors.get(p, 0) + e
            if s:
                factors[p] = s
            else:
                factors.pop(p, None)
        return PosRatFunc(self.vars, unit, factors)

    def inv(self):
        return self.power(-1)

    def power(self, k):
        return PosRatFunc(self.vars, tuple(x * k for x in self.unit),
                          {p: e * k for p, e in self.factors.items()})

    # -- expansion --------------------------------------------------------
    def num_den_split(self):
        """Split into ([unit]+ exps, positive factor dict, [unit]- exps,
        negative factor dict with positive exponents)."""
        up = tuple(max(x, 0) for x in self.unit)
        un = tuple(max(-x, 0) for x in self.unit)
        nf = {p: e for p, e in self.factors.items() if e > 0}
        df = {p: -e for p, e in self.factors.items() if e < 0}
        return up, nf, un, df

    def expand(self):
        """Return (num, den) positive-coefficient Laurent polynomials with
        num/den == self and nonnegative exponents."""
        up, nf, un, df = self.num_den_split()
        num = LaurentPoly.monomial(self.vars, up)
        for p, e in nf.items():
            num = num * p.power(e)
        den = LaurentPoly.monomial(self.vars, un)
        for p, e in df.items():
            den = den * p.power(e)
        if not (num.all_coefs_positive() and den.all_coefs_positive()):
            raise PositivityError("expansion lost positivity")
        return num, den

    # -- reduction ----------------------------------------------------------
    def reduced(self):
        """Cancel opposite-signed factor keys by trial exact division,
        keeping only subtraction-free quotients.  Either key of a pair may
        be the composite one: a^k / (a*q)^k and (b*q)^k / b^k both rewrite
        to the quotient power.  A no-op when nothing divides; correctness
        never depends on this."""
        if not any(e > 0 for e in self.factors.values()) or \
                not any(e < 0 for e in self.factors.values()):
            return self
        unit = list(self.unit)
        fac = dict(self.factors)

        def bump(key, k):
            s = fac.get(key, 0) + k
            if s:
                fac[key] = s
            else:
                fac.pop(key, None)

        changed = True
        while changed:
            changed = False
            for a in [p for p, e in fac.items() if e > 0]:
                for b in [p for p, e in fac.items() if e < 0]:
                    ea, eb = fac.get(a, 0), fac.get(b, 0)
                    if ea <= 0 or eb >= 0:
                        continue
                    big, small = (a, b) if a.num_terms() >= b.num_terms() \
                        else (b, a)
                    try:
                        q = poly_exact_div(big, small)
                    except InexactDivision:
                        continue
                    if not q.all_coefs_positive():
                        continue
                    k = min(ea, -eb)
                    # a^k * b^-k is q^k when a is composite, q^-k when b is
                    bump(a, -k)
                    bump(b, k)
                    kq = k if big is a else -k
                    shift, key = _canonical_factor(q)
                    for i, x in enumerate(shift):
                        unit[i] += x * kq
                    if not key.is_one():
                        bump(key, kq)
                    changed = True
        return PosRatFunc(self.vars, unit, fac)

    # -- substitution ---------------------------------------------------------
    def substitute_monomials(self, images, target_vars=None):
        """Replace variables by monomials (exponent vectors), exactly."""
        tv = tuple(target_vars) if target_vars is not None else self.vars
        unit_poly = LaurentPoly.monomial(self.vars, self.unit).substitute_monomials(
            images, tv)
        e, c = unit_poly.monomial_parts()
        assert c == 1
        out = PosRatFunc.monomial(tv, e)
        for p, k in self.factors.items():
            out = out.mul(PosRatFunc.from_poly(p.substitute_monomials(images, tv), k))
        return out

    def evaluate(self, subst):
        """Compose with a map sending each variable to a PosRatFunc.

        Variables absent from ``subst`` map to themselves over the target
        variable set (taken from any image).
        """
        if not subst:
            return self
        any_img = next(iter(subst.values()))
        tv = any_img.vars
        images = {}
        for v in self.vars:
            img = subst.get(v)
            if img is None:
                img = PosRatFunc.variable(tv, v)
            images[v] = img
        out = PosRatFunc.one(tv)
        for v, x in zip(self.vars, self.unit):
            if x:
                out = out.mul(images[v].power(x))
        for p, k in self.factors.items():
            val = _evaluate_positive_poly(p, images, tv)
            out = out.mul(val.power(k))
        return out.reduced()

    # -- misc -------------------------------------------------------------
    def __eq__(self, other):
        return (isinstance(other, PosRatFunc) and self.vars == other.vars
                and self.unit == other.unit and self.factors == other.factors)

    def __hash__(self):
        return hash((self.vars, self.unit,
                     tuple(sorted(((hash(p), e) for p, e in self.factors.items())))))

    def to_text(self):
        num, den = self.expand()
        if den.is_one():
            return num.to_text()
        nt = num.to_text()
        dt = den.to_text()
        if num.num_terms() > 1:
            nt = f"({nt})"
        if den.num_terms() > 1 or "*" in dt:
            dt = f"({dt})"
        return f"{nt} / {dt}"

    def __repr__(self):
        return f"PosRatFunc({self.to_text()})"


def _evaluate_positive_poly(poly, images, target_vars):
    """Evaluate a positive polynomial at PosRatFunc arguments, exactly."""
    parts = []
    for e, c in poly.sorted_terms():
        m = PosRatFunc.one(target_vars)
        for v, x in zip(poly.vars, e):
            if x:
                m = m.mul(images[v].power(x))
        parts.append((c, m))
    return prf_sum(parts)


def prf_sum(parts):
    """Sum of positive-integer multiples of PosRatFuncs, as a PosRatFunc.

    Expands each part over the least common factored denominator, adds the
    positive numerator polynomials, and divides the denominator back out.
    """
    parts = [(c, f) for c, f in parts if c]
    if not parts:
        raise PositivityError("empty sum is zero, not representable")
    if any(c < 0 for c, _ in parts):
        raise PositivityError("negative multiplicity in subtraction-free sum")
    vars = parts[0][1].vars
    splits = [f.num_den_split() for _, f in parts]
    # least common denominator over factored forms
    den_unit = [0] * len(vars)
    den_factors = {}
    for up, nf, un, df in splits:
        for i, x in enumerate(un):
            den_unit[i] = max(den_unit[i], x)
        for p, e in df.items():
            den_factors[p] = max(den_factors.get(p, 0), e)
    total = LaurentPoly.zero(vars)
    for (c, f), (up, nf, un, df) in zip(parts, splits):
        piece = LaurentPoly.monomial(
            vars, tuple(a + b - x for a, b, x in zip(up, den_unit, un)), c)
        for p, e in nf.items():
            piece = piece * p.power(e)
        for p, e in den_factors.items():
            extra = e - df.get(p, 0)
            if extra:
                piece = piece * p.power(extra)
        total = total + piece
    out = PosRatFunc.from_poly(total)
    out = out.mul(PosRatFunc(vars, tuple(-x for x in den_unit),
                             {p: -e for p, e in den_factors.items()}))
    return out.reduced()


def prf_add(f, g):
    return prf_sum([(1, f), (1, g)])


def rat_equal(f, g):
    """Exact equality of rational functions by cross-multiplication."""
    _check_same_vars(f, g)
    nf, df = f.expand()
    ng, dg = g.expand()
    return nf * dg == ng * df


class Grading:
    """Integer multi-degree assignment on variables.

    ``degrees`` maps each variable name to a vector in Z^n; the degree of a
    term is the exponent-weighted sum.
    """

    def __init__(self, degrees):
        self.degrees = {v: tuple(d) for v, d in degrees.items()}
        ranks = {len(d) for d in self.degrees.values()}
        if len(ranks) > 1:
            raise ExactAlgebraError("inconsistent grading ranks")
        self.rank = ranks.pop() if ranks else 0

    def term_degree(self, vars, exps):
        out = [0] * self.rank
        for v, x in zip(vars, exps):
            if x:
                d = self.degrees.get(v)
                if d is None:
                    raise ExactAlgebraError(f"variable {v} has no degree assigned")
                for i, y in enumerate(d):
                    out[i] += x * y
        return tuple(out)

    def poly_degree(self, poly):
        """Degree of a homogeneous polynomial; error when inhomogeneous."""
        if poly.is_zero():
            raise InhomogeneousError("zero polynomial has no degree")
        degs = {self.term_degree(poly.vars, e) for e in poly.terms}
        if len(degs) != 1:
            raise InhomogeneousError(
                f"inhomogeneous polynomial: degrees {sorted(degs)}")
        return degs.pop()


def degree_of(f, grading):
    """Degree of a homogeneous rational function: deg(num) - deg(den)."""
    num, den = f.expand()
    dn = grading.poly_degree(num)
    dd = grading.poly_degree(den)
    return tuple(a - b for a, b in zip(dn, dd))


def limit_t_zero(f, t_vars):
    """Limit of f as the listed variables go to zero, by content factoring.

    From numerator and denominator separately, factor out the monomial
    content in the t-variables, then set t = 0 in what remains.  The result
    must be a single monomial (possibly with residual t-exponents from the
    content ratio, which callers may reject).  Fails loudly when the
    denominator still vanishes at t = 0 or the limit is not a monomial.
    """
    num, den = f.expand()
    t_idx = [f.vars.index(v) for v in t_vars]

    def content_and_fiber(poly, what):
        content = [0] * len(f.vars)
        mins = {i: min(e[i] for e in poly.terms) for i in t_idx}
        for i, m in mins.items():
            content[i] = m
        fiber = {}
        for e, c in poly.terms.items():
            if all(e[i] == mins[i] for i in t_idx):
                key = list(e)
                for i, m in mins.items():
                    key[i] = 0
                fiber[tuple(key)] = c
        if not fiber:
            raise LimitError(f"{what} vanishes at t=0 after content removal")
        return tuple(content), LaurentPoly(f.vars, fiber)

    if num.is_zero():
        raise LimitError("numerator is zero")
    cn, num0 = content_and_fiber(num, "numerator")
    cd, den0 = content_and_fiber(den, "denominator")
    if not num0.is_monomial():
        raise LimitError(f"limit not a monomial: {num0.to_text()}")
    if not den0.is_monomial():
        raise LimitError(f"denominator limit not a monomial: {den0.to_text()}")
    en, an = num0.monomial_parts()
    ed, ad = den0.monomial_parts()
    if an % ad:
        raise LimitError("limit has non-integer coefficient")
    exps = tuple(x - y + a - b for x, y, a, b in zip(en, ed, cn, cd))
    return LaurentPoly.monomial(f.vars, exps, an // ad)


class RatPair:
    """Signed rational function as a numerator/denominator pair.

    Used where subtraction-free form is impossible (specializing deformation
    parameters at arbitrary nonzero rationals).  Equality is exact, by
    cross-multiplication; no reduction is attempted.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        if den.is_zero():
            raise ExactAlgebraError("zero denominator")
        _check_same_vars(num, den)
        self.num = num
        self.den = den

    @classmethod
    def from_posrat(cls, f):
        num, den = f.expand()
        return cls(num, den)

    @classmethod
    def one(cls, vars):
        return cls(LaurentPoly.one(vars), LaurentPoly.one(vars))

    def mul(self, other):
        return RatPair(self.num * other.num, self.den * other.den)

    def add(self, other):
        return RatPair(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    def sub(self, other):
        return RatPair(self.num * other.den - other.num * self.den,
                       self.den * other.den)

    def inv(self):
        return RatPair(self.den, self.num)

    def power(self, k):
        if k >= 0:
            return RatPair(self.num.power(k), self.den.power(k))
        return RatPair(self.den.power(-k), self.num.power(-k))

    def scale(self, q):
        q = Fraction(q)
        return RatPair(self.num.scale(q.numerator), self.den.scale(q.denominator))

    def equals(self, other):
        return self.num * other.den == other.num * self.den

    def is_zero(self):
        return self.num.is_zero()

    def __repr__(self):
        return f"RatPair(({self.num.to_text()}) / ({self.den.to_text()}))"


def substitute_values(poly, assignment, scales=None):
    """Evaluate some variables of an integer polynomial at rational values,
    optionally also scaling other variables by rational constants (the
    variable stays, its coefficient picks up scale**exponent).

    Returns a RatPair over the same variable set (substituted slots pinned
    to exponent zero).
    """
    num_terms = {}
    denom_lcm = 1
    cache = {}
    scales = scales or {}

    def value_of(e):
        key = tuple(e[i] for i in idx) + tuple(e[i] for i in sidx)
        if key not in cache:
            v = Fraction(1)
            for i in idx:
                v *= Fraction(assignment[poly.vars[i]]) ** e[i]
            for i in sidx:
                v *= Fraction(scales[poly.vars[i]]) ** e[i]
            cache[key] = v
        return cache[key]

    idx = [i for i, v in enumerate(poly.vars) if v in assignment]
    sidx = [i for i, v in enumerate(poly.vars) if v in scales]
    vals = {}
    for e, c in poly.terms.items():
        v = value_of(e) * c
        key = list(e)
        for i in idx:
            key[i] = 0
        key = tuple(key)
        vals[key] = vals.get(key, Fraction(0)) + v
    for v in vals.values():
        denom_lcm = denom_lcm * v.denominator // gcd(denom_lcm, v.denominator)
    for e, v in vals.items():
        c = v * denom_lcm
        assert c.denominator == 1
        if c:
            num_terms[e] = int(c)
    return RatPair(LaurentPoly(poly.vars, num_terms),
                   LaurentPoly.constant(poly.vars, denom_lcm))
