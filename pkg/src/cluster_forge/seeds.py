"""Seed mutation: exchange matrices, coefficient tuples in a tropical
semifield, Y-variables, cluster variables, extended (frozen-variable) seeds,
and basis-level seed data on a lattice with a skew form.

Conventions, used consistently everywhere:

* ``B`` is a square integer matrix over all directions (mutable first,
  frozen after); only mutable directions may be mutated.
* Exchange dynamics read column ``k`` of ``B`` for the exchange binomial of
  direction ``k`` and row ``k`` for how direction ``k`` acts on the others.
* ``d`` are positive integers with ``d[i]*B[i][j] == -d[j]*B[j][i]`` on the
  mutable block (row-scaled skewness).
* Coefficient tuples live in the tropical semifield on ``p1..pr`` and mutate
  by the tropical specialization of the Y-variable rule.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import lcm

from .exact_algebra import PosRatFunc, prf_add
from .semifields import TropMonomial, bracket, trop_add


def sign(x):
    return (x > 0) - (x < 0)


def mutate_matrix(B, k):
    """Matrix mutation in direction k: flip row/column k, adjust the rest by
    the positive part of the product through k."""
    N = len(B)
    out = []
    for i in range(N):
        row = []
        for j in range(N):
            if i == k or j == k:
                row.append(-B[i][j])
            else:
                row.append(B[i][j] + sign(B[i][k]) * max(B[i][k] * B[k][j], 0))
        out.append(tuple(row))
    return tuple(out)


def y_vars(n):
    return tuple(f"y{i + 1}" for i in range(n))


def x_vars(n):
    return tuple(f"x{i + 1}" for i in range(n))


def p_vars(r):
    return tuple(f"p{i + 1}" for i in range(r))


def t_vars(n):
    return tuple(f"t{i + 1}" for i in range(n))


class ExchangeData:
    """Square integer exchange matrix with mutable count and skew multipliers.

    ``B`` is (n+m) x (n+m); the first ``n`` indices are mutable.  ``d`` has
    one positive integer per index; the mutable block must satisfy
    d_i b_ij = -d_j b_ji.
    """

    __slots__ = ("B", "n", "d")

    def __init__(self, B, n, d=None):
        self.B = tuple(tuple(int(x) for x in row) for row in B)
        N = len(self.B)
        for row in self.B:
            if len(row) != N:
                raise ValueError("exchange matrix must be square")
        if not 0 < n <= N:
            raise ValueError("mutable count out of range")
        self.n = n
        self.d = tuple(int(x) for x in d) if d is not None else (1,) * N
        if len(self.d) != N or any(x <= 0 for x in self.d):
            raise ValueError("need one positive multiplier per index")
        for i in range(n):
            if self.B[i][i]:
                raise ValueError("nonzero diagonal entry")
            for j in range(n):
                if self.d[i] * self.B[i][j] != -self.d[j] * self.B[j][i]:
                    raise ValueError(
                        f"matrix is not skew-symmetrizable by d at ({i},{j})")

    @property
    def size(self):
        return len(self.B)

    @property
    def m(self):
        return self.size - self.n

    def mutate(self, k):
        if not 0 <= k < self.n:
            raise ValueError(f"direction {k} is not mutable")
        return ExchangeData(mutate_matrix(self.B, k), self.n, self.d)

    def mutable_block(self):
        return tuple(tuple(row[: self.n]) for row in self.B[: self.n])

    def __eq__(self, other):
        return (isinstance(other, ExchangeData) and self.B == other.B
                and self.n == other.n and self.d == other.d)

    def __hash__(self):
        return hash((self.B, self.n, self.d))

    def __repr__(self):
        return f"ExchangeData(B={self.B}, n={self.n}, d={self.d})"


def langlands_dual(ed):
    """Dual exchange data: negated transpose with reciprocal multipliers."""
    L = lcm(*ed.d) if len(ed.d) > 1 else ed.d[0]
    Bt = tuple(tuple(-ed.B[j][i] for j in range(ed.size)) for i in range(ed.size))
    return ExchangeData(Bt, ed.n, tuple(L // x for x in ed.d))


def dual_pattern_data(p0, ed):
    """Pattern data for the dual dynamics: same coefficient tuple, dual
    exchange data."""
    return tuple(p0), langlands_dual(ed)


class YSeedCoeff:
    """Y-seed with coefficients: Y-variables in the subtraction-free field on
    y1..yn and p1..pr, plus a coefficient tuple in the tropical semifield."""

    __slots__ = ("exchange", "y", "p", "yv", "pv", "vars")

    def __init__(self, exchange, y, p):
        self.exchange = exchange
        self.y = tuple(y)
        self.p = tuple(p)
        n = exchange.n
        if exchange.m:
            raise ValueError("Y-seed dynamics use a fully mutable matrix")
        if len(self.y) != n or len(self.p) != n:
            raise ValueError("need n Y-variables and n coefficients")
        self.pv = self.p[0].vars
        self.vars = self.y[0].vars
        self.yv = tuple(v for v in self.vars if v not in self.pv)

    @classmethod
    def initial(cls, exchange, p):
        """Initial seed: y_i are the coordinate variables, p the given
        tropical coefficient tuple."""
        n = exchange.n
        pv = p[0].vars
        vars = y_vars(n) + tuple(pv)
        y = tuple(PosRatFunc.variable(vars, f"y{i + 1}") for i in range(n))
        return cls(exchange, y, tuple(p))

    @classmethod
    def initial_principal(cls, exchange):
        """Initial seed with one private coefficient variable per direction."""
        n = exchange.n
        pv = p_vars(n)
        p = tuple(TropMonomial.variable(pv, f"p{i + 1}") for i in range(n))
        return cls.initial(exchange, p)

    @classmethod
    def initial_trivial(cls, exchange):
        """Initial seed with all coefficients equal to one (rank-0 semifield
        represented on an empty variable list)."""
        p = tuple(TropMonomial.one(()) for _ in range(exchange.n))
        return cls.initial(exchange, p)


def mutate_coeff_tuple(p, B, k):
    """Tropical coefficient mutation: invert the k-th entry, multiply the
    rest by (1 (+) p_k^{-sgn b_kj})^{-b_kj}."""
    n = len(p)
    one = TropMonomial.one(p[k].vars)
    out = list(p)
    out[k] = p[k].inv()
    for j in range(n):
        if j == k:
            continue
        b = B[k][j]
        if b:
            out[j] = p[j].mul(trop_add(one, p[k].power(-sign(b))).power(-b))
    return tuple(out)


def mutate_y_seed(seed, k):
    """One Y-seed mutation with coefficients in direction k.

    The mutated k-th variable is inverted; every other variable picks up the
    factor (p_k^[b_kj] + p_k^[-b_kj] * y_k^{-sgn b_kj})^{-b_kj}, with the
    sign-selected coefficient parts embedded as honest monomials.
    """
    B = seed.exchange.B
    n = seed.exchange.n
    pk = seed.p[k]
    yk = seed.y[k]
    ys = list(seed.y)
    ys[k] = yk.inv()
    for j in range(n):
        if j == k:
            continue
        b = B[k][j]
        if not b:
            continue
        s = sign(b)
        base = prf_add(
            bracket(pk, b).to_posrat(seed.vars),
            bracket(pk, -b).to_posrat(seed.vars).mul(yk.power(-s)))
        ys[j] = seed.y[j].mul(base.power(-b))
    return YSeedCoeff(seed.exchange.mutate(k), ys,
                      mutate_coeff_tuple(seed.p, B, k))


class ClusterSeedCoeff:
    """Cluster seed with coefficients: cluster variables in the
    subtraction-free field on x1..xN and p1..pr (frozen cluster variables,
    when present, sit at the frozen indices of the exchange matrix)."""

    __slots__ = ("exchange", "x", "p", "pv", "vars")

    def __init__(self, exchange, x, p):
        self.exchange = exchange
        self.x = tuple(x)
        self.p = tuple(p)
        if len(self.x) != exchange.size:
            raise ValueError("need one cluster variable per matrix index")
        if len(self.p) != exchange.n:
            raise ValueError("need one coefficient per mutable index")
        self.pv = self.p[0].vars if self.p else ()
        self.vars = self.x[0].vars

    @classmethod
    def initial(cls, exchange, p):
        N = exchange.size
        pv = p[0].vars if p else ()
        vars = x_vars(N) + tuple(pv)
        x = tuple(PosRatFunc.variable(vars, f"x{i + 1}") for i in range(N))
        return cls(exchange, x, tuple(p))

    @classmethod
    def initial_principal(cls, exchange):
        n = exchange.n
        pv = p_vars(n)
        p = tuple(TropMonomial.variable(pv, f"p{i + 1}") for i in range(n))
        return cls.initial(exchange, p)


def mutate_cluster_seed(seed, k):
    """One cluster mutation with coefficients in direction k: the exchange
    binomial takes the sign-split column k of the matrix over all indices
    (frozen included) with the sign-selected coefficient parts in front."""
    B = seed.exchange.B
    N = seed.exchange.size
    pk = seed.p[k]
    plus = bracket(pk, 1).to_posrat(seed.vars)
    minus = bracket(pk, -1).to_posrat(seed.vars)
    for i in range(N):
        b = B[i][k]
        if b > 0:
            plus = plus.mul(seed.x[i].power(b))
        elif b < 0:
            minus = minus.mul(seed.x[i].power(-b))
    xs = list(seed.x)
    xs[k] = prf_add(minus, plus).mul(seed.x[k].inv())
    return ClusterSeedCoeff(seed.exchange.mutate(k), xs,
                            mutate_coeff_tuple(seed.p, B[: seed.exchange.n], k)
                            if seed.p else ())


def y_tilde_monomials(ed, vars=None):
    """Column monomials of the exchange matrix: the j-th output has exponent
    vector equal to column j of B, over x1..xN (frozen rows included)."""
    N = ed.size
    vars = tuple(vars) if vars is not None else x_vars(N)
    out = []
    for j in range(ed.n):
        e = [0] * len(vars)
        for i in range(N):
            e[i] = ed.B[i][j]
        out.append(PosRatFunc.monomial(vars, e))
    return out


def y_hat(seed):
    """Coefficient times column monomial, per mutable direction, in the
    seed's own variables."""
    out = []
    for j in range(seed.exchange.n):
        m = PosRatFunc.one(seed.vars)
        for i in range(seed.exchange.size):
            b = seed.exchange.B[i][j]
            if b:
                m = m.mul(seed.x[i].power(b))
        out.append(seed.p[j].to_posrat(seed.vars).mul(m))
    return out


def build_extended_seed(B, n, coeff_exps, d=None, coeff_rank=None):
    """Exchange data on mutable plus frozen indices from coefficient
    exponents.

    ``coeff_exps[j]`` is the exponent vector (length r) of the j-th
    coefficient monomial; it becomes column j of the lower-left block.  The
    upper-right block is its negated transpose, the frozen-frozen block is
    zero.
    """
    n = int(n)
    r = coeff_rank if coeff_rank is not None else (
        len(coeff_exps[0]) if coeff_exps else 0)
    for e in coeff_exps:
        if len(e) != r:
            raise ValueError("coefficient exponent vectors have mixed lengths")
    N = n + r
    full = [[0] * N for _ in range(N)]
    for i in range(n):
        for j in range(n):
            full[i][j] = B[i][j]
    for l in range(r):
        for j in range(n):
            a = coeff_exps[j][l]
            full[n + l][j] = a
            full[j][n + l] = -a
    dd = tuple(d) + (1,) * r if d is not None else None
    return ExchangeData(full, n, dd)


def principal_extension(ed):
    """Extended exchange data for one private coefficient per direction,
    with matching multipliers on the frozen copy."""
    n = ed.n
    if ed.m:
        raise ValueError("principal extension starts from a fully mutable matrix")
    eye = [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    ext = build_extended_seed(ed.B, n, eye, d=ed.d)
    return ExchangeData(ext.B, n, ed.d + ed.d)


def p_star_pullback(ed, vars=None):
    """Row monomials of the exchange matrix: the i-th output (mutable i) has
    exponent vector equal to row i of B over all indices."""
    N = ed.size
    vars = tuple(vars) if vars is not None else x_vars(N)
    out = []
    for i in range(ed.n):
        e = [0] * len(vars)
        for j in range(N):
            e[j] = ed.B[i][j]
        out.append(PosRatFunc.monomial(vars, e))
    return out


# -- basis-level seeds on a lattice with a skew form -------------------------

class NSeedCoords:
    """Seed as a lattice basis with a skew form.

    ``E`` holds integer basis vectors (rows) of the ambient lattice; ``F``
    holds the scaled dual basis (rows, rational), one per index, with
    <E_i, d_j F_j> = delta_ij under the coordinate dot pairing.  ``omega`` is
    the skew form matrix on ambient coordinates, rational.
    """

    __slots__ = ("E", "F", "omega", "d")

    def __init__(self, E, F, omega, d):
        self.E = tuple(tuple(Fraction(x) for x in row) for row in E)
        self.F = tuple(tuple(Fraction(x) for x in row) for row in F)
        self.omega = tuple(tuple(Fraction(x) for x in row) for row in omega)
        self.d = tuple(int(x) for x in d)

    def form(self, v, w):
        return sum(a * self.omega[i][j] * b
                   for i, a in enumerate(v) if a
                   for j, b in enumerate(w) if b)

    def epsilon(self):
        """Exchange matrix read off the basis: form value times the target
        multiplier; entries must come out integral."""
        N = len(self.E)
        out = []
        for i in range(N):
            row = []
            for j in range(N):
                v = self.form(self.E[i], self.E[j]) * self.d[j]
                if v.denominator != 1:
                    raise ValueError("basis does not give an integer matrix")
                row.append(int(v))
            out.append(tuple(row))
        return tuple(out)

    def pairing_check(self):
        """<e_i, f_j> d_j must be the identity."""
        N = len(self.E)
        for i in range(N):
            for j in range(N):
                v = sum(a * b for a, b in zip(self.E[i], self.F[j])) * self.d[j]
                if v != (1 if i == j else 0):
                    return False
        return True

    def mutate(self, k):
        """Basis mutation in direction k: push the positive part of column k
        of the matrix into the other basis vectors, negate the k-th; dually
        on the scaled dual basis along row k."""
        eps = self.epsilon()
        N = len(self.E)
        E = [list(row) for row in self.E]
        F = [list(row) for row in self.F]
        newE = []
        for i in range(N):
            if i == k:
                newE.append([-x for x in E[k]])
            else:
                c = max(eps[i][k], 0)
                newE.append([a + c * b for a, b in zip(E[i], E[k])])
        newF = [list(row) for row in F]
        fk = [-x for x in F[k]]
        for j in range(N):
            c = max(-eps[k][j], 0)
            if c:
                fk = [a + c * b for a, b in zip(fk, F[j])]
        newF[k] = fk
        return NSeedCoords(newE, newF, self.omega, self.d)


def build_principal_nseed(ed):
    """Basis-level seed for the self-coefficient extension on N + dual(N).

    The ambient lattice doubles: the first block carries the original basis,
    the second the scaled dual basis.  The form restricts to the original
    one on the first block, pairs the blocks by the duality pairing, and
    vanishes on the second block.  Its matrix reproduces the extended
    exchange matrix with identity cross blocks.
    """
    n = ed.n
    if ed.m:
        raise ValueError("needs a fully mutable matrix")
    L = lcm(*ed.d) if n > 1 else ed.d[0]
    dp = [L // x for x in ed.d]   # multipliers on the basis side
    # Lambda_ij = eps_ij / dp_j with eps = B^T
    Lam = [[Fraction(ed.B[j][i], dp[j]) for j in range(n)] for i in range(n)]
    omega = [[Fraction(0)] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            omega[i][j] = Lam[i][j]
    for i in range(n):
        omega[i][n + i] = Fraction(1, dp[i])
        omega[n + i][i] = Fraction(-1, dp[i])
    E = [[1 if j == i else 0 for j in range(2 * n)] for i in range(2 * n)]
    F = [[Fraction(1, dp[i % n]) if j == i else Fraction(0)
          for j in range(2 * n)] for i in range(2 * n)]
    return NSeedCoords(E, F, omega, dp + dp)


def mutate_n_seed(ns, k):
    return ns.mutate(k)


# -- JSON round trip ----------------------------------------------------------

def seed_to_json(ed, p):
    """Serialize exchange data plus a tropical coefficient tuple."""
    r = len(p[0].exps) if p else 0
    return {
        "n": ed.n,
        "m": ed.m,
        "d": list(ed.d),
        "B": [list(row) for row in ed.B],
        "coeff_rank": r,
        "p": [list(m.exps) for m in p],
    }


def seed_from_json(obj):
    ed = ExchangeData(obj["B"], obj["n"], obj.get("d"))
    r = obj.get("coeff_rank", 0)
    pv = p_vars(r)
    p = tuple(TropMonomial(pv, e) for e in obj.get("p", []))
    return ed, p


def seed_dumps(ed, p):
    return json.dumps(seed_to_json(ed, p), indent=2, sort_keys=True)


def seed_loads(s):
    return seed_from_json(json.loads(s))
