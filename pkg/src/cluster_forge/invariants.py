"""Mutation invariants along paths: c-vectors, g-vectors, F-polynomials,
sign coherence, separation of additions, and periodicity detection.

All invariants are computed by at least two logically independent routes and
cross-checked in the test suite:

* c-vectors: tropical Y-dynamics (defining route) vs the direct integer
  recurrence on columns.
* g-vectors: inverse-transpose duality against the c-matrix of the negated
  transpose pattern vs multi-degrees of the principal-coefficient cluster
  variables.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from itertools import permutations

from .exact_algebra import (
    Grading,
    LaurentPoly,
    PosRatFunc,
    degree_of,
    poly_exact_div,
    rat_equal,
)
from .semifields import TropMonomial, trop_sum
from .seeds import (
    ClusterSeedCoeff,
    ExchangeData,
    YSeedCoeff,
    langlands_dual,
    mutate_cluster_seed,
    mutate_coeff_tuple,
    mutate_matrix,
    mutate_y_seed,
    p_vars,
    sign,
    x_vars,
    y_vars,
)


class CheckFailed(Exception):
    """An exact verification did not hold; the message says where."""


# -- small integer/rational matrix helpers -----------------------------------

def mat_identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_transpose(M):
    return tuple(tuple(row[i] for row in M) for i in range(len(M[0])))


def mat_mul(A, B):
    return tuple(tuple(sum(a * b for a, b in zip(row, col))
                       for col in zip(*B)) for row in A)


def mat_det(M):
    """Determinant by fraction-free Gaussian elimination over Fractions."""
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        inv = 1 / A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] * inv
            if f:
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return det


def mat_inverse(M):
    """Exact inverse over Fractions; raises on singular input."""
    n = len(M)
    A = [[Fraction(x) for x in row] + [Fraction(1 if i == j else 0)
                                       for j in range(n)]
         for i, row in enumerate(M)]
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c]), None)
        if piv is None:
            raise CheckFailed("matrix is singular")
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return tuple(tuple(row[n:]) for row in A)


def mat_inverse_integer(M):
    inv = mat_inverse(M)
    out = []
    for row in inv:
        r = []
        for x in row:
            if x.denominator != 1:
                raise CheckFailed("inverse is not an integer matrix")
            r.append(int(x))
        out.append(tuple(r))
    return tuple(out)


# -- c-vectors -----------------------------------------------------------------

def c_matrix_tropical(ed, path):
    """Defining route: exponent vectors of the tropical Y-dynamics started at
    the coordinate generators.  Column j is the j-th vector."""
    n = ed.n
    tv = y_vars(n)
    p = tuple(TropMonomial.variable(tv, v) for v in tv)
    B = ed.B
    for k in path:
        p = mutate_coeff_tuple(p, B, k)
        B = mutate_matrix(B, k)
    return tuple(tuple(p[j].exps[i] for j in range(n)) for i in range(n))


def c_matrix_step(C, B, k):
    """One step of the column recurrence: negate column k, add the
    sign-selected multiple of it to the others per row k of the matrix."""
    n = len(C)
    new = [list(row) for row in C]
    for i in range(n):
        new[i][k] = -C[i][k]
    for j in range(n):
        if j == k:
            continue
        b = B[k][j]
        if b:
            s = sign(b)
            for i in range(n):
                new[i][j] = C[i][j] + s * max(b * C[i][k], 0)
    return tuple(tuple(row) for row in new)


def c_matrix(ed, path):
    """Integer recurrence route: start from the identity; a step in direction
    k negates column k and adds the sign-selected multiple of it to the
    others, with the multiplier read from row k of the current matrix."""
    C = mat_identity(ed.n)
    B = ed.B
    for k in path:
        C = c_matrix_step(C, B, k)
        B = mutate_matrix(B, k)
    return C


def check_sign_coherence(C):
    """Each column must be nonzero and either all nonnegative or all
    nonpositive."""
    for j in range(len(C[0])):
        col = [row[j] for row in C]
        if not any(col):
            return False
        if not (all(x >= 0 for x in col) or all(x <= 0 for x in col)):
            return False
    return True


# -- g-vectors -----------------------------------------------------------------

def g_matrix(ed, path):
    """Duality route: the transpose of the g-matrix is the inverse of the
    c-matrix of the negated-transpose pattern along the same path."""
    C = c_matrix(langlands_dual(ed), path)
    return mat_transpose(mat_inverse_integer(C))


def principal_grading(n, B0):
    """Multi-degrees making the principal-coefficient cluster dynamics
    homogeneous: coordinate i gets the i-th unit vector, coefficient j the
    negated j-th column of the initial matrix."""
    degs = {}
    for i in range(n):
        e = [0] * n
        e[i] = 1
        degs[f"x{i + 1}"] = tuple(e)
    for j in range(n):
        degs[f"p{j + 1}"] = tuple(-B0[i][j] for i in range(n))
    return Grading(degs)


def g_matrix_degrees(ed, path):
    """Degree route: multi-degrees of the principal-coefficient cluster
    variables; column j is the degree vector of the j-th variable."""
    seed = ClusterSeedCoeff.initial_principal(ed)
    grading = principal_grading(ed.n, ed.B)
    for k in path:
        seed = mutate_cluster_seed(seed, k)
    cols = [degree_of(x, grading) for x in seed.x]
    return tuple(tuple(cols[j][i] for j in range(ed.n)) for i in range(ed.n))


# -- F-polynomials ---------------------------------------------------------------

def f_polynomials(ed, path):
    """Principal-coefficient cluster variables with all coordinates set to 1:
    honest polynomials in the coefficient variables with constant term 1."""
    n = ed.n
    seed = ClusterSeedCoeff.initial_principal(ed)
    for k in path:
        seed = mutate_cluster_seed(seed, k)
    pv = p_vars(n)
    kill = {f"x{i + 1}": (0,) * n for i in range(n)}
    out = []
    for j in range(n):
        num, den = seed.x[j].expand()
        f = poly_exact_div(num.substitute_monomials(kill, pv),
                           den.substitute_monomials(kill, pv))
        if f.constant_coef() != 1:
            raise CheckFailed(f"constant term of F_{j + 1} is not 1: {f.to_text()}")
        if any(x < 0 for e in f.terms for x in e):
            raise CheckFailed(f"F_{j + 1} has a negative exponent")
        out.append(f)
    return out


def trop_eval_poly(poly, args):
    """Tropical evaluation of a positive polynomial: semifield sum over terms
    of the monomial products of the arguments."""
    parts = []
    for e in poly.terms:
        m = TropMonomial.one(args[0].vars)
        for a, x in zip(args, e):
            if x:
                m = m.mul(a.power(x))
        parts.append(m)
    return trop_sum(parts)


# -- separation of additions -----------------------------------------------------

def separation_check(ed, p0, path):
    """Exact cross-check of the Y-dynamics with coefficients against the
    coefficient-free dynamics plus invariants, along one path.

    Three identities are verified at the endpoint, for every direction j:

    1. the coefficient-free Y-variable evaluated at (p_i y_i), divided by the
       running coefficient, equals the Y-variable with coefficients;
    2. the product formula: tropically-evaluated F-powers times honestly
       evaluated F-powers times the c-vector monomial equals the Y-variable
       with coefficients;
    3. the running coefficient equals the c-vector monomial in the initial
       coefficients times the tropically evaluated F-powers.

    Raises CheckFailed with context on any mismatch.
    """
    n = ed.n
    pv = p0[0].vars
    vars = y_vars(n) + tuple(pv)

    with_coeff = YSeedCoeff.initial(ed, p0)
    free = YSeedCoeff.initial_trivial(ed)
    for k in path:
        with_coeff = mutate_y_seed(with_coeff, k)
        free = mutate_y_seed(free, k)

    Bv = with_coeff.exchange.B
    C = c_matrix(ed, path)
    F = f_polynomials(ed, path)

    # substitution "i-th slot -> p_i y_i", keyed for the coefficient-free
    # Y-variables (y-names) and for the F-polynomial slots (p-names)
    shifted_y = {}
    shifted_u = {}
    for i in range(n):
        e = [0] * len(vars)
        e[i] = 1
        for v, x in zip(pv, p0[i].exps):
            e[vars.index(v)] += x
        shifted_y[f"y{i + 1}"] = tuple(e)
        shifted_u[f"p{i + 1}"] = tuple(e)

    p_run = tuple(p0)
    B = ed.B
    for k in path:
        p_run = mutate_coeff_tuple(p_run, B, k)
        B = mutate_matrix(B, k)

    for j in range(n):
        lhs = with_coeff.y[j]

        # identity 1: shifted coefficient-free variable over running coefficient
        rhs1 = free.y[j].substitute_monomials(shifted_y, vars).mul(
            p_run[j].to_posrat(vars).inv())
        if not rat_equal(lhs, rhs1):
            raise CheckFailed(f"separation (shift form) fails at j={j + 1}")

        # identity 2: F-power product times c-vector monomial
        rhs2 = PosRatFunc.one(vars)
        for i in range(n):
            b = Bv[i][j]
            if not b:
                continue
            trop_part = trop_eval_poly(F[i], list(p0)).power(-b)
            rhs2 = rhs2.mul(trop_part.to_posrat(vars))
            honest = F[i].substitute_monomials(shifted_u, vars)
            rhs2 = rhs2.mul(PosRatFunc.from_poly(honest, b))
        e = [0] * len(vars)
        for i in range(n):
            e[i] = C[i][j]
        rhs2 = rhs2.mul(PosRatFunc.monomial(vars, e))
        if not rat_equal(lhs, rhs2):
            raise CheckFailed(f"separation (F-product form) fails at j={j + 1}")

        # identity 3: the running coefficient itself
        rhs3 = TropMonomial.one(pv)
        for i in range(n):
            rhs3 = rhs3.mul(p0[i].power(C[i][j]))
        for i in range(n):
            b = Bv[i][j]
            if b:
                rhs3 = rhs3.mul(trop_eval_poly(F[i], list(p0)).power(b))
        if p_run[j] != rhs3:
            raise CheckFailed(f"separation (coefficient form) fails at j={j + 1}")
    return True


# -- periodicity --------------------------------------------------------------

def detect_period(B0, vals0, B1, vals1, equal=rat_equal, p0=None, p1=None):
    """Relabeling that carries state 1 back to state 0, or None.

    Searches all permutations s with B1[i][j] == B0[s(i)][s(j)],
    vals1[j] == vals0[s(j)], and optionally the coefficient tuples matching
    the same way.
    """
    n = len(vals0)
    for s in permutations(range(n)):
        if any(B1[i][j] != B0[s[i]][s[j]] for i in range(n) for j in range(n)):
            continue
        if p0 is not None and any(p1[j] != p0[s[j]] for j in range(n)):
            continue
        if all(equal(vals1[j], vals0[s[j]]) for j in range(n)):
            return s
    return None


def y_pattern_period(ed, p0, path):
    """Permutation identifying the endpoint of the path with the start, for
    the Y-dynamics with the given coefficients; None when the endpoint is a
    genuinely new seed."""
    seed0 = YSeedCoeff.initial(ed, p0)
    s = seed0
    for k in path:
        s = mutate_y_seed(s, k)
    return detect_period(seed0.exchange.B, seed0.y, s.exchange.B, s.y,
                         p0=seed0.p, p1=s.p)


# -- reporting -----------------------------------------------------------------

def invariant_report(ed, path):
    """Everything about one path, as plain data for serialization."""
    C = c_matrix(ed, path)
    G = g_matrix(ed, path)
    F = f_polynomials(ed, path)
    return {
        "path": [k + 1 for k in path],
        "C": [list(r) for r in C],
        "G": [list(r) for r in G],
        "F": [f.to_text() for f in F],
        "sign_coherent": check_sign_coherence(C),
        "det_C": int(mat_det(C)),
        "det_G": int(mat_det(G)),
    }


def table_rows(ed, path):
    """One invariant report per vertex along a path (prefix by prefix)."""
    return [invariant_report(ed, tuple(path[:length]))
            for length in range(len(path) + 1)]


def rows_to_json(rows):
    return json.dumps(rows, indent=2, sort_keys=True)


def rows_to_csv(rows):
    """Flat table: matrices as semicolon-joined space-separated rows, one
    column per accumulated exchange polynomial."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    n = len(rows[0]["C"]) if rows else 0

    def flat(M):
        return ";".join(" ".join(str(x) for x in row) for row in M)

    writer.writerow(["vertex", "path", "C", "G"]
                    + [f"F{j + 1}" for j in range(n)])
    for v, row in enumerate(rows):
        writer.writerow([v, ",".join(str(k) for k in row["path"]),
                         flat(row["C"]), flat(row["G"])] + list(row["F"]))
    return out.getvalue()
