"""Flat one-parameter families glued over the cone atlas.

Every maximal cone of the atlas carries a coordinate patch with coordinates
X1..Xn over the base ring Z[t1..tn]; adjacent patches are glued along walls
by subtraction-free binomial transition maps whose t-exponents are the
patch's own tropical coefficient vectors.  The checks in this module verify,
in exact arithmetic, that the glued object is consistent (cocycle condition,
glue-ring membership), that its fibres over nonzero base points are mutually
isomorphic, and that the fibre over zero degenerates onto the toric variety
of the atlas fan, stratum by stratum.
"""

from fractions import Fraction

from .exact_algebra import (
    InexactDivision,
    LaurentPoly,
    LimitError,
    PosRatFunc,
    Grading,
    degree_of,
    limit_t_zero,
    poly_exact_div,
    prf_add,
    rat_equal,
    substitute_values,
)
from .semifields import TropMonomial
from .seeds import mutate_coeff_tuple, mutate_matrix, sign, t_vars
from .invariants import (CheckFailed, c_matrix, c_matrix_step,
                         mat_inverse_integer, mat_transpose)
from .gfan import enumerate_gfan, star


def family_vars(n, r=None):
    """Patch coordinate names X1..Xn followed by base parameters t1..tr."""
    r = n if r is None else r
    return tuple(f"X{i + 1}" for i in range(n)), t_vars(r)


def family_wall_images(B, k, c_k, xnames, tnames):
    """Pullbacks of the far patch's coordinates across the wall in direction
    k, expressed in the near patch.

    The far wall coordinate pulls back to the inverse of the near one; every
    other coordinate picks up a subtraction-free binomial power whose
    t-exponents are the positive and negative parts of the near patch's k-th
    coefficient vector, sign-matched against the exchange entry.
    """
    vars = xnames + tnames
    n = len(xnames)
    images = []
    for i in range(n):
        if i == k:
            exps = [0] * len(vars)
            exps[k] = -1
            images.append(PosRatFunc.monomial(vars, exps))
            continue
        xi = PosRatFunc.variable(vars, xnames[i])
        e = B[k][i]
        if e == 0:
            images.append(xi)
            continue
        s = sign(e)
        first = [0] * n + [max(s * c, 0) for c in c_k]
        second = [0] * n + [max(-s * c, 0) for c in c_k]
        second[k] = -s
        base = prf_add(PosRatFunc.monomial(vars, first),
                       PosRatFunc.monomial(vars, second))
        images.append(xi.mul(base.power(-e)))
    return tuple(images)


def wall_binomial(vars, k, c_k, n):
    """The canonical wall binomial t^[-c]+ + t^[c]+ * X_k (content one, no
    negative exponents); both sign-variants of the transition factor are
    unit multiples of it."""
    lo = tuple([0] * n + [max(-c, 0) for c in c_k])
    hi = [0] * n + [max(c, 0) for c in c_k]
    hi[k] = 1
    return LaurentPoly(vars, {lo: 1, tuple(hi): 1})


class TransitionMap:
    """Coordinate images across one wall: entry i is the pullback of the far
    patch's i-th coordinate, written in the near patch's coordinates."""

    __slots__ = ("src", "dst", "k", "images", "vars")

    def __init__(self, src, dst, k, images):
        self.src = src
        self.dst = dst
        self.k = k
        self.images = tuple(images)
        self.vars = self.images[0].vars

    def subst(self, xnames):
        return dict(zip(xnames, self.images))


class FamilyPatch:
    """One patch of the glued family: its cone, its coefficient matrix, and
    its coordinates as rational functions."""

    __slots__ = ("index", "cone", "C", "coordinates")

    def __init__(self, index, cone, C, coordinates):
        self.index = index
        self.cone = cone
        self.C = C
        self.coordinates = coordinates


class Family:
    """The glued family over a complete cone atlas.

    Caches per-cone coefficient matrices, wall transitions, and pullbacks of
    patch coordinates to the initial patch.
    """

    def __init__(self, ed, atlas=None, depth_cap=64):
        if ed.m:
            raise ValueError("the glued family needs fully mutable data")
        self.ed = ed
        self.atlas = atlas if atlas is not None else enumerate_gfan(
            ed, depth_cap=depth_cap)
        self.xnames, self.tnames = family_vars(ed.n)
        self.vars = self.xnames + self.tnames
        self._by_path = {c.path: c.index for c in self.atlas.cones}
        self._c = {}
        self._trans = {}
        self._pull = {}

    @property
    def n(self):
        return self.ed.n

    def c_matrix_at(self, cone_index):
        if cone_index not in self._c:
            path = self.atlas.cones[cone_index].path
            self._c[cone_index] = c_matrix(self.ed, path)
        return self._c[cone_index]

    def c_column(self, cone_index, k):
        C = self.c_matrix_at(cone_index)
        return tuple(C[i][k] for i in range(len(C)))

    def coordinates(self):
        return tuple(PosRatFunc.variable(self.vars, v) for v in self.xnames)

    def patch(self, cone_index):
        return FamilyPatch(cone_index, self.atlas.cones[cone_index],
                           self.c_matrix_at(cone_index), self.coordinates())

    def transition(self, cone_index, k, coefficient_free=False):
        key = (cone_index, k, coefficient_free)
        if key not in self._trans:
            rec = self.atlas.cones[cone_index]
            dst = self.atlas.adjacency[(cone_index, k)]
            c_k = ((0,) * self.n if coefficient_free
                   else self.c_column(cone_index, k))
            images = family_wall_images(rec.B, k, c_k, self.xnames,
                                        self.tnames)
            self._trans[key] = TransitionMap(cone_index, dst, k, images)
        return self._trans[key]

    def pullback_to_initial(self, cone_index):
        """Coordinates of the patch expressed in the initial patch, composed
        along the cone's representative path."""
        if cone_index not in self._pull:
            rec = self.atlas.cones[cone_index]
            if not rec.path:
                self._pull[cone_index] = self.coordinates()
            else:
                parent = self._by_path[rec.path[:-1]]
                base = self.pullback_to_initial(parent)
                T = self.transition(parent, rec.path[-1])
                if T.dst != cone_index:
                    raise CheckFailed("adjacency disagrees with stored path")
                subst = dict(zip(self.xnames, base))
                self._pull[cone_index] = tuple(
                    img.evaluate(subst) for img in T.images)
        return self._pull[cone_index]

    def standard_grading(self):
        """Coordinates graded by unit vectors, base parameters by their
        negatives."""
        n = self.n
        degs = {self.xnames[i]: tuple(1 if j == i else 0 for j in range(n))
                for i in range(n)}
        degs.update({self.tnames[i]: tuple(-1 if j == i else 0
                                           for j in range(n))
                     for i in range(n)})
        return Grading(degs)


# -- special-fibre checks ---------------------------------------------------------


def degree_check(fam, cone_indices=None):
    """Every pullback to the initial patch is homogeneous, of degree equal to
    the corresponding coefficient vector of its cone."""
    grading = fam.standard_grading()
    idxs = (range(len(fam.atlas.cones)) if cone_indices is None
            else cone_indices)
    for idx in idxs:
        C = fam.c_matrix_at(idx)
        pull = fam.pullback_to_initial(idx)
        for i, f in enumerate(pull):
            want = tuple(C[r][i] for r in range(fam.n))
            got = degree_of(f, grading)
            if got != want:
                raise CheckFailed(
                    f"cone {idx} coordinate {i + 1}: degree {got}, "
                    f"expected {want}")
    return True


def limit_check(fam, cone_indices=None):
    """At t = 0 each pullback becomes the pure coordinate monomial whose
    exponent vector is the coefficient vector of its cone."""
    n = fam.n
    idxs = (range(len(fam.atlas.cones)) if cone_indices is None
            else cone_indices)
    for idx in idxs:
        C = fam.c_matrix_at(idx)
        pull = fam.pullback_to_initial(idx)
        for i, f in enumerate(pull):
            want = tuple(C[r][i] for r in range(n))
            try:
                lim = limit_t_zero(f, fam.tnames)
            except LimitError as exc:
                raise CheckFailed(
                    f"cone {idx} coordinate {i + 1}: no monomial limit "
                    f"({exc})")
            (exps, coef), = lim.terms.items()
            if coef != 1 or any(exps[n:]) or exps[:n] != want:
                raise CheckFailed(
                    f"cone {idx} coordinate {i + 1}: limit "
                    f"{lim.to_text()}, expected exponents {want}")
    return True


def central_fiber_toric_check(fam):
    """At t = 0 every wall transition collapses to a monomial map: the wall
    coordinate inverts, the others pick up the wall coordinate to the
    absolute exchange entry exactly when the exchange entry matches the sign
    of the wall's coefficient vector.  The resulting exponent vectors must
    also express the far cone's coefficient vectors integrally in the near
    cone's."""
    n = fam.n
    for (src, k), dst in sorted(fam.atlas.adjacency.items()):
        T = fam.transition(src, k)
        B = fam.atlas.cones[src].B
        Csrc = fam.c_matrix_at(src)
        Cfar = c_matrix_step(Csrc, B, k)
        ck = fam.c_column(src, k)
        cs = sign(next(x for x in ck if x))
        for i in range(n):
            try:
                lim = limit_t_zero(T.images[i], fam.tnames)
            except LimitError as exc:
                raise CheckFailed(
                    f"wall ({src},{k}): coordinate {i + 1} has no monomial "
                    f"limit ({exc})")
            (exps, coef), = lim.terms.items()
            if coef != 1 or any(exps[n:]):
                raise CheckFailed(
                    f"wall ({src},{k}): coordinate {i + 1} limit not a "
                    f"coordinate monomial: {lim.to_text()}")
            a = list(exps[:n])
            want = [0] * n
            if i == k:
                want[k] = -1
            else:
                want[i] = 1
                if B[k][i] and sign(B[k][i]) == cs:
                    want[k] = abs(B[k][i])
            if a != want:
                raise CheckFailed(
                    f"wall ({src},{k}): coordinate {i + 1} degenerates to "
                    f"{tuple(a)}, expected {tuple(want)}")
            for r in range(n):
                if Cfar[r][i] != sum(Csrc[r][j] * a[j] for j in range(n)):
                    raise CheckFailed(
                        f"wall ({src},{k}): exponents of coordinate {i + 1} "
                        f"do not relate the coefficient vectors integrally")
    return True


# -- consistency of the gluing ----------------------------------------------------


def cocycle_check(fam, max_len=8, base=0):
    """Composite transitions around closed walks act as coordinate
    permutations matching the walk's coefficient matrix.

    Checks the immediate there-and-back composite at every wall, then all
    non-backtracking closed walks up to the given length starting from the
    base cone.
    """
    n = fam.n
    coords = fam.coordinates()
    for (src, k), dst in sorted(fam.atlas.adjacency.items()):
        T = fam.transition(src, k)
        Bfar = mutate_matrix(fam.atlas.cones[src].B, k)
        Cfar = c_matrix_step(fam.c_matrix_at(src),
                             fam.atlas.cones[src].B, k)
        back = family_wall_images(
            Bfar, k, tuple(Cfar[r][k] for r in range(n)),
            fam.xnames, fam.tnames)
        subst = T.subst(fam.xnames)
        for i in range(n):
            comp = back[i].evaluate(subst)
            if not rat_equal(comp, coords[i]):
                raise CheckFailed(
                    f"wall ({src},{k}): there-and-back composite moves "
                    f"coordinate {i + 1}")

    C0 = fam.c_matrix_at(base)
    B0 = fam.atlas.cones[base].B
    cols0 = {tuple(C0[r][j] for r in range(n)): j for j in range(n)}

    def verify_closure(images, Cw):
        perm = []
        for i in range(n):
            col = tuple(Cw[r][i] for r in range(n))
            if col not in cols0:
                raise CheckFailed("closed walk permutes coefficient vectors "
                                  "outside the base cone's own")
            perm.append(cols0[col])
        if sorted(perm) != list(range(n)):
            raise CheckFailed("closed walk does not permute the coefficient "
                              "vectors")
        for i in range(n):
            if not rat_equal(images[i], coords[perm[i]]):
                raise CheckFailed(
                    f"closed walk composite sends coordinate {i + 1} to "
                    f"{images[i].to_text()}, expected a coordinate "
                    f"permutation")

    base_key = fam.atlas.cones[base].key()
    Cd0 = fam.atlas.cones[base].Cd
    stack = [(None, tuple(coords), C0, B0, Cd0, 0)]
    while stack:
        last, images, Cw, Bw, Cdw, length = stack.pop()
        if length == max_len:
            continue
        subst = dict(zip(fam.xnames, images))
        for k in fam.atlas.allowed:
            if k == last:
                continue
            step = family_wall_images(
                Bw, k, tuple(Cw[r][k] for r in range(n)),
                fam.xnames, fam.tnames)
            nimages = tuple(img.evaluate(subst) for img in step)
            nC = c_matrix_step(Cw, Bw, k)
            nCd = c_matrix_step(Cdw, _neg_transpose(Bw), k)
            nB = mutate_matrix(Bw, k)
            G = mat_transpose(mat_inverse_integer(nCd))
            gens = frozenset(tuple(G[r][j] for r in range(n))
                             for j in range(n))
            if gens == base_key:
                verify_closure(nimages, nC)
            stack.append((k, nimages, nC, nB, nCd, length + 1))
    return True


def _neg_transpose(B):
    n = len(B)
    return tuple(tuple(-B[j][i] for j in range(n)) for i in range(n))


def _in_glue_ring(f, k, W, n):
    """Membership in the near patch's wall ring: Laurent only in the wall
    coordinate, polynomial in the others and in t, localized at the wall
    binomial.  Certified by dividing the binomial out of the denominator."""
    num, den = f.expand()
    while True:
        try:
            den = poly_exact_div(den, W)
        except InexactDivision:
            break
    if not den.is_monomial():
        return False
    (dexps, _), = den.terms.items()
    if any(x for j, x in enumerate(dexps) if j != k):
        return False
    mins = num.min_exponents()
    return all(x >= 0 for j, x in enumerate(mins) if j != k)


def glue_ring_check(fam, src, k, coefficient_free=False):
    """Both transition maps across a wall land inside the opposite wall
    rings, the two sides carry the same wall data, and the two composites
    are the identity."""
    n = fam.n
    T = fam.transition(src, k, coefficient_free)
    Bs = fam.atlas.cones[src].B
    Bfar = mutate_matrix(Bs, k)
    if coefficient_free:
        ck = ck_far = (0,) * n
    else:
        ck = fam.c_column(src, k)
        Cfar = c_matrix_step(fam.c_matrix_at(src), Bs, k)
        ck_far = tuple(Cfar[r][k] for r in range(n))
    R = family_wall_images(Bfar, k, ck_far, fam.xnames, fam.tnames)
    for i in range(n):
        if i == k or not Bs[k][i]:
            continue
        near = tuple(sign(Bs[k][i]) * c for c in ck)
        far = tuple(sign(Bfar[k][i]) * c for c in ck_far)
        if near != far:
            raise CheckFailed(
                f"wall ({src},{k}): the two sides disagree on the wall "
                f"data at coordinate {i + 1}")
    W_near = wall_binomial(fam.vars, k, ck, n)
    W_far = wall_binomial(fam.vars, k, ck_far, n)
    for i in range(n):
        if not _in_glue_ring(T.images[i], k, W_near, n):
            raise CheckFailed(
                f"wall ({src},{k}): image of coordinate {i + 1} leaves the "
                f"near wall ring")
        if not _in_glue_ring(R[i], k, W_far, n):
            raise CheckFailed(
                f"wall ({src},{k}): reverse image of coordinate {i + 1} "
                f"leaves the far wall ring")
    exps = [0] * len(fam.vars)
    exps[k] = -1
    inv_k = PosRatFunc.monomial(fam.vars, exps)
    if T.images[k] != inv_k or R[k] != inv_k:
        raise CheckFailed(
            f"wall ({src},{k}): wall coordinate does not invert")
    coords = fam.coordinates()
    sub_T = T.subst(fam.xnames)
    sub_R = dict(zip(fam.xnames, R))
    for i in range(n):
        if not rat_equal(R[i].evaluate(sub_T), coords[i]):
            raise CheckFailed(
                f"wall ({src},{k}): composite is not the identity")
        if not rat_equal(T.images[i].evaluate(sub_R), coords[i]):
            raise CheckFailed(
                f"wall ({src},{k}): reverse composite is not the identity")
    return True


def glue_ring_check_all(fam, coefficient_free=False):
    for (src, k), dst in sorted(fam.atlas.adjacency.items()):
        if src < dst:
            glue_ring_check(fam, src, k, coefficient_free)
    return True


# -- fibres over nonzero base points ----------------------------------------------


def specialize_fiber(images, tnames, u):
    """Evaluate the base parameters at a rational point, keeping the
    coordinates symbolic; returns exact rational pairs."""
    assign = dict(zip(tnames, u))
    out = []
    for f in images:
        num, den = f.expand()
        out.append(substitute_values(num, assign)
                   .mul(substitute_values(den, assign).inv()))
    return tuple(out)


def fiber_iso_check(fam, u, u2, walls=None):
    """The coordinate rescalings by u2^c / u^c intertwine the wall
    transitions of the fibres over u and u2."""
    n = fam.n
    u = tuple(Fraction(x) for x in u)
    u2 = tuple(Fraction(x) for x in u2)
    if any(x == 0 for x in u) or any(x == 0 for x in u2):
        raise ValueError("fibre comparison needs nonzero base points")

    def ratio(col):
        out = Fraction(1)
        for l in range(n):
            out *= Fraction(u2[l]) ** col[l] / Fraction(u[l]) ** col[l]
        return out

    items = (sorted(fam.atlas.adjacency) if walls is None else walls)
    assign_u = dict(zip(fam.tnames, u))
    assign_u2 = dict(zip(fam.tnames, u2))
    for src, k in items:
        T = fam.transition(src, k)
        Csrc = fam.c_matrix_at(src)
        Cfar = c_matrix_step(Csrc, fam.atlas.cones[src].B, k)
        scales = {fam.xnames[j]: ratio(tuple(Csrc[r][j] for r in range(n)))
                  for j in range(n)}
        for i in range(n):
            lam2 = ratio(tuple(Cfar[r][i] for r in range(n)))
            num, den = T.images[i].expand()
            lhs = (substitute_values(num, assign_u, scales)
                   .mul(substitute_values(den, assign_u, scales).inv()))
            rhs = (substitute_values(num, assign_u2)
                   .mul(substitute_values(den, assign_u2).inv())
                   .scale(lam2))
            if not lhs.equals(rhs):
                raise CheckFailed(
                    f"wall ({src},{k}): fibre rescaling does not intertwine "
                    f"coordinate {i + 1}")
    return True


# -- strata of the special fibre --------------------------------------------------


def _project_poly(poly, keep):
    """Restrict a polynomial to a subset of its variables; the others must
    not occur."""
    idx = [poly.vars.index(v) for v in keep]
    drop = [j for j in range(len(poly.vars)) if j not in idx]
    terms = {}
    for e, c in poly.terms.items():
        if any(e[j] for j in drop):
            raise CheckFailed("polynomial involves a variable that should "
                              "not occur on the stratum")
        terms[tuple(e[j] for j in idx)] = c
    return LaurentPoly(keep, terms)


def strata_consistency_check(fam, tau_rays):
    """The family restricted to a face's stratum is itself a glued family.

    For every wall between cones containing the face: coordinates along the
    face divide their own transition images; transverse images do not
    involve them; the transverse transition equals the one produced by the
    restricted exchange data with the ambient coefficient vectors as
    geometric coefficients; and the t = 0 exponents express the far
    coefficient vectors integrally in the near transverse ones.
    """
    st = star(fam.atlas, tau_rays)
    n = fam.n
    tau = set(tuple(r) for r in tau_rays)
    trans_pos = list(st.dropped)
    face_pos = list(st.kept)
    node_count = sum(1 for c in fam.atlas.cones
                     if tau <= set(c.generators()))
    star_x = tuple(fam.xnames[i] for i in trans_pos)
    star_vars = star_x + fam.tnames
    base_gens = st.base.generators()
    face_rays = [base_gens[j] for j in face_pos]

    Cbase = fam.c_matrix_at(st.base.index)
    root = (st.base.B, Cbase, st.base.Cd, st.restricted.B,
            tuple(TropMonomial(fam.tnames,
                               tuple(Cbase[r][i] for r in range(n)))
                  for i in trans_pos))
    seen = {st.base.key()}
    frontier = [root]
    while frontier:
        nxt = []
        for Bw, Cw, Cdw, Bb, pb in frontier:
            for l, k in enumerate(trans_pos):
                for ll, i in enumerate(trans_pos):
                    if Bb[l][ll] != Bw[k][i]:
                        raise CheckFailed(
                            "restricted exchange matrix drifts from the "
                            "ambient one on the stratum")
                if pb[l].exps != tuple(Cw[r][k] for r in range(n)):
                    raise CheckFailed(
                        "restricted coefficients drift from the ambient "
                        "coefficient vectors")
            for l, k in enumerate(trans_pos):
                ck = tuple(Cw[r][k] for r in range(n))
                T = family_wall_images(Bw, k, ck, fam.xnames, fam.tnames)
                Cfar = c_matrix_step(Cw, Bw, k)
                for j in face_pos:
                    num, den = T[j].expand()
                    dmin = den.min_exponents()
                    dmax = [max(e[r] for e in den.terms)
                            for r in range(len(fam.vars))]
                    if any(dmin[jj] or dmax[jj] for jj in face_pos):
                        raise CheckFailed(
                            f"stratum wall in direction {k}: face "
                            f"coordinate {j + 1} image has a face variable "
                            f"in its denominator")
                    if num.min_exponents()[j] < 1:
                        raise CheckFailed(
                            f"stratum wall in direction {k}: face "
                            f"coordinate {j + 1} does not divide its own "
                            f"image")
                star_images = family_wall_images(Bb, l, pb[l].exps, star_x,
                                                 fam.tnames)
                for ll, i in enumerate(trans_pos):
                    num, den = T[i].expand()
                    try:
                        num_p = _project_poly(num, star_vars)
                        den_p = _project_poly(den, star_vars)
                    except CheckFailed:
                        raise CheckFailed(
                            f"stratum wall in direction {k}: transverse "
                            f"coordinate {i + 1} image involves a face "
                            f"variable")
                    ns, ds = star_images[ll].expand()
                    if num_p * ds != ns * den_p:
                        raise CheckFailed(
                            f"stratum wall in direction {k}: ambient "
                            f"transition disagrees with the restricted "
                            f"family at coordinate {i + 1}")
                    lim = limit_t_zero(T[i], fam.tnames)
                    (exps, coef), = lim.terms.items()
                    if coef != 1 or any(exps[n:]):
                        raise CheckFailed(
                            f"stratum wall in direction {k}: transverse "
                            f"coordinate {i + 1} has no monomial limit on "
                            f"the stratum")
                    for r in range(n):
                        if Cfar[r][i] != sum(Cw[r][j] * exps[j]
                                             for j in trans_pos):
                            raise CheckFailed(
                                f"stratum wall in direction {k}: stratum "
                                f"exponents of coordinate {i + 1} do not "
                                f"express the far coefficient vector in "
                                f"the transverse near ones")
                nCd = c_matrix_step(Cdw, _neg_transpose(Bw), k)
                G = mat_transpose(mat_inverse_integer(nCd))
                gens = [tuple(G[r][j] for r in range(n)) for j in range(n)]
                for pos, ray in zip(face_pos, face_rays):
                    if gens[pos] != ray:
                        raise CheckFailed(
                            "transverse mutation moved a face generator")
                key = frozenset(gens)
                if fam.atlas.cone_by_key(key) is None:
                    raise CheckFailed(
                        "transverse mutation left the enumerated atlas")
                if key not in seen:
                    seen.add(key)
                    nxt.append((mutate_matrix(Bw, k), Cfar, nCd,
                                mutate_matrix(Bb, l),
                                mutate_coeff_tuple(pb, Bb, l)))
        frontier = nxt
    if len(seen) != node_count:
        raise CheckFailed("stratum walk did not reach every cone of the "
                          "star")
    return st
