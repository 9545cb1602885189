"""Enumeration of the fan of g-vector cones, exact fan-axiom checking,
stars of faces, and the rank-2 polytope attached to a complete fan.

Cones are simplicial, generated by the columns of the running g-matrix; the
inward facet normals are the columns of the c-matrix of the negated-transpose
pattern along the same path, so all membership tests are integer arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .invariants import (
    CheckFailed,
    c_matrix_step,
    mat_det,
    mat_identity,
    mat_inverse_integer,
    mat_transpose,
)
from .seeds import ExchangeData, langlands_dual, mutate_matrix


class FanDepthExceeded(Exception):
    """BFS hit the depth cap before closing; the fan may be infinite."""


def primitive(v):
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    if g == 0:
        return None
    return tuple(x // g for x in v)


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def cross3(a, b):
    return (a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0])


class ConeRecord:
    """One maximal cone: generator matrix, facet-normal matrix, the exchange
    matrix and a representative path at its seed."""

    __slots__ = ("index", "path", "B", "G", "Cd")

    def __init__(self, index, path, B, G, Cd):
        self.index = index
        self.path = tuple(path)
        self.B = B
        self.G = G
        self.Cd = Cd

    def generators(self):
        n = len(self.G)
        return tuple(tuple(self.G[i][j] for i in range(n)) for j in range(n))

    def normals(self):
        n = len(self.Cd)
        return tuple(tuple(self.Cd[i][j] for i in range(n)) for j in range(n))

    def key(self):
        return frozenset(self.generators())

    def contains(self, x):
        return all(dot(nrm, x) >= 0 for nrm in self.normals())

    def support_indices(self, points):
        """Generator positions carrying any of the points: j such that some
        point has a positive j-th barycentric coordinate."""
        idx = set()
        for p in points:
            for j, nrm in enumerate(self.normals()):
                if dot(nrm, p) > 0:
                    idx.add(j)
        return idx

    def minimal_face(self, points):
        """Generators of the smallest face containing the points."""
        gens = self.generators()
        return frozenset(gens[j] for j in self.support_indices(points))


class GFanAtlas:
    """All maximal g-cones reachable from the initial seed (optionally only
    through a subset of directions), with wall adjacency.  ``complete`` is
    false when enumeration was cut off at a depth cap."""

    def __init__(self, ed, cones, adjacency, allowed, complete=True):
        self.ed = ed
        self.cones = cones
        self.adjacency = adjacency
        self.allowed = tuple(allowed)
        self.complete = complete

    @property
    def rays(self):
        out = set()
        for c in self.cones:
            out.update(c.generators())
        return tuple(sorted(out))

    def cone_by_key(self, key):
        for c in self.cones:
            if c.key() == key:
                return c
        return None


def enumerate_gfan(ed, depth_cap=64, allowed=None, partial=False):
    """Breadth-first walk of the seed pattern, one node per distinct set of
    g-vector columns.  When new cones still appear at the cap, raises
    FanDepthExceeded, or with ``partial`` returns the truncated atlas marked
    incomplete."""
    n = ed.n
    allowed = tuple(range(n)) if allowed is None else tuple(allowed)
    dual0 = langlands_dual(ed)
    I = mat_identity(n)
    start = (ed.B, dual0.B, I)
    cones = []
    adjacency = {}
    seen = {}

    def g_of(Cd):
        return mat_transpose(mat_inverse_integer(Cd))

    rec = ConeRecord(0, [], ed.B, I, I)
    cones.append(rec)
    seen[rec.key()] = 0
    frontier = [(start, [], 0)]
    depth = 0
    complete = True
    while frontier:
        if depth > depth_cap:
            if partial:
                complete = False
                break
            raise FanDepthExceeded(
                f"new cones still appearing at depth {depth_cap}")
        nxt = []
        for (B, Bd, Cd), path, src in frontier:
            for k in allowed:
                B2 = mutate_matrix(B, k)
                Cd2 = c_matrix_step(Cd, Bd, k)
                Bd2 = mutate_matrix(Bd, k)
                G2 = g_of(Cd2)
                key = _gkey(G2)
                if key in seen:
                    adjacency[(src, k)] = seen[key]
                    continue
                idx = len(cones)
                rec = ConeRecord(idx, path + [k], B2, G2, Cd2)
                cones.append(rec)
                seen[key] = idx
                adjacency[(src, k)] = idx
                nxt.append(((B2, Bd2, Cd2), path + [k], idx))
        frontier = nxt
        depth += 1
    return GFanAtlas(ExchangeData(ed.B, ed.n, ed.d), cones, adjacency, allowed,
                     complete=complete)


def _gkey(G):
    n = len(G)
    return frozenset(tuple(G[i][j] for i in range(n)) for j in range(n))


# -- fan axioms ----------------------------------------------------------------

def _intersection_candidates(a, b):
    """Primitive candidate rays of the intersection of two simplicial cones:
    generators of each lying in the other, plus (in three dimensions) the
    pairwise facet-plane intersections.  Complete for dimension <= 3."""
    n = len(a.G)
    cands = set()
    for g in a.generators():
        if b.contains(g):
            cands.add(primitive(g))
    for g in b.generators():
        if a.contains(g):
            cands.add(primitive(g))
    if n == 3:
        for na in a.normals():
            for nb in b.normals():
                r = cross3(na, nb)
                p = primitive(r)
                if p is None:
                    continue
                for q in (p, tuple(-x for x in p)):
                    if a.contains(q) and b.contains(q):
                        cands.add(q)
    cands.discard(None)
    return cands


def check_fan(atlas, require_complete=True):
    """Exact fan-axiom verification.

    Every cone must be unimodular simplicial; every pairwise intersection
    must be a common face (computed via candidate extreme rays and minimal
    containing faces); every wall must be shared by exactly two cones when
    the fan is required to be complete, at most two otherwise.
    """
    n = atlas.ed.n
    for c in atlas.cones:
        d = mat_det(c.G)
        if abs(d) != 1:
            raise CheckFailed(f"cone {c.index} is not unimodular (det {d})")
        prod = [[dot(nrm, g) for g in c.generators()] for nrm in c.normals()]
        if tuple(tuple(r) for r in prod) != mat_identity(n):
            raise CheckFailed(f"cone {c.index}: normals do not invert generators")
    for i, a in enumerate(atlas.cones):
        for b in atlas.cones[i + 1:]:
            cands = _intersection_candidates(a, b)
            fa = a.minimal_face(cands)
            fb = b.minimal_face(cands)
            if fa != fb:
                raise CheckFailed(
                    f"cones {a.index} and {b.index} do not meet in a common "
                    f"face: {sorted(fa)} vs {sorted(fb)}")
    walls = {}
    for c in atlas.cones:
        gens = c.generators()
        for j in range(n):
            wall = frozenset(gens[:j] + gens[j + 1:])
            walls[wall] = walls.get(wall, 0) + 1
    if n > 1:
        bad = {w: m for w, m in walls.items() if m > 2}
        if bad:
            raise CheckFailed("a wall is shared by more than two cones")
        if require_complete and any(m != 2 for m in walls.values()):
            raise CheckFailed("fan is not complete: some wall is on the boundary")
    return True


# -- stars ----------------------------------------------------------------------

class StarData:
    """Quotient fan of the cones containing a face, with the face's base
    cone, the coordinates on the quotient, and the restricted exchange data.
    """

    __slots__ = ("atlas", "tau", "base", "kept", "dropped", "quotient_rows",
                 "proj_cones", "restricted")

    def __init__(self, atlas, tau, base, kept, dropped, quotient_rows,
                 proj_cones, restricted):
        self.atlas = atlas
        self.tau = tau
        self.base = base
        self.kept = kept          # generator positions spanning tau at base
        self.dropped = dropped    # complementary positions (the star's rank)
        self.quotient_rows = quotient_rows
        self.proj_cones = proj_cones
        self.restricted = restricted


def star(atlas, tau_rays):
    """Star of the face spanned by the given rays: project every maximal cone
    containing the face to the quotient by its span.

    The quotient coordinates are the rows of the inverse generator matrix of
    a base cone containing the face, at the positions complementary to the
    face; the restricted exchange data lives at the base cone's seed.
    """
    tau = [tuple(r) for r in tau_rays]
    base = None
    for c in atlas.cones:
        if set(tau) <= set(c.generators()):
            base = c
            break
    if base is None:
        raise CheckFailed("no maximal cone contains the requested face")
    gens = base.generators()
    kept = [gens.index(r) for r in tau]
    dropped = [j for j in range(len(gens)) if j not in kept]
    # rows of the inverse generator matrix are the normals (columns of Cd)
    rows = [tuple(base.Cd[i][j] for i in range(len(gens))) for j in dropped]

    def project(v):
        return tuple(dot(r, v) for r in rows)

    proj = []
    seen = set()
    for c in atlas.cones:
        if not set(tau) <= set(c.generators()):
            continue
        cols = [project(g) for g in c.generators() if g not in tau]
        key = frozenset(cols)
        if key not in seen:
            seen.add(key)
            proj.append((c.index, tuple(cols)))
    restricted = ExchangeData(
        tuple(tuple(base.B[i][j] for j in dropped) for i in dropped),
        len(dropped),
        tuple(atlas.ed.d[i] for i in dropped))
    return StarData(atlas, tuple(tau), base, tuple(kept), tuple(dropped),
                    tuple(rows), tuple(proj), restricted)


# -- rank <= 2 polytopes -----------------------------------------------------------

def _hull_2d(points):
    """Convex hull, counterclockwise, integer arithmetic (monotone chain)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def half(seq):
        out = []
        for p in seq:
            while len(out) >= 2:
                o, a = out[-2], out[-1]
                crossv = (a[0] - o[0]) * (p[1] - o[1]) - (a[1] - o[1]) * (p[0] - o[0])
                if crossv <= 0:
                    out.pop()
                else:
                    break
            out.append(p)
        return out

    lower = half(pts)
    upper = half(reversed(pts))
    return lower[:-1] + upper[:-1]


def _interior_lattice_points(hull):
    xs = [p[0] for p in hull]
    ys = [p[1] for p in hull]
    out = []
    m = len(hull)
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            strict = True
            for i in range(m):
                a, b = hull[i], hull[(i + 1) % m]
                crossv = (b[0] - a[0]) * (y - a[1]) - (b[1] - a[1]) * (x - a[0])
                if crossv <= 0:
                    strict = False
                    break
            if strict:
                out.append((x, y))
    return sorted(out)


def polytope_P(atlas):
    """Convex hull of the primitive rays of a complete fan of rank <= 2.

    Returns the hull vertices (counterclockwise), reflexivity (every facet at
    integral distance 1 from the origin), the interior lattice points, the
    polar-dual vertices (the primitive outward facet normals, which are
    lattice points exactly when reflexive), and whether the face fan of the
    hull reproduces the atlas cones.
    """
    n = atlas.ed.n
    rays = [primitive(r) for r in atlas.rays]
    if n == 1:
        verts = sorted(set(rays))
        if verts != [(-1,), (1,)]:
            raise CheckFailed("rank-1 fan must have the two unit rays")
        atlas_fan = {frozenset(c.generators()) for c in atlas.cones}
        return {
            "vertices": verts,
            "reflexive": True,
            "interior_points": [(0,)],
            "polar_vertices": verts,
            "face_fan_matches": atlas_fan == {frozenset({(1,)}),
                                              frozenset({(-1,)})},
        }
    if n != 2:
        raise CheckFailed("polytope construction implemented for rank <= 2")
    hull = _hull_2d(rays)
    if set(hull) != set(rays):
        raise CheckFailed("some ray is not a vertex of the hull")
    m = len(hull)
    normals = []
    reflexive = True
    for i in range(m):
        a, b = hull[i], hull[(i + 1) % m]
        d = (b[0] - a[0], b[1] - a[1])
        nrm = (d[1], -d[0])          # outward for counterclockwise order
        p = primitive(nrm)
        c = dot(p, a)
        if c <= 0:
            raise CheckFailed("origin is not interior to the hull")
        if c != 1:
            reflexive = False
        normals.append((p, c))
    polar = [p for p, c in normals] if reflexive else None
    face_fan = {frozenset((hull[i], hull[(i + 1) % m])) for i in range(m)}
    atlas_fan = {frozenset(c.generators()) for c in atlas.cones}
    return {
        "vertices": hull,
        "reflexive": reflexive,
        "interior_points": _interior_lattice_points(hull),
        "polar_vertices": polar,
        "face_fan_matches": face_fan == atlas_fan,
    }


def normal_fan_of_polygon(vertices):
    """Maximal normal cones of a convex polygon given counterclockwise:
    at each vertex, the cone spanned by the outward normals of its two
    edges."""
    m = len(vertices)
    normals = []
    for i in range(m):
        a, b = vertices[i], vertices[(i + 1) % m]
        d = (b[0] - a[0], b[1] - a[1])
        normals.append(primitive((d[1], -d[0])))
    cones = []
    for i in range(m):
        cones.append(frozenset((normals[i - 1], normals[i])))
    return set(cones)


# -- serialization ----------------------------------------------------------------

def fan_to_json(atlas):
    rays = list(atlas.rays)
    ray_index = {r: i for i, r in enumerate(rays)}
    return {
        "rays": [list(r) for r in rays],
        "maximal_cones": [sorted(ray_index[g] for g in c.generators())
                          for c in atlas.cones],
        "dual_rays": [[list(nrm) for nrm in c.normals()] for c in atlas.cones],
        "paths": [[k + 1 for k in c.path] for c in atlas.cones],
        "allowed": [k + 1 for k in atlas.allowed],
        "complete": atlas.complete,
        "seed": {
            "B": [list(r) for r in atlas.ed.B],
            "n": atlas.ed.n,
            "d": list(atlas.ed.d),
        },
    }


def fan_from_json(obj):
    """Rebuild a complete atlas from its serialized form: re-enumerate from
    the stored seed and require the file's rays and maximal cones to match.
    Incomplete files are rejected."""
    if not obj.get("complete", True):
        raise FanDepthExceeded("fan file is marked incomplete")
    seed = obj["seed"]
    ed = ExchangeData(seed["B"], seed["n"], seed.get("d"))
    allowed = tuple(k - 1 for k in obj.get("allowed", range(1, ed.n + 1)))
    atlas = enumerate_gfan(ed, allowed=allowed)
    rays = [tuple(r) for r in obj["rays"]]
    file_cones = {frozenset(rays[i] for i in idxs)
                  for idxs in obj["maximal_cones"]}
    if set(rays) != set(atlas.rays):
        raise CheckFailed("fan file rays do not match re-enumeration")
    if file_cones != {c.key() for c in atlas.cones}:
        raise CheckFailed("fan file cones do not match re-enumeration")
    return atlas
