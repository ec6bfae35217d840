"""Newton polyhedra of point sets in at most four dimensions.

Facets are found by brute force: every hyperplane through n affinely
independent generators (points or coordinate rays) is kept when the whole
point set lies on its nonnegative side.  Everything is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import reduce
from itertools import combinations
from math import comb, gcd, lcm

from gmpy2 import mpq

from .errors import InputError, NotMPrimaryUpTo, PreconditionError
from .jets import axis_obstruction, hilbert_function, mprimary_level
from .linalg import matrix_rank, nullspace
from .poly import INFINITY, MixedPolynomial, Polynomial, Weight
from .qi import ZERO

MAX_DIM = 4


class NotNewtonSet(InputError):
    """A point set that is not the vertex set of its own Newton polyhedron."""

    def __init__(self, non_vertices, missing_axes):
        parts = []
        if non_vertices:
            parts.append("not vertices: " + ", ".join(_fmt_point(p) for p in non_vertices))
        if missing_axes:
            parts.append("no intersection with axes " + ", ".join(str(j + 1) for j in missing_axes))
        super().__init__("; ".join(parts))
        self.non_vertices = non_vertices
        self.missing_axes = missing_axes


def _fmt_point(p) -> str:
    return "(" + ",".join(str(c) for c in p) + ")"


def _point(p) -> tuple:
    return tuple(mpq(c) for c in p)


def _primitive(w, d):
    """Scale (w, d) to coprime integers keeping the sign."""
    den = reduce(lcm, (mpq(c).denominator for c in list(w) + [d]), 1)
    ints = [int(mpq(c) * den) for c in w]
    dint = int(mpq(d) * den)
    g = reduce(gcd, ints + [dint], 0) or 1
    return tuple(i // g for i in ints), dint // g


@dataclass(frozen=True)
class Facet:
    normal: tuple  # primitive nonnegative integers
    offset: int  # <normal, p> >= offset on the polyhedron
    vertices: frozenset  # indices into NewtonPolyhedron.vertices

    @property
    def compact(self) -> bool:
        return all(self.normal)


@dataclass(frozen=True)
class Face:
    vertices: frozenset
    dimension: int
    weight: tuple  # strictly positive covector selecting exactly this face
    degree: mpq  # value of the weight on the face


@dataclass
class NewtonPolyhedron:
    nvars: int
    vertices: list
    facets: list
    compact_faces: list = field(default_factory=list)

    def compact_facets(self) -> list[Facet]:
        return [f for f in self.facets if f.compact]

    def contains(self, point) -> bool:
        p = _point(point)
        return all(_dot(f.normal, p) >= f.offset for f in self.facets)

    def common_degree_weights(self) -> list[tuple]:
        """Compact facet weights rescaled to one shared total degree.

        Returns (weight, degree) pairs whose degrees all equal the lcm of the
        primitive offsets, the usual way to present several facet weights.
        """
        facets = self.compact_facets()
        if not facets:
            return []
        common = reduce(lcm, (f.offset for f in facets), 1)
        out = []
        for f in facets:
            k = common // f.offset
            out.append((tuple(k * a for a in f.normal), common))
        return out

    def to_json(self, ctx=None) -> dict:
        return {
            "vertices": [[str(c) for c in v] for v in self.vertices],
            "facets": [
                {
                    "normal": list(f.normal),
                    "offset": f.offset,
                    "compact": f.compact,
                    "vertices": sorted(f.vertices),
                }
                for f in self.facets
            ],
            "compact_faces": [
                {
                    "vertices": sorted(c.vertices),
                    "dimension": c.dimension,
                    "weight": [str(a) for a in c.weight],
                    "degree": str(c.degree),
                }
                for c in self.compact_faces
            ],
            "common_degree_weights": [
                {"weight": list(w), "degree": d} for w, d in self.common_degree_weights()
            ],
        }


def _dot(w, p):
    return sum((a * b for a, b in zip(w, p)), ZERO)


def minimal_points(points) -> list[tuple]:
    """Distinct points not dominated coordinatewise by another point, sorted."""
    pts = sorted({_point(p) for p in points})
    keep = []
    for p in pts:
        if any(q != p and all(a <= b for a, b in zip(q, p)) for q in pts):
            continue
        keep.append(p)
    return keep


def _affine_rank(points) -> int:
    if not points:
        return -1
    base = points[0]
    return matrix_rank([[a - b for a, b in zip(p, base)] for p in points[1:]])


def polyhedron_from_points(points) -> NewtonPolyhedron:
    points = [_point(p) for p in points]
    if not points:
        raise InputError("need at least one point")
    n = len(points[0])
    if any(len(p) != n for p in points):
        raise InputError("points of different dimensions")
    if not 1 <= n <= MAX_DIM:
        raise InputError(f"Newton polyhedra are supported in 1 to {MAX_DIM} dimensions")
    if any(c < 0 for p in points for c in p):
        raise InputError("points must have nonnegative coordinates")
    pts = minimal_points(points)
    found: dict = {}
    for k in range(1, n + 1):
        for chosen in combinations(range(len(pts)), k):
            for rays in combinations(range(n), n - k):
                rows = [list(pts[i]) + [mpq(-1)] for i in chosen]
                for j in rays:
                    row = [ZERO] * (n + 1)
                    row[j] = mpq(1)
                    rows.append(row)
                basis = nullspace(rows, n + 1)
                if len(basis) != 1:
                    continue
                vec = basis[0]
                w, d = vec[:n], vec[n]
                if all(c <= 0 for c in w):
                    w, d = [-c for c in w], -d
                if any(c < 0 for c in w) or not any(w):
                    continue
                if any(_dot(w, q) < d for q in pts):
                    continue
                normal, offset = _primitive(w, d)
                found.setdefault((normal, offset), None)
    # vertices: points whose tight facet normals span the whole space
    tight = {
        key: [i for i, p in enumerate(pts) if _dot(key[0], p) == key[1]] for key in found
    }
    vertex_ids = [
        i
        for i, p in enumerate(pts)
        if matrix_rank([list(key[0]) for key, ids in tight.items() if i in ids]) == n
    ]
    vertices = [pts[i] for i in vertex_ids]
    renumber = {old: new for new, old in enumerate(vertex_ids)}
    facets = [
        Facet(normal, offset, frozenset(renumber[i] for i in tight[(normal, offset)] if i in renumber))
        for (normal, offset) in sorted(found, key=lambda k: (not all(k[0]), k[0], k[1]))
    ]
    poly = NewtonPolyhedron(n, vertices, facets)
    poly.compact_faces = _compact_faces(poly)
    return poly


def _compact_faces(poly: NewtonPolyhedron) -> list[Face]:
    closed = {f.vertices for f in poly.facets if f.vertices}
    frontier = set(closed)
    while frontier:
        new = set()
        for a in frontier:
            for b in list(closed):
                c = a & b
                if c and c not in closed:
                    new.add(c)
        closed |= new
        frontier = new
    closed |= {frozenset([i]) for i in range(len(poly.vertices))}
    faces = []
    for vs in closed:
        containing = [f for f in poly.facets if vs <= f.vertices]
        weight = tuple(sum((mpq(f.normal[j]) for f in containing), ZERO) for j in range(poly.nvars))
        if not all(weight):
            continue
        pts = [poly.vertices[i] for i in sorted(vs)]
        faces.append(Face(vs, _affine_rank(pts), weight, _dot(weight, pts[0])))
    faces.sort(key=lambda f: (-f.dimension, sorted(f.vertices)))
    return faces


def validate_newton_set(points) -> list[tuple]:
    """Return the points when they form a Newton set, else raise NotNewtonSet."""
    pts = [_point(p) for p in points]
    poly = polyhedron_from_points(pts)
    verts = set(poly.vertices)
    non_vertices = [p for p in dict.fromkeys(pts) if p not in verts]
    n = poly.nvars
    missing = [
        j for j in range(n) if not any(all(c == 0 for k, c in enumerate(v) if k != j) for v in poly.vertices)
    ]
    if non_vertices or missing:
        raise NotNewtonSet(non_vertices, missing)
    return pts


def _support(p) -> list[tuple]:
    if isinstance(p, MixedPolynomial):
        return sorted(p.support())
    return sorted(p.exponents())


def face_filtration(p, weight):
    """Weighted filtration for an arbitrary nonnegative covector."""
    if not p:
        return INFINITY
    return min(_dot(weight, e) for e in _support(p))


def min_face_ratio(p, poly: NewtonPolyhedron):
    """min over compact facets of fil_w(p) / d."""
    if not p:
        raise PreconditionError("ratio of the zero polynomial is undefined")
    facets = poly.compact_facets()
    if not facets:
        raise PreconditionError("the polyhedron has no compact facet")
    return min(face_filtration(p, f.normal) / f.offset for f in facets)


def lct_monomial(points):
    """Log canonical threshold of the monomial ideal with these exponents."""
    poly = polyhedron_from_points(points)
    if any(not any(v) for v in poly.vertices):
        raise PreconditionError("the ideal is the unit ideal")
    missing = [
        j
        for j in range(poly.nvars)
        if not any(all(c == 0 for k, c in enumerate(v) if k != j) for v in poly.vertices)
    ]
    if missing:
        raise PreconditionError(
            "Newton polyhedron misses the axes " + ", ".join(str(j + 1) for j in missing)
        )
    threshold = max(mpq(f.offset, sum(f.normal)) for f in poly.facets)
    return 1 / threshold


def monomialize_ideal(gens) -> list[tuple]:
    """Vertices of the Newton polyhedron of the union of the supports."""
    support = [e for g in gens for e in g.exponents()]
    if not support:
        raise InputError("all generators are zero")
    return [tuple(int(c) for c in v) for v in polyhedron_from_points(support).vertices]


# isolation checks --------------------------------------------------------------


class Isolation(str, Enum):
    ISOLATED = "isolated"
    NOT_ISOLATED = "not-isolated"
    UNDETERMINED = "undetermined"


HOMOGENIZE_COLUMN_LIMIT = 1500


def _integer_weight(w) -> tuple:
    w = w if isinstance(w, Weight) else Weight(w)
    den = reduce(lcm, (c.denominator for c in w), 1)
    ints = [int(c * den) for c in w]
    g = reduce(gcd, ints)
    return tuple(i // g for i in ints)


def common_zero_only_origin(forms, weight) -> Isolation:
    """Decide whether w-homogeneous polynomials have only the origin as common zero."""
    forms = [f for f in forms if f]
    if not forms:
        return Isolation.NOT_ISOLATED
    n = forms[0].nvars
    if any(f.constant_term() for f in forms):
        return Isolation.ISOLATED
    if axis_obstruction(forms, n) is not None:
        return Isolation.NOT_ISOLATED
    w = _integer_weight(weight)
    big = reduce(lcm, w, 1)
    images = [Polynomial.monomial(tuple(big // w[j] if k == j else 0 for k in range(n))) for j in range(n)]
    homog = [f.compose(images) for f in forms]
    if all(h.is_homogeneous() for h in homog):
        # forms of degree <= delta cut out only the origin iff HF vanishes at n(delta-1)+1
        top = n * (max(h.degree() for h in homog) - 1) + 1
        if comb(top + n - 1, n - 1) <= HOMOGENIZE_COLUMN_LIMIT:
            return Isolation.ISOLATED if hilbert_function(homog, n, top) == 0 else Isolation.NOT_ISOLATED
    try:
        mprimary_level(forms, 20)
        return Isolation.ISOLATED
    except NotMPrimaryUpTo as exc:
        return Isolation.NOT_ISOLATED if exc.proven else Isolation.UNDETERMINED


def gradient_isolation_check(f: Polynomial, w) -> Isolation:
    """Is the critical point of the w-initial part of f isolated at 0?"""
    init = f.initial_part(w)
    partials = init.gradient()
    if not any(partials):
        return Isolation.NOT_ISOLATED
    return common_zero_only_origin(partials, w)


def torus_zero_free(forms, weight) -> Isolation:
    """No common zero of the forms in the torus (C*)^n?

    ISOLATED here means no torus zero; UNDETERMINED when only zeros on
    coordinate subspaces could not be excluded.
    """
    forms = [f for f in forms if f]
    if not forms:
        return Isolation.NOT_ISOLATED
    reduced = []
    for f in forms:
        if len(f) == 1:
            return Isolation.ISOLATED
        content = tuple(min(e[j] for e in f.exponents()) for j in range(f.nvars))
        g = Polynomial(f.nvars, {tuple(a - b for a, b in zip(e, content)): c for e, c in f.items()})
        if g.degree() == 0:
            return Isolation.ISOLATED
        reduced.append(g)
    verdict = common_zero_only_origin(reduced, weight)
    if verdict == Isolation.ISOLATED:
        return verdict
    return Isolation.UNDETERMINED


def face_part(p: Polynomial, face: Face) -> Polynomial:
    return p.weighted_part(face.weight, face.degree)


def minkowski_polyhedron(gens) -> NewtonPolyhedron:
    """Newton polyhedron of the product of the generators.

    Its compact faces index the cones of positive weights on which every
    generator has a constant principal part.
    """
    sums = [(0,) * gens[0].nvars]
    for g in gens:
        verts = polyhedron_from_points(list(g.exponents())).vertices
        sums = minimal_points(tuple(a + b for a, b in zip(s, v)) for s in sums for v in verts)
    return polyhedron_from_points(sums)


def nondegenerate_on_faces(gens) -> tuple[Isolation, list]:
    """Torus-zero check of the principal parts of ``gens`` for every positive weight.

    Weights are sampled one per compact face of the Minkowski-sum polyhedron,
    which covers every cone of the common normal fan.
    """
    gens = [g for g in gens if g]
    report = []
    overall = Isolation.ISOLATED
    for face in minkowski_polyhedron(gens).compact_faces:
        parts = [g.initial_part(face.weight) for g in gens]
        verdict = torus_zero_free(parts, face.weight)
        report.append({"weight": [str(a) for a in face.weight], "verdict": verdict.value})
        if verdict != Isolation.ISOLATED:
            overall = Isolation.UNDETERMINED
    return overall, report
