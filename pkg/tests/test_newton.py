import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from conftest import p2, p3
from germlab.errors import PreconditionError
from germlab.jets import jacobian
from germlab.newton import (
    Isolation,
    NotNewtonSet,
    gradient_isolation_check,
    lct_monomial,
    min_face_ratio,
    monomialize_ideal,
    polyhedron_from_points,
    validate_newton_set,
)
from germlab.poly import MixedPolynomial, Polynomial, Weight
from germlab.qi import mpq


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def linprog_lct(points) -> float:
    """1/c for the least c with c*(1,..,1) dominating a convex combination of the points."""
    n, k = len(points[0]), len(points)
    # variables: lambda_1..lambda_k, c; minimize c
    cost = [0.0] * k + [1.0]
    upper = [[float(p[j]) for p in points] + [-1.0] for j in range(n)]
    res = linprog(cost, A_ub=upper, b_ub=[0.0] * n, A_eq=[[1.0] * k + [0.0]], b_eq=[1.0], bounds=[(0, None)] * (k + 1))
    assert res.status == 0
    return 1.0 / res.fun


def test_polyhedron_t245():
    poly = polyhedron_from_points([(6, 0), (2, 4), (0, 8)])
    compact = {(f.normal, f.offset) for f in poly.compact_facets()}
    assert compact == {((1, 1), 6), ((2, 1), 8)}
    scaled = dict(poly.common_degree_weights())
    assert scaled == {(4, 4): 24, (6, 3): 24}
    assert {(f.normal, f.offset) for f in poly.facets if not f.compact} == {((1, 0), 0), ((0, 1), 0)}


def test_polyhedron_simplex_and_three_variable_ideal():
    poly = polyhedron_from_points([(1, 0), (0, 1)])
    assert [(f.normal, f.offset) for f in poly.compact_facets()] == [((1, 1), 1)]
    poly = polyhedron_from_points([(2, 0, 0), (0, 2, 0), (0, 0, 3), (0, 1, 1)])
    on_boundary = tuple(mpq(2, 3) for _ in range(3))
    assert poly.contains(on_boundary)
    assert not poly.contains(tuple(mpq(2, 3) - mpq(1, 100) for _ in range(3)))


def test_validate_newton_set():
    assert validate_newton_set([(6, 0), (2, 4), (0, 8)])
    with pytest.raises(NotNewtonSet):
        validate_newton_set([(1, 0), (0, 1), (1, 1)])
    with pytest.raises(NotNewtonSet):
        validate_newton_set([(2, 0)])


def test_min_face_ratio():
    poly = polyhedron_from_points([(6, 0), (2, 4), (0, 8)])
    f = p2("x^4+y^5+x^2*y^2")
    a = MixedPolynomial.holomorphic(p2("x^2*y^2")) * MixedPolynomial.antiholomorphic(f.diff(0))
    assert min_face_ratio(a, poly) == mpq(28, 24)
    assert min_face_ratio(p2("x^6+x^2*y^4+y^8"), poly) == 1
    assert min_face_ratio(p2("x^3*y^4"), poly) > 1


def test_lct_examples():
    assert lct_monomial([(2, 0, 0), (0, 1, 1), (0, 2, 0), (0, 0, 3)]) == mpq(3, 2)
    assert lct_monomial([(3, 0, 0), (0, 1, 1), (0, 2, 0), (0, 0, 2)]) == mpq(4, 3)
    assert lct_monomial([(1, 0, 0), (0, 1, 0), (0, 0, 1)]) == 3
    with pytest.raises(PreconditionError):
        lct_monomial([(1, 1)])


def test_lct_matches_linear_programming_oracle():
    rng = random.Random(5)
    for _ in range(30):
        pts = [(rng.randint(1, 6), 0, 0), (0, rng.randint(1, 6), 0), (0, 0, rng.randint(1, 6))]
        pts += [tuple(rng.randint(0, 3) for _ in range(3)) for _ in range(2)]
        pts = [p for p in pts if any(p)]
        assert float(lct_monomial(pts)) == pytest.approx(linprog_lct(pts), abs=1e-9)


def test_monomialize_examples():
    assert sorted(monomialize_ideal(jacobian(p3("x^3+y^2*z+x*z^3+z^5")))) == sorted(
        [(2, 0, 0), (0, 1, 1), (0, 2, 0), (0, 0, 3)]
    )
    # y*z is the midpoint of y^2 and z^2, while x*z (from d/dz of x*z^2) is a vertex
    vertices = sorted(monomialize_ideal(jacobian(p3("x^4+y^2*z+x*z^2+x^3*z"))))
    assert vertices == [(0, 0, 2), (0, 2, 0), (1, 0, 1), (3, 0, 0)]
    assert lct_monomial(vertices) == mpq(3, 2)
    assert monomialize_ideal([p3("x")]) == [(1, 0, 0)]


def test_gradient_isolation_examples():
    assert gradient_isolation_check(p2("x^4+y^4+x^2*y^2"), Weight((1, 1))) == Isolation.ISOLATED
    assert gradient_isolation_check(p2("x^4+y^4+2x^2*y^2"), Weight((1, 1))) == Isolation.NOT_ISOLATED
    assert gradient_isolation_check(p3("x^3+x*y*z"), Weight((1, 1, 1))) == Isolation.NOT_ISOLATED


point_sets = st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6), st.integers(0, 6)), min_size=1, max_size=5)


def with_axes(pts, a, b, c):
    return [p for p in pts if any(p)] + [(a, 0, 0), (0, b, 0), (0, 0, c)]


@settings(max_examples=40, deadline=None)
@given(point_sets, st.integers(1, 6), st.integers(1, 6), st.integers(1, 6))
def test_vertices_satisfy_facets(pts, a, b, c):
    poly = polyhedron_from_points(with_axes(pts, a, b, c))
    for i, v in enumerate(poly.vertices):
        for f in poly.facets:
            value = dot(f.normal, v)
            assert value >= f.offset
            assert (value == f.offset) == (i in f.vertices)
    for f in poly.facets:
        assert f.vertices


@settings(max_examples=40, deadline=None)
@given(point_sets, st.integers(1, 6), st.integers(1, 6), st.integers(1, 6), st.permutations(range(3)), st.integers(1, 4))
def test_lct_permutation_and_scaling(pts, a, b, c, perm, k):
    pts = with_axes(pts, a, b, c)
    value = lct_monomial(pts)
    assert lct_monomial([tuple(p[j] for j in perm) for p in pts]) == value
    assert lct_monomial([tuple(k * e for e in p) for p in pts]) == value / k


@settings(max_examples=40, deadline=None)
@given(point_sets, st.integers(1, 6), st.integers(1, 6), st.integers(1, 6))
def test_monomialize_idempotent(pts, a, b, c):
    gens = [Polynomial.monomial(p) for p in with_axes(pts, a, b, c)]
    once = monomialize_ideal(gens)
    assert sorted(monomialize_ideal([Polynomial.monomial(p) for p in once])) == sorted(once)


@settings(max_examples=40, deadline=None)
@given(point_sets, point_sets)
def test_face_filtration_additive(p_pts, q_pts):
    p = Polynomial(3, {e: mpq(1) for e in p_pts})
    q = Polynomial(3, {e: mpq(2) for e in q_pts})
    poly = polyhedron_from_points([(6, 0, 0), (0, 4, 0), (0, 0, 3), (1, 1, 1)])
    for f in poly.compact_facets():
        w = Weight(tuple(mpq(n) for n in f.normal))
        assert (p * q).filtration(w) == p.filtration(w) + q.filtration(w)
