import pytest
from hypothesis import given, settings

from conftest import p2, p3
from germlab.errors import InputError, PreconditionError
from germlab.expr import VariableContext, parse
from germlab.poly import (
    INFINITY,
    MixedPolynomial,
    Polynomial,
    Weight,
    arithmetic,
    hessian_rank,
    lowest_homogeneous_part,
    mixed_from_modulus_square,
    multiplicity,
    partial_derivative,
    substitute,
    truncate_jet,
    weighted_filtration,
)
from germlab.qi import gaussian, mpq
from strategies import nonzero_polynomials, polynomials

Q11 = "x^3+y^2*z+x*z^3+z^5"


def test_arithmetic_examples():
    assert arithmetic(p2("x+y"), p2("x-y"), "mul") == p2("x^2-y^2")
    p = p2("3x^2 - i*y")
    assert arithmetic(p, Polynomial.zero(2), "add") == p
    cube = p2("x+y^2")
    assert cube * cube * cube == p2("x^3+3x^2*y^2+3x*y^4+y^6")
    assert arithmetic(p, p, "sub").is_zero()


def test_arithmetic_rejects_mismatched_rings():
    with pytest.raises(InputError):
        arithmetic(p2("x"), p3("x"), "add")


def test_partial_derivatives():
    f = p3(Q11)
    assert partial_derivative(f, 0) == p3("3x^2+z^3")
    assert partial_derivative(p2("x^3"), 1).is_zero()
    assert partial_derivative(f, 2) == p3("y^2+3x*z^2+5z^4")
    with pytest.raises(InputError):
        partial_derivative(f, 3)


def test_mixed_modulus_square():
    x = p2("x")
    sq = mixed_from_modulus_square(x)
    assert sq.terms == {((1, 0), (1, 0)): 1}
    m = mixed_from_modulus_square(p2("4x^3+2x*y^2"))
    assert m.terms == {
        ((3, 0), (3, 0)): 16,
        ((3, 0), (1, 2)): 8,
        ((1, 2), (3, 0)): 8,
        ((1, 2), (1, 2)): 4,
    }
    assert mixed_from_modulus_square(Polynomial.zero(2)).is_zero()


def test_substitute_examples():
    f = p2("x^3+y^6")
    assert substitute(f, 0, p2("x+y^2")) == p2("(x+y^2)^3+y^6")
    assert substitute(f, 0, p2("x")) == f
    g = p3("y^5+y*z^2")
    assert substitute(g, 2, p3("z+i*y^2")) == p3("y*z^2+2i*y^3*z")


def test_multiplicity_examples():
    assert multiplicity(parse("x^3+t*x*y^4+y^6", VariableContext(("x", "y"), "t"))) == 3
    assert multiplicity(p2("x^4+y^5+x^2*y^2")) == 4
    assert multiplicity(p3("x^4+y^4+z^4+x*y*z")) == 3
    with pytest.raises(PreconditionError):
        multiplicity(Polynomial.zero(2))


def test_lowest_part_examples():
    assert lowest_homogeneous_part(p2("x^5+y^5+x^2*y^2")) == p2("x^2*y^2")
    assert lowest_homogeneous_part(p2("x^3+y^4")) == p2("x^3")
    h = p3("x^2*y+z^3-2x*y*z")
    assert lowest_homogeneous_part(h) == h


def test_weighted_filtration_examples():
    w = Weight((2, 1))
    assert weighted_filtration(p2("x^3+x*y^4+y^6"), w) == 6
    assert weighted_filtration(p2("y^7"), w) == 7
    assert weighted_filtration(Polynomial.zero(2), w) is INFINITY
    # (df/dt) * conj(df/dx) for x^4+y^5+t*x^2*y^2 at t = 1
    f = p2("x^4+y^5+x^2*y^2")
    a = MixedPolynomial.holomorphic(p2("x^2*y^2")) * MixedPolynomial.antiholomorphic(f.diff(0))
    assert weighted_filtration(a, Weight((4, 4))) == 28


def test_truncate_examples():
    g = p2("(x+y^2)^3+y^6")
    assert truncate_jet(g, 4) == p2("x^3+3x^2*y^2")
    assert truncate_jet(p2("x^3"), 2).is_zero()
    assert truncate_jet(g, 6) == g


def test_hessian_rank_examples():
    assert hessian_rank(p3("x^3+y^3+z^3+x*y*z")) == (0, 3)
    assert hessian_rank(p2("x^2+y^5")) == (1, 1)
    assert hessian_rank(parse("x^3+x*y^3+w^2", VariableContext(("x", "y", "w")))) == (1, 2)
    with pytest.raises(PreconditionError):
        hessian_rank(p2("x+y^2"))


@given(polynomials(), polynomials(), polynomials())
def test_ring_laws(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p - q) + q == p


@given(nonzero_polynomials(), nonzero_polynomials())
def test_multiplicity_additive(p, q):
    assert multiplicity(p * q) == multiplicity(p) + multiplicity(q)


@given(nonzero_polynomials(), nonzero_polynomials())
def test_filtration_additive(p, q):
    w = Weight((mpq(3, 2), 1))
    assert weighted_filtration(p * q, w) == weighted_filtration(p, w) + weighted_filtration(q, w)


@given(nonzero_polynomials())
def test_lowest_part_is_homogeneous_of_multiplicity(p):
    h = lowest_homogeneous_part(p)
    assert h.is_homogeneous() and h.order() == multiplicity(p)
    assert multiplicity(p - h) > multiplicity(p) if p != h else True


@given(polynomials(), polynomials(), polynomials(max_degree=2))
def test_substitute_is_ring_morphism(p, q, image):
    assert substitute(p * q, 0, image) == substitute(p, 0, image) * substitute(q, 0, image)
    assert substitute(p + q, 1, image) == substitute(p, 1, image) + substitute(q, 1, image)


@given(nonzero_polynomials())
def test_modulus_square_doubles_filtration(p):
    w = Weight((2, 1))
    sq = mixed_from_modulus_square(p)
    assert weighted_filtration(sq, w) == 2 * weighted_filtration(p, w)
    assert sq.conjugate() == sq


@settings(max_examples=30)
@given(polynomials(min_order=3))
def test_adding_square_raises_rank_by_one(p):
    g = p.embed(3, (0, 1)) + p3("z^2")
    assert hessian_rank(g) == (1, 2)


def test_canonical_form_drops_zeros():
    p = Polynomial(2, {(1, 0): mpq(0), (0, 1): gaussian(0, 0)})
    assert p.is_zero() and p.terms == {}
