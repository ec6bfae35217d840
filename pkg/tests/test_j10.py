import pytest
from hypothesis import given
from hypothesis import strategies as st

from germlab.j10 import family_member, polar_restriction, possibly_equivalent, ratio_invariant
from germlab.poly import Polynomial
from germlab.qi import ONE, gaussian, mpq
from strategies import coefficients


def test_polar_restriction_examples():
    assert polar_restriction(0) == (1, 1)
    assert polar_restriction(1) == (-1, 3)
    assert polar_restriction(mpq(1, 2)) == (mpq(3, 4), mpq(5, 4))


def test_polar_branch_substitution_oracle():
    # u = lam v^2, w = 0 in u^3 - 3 lam^2 u v^4 + v^6 gives (1 - 2 lam^3) v^6
    lam = mpq(2, 3)
    f = family_member(lam)
    branch = [Polynomial(1, {(2,): lam}), Polynomial.variable(1, 0), Polynomial.zero(1)]
    assert f.compose(branch) == Polynomial(1, {(6,): 1 - 2 * lam**3})


def test_ratio_invariant_examples():
    assert ratio_invariant(0) == (1, 1, 1)
    assert sorted(ratio_invariant(1)) == sorted([ONE, mpq(-3), mpq(-1, 3)])
    assert ratio_invariant(mpq(1, 2)) == ratio_invariant(mpq(-1, 2))


def test_possibly_equivalent_examples():
    assert possibly_equivalent(1, 1)
    assert possibly_equivalent(mpq(3, 5), mpq(-3, 5))
    assert not possibly_equivalent(1, 2)


@given(coefficients)
def test_reflexive_and_sign_flip(lam):
    assert possibly_equivalent(lam, lam)
    assert possibly_equivalent(lam, -lam)
    assert ratio_invariant(lam) == ratio_invariant(-lam)


@given(coefficients, coefficients)
def test_symmetric_and_exact_cube_test(a, b):
    assert possibly_equivalent(a, b) == possibly_equivalent(b, a)
    assert possibly_equivalent(a, b) == (a**3 == b**3 or a**3 == -(b**3))


@given(coefficients)
def test_depends_on_lambda_cubed_only(lam):
    # i*lam has cube -i*lam^3, the only other Q(i) point with |cube| fixed by a unit
    twisted = gaussian(0, 1) * lam
    assert possibly_equivalent(lam, twisted) == (lam == 0)


@given(coefficients)
def test_ratios_are_reciprocal(lam):
    values = ratio_invariant(lam)
    assert ONE in values
    others = list(values)
    others.remove(ONE)
    assert others[0] * others[1] == 1
