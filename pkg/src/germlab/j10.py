"""The modulus of the J10 family u^3 - 3*l^2*u*v^4 + v^6 + w^2."""

from __future__ import annotations

from .errors import PreconditionError
from .poly import Polynomial
from .qi import ONE, ZERO, as_number, sort_key


def _check(lam):
    lam = as_number(lam)
    cube = lam**3
    if ONE - 2 * cube == ZERO or ONE + 2 * cube == ZERO:
        raise PreconditionError("parameter must satisfy 1 +- 2*lambda^3 != 0")
    return lam


def family_member(lam) -> Polynomial:
    """u^3 - 3*l^2*u*v^4 + v^6 + w^2 in variables (u, v, w)."""
    lam = as_number(lam)
    return Polynomial(3, {(3, 0, 0): ONE, (1, 4, 0): -3 * lam * lam, (0, 6, 0): ONE, (0, 0, 2): ONE})


def polar_restriction(lam) -> tuple:
    """Coefficients of v^6 on the polar branches u = l*v^2 and u = -l*v^2, w = 0.

    Each call checks the values by substituting the branch into the family.
    """
    lam = _check(lam)
    f = family_member(lam)
    values = []
    for sign in (ONE, -ONE):
        branch = [Polynomial(1, {(2,): sign * lam}), Polynomial.variable(1, 0), Polynomial.zero(1)]
        restricted = f.compose(branch)
        c = restricted.coefficient((6,))
        if restricted != Polynomial(1, {(6,): c} if c else {}):
            raise AssertionError("polar restriction is not a multiple of v^6")
        values.append(c)
    expected = (ONE - 2 * lam**3, ONE + 2 * lam**3)
    if tuple(values) != expected:
        raise AssertionError("polar restriction disagrees with 1 -+ 2*lambda^3")
    return expected


def ratio_invariant(lam) -> tuple:
    """The ratios {1, c2/c1, c1/c2} of the polar values, sorted by (re, im)."""
    c1, c2 = polar_restriction(lam)
    return tuple(sorted((ONE, c2 / c1, c1 / c2), key=sort_key))


def possibly_equivalent(lam, other) -> bool:
    """False certifies the two members are not bi-Lipschitz equivalent."""
    a, b = _check(lam) ** 3, _check(other) ** 3
    return a == b or a == -b
