import random

import pytest

from conftest import add_squares, linear_change, p2, p3, random_invertible
from germlab.catalog import entry_named
from germlab.errors import PreconditionError
from germlab.expr import VariableContext, parse
from germlab.invariants import (
    compare_fingerprints,
    compare_germs,
    fingerprint,
    lct_jacobian,
    rank_at_zero,
    sigma_descriptor,
)
from germlab.qi import mpq

XW = VariableContext(("x", "w"))


def test_rank_at_zero():
    assert rank_at_zero(parse("x+x^2", VariableContext(("x",)))) == 1
    assert rank_at_zero(p2("x^3+y^4")) == 0
    assert rank_at_zero(p3("2y-z+x*y*z")) == 1
    with pytest.raises(PreconditionError):
        rank_at_zero(p2("1+x"))


def test_sigma_examples():
    s = sigma_descriptor(p2("x^5+y^5+x^2*y^2"))
    assert (s.affine_dim, s.line_count) == (1, 2)
    s = sigma_descriptor(p2("x^3*y+y^5+x*y^4"))
    assert (s.affine_dim, s.line_count) == (1, 1)
    s = sigma_descriptor(p3("x^4+y^4+z^4+x*y*z"))
    assert (s.affine_dim, s.line_count) == (1, 3)
    assert s.line_count <= s.scheme_degree


def test_lct_examples():
    assert lct_jacobian(p3("x^3+y^2*z+x*z^3+z^5")).value == mpq(3, 2)
    assert lct_jacobian(parse("x^3+w^2", XW)).value == mpq(3, 2)


@pytest.mark.xfail(strict=True, reason="the Jacobian support contains the vertex x*z; computed lct is 3/2")
def test_lct_s11_published_value():
    assert lct_jacobian(p3("x^4+y^2*z+x*z^2+x^3*z")).value == mpq(4, 3)


def test_fingerprint_examples():
    fp = fingerprint(p2("x^3+y^4"))
    assert (fp.multiplicity, fp.corank, fp.milnor) == (3, 2, 6)
    assert (fp.sigma.affine_dim, fp.sigma.line_count) == (1, 1)
    fp = fingerprint(p2("x^4+y^5+x^2*y^2"))
    assert (fp.multiplicity, fp.corank, fp.milnor) == (4, 2, 10)
    fp = fingerprint(p3("x^2+y^2+z^2"))
    assert (fp.multiplicity, fp.corank, fp.milnor, fp.sigma.affine_dim) == (2, 0, 1, 0)


def test_compare_examples():
    t255, z11 = p2("x^5+y^5+x^2*y^2"), p2("x^3*y+y^5+x*y^4")
    assert compare_germs(t255, z11).by == "sigma"
    f = p3("x^3+y^3+z^3+x*y*z")
    assert not compare_germs(f, f).distinguished


@pytest.mark.xfail(strict=True, reason="both lct values compute to 3/2, so no implemented invariant separates them")
def test_compare_q11_s11_by_lct():
    assert compare_germs(p3("x^3+y^2*z+x*z^3+z^5"), p3("x^4+y^2*z+x*z^2+x^3*z")).by == "lct"


INVARIANCE_GERMS = ["E_6", "X_9", "T_{2,4,5}", "Z_{11}", "P_8", "Q_{10}", "S_{11}", "U_{12}", "T_{3,4,5}", "E_8"]


def test_fingerprint_invariant_under_gaussian_changes():
    rng = random.Random(20)
    for trial in range(20):
        name = INVARIANCE_GERMS[trial % len(INVARIANCE_GERMS)]
        entry = entry_named(name)
        f = entry.polynomial()
        g = linear_change(f, random_invertible(f.nvars, rng, gaussian_entries=True))
        a, b = fingerprint(f), fingerprint(g)
        assert (a.multiplicity, a.residual_multiplicity, a.corank, a.milnor, a.sigma) == (
            b.multiplicity,
            b.residual_multiplicity,
            b.corank,
            b.milnor,
            b.sigma,
        ), name
        # the Newton-polyhedron value is exact in adapted coordinates; elsewhere it bounds from above
        if a.lct.certified:
            assert b.lct.value >= a.lct.value, name
            if b.lct.certified:
                assert b.lct.value == a.lct.value, name


def test_stabilization_keeps_invariants():
    for text in ("x^3+x*y^3", "x^4+y^5+x^2*y^2"):
        f = p2(text)
        g = add_squares(f, 1)
        a, b = fingerprint(f), fingerprint(g)
        assert (a.milnor, a.corank, a.sigma) == (b.milnor, b.corank, b.sigma)
        assert b.lct.value == a.lct.value + 1


def test_compare_is_symmetric():
    names = ["E_6", "E_7", "T_{2,5,5}", "Z_{11}", "Q_{10}", "T_{3,3,5}", "Q_{11}", "S_{11}"]
    fps = {n: entry_named(n).fingerprint for n in names}
    for a in names:
        for b in names:
            ab, ba = compare_fingerprints(fps[a], fps[b]), compare_fingerprints(fps[b], fps[a])
            assert (ab.distinguished, ab.by) == (ba.distinguished, ba.by)
