import pytest

from conftest import p2, p3
from germlab.catalog import load_catalog
from germlab.certify import (
    Family,
    Verdict,
    check_constrained_membership_scheme,
    check_control_function,
    check_deforms_to_j10,
    check_theorem_triviality,
    parse_rho_spec,
    quasihomogeneous_type,
)
from germlab.errors import InputError
from germlab.expr import VariableContext, parse
from germlab.poly import Weight
from germlab.qi import as_number, gaussian, mpq

XYT = VariableContext(("x", "y"), "t")
XYZT = VariableContext(("x", "y", "z"), "t")
XYZW = VariableContext(("x", "y", "z", "w"))
Q11 = "x^3+y^2*z+x*z^3+z^5"
SAMPLES = (1, -1, 2, mpq(1, 3), mpq(-1, 2), 3)


def test_quasihomogeneous_type_examples():
    assert quasihomogeneous_type(p2("x^3+x*y^4+y^6")) == ((2, 1), 6)
    assert quasihomogeneous_type(p3("x^3+y^3+z^3+x*y*z")) == ((1, 1, 1), 3)
    assert quasihomogeneous_type(p2("x^3+y^4+x*y^3")) is None


def test_theorem_triviality_x9():
    fam = Family(parse("x^4+y^4+t*x^2*y^2", XYT), (1, -1, 3))
    cert = check_theorem_triviality(fam)
    assert cert.verdict == Verdict.ACCEPTED and cert.verify()
    ev = cert.to_json()["evidence"]
    assert (ev["weight"], ev["degree"], ev["fil_theta"], ev["required"]) == ([1, 1], 4, 4, 4)


def test_theorem_triviality_x9_fails_where_initial_form_degenerates():
    fam = Family(parse("x^4+y^4+t*x^2*y^2", XYT), (2,))
    assert check_theorem_triviality(fam).verdict != Verdict.ACCEPTED


def test_theorem_triviality_p8():
    fam = Family(parse("x^3+y^3+z^3+t*x*y*z", XYZT), (1, -1, 2, mpq(1, 3)))
    cert = check_theorem_triviality(fam)
    assert cert.verdict == Verdict.ACCEPTED and cert.verify()


def test_theorem_triviality_counterexample():
    fam = Family(parse("x^2+y^2+t*(x*y+y^3)", XYT), (2,))
    cert = check_theorem_triviality(fam)
    assert cert.verdict == Verdict.REJECTED


def test_control_function_t255():
    fam = Family(parse("x^5+y^5+t*x^2*y^2", XYT), (1, 2))
    cert = check_control_function(fam)
    assert cert.verdict == Verdict.ACCEPTED and cert.verify()


def test_control_function_q10():
    fam = Family(parse("x^3+y^4+y*z^2+t*x*y^3", XYZT), (1, 2))
    spec = parse_rho_spec("2,2,2*y", 3, VariableContext(("x", "y", "z")))
    cert = check_control_function(fam, spec)
    assert cert.verdict == Verdict.ACCEPTED and cert.verify()


def test_rho_spec_errors():
    with pytest.raises(InputError):
        parse_rho_spec("2,2", 3)
    with pytest.raises(InputError):
        parse_rho_spec("0,1,1", 3)


def test_membership_scheme_q11():
    cert = check_constrained_membership_scheme(p3(Q11), [p3("x^8"), p3("y^8"), p3("z^8")], (1, 1, 1), 4, 12)
    assert cert.verdict == Verdict.ACCEPTED and cert.verify()


def test_membership_scheme_q11_base():
    cert = check_constrained_membership_scheme(
        p3("x^3+y^2*z+x*z^3"), [p3("x^8"), p3("y^8"), p3("z^8")], (1, 1, 1), 4, 12
    )
    # the base germ is still isolated; the report is produced either way
    assert cert.verdict in (Verdict.ACCEPTED, Verdict.REJECTED, Verdict.UNDETERMINED)
    assert len(cert.entries) == 3


def test_membership_scheme_rejects_non_member():
    cert = check_constrained_membership_scheme(p2("x^3+y^4"), [p2("x")], (1, 1), 0, 6)
    assert cert.verdict == Verdict.REJECTED


def test_deforms_to_j10_examples():
    w = check_deforms_to_j10(p3("x^3+y^5+y*z^2+x*y^4"))
    assert w is not None and w.verify()
    assert any("i" in m.label for m in w.moves)
    w = check_deforms_to_j10(p2("x^3*y+x*y^4+x^2*y^3"))
    assert w is not None and w.verify()
    assert check_deforms_to_j10(p2("x^3+y^4")) is None


def _admissible_samples(constraint: str, count: int):
    a = VariableContext(("a",))
    out = []
    for s in SAMPLES:
        if constraint:
            lhs, rhs = constraint.split("!=")
            if parse(f"({lhs.replace('4a', '4*a')})-({rhs})", a)(as_number(s)) == 0:
                continue
        out.append(s)
    return out[:count]


def test_bracketed_families_deform_to_j10():
    missing = []
    for entry in load_catalog():
        if not entry.bracketed or not entry.variables or "b" in entry.template:
            continue
        names = tuple(entry.variables.split(","))
        for s in _admissible_samples(entry.constraint, 3):
            f = parse(entry.template, VariableContext(names + ("a",)))
            f = f.evaluate_variable(len(names), as_number(s)).restrict(range(len(names)))
            w = check_deforms_to_j10(f)
            if w is None or not w.verify():
                missing.append((entry.name, s))
    assert not missing


def test_corank4_diagonal_cubics():
    for extra in ("x*y*z*w", "2*x*y*z", "x*y*z+x*y*w"):
        f = parse(f"x^3+y^3+z^3+w^3+{extra}", XYZW)
        w = check_deforms_to_j10(f)
        assert w is not None and w.verify(), extra
        assert w.notes


def test_witness_tampering_is_detected():
    w = check_deforms_to_j10(p2("x^3*y+x*y^4+x^2*y^3"))
    w.presentation = w.presentation + p2("x^2*y")
    assert not w.verify()
