"""Machine checks for triviality of deformation families and for adjacency to J10."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import reduce
from itertools import permutations
from math import gcd

from gmpy2 import mpq

from .errors import InputError, NotMPrimaryUpTo, PreconditionError
from .jets import constrained_membership, jacobian, mprimary_level
from .linalg import nullspace, solve, upoly_gcd, upoly_trim
from .newton import Isolation, gradient_isolation_check, polyhedron_from_points, torus_zero_free
from .poly import INFINITY, MixedPolynomial, Polynomial, Weight, hessian_rank
from .qi import ONE, ZERO, I, as_number, format_number, sqrt_exact
from .splitting import critical_residual

DEFAULT_SAMPLES = (ONE, -ONE, mpq(2), mpq(1, 3))


class Verdict(str, Enum):
    ACCEPTED = "accepted"
    REJECTED = "rejected"
    UNDETERMINED = "undetermined"


@dataclass
class Family:
    """body(x, t) with the parameter t in the last variable."""

    body: Polynomial
    samples: tuple = DEFAULT_SAMPLES

    def __post_init__(self):
        if self.body.nvars < 2:
            raise InputError("a family needs at least one variable and the parameter")
        self.samples = tuple(as_number(s) for s in self.samples)
        if not self.samples:
            raise InputError("no parameter samples")

    @property
    def nvars(self) -> int:
        return self.body.nvars - 1

    def at(self, t) -> Polynomial:
        n = self.nvars
        return self.body.evaluate_variable(n, as_number(t)).restrict(range(n))

    def parameter_derivative_at(self, t) -> Polynomial:
        n = self.nvars
        return self.body.diff(n).evaluate_variable(n, as_number(t)).restrict(range(n))

    def base_and_direction(self) -> tuple[Polynomial, Polynomial]:
        """(f, theta) with body = f(x) + t * theta(x, t)."""
        n = self.nvars
        base, rest = {}, {}
        for e, c in self.body.items():
            if e[n] == 0:
                base[e[:n]] = c
            else:
                rest[e[:n] + (e[n] - 1,)] = c
        return Polynomial(n, base), Polynomial(n + 1, rest)


@dataclass
class SampleVerdict:
    parameter: object
    verdict: Verdict
    reason: str = ""
    evidence: dict = field(default_factory=dict)

    def to_json(self, ctx=None) -> dict:
        from .expr import jsonable

        return {
            "parameter": jsonable(self.parameter),
            "verdict": self.verdict.value,
            "reason": self.reason,
            "evidence": jsonable(self.evidence, ctx),
        }


@dataclass
class TrivialityCertificate:
    criterion: str
    entries: list
    evidence: dict = field(default_factory=dict)
    replay: object = None  # callable re-running the check from the evidence

    @property
    def verdict(self) -> Verdict:
        verdicts = {e.verdict for e in self.entries}
        if Verdict.REJECTED in verdicts:
            return Verdict.REJECTED
        if verdicts == {Verdict.ACCEPTED}:
            return Verdict.ACCEPTED
        return Verdict.UNDETERMINED

    def verify(self) -> bool:
        """Recompute every accepted entry independently."""
        if self.replay is None:
            return True
        return all(self.replay(e) for e in self.entries if e.verdict == Verdict.ACCEPTED)

    def to_json(self, ctx=None) -> dict:
        from .expr import jsonable

        return {
            "criterion": self.criterion,
            "verdict": self.verdict.value,
            "evidence": jsonable(self.evidence, ctx),
            "samples": [e.to_json(ctx) for e in self.entries],
        }


# quasihomogeneous filtration criterion ----------------------------------------


def quasihomogeneous_type(f: Polynomial):
    """Primitive positive integer weights w and degree d with <w, a> = d on the support, or None."""
    if not f:
        raise InputError("the zero polynomial has no type")
    n = f.nvars
    rows = [[mpq(a) for a in e] + [-ONE] for e in f.exponents()]
    basis = nullspace(rows, n + 1)
    if len(basis) != 1:
        return None
    v = basis[0]
    if v[n] < 0:
        v = [-c for c in v]
    if any(c <= 0 for c in v):
        return None
    den = reduce(lambda a, b: a * b // gcd(a, b), (int(c.denominator) for c in v), 1)
    ints = [int(c * den) for c in v]
    g = reduce(gcd, ints)
    ints = [c // g for c in ints]
    return tuple(ints[:n]), ints[n]


def _x_filtration(p: Polynomial, w) -> object:
    """Weighted order in the first len(w) variables; later variables weigh 0."""
    if not p:
        return INFINITY
    return min(sum(a * b for a, b in zip(w, e)) for e in p.exponents())


def _is_isolated(f: Polynomial) -> bool:
    gens = [g for g in jacobian(f) if g]
    if not gens:
        return False
    try:
        mprimary_level(gens)
        return True
    except NotMPrimaryUpTo:
        return False


def check_theorem_triviality(fam: Family) -> TrivialityCertificate:
    """Filtration criterion for a deformation of a quasihomogeneous isolated germ."""
    f, theta = fam.base_and_direction()
    if not f:
        raise PreconditionError("the family vanishes at t = 0")
    qh = quasihomogeneous_type(f)
    if qh is None:
        raise PreconditionError("base germ f = F(x, 0) is not quasihomogeneous")
    w, d = qh
    if not _is_isolated(f):
        raise PreconditionError("base germ has a non-isolated singularity")
    spread = max(w) - min(w)
    bound = d + spread
    fil_theta = _x_filtration(theta, w)
    evidence = {
        "weight": list(w),
        "degree": d,
        "fil_theta": "infinity" if fil_theta is INFINITY else fil_theta,
        "required": bound,
    }
    entries = []
    for t in fam.samples:
        if fil_theta is not INFINITY and fil_theta < bound:
            entries.append(SampleVerdict(t, Verdict.REJECTED, f"fil(theta) = {fil_theta} < {bound}"))
            continue
        ft = fam.at(t)
        init = ft.initial_part(Weight(w))
        iso = gradient_isolation_check(ft, Weight(w))
        ev = {"initial_part": init, "initial_isolation": iso.value}
        if iso == Isolation.ISOLATED:
            entries.append(SampleVerdict(t, Verdict.ACCEPTED, "all conditions hold", ev))
        elif iso == Isolation.NOT_ISOLATED:
            entries.append(SampleVerdict(t, Verdict.REJECTED, "initial part has a non-isolated singularity", ev))
        else:
            entries.append(SampleVerdict(t, Verdict.UNDETERMINED, "initial part isolation undetermined", ev))

    def replay(entry: SampleVerdict) -> bool:
        ft = fam.at(entry.parameter)
        return (
            quasihomogeneous_type(f) == (w, d)
            and (fil_theta is INFINITY or _x_filtration(theta, w) >= bound)
            and gradient_isolation_check(ft, Weight(w)) == Isolation.ISOLATED
        )

    return TrivialityCertificate("quasihomogeneous-filtration", entries, evidence, replay)


# control functions -------------------------------------------------------------


@dataclass(frozen=True)
class RhoTerm:
    """a * |x^monomial|^2 * |df/dx_i|^(2 * power)."""

    power: int = 1
    coefficient: object = ONE
    monomial: tuple | None = None


def parse_rho_spec(text: str, nvars: int, ctx=None) -> list[RhoTerm]:
    """Comma list, one item per variable: ``k`` or ``k*monomial``; e.g. ``2,2,2*y``."""
    from .expr import parse

    items = [s.strip() for s in text.split(",")]
    if len(items) != nvars:
        raise InputError(f"rho spec needs {nvars} comma-separated items")
    out = []
    for item in items:
        head, _, mono = item.partition("*")
        if not head.isdigit() or int(head) < 1:
            raise InputError(f"bad rho power {head!r}")
        beta = None
        if mono:
            m = parse(mono, ctx) if ctx is not None else parse(mono)
            if len(m) != 1 or m.coefficient(next(iter(m.exponents()))) != 1:
                raise InputError(f"rho factor {mono!r} must be a monic monomial")
            beta = tuple(next(iter(m.exponents()))[:nvars])
        out.append(RhoTerm(int(head), ONE, beta))
    return out


def default_rho(nvars: int) -> list[RhoTerm]:
    return [RhoTerm() for _ in range(nvars)]


def _rho_parts(grads, spec):
    """(rho, [numerator factor of each gradient]) with rho = sum factor_i * g_i."""
    n = len(grads)
    rho = MixedPolynomial(n)
    factors = []
    for g, term in zip(grads, spec):
        hol = MixedPolynomial.holomorphic(g)
        anti = MixedPolynomial.antiholomorphic(g)
        scale = MixedPolynomial.modulus_monomial(term.monomial or (0,) * n).scale(term.coefficient)
        factor = scale * anti ** term.power * hol ** (term.power - 1)
        factors.append(factor)
        rho = rho + factor * hol
    return rho, factors


def _mixed_fil(p: MixedPolynomial, w):
    if not p:
        return INFINITY
    return min(sum(a * (b + c) for a, b, c in zip(w, nu, mu)) for nu, mu in p.terms)


def check_control_function(fam: Family, spec: list[RhoTerm] | None = None) -> TrivialityCertificate:
    """Thom-Levine vector field b_i / rho from a control function rho = sum factor_i * df/dx_i."""
    n = fam.nvars
    spec = spec or default_rho(n)
    if len(spec) != n:
        raise InputError("one rho term per variable is required")
    entries = []
    for t in fam.samples:
        entries.append(_control_at(fam, t, spec))

    def replay(entry: SampleVerdict) -> bool:
        again = _control_at(fam, entry.parameter, spec)
        return again.verdict == Verdict.ACCEPTED and again.evidence == entry.evidence

    return TrivialityCertificate("control-function", entries, {"rho": _describe_rho(spec)}, replay)


def _describe_rho(spec) -> list:
    return [
        {"power": s.power, "coefficient": str(s.coefficient), "monomial": list(s.monomial) if s.monomial else None}
        for s in spec
    ]


def _control_at(fam: Family, t, spec) -> SampleVerdict:
    n = fam.nvars
    ft = fam.at(t)
    grads = ft.gradient()
    dt = fam.parameter_derivative_at(t)
    rho, factors = _rho_parts(grads, spec)
    dt_mixed = MixedPolynomial.holomorphic(dt)
    numerators = [dt_mixed * fac for fac in factors]
    check = MixedPolynomial(n)
    for b, g in zip(numerators, grads):
        check = check + b * MixedPolynomial.holomorphic(g)
    if check != dt_mixed * rho:
        raise AssertionError("numerators do not reproduce df/dt * rho")
    if not rho:
        return SampleVerdict(t, Verdict.REJECTED, "control function vanishes identically")
    poly = polyhedron_from_points(sorted(rho.support()))
    vertices = [tuple(int(c) for c in v) for v in poly.vertices]
    axes_ok = all(any(v[j] and not any(v[k] for k in range(n) if k != j) for v in vertices) for j in range(n))
    evidence: dict = {"vertices": vertices}
    if not axes_ok:
        return SampleVerdict(t, Verdict.REJECTED, "Newton polyhedron of rho misses an axis", evidence)
    # isolation: on each compact face only the gradients of minimal weight survive
    iso = Isolation.ISOLATED
    for face in poly.compact_faces:
        w = face.weight
        active = []
        for g, term in zip(grads, spec):
            if not g:
                continue
            beta = term.monomial or (0,) * n
            fil = 2 * sum(a * b for a, b in zip(w, beta)) + 2 * term.power * _x_filtration(g, w)
            if fil == face.degree:
                active.append(g.initial_part(Weight(w)))
        verdict = torus_zero_free(active, w) if active else Isolation.NOT_ISOLATED
        if verdict != Isolation.ISOLATED:
            iso = Isolation.UNDETERMINED
            break
    evidence["isolation"] = iso.value
    facets = []
    ok = True
    failures = []
    for w, d in poly.common_degree_weights():
        fil_rho = _mixed_fil(rho, w)
        fil_b = [_mixed_fil(b, w) for b in numerators]
        bounds, exact = [], []
        for i, b in enumerate(numerators):
            if not b:
                continue
            if fil_b[i] <= d:
                ok = False
                failures.append(f"fil of numerator {i + 1} on weight {list(w)} is {fil_b[i]} <= {d}")
            for j in range(n):
                bounds.append(fil_b[i] + fil_rho - w[j])
                for conj in (False, True):
                    num = rho * b.diff(j, conj) - b * rho.diff(j, conj)
                    value = _mixed_fil(num, w)
                    exact.append(value)
                    if value < 2 * d:
                        ok = False
                        failures.append(f"derivative numerator has fil {value} < {2 * d} on weight {list(w)}")
        facets.append(
            {
                "weight": list(w),
                "degree": d,
                "fil_rho": fil_rho,
                "fil_numerators": ["infinity" if v is INFINITY else v for v in fil_b],
                "derivative_bound": min(bounds) if bounds else "infinity",
                "derivative_exact": min(exact) if exact else "infinity",
                "required": 2 * d,
            }
        )
    evidence["facets"] = facets
    if not ok:
        return SampleVerdict(t, Verdict.REJECTED, "; ".join(failures), evidence)
    if iso != Isolation.ISOLATED:
        return SampleVerdict(t, Verdict.UNDETERMINED, "rho is not certified Newton-isolated", evidence)
    return SampleVerdict(t, Verdict.ACCEPTED, "continuity and derivative bounds hold on every facet", evidence)


# constrained membership scheme -----------------------------------------------------


def check_constrained_membership_scheme(
    f: Polynomial, targets, w, minfil, degbound: int, allow_unit: bool = True
) -> TrivialityCertificate:
    """Each target in Jf with every cofactor of weighted order >= minfil."""
    gens = jacobian(f)
    mprimary_level([g for g in gens if g])
    w = w if isinstance(w, Weight) else Weight(w)
    entries = []
    certs = {}
    for p in targets:
        cert = constrained_membership(p, gens, w, minfil, degbound, allow_unit)
        if cert is None:
            entries.append(SampleVerdict(p, Verdict.REJECTED, f"no certificate with cofactor degree <= {degbound}"))
            continue
        certs[id(p)] = cert
        entries.append(
            SampleVerdict(
                p,
                Verdict.ACCEPTED,
                "exact identity found",
                {
                    "cofactors": cert.cofactors,
                    "unit": cert.unit,
                    "cofactor_filtrations": [
                        "infinity" if v is INFINITY else v for v in cert.notes["cofactor_filtrations"]
                    ],
                },
            )
        )

    def replay(entry: SampleVerdict) -> bool:
        cert = certs[id(entry.parameter)]
        fils = [h.filtration(w) for h in cert.cofactors if h]
        return cert.verify() and all(v >= minfil for v in fils)

    evidence = {"weight": [str(a) for a in w], "minfil": minfil, "degbound": degbound}
    return TrivialityCertificate("constrained-membership", entries, evidence, replay)


# deformation to J10 ---------------------------------------------------------------


J10_DEGREE = 6
JET = J10_DEGREE - 1  # monomials of degree >= 6 have weighted order >= 6
SHEAR_CONSTANTS = (ONE, -ONE, I, -I, mpq(1, 2), mpq(-1, 2))


@dataclass
class Move:
    label: str
    images: list | None = None  # simultaneous substitution
    addend: Polynomial | None = None  # deformation term

    def apply(self, g: Polynomial) -> Polynomial:
        if self.images is not None:
            moved = [j for j, im in enumerate(self.images) if im != Polynomial.variable(g.nvars, j)]
            if len(moved) == 1:
                j = moved[0]
                g = g.substitute(j, self.images[j], limit=JET)
            else:
                g = g.compose(self.images, limit=JET)
        if self.addend is not None:
            g = g + self.addend
        return g.truncate(JET)


@dataclass
class J10Witness:
    """start -> moves -> presentation with weighted order >= 6.

    When ``split_weights`` is set the presentation has a nondegenerate
    quadratic part, and the order is checked on its splitting residual.
    """

    start: Polynomial
    moves: list
    presentation: Polynomial
    weights: tuple
    squares: int
    split_weights: tuple | None = None
    notes: list = field(default_factory=list)

    def checked_part(self) -> Polynomial:
        if self.split_weights is None:
            return self.presentation
        residual, _ = critical_residual(self.presentation, JET)
        return residual

    def verify(self) -> bool:
        g = self.start.truncate(JET)
        for m in self.moves:
            g = m.apply(g)
        if g != self.presentation.truncate(JET):
            return False
        w = self.weights if self.split_weights is None else self.split_weights
        if sorted(w)[:2] != [1, 2] or any(a != 3 for a in sorted(w)[2:]):
            return False
        return _x_filtration(self.checked_part(), w) >= J10_DEGREE

    def to_json(self, ctx=None) -> dict:
        out = {
            "start": str(self.start),
            "moves": [m.label for m in self.moves],
            "presentation": str(self.presentation),
            "weights": list(self.weights),
            "extra_squares": self.squares,
            "notes": list(self.notes),
        }
        if self.split_weights is not None:
            out["split_residual"] = str(self.checked_part())
            out["split_residual_weights"] = list(self.split_weights)
        return out


def _weight_assignments(n: int):
    """Weights with one variable of weight 2, one of weight 1, the rest 3."""
    for i2, i1 in permutations(range(n), 2):
        w = [3] * n
        w[i2], w[i1] = 2, 1
        yield i2, i1, tuple(w)


def _shear(n: int, target: int, source: int, power: int, c) -> Move:
    images = Polynomial.variables(n)
    e = [0] * n
    e[source] = power
    images[target] = images[target] + Polynomial.monomial(e, c)
    names = "xyzwuvsr"
    src = names[source] + (f"^{power}" if power > 1 else "")
    return Move(f"{names[target]} -> {names[target]} + ({format_number(c)})*{src}", images)


def _low_coefficients(g: Polynomial, w) -> dict:
    return {e: c for e, c in g.items() if sum(a * b for a, b in zip(w, e)) < J10_DEGREE}


def _obstruction_roots(evaluate, w, degree: int) -> list:
    """Gaussian rational c for which evaluate(c) has no monomial of order < 6.

    The coefficients of evaluate(c) must be polynomials in c of degree at
    most ``degree``; one extra sample checks the interpolation.
    """
    samples = [mpq(k) for k in range(degree + 2)]
    values = [_low_coefficients(evaluate(c), w) for c in samples]
    monos = sorted({e for v in values for e in v})
    vander = [[s**k for k in range(degree + 1)] for s in samples[:-1]]
    common = None
    for e in monos:
        coeffs = solve(vander, [v.get(e, ZERO) for v in values[:-1]], degree + 1)
        if sum(c * samples[-1] ** k for k, c in enumerate(coeffs)) != values[-1].get(e, ZERO):
            return []
        poly = upoly_trim(coeffs)
        if not poly:
            continue
        common = poly if common is None else upoly_gcd(common, poly)
        if len(common) <= 1:
            return []
    if common is None:
        return []
    if len(common) == 2:
        return [-common[0] / common[1]]
    if len(common) == 3:
        a, b, c = common[2], common[1], common[0]
        root = sqrt_exact(b * b - 4 * a * c)
        if root is None:
            return []
        return sorted({(-b + root) / (2 * a), (-b - root) / (2 * a)}, key=str)
    return []


def _search_presentation(g: Polynomial):
    """Search permutations and the shear catalog for weighted order >= 6."""
    n = g.nvars
    for i2, i1, w in _weight_assignments(n):
        if _x_filtration(g, w) >= J10_DEGREE:
            return [], g, w
        x_shear = lambda c, i2=i2, i1=i1: _shear(n, i2, i1, 1, c)  # noqa: E731
        x_consts = list(SHEAR_CONSTANTS) + _obstruction_roots(lambda c: x_shear(c).apply(g), w, JET)
        for c in x_consts:
            move = x_shear(c)
            h = move.apply(g)
            if _x_filtration(h, w) >= J10_DEGREE:
                return [move], h, w
        for k in range(n):
            if k in (i2, i1):
                continue
            z_shear = lambda c, k=k, i1=i1: _shear(n, k, i1, 2, c)  # noqa: E731
            z_consts = list(SHEAR_CONSTANTS) + _obstruction_roots(lambda c: z_shear(c).apply(g), w, 2 * JET)
            sheared = [(z_shear(c), None) for c in z_consts]
            for i, (move, _) in enumerate(sheared):
                h = move.apply(g)
                sheared[i] = (move, h)
                if _x_filtration(h, w) >= J10_DEGREE:
                    return [move], h, w
            for move, h in sheared:
                for d in SHEAR_CONSTANTS:
                    second = x_shear(d)
                    h2 = second.apply(h)
                    if _x_filtration(h2, w) >= J10_DEGREE:
                        return [move, second], h2, w
    return None


def _u12_script(g: Polynomial, t=ONE) -> list[Move]:
    """Deformation of U12 with the 1/(2t^2) substitution, for three variables."""
    n = 3
    x, y, z = Polynomial.variables(n)
    flip = Move("y -> -y", [x, -y, z])
    addend = (x + y) ** 2 * (t * t) + (x + y) * z * z * (2 * t)
    deform = Move(f"add t^2*(x + y)^2 + 2*t*(x + y)*z^2 at t = {t}", None, addend)
    shift = Move("x -> x - y", [x - y, y, z])
    q = (x * x - x * y * 3 + y * y * 3 + z * z * (2 * t)).scale(ONE / (2 * t * t))
    complete = Move("x -> x - (x^2 - 3*x*y + 3*y^2 + 2*t*z^2)/(2*t^2)", [x - q, y, z])
    return [flip, deform, shift, complete]


def _corank4_moves(g: Polynomial, m, l, t=ONE):
    """Coordinate change and deformation for corank 4 cubics of diagonal type."""
    n = 4
    x, y, z, w = Polynomial.variables(n)
    a = g.coefficient((1, 1, 1, 0))
    change = Move(
        f"x -> x - z + ({format_number(m)})*w + ({format_number(a / 3)})*y, z -> x + z, w -> w + ({format_number(l)})*x",
        [x - z + w.scale(m) + y.scale(a / 3), y, x + z, w + x.scale(l)],
    )
    deform = Move(f"add t*x^2 + t*w^2 at t = {t}", None, (x * x + w * w).scale(t))
    return [change, deform]


def _diagonal_cubic(g: Polynomial) -> bool:
    cubic = g.homogeneous_part(3)
    allowed = {(3, 0, 0, 0), (0, 3, 0, 0), (0, 0, 3, 0), (0, 0, 0, 3)}
    if any(cubic.coefficient(e) != 1 for e in allowed):
        return False
    return all(e in allowed or sorted(e) == [0, 1, 1, 1] for e in cubic.exponents())


def _corank4_residual(g: Polynomial, m, l):
    moves = _corank4_moves(g, m, l)
    h = g
    for mv in moves:
        h = mv.apply(h)
    residual, change = critical_residual(h, JET)
    return moves, h, residual if change.corank == 2 else None


def _corank4_search(g: Polynomial):
    if not _diagonal_cubic(g):
        return None
    for _, _, w in _weight_assignments(2):
        for l in (ZERO,) + SHEAR_CONSTANTS:

            def residual_at(m, l=l):
                res = _corank4_residual(g, m, l)[2]
                return res if res is not None else Polynomial.one(2)

            for m in _obstruction_roots(residual_at, w, JET) + [ZERO, *SHEAR_CONSTANTS]:
                moves, h, residual = _corank4_residual(g, m, l)
                if residual is not None and _x_filtration(residual, w) >= J10_DEGREE:
                    return moves, h, w
    return None


def check_deforms_to_j10(f: Polynomial):
    """A J10 adjacency witness, or None when the move search finds none.

    None is not a proof of non-adjacency.
    """
    if f.constant_term() or f.linear_part():
        raise PreconditionError("germ must lie in m^2")
    _, corank = hessian_rank(f)
    if corank < 2:
        return None
    residual, _ = critical_residual(f, JET)
    squares = f.nvars - corank
    if corank == 4:
        found = _corank4_search(residual)
        if found is None:
            return None
        moves, h, w = found
        witness = J10Witness(
            residual,
            moves,
            h,
            (3, w[0], w[1], 3),
            squares,
            w,
            ["the move list misses cubic parameters in a proper algebraic subset; this witness covers this germ only"],
        )
        if not witness.verify():
            raise AssertionError("J10 witness failed to re-verify")
        return witness
    if corank > 4:
        return None
    found = _search_presentation(residual)
    notes = []
    if found is None and corank == 3:
        script = _u12_script(residual)
        h = residual
        for m in script:
            h = m.apply(h)
        for _, _, w in _weight_assignments(3):
            if _x_filtration(h, w) >= J10_DEGREE:
                found = (script, h, w)
                notes.append("deformation parameter sampled at t = 1; the same moves work for every t != 0")
                break
    if found is None:
        return None
    moves, h, w = found
    witness = J10Witness(residual, moves, h, w, squares, None, notes)
    if not witness.verify():
        raise AssertionError("J10 witness failed to re-verify")
    return witness
