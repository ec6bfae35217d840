"""Local-ring questions answered by truncated-jet linear algebra.

Everything here rests on one fact: once m^N lies in an ideal J (certified by
Nakayama from m^N within J + m^(N+1)), membership in J and the colength of J
are decided by polynomials of degree below N.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import comb

from .errors import InputError, NotMPrimaryUpTo, PreconditionError, ResourceBoundError
from .linalg import Echelon, determinant, upoly_gcd, upoly_squarefree_degree
from .poly import INFINITY, Polynomial, Weight, monomials_of_degree, monomials_up_to
from .qi import ZERO

DEFAULT_MAX_N = 30
DEFAULT_SEED = 1729


def _check_ring(gens) -> int:
    gens = list(gens)
    if not gens:
        raise InputError("need at least one generator")
    n = gens[0].nvars
    if any(g.nvars != n for g in gens):
        raise InputError("generators live in different rings")
    return n


def axis_obstruction(gens, nvars: int) -> int | None:
    """Index of a coordinate axis on which every generator vanishes, if any."""
    for j in range(nvars):
        hit = False
        for g in gens:
            for e in g.exponents():
                if e[j] and sum(e) == e[j]:
                    hit = True
                    break
            if hit:
                break
        if not hit:
            return j
    return None


class _JetSpace:
    """Column numbering for monomials of degree <= N, degree ascending."""

    def __init__(self, nvars: int, top: int):
        self.nvars = nvars
        self.top = top
        self.monomials = monomials_up_to(nvars, top)
        self.index = {e: i for i, e in enumerate(self.monomials)}
        self.low_count = comb(top - 1 + nvars, nvars) if top > 0 else 0

    def vector(self, p: Polynomial) -> dict:
        idx = self.index
        return {idx[e]: c for e, c in p.items() if sum(e) <= self.top}


def _truncated_span(gens, nvars: int, top: int) -> tuple[_JetSpace, Echelon]:
    space = _JetSpace(nvars, top)
    rows = []
    for g in gens:
        if not g:
            continue
        low = g.order()
        for d in range(top - low + 1):
            for e in monomials_of_degree(nvars, d):
                shifted = Polynomial.monomial(e).mul_truncated(g, top)
                if shifted:
                    rows.append(space.vector(shifted))
    # sparse rows first keeps the pivots sparse and limits coefficient growth
    rows.sort(key=lambda r: (len(r), -min(r)))
    ech = Echelon()
    for r in rows:
        ech.add(r)
    return space, ech


def _level_holds(gens, nvars: int, top: int):
    space, ech = _truncated_span(gens, nvars, top)
    high = sum(1 for c in ech.pivot_columns() if c >= space.low_count)
    return high == len(space.monomials) - space.low_count, space, ech


LINEAR_PROBE_LIMIT = 12


def _find_level(gens, max_n: int):
    """(level, space, echelon at that level); space and echelon are None at level 0."""
    gens = list(gens)
    nvars = _check_ring(gens)
    if not any(gens):
        raise InputError("all generators are zero")
    if nvars == 0 or any(g.constant_term() for g in gens):
        return 0, None, None
    axis = axis_obstruction(gens, nvars)
    if axis is not None:
        raise NotMPrimaryUpTo(max_n, proven=True, witness=f"every generator vanishes on axis {axis + 1}")
    # small levels are probed one by one; beyond that, doubling then bisection
    # (the condition is monotone in N)
    start = min(g.order() for g in gens if g)
    lo = start - 1
    probe = start
    while probe <= min(max_n, LINEAR_PROBE_LIMIT):
        holds, space, ech = _level_holds(gens, nvars, probe)
        if holds:
            return probe, space, ech
        lo = probe
        probe += 1
    if probe > max_n:
        raise NotMPrimaryUpTo(max_n)
    while True:
        holds, space, ech = _level_holds(gens, nvars, probe)
        if holds:
            break
        if probe >= max_n:
            raise NotMPrimaryUpTo(max_n)
        lo, probe = probe, min(2 * probe, max_n)
    hi, found = probe, (space, ech)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        holds, space, ech = _level_holds(gens, nvars, mid)
        if holds:
            hi, found = mid, (space, ech)
        else:
            lo = mid
    return hi, found[0], found[1]


def mprimary_level(gens, max_n: int = DEFAULT_MAX_N) -> int:
    """Least N with m^N inside the ideal, certified via m^N in J + m^(N+1)."""
    return _find_level(gens, max_n)[0]


def colength(gens, max_n: int = DEFAULT_MAX_N) -> int:
    """dim of the local algebra modulo an m-primary ideal."""
    level, space, ech = _find_level(gens, max_n)
    if level == 0:
        return 0
    low_pivots = sum(1 for c in ech.pivot_columns() if c < space.low_count)
    return space.low_count - low_pivots


def jacobian(f: Polynomial) -> list[Polynomial]:
    return [g for g in f.gradient() if g]


def milnor_number(f: Polynomial, max_n: int = DEFAULT_MAX_N) -> int:
    """Milnor number; 0 for a germ with nonzero linear part."""
    if f.nvars == 0:
        return 0
    gens = jacobian(f)
    if not gens:
        raise NotMPrimaryUpTo(max_n, proven=True, witness="constant germ")
    return colength(gens, max_n)


# membership -----------------------------------------------------------------


@dataclass
class MembershipCertificate:
    """u * target = sum(cofactors[i] * generators[i]) with u(0) = 1."""

    target: Polynomial
    generators: list
    cofactors: list
    unit: Polynomial
    notes: dict = field(default_factory=dict)

    def residual(self) -> Polynomial:
        total = -(self.unit * self.target)
        for h, g in zip(self.cofactors, self.generators):
            total = total + h * g
        return total

    def verify(self) -> bool:
        return self.unit.constant_term() == 1 and self.residual().is_zero()


def _decide_locally(p: Polynomial, gens, max_n: int) -> bool:
    level, space, ech = _find_level(gens, max_n)
    if level == 0:
        return True
    low = {c: v for c, v in space.vector(p.truncate(level - 1)).items()}
    row, _ = ech.reduce(low)
    # columns of degree N may remain; they lie in m^N, which is inside J
    return all(c >= space.low_count for c in row)


def _search_certificate(p, gens, cofactor_monomials, unit_monomials, total_degree):
    """Solve u*p = sum h_i g_i over the given monomial supports (exact polynomials)."""
    nvars = p.nvars
    columns: dict = {}

    def vec(q: Polynomial) -> dict:
        out = {}
        for e, c in q.items():
            col = columns.setdefault(e, len(columns))
            out[col] = c
        return out

    ech = Echelon(track=True)
    for i, g in enumerate(gens):
        for e in cofactor_monomials[i]:
            ech.add(vec(Polynomial.monomial(e) * g), ("g", i, e))
    for e in unit_monomials:
        ech.add(vec(-(Polynomial.monomial(e) * p)), ("u", e))
    combo = ech.express(vec(p))
    if combo is None:
        return None
    cofactors = [dict() for _ in gens]
    unit = {(0,) * nvars: 1}
    for label, c in combo.items():
        if label[0] == "g":
            _, i, e = label
            cofactors[i][e] = c
        else:
            unit[label[1]] = c
    return (
        [Polynomial(nvars, h) for h in cofactors],
        Polynomial(nvars, unit),
    )


def ideal_membership(p: Polynomial, gens, max_n: int = DEFAULT_MAX_N, max_extra: int = 8):
    """Certificate for p in the local ideal generated by ``gens``, or None.

    Membership is decided at the certified jet level.  The certificate is an
    exact polynomial identity u*p = sum h_i g_i; a unit u is needed when the
    generators have zeros away from the origin.
    """
    gens = list(gens)
    nvars = _check_ring(gens)
    if p.nvars != nvars:
        raise InputError("target and generators live in different rings")
    if not p:
        return MembershipCertificate(p, gens, [Polynomial.zero(nvars) for _ in gens], Polynomial.one(nvars))
    if not _decide_locally(p, gens, max_n):
        return None
    level = max(mprimary_level(gens, max_n), p.degree())
    top_gen = max(g.degree() for g in gens if g)
    for extra in range(max_extra + 1):
        for with_unit in (False, True):
            total = level + top_gen + extra
            cof = [
                [e for e in monomials_up_to(nvars, total - g.degree())] if g else []
                for g in gens
            ]
            units = []
            if with_unit:
                units = [e for e in monomials_up_to(nvars, total - p.degree()) if sum(e) > 0]
            found = _search_certificate(p, gens, cof, units, total)
            if found is not None:
                cofactors, unit = found
                cert = MembershipCertificate(p, gens, cofactors, unit, {"degree_bound": total})
                if not cert.verify():
                    raise AssertionError("membership certificate failed to re-verify")
                return cert
    raise ResourceBoundError(
        f"member locally but no certificate with total degree <= {level + top_gen + max_extra}"
    )


def constrained_membership(p: Polynomial, gens, w, minfil, degbound: int, allow_unit: bool = True):
    """Certificate with every cofactor of w-filtration >= minfil and degree <= degbound.

    Returns None when no such certificate exists within the bound; that says
    nothing about larger cofactor degrees.
    """
    gens = list(gens)
    nvars = _check_ring(gens)
    w = w if isinstance(w, Weight) else Weight(w)
    if degbound < p.degree():
        raise InputError("degree bound below the target degree")
    admissible = [e for e in monomials_up_to(nvars, degbound) if w.of(e) >= minfil]
    cof = [admissible if g else [] for g in gens]
    total = degbound + max(g.degree() for g in gens if g)
    attempts = [False, True] if allow_unit else [False]
    for with_unit in attempts:
        units = []
        if with_unit:
            units = [e for e in monomials_up_to(nvars, degbound) if sum(e) > 0]
        found = _search_certificate(p, gens, cof, units, total)
        if found is not None:
            cofactors, unit = found
            cert = MembershipCertificate(
                p, gens, cofactors, unit, {"degree_bound": degbound, "minfil": minfil}
            )
            if not cert.verify():
                raise AssertionError("membership certificate failed to re-verify")
            cert.notes["cofactor_filtrations"] = [
                h.filtration(w) if h else INFINITY for h in cofactors
            ]
            return cert
    return None


# homogeneous ideals -----------------------------------------------------------


def _graded_span(gens, nvars: int, d: int, column_order=None) -> tuple[list, Echelon]:
    monos = monomials_of_degree(nvars, d)
    if column_order is not None:
        monos = sorted(monos, key=column_order)
    index = {e: i for i, e in enumerate(monos)}
    ech = Echelon()
    for g in gens:
        gd = g.degree()
        if gd > d:
            continue
        for e in monomials_of_degree(nvars, d - gd):
            prod = Polynomial.monomial(e) * g
            ech.add({index[k]: c for k, c in prod.items()})
    return monos, ech


def hilbert_function(gens, nvars: int, d: int) -> int:
    monos, ech = _graded_span(gens, nvars, d)
    return len(monos) - len(ech)


def _check_homogeneous(gens):
    for g in gens:
        if not g.is_homogeneous():
            raise InputError("generator is not homogeneous")


def hilbert_data(gens, nvars: int | None = None, bound: int | None = None) -> tuple[int, int]:
    """(projective dimension, degree) of the projective scheme of a homogeneous ideal.

    The dimension is -1 for the empty scheme, in which case the degree is 0.
    """
    gens = [g for g in gens if g]
    if nvars is None:
        nvars = _check_ring(gens)
    _check_homogeneous(gens)
    if not gens:
        return nvars - 1, 1
    top = bound if bound is not None else 2 * max(g.degree() for g in gens) + 6
    values = [hilbert_function(gens, nvars, d) for d in range(top + 1)]
    for p in range(-1, nvars):
        window = values[-(p + 3):] if p >= 0 else values[-2:]
        if p == -1:
            if all(v == 0 for v in window):
                return -1, 0
            continue
        diffs = list(window)
        for _ in range(p):
            diffs = [b - a for a, b in zip(diffs, diffs[1:])]
        if len(set(diffs)) == 1 and diffs[0] > 0:
            return p, diffs[0]
    raise ResourceBoundError(f"Hilbert polynomial not stable by degree {top}")


def _random_invertible(n: int, rng: random.Random):
    while True:
        mat = [[rng.randint(-20, 20) for _ in range(n)] for _ in range(n)]
        if determinant(mat):
            return mat


def _linear_change(gens, mat):
    n = len(mat)
    images = [Polynomial(n, {tuple(int(k == j) for k in range(n)): mat[i][j] for j in range(n)}) for i in range(n)]
    return [g.compose(images) for g in gens]


def _binary_forms_gcd_roots(forms) -> tuple[int, int]:
    """(degree, number of distinct projective roots) of the gcd of binary forms."""
    forms = [f for f in forms if f]
    if not forms:
        raise ValueError("no forms")
    min_y = min(min(e[1] for e in f.exponents()) for f in forms)
    g = []
    for f in forms:
        uni = [ZERO] * (f.degree() + 1)
        for e, c in f.items():
            uni[e[0]] = c
        g = upoly_gcd(g, uni)
    # a binary form F = y^v * G with y not dividing G: roots of G(x, 1) and, if v > 0, infinity
    affine_degree = len(g) - 1
    distinct = upoly_squarefree_degree(g) if affine_degree > 0 else 0
    return affine_degree + min_y, distinct + (1 if min_y else 0)


def count_projective_points(gens, nvars: int | None = None, seed: int = DEFAULT_SEED, attempts: int = 5) -> int:
    """Distinct complex zeros of a homogeneous ideal with finite projective scheme.

    After a random integer change of coordinates the zeros project injectively
    to the line of the first two coordinates; the eliminant is the gcd of the
    degree-D ideal elements free of the other variables, and its distinct
    roots are counted through its squarefree part.
    """
    gens = [g for g in gens if g]
    if nvars is None:
        nvars = _check_ring(gens)
    _check_homogeneous(gens)
    dim, degree = hilbert_data(gens, nvars)
    if dim == -1:
        return 0
    if dim != 0:
        raise PreconditionError(f"projective scheme has dimension {dim}, not 0")
    if nvars == 1:
        return 1
    if nvars == 2:
        return _binary_forms_gcd_roots(gens)[1]
    rng = random.Random(seed)
    top = 2 * max(g.degree() for g in gens) + 6 + degree
    seen = []

    def eliminated_last(e):
        # monomials in the eliminated variables come first, so rows led by
        # columns free of them span the eliminant
        return (not any(e[2:]), e)

    for _ in range(attempts):
        moved = _linear_change(gens, _random_invertible(nvars, rng))
        monos, ech = _graded_span(moved, nvars, top, column_order=eliminated_last)
        forms = []
        for row in ech.pivots.values():
            if not any(monos[min(row)][2:]):
                forms.append(Polynomial(2, {monos[c][:2]: v for c, v in row.items()}))
        if not forms:
            continue
        elim_degree, distinct = _binary_forms_gcd_roots(forms)
        if elim_degree == degree:
            return distinct
        if (elim_degree, distinct) in seen:
            return distinct
        seen.append((elim_degree, distinct))
    raise ResourceBoundError(f"projection retries exhausted after {attempts} attempts")
