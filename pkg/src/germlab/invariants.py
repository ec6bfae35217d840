"""The invariant fingerprint of a germ and pairwise comparison."""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .errors import NotIsolatedError, NotMPrimaryUpTo, PreconditionError
from .jets import DEFAULT_MAX_N, DEFAULT_SEED, count_projective_points, hilbert_data, jacobian, _find_level
from .newton import MAX_DIM, Isolation, lct_monomial, monomialize_ideal, nondegenerate_on_faces
from .poly import Polynomial, hessian_rank
from .splitting import critical_residual

INITIAL_JET = 7


def rank_at_zero(f: Polynomial) -> int:
    """Rank of the differential at the origin: 1 when f has a linear term."""
    if f.constant_term():
        raise PreconditionError("germ does not vanish at the origin")
    return 1 if f.linear_part() else 0


@dataclass(frozen=True)
class SigmaDescriptor:
    """Singular locus of the tangent cone, as a cone through the origin."""

    affine_dim: int
    line_count: int | None
    scheme_degree: int

    def proxy(self) -> tuple:
        """The part compared between germs: dimension, then lines or degree."""
        return (self.affine_dim, self.line_count if self.affine_dim == 1 else self.scheme_degree)

    def to_json(self, ctx=None) -> dict:
        return {
            "affine_dim": self.affine_dim,
            "line_count": self.line_count,
            "scheme_degree": self.scheme_degree,
        }


TRIVIAL_SIGMA = SigmaDescriptor(0, None, 0)


def sigma_of_form(h: Polynomial, seed: int = DEFAULT_SEED) -> SigmaDescriptor:
    """Descriptor of the common zeros of the partials of a homogeneous form."""
    gens = [g for g in h.gradient() if g]
    if not gens:
        raise PreconditionError("form has no nonzero partial derivative")
    pdim, degree = hilbert_data(gens, h.nvars)
    if pdim < 0:
        return TRIVIAL_SIGMA
    lines = count_projective_points(gens, h.nvars, seed=seed) if pdim == 0 else None
    return SigmaDescriptor(pdim + 1, lines, degree)


def sigma_descriptor(f: Polynomial, seed: int = DEFAULT_SEED) -> SigmaDescriptor:
    """Descriptor for the lowest homogeneous part of f."""
    if f.constant_term() or f.linear_part():
        raise PreconditionError("sigma needs a germ in m^2")
    if not f:
        raise PreconditionError("sigma of the zero germ is undefined")
    return sigma_of_form(f.homogeneous_part(f.order()), seed)


@dataclass(frozen=True)
class LctValue:
    value: mpq | None
    status: str  # nondegenerate, undetermined, unavailable
    squares: int = 0

    @property
    def certified(self) -> bool:
        return self.status == "nondegenerate"

    def to_json(self, ctx=None) -> dict:
        return {
            "value": None if self.value is None else str(self.value),
            "status": self.status,
            "squares_added": self.squares,
        }


def lct_jacobian(f: Polynomial) -> LctValue:
    """Newton-polyhedron lct of the Jacobian ideal, flagged by face nondegeneracy.

    A nondegenerate flag means the value is the true threshold; otherwise it
    is the threshold of the associated monomial ideal, an upper bound.
    """
    if f.constant_term() or f.linear_part():
        raise PreconditionError("lct needs a germ in m^2")
    if f.nvars > MAX_DIM:
        return LctValue(None, "unavailable")
    gens = jacobian(f)
    if not gens:
        raise NotIsolatedError("constant germ")
    value = lct_monomial(monomialize_ideal(gens))
    verdict, _ = nondegenerate_on_faces(gens)
    return LctValue(value, "nondegenerate" if verdict == Isolation.ISOLATED else "undetermined")


@dataclass(frozen=True)
class Residual:
    """Jet of the splitting residual, certified to determine the germ."""

    jet: Polynomial
    jet_bound: int
    level: int
    milnor: int
    squares: int


def certified_residual(f: Polynomial, max_jet: int = DEFAULT_MAX_N) -> Residual:
    """Residual jet j^k g with k >= N + 1, N the m-primary level of J(j^k g).

    Then m^(k+1) lies in m^2 J, so j^k g is k-determined and carries every
    invariant of the germ.
    """
    if f.constant_term() or f.linear_part():
        raise PreconditionError("germ must lie in m^2")
    if not f:
        raise NotIsolatedError("the zero germ is not isolated")
    k = INITIAL_JET
    while True:
        jet, change = critical_residual(f, k)
        c = change.corank
        squares = f.nvars - c
        if c == 0:
            return Residual(jet, k, 0, 1, squares)
        exact = squares == 0 and f.degree() <= k
        gens = jacobian(jet)
        try:
            if not gens:
                raise NotMPrimaryUpTo(max_jet, proven=True, witness="residual jet is constant")
            level, space, ech = _find_level(gens, max_jet)
        except NotMPrimaryUpTo as exc:
            if exc.proven and exact:
                raise NotIsolatedError(f"singularity is not isolated ({exc.witness})") from None
            if k >= max_jet:
                raise NotMPrimaryUpTo(max_jet, witness="residual jet not finitely determined") from None
            k = min(2 * k, max_jet)
            continue
        if k >= level + 1:
            milnor = space.low_count - sum(1 for col in ech.pivot_columns() if col < space.low_count)
            return Residual(jet.truncate(k), k, level, milnor, squares)
        if level + 1 > max_jet:
            raise NotMPrimaryUpTo(max_jet, witness="determinacy bound exceeds the jet limit")
        k = level + 1


@dataclass(frozen=True)
class GermFingerprint:
    multiplicity: int
    residual_multiplicity: int
    corank: int
    milnor: int
    sigma: SigmaDescriptor
    lct: LctValue | None

    def to_json(self, ctx=None) -> dict:
        return {
            "multiplicity": self.multiplicity,
            "residual_multiplicity": self.residual_multiplicity,
            "corank": self.corank,
            "milnor": self.milnor,
            "sigma": self.sigma.to_json(),
            "lct": None if self.lct is None else self.lct.to_json(),
        }


def fingerprint(f: Polynomial, max_jet: int = DEFAULT_MAX_N, with_lct: bool = True, seed: int = DEFAULT_SEED):
    """All invariants of an isolated germ, computed on its certified residual."""
    _, corank = hessian_rank(f)
    res = certified_residual(f, max_jet)
    mult = f.order()
    if corank == 0:
        lct = LctValue(mpq(f.nvars), "nondegenerate", f.nvars) if with_lct else None
        return GermFingerprint(mult, 2, 0, 1, TRIVIAL_SIGMA, lct)
    jet = res.jet
    sigma = sigma_of_form(jet.homogeneous_part(jet.order()), seed)
    lct = None
    if with_lct:
        inner = lct_jacobian(jet)
        value = None if inner.value is None else inner.value + res.squares
        lct = LctValue(value, inner.status, res.squares)
    return GermFingerprint(mult, jet.order(), corank, res.milnor, sigma, lct)


@dataclass(frozen=True)
class Comparison:
    distinguished: bool
    by: str | None
    left: object = None
    right: object = None
    note: str = ""

    def to_json(self, ctx=None) -> dict:
        out = {"verdict": "distinguished" if self.distinguished else "not-distinguished", "by": self.by}
        if self.note:
            out["note"] = self.note
        return out


COMPARISON_ORDER = ("milnor", "multiplicity", "corank", "sigma", "lct")


def compare_fingerprints(a: GermFingerprint, b: GermFingerprint) -> Comparison:
    fields = {
        "milnor": (a.milnor, b.milnor),
        "multiplicity": (a.residual_multiplicity, b.residual_multiplicity),
        "corank": (a.corank, b.corank),
        "sigma": (a.sigma.proxy(), b.sigma.proxy()),
    }
    for name in COMPARISON_ORDER[:-1]:
        left, right = fields[name]
        if left != right:
            return Comparison(True, name, left, right)
    if a.lct is not None and b.lct is not None and a.lct.value != b.lct.value:
        if a.lct.certified and b.lct.certified:
            return Comparison(True, "lct", a.lct.value, b.lct.value)
        return Comparison(False, None, a.lct.value, b.lct.value, "lct values differ but are not both certified")
    return Comparison(False, None)


def compare_germs(f: Polynomial, g: Polynomial, max_jet: int = DEFAULT_MAX_N) -> Comparison:
    """First invariant, in a fixed order, that separates two germs."""
    return compare_fingerprints(fingerprint(f, max_jet), fingerprint(g, max_jet))
