"""Exact polynomials and mixed polynomials over the Gaussian rationals.

A ``Polynomial`` maps exponent tuples to nonzero coefficients.  A
``MixedPolynomial`` does the same for pairs ``(nu, mu)`` standing for
``x^nu * conj(x)^mu``.  Both are immutable values.
"""

from __future__ import annotations

from functools import total_ordering
from itertools import combinations_with_replacement
from operator import add

from gmpy2 import mpq

from .errors import InputError, PreconditionError
from .qi import ONE, ZERO, as_number, conj, is_real

MAX_VARS = 8


@total_ordering
class _Infinity:
    """Filtration of the zero polynomial: above every rational, absorbing under +."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("germlab-infinity")

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        if other is self:
            raise ArithmeticError("inf - inf")
        return self

    def __repr__(self):
        return "INFINITY"

    __str__ = __repr__


INFINITY = _Infinity()


def _check_nvars(nvars: int) -> None:
    if not 0 <= nvars <= MAX_VARS:
        raise InputError(f"number of variables must be between 0 and {MAX_VARS}, got {nvars}")


class Weight:
    """Positive rational weights, one per variable."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        values = tuple(mpq(e) for e in entries)
        if any(v <= 0 for v in values):
            raise InputError("weights must be positive")
        self.entries = values

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __eq__(self, other):
        return isinstance(other, Weight) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "Weight(" + ", ".join(str(e) for e in self.entries) + ")"

    def of(self, exponent) -> mpq:
        return sum((w * a for w, a in zip(self.entries, exponent)), ZERO)


def _as_weight(w) -> Weight:
    return w if isinstance(w, Weight) else Weight(w)


def _degree(e) -> int:
    return sum(e)


class Polynomial:
    """Multivariate polynomial with exact Q(i) coefficients."""

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms=None):
        _check_nvars(nvars)
        clean = {}
        if terms:
            items = terms.items() if hasattr(terms, "items") else terms
            for exp, coeff in items:
                exp = tuple(int(a) for a in exp)
                if len(exp) != nvars or any(a < 0 for a in exp):
                    raise InputError(f"bad exponent vector {exp} for {nvars} variables")
                c = as_number(coeff)
                if c:
                    c = clean.get(exp, ZERO) + c
                    if c:
                        clean[exp] = c
                    else:
                        clean.pop(exp, None)
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> Polynomial:
        obj = object.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        obj._hash = None
        return obj

    # constructors --------------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> Polynomial:
        _check_nvars(nvars)
        return cls._raw(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> Polynomial:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def one(cls, nvars: int) -> Polynomial:
        return cls.constant(nvars, ONE)

    @classmethod
    def variable(cls, nvars: int, i: int) -> Polynomial:
        if not 0 <= i < nvars:
            raise InputError(f"variable index {i} out of range")
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): ONE})

    @classmethod
    def monomial(cls, exponent, c=ONE) -> Polynomial:
        exponent = tuple(exponent)
        return cls(len(exponent), {exponent: c})

    @classmethod
    def variables(cls, nvars: int) -> list[Polynomial]:
        return [cls.variable(nvars, i) for i in range(nvars)]

    # mapping-like access -------------------------------------------------
    @property
    def terms(self) -> dict:
        """A copy of the exponent -> coefficient map."""
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def exponents(self):
        return self._terms.keys()

    def coefficient(self, exponent):
        return self._terms.get(tuple(exponent), ZERO)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_real(self) -> bool:
        return all(is_real(c) for c in self._terms.values())

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, mpq)) or hasattr(other, "re"):
            return self == Polynomial.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # arithmetic ------------------------------------------------------------
    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise InputError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
            return other
        return Polynomial.constant(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, ZERO) + c
            if s:
                out[e] = s
            else:
                del out[e]
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, ZERO) - c
            if s:
                out[e] = s
            else:
                del out[e]
        return Polynomial._raw(self.nvars, out)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._coerce(other)
        return Polynomial._raw(self.nvars, _mul_terms(self._terms, other._terms, None))

    def __rmul__(self, other):
        return self.scale(other)

    def mul_truncated(self, other: Polynomial, k: int) -> Polynomial:
        """Product with every term of total degree > k dropped."""
        other = self._coerce(other)
        return Polynomial._raw(self.nvars, _mul_terms(self._terms, other._terms, k))

    def scale(self, c) -> Polynomial:
        c = as_number(c)
        if not c:
            return Polynomial._raw(self.nvars, {})
        return Polynomial._raw(self.nvars, {e: c * v for e, v in self._terms.items()})

    def __truediv__(self, c):
        return self.scale(ONE / as_number(c))

    def __pow__(self, k: int):
        if k < 0:
            raise InputError("negative powers are not polynomials")
        result = Polynomial.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def pow_truncated(self, k: int, limit: int) -> Polynomial:
        result = Polynomial.one(self.nvars)
        for _ in range(k):
            result = result.mul_truncated(self, limit)
        return result

    def conjugate(self) -> Polynomial:
        """Conjugate the coefficients."""
        return Polynomial._raw(self.nvars, {e: conj(c) for e, c in self._terms.items()})

    # degree data -----------------------------------------------------------
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((_degree(e) for e in self._terms), default=-1)

    def order(self) -> int:
        """Lowest total degree of the support (the multiplicity at 0)."""
        if not self._terms:
            raise PreconditionError("the zero polynomial has no multiplicity")
        return min(_degree(e) for e in self._terms)

    def homogeneous_part(self, d: int) -> Polynomial:
        return Polynomial._raw(
            self.nvars, {e: c for e, c in self._terms.items() if _degree(e) == d}
        )

    def truncate(self, k: int) -> Polynomial:
        """The k-jet: drop every term of total degree > k."""
        if k < 0:
            raise InputError("jet order must be non-negative")
        return Polynomial._raw(
            self.nvars, {e: c for e, c in self._terms.items() if _degree(e) <= k}
        )

    def is_homogeneous(self) -> bool:
        return len({_degree(e) for e in self._terms}) <= 1

    def constant_term(self):
        return self._terms.get((0,) * self.nvars, ZERO)

    def linear_part(self) -> Polynomial:
        return self.homogeneous_part(1)

    # calculus and composition ---------------------------------------------
    def diff(self, i: int) -> Polynomial:
        if not 0 <= i < self.nvars:
            raise InputError(f"variable index {i} out of range")
        out = {}
        for e, c in self._terms.items():
            a = e[i]
            if a:
                f = list(e)
                f[i] = a - 1
                out[tuple(f)] = c * a
        return Polynomial._raw(self.nvars, out)

    def gradient(self) -> list[Polynomial]:
        return [self.diff(i) for i in range(self.nvars)]

    def substitute(self, i: int, q: Polynomial, limit: int | None = None) -> Polynomial:
        """Replace variable i by q (same ambient ring)."""
        if not 0 <= i < self.nvars:
            raise InputError(f"variable index {i} out of range")
        q = self._coerce(q)
        groups: dict[int, dict] = {}
        for e, c in self._terms.items():
            f = list(e)
            a = f[i]
            f[i] = 0
            groups.setdefault(a, {})[tuple(f)] = c
        out: dict = {}
        power = {(0,) * self.nvars: ONE}
        for a in range(max(groups, default=0) + 1):
            if a:
                power = _mul_terms(power, q._terms, limit)
            rest = groups.get(a)
            if rest:
                _accumulate(out, _mul_terms(rest, power, limit))
        return Polynomial._raw(self.nvars, out)

    def compose(self, images, limit: int | None = None) -> Polynomial:
        """Simultaneous substitution x_j -> images[j]; images share one ring."""
        if len(images) != self.nvars:
            raise InputError("need one image per variable")
        if not images:
            return self
        target = images[0].nvars
        if any(im.nvars != target for im in images):
            raise InputError("images must live in one ring")
        powers: list[list[dict]] = [[{(0,) * target: ONE}] for _ in images]
        out: dict = {}
        for e, c in sorted(self._terms.items()):
            term = {(0,) * target: c}
            for j, a in enumerate(e):
                if not a:
                    continue
                cache = powers[j]
                while len(cache) <= a:
                    cache.append(_mul_terms(cache[-1], images[j]._terms, limit))
                term = _mul_terms(term, cache[a], limit)
                if not term:
                    break
            _accumulate(out, term)
        return Polynomial._raw(target, out)

    def permute(self, perm) -> Polynomial:
        """Variable j of the result is variable perm[j] of self."""
        if sorted(perm) != list(range(self.nvars)):
            raise InputError("not a permutation")
        return Polynomial._raw(
            self.nvars, {tuple(e[p] for p in perm): c for e, c in self._terms.items()}
        )

    def embed(self, nvars: int, positions) -> Polynomial:
        """Send variable j to slot positions[j] of a ring with nvars variables."""
        _check_nvars(nvars)
        out = {}
        for e, c in self._terms.items():
            f = [0] * nvars
            for a, p in zip(e, positions):
                f[p] = a
            out[tuple(f)] = c
        return Polynomial._raw(nvars, out)

    def restrict(self, keep) -> Polynomial:
        """Set every variable outside ``keep`` to zero and drop it."""
        keep = list(keep)
        drop = [j for j in range(self.nvars) if j not in keep]
        out = {}
        for e, c in self._terms.items():
            if any(e[j] for j in drop):
                continue
            out[tuple(e[j] for j in keep)] = c
        return Polynomial._raw(len(keep), out)

    def evaluate_variable(self, i: int, value) -> Polynomial:
        """Substitute a constant for variable i, keeping the ring."""
        return self.substitute(i, Polynomial.constant(self.nvars, value))

    def __call__(self, *values):
        total = ZERO
        for e, c in self._terms.items():
            term = c
            for v, a in zip(values, e):
                if a:
                    term = term * as_number(v) ** a
            total = total + term
        return total

    # weighted data ---------------------------------------------------------
    def filtration(self, w) -> mpq | _Infinity:
        w = _as_weight(w)
        if len(w) != self.nvars:
            raise InputError("weight length differs from the number of variables")
        if not self._terms:
            return INFINITY
        return min(w.of(e) for e in self._terms)

    def initial_part(self, w) -> Polynomial:
        """Terms of minimal w-filtration."""
        w = _as_weight(w)
        if not self._terms:
            return self
        low = self.filtration(w)
        return Polynomial._raw(self.nvars, {e: c for e, c in self._terms.items() if w.of(e) == low})

    def weighted_part(self, w, value) -> Polynomial:
        w = _as_weight(w)
        return Polynomial._raw(self.nvars, {e: c for e, c in self._terms.items() if w.of(e) == value})

    def __repr__(self):
        from .expr import default_context, format_polynomial

        if self.nvars == 0:
            return f"Polynomial(0 vars, {self.constant_term() if self._terms else 0})"
        return f"Polynomial({format_polynomial(self, default_context(self.nvars))!r})"

    def __str__(self):
        from .expr import default_context, format_polynomial

        if self.nvars == 0:
            return str(self.constant_term())
        return format_polynomial(self, default_context(self.nvars))


def _mul_terms(a: dict, b: dict, limit: int | None) -> dict:
    if not a or not b:
        return {}
    out: dict = {}
    get = out.get
    if limit is None:
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(map(add, ea, eb))
                out[e] = get(e, ZERO) + ca * cb
    else:
        bs = sorted(((sum(eb), eb, cb) for eb, cb in b.items()), key=lambda t: t[0])
        for ea, ca in a.items():
            room = limit - sum(ea)
            if room < 0:
                continue
            for db, eb, cb in bs:
                if db > room:
                    break
                e = tuple(map(add, ea, eb))
                out[e] = get(e, ZERO) + ca * cb
    return {e: c for e, c in out.items() if c}


def _accumulate(out: dict, terms: dict) -> None:
    for e, c in terms.items():
        s = out.get(e, ZERO) + c
        if s:
            out[e] = s
        else:
            del out[e]


# free-function API ----------------------------------------------------------


def arithmetic(p: Polynomial, q: Polynomial, kind: str) -> Polynomial:
    if p.nvars != q.nvars:
        raise InputError(f"variable count mismatch: {p.nvars} vs {q.nvars}")
    if kind == "add":
        return p + q
    if kind == "sub":
        return p - q
    if kind == "mul":
        return p * q
    raise InputError(f"unknown operation {kind!r}")


def partial_derivative(p: Polynomial, i: int) -> Polynomial:
    return p.diff(i)


def substitute(p: Polynomial, i: int, q: Polynomial) -> Polynomial:
    return p.substitute(i, q)


def multiplicity(p: Polynomial) -> int:
    return p.order()


def lowest_homogeneous_part(p: Polynomial) -> Polynomial:
    return p.homogeneous_part(p.order())


def weighted_filtration(p, w):
    return p.filtration(w)


def truncate_jet(p: Polynomial, k: int) -> Polynomial:
    return p.truncate(k)


def quadratic_form_matrix(p: Polynomial) -> list[list]:
    """Symmetric matrix S with degree-2 part equal to x^T S x."""
    n = p.nvars
    s = [[ZERO] * n for _ in range(n)]
    for e, c in p.items():
        if sum(e) != 2:
            continue
        idx = [j for j, a in enumerate(e) for _ in range(a)]
        i, j = idx
        if i == j:
            s[i][i] = c
        else:
            s[i][j] = c / 2
            s[j][i] = c / 2
    return s


def hessian_rank(p: Polynomial) -> tuple[int, int]:
    """(rank, corank) of the Hessian at the origin."""
    if p.constant_term() or p.linear_part():
        raise PreconditionError("Hessian rank needs a germ in m^2 (constant or linear terms present)")
    from .linalg import matrix_rank

    r = matrix_rank(quadratic_form_matrix(p))
    return r, p.nvars - r


# mixed polynomials ------------------------------------------------------------


class MixedPolynomial:
    """Polynomial in x and conj(x); keys are (nu, mu) exponent pairs."""

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms=None):
        _check_nvars(nvars)
        clean: dict = {}
        if terms:
            items = terms.items() if hasattr(terms, "items") else terms
            for (nu, mu), coeff in items:
                key = (tuple(int(a) for a in nu), tuple(int(a) for a in mu))
                if len(key[0]) != nvars or len(key[1]) != nvars:
                    raise InputError("bad mixed exponent")
                c = as_number(coeff)
                if c:
                    s = clean.get(key, ZERO) + c
                    if s:
                        clean[key] = s
                    else:
                        clean.pop(key, None)
        self.nvars = nvars
        self._terms = clean

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> MixedPolynomial:
        obj = object.__new__(cls)
        obj.nvars = nvars
        obj._terms = terms
        return obj

    @classmethod
    def holomorphic(cls, p: Polynomial) -> MixedPolynomial:
        zero = (0,) * p.nvars
        return cls._raw(p.nvars, {(e, zero): c for e, c in p.items()})

    @classmethod
    def antiholomorphic(cls, p: Polynomial) -> MixedPolynomial:
        """conj(p(x)) written in conj(x)."""
        zero = (0,) * p.nvars
        return cls._raw(p.nvars, {(zero, e): conj(c) for e, c in p.items()})

    @classmethod
    def modulus_monomial(cls, exponent) -> MixedPolynomial:
        """|x^exponent|^2."""
        exponent = tuple(exponent)
        return cls._raw(len(exponent), {(exponent, exponent): ONE})

    def items(self):
        return self._terms.items()

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other):
        if not isinstance(other, MixedPolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self._terms.items())))

    def _check(self, other):
        if not isinstance(other, MixedPolynomial) or other.nvars != self.nvars:
            raise InputError("mixed polynomial mismatch")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self._terms)
        _accumulate(out, other._terms)
        return MixedPolynomial._raw(self.nvars, out)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __neg__(self):
        return MixedPolynomial._raw(self.nvars, {k: -c for k, c in self._terms.items()})

    def scale(self, c) -> MixedPolynomial:
        c = as_number(c)
        if not c:
            return MixedPolynomial._raw(self.nvars, {})
        return MixedPolynomial._raw(self.nvars, {k: c * v for k, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MixedPolynomial):
            return self.scale(other)
        other = self._check(other)
        out: dict = {}
        get = out.get
        for (na, ma), ca in self._terms.items():
            for (nb, mb), cb in other._terms.items():
                key = (tuple(map(add, na, nb)), tuple(map(add, ma, mb)))
                out[key] = get(key, ZERO) + ca * cb
        return MixedPolynomial._raw(self.nvars, {k: c for k, c in out.items() if c})

    __rmul__ = scale

    def __pow__(self, k: int):
        if k < 0:
            raise InputError("negative power")
        zero = (0,) * self.nvars
        result = MixedPolynomial._raw(self.nvars, {(zero, zero): ONE})
        for _ in range(k):
            result = result * self
        return result

    def conjugate(self) -> MixedPolynomial:
        return MixedPolynomial._raw(
            self.nvars, {(mu, nu): conj(c) for (nu, mu), c in self._terms.items()}
        )

    def diff(self, i: int, conjugate: bool = False) -> MixedPolynomial:
        """Derivative in x_i, or in conj(x_i) when ``conjugate`` is set."""
        if not 0 <= i < self.nvars:
            raise InputError(f"variable index {i} out of range")
        out = {}
        slot = 1 if conjugate else 0
        for key, c in self._terms.items():
            a = key[slot][i]
            if not a:
                continue
            e = list(key[slot])
            e[i] = a - 1
            new = (key[0], tuple(e)) if conjugate else (tuple(e), key[1])
            out[new] = c * a
        return MixedPolynomial._raw(self.nvars, out)

    def support(self) -> set:
        """Exponents nu + mu of the nonzero terms."""
        return {tuple(map(add, nu, mu)) for nu, mu in self._terms}

    def filtration(self, w):
        w = _as_weight(w)
        if len(w) != self.nvars:
            raise InputError("weight length differs from the number of variables")
        if not self._terms:
            return INFINITY
        return min(w.of(nu) + w.of(mu) for nu, mu in self._terms)

    def weighted_part(self, w, value) -> MixedPolynomial:
        w = _as_weight(w)
        return MixedPolynomial._raw(
            self.nvars,
            {k: c for k, c in self._terms.items() if w.of(k[0]) + w.of(k[1]) == value},
        )

    def __repr__(self):
        from .expr import default_context, format_mixed

        return f"MixedPolynomial({format_mixed(self, default_context(self.nvars))!r})"

    def __str__(self):
        from .expr import default_context, format_mixed

        return format_mixed(self, default_context(self.nvars))


def mixed_from_modulus_square(p: Polynomial) -> MixedPolynomial:
    """|p|^2 = p(x) * conj(p)(conj x)."""
    return MixedPolynomial.holomorphic(p) * MixedPolynomial.antiholomorphic(p)


def monomials_of_degree(nvars: int, d: int) -> list[tuple]:
    """All exponent tuples of total degree d, in descending lex order."""
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for j in combo:
            e[j] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


def monomials_up_to(nvars: int, d: int) -> list[tuple]:
    """Monomials of degree <= d, grouped by ascending degree."""
    out = []
    for k in range(d + 1):
        out.extend(monomials_of_degree(nvars, k))
    return out
