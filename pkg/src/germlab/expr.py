"""Text front end: parse polynomial expressions, print them canonically, and
build the JSON report envelope.

Grammar::

    expr     := ['-'] term (('+' | '-') term)*
    term     := factor ('*'? factor)*
    factor   := base ('^' uint)?
    base     := identifier | rational | 'i' | '(' expr ')'
    rational := int ('/' uint)?

Juxtaposition multiplies, so ``2xy^2`` is ``2*x*y^2``.  A run of letters that
is not itself a variable name is split greedily into known names.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from gmpy2 import mpq

from .errors import InputError, ParseError
from .poly import MixedPolynomial, Polynomial
from .qi import ONE, I, GaussianRational, format_number, im_part, re_part

MAX_EXPONENT = 200
_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_ATOM = re.compile(r"[A-Za-z][0-9]*")
_NUMBER = re.compile(r"[0-9]+")
_DEFAULT_NAMES = ("x", "y", "z", "w", "u", "v", "s", "r")


@dataclass(frozen=True)
class VariableContext:
    """Ordered variable names plus an optional family parameter in the last slot."""

    names: tuple
    parameter: str | None = None

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise InputError("variable names must be distinct")
        for n in names + ((self.parameter,) if self.parameter else ()):
            if not _IDENT.fullmatch(n):
                raise InputError(f"bad variable name {n!r}")
            if n == "i":
                raise InputError("'i' is the imaginary unit and cannot be a variable")
        if self.parameter is not None and self.parameter in names:
            raise InputError("the parameter must differ from the variables")
        if len(self.slots) > 8:
            raise InputError("at most 8 variables are supported")

    @property
    def slots(self) -> tuple:
        return self.names + ((self.parameter,) if self.parameter else ())

    @property
    def nvars(self) -> int:
        return len(self.slots)

    @classmethod
    def from_spec(cls, spec: str, parameter: str | None = None) -> VariableContext:
        names = tuple(s.strip() for s in spec.split(",") if s.strip())
        if not names:
            raise InputError("empty variable list")
        return cls(names, parameter)


def default_context(nvars: int) -> VariableContext:
    if nvars <= len(_DEFAULT_NAMES):
        return VariableContext(_DEFAULT_NAMES[:nvars])
    return VariableContext(tuple(f"x{k + 1}" for k in range(nvars)))


def infer_context(src: str, parameter: str | None = None) -> VariableContext:
    """Variables in order of first appearance; identifiers split into letter+digits atoms."""
    seen: list[str] = []
    for m in _IDENT.finditer(src):
        for atom in _ATOM.findall(m.group()):
            if atom == "i" or atom == parameter or atom in seen:
                continue
            seen.append(atom)
    if not seen and parameter is None:
        seen = ["x"]
    return VariableContext(tuple(seen), parameter)


# tokenizer -------------------------------------------------------------------


@dataclass
class _Token:
    kind: str  # num, name, op, end
    text: str
    offset: int
    value: object = None


def _tokenize(src: str, ctx: VariableContext) -> list[_Token]:
    data = src.encode("utf-8")
    try:
        src.encode("ascii")
    except UnicodeEncodeError as exc:
        bad = len(src[: exc.start].encode("utf-8"))
        raise ParseError("non-ASCII character", bad) from None
    slots = ctx.slots
    names = sorted(set(slots) | {"i"}, key=len, reverse=True)
    tokens: list[_Token] = []
    pos = 0
    while pos < len(data):
        ch = src[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch.isdigit():
            m = _NUMBER.match(src, pos)
            tokens.append(_Token("num", m.group(), pos, int(m.group())))
            pos = m.end()
            continue
        if ch.isalpha():
            m = _IDENT.match(src, pos)
            word = m.group()
            k = 0
            while k < len(word):
                for name in names:
                    if word.startswith(name, k):
                        tokens.append(_Token("name", name, pos + k))
                        k += len(name)
                        break
                else:
                    raise ParseError(f"unknown identifier {word[k:]!r}", pos + k)
            pos = m.end()
            continue
        if ch in "+-*/^()":
            tokens.append(_Token("op", ch, pos))
            pos += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", pos)
    tokens.append(_Token("end", "", len(data)))
    return tokens


class _Parser:
    def __init__(self, src: str, ctx: VariableContext):
        self.ctx = ctx
        self.tokens = _tokenize(src, ctx)
        self.pos = 0
        self.nvars = ctx.nvars
        self.index = {n: k for k, n in enumerate(ctx.slots)}

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def take(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str) -> _Token:
        tok = self.take()
        if tok.kind != "op" or tok.text != op:
            raise ParseError(f"expected {op!r}", tok.offset)
        return tok

    def parse(self) -> Polynomial:
        result = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected {tok.text!r}", tok.offset)
        return result

    def expr(self) -> Polynomial:
        tok = self.peek()
        negate = tok.kind == "op" and tok.text == "-"
        if negate:
            self.take()
        total = self.term()
        if negate:
            total = -total
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text in "+-":
                self.take()
                nxt = self.peek()
                if nxt.kind == "op" and nxt.text in "+-":
                    raise ParseError("sign must be followed by a term", nxt.offset)
                t = self.term()
                total = total + t if tok.text == "+" else total - t
            else:
                return total

    def starts_factor(self, tok: _Token) -> bool:
        return tok.kind in ("num", "name") or (tok.kind == "op" and tok.text == "(")

    def term(self) -> Polynomial:
        result = self.factor()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text == "*":
                self.take()
                result = result * self.factor()
            elif self.starts_factor(tok):
                result = result * self.factor()
            else:
                return result

    def factor(self) -> Polynomial:
        base = self.base()
        tok = self.peek()
        if tok.kind == "op" and tok.text == "^":
            self.take()
            exp = self.take()
            if exp.kind != "num":
                raise ParseError("malformed exponent (expected a non-negative integer)", exp.offset)
            if exp.value > MAX_EXPONENT:
                raise ParseError(f"exponent exceeds {MAX_EXPONENT}", exp.offset)
            return base ** exp.value
        return base

    def base(self) -> Polynomial:
        tok = self.take()
        if tok.kind == "num":
            value = mpq(tok.value)
            nxt = self.peek()
            if nxt.kind == "op" and nxt.text == "/":
                self.take()
                den = self.take()
                if den.kind != "num":
                    raise ParseError("expected an unsigned integer denominator", den.offset)
                if den.value == 0:
                    raise ParseError("division by zero", den.offset)
                value = mpq(tok.value, den.value)
            return Polynomial.constant(self.nvars, value)
        if tok.kind == "name":
            if tok.text == "i":
                return Polynomial.constant(self.nvars, I)
            return Polynomial.variable(self.nvars, self.index[tok.text])
        if tok.kind == "op" and tok.text == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        if tok.kind == "end":
            raise ParseError("unexpected end of input", tok.offset)
        raise ParseError(f"unexpected {tok.text!r}", tok.offset)


def parse(src: str, ctx: VariableContext | None = None) -> Polynomial:
    """Parse an expression into a polynomial over the context's variables."""
    if ctx is None:
        ctx = infer_context(src)
    if ctx.nvars == 0:
        raise InputError("no variables")
    return _Parser(src, ctx).parse()


# printing --------------------------------------------------------------------


def term_order_key(exponent) -> tuple:
    """Graded lex: higher total degree first, then lexicographically larger first."""
    return (-sum(exponent), tuple(-a for a in exponent))


def _monomial_text(exponent, names) -> str:
    parts = []
    for a, n in zip(exponent, names):
        if a == 1:
            parts.append(n)
        elif a > 1:
            parts.append(f"{n}^{a}")
    return "*".join(parts)


def _signed_coefficient(c):
    """(negative?, text of the magnitude) for a coefficient in front of a monomial."""
    re_, im_ = re_part(c), im_part(c)
    if not im_:
        return re_ < 0, format_number(abs(re_))
    if not re_:
        return im_ < 0, format_number(GaussianRational._make(re_, abs(im_)))
    return False, format_number(c)


def _term_text(c, mono: str):
    negative, mag = _signed_coefficient(c)
    if not mono:
        return negative, mag
    if mag == "1":
        return negative, mono
    return negative, f"{mag}*{mono}"


def _join(pieces) -> str:
    if not pieces:
        return "0"
    out = []
    for k, (negative, text) in enumerate(pieces):
        if k == 0:
            out.append(("-" if negative else "") + text)
        else:
            out.append((" - " if negative else " + ") + text)
    return "".join(out)


def format_polynomial(p: Polynomial, ctx: VariableContext | None = None) -> str:
    """Canonical text; parsing it back gives the same polynomial."""
    if ctx is None:
        ctx = default_context(p.nvars)
    if ctx.nvars != p.nvars:
        raise InputError(f"context has {ctx.nvars} variables, polynomial has {p.nvars}")
    names = ctx.slots
    pieces = [
        _term_text(c, _monomial_text(e, names))
        for e, c in sorted(p.items(), key=lambda t: term_order_key(t[0]))
    ]
    return _join(pieces)


def format_mixed(p: MixedPolynomial, ctx: VariableContext | None = None) -> str:
    """Text for a mixed polynomial; conjugates print as conj(x)."""
    if ctx is None:
        ctx = default_context(p.nvars)
    names = ctx.slots
    conj_names = [f"conj({n})" for n in names]

    def key(item):
        (nu, mu), _ = item
        return term_order_key(nu + mu) + (tuple(-a for a in nu),)

    pieces = []
    for (nu, mu), c in sorted(p.items(), key=key):
        mono = "*".join(x for x in (_monomial_text(nu, names), _monomial_text(mu, conj_names)) if x)
        pieces.append(_term_text(c, mono))
    return _join(pieces)


# JSON report -----------------------------------------------------------------

SCHEMA_VERSION = 1


def jsonable(value, ctx: VariableContext | None = None):
    """Convert exact values to JSON-friendly forms: rationals become strings."""
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, int):
        return value
    if type(value) is type(ONE) or isinstance(value, GaussianRational):
        return format_number(value)
    if isinstance(value, Polynomial):
        return format_polynomial(value, ctx if ctx and ctx.nvars == value.nvars else None)
    if isinstance(value, MixedPolynomial):
        return format_mixed(value, ctx if ctx and ctx.nvars == value.nvars else None)
    if hasattr(value, "to_json"):
        return value.to_json(ctx)
    if isinstance(value, dict):
        return {str(k): jsonable(v, ctx) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v, ctx) for v in value]
    return str(value)


def envelope(command: str, source, ctx: VariableContext | None, seed, result, version: str, timing_ms=None) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "tool": "germlab",
        "version": version,
        "command": command,
        "input": source,
        "vars": list(ctx.slots) if ctx else None,
        "seed": seed,
        "result": jsonable(result, ctx),
        "timing_ms": timing_ms,
    }
