"""Catalog of simple and modal normal forms, fingerprint classification, separation matrix."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources

from gmpy2 import mpq

from .certify import J10Witness, check_deforms_to_j10
from .errors import GermlabError, PreconditionError
from .expr import VariableContext, format_polynomial, parse
from .invariants import (
    Comparison,
    GermFingerprint,
    LctValue,
    SigmaDescriptor,
    compare_fingerprints,
    fingerprint,
)
from .jets import DEFAULT_MAX_N, DEFAULT_SEED, milnor_number
from .invariants import certified_residual
from .poly import Polynomial, hessian_rank
from .qi import GaussianRational, gaussian

CATALOG_VERSION = 1
SERIES_LIMIT = 14
DATA_FILE = "catalog.json"

# Fixed-coordinate sigma readings from the published invariant table, kept for
# the discrepancy note only: the matrix always reports computed values.
PUBLISHED_SIGMA = {
    "T_{3,3,5}": "y-axis + z-axis",
    "Q_{10}": "y-axis",
    "T_{3,4,5}": "y-axis + z-axis",
    "T_{4,4,4}": "x-axis + y-axis + z-axis",
    "Q_{11}": "y-axis",
    "S_{11}": "x-axis",
    "T_{3,5,5}": "y-axis + z-axis",
    "T_{4,4,5}": "x-axis + y-axis + z-axis",
    "S_{12}": "z-axis",
}

# Published Jacobian lct values for the pair the published table separates by lct.
PUBLISHED_LCT = {"Q_{11}": "3/2", "S_{11}": "4/3"}

# Pairs whose separation by the implemented invariants is an open question.
FLAGGED_PAIRS = {frozenset({"T_{3,3,5}", "Q_{10}"})}


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    template: str  # normal form with its moduli
    form: str  # representative at the tabulated parameter values
    variables: str
    constraint: str
    codimension: int | None
    corank: int | None
    simple: bool
    bracketed: bool = False
    series: str | None = None  # "A" or "D": form and codimension depend on k
    fingerprint: GermFingerprint | None = None
    instances: tuple = ()  # (k, fingerprint) pairs for series entries

    def polynomial(self) -> Polynomial:
        return parse(self.form, VariableContext.from_spec(self.variables))

    def to_json(self, ctx=None) -> dict:
        out = {
            "name": self.name,
            "template": self.template,
            "form": self.form,
            "vars": self.variables,
            "constraint": self.constraint,
            "codimension": self.codimension,
            "corank": self.corank,
            "simple": self.simple,
            "bracketed": self.bracketed,
            "series": self.series,
            "fingerprint": None if self.fingerprint is None else self.fingerprint.to_json(),
        }
        if self.series:
            out["instances"] = [{"k": k, "fingerprint": fp.to_json()} for k, fp in self.instances]
        return out


def series_form(series: str, k: int) -> str:
    if series == "A":
        return f"x^{k + 1}"
    if series == "D":
        return f"x^2*y+y^{k - 1}"
    raise ValueError(series)


def series_range(series: str) -> range:
    return range(1, SERIES_LIMIT + 1) if series == "A" else range(4, SERIES_LIMIT + 1)


def series_variables(series: str) -> str:
    return "x" if series == "A" else "x,y"


# name, template, representative, vars, constraint, codimension
_SIMPLE_CORANK2 = [
    ("E_6", "x^3+y^4", "x^3+y^4", "", 6),
    ("E_7", "x^3+x*y^3", "x^3+x*y^3", "", 7),
    ("E_8", "x^3+y^5", "x^3+y^5", "", 8),
    ("X_9", "x^4+y^4+a*x^2*y^2", "x^4+y^4+x^2*y^2", "a^2 != 4", 9),
    ("T_{2,4,5}", "x^4+y^5+a*x^2*y^2", "x^4+y^5+x^2*y^2", "a != 0", 10),
    ("T_{2,5,5}", "x^5+y^5+a*x^2*y^2", "x^5+y^5+x^2*y^2", "a != 0", 11),
    ("Z_{11}", "x^3*y+y^5+a*x*y^4", "x^3*y+y^5+x*y^4", "", 11),
    ("W_{12}", "x^4+y^5+a*x^2*y^3", "x^4+y^5+x^2*y^3", "", 12),
]

_SIMPLE_CORANK3 = [
    ("P_8", "x^3+y^3+z^3+a*x*y*z", "x^3+y^3+z^3+x*y*z", "a^3+27 != 0", 8),
    ("T_{3,3,4}", "x^3+y^3+z^4+a*x*y*z", "x^3+y^3+z^4+x*y*z", "a != 0", 9),
    ("T_{3,3,5}", "x^3+y^3+z^5+a*x*y*z", "x^3+y^3+z^5+x*y*z", "a != 0", 10),
    ("T_{3,4,5}", "x^3+y^4+z^5+a*x*y*z", "x^3+y^4+z^5+x*y*z", "a != 0", 11),
    ("T_{3,5,5}", "x^3+y^5+z^5+a*x*y*z", "x^3+y^5+z^5+x*y*z", "a != 0", 12),
    ("T_{4,4,4}", "x^4+y^4+z^4+a*x*y*z", "x^4+y^4+z^4+x*y*z", "a != 0", 11),
    ("T_{4,4,5}", "x^4+y^4+z^5+a*x*y*z", "x^4+y^4+z^5+x*y*z", "a != 0", 12),
    ("T_{4,5,5}", "x^4+y^5+z^5+a*x*y*z", "x^4+y^5+z^5+x*y*z", "a != 0", 13),
    ("T_{5,5,5}", "x^5+y^5+z^5+a*x*y*z", "x^5+y^5+z^5+x*y*z", "a != 0", 14),
    ("Q_{10}", "x^3+y^4+y*z^2+a*x*y^3", "x^3+y^4+y*z^2+x*y^3", "", 10),
    ("Q_{11}", "x^3+y^2*z+x*z^3+a*z^5", "x^3+y^2*z+x*z^3+z^5", "", 11),
    ("S_{11}", "x^4+y^2*z+x*z^2+a*x^3*z", "x^4+y^2*z+x*z^2+x^3*z", "", 11),
    ("S_{12}", "x^2*y+y^2*z+x*z^3+a*z^5", "x^2*y+y^2*z+x*z^3+z^5", "", 12),
]

# name, template, representative, vars, constraint, bracketed
_MODAL = [
    ("J_{10}", "x^3+a*x*y^4+y^6", "x^3+x*y^4+y^6", "x,y", "4a^3+27 != 0", True),
    ("T_{2,4,6}", "x^4+y^6+a*x^2*y^2", "x^4+y^6+x^2*y^2", "x,y", "a != 0", True),
    ("T_{2,5,6}", "x^5+y^6+a*x^2*y^2", "x^5+y^6+x^2*y^2", "x,y", "a != 0", True),
    ("Z_{12}", "x^3*y+x*y^4+a*x^2*y^3", "x^3*y+x*y^4+x^2*y^3", "x,y", "", True),
    ("W_{13}", "x^4+x*y^4+a*y^6", "x^4+x*y^4+y^6", "x,y", "", True),
    ("T_{3,3,6}", "x^3+y^3+z^6+a*x*y*z", "x^3+y^3+z^6+x*y*z", "x,y,z", "a != 0", True),
    ("T_{3,4,6}", "x^3+y^4+z^6+a*x*y*z", "x^3+y^4+z^6+x*y*z", "x,y,z", "a != 0", True),
    ("T_{3,5,6}", "x^3+y^5+z^6+a*x*y*z", "x^3+y^5+z^6+x*y*z", "x,y,z", "a != 0", True),
    ("T_{4,4,6}", "x^4+y^4+z^6+a*x*y*z", "x^4+y^4+z^6+x*y*z", "x,y,z", "a != 0", True),
    ("T_{4,5,6}", "x^4+y^5+z^6+a*x*y*z", "x^4+y^5+z^6+x*y*z", "x,y,z", "a != 0", True),
    ("T_{5,5,6}", "x^5+y^5+z^6+a*x*y*z", "x^5+y^5+z^6+x*y*z", "x,y,z", "a != 0", True),
    ("Q_{12}", "x^3+y^5+y*z^2+a*x*y^4", "x^3+y^5+y*z^2+x*y^4", "x,y,z", "", True),
    ("U_{12}", "x^3+y^3+z^4+a*x*y*z^2", "x^3+y^3+z^4+x*y*z^2", "x,y,z", "", True),
    ("S_{1,0}", "x^2*z+y*z^2+y^5+a*z*y^3+b*z*y^4", "x^2*z+y*z^2+y^5+z*y^3+z*y^4", "x,y,z", "", True),
]

MODAL_CORANK = "O"


def _fingerprint_of(form: str, variables: str, max_jet: int) -> tuple[GermFingerprint, int]:
    f = parse(form, VariableContext.from_spec(variables))
    return fingerprint(f, max_jet), milnor_number(f, max_jet)


def _build_entry(name, template, form, variables, constraint, codim, simple, bracketed, max_jet):
    fp, mu = _fingerprint_of(form, variables, max_jet)
    if codim is not None and mu != codim:
        raise AssertionError(f"{name}: computed Milnor number {mu} differs from codimension {codim}")
    return CatalogEntry(name, template, form, variables, constraint, mu, fp.corank, simple, bracketed, None, fp)


def _build_series(series: str, max_jet: int) -> CatalogEntry:
    instances = []
    for k in series_range(series):
        fp, mu = _fingerprint_of(series_form(series, k), series_variables(series), max_jet)
        if mu != k:
            raise AssertionError(f"{series}_{k}: computed Milnor number {mu}")
        instances.append((k, fp))
    template = "x^(k+1)" if series == "A" else "x^2*y+y^(k-1)"
    constraint = "k >= 1" if series == "A" else "k >= 4"
    return CatalogEntry(
        f"{series}_k", template, template, series_variables(series), constraint, None,
        1 if series == "A" else 2, True, False, series, None, tuple(instances),
    )


def build_catalog(max_jet: int = DEFAULT_MAX_N) -> list[CatalogEntry]:
    """Every entry with fingerprints recomputed; codimensions are machine-checked."""
    entries = [_build_series("A", max_jet), _build_series("D", max_jet)]
    for name, template, form, constraint, codim in _SIMPLE_CORANK2:
        entries.append(_build_entry(name, template, form, "x,y", constraint, codim, True, False, max_jet))
    for name, template, form, constraint, codim in _SIMPLE_CORANK3:
        entries.append(_build_entry(name, template, form, "x,y,z", constraint, codim, True, False, max_jet))
    for name, template, form, variables, constraint, bracketed in _MODAL:
        entries.append(_build_entry(name, template, form, variables, constraint, None, False, bracketed, max_jet))
    entries.append(CatalogEntry(MODAL_CORANK, "corank >= 4", "", "", "", None, None, False, True))
    return entries


def catalog_document(entries: list[CatalogEntry]) -> dict:
    return {"schema": 1, "catalog_version": CATALOG_VERSION, "entries": [e.to_json() for e in entries]}


def catalog_text(entries: list[CatalogEntry]) -> str:
    return json.dumps(catalog_document(entries), indent=1, sort_keys=True) + "\n"


def _fp_from_json(d: dict | None) -> GermFingerprint | None:
    if d is None:
        return None
    s = d["sigma"]
    lct = d["lct"]
    return GermFingerprint(
        d["multiplicity"],
        d["residual_multiplicity"],
        d["corank"],
        d["milnor"],
        SigmaDescriptor(s["affine_dim"], s["line_count"], s["scheme_degree"]),
        None if lct is None else LctValue(None if lct["value"] is None else mpq(lct["value"]), lct["status"], lct["squares_added"]),
    )


def _entry_from_json(d: dict) -> CatalogEntry:
    instances = tuple((i["k"], _fp_from_json(i["fingerprint"])) for i in d.get("instances", ()))
    return CatalogEntry(
        d["name"], d["template"], d["form"], d["vars"], d["constraint"], d["codimension"], d["corank"],
        d["simple"], d["bracketed"], d["series"], _fp_from_json(d["fingerprint"]), instances,
    )


_CACHE: list[CatalogEntry] | None = None


def load_catalog() -> list[CatalogEntry]:
    """Catalog from the shipped data file, falling back to a fresh build."""
    global _CACHE
    if _CACHE is None:
        try:
            text = resources.files("germlab").joinpath("data", DATA_FILE).read_text()
        except (FileNotFoundError, ModuleNotFoundError):
            _CACHE = build_catalog()
        else:
            doc = json.loads(text)
            if doc.get("catalog_version") != CATALOG_VERSION:
                _CACHE = build_catalog()
            else:
                _CACHE = [_entry_from_json(d) for d in doc["entries"]]
    return _CACHE


def entry_named(name: str, entries: list[CatalogEntry] | None = None) -> CatalogEntry:
    for e in entries if entries is not None else load_catalog():
        if e.name == name or e.name.replace("{", "").replace("}", "").replace(",", "") == name.replace(",", ""):
            return e
    raise KeyError(name)


# classification ---------------------------------------------------------------


class Verdict(str, Enum):
    SIMPLE = "lipschitz-simple"
    MODAL = "lipschitz-modal"
    UNDETERMINED = "undetermined"


MODAL_REASONS = ("corank >= 4", "matched modal family", "J10 deformation witness")


@dataclass
class ClassificationReport:
    germ: Polynomial
    fingerprint: GermFingerprint | None
    matched: str | None
    verdict: Verdict
    label: str | None = None  # class name for simple verdicts, reason for modal ones
    reason: str | None = None
    witness: J10Witness | None = None
    candidates: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def __post_init__(self):
        if self.verdict == Verdict.MODAL and self.reason not in MODAL_REASONS:
            raise ValueError("a modal verdict needs a documented reason")

    def to_json(self, ctx=None) -> dict:
        return {
            "germ": format_polynomial(self.germ, ctx if ctx and ctx.nvars == self.germ.nvars else None),
            "fingerprint": None if self.fingerprint is None else self.fingerprint.to_json(),
            "matched": self.matched,
            "verdict": self.verdict.value,
            "label": self.label,
            "reason": self.reason,
            "candidates": list(self.candidates),
            "witness": None if self.witness is None else self.witness.to_json(),
            "notes": list(self.notes),
        }


def match_key(fp: GermFingerprint) -> tuple:
    """Smooth invariants used for recognition; all are constant on a smooth class."""
    s = fp.sigma
    return (fp.corank, fp.milnor, fp.residual_multiplicity, s.affine_dim, s.line_count, s.scheme_degree)


def _candidates(fp: GermFingerprint, entries: list[CatalogEntry]) -> list[tuple[str, CatalogEntry]]:
    key = match_key(fp)
    found = []
    for e in entries:
        if e.series:
            k = fp.milnor
            inst = dict(e.instances).get(k)
            if inst is not None and match_key(inst) == key or inst is None and k > SERIES_LIMIT and _series_schema(e.series, fp):
                found.append((f"{e.series}_{k}", e))
        elif e.fingerprint is not None and match_key(e.fingerprint) == key:
            found.append((e.name, e))
    return found


def _narrow(f: Polynomial, fp: GermFingerprint, found, max_jet: int, seed: int):
    """Tie-breaks among fingerprint candidates: certified lct, then plane sections."""
    if len(found) > 1:
        lct = fp.lct
        if lct is not None and lct.certified:
            narrowed = [(n, e) for n, e in found if _lct_of(e, fp) in (None, lct.value)]
            if narrowed:
                found = narrowed
    if len(found) > 1 and fp.corank == 3:
        mine = section_profile(f, seed, max_jet)
        if mine is not None:
            narrowed = [(n, e) for n, e in found if not e.series and section_profile(e.polynomial(), seed) == mine]
            if narrowed:
                found = narrowed
    return found


def _to_sympy(p: Polynomial, symbols):
    import sympy

    expr = sympy.Integer(0)
    for e, c in p.items():
        if isinstance(c, GaussianRational):
            coeff = _rational(c.real) + sympy.I * _rational(c.imag)
        else:
            coeff = _rational(c)
        term = coeff
        for s, k in zip(symbols, e):
            term *= s**k
        expr += term
    return expr


def _rational(q):
    import sympy

    return sympy.Rational(int(q.numerator), int(q.denominator))


def _from_sympy(value):
    import sympy

    re, im = sympy.re(value), sympy.im(value)
    if not (re.is_Rational and im.is_Rational):
        return None
    return gaussian(mpq(int(re.p), int(re.q)), mpq(int(im.p), int(im.q)))


def singular_lines(form: Polynomial) -> list[tuple] | None:
    """Points of the projectivized singular locus of a form, or None if not all Gaussian rational."""
    import sympy

    n = form.nvars
    symbols = sympy.symbols(f"v0:{n}")
    grad = [_to_sympy(g, symbols) for g in form.gradient() if g]
    points = []
    for chart in range(n):
        fixed = {symbols[j]: 0 for j in range(chart)}
        fixed[symbols[chart]] = 1
        eqs = [sympy.expand(g.subs(fixed)) for g in grad]
        eqs = [e for e in eqs if e != 0]
        free = list(symbols[chart + 1 :])
        if any(e.is_number for e in eqs):
            continue
        sols = sympy.solve(eqs, free, dict=True) if eqs else [{}]
        for sol in sols:
            if any(v not in sol for v in free):
                return None  # positive-dimensional in this chart
            coords = []
            for j, sym in enumerate(symbols):
                value = fixed.get(sym, sol.get(sym))
                c = _from_sympy(sympy.sympify(value))
                if c is None:
                    return None
                coords.append(c)
            points.append(tuple(coords))
    return points


SECTION_TRIALS = 3


def section_profile(f: Polynomial, seed: int = DEFAULT_SEED, max_jet: int = DEFAULT_MAX_N) -> tuple | None:
    """Sorted Milnor numbers of f on a generic plane through each singular line of its tangent cone.

    Only meaningful for corank 3; each value is the minimum over a few random
    planes, which is the generic value by semicontinuity.
    """
    import random

    jet = certified_residual(f, max_jet).jet
    if jet.nvars != 3:
        return None
    lines = singular_lines(jet.homogeneous_part(jet.order()))
    if lines is None:
        return None
    rng = random.Random(seed)
    profile = []
    for v in lines:
        best = None
        for _ in range(SECTION_TRIALS):
            u = [mpq(rng.randint(-9, 9)) for _ in range(3)]
            images = [Polynomial(2, {(1, 0): v[i], (0, 1): u[i]}) for i in range(3)]
            try:
                mu = milnor_number(jet.compose(images), max_jet)
            except GermlabError:
                continue
            best = mu if best is None else min(best, mu)
        if best is None:
            return None
        profile.append(best)
    return tuple(sorted(profile))


def _lct_of(entry: CatalogEntry, fp: GermFingerprint):
    ref = dict(entry.instances).get(fp.milnor) if entry.series else entry.fingerprint
    if ref is None or ref.lct is None or not ref.lct.certified:
        return None
    return ref.lct.value - ref.lct.squares + (fp.lct.squares if fp.lct else 0)


def _series_schema(series: str, fp: GermFingerprint) -> bool:
    """Schema for series members beyond the tabulated range."""
    if series == "A":
        return fp.corank == 1
    return fp.corank == 2 and fp.residual_multiplicity == 3 and fp.sigma.proxy() == (1, 1) and fp.sigma.scheme_degree == 1


def classify(
    f: Polynomial, max_jet: int = DEFAULT_MAX_N, entries: list[CatalogEntry] | None = None, seed: int = DEFAULT_SEED
) -> ClassificationReport:
    """Fingerprint matching against the catalog, with a J10 adjacency check."""
    entries = entries if entries is not None else load_catalog()
    if f.constant_term() or f.linear_part():
        raise PreconditionError("classification needs a germ in m^2")
    _, corank = hessian_rank(f)
    if corank >= 4:
        fp = fingerprint(f, max_jet, with_lct=False, seed=seed)
        return ClassificationReport(f, fp, MODAL_CORANK, Verdict.MODAL, MODAL_CORANK, "corank >= 4")
    fp = fingerprint(f, max_jet, seed=seed)
    found = _narrow(f, fp, _candidates(fp, entries), max_jet, seed)
    names = [n for n, _ in found]
    if len(found) == 1:
        name, entry = found[0]
        if entry.simple:
            witness = check_deforms_to_j10(f)
            if witness is None:
                return ClassificationReport(f, fp, name, Verdict.SIMPLE, name, candidates=names)
            note = f"fingerprint coincides with {name} but the germ deforms to J10"
            return ClassificationReport(
                f, fp, None, Verdict.MODAL, None, "J10 deformation witness", witness, names, [note]
            )
        witness = check_deforms_to_j10(f)
        reason = "J10 deformation witness" if witness is not None else "matched modal family"
        return ClassificationReport(f, fp, name, Verdict.MODAL, name, reason, witness, names)
    witness = check_deforms_to_j10(f)
    notes = [f"fingerprint matches several entries: {', '.join(names)}"] if found else []
    if witness is not None:
        return ClassificationReport(f, fp, None, Verdict.MODAL, None, "J10 deformation witness", witness, names, notes)
    return ClassificationReport(f, fp, None, Verdict.UNDETERMINED, None, None, None, names, notes)


# separation ---------------------------------------------------------------------


@dataclass(frozen=True)
class SeparationCell:
    left: str
    right: str
    comparison: Comparison
    flagged: bool = False
    note: str = ""

    @property
    def separated(self) -> bool:
        return self.comparison.distinguished

    @property
    def reading(self) -> str:
        return self.comparison.by if self.separated else "NOT-SEPARATED"

    def to_json(self, ctx=None) -> dict:
        out = {"left": self.left, "right": self.right, "reading": self.reading, "flagged": self.flagged}
        if self.comparison.left is not None and self.separated:
            out["values"] = [str(self.comparison.left), str(self.comparison.right)]
        note = "; ".join(n for n in (self.comparison.note, self.note) if n)
        if note:
            out["note"] = note
        return out


def simple_classes(entries: list[CatalogEntry] | None = None) -> list[tuple[str, GermFingerprint]]:
    """Every simple class as (name, fingerprint), series expanded up to the limit."""
    out = []
    for e in entries if entries is not None else load_catalog():
        if not e.simple:
            continue
        if e.series:
            out.extend((f"{e.series}_{k}", fp) for k, fp in e.instances)
        else:
            out.append((e.name, e.fingerprint))
    return out


def _sigma_text(fp: GermFingerprint) -> str:
    s = fp.sigma
    return f"dim {s.affine_dim}, lines {s.line_count}, degree {s.scheme_degree}"


def _discrepancy_note(a: str, fa: GermFingerprint, b: str, fb: GermFingerprint) -> str:
    if a in PUBLISHED_LCT and b in PUBLISHED_LCT:
        computed = ", ".join(f"{n} {fp.lct.value} ({fp.lct.status})" for n, fp in ((a, fa), (b, fb)))
        published = ", ".join(f"{n} {PUBLISHED_LCT[n]}" for n in (a, b))
        return f"published separation is by the Jacobian lct ({published}); computed lct agrees ({computed})"
    parts = []
    for name, fp in ((a, fa), (b, fb)):
        published = PUBLISHED_SIGMA.get(name)
        if published:
            parts.append(f"{name}: published sigma {published}, computed {_sigma_text(fp)}")
    lead = "the published invariant table separates this pair by sigma but the computed values agree"
    return lead + (" (" + "; ".join(parts) + ")" if parts else "")


def separation_matrix(entries: list[CatalogEntry] | None = None) -> list[SeparationCell]:
    """First separating invariant for every pair of simple classes, in catalog order."""
    classes = simple_classes(entries)
    cells = []
    for i, (a, fa) in enumerate(classes):
        for b, fb in classes[i + 1 :]:
            cmp = compare_fingerprints(fa, fb)
            flagged = frozenset({a, b}) in FLAGGED_PAIRS
            note = "" if cmp.distinguished else _discrepancy_note(a, fa, b, fb)
            cells.append(SeparationCell(a, b, cmp, flagged, note))
    return cells


def cell(cells: list[SeparationCell], a: str, b: str) -> SeparationCell:
    for c in cells:
        if {c.left, c.right} == {a, b}:
            return c
    raise KeyError((a, b))
