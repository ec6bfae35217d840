import random

import pytest

from germlab.expr import VariableContext, parse
from germlab.linalg import determinant
from germlab.poly import Polynomial
from germlab.qi import gaussian, mpq

ACCEPTANCE_RESULTS: list[tuple[int, bool, str]] = []

XY = VariableContext(("x", "y"))
XYZ = VariableContext(("x", "y", "z"))


def p2(text: str) -> Polynomial:
    return parse(text, XY)


def p3(text: str) -> Polynomial:
    return parse(text, XYZ)


def random_invertible(n: int, rng: random.Random, gaussian_entries: bool = False, bound: int = 3):
    while True:
        if gaussian_entries:
            m = [[gaussian(rng.randint(-2, 2), rng.randint(-1, 1)) for _ in range(n)] for _ in range(n)]
        else:
            m = [[mpq(rng.randint(-bound, bound)) for _ in range(n)] for _ in range(n)]
        if determinant(m):
            return m


def linear_change(f: Polynomial, m) -> Polynomial:
    n = f.nvars
    images = [Polynomial(n, {tuple(int(k == j) for k in range(n)): m[i][j] for j in range(n) if m[i][j]}) for i in range(n)]
    return f.compose(images)


def add_squares(f: Polynomial, extra: int) -> Polynomial:
    n = f.nvars + extra
    g = f.embed(n, range(f.nvars))
    for j in range(f.nvars, n):
        e = [0] * n
        e[j] = 2
        g = g + Polynomial.monomial(e)
    return g


def stabilize(f: Polynomial, rng: random.Random, extra: int = 1) -> Polynomial:
    g = add_squares(f, extra)
    return linear_change(g, random_invertible(g.nvars, rng))


@pytest.fixture
def record_acceptance():
    def record(number: int, ok: bool, detail: str = ""):
        ACCEPTANCE_RESULTS.append((number, ok, detail))
        assert ok, f"criterion {number}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, detail in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")
