"""Splitting a germ into a residual in the Hessian kernel plus a sum of squares."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InputError, PreconditionError
from .jets import milnor_number
from .poly import Polynomial, quadratic_form_matrix
from .qi import ONE, ZERO, sqrt_exact


@dataclass
class LinearChange:
    """x_old = matrix * x_new; residual variables come first in x_new."""

    matrix: list
    corank: int
    scales: list  # coefficient d_j of each square x_j^2, j >= corank

    def images(self, nvars: int) -> list[Polynomial]:
        out = []
        for row in self.matrix:
            out.append(Polynomial(nvars, {tuple(int(k == j) for k in range(nvars)): c for j, c in enumerate(row) if c}))
        return out


@dataclass
class SplitResult:
    residual: Polynomial  # in the first `corank` variables
    quad_rank: int
    square_coefficients: list  # d_j with the tail equal to sum d_j x_j^2
    linear_change: LinearChange
    transcript: list  # simultaneous substitutions applied after the linear change
    jet_bound: int
    notes: list = field(default_factory=list)

    @property
    def corank(self) -> int:
        return self.residual.nvars

    def normal_form(self, nvars: int) -> Polynomial:
        """residual + sum d_j x_j^2 in the full ring."""
        c = self.corank
        total = self.residual.embed(nvars, range(c)) if c else Polynomial.zero(nvars)
        for j, d in enumerate(self.square_coefficients):
            e = [0] * nvars
            e[c + j] = 2
            total = total + Polynomial.monomial(e, d)
        return total


def diagonalize_quadratic(f: Polynomial) -> LinearChange:
    """Congruence to a diagonal form with the kernel directions placed first."""
    n = f.nvars
    a = [row[:] for row in quadratic_form_matrix(f)]
    t = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    used: list[int] = []

    def add_col(dst, src, factor):
        # congruence x = E y with E = I + factor * e_src e_dst^T
        for r in range(n):
            a[r][dst] += factor * a[r][src]
        for c in range(n):
            a[dst][c] += factor * a[src][c]
        for r in range(n):
            t[r][dst] += factor * t[r][src]

    while True:
        free = [i for i in range(n) if i not in used]
        pivot = next((i for i in free if a[i][i]), None)
        if pivot is None:
            pair = next(((i, j) for i in free for j in free if i != j and a[i][j]), None)
            if pair is None:
                break
            i, j = pair
            add_col(i, j, ONE)
            pivot = i
        for j in free:
            if j != pivot and a[j][pivot]:
                add_col(j, pivot, -a[j][pivot] / a[pivot][pivot])
        used.append(pivot)
    kernel = [i for i in range(n) if i not in used]
    order = kernel + used
    matrix = [[t[r][c] for c in order] for r in range(n)]
    scales = []
    for k, p in enumerate(used):
        d = a[p][p]
        root = sqrt_exact(d)
        col = len(kernel) + k
        if root is not None:
            for r in range(n):
                matrix[r][col] = matrix[r][col] / root
            d = ONE
        scales.append(d)
    return LinearChange(matrix, len(kernel), scales)


def _check_input(f: Polynomial):
    if f.constant_term():
        raise PreconditionError("germ has a nonzero constant term")
    if f.linear_part():
        raise PreconditionError("germ has a nonzero linear part; split needs f in m^2")


def default_jet_bound(f: Polynomial) -> int:
    return max(2 * f.order(), 12) if f else 12


def split(f: Polynomial, k: int | None = None) -> SplitResult:
    """Residual and transcript by iterated completion of squares, degree by degree."""
    _check_input(f)
    if k is None:
        k = default_jet_bound(f)
    if k < 2:
        raise InputError("jet bound must be at least 2")
    n = f.nvars
    change = diagonalize_quadratic(f)
    c = change.corank
    g = f.compose(change.images(n), limit=k)
    scales = change.scales
    transcript = []
    for s in range(3, k + 1):
        remainders = {}
        for e, coeff in g.items():
            if sum(e) != s:
                continue
            j = next((j for j in range(c, n) if e[j]), None)
            if j is None:
                continue
            q = list(e)
            q[j] -= 1
            remainders.setdefault(j, {})[tuple(q)] = coeff
        if not remainders:
            continue
        images = Polynomial.variables(n)
        step = {}
        for j, terms in sorted(remainders.items()):
            shift = Polynomial(n, terms).scale(-ONE / (2 * scales[j - c]))
            images[j] = images[j] + shift
            step[j] = shift
        g = g.compose(images, limit=k)
        transcript.append(step)
    residual = g.restrict(range(c))
    result = SplitResult(residual, n - c, list(scales), change, transcript, k)
    leftover = g - result.normal_form(n)
    if leftover:
        raise AssertionError("splitting left mixed terms below the jet bound")
    return result


def replay(f: Polynomial, result: SplitResult) -> Polynomial:
    """Apply the linear change and every transcript step to f, truncating at k."""
    n = f.nvars
    k = result.jet_bound
    g = f.compose(result.linear_change.images(n), limit=k)
    for step in result.transcript:
        images = Polynomial.variables(n)
        for j, shift in step.items():
            images[j] = images[j] + shift
        g = g.compose(images, limit=k)
    return g


def verify_split(f: Polynomial, result: SplitResult, check_milnor: bool = True) -> tuple[bool, str]:
    """Replay the transcript; report (ok, reason)."""
    n = f.nvars
    replayed = replay(f, result)
    expected = result.normal_form(n).truncate(result.jet_bound)
    diff = replayed - expected
    if diff:
        return False, f"replay differs from residual + squares in {len(diff)} terms"
    if result.residual and result.residual.order() < 3 and result.residual.nvars:
        return False, "residual is not in m^3"
    if check_milnor and result.corank:
        try:
            mu_f = milnor_number(f)
            mu_g = milnor_number(result.residual)
        except Exception as exc:  # noqa: BLE001 - milnor is optional evidence here
            return True, f"milnor check skipped: {exc}"
        if mu_f != mu_g:
            return False, f"milnor numbers differ: {mu_f} vs {mu_g}"
    return True, "ok"


def critical_residual(f: Polynomial, k: int | None = None) -> tuple[Polynomial, LinearChange]:
    """Residual as the critical value along the square directions, mod m^(k+1).

    Solves d f / d y_j = 0 for the square coordinates y as power series in
    the kernel coordinates x by fixed-point iteration, then evaluates
    f(x, y(x)).  Equals the residual of ``split`` because the completion of
    squares never moves the kernel coordinates.
    """
    _check_input(f)
    if k is None:
        k = default_jet_bound(f)
    n = f.nvars
    change = diagonalize_quadratic(f)
    c = change.corank
    g = f.compose(change.images(n), limit=k)
    if c == n:
        return g, change
    squares = range(c, n)
    higher = g
    for j, d in zip(squares, change.scales):
        e = [0] * n
        e[j] = 2
        higher = higher - Polynomial.monomial(e, d)
    partials = [higher.diff(j) for j in squares]
    xs = Polynomial.variables(c) if c else []
    ys = [Polynomial.zero(c) for _ in squares]
    # f is stationary in y at y(x), so an error of order p in y moves the
    # critical value only at order 2p; y is needed below degree (k+1)/2 only
    y_limit = (k + 1) // 2
    for _ in range(y_limit + 1):
        images = xs + ys
        new = [p.compose(images, limit=y_limit).scale(-ONE / (2 * d)) for p, d in zip(partials, change.scales)]
        if new == ys:
            break
        ys = new
    residual = g.compose(xs + ys, limit=k)
    return residual, change
