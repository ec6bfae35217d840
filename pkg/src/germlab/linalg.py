"""Exact sparse linear algebra over Q(i).

Vectors are dicts mapping an integer column to a nonzero coefficient.  The
leading entry of a row is its smallest column, so callers control pivoting by
how they number columns.
"""

from __future__ import annotations

from .qi import ONE, ZERO


def _axpy(row: dict, scale, other: dict) -> None:
    """row -= scale * other, in place, dropping cancelled entries."""
    for col, c in other.items():
        v = row.get(col, ZERO) - scale * c
        if v:
            row[col] = v
        else:
            row.pop(col, None)


class Echelon:
    """Incremental row echelon form with optional combination tracking.

    With ``track`` set, each stored row remembers which inserted vectors (by
    label) it is a combination of, so a successful reduction can be turned
    into explicit coefficients.
    """

    def __init__(self, track: bool = False):
        self.pivots: dict[int, dict] = {}
        self.combos: dict[int, dict] = {}
        self.track = track

    def __len__(self):
        return len(self.pivots)

    def reduce(self, vec: dict, combo: dict | None = None):
        """Reduce by leading terms until the lead column has no pivot.

        Returns the remainder and, when tracking, the combination expressing
        ``vec - remainder`` in terms of inserted labels (or, when ``combo`` is
        given, ``combo`` updated accordingly).
        """
        row = dict(vec)
        combo = dict(combo) if combo is not None else ({} if self.track else None)
        pivots = self.pivots
        while row:
            lead = min(row)
            prow = pivots.get(lead)
            if prow is None:
                break
            c = row[lead]
            _axpy(row, c, prow)
            if combo is not None:
                _axpy(combo, c, self.combos[lead])
        return row, combo

    def add(self, vec: dict, label=None) -> bool:
        """Insert a vector; returns True when it enlarged the span."""
        combo = {label: ONE} if self.track else None
        row, combo = self.reduce(vec, combo)
        if not row:
            return False
        lead = min(row)
        inv = ONE / row[lead]
        if inv != ONE:
            row = {k: v * inv for k, v in row.items()}
            if combo is not None:
                combo = {k: v * inv for k, v in combo.items()}
        self.pivots[lead] = row
        if combo is not None:
            self.combos[lead] = combo
        return True

    def express(self, vec: dict):
        """Coefficients writing ``vec`` as a combination of inserted labels, or None."""
        if not self.track:
            raise ValueError("express needs a tracking echelon")
        row, combo = self.reduce(vec, {})
        if row:
            return None
        # reduce() accumulated -(coefficients); flip the sign
        return {k: -v for k, v in combo.items()}

    def pivot_columns(self):
        return self.pivots.keys()


def matrix_rank(rows) -> int:
    """Rank of a dense matrix given as a list of rows."""
    ech = Echelon()
    for r in rows:
        ech.add({j: c for j, c in enumerate(r) if c})
    return len(ech)


def nullspace(rows, ncols: int) -> list[list]:
    """Basis of the right nullspace of a dense matrix, by reduced row echelon form."""
    mat = [list(r) for r in rows]
    pivot_cols = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = ONE / mat[r][col]
        mat[r] = [v * inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivot_cols.append(col)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivot_cols]
    basis = []
    for fc in free:
        v = [ZERO] * ncols
        v[fc] = ONE
        for i, pc in enumerate(pivot_cols):
            v[pc] = -mat[i][fc]
        basis.append(v)
    return basis


def solve(rows, rhs, ncols: int):
    """One solution of rows * x = rhs, or None when inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    ech = Echelon()
    for r in aug:
        ech.add({j: c for j, c in enumerate(r) if c})
    if ncols in ech.pivots:
        return None
    x = [ZERO] * ncols
    for lead in sorted(ech.pivots, reverse=True):
        row = ech.pivots[lead]
        val = row.get(ncols, ZERO)
        for j, c in row.items():
            if j != lead and j != ncols:
                val -= c * x[j]
        x[lead] = val
    return x


def determinant(rows):
    """Determinant of a small square matrix by elimination."""
    mat = [list(r) for r in rows]
    n = len(mat)
    det = ONE
    for col in range(n):
        piv = next((i for i in range(col, n) if mat[i][col]), None)
        if piv is None:
            return ZERO
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            det = -det
        p = mat[col][col]
        det = det * p
        for i in range(col + 1, n):
            if mat[i][col]:
                f = mat[i][col] / p
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[col])]
    return det


# univariate polynomials: coefficient lists, index = degree ----------------------


def upoly_trim(p: list) -> list:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def upoly_divmod(a: list, b: list):
    a, b = upoly_trim(a), upoly_trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    q = [ZERO] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    lead = b[-1]
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        c = r[-1] / lead
        q[shift] = c
        for i, bc in enumerate(b):
            r[shift + i] -= c * bc
        r = upoly_trim(r)
    return upoly_trim(q), r


def upoly_gcd(a: list, b: list) -> list:
    """Monic gcd; gcd(0, 0) = 0."""
    a, b = upoly_trim(a), upoly_trim(b)
    while b:
        a, b = b, upoly_divmod(a, b)[1]
    if not a:
        return []
    inv = ONE / a[-1]
    return [c * inv for c in a]


def upoly_derivative(p: list) -> list:
    return upoly_trim([c * i for i, c in enumerate(p)][1:])


def upoly_squarefree_degree(p: list) -> int:
    """Number of distinct roots over the algebraic closure."""
    p = upoly_trim(p)
    if not p:
        raise ValueError("the zero polynomial has infinitely many roots")
    g = upoly_gcd(p, upoly_derivative(p))
    return (len(p) - 1) - (len(g) - 1 if g else 0)
