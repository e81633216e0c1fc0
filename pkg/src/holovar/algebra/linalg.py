"""Exact dense linear algebra: matrices, solving, null spaces."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

import flint


class Inconsistent(Exception):
    """The linear system has no solution."""


class Underdetermined(Exception):
    """The linear system has more than one solution."""

    def __init__(self, particular, kernel):
        super().__init__(f"solution space of dimension {len(kernel)}")
        self.particular = particular
        self.kernel = kernel


@dataclass(frozen=True)
class ExactMatrix:
    rows: int
    cols: int
    entries: tuple  # row-major tuple of tuples

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ExactMatrix":
        rows = [tuple(r) for r in rows]
        if not rows:
            raise ValueError("empty matrix")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix")
        return cls(len(rows), width, tuple(rows))

    @classmethod
    def identity(cls, n: int, one=Fraction(1), zero=Fraction(0)) -> "ExactMatrix":
        return cls.from_rows([[one if i == j else zero for j in range(n)] for i in range(n)])

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i):
        return self.entries[i]

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        for i in range(self.rows):
            r = []
            for j in range(other.cols):
                acc = 0
                for k in range(self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                r.append(acc)
            out.append(r)
        return ExactMatrix.from_rows(out)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix.from_rows([[a - b for a, b in zip(r1, r2)]
                                      for r1, r2 in zip(self.entries, other.entries)])

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix.from_rows([[a + b for a, b in zip(r1, r2)]
                                      for r1, r2 in zip(self.entries, other.entries)])

    def apply(self, v: Sequence):
        return [sum((a * b for a, b in zip(r, v)), 0) for r in self.entries]

    def inf_norm(self):
        """Max absolute row sum (rational entries only)."""
        return max(sum(abs(x) for x in r) for r in self.entries)

    def inverse(self) -> "ExactMatrix":
        n = self.rows
        if n != self.cols:
            raise ValueError("inverse of a non-square matrix")
        cols = []
        for j in range(n):
            e = [Fraction(int(i == j)) for i in range(n)]
            cols.append(solve_linear_exact(self, e))
        return ExactMatrix.from_rows([[cols[j][i] for j in range(n)] for i in range(n)])

    def det(self):
        return bareiss_det([list(r) for r in self.entries])


def bareiss_det(m: list):
    """Fraction-free determinant (Bareiss); entries from an integral domain
    supporting exact division via ``/`` or ``exquo``."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0 * a[0][0]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = _exdiv(num, prev)
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign == 1 else -d


def _exdiv(a, b):
    if b == 1:
        return a
    if hasattr(a, "exquo"):
        return a.exquo(b) if isinstance(b, type(a)) else a / b
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError("inexact integer division in Bareiss step")
        return q
    return a / b


def _is_rational(x) -> bool:
    return isinstance(x, (int, Fraction))


def _rational_rref(rows: list, ncols: int):
    """Fraction-free row reduction via flint on the denominator-cleared matrix."""
    int_rows = []
    for r in rows:
        den = 1
        for x in r:
            den = lcm(den, Fraction(x).denominator)
        int_rows.append([int(Fraction(x) * den) for x in r])
    M = flint.fmpz_mat(int_rows)
    R, d, rank = M.rref()
    out = [[Fraction(int(R[i, j]), int(d)) for j in range(ncols)] for i in range(R.nrows())]
    return out, int(rank)


def _generic_rref(rows: list, ncols: int):
    a = [list(r) for r in rows]
    nrows = len(a)
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c] if not hasattr(a[r][c], "inverse") else a[r][c].inverse()
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == nrows:
            break
    return a, r


def rref(rows: list, ncols: int):
    if all(_is_rational(x) for row in rows for x in row):
        return _rational_rref(rows, ncols)
    return _generic_rref(rows, ncols)


def _pivots(R: list, ncols: int):
    piv = []
    for row in R:
        j = next((j for j in range(ncols) if row[j] != 0), None)
        if j is not None:
            piv.append(j)
    return piv


def nullspace(rows: list, ncols: int) -> list:
    """Basis of the right kernel; one vector per free column, free entry = 1."""
    R, rank = rref(rows, ncols)
    piv = _pivots(R, ncols)
    free = [j for j in range(ncols) if j not in set(piv)]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, pj in enumerate(piv):
            v[pj] = -R[i][f] / R[i][pj] if R[i][pj] != 1 else -R[i][f]
        basis.append(v)
    return basis


def solve_linear_exact(A, b: Sequence):
    """Solve A x = b exactly.

    Raises :class:`Inconsistent` or :class:`Underdetermined` (which carries a
    particular solution and a kernel basis) instead of returning a guess.
    """
    rows = [list(r) for r in (A.entries if isinstance(A, ExactMatrix) else A)]
    ncols = len(rows[0])
    aug = [r + [bi] for r, bi in zip(rows, b)]
    R, rank = rref(aug, ncols + 1)
    piv = _pivots(R, ncols + 1)
    if ncols in piv:
        raise Inconsistent("inconsistent linear system")
    x = [0] * ncols
    for i, pj in enumerate(piv):
        x[pj] = R[i][ncols] / R[i][pj] if R[i][pj] != 1 else R[i][ncols]
    x = [Fraction(v) if isinstance(v, int) else v for v in x]
    if len(piv) < ncols:
        kernel = nullspace(rows, ncols)
        raise Underdetermined(x, kernel)
    return x
