"""Resultants by fraction-free determinant of the Sylvester matrix."""

from __future__ import annotations

from .linalg import bareiss_det
from .mpoly import MPoly
from .unipoly import UniPoly


def sylvester_matrix(p: UniPoly, q: UniPoly) -> list:
    """Sylvester matrix with columns ordered by ascending power.

    Row k of the p-block holds the coefficients of x^k * p, and likewise for q.
    """
    m, n = p.degree(), q.degree()
    size = m + n
    zero = 0 * p.lc()
    rows = []
    for k in range(n):
        row = [zero] * size
        for j, c in enumerate(p.coeffs):
            row[k + j] = c
        rows.append(row)
    for k in range(m):
        row = [zero] * size
        for j, c in enumerate(q.coeffs):
            row[k + j] = c
        rows.append(row)
    return rows


def resultant(p: UniPoly, q: UniPoly):
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of a zero polynomial")
    if p.degree() == 0 and q.degree() == 0:
        return 1
    if p.degree() == 0:
        return p.lc() ** q.degree()
    if q.degree() == 0:
        return q.lc() ** p.degree()
    return bareiss_det(sylvester_matrix(p, q))


def resultant_in(var_index: int, p, q):
    """Resultant with respect to one variable.

    ``p`` and ``q`` are either :class:`UniPoly` (``var_index`` must be 0) or
    :class:`MPoly` sharing variable names.  The result lives in the
    coefficient ring (an MPoly with the eliminated variable absent).
    """
    if isinstance(p, MPoly):
        pu, qu = p.as_unipoly(var_index), q.as_unipoly(var_index)
        return resultant(pu, qu)
    if var_index != 0:
        raise ValueError("UniPoly inputs only have variable index 0")
    return resultant(p, q)


def discriminant_like(p: UniPoly):
    """res(p, p') -- the discriminant up to sign and a power of lc(p)."""
    return resultant(p, p.derivative())
