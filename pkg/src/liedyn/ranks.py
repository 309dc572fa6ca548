"""Exact matrix rank over the rationals.

Rows are cleared to integers, then reduced by fraction-free (Bareiss)
Gaussian elimination, so every intermediate quantity is an exact integer and
no tolerance is involved anywhere.
"""

from __future__ import annotations

from fractions import Fraction


def _integerize(rows):
    out = []
    for row in rows:
        fr = [Fraction(x) for x in row]
        lcm = 1
        for x in fr:
            d = x.denominator
            g = _gcd(lcm, d)
            lcm = lcm // g * d
        out.append([int(x * lcm) for x in fr])
    return out


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def matrix_rank(rows) -> int:
    """Rank of a matrix with int/Fraction entries, by Bareiss elimination.

    >>> matrix_rank([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]])
    2
    >>> matrix_rank([[1, 2], [2, 4]])
    1
    """
    m = _integerize(rows)
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    prev = 1
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                m[i][j] = (m[i][j] * m[r][c] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        r += 1
        rank += 1
        if r == nrows:
            break
    return rank
