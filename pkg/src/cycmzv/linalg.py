"""Exact rational linear algebra and a modular-rank fast path.

rank_kernel performs fraction-free Bareiss elimination after clearing each
row to integers, with partial pivoting on the magnitude of the entries, and
returns the exact rank together with a right-kernel basis scaled to coprime
integers.  modular_rank row-reduces an integer matrix over a prime field
with numpy and serves both as the independent oracle for rank_kernel and as
the workhorse for large relation matrices.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

_ZERO = Fraction(0)
_ONE = Fraction(1)


class RationalMatrix:
    """A dense matrix of Fractions."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data):
        data = [[Fraction(x) for x in row] for row in data]
        if data and any(len(row) != len(data[0]) for row in data):
            raise ValueError("ragged rows")
        self.rows = len(data)
        self.cols = len(data[0]) if data else 0
        self.data = data

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls([[_ZERO] * cols for _ in range(rows)])

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix([[self.data[i][j] for i in range(self.rows)]
                               for j in range(self.cols)])

    def __repr__(self):
        return f"RationalMatrix({self.rows}x{self.cols})"

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.data == other.data


def _clear_row(row) -> list[int]:
    den = math.lcm(*(f.denominator for f in row)) if row else 1
    out = [int(f * den) for f in row]
    g = 0
    for v in out:
        g = math.gcd(g, v)
        if g == 1:
            break
    if g > 1:
        out = [v // g for v in out]
    return out


def rank_kernel(matrix: RationalMatrix):
    """Exact rank and right-kernel basis by fraction-free elimination.

    Kernel vectors come back as tuples of coprime integers with a positive
    leading entry (first nonzero coordinate).
    """
    rows = [_clear_row(r) for r in matrix.data]
    m, n = len(rows), matrix.cols
    pivots: list[tuple[int, int]] = []  # (row, col) in elimination order
    prev = 1
    r = 0
    for col in range(n):
        if r >= m:
            break
        best = None
        for i in range(r, m):
            v = rows[i][col]
            if v and (best is None or abs(v) > abs(rows[best][col])):
                best = i
        if best is None:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        piv = rows[r][col]
        rr = rows[r]
        for i in range(r + 1, m):
            ri = rows[i]
            ric = ri[col]
            # the rescale by piv/prev applies even where the column entry is zero
            for j in range(col, n):
                ri[j] = (piv * ri[j] - ric * rr[j]) // prev
        prev = piv
        pivots.append((r, col))
        r += 1
    rank = len(pivots)

    # Back substitution over Q for the kernel
    pivot_cols = [c for _, c in pivots]
    free_cols = [c for c in range(n) if c not in set(pivot_cols)]
    kernel = []
    for fc in free_cols:
        vec = [_ZERO] * n
        vec[fc] = _ONE
        for (pr, pc) in reversed(pivots):
            row = rows[pr]
            s = sum((Fraction(row[j]) * vec[j] for j in range(pc + 1, n) if row[j]), _ZERO)
            vec[pc] = -s / row[pc]
        den = math.lcm(*(f.denominator for f in vec))
        ints = [int(f * den) for f in vec]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        lead = next((v for v in ints if v), 1)
        if lead < 0:
            ints = [-v for v in ints]
        kernel.append(tuple(ints))
    return rank, kernel


# Fixed 31-bit primes for reproducible modular ranks.
MODULAR_PRIMES = (2147483629, 2147483587, 2147483563)


def modular_rank(int_rows, q: int) -> int:
    """Rank over F_q of integer rows, by vectorized Gaussian elimination."""
    if not int_rows:
        return 0
    a = np.array(int_rows, dtype=np.int64) % q
    m, n = a.shape
    r = 0
    for col in range(n):
        if r >= m:
            break
        nz = np.nonzero(a[r:, col])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, col]), -1, q)
        a[r, col:] = a[r, col:] * inv % q
        rest = a[r + 1:, col]
        hot = np.nonzero(rest)[0]
        if hot.size:
            block = a[r + 1 + hot, col:]
            block = (block - np.outer(rest[hot], a[r, col:])) % q
            a[r + 1 + hot, col:] = block
        r += 1
    return r


def rational_rows_rank(rows, primes=MODULAR_PRIMES) -> int:
    """Rank of Fraction rows via agreement of modular ranks at fixed primes.

    Any one elimination certifies the rank from below; agreement across the
    prime set is required and makes an undetected drop vanishingly unlikely.
    """
    int_rows = []
    for row in rows:
        int_rows.append([f.numerator * pow(f.denominator, -1, primes[0]) % primes[0]
                         if isinstance(f, Fraction) else int(f) % primes[0] for f in row])
    ranks = {modular_rank(int_rows, primes[0])}
    for q in primes[1:]:
        qrows = []
        for row in rows:
            qrows.append([f.numerator * pow(f.denominator, -1, q) % q
                          if isinstance(f, Fraction) else int(f) % q for f in row])
        ranks.add(modular_rank(qrows, q))
    if len(ranks) != 1:
        raise ArithmeticError(f"modular ranks disagree across primes: {sorted(ranks)}")
    return ranks.pop()
