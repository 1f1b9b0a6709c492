"""Exact evaluation of finite multiple harmonic q-sums at roots of unity.

The sums run over strictly decreasing (plain) or weakly decreasing (star)
chains of summation variables below the level n, with the usual q-power
numerators and q-integer denominators, all at q = zeta_n.  Evaluation is a
depth-recursive prefix-sum scheme costing O(n) field operations per depth
level.  Internally elements live in Z[x]/(x^n - 1) with a running integer
denominator, which maps onto Q(zeta_n) after one final reduction modulo the
cyclotomic polynomial; this keeps the hot loops in integer arithmetic.

Depth-one values are also available in closed form through a polynomial
family D_k with z(k at level n) = D_k(n) (1 - zeta_n)^k, tied to Gregory
coefficients and degenerate Bernoulli numbers.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .cyclotomic import CycloElem, q_integer
from .words import WordSum, check_index

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _normalize(vec: list[int], den: int):
    g = den
    for c in vec:
        if c:
            g = math.gcd(g, c)
            if g == 1:
                return vec, den
    if g == 0:
        return vec, 1
    if g > 1:
        vec = [c // g for c in vec]
        den //= g
    return vec, den


class Evaluator:
    """Shared tables for evaluating many harmonic sums at one fixed level.

    Instances cache q-integer inverses, the per-part factor vectors, and the
    prefix-summed tail arrays, so evaluating every index of a weight range
    reuses all common suffixes.  Instances are cheap to create and are not
    meant to be shared across threads; the module-level helpers build a fresh
    one per call.
    """

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("level must be >= 1")
        self.n = n
        self._inv = {}       # m -> (vec, den) inverse of the q-integer [m]
        self._factor = {}    # (m, k) -> (vec, den) for zeta^((k-1)m) / [m]^k
        self._tails = {}     # (suffix, star) -> list of prefix-summed tails
        self._one = ([1] + [0] * (n - 1), 1)

    # -- fast-ring primitives ------------------------------------------------

    def _mul(self, a, b):
        n = self.n
        va, da = a
        vb, db = b
        out = [0] * n
        for i, c in enumerate(va):
            if c:
                for j, d in enumerate(vb):
                    if d:
                        k = i + j
                        if k >= n:
                            k -= n
                        out[k] += c * d
        return _normalize(out, da * db)

    def _add(self, a, b):
        va, da = a
        vb, db = b
        if da == db:
            return [x + y for x, y in zip(va, vb)], da
        g = math.gcd(da, db)
        ma, mb = db // g, da // g
        return [x * ma + y * mb for x, y in zip(va, vb)], da * ma

    def _rot(self, a, shift: int):
        va, da = a
        n = self.n
        shift %= n
        if shift == 0:
            return a
        return va[-shift:] + va[:-shift], da

    def _inv_qint(self, m: int):
        hit = self._inv.get(m)
        if hit is not None:
            return hit
        n = self.n
        if math.gcd(m, n) == 1:
            # [m]^(-1) = 1 + zeta^m + ... + zeta^((m'-1)m) with m m' = 1 mod n
            mprime = pow(m, -1, n)
            vec = [0] * n
            for j in range(mprime):
                vec[(j * m) % n] += 1
            out = (vec, 1)
        else:
            elem = q_integer(m, n).inverse()
            den = math.lcm(*(c.denominator for c in elem.coeffs))
            vec = [0] * n
            for i, c in enumerate(elem.coeffs):
                vec[i] = int(c * den)
            out = _normalize(vec, den)
        self._inv[m] = out
        return out

    def _part_factor(self, m: int, k: int):
        # zeta^((k-1) m) / [m]^k
        hit = self._factor.get((m, k))
        if hit is not None:
            return hit
        inv = self._inv_qint(m)
        acc = inv
        for _ in range(k - 1):
            acc = self._mul(acc, inv)
        out = self._rot(acc, (k - 1) * m)
        self._factor[(m, k)] = out
        return out

    # -- the prefix-sum recursion ---------------------------------------------

    def _tail_sums(self, suffix, star: bool):
        """B[m] = sum of tail contributions over chains strictly (or weakly)
        below m, for m = 1 .. n-1."""
        n = self.n
        if not suffix:
            return [self._one] * n
        key = (suffix, star)
        hit = self._tails.get(key)
        if hit is not None:
            return hit
        below = self._tail_sums(suffix[1:], star)
        k = suffix[0]
        zero = ([0] * n, 1)
        out = [zero] * n
        run = zero
        # A[m] = factor(m, k) * below[m]; out[m] accumulates A over m' < m (or <= m)
        for m in range(1, n):
            a_m = self._mul(self._part_factor(m, k), below[m])
            if star:
                run = self._add(run, a_m)
                out[m] = run
            else:
                out[m] = run
                run = self._add(run, a_m)
        self._tails[key] = out
        return out

    def _value_fast(self, index, star: bool):
        n = self.n
        if not index:
            return self._one
        if n == 1:
            return ([0], 1)
        if not star and len(index) >= n:
            return ([0] * n, 1)
        below = self._tail_sums(index[1:], star)
        k = index[0]
        total = ([0] * n, 1)
        for m in range(1, n):
            total = self._add(total, self._mul(self._part_factor(m, k), below[m]))
        return total

    def _to_elem(self, fast) -> CycloElem:
        vec, den = fast
        return CycloElem.from_polynomial(self.n, [Fraction(c, den) for c in vec])

    # -- public surface ---------------------------------------------------------

    def value(self, index, star: bool = False) -> CycloElem:
        """The harmonic sum of the given index at this level, exactly."""
        index = check_index(index)
        return self._to_elem(self._value_fast(index, star))

    def value_wordsum(self, w: WordSum, star: bool = False) -> CycloElem:
        """Linear extension over a WordSum, with hbar sent to 1 - zeta."""
        n = self.n
        one_minus_zeta = CycloElem.one(n) - CycloElem.zeta(n)
        hpow = {0: CycloElem.one(n)}
        out = CycloElem.zero(n)
        for (index, h), c in w.items():
            if h not in hpow:
                top = max(hpow)
                while top < h:
                    hpow[top + 1] = hpow[top] * one_minus_zeta
                    top += 1
            out = out + self.value(index, star) * hpow[h] * c
        return out


def harmonic(index, n: int) -> CycloElem:
    """Strict-chain multiple harmonic sum at level n, exactly in Q(zeta_n)."""
    return Evaluator(n).value(index, star=False)


def harmonic_star(index, n: int) -> CycloElem:
    """Weak-chain (star) multiple harmonic sum at level n."""
    return Evaluator(n).value(index, star=True)


def harmonic_wordsum(w: WordSum, n: int, star: bool = False) -> CycloElem:
    return Evaluator(n).value_wordsum(w, star)


# -- depth-one closed forms ------------------------------------------------------


def _poly_add(a, b):
    size = max(len(a), len(b))
    a = list(a) + [_ZERO] * (size - len(a))
    b = list(b) + [_ZERO] * (size - len(b))
    return [x + y for x, y in zip(a, b)]


def _poly_mul(a, b):
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def poly_eval(poly, x) -> Fraction:
    acc = _ZERO
    for c in reversed(poly):
        acc = acc * x + c
    return acc


def _falling_product(j: int):
    # (x-1)(x-2)...(x-j) as Fraction coefficients, low to high
    poly = [_ONE]
    for a in range(1, j + 1):
        poly = _poly_mul(poly, [Fraction(-a), _ONE])
    return poly


def depth_one_poly(k: int):
    """Coefficients (low to high) of the polynomial D_k with
    harmonic((k,), n) = D_k(n) (1 - zeta_n)^k for every level n.

    Built from the truncated expansion of -sum_{l>=1} (-H)^l where H collects
    the factorial-normalized falling products; H has no constant term, so
    truncating at l <= k is exact.
    """
    if k < 1:
        raise ValueError("depth-one polynomials need k >= 1")
    # H as a series in the bookkeeping variable t: coefficient of t^j is h_j(x)
    h = [[_ZERO]]
    for j in range(1, k + 1):
        coeffs = _falling_product(j)
        fact = math.factorial(j + 1)
        h.append([c / fact for c in coeffs])
    neg_h = [[-c for c in p] for p in h]
    # power accumulates (-H)^l, truncated at t^k
    series = [[_ZERO] for _ in range(k + 1)]
    power = [[_ZERO] for _ in range(k + 1)]
    power[0] = [_ONE]
    for _ in range(1, k + 1):
        new = [[_ZERO] for _ in range(k + 1)]
        for d1 in range(k + 1):
            if len(power[d1]) == 1 and not power[d1][0]:
                continue
            for d2 in range(1, k + 1 - d1):
                term = _poly_mul(power[d1], neg_h[d2])
                new[d1 + d2] = _poly_add(new[d1 + d2], term)
        power = new
        for d in range(k + 1):
            series[d] = _poly_add(series[d], [-c for c in power[d]])
    out = series[k]
    while len(out) > 1 and not out[-1]:
        out.pop()
    return tuple(out)


def gregory(k: int) -> Fraction:
    """Coefficient of z^k in z / log(1 + z)."""
    if k < 0:
        raise ValueError("Gregory coefficients need k >= 0")
    # reciprocal of log(1+z)/z = sum_j (-1)^j z^j / (j+1)
    a = [Fraction((-1) ** j, j + 1) for j in range(k + 1)]
    g = [_ONE] + [_ZERO] * k
    for i in range(1, k + 1):
        g[i] = -sum(a[j] * g[i - j] for j in range(1, i + 1))
    return g[k]


def degenerate_bernoulli(k: int, n: int) -> Fraction:
    """Carlitz's degenerate Bernoulli number evaluated at 1/n.

    Equals -k! D_k(n) / n^k; tends to the ordinary Bernoulli number B_k as
    n grows.
    """
    if k < 1 or n < 1:
        raise ValueError("degenerate Bernoulli values need k, n >= 1")
    dk = poly_eval(depth_one_poly(k), Fraction(n))
    return -math.factorial(k) * dk / Fraction(n) ** k


def star_weight5_identity_residual(n: int) -> CycloElem:
    """Exact residual of the weight-five star identity at level n.

    Returns 2 z*(4,1) + z*(3,2) - (n^4-1)(n+5)/1440 (1-zeta)^5
    - (n+2)/3 (1-zeta)^2 z*(2,1); the zero element whenever the identity holds.
    """
    ev = Evaluator(n)
    one_minus_zeta = CycloElem.one(n) - CycloElem.zeta(n)
    lhs = ev.value((4, 1), star=True) * 2 + ev.value((3, 2), star=True)
    rhs = (one_minus_zeta ** 5) * Fraction((n ** 4 - 1) * (n + 5), 1440)
    rhs = rhs + (one_minus_zeta ** 2) * ev.value((2, 1), star=True) * Fraction(n + 2, 3)
    return lhs - rhs
