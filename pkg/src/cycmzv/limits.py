"""High-precision evaluation at q = exp(2 pi i / n) and limit extrapolation.

The finite sums are evaluated with mpmath big floats by the same prefix-sum
recursion as the exact route; relative rounding error is O(n 2^-precision).
The half-range partial sums split each sum at n/2 (strict upper boundary on
the minus side, inclusive on the plus side) and reassemble the full value
through an exact finite identity, which doubles as a consistency check.
Limits along growing-n schedules are estimated by Richardson-style
extrapolation under a log-corrected 1/n error model whose log exponent is
fitted, never assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import mpmath
from mpmath import mp

from .words import check_index, hoffman_dual, weight

_GUARD = 24


def _root_powers(n: int, count: int):
    # powers q^0 .. q^(count-1) for q = exp(2 pi i / n)
    q = mpmath.expjpi(mpmath.mpf(2) / n)
    out = [mp.mpc(1)] * count
    for i in range(1, count):
        out[i] = out[i - 1] * q
    return out


def harmonic_numeric(index, n: int, precision: int = 128, star: bool = False) -> mpmath.mpc:
    """The multiple harmonic sum at level n and q = exp(2 pi i / n)."""
    index = check_index(index)
    if n < 1:
        raise ValueError("level must be >= 1")
    if not index:
        return mp.mpc(1)
    with mp.workprec(precision + _GUARD):
        qpow = _root_powers(n, n)
        one = mp.mpc(1)
        inv_qint = [None] * n
        one_minus_q = one - qpow[1] if n > 1 else None
        for m in range(1, n):
            inv_qint[m] = one_minus_q / (one - qpow[m % n]) if m > 1 else one
        below = [one] * n
        for k in reversed(index[1:]):
            run = mp.mpc(0)
            nxt = [None] * n
            for m in range(1, n):
                a_m = qpow[((k - 1) * m) % n] * inv_qint[m] ** k * below[m]
                if star:
                    run += a_m
                    nxt[m] = run
                else:
                    nxt[m] = run
                    run += a_m
            below = nxt
        k = index[0]
        total = mp.mpc(0)
        for m in range(1, n):
            total += qpow[((k - 1) * m) % n] * inv_qint[m] ** k * below[m]
    with mp.workprec(precision):
        return +total


def half_range_sum(index, n: int, precision: int = 128, sign: int = +1) -> mpmath.mpc:
    """Half-range partial sum with sine-normalized denominators.

    sign +1 sums over n/2 >= m_1 > ... > m_r > 0 with phases
    exp(+i pi (k-2) m / n); sign -1 uses a strict n/2 > m_1 bound and
    conjugate phases.  The empty index gives 1.
    """
    index = check_index(index)
    if n < 1:
        raise ValueError("level must be >= 1")
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    if not index:
        return mp.mpc(1)
    with mp.workprec(precision + _GUARD):
        # m ranges over 1 .. M where M respects the boundary convention
        if sign == +1:
            top = n // 2  # m <= n/2
        else:
            top = (n - 1) // 2  # m < n/2
        if n % 2 == 0 and sign == -1:
            top = n // 2 - 1
        pi_over_n = mp.pi / n
        norm = [None] * (top + 1)
        phase = [None] * (top + 1)
        for m in range(1, top + 1):
            norm[m] = (mp.mpf(n) / mp.pi) * mp.sin(m * pi_over_n)
            phase[m] = mpmath.expjpi(mp.mpf(sign * m) / n)  # exp(sign i pi m / n)
        below = [mp.mpc(1)] * (top + 2)
        for k in reversed(index[1:]):
            run = mp.mpc(0)
            nxt = [mp.mpc(0)] * (top + 2)
            for m in range(1, top + 1):
                a_m = phase[m] ** (k - 2) / norm[m] ** k * below[m]
                nxt[m] = run
                run += a_m
            below = nxt
        k = index[0]
        total = mp.mpc(0)
        for m in range(1, top + 1):
            total += phase[m] ** (k - 2) / norm[m] ** k * below[m]
    with mp.workprec(precision):
        return +total


def reassembled_from_half_sums(index, n: int, precision: int = 128) -> mpmath.mpc:
    """Rebuild the full sum from the half-range ones via the exact split.

    Equals harmonic_numeric(index, n) up to rounding; the agreement is a
    finite identity, not an asymptotic statement.
    """
    index = check_index(index)
    if not index:
        return mp.mpc(1)
    with mp.workprec(precision + 2 * _GUARD):
        r = len(index)
        total = mp.mpc(0)
        for a in range(r + 1):
            head = index[:a]
            tail = index[a:]
            flip = -1 if sum(head) % 2 else 1
            left = half_range_sum(tuple(reversed(head)), n, precision + _GUARD, sign=-1)
            right = half_range_sum(tail, n, precision + _GUARD, sign=+1)
            total += flip * left * right
        prefactor = mpmath.expjpi(mp.mpf(1) / n) * (mp.mpf(n) / mp.pi) * mp.sin(mp.pi / n)
        total *= prefactor ** weight(index)
    with mp.workprec(precision):
        return +total


# -- limit extrapolation ------------------------------------------------------


@dataclass
class LimitEstimate:
    """Extrapolated limit with a conservative error bar and diagnostics."""

    value: complex
    error: float
    converged: bool
    diagnostics: dict = field(default_factory=dict)


_LOG_EXPONENTS = (0, 1, 2, 3)


def _extrapolate(ns, values, precision):
    with mp.workprec(precision + _GUARD):
        best = None
        for a in _LOG_EXPONENTS:
            gs = [mp.log(n) ** a / n for n in ns]
            ests = []
            for (n1, g1, v1), (n2, g2, v2) in zip(zip(ns, gs, values), list(zip(ns, gs, values))[1:]):
                ests.append((v2 * g1 - v1 * g2) / (g1 - g2))
            if len(ests) < 2:
                est = ests[-1]
                err = abs(values[-1] - est)
                cand = (float(err), a, est, ests)
            else:
                err = abs(ests[-1] - ests[-2])
                cand = (float(err), a, ests[-1], ests)
            if best is None or cand[0] < best[0]:
                best = cand
        err, a, est, ests = best
        diffs = [float(abs(x - y)) for x, y in zip(ests[1:], ests)]
        converged = len(ests) >= 2 and (len(diffs) < 2 or diffs[-1] <= diffs[0])
        error = 2 * err + float(mp.mpf(2) ** (-precision // 2))
    return est, error, converged, a, ests


def limit_estimate(index, schedule, precision: int = 128, star: bool = False) -> LimitEstimate:
    """Estimate the large-n limit of the sums along an increasing schedule.

    Evaluates the sum at each scheduled level and extrapolates under the
    model c0 + c1 (log n)^a / n, choosing the log exponent by the decay of
    successive Richardson estimates.  The error bar doubles the last
    successive difference; failure of the differences to shrink flags the
    result as non-converged.
    """
    index = check_index(index)
    schedule = [int(n) for n in schedule]
    if len(schedule) < 3 or any(b <= a for a, b in zip(schedule, schedule[1:])):
        raise ValueError("schedule must be increasing with at least 3 points")
    values = [harmonic_numeric(index, n, precision, star) for n in schedule]
    est, error, converged, a, ests = _extrapolate(schedule, values, precision)
    diag = {
        "log_exponent": a,
        "points": [(n, complex(v)) for n, v in zip(schedule, values)],
        "richardson": [complex(e) for e in ests],
    }
    return LimitEstimate(complex(est), error, converged, diag)


def star_limit_from_plain(index, schedule, precision: int = 128) -> LimitEstimate:
    """Assemble the star limit from plain limits over all part-merging patterns.

    Lower-weight correction terms vanish in the limit, so the star value is
    the sum of the plain limits over every way of replacing commas by plus
    signs; error bars add.
    """
    index = check_index(index)
    if not index:
        return LimitEstimate(1.0 + 0j, 0.0, True, {})
    total = 0j
    err = 0.0
    converged = True
    r = len(index)
    for mask in range(2 ** (r - 1)):
        parts = [index[0]]
        for i in range(1, r):
            if mask >> (i - 1) & 1:
                parts[-1] += index[i]
            else:
                parts.append(index[i])
        est = limit_estimate(tuple(parts), schedule, precision, star=False)
        total += est.value
        err += est.error
        converged = converged and est.converged
    return LimitEstimate(total, err, converged, {"terms": 2 ** (r - 1)})


def star_duality_residual(index, schedule, precision: int = 128) -> float:
    """|star-limit(dual) + conj(star-limit(index))|, estimated numerically."""
    index = check_index(index)
    if not index:
        raise ValueError("the empty index has no dual")
    lhs = limit_estimate(hoffman_dual(index), schedule, precision, star=True)
    rhs = limit_estimate(index, schedule, precision, star=True)
    return abs(lhs.value + rhs.value.conjugate())
