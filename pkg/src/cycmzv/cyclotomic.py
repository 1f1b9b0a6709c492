"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Field elements are stored on the power basis 1, zeta, ..., zeta^(phi(n)-1)
with Fraction coordinates and are always reduced modulo the n-th cyclotomic
polynomial.  Any level n >= 1 is supported (n = 1 and n = 2 degenerate to Q).
The module also provides q-integers, residue reductions at prime levels
(modulo the full ideal (p) and modulo the ramified prime above p), and a
high-precision complex embedding.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import mpmath

_ZERO = Fraction(0)
_ONE = Fraction(1)


class LevelMismatchError(ValueError):
    """Arithmetic between elements of different cyclotomic levels."""


class PrimeExcludedError(ArithmeticError):
    """A denominator is divisible by the prime, so the value has no image there.

    Recoverable by design: prime windows simply record the prime as excluded.
    """

    def __init__(self, prime, detail=""):
        self.prime = prime
        super().__init__(f"prime {prime} excluded: {detail}" if detail else f"prime {prime} excluded")


def totient(n: int) -> int:
    """Euler's phi function."""
    if n < 1:
        raise ValueError("totient is defined for n >= 1")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_divide_exact(num: list[int], den: list[int]) -> list[int]:
    # Exact division of integer polynomials, den monic; coefficients low to high.
    num = list(num)
    deg_d = len(den) - 1
    quot = [0] * (len(num) - deg_d)
    for i in range(len(num) - 1, deg_d - 1, -1):
        c = num[i]
        if c == 0:
            continue
        quot[i - deg_d] = c
        for j, d in enumerate(den):
            num[i - deg_d + j] -= c * d
    if any(num):
        raise ArithmeticError("polynomial division left a remainder")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the n-th cyclotomic polynomial.

    Computed by dividing x^n - 1 by the cyclotomic polynomials of the proper
    divisors of n; monic of degree phi(n).
    """
    if n < 1:
        raise ValueError("level must be >= 1")
    if n == 1:
        return (-1, 1)
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divide_exact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


def _reduce_mod_cyclotomic(coeffs: list[Fraction], n: int) -> tuple[Fraction, ...]:
    # Remainder of a Fraction polynomial modulo the monic Phi_n; padded to phi(n).
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    work = list(coeffs)
    for i in range(len(work) - 1, deg - 1, -1):
        c = work[i]
        if c == 0:
            continue
        work[i] = _ZERO
        for j in range(deg):
            work[i - deg + j] -= c * phi[j]
    work = work[:deg]
    if len(work) < deg:
        work.extend([_ZERO] * (deg - len(work)))
    return tuple(Fraction(c) for c in work)


class CycloElem:
    """An element of Q(zeta_n) on the power basis, always in reduced form."""

    __slots__ = ("level", "coeffs")

    def __init__(self, level: int, coeffs):
        if level < 1:
            raise ValueError("level must be >= 1")
        deg = totient(level)
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != deg:
            raise ValueError(f"need {deg} coordinates at level {level}, got {len(coeffs)}")
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("CycloElem is immutable")

    def __reduce__(self):
        return (CycloElem, (self.level, self.coeffs))

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_polynomial(cls, level: int, coeffs) -> "CycloElem":
        """Build from a polynomial in zeta of any degree, reducing mod Phi_n."""
        return cls(level, _reduce_mod_cyclotomic([Fraction(c) for c in coeffs], level))

    @classmethod
    def zero(cls, level: int) -> "CycloElem":
        return cls(level, [_ZERO] * totient(level))

    @classmethod
    def one(cls, level: int) -> "CycloElem":
        return cls.rational(level, 1)

    @classmethod
    def rational(cls, level: int, value) -> "CycloElem":
        coeffs = [_ZERO] * totient(level)
        coeffs[0] = Fraction(value)
        return cls(level, coeffs)

    @classmethod
    def zeta(cls, level: int) -> "CycloElem":
        """The canonical primitive root of unity at this level."""
        return cls.from_polynomial(level, [0, 1])

    # -- basic protocol ----------------------------------------------------

    def __repr__(self):
        return f"CycloElem(level={self.level}, coeffs={[str(c) for c in self.coeffs]})"

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloElem.rational(self.level, other)
        if not isinstance(other, CycloElem):
            return NotImplemented
        return self.level == other.level and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.level, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    @property
    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def _check_level(self, other: "CycloElem"):
        if self.level != other.level:
            raise LevelMismatchError(f"levels differ: {self.level} vs {other.level}")

    def _coerce(self, other):
        if isinstance(other, CycloElem):
            return other
        if isinstance(other, (int, Fraction)):
            return CycloElem.rational(self.level, other)
        return None

    # -- field operations --------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        self._check_level(other)
        return CycloElem(self.level, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloElem(self.level, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        self._check_level(other)
        return CycloElem(self.level, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return CycloElem(self.level, [a * f for a in self.coeffs])
        if not isinstance(other, CycloElem):
            return NotImplemented
        self._check_level(other)
        a, b = self.coeffs, other.coeffs
        prod = [_ZERO] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        return CycloElem(self.level, _reduce_mod_cyclotomic(prod, self.level))

    __rmul__ = __mul__

    def inverse(self) -> "CycloElem":
        """Multiplicative inverse via the extended Euclidean algorithm mod Phi_n."""
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero cyclotomic element")
        phi = [Fraction(c) for c in cyclotomic_poly(self.level)]
        r0, r1 = phi, list(self.coeffs)
        s0, s1 = [_ZERO], [_ONE]
        while any(r1):
            q, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r0 is a nonzero constant gcd (Phi_n is irreducible)
        lead = next(c for c in reversed(r0) if c)
        inv = [c / lead for c in s0]
        return CycloElem.from_polynomial(self.level, inv)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            if f == 0:
                raise ZeroDivisionError("division by zero")
            return CycloElem(self.level, [a / f for a in self.coeffs])
        if not isinstance(other, CycloElem):
            return NotImplemented
        self._check_level(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CycloElem.one(self.level)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def galois(self, t: int) -> "CycloElem":
        """Apply the automorphism zeta -> zeta^t; t must be coprime to the level."""
        n = self.level
        if math.gcd(t % n, n) != 1:
            raise ValueError(f"exponent {t} is not coprime to level {n}")
        prod = [_ZERO] * n
        for i, c in enumerate(self.coeffs):
            if c:
                prod[(i * t) % n] += c
        return CycloElem.from_polynomial(n, prod)

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {"n": self.level, "coeffs": [format_fraction(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "CycloElem":
        return cls(int(data["n"]), [parse_fraction(s) for s in data["coeffs"]])


def format_fraction(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def parse_fraction(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    return Fraction(str(s))


def q_integer(m: int, n: int) -> CycloElem:
    """The q-integer (1 - zeta^m)/(1 - zeta) = 1 + zeta + ... + zeta^(m-1)."""
    if not 1 <= m < n:
        raise ValueError(f"q-integer needs 1 <= m < n, got m={m}, n={n}")
    return CycloElem.from_polynomial(n, [_ONE] * m)


class ResidueVector:
    """A residue of Z[zeta_p] modulo (p), or of F_p after sending zeta -> 1.

    ``ideal`` is "full" for the whole ideal (p), giving p-1 coordinates on
    the power basis, or "prime" for the ramified prime above p, giving a
    single F_p value.
    """

    __slots__ = ("prime", "ideal", "coords")

    def __init__(self, prime: int, ideal: str, coords):
        if ideal not in ("full", "prime"):
            raise ValueError("ideal must be 'full' or 'prime'")
        coords = tuple(int(c) % prime for c in coords)
        expected = prime - 1 if ideal == "full" else 1
        if len(coords) != expected:
            raise ValueError(f"expected {expected} coordinates, got {len(coords)}")
        object.__setattr__(self, "prime", prime)
        object.__setattr__(self, "ideal", ideal)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("ResidueVector is immutable")

    def __reduce__(self):
        return (ResidueVector, (self.prime, self.ideal, self.coords))

    def __repr__(self):
        return f"ResidueVector(p={self.prime}, ideal={self.ideal!r}, coords={self.coords})"

    def __eq__(self, other):
        if not isinstance(other, ResidueVector):
            return NotImplemented
        return (self.prime, self.ideal, self.coords) == (other.prime, other.ideal, other.coords)

    def __hash__(self):
        return hash((self.prime, self.ideal, self.coords))

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    @property
    def value(self) -> int:
        """The single F_p value; only for ideal='prime'."""
        if self.ideal != "prime":
            raise ValueError("value is defined for the prime-ideal reduction only")
        return self.coords[0]

    def collapse(self) -> "ResidueVector":
        """Push a mod-(p) vector down to F_p by substituting zeta -> 1."""
        if self.ideal == "prime":
            return self
        return ResidueVector(self.prime, "prime", (sum(self.coords) % self.prime,))

    def to_json(self):
        return {"p": self.prime, "ideal": self.ideal, "coords": list(self.coords)}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def reduce_mod(elem: CycloElem, ideal: str = "full") -> ResidueVector:
    """Reduce an element at prime level p modulo (p), or modulo the ramified prime.

    Denominators are inverted mod p; a denominator divisible by p raises
    PrimeExcludedError so that prime windows can skip the prime.
    """
    p = elem.level
    if not _is_prime(p):
        raise ValueError(f"residue reduction needs a prime level, got {p}")
    coords = []
    for c in elem.coeffs:
        if c.denominator % p == 0:
            raise PrimeExcludedError(p, f"denominator {c.denominator} divisible by {p}")
        coords.append(c.numerator * pow(c.denominator, -1, p) % p)
    vec = ResidueVector(p, "full", coords)
    return vec if ideal == "full" else vec.collapse()


_EMBED_GUARD_BITS = 24  # fixed guard used on top of the requested precision


def embed_complex(elem: CycloElem, root_exponent: int = 1, precision: int = 64) -> mpmath.mpc:
    """Numerically embed via zeta -> exp(2 pi i root_exponent / n).

    Arithmetic runs with _EMBED_GUARD_BITS guard bits and the result is
    rounded back to ``precision``, so the error is below 2^(-precision + g)
    with g = _EMBED_GUARD_BITS.
    """
    n = elem.level
    if math.gcd(root_exponent % n, n) != 1:
        raise ValueError(f"root exponent {root_exponent} is not coprime to {n}")
    if precision < 64:
        raise ValueError("precision must be at least 64 bits")
    with mpmath.workprec(precision + _EMBED_GUARD_BITS):
        root = mpmath.expjpi(mpmath.mpf(2 * (root_exponent % n)) / n)
        acc = mpmath.mpc(0)
        for c in reversed(elem.coeffs):
            acc = acc * root + mpmath.mpf(c.numerator) / c.denominator
    with mpmath.workprec(precision):
        return +acc


def _poly_divmod(num: list[Fraction], den: list[Fraction]):
    # Fraction polynomial division; den need not be monic.  Trims zero tails.
    num = list(num)
    while num and not num[-1]:
        num.pop()
    d = list(den)
    while d and not d[-1]:
        d.pop()
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    if len(num) < len(d):
        return [_ZERO], num or [_ZERO]
    q = [_ZERO] * (len(num) - len(d) + 1)
    lead = d[-1]
    for i in range(len(num) - 1, len(d) - 2, -1):
        c = num[i] / lead
        if c:
            q[i - (len(d) - 1)] = c
            for j, dj in enumerate(d):
                num[i - (len(d) - 1) + j] -= c * dj
    while num and not num[-1]:
        num.pop()
    return q, num or [_ZERO]


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return out


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    size = max(len(a), len(b))
    a = list(a) + [_ZERO] * (size - len(a))
    b = list(b) + [_ZERO] * (size - len(b))
    return [x - y for x, y in zip(a, b)]
