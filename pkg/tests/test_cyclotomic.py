import math
import random
from fractions import Fraction

import mpmath
import pytest

from cycmzv.cyclotomic import (CycloElem, LevelMismatchError,
                               PrimeExcludedError, ResidueVector,
                               cyclotomic_poly, embed_complex, q_integer,
                               reduce_mod, totient)
from cycmzv.qseries import harmonic

from helpers import numeric_cyclotomic_poly


def test_cyclotomic_poly_small():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)


def test_cyclotomic_poly_against_root_product():
    for n in range(1, 40):
        assert cyclotomic_poly(n) == numeric_cyclotomic_poly(n)
        assert len(cyclotomic_poly(n)) == totient(n) + 1


def test_inverse_of_one_minus_zeta4():
    elem = CycloElem.one(4) - CycloElem.zeta(4)
    inv = elem.inverse()
    assert inv == (CycloElem.one(4) + CycloElem.zeta(4)) / 2
    assert elem * inv == CycloElem.one(4)


def test_root_of_unity_powers():
    for n in (2, 3, 5, 12):
        assert CycloElem.zeta(n) ** n == CycloElem.one(n)
        assert CycloElem.zeta(n) ** (n + 1) == CycloElem.zeta(n)


def test_additive_identity():
    a = CycloElem.from_polynomial(7, [1, 2, 3])
    assert a + CycloElem.zero(7) == a
    assert a - a == CycloElem.zero(7)


def test_level_mismatch_and_zero_division():
    with pytest.raises(LevelMismatchError):
        CycloElem.one(3) + CycloElem.one(4)
    with pytest.raises(ZeroDivisionError):
        CycloElem.one(5) / CycloElem.zero(5)


def _random_elem(rng, n):
    return CycloElem(n, [Fraction(rng.randint(-6, 6), rng.randint(1, 4))
                         for _ in range(totient(n))])


def test_field_axioms_random_levels():
    rng = random.Random(20240)
    for _ in range(120):
        n = rng.randint(2, 30)
        a, b, c = (_random_elem(rng, n) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        if not a.is_zero:
            assert a * a.inverse() == CycloElem.one(n)


def test_q_integer_small():
    assert q_integer(1, 9) == CycloElem.one(9)
    assert q_integer(2, 5) == CycloElem.one(5) + CycloElem.zeta(5)
    z7 = CycloElem.zeta(7)
    assert q_integer(3, 7) == CycloElem.one(7) + z7 + z7 * z7


def test_q_integer_defining_identity():
    for n in range(2, 51):
        zeta = CycloElem.zeta(n)
        one = CycloElem.one(n)
        for m in range(1, n):
            assert q_integer(m, n) * (one - zeta) == one - zeta ** m


def test_q_integer_domain():
    with pytest.raises(ValueError):
        q_integer(5, 5)
    with pytest.raises(ValueError):
        q_integer(0, 5)


def test_reduce_mod_multiple_of_p():
    p = 7
    elem = CycloElem.zeta(p) * p
    assert reduce_mod(elem, "full").is_zero


def test_reduce_mod_generator_dies():
    p = 11
    elem = CycloElem.one(p) - CycloElem.zeta(p)
    assert reduce_mod(elem, "prime").value == 0
    assert not reduce_mod(elem, "full").is_zero


def test_reduce_mod_depth_one_value():
    # harmonic((1,), 5) = 2 (1 - zeta_5)
    vec = reduce_mod(harmonic((1,), 5), "full")
    assert vec.coords == (2, (-2) % 5, 0, 0)
    assert reduce_mod(harmonic((1,), 5), "prime").value == 0


def test_reduce_mod_denominator_exclusion():
    with pytest.raises(PrimeExcludedError):
        reduce_mod(CycloElem.rational(5, Fraction(1, 5)))


def test_prime_reduction_factors_through_full():
    rng = random.Random(7)
    for p in (3, 5, 7, 11, 13, 31, 97):
        for _ in range(8):
            elem = CycloElem(p, [Fraction(rng.randint(-20, 20)) for _ in range(p - 1)])
            full = reduce_mod(elem, "full")
            assert sum(full.coords) % p == reduce_mod(elem, "prime").value


def test_residue_vector_validation():
    with pytest.raises(ValueError):
        ResidueVector(5, "full", (1, 2))
    v = ResidueVector(5, "full", (6, -1, 0, 0))
    assert v.coords == (1, 4, 0, 0)


def test_embed_zeta4_is_i():
    v = embed_complex(CycloElem.zeta(4), 1, 64)
    assert abs(v - mpmath.mpc(0, 1)) < mpmath.mpf(2) ** -60


def test_embed_one_minus_zeta_large_level():
    n = 10 ** 4
    v = embed_complex(CycloElem.one(n) - CycloElem.zeta(n), 1, 80)
    approx = -2j * mpmath.pi / n
    assert abs(v - approx) < 10.0 / n ** 2


def test_embed_q_integer_value():
    v = embed_complex(q_integer(3, 6), 1, 100)
    want = 1 + mpmath.exp(1j * mpmath.pi / 3) + mpmath.exp(2j * mpmath.pi / 3)
    assert abs(v - want) < mpmath.mpf(2) ** -90
    assert abs(v - (1 + 1j * mpmath.sqrt(3))) < mpmath.mpf(2) ** -90


def test_embed_is_ring_homomorphism():
    rng = random.Random(5)
    prec = 96
    for _ in range(40):
        n = rng.randint(2, 20)
        a, b = _random_elem(rng, n), _random_elem(rng, n)
        with mpmath.workprec(prec):
            lhs = embed_complex(a * b, 1, prec)
            rhs = embed_complex(a, 1, prec) * embed_complex(b, 1, prec)
            assert abs(lhs - rhs) < mpmath.mpf(2) ** (-prec // 2)


def test_embed_rejects_bad_exponent():
    with pytest.raises(ValueError):
        embed_complex(CycloElem.zeta(6), 2, 64)
    with pytest.raises(ValueError):
        embed_complex(CycloElem.zeta(6), 1, 32)


def test_galois_automorphism():
    rng = random.Random(11)
    for _ in range(30):
        n = rng.randint(2, 24)
        t = rng.choice([t for t in range(1, n) if math.gcd(t, n) == 1] or [1])
        a, b = _random_elem(rng, n), _random_elem(rng, n)
        assert (a * b).galois(t) == a.galois(t) * b.galois(t)
        assert (a + b).galois(t) == a.galois(t) + b.galois(t)


def test_serialization_round_trip():
    elem = CycloElem.from_polynomial(12, [Fraction(1, 3), 2, Fraction(-5, 7), 1, 9])
    assert CycloElem.from_json(elem.to_json()) == elem
