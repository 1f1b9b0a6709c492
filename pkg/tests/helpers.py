"""Shared independent oracles for the test suite.

Everything here recomputes values by a route different from the library
code it checks: brute-force chain enumeration instead of prefix sums,
numeric root products instead of polynomial division, explicit interleaving
instead of the recursive product.
"""

import cmath
import itertools
from fractions import Fraction

from cycmzv.cyclotomic import CycloElem, q_integer
from cycmzv.words import WordSum


def brute_harmonic(index, n, star=False):
    """Chain enumeration with plain field arithmetic; exponential, small n only."""
    index = tuple(index)
    if not index:
        return CycloElem.one(n)
    r = len(index)
    zeta = CycloElem.zeta(n)
    total = CycloElem.zero(n)
    chains = (itertools.combinations_with_replacement(range(1, n), r) if star
              else itertools.combinations(range(1, n), r))
    for chain in chains:
        ms = tuple(sorted(chain, reverse=True))
        term = CycloElem.one(n)
        for k, m in zip(index, ms):
            term = term * zeta ** ((k - 1) * m) / q_integer(m, n) ** k
        total = total + term
    return total


def brute_truncated_mod(index, p, star=False):
    """Direct chain enumeration of the truncated sum in Q, then one reduction."""
    index = tuple(index)
    if not index:
        return 1 % p
    r = len(index)
    chains = (itertools.combinations_with_replacement(range(1, p), r) if star
              else itertools.combinations(range(1, p), r))
    total = Fraction(0)
    for chain in chains:
        ms = sorted(chain, reverse=True)
        term = Fraction(1)
        for k, m in zip(index, ms):
            term /= Fraction(m) ** k
        total += term
    return total.numerator * pow(total.denominator, -1, p) % p


def interleave_product(u, v, sign, deformed):
    """Quasi-shuffle by explicit surjection patterns instead of recursion.

    Enumerates all ways to place the letters of u and v on a chain of slots
    where each slot holds a letter of u, of v, or one of each (a merge);
    merges multiply by sign and, when deformed, additionally branch into a
    lowered letter with one extra hbar.
    """
    out = {}
    r, s = len(u), len(v)
    for merges in range(0, min(r, s) + 1):
        length = r + s - merges
        for upos in itertools.combinations(range(length), r):
            vslots = [i for i in range(length) if i not in upos]
            # choose which u slots also take a v letter
            for shared in itertools.combinations(upos, merges):
                slots_v = sorted(vslots + list(shared))
                if len(slots_v) != s:
                    continue
                word = []
                ui = iter(u)
                vi = iter(v)
                uat = {i: next(ui) for i in upos}
                vat = {i: next(vi) for i in slots_v}
                ok = True
                for i in range(length):
                    if i in uat and i in vat:
                        word.append((uat[i] + vat[i], True))
                    elif i in uat:
                        word.append((uat[i], False))
                    elif i in vat:
                        word.append((vat[i], False))
                    else:
                        ok = False
                if not ok:
                    continue
                base_sign = sign ** merges
                merge_slots = [i for i, (_, m) in enumerate(word) if m]
                for lowered in _subsets(merge_slots) if deformed else [()]:
                    idx = []
                    h = 0
                    for i, (k, _) in enumerate(word):
                        if i in lowered:
                            idx.append(k - 1)
                            h += 1
                        else:
                            idx.append(k)
                    key = (tuple(idx), h)
                    out[key] = out.get(key, 0) + base_sign
    return WordSum({k: Fraction(c) for k, c in out.items() if c})


def _subsets(items):
    for mask in range(2 ** len(items)):
        yield tuple(items[i] for i in range(len(items)) if mask >> i & 1)


def numeric_cyclotomic_poly(n):
    """Round the coefficients of prod (x - primitive n-th roots)."""
    import math
    roots = [cmath.exp(2j * cmath.pi * k / n) for k in range(1, n + 1)
             if math.gcd(k, n) == 1]
    coeffs = [1.0 + 0j]
    for root in roots:
        nxt = [0j] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i] += c * (-root)
            nxt[i + 1] += c
        coeffs = nxt
    return tuple(round(c.real) for c in coeffs)


def binary_word_dual(index):
    """Hoffman dual straight from the textbook letter swap (independent path)."""
    bits = []
    for k in index:
        bits += [0] * (k - 1) + [1]
    swapped = [1 - b for b in bits[:-1]] + [bits[-1]]
    parts = []
    count = 1
    for b in swapped:
        if b == 1:
            parts.append(count)
            count = 1
        else:
            count += 1
    return tuple(parts)
