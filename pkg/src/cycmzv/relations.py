"""Relation families, dimension bounds, and kernel probes.

The relation family in a given weight consists of the duality elements
(index minus its signed reversed Hoffman dual) and the double-shuffle
elements built from the reduced deformed star product.  Upper bounds for
the dimension of the weight-graded value space follow by subtracting the
family's rank from the number of indices.  Observed dimensions rank the
actual coordinate vectors of the root-of-unity values at a prime.

Row generation streams the double-shuffle elements orbit by orbit under
the duality involution so each product is expanded exactly once, and the
big eliminations run over fixed word-size prime fields; the exact Bareiss
route is available for cross-checks at small weight.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import PrimeExcludedError, _is_prime
from .finite_values import ResidueEvaluator
from .linalg import (MODULAR_PRIMES, RationalMatrix, modular_rank,
                     rank_kernel, rational_rows_rank)
from .qseries import Evaluator
from .words import (WordSum, _raw, _word_product, check_index, hoffman_dual,
                    indices_of_weight, reverse_index, weight)

_ZERO = Fraction(0)
_ONE = Fraction(1)


# -- raw-dict kernels for the hot paths ------------------------------------------


def _dual_rev(index):
    return reverse_index(hoffman_dual(index))


def _delta_sign(index) -> int:
    return 1 if weight(index) % 2 else -1


def _delta_dict(d: dict) -> dict:
    out: dict = {}
    for idx, c in d.items():
        image = _dual_rev(idx)
        val = c if _delta_sign(idx) == 1 else -c
        prev = out.get(image)
        out[image] = val if prev is None else prev + val
    return {i: c for i, c in out.items() if c}


def _raise_star_dict(d: dict) -> dict:
    # e_1 star e_k: insertions at every gap minus merges into every part,
    # scaled by 2/(2 depth - 1)
    out: dict = {}
    for idx, c in d.items():
        r = len(idx)
        coef = c * Fraction(2, 2 * r - 1)
        for i in range(r + 1):
            key = idx[:i] + (1,) + idx[i:]
            s = out.get(key, _ZERO) + coef
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        for i in range(r):
            key = idx[:i] + (idx[i] + 1,) + idx[i + 1:]
            s = out.get(key, _ZERO) - coef
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return out


def _reduced_q_star_dict(a, b) -> dict:
    # e_a tilde-star e_b as {index: Fraction}, via Horner over the hbar degree
    prod = _word_product(a, b, -1, True, {})
    parts: dict = {}
    top = 0
    for (idx, h), c in prod.items():
        parts.setdefault(h, {})[idx] = parts.get(h, {}).get(idx, 0) + c
        if h > top:
            top = h
    acc = {i: Fraction(c) for i, c in parts.get(top, {}).items() if c}
    for h in range(top - 1, -1, -1):
        acc = _raise_star_dict(acc)
        for idx, c in parts.get(h, {}).items():
            s = acc.get(idx, _ZERO) + c
            if s:
                acc[idx] = s
            else:
                acc.pop(idx, None)
    return acc


def _pair_key(a, b):
    return (a, b) if a <= b else (b, a)


def _double_shuffle_rows(k: int):
    """Yield the double-shuffle rows of weight k as {index: Fraction} dicts.

    Pairs are visited once per unordered pair, grouped into orbits of the
    duality involution so every reduced product is expanded a single time.
    """
    sign = -1 if k % 2 else 1  # (-1)^k applied to the dualized product
    handled = set()
    for wa in range(1, k // 2 + 1):
        wb = k - wa
        for a in indices_of_weight(wa):
            for b in indices_of_weight(wb):
                pair = _pair_key(a, b)
                if pair in handled:
                    continue
                at, bt = _dual_rev(a), _dual_rev(b)
                mirror = _pair_key(at, bt)
                handled.add(pair)
                p1 = _reduced_q_star_dict(*pair)
                if mirror == pair:
                    p2 = p1
                else:
                    handled.add(mirror)
                    p2 = _reduced_q_star_dict(*mirror)
                row = dict(p1)
                for idx, c in _delta_dict(p2).items():
                    s = row.get(idx, _ZERO) - sign * c
                    if s:
                        row[idx] = s
                    else:
                        row.pop(idx, None)
                yield row
                if mirror != pair:
                    row = dict(p2)
                    for idx, c in _delta_dict(p1).items():
                        s = row.get(idx, _ZERO) - sign * c
                        if s:
                            row[idx] = s
                        else:
                            row.pop(idx, None)
                    yield row


def _duality_rows(k: int):
    for idx in indices_of_weight(k):
        row = {idx: _ONE}
        image = _dual_rev(idx)
        s = row.get(image, _ZERO) - (_ONE if _delta_sign(idx) == 1 else -_ONE)
        if s:
            row[image] = s
        else:
            row.pop(image, None)
        if row:
            yield row


def relation_rows(k: int):
    """All relation rows of weight k as {index: Fraction} dicts, streamed."""
    if k < 1:
        return
    yield from _duality_rows(k)
    if k >= 2:
        yield from _double_shuffle_rows(k)


def relation_family(k: int) -> list[WordSum]:
    """The duality and double-shuffle elements of weight k as WordSums.

    Zero elements are dropped; materializes everything, so intended for
    moderate weight (the streaming generator backs the dimension table).
    """
    if k < 1:
        raise ValueError("weight must be >= 1")
    return [_raw({(i, 0): c for i, c in row.items()}) for row in relation_rows(k)]


@dataclass(frozen=True)
class DimensionRow:
    k: int
    num_indices: int
    relation_rank: int
    upper_bound: int


def _rank_of_rows(k: int, method: str) -> int:
    cols = {idx: j for j, idx in enumerate(indices_of_weight(k))}
    n = len(cols)
    seen = set()
    dense_rows = []
    for row in relation_rows(k):
        if not row:
            continue
        items = sorted(((cols[i], c) for i, c in row.items()))
        lead = items[0][1]
        canon = tuple((j, c / lead) for j, c in items)
        if canon in seen:
            continue
        seen.add(canon)
        dense = [_ZERO] * n
        for j, c in items:
            dense[j] = c
        dense_rows.append(dense)
    if not dense_rows:
        return 0
    if method == "exact":
        return rank_kernel(RationalMatrix(dense_rows))[0]
    return rational_rows_rank(dense_rows)


def dimension_upper_bounds(k_max: int, method: str = "modular") -> list[DimensionRow]:
    """Upper bounds for the dimension of the weight-graded value space.

    For each k <= k_max the bound is 2^(k-1) minus the rank of the relation
    family (1 at k = 0).  method "modular" ranks over several fixed word-size
    primes and insists they agree; "exact" uses Bareiss and is only sensible
    for small k.
    """
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    out = [DimensionRow(0, 1, 0, 1)] if k_max >= 0 else []
    for k in range(1, k_max + 1):
        n = 2 ** (k - 1)
        rank = _rank_of_rows(k, method)
        out.append(DimensionRow(k, n, rank, n - rank))
    return out


# -- observed dimensions at a prime ------------------------------------------------


def _value_matrix(k: int, p: int) -> list[list[Fraction]]:
    ev = Evaluator(p)
    rows = []
    for idx in indices_of_weight(k):
        rows.append(list(ev.value(idx).coeffs))
    return rows


def observed_dimension(k: int, p: int) -> int:
    """Rank over Q of the coordinate vectors of all weight-k values at level p."""
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k == 0:
        return 1
    return rank_kernel(RationalMatrix(_value_matrix(k, p)))[0]


def discovered_relations(k: int, p: int) -> list[WordSum]:
    """Q-linear relations among the weight-k values at level p, as certificates.

    Left-kernel vectors of the value matrix, with coprime integer entries.
    """
    if k < 1:
        raise ValueError("weight must be >= 1")
    matrix = RationalMatrix(_value_matrix(k, p)).transpose()
    _, kernel = rank_kernel(matrix)
    indices = indices_of_weight(k)
    out = []
    for vec in kernel:
        out.append(_raw({(idx, 0): Fraction(c) for idx, c in zip(indices, vec) if c}))
    return out


# -- kernel probe for the projection to the plain finite values ---------------------


def _to_unipotent_coords(coords, p: int) -> list[int]:
    # rewrite sum c_i zeta^i with zeta = 1 - u as coordinates in u, mod p
    out = [0] * (p - 1)
    binom = [1]  # binomial row for (1-u)^i
    for i, c in enumerate(coords):
        if c:
            for j, b in enumerate(binom):
                out[j] = (out[j] + c * b * (-1) ** j) % p
        nxt = [1] * (len(binom) + 1)
        for t in range(1, len(binom)):
            nxt[t] = binom[t - 1] + binom[t]
        binom = nxt
    return out


def kernel_probe(combo: WordSum, primes) -> dict:
    """Probe whether a combination dies under the collapse to F_p, per prime.

    For each prime the report records whether the collapsed value vanishes
    (membership evidence for the kernel of the collapse map) and, when it
    does, whether the quotient by 1 - zeta lies in the span of the values one
    weight below at that prime, up to the one-dimensional ambiguity of the
    quotient (a rank test; evidence about divisibility within the value
    algebra rather than just the ambient ring).
    """
    weights = combo.total_weights()
    if len(weights) != 1:
        raise ValueError("kernel probe needs a weight-homogeneous combination")
    k = weights.pop()
    lower = indices_of_weight(k - 1) if k >= 1 else []
    report: dict = {}
    for p in primes:
        entry: dict = {}
        try:
            ev = ResidueEvaluator(p)
            vec = ev.value_wordsum(combo, star=False)
            ucoords = _to_unipotent_coords(vec.coords, p)
            entry["collapse_zero"] = ucoords[0] == 0
            if ucoords[0] == 0:
                quotient = ucoords[1:] + [0]
                span = []
                for idx in lower:
                    lvec = ev.value(idx)
                    span.append(_to_unipotent_coords(lvec.coords, p))
                ambiguity = [0] * (p - 1)
                ambiguity[p - 2] = 1
                span.append(ambiguity)
                base = modular_rank(span, p)
                extended = modular_rank(span + [quotient], p)
                entry["quotient_in_lower_span"] = extended == base
        except PrimeExcludedError as exc:
            entry = {"excluded": str(exc)}
        report[p] = entry
    return report
