"""The quasi-shuffle word algebra on indices and its one-parameter deformation.

An index is a tuple of positive integers.  A WordSum is a finite formal
Q[hbar]-linear combination of indices, where hbar is a degree marker of
weight one; the hbar-free part is the plain word algebra.  The module
provides the stuffle and star-stuffle products, their hbar-deformed
versions, the Hoffman dual, the signed dual-reversal involution, the
weight-raising maps that absorb hbar factors, and the conversions between
star-type and strict-type harmonic sums.
"""

from __future__ import annotations

from fractions import Fraction

Index = tuple  # tuple of positive ints; the empty tuple is the empty index

_ZERO = Fraction(0)
_ONE = Fraction(1)


def check_index(index) -> Index:
    index = tuple(index)
    if any((not isinstance(k, int)) or k < 1 for k in index):
        raise ValueError(f"index parts must be positive integers, got {index}")
    return index


def weight(index) -> int:
    return sum(index)


def depth(index) -> int:
    return len(index)


def reverse_index(index) -> Index:
    return tuple(reversed(index))


def hoffman_dual(index) -> Index:
    """Swap the two letters in the binary-word encoding, fixing the final one.

    The index (k_1, ..., k_r) encodes as 0^(k_1-1) 1 ... 0^(k_r-1) 1; the dual
    swaps 0 <-> 1 on everything but the final letter and decodes back.
    Weight is preserved.
    """
    index = check_index(index)
    if not index:
        raise ValueError("the empty index has no Hoffman dual")
    word = []
    for k in index:
        word.extend([0] * (k - 1))
        word.append(1)
    flipped = [1 - b for b in word[:-1]] + [1]
    out = []
    run = 0
    for b in flipped:
        if b:
            out.append(run + 1)
            run = 0
        else:
            run += 1
    return tuple(out)


def parse_index(text: str) -> Index:
    """Parse 'k1,k2,...' (empty string means the empty index)."""
    text = text.strip()
    if not text:
        return ()
    try:
        parts = tuple(int(p) for p in text.split(","))
    except ValueError as exc:
        raise ValueError(f"bad index string {text!r}") from exc
    return check_index(parts)


def format_index(index) -> str:
    return ",".join(str(k) for k in index)


class WordSum:
    """A finite Q[hbar]-combination of indices, keyed by (index, hbar degree)."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        data = {}
        if terms:
            for (index, hdeg), coeff in terms.items():
                coeff = Fraction(coeff)
                if coeff:
                    data[(tuple(index), int(hdeg))] = coeff
        object.__setattr__(self, "_terms", data)

    def __setattr__(self, name, value):
        raise AttributeError("WordSum is immutable")

    def __reduce__(self):
        return (WordSum, (self._terms,))

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "WordSum":
        return cls()

    @classmethod
    def word(cls, index, coeff=1, hbar_degree: int = 0) -> "WordSum":
        index = check_index(index)
        if hbar_degree < 0:
            raise ValueError("hbar degree must be >= 0")
        return cls({(index, hbar_degree): Fraction(coeff)})

    @classmethod
    def unit(cls) -> "WordSum":
        return cls.word(())

    # -- container protocol -------------------------------------------------

    def items(self):
        return self._terms.items()

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def coefficient(self, index, hbar_degree: int = 0) -> Fraction:
        return self._terms.get((tuple(index), hbar_degree), _ZERO)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    @property
    def hbar_free(self) -> bool:
        return all(h == 0 for (_, h) in self._terms)

    def max_hbar_degree(self) -> int:
        return max((h for (_, h) in self._terms), default=0)

    def total_weights(self) -> set:
        """Set of total weights wt(index) + hbar degree over the terms."""
        return {sum(i) + h for (i, h) in self._terms}

    def __eq__(self, other):
        if not isinstance(other, WordSum):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        if not self._terms:
            return "WordSum(0)"
        bits = []
        for (index, h), c in sorted(self._terms.items()):
            head = f"{c}*e{list(index)}"
            if h:
                head += f"*hbar^{h}"
            bits.append(head)
        return "WordSum(" + " + ".join(bits) + ")"

    # -- linear structure ----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, WordSum):
            return NotImplemented
        data = dict(self._terms)
        for key, c in other._terms.items():
            s = data.get(key, _ZERO) + c
            if s:
                data[key] = s
            else:
                data.pop(key, None)
        return _raw(data)

    def __sub__(self, other):
        if not isinstance(other, WordSum):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return _raw({k: -c for k, c in self._terms.items()})

    def __mul__(self, scalar):
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        scalar = Fraction(scalar)
        if not scalar:
            return WordSum.zero()
        return _raw({k: c * scalar for k, c in self._terms.items()})

    __rmul__ = __mul__

    def times_hbar(self, power: int = 1) -> "WordSum":
        if power < 0:
            raise ValueError("hbar power must be >= 0")
        return _raw({(i, h + power): c for (i, h), c in self._terms.items()})

    def hbar_part(self, hdeg: int) -> dict:
        """The indices of hbar-degree hdeg with their coefficients."""
        return {i: c for (i, h), c in self._terms.items() if h == hdeg}

    # -- serialization -------------------------------------------------------

    def to_json(self) -> list:
        out = []
        for (index, h), c in sorted(self._terms.items()):
            out.append({
                "index": format_index(index),
                "hbar_degree": h,
                "coeff": f"{c.numerator}/{c.denominator}",
            })
        return out

    @classmethod
    def from_json(cls, data) -> "WordSum":
        terms = {}
        for entry in data:
            index = parse_index(entry["index"])
            h = int(entry.get("hbar_degree", entry.get("hbar", 0)))
            c = Fraction(str(entry["coeff"]))
            key = (index, h)
            terms[key] = terms.get(key, _ZERO) + c
        return cls(terms)


def _raw(data: dict) -> WordSum:
    # Internal: wrap an already-normalized dict without copying.
    w = WordSum.__new__(WordSum)
    object.__setattr__(w, "_terms", data)
    return w


def _bump(acc: dict, key, c):
    s = acc.get(key)
    if s is None:
        acc[key] = c
    else:
        s = s + c
        if s:
            acc[key] = s
        else:
            del acc[key]


# -- quasi-shuffle products --------------------------------------------------

def _word_product(u: Index, v: Index, sign: int, deformed: bool, memo: dict) -> dict:
    # Product of two monomials as {(index, hdeg): int}; memoized on suffix pairs.
    if not u:
        return {(v, 0): 1}
    if not v:
        return {(u, 0): 1}
    key = (u, v)
    hit = memo.get(key)
    if hit is not None:
        return hit
    k1, k2 = u[0], v[0]
    acc: dict = {}
    for (idx, h), c in _word_product(u[1:], v, sign, deformed, memo).items():
        _bump(acc, ((k1,) + idx, h), c)
    for (idx, h), c in _word_product(u, v[1:], sign, deformed, memo).items():
        _bump(acc, ((k2,) + idx, h), c)
    merged = _word_product(u[1:], v[1:], sign, deformed, memo)
    for (idx, h), c in merged.items():
        _bump(acc, ((k1 + k2,) + idx, h), sign * c)
        if deformed:
            _bump(acc, ((k1 + k2 - 1,) + idx, h + 1), sign * c)
    memo[key] = acc
    return acc


def _bilinear(v: WordSum, w: WordSum, sign: int, deformed: bool) -> WordSum:
    memo: dict = {}
    out: dict = {}
    for (iu, hu), cu in v.items():
        for (iv, hv), cv in w.items():
            c = cu * cv
            for (idx, h), m in _word_product(iu, iv, sign, deformed, memo).items():
                _bump(out, (idx, h + hu + hv), c * m)
    return _raw(out)


def stuffle(v: WordSum, w: WordSum) -> WordSum:
    """Quasi-shuffle product with a plus merge term."""
    return _bilinear(v, w, +1, False)


def star_stuffle(v: WordSum, w: WordSum) -> WordSum:
    """Quasi-shuffle product with a minus merge term."""
    return _bilinear(v, w, -1, False)


def q_stuffle(v: WordSum, w: WordSum) -> WordSum:
    """Deformed stuffle: merges contribute e_(k+k') plus hbar e_(k+k'-1)."""
    return _bilinear(v, w, +1, True)


def q_star_stuffle(v: WordSum, w: WordSum) -> WordSum:
    """Deformed star-stuffle: merge contribution carries a minus sign."""
    return _bilinear(v, w, -1, True)


# -- duality -----------------------------------------------------------------

def dual_involution(w: WordSum) -> WordSum:
    """Send each index to (-1)^(weight+1) times the reversed Hoffman dual.

    An involution on hbar-free sums; raises on hbar terms.
    """
    out: dict = {}
    for (index, h), c in w.items():
        if h:
            raise ValueError("dual involution is defined on hbar-free sums only")
        if not index:
            raise ValueError("dual involution is undefined on the empty index")
        image = reverse_index(hoffman_dual(index))
        sign = 1 if weight(index) % 2 else -1  # (-1)^(wt+1)
        _bump(out, (image, 0), sign * c)
    return _raw(out)


# -- weight raising and hbar elimination ---------------------------------------

def _raise_monomial(index: Index, star: bool) -> WordSum:
    d = len(index)
    if star:
        coeff = Fraction(2, 2 * d - 1)
        return coeff * star_stuffle(WordSum.word((1,)), WordSum.word(index))
    coeff = Fraction(-2, 2 * d + 1)
    return coeff * stuffle(WordSum.word((1,)), WordSum.word(index))


def _raise_sum(w: WordSum, star: bool) -> WordSum:
    out = WordSum.zero()
    for (index, h), c in w.items():
        if h:
            raise ValueError("weight raising is defined on hbar-free sums only")
        out = out + c * _raise_monomial(index, star)
    return out


def weight_raise(w: WordSum) -> WordSum:
    """The map absorbing one hbar factor on the strict-sum side; weight +1."""
    return _raise_sum(w, star=False)


def weight_raise_star(w: WordSum) -> WordSum:
    """Star-side weight raising; weight +1.

    On the empty index the depth-zero coefficient is 2/(2*0 - 1) = -2, a case
    the defining formula allows, so no error is raised there.
    """
    return _raise_sum(w, star=True)


def _eliminate(w: WordSum, star: bool) -> WordSum:
    # Horner over hbar degree: sum_j L^j(part_j) with one raise per step.
    top = w.max_hbar_degree()
    acc = _raw({(i, 0): c for i, c in w.hbar_part(top).items()})
    for h in range(top - 1, -1, -1):
        acc = _raise_sum(acc, star)
        acc = acc + _raw({(i, 0): c for i, c in w.hbar_part(h).items()})
    return acc


def eliminate_hbar(w: WordSum) -> WordSum:
    """Replace each hbar^k term by the k-fold weight raise of its index."""
    if w.is_zero:
        return w
    return _eliminate(w, star=False)


def eliminate_hbar_star(w: WordSum) -> WordSum:
    if w.is_zero:
        return w
    return _eliminate(w, star=True)


def reduced_q_stuffle(v: WordSum, w: WordSum) -> WordSum:
    """Deformed stuffle followed by hbar elimination; weight-homogeneous."""
    if not (v.hbar_free and w.hbar_free):
        raise ValueError("reduced products take hbar-free arguments")
    return eliminate_hbar(q_stuffle(v, w))


def reduced_q_star_stuffle(v: WordSum, w: WordSum) -> WordSum:
    if not (v.hbar_free and w.hbar_free):
        raise ValueError("reduced products take hbar-free arguments")
    return eliminate_hbar_star(q_star_stuffle(v, w))


# -- star/strict conversions ----------------------------------------------------

def star_to_plain(index) -> WordSum:
    """Expand a star-type sum into strict-type sums, hbar marking 1-q powers.

    Recursive split on whether the two leading summation variables are equal:
    equality merges the leading parts into e_(k1+k2) + hbar e_(k1+k2-1).
    """
    index = check_index(index)
    return _star_to_plain(index, {})


def _star_to_plain(index: Index, memo: dict) -> WordSum:
    if len(index) <= 1:
        return WordSum.word(index)
    hit = memo.get(index)
    if hit is not None:
        return hit
    k1, k2 = index[0], index[1]
    rest = index[2:]
    out: dict = {}
    for (idx, h), c in _star_to_plain(index[1:], memo).items():
        _bump(out, ((k1,) + idx, h), c)
    for (idx, h), c in _star_to_plain((k1 + k2,) + rest, memo).items():
        _bump(out, (idx, h), c)
    for (idx, h), c in _star_to_plain((k1 + k2 - 1,) + rest, memo).items():
        _bump(out, (idx, h + 1), c)
    result = _raw(out)
    memo[index] = result
    return result


def plain_to_star(index) -> WordSum:
    """Inverse of star_to_plain: strict-type sums in terms of star-type sums."""
    index = check_index(index)
    return _plain_to_star(index, {})


def _plain_to_star(index: Index, memo: dict) -> WordSum:
    if len(index) <= 1:
        return WordSum.word(index)
    hit = memo.get(index)
    if hit is not None:
        return hit
    k1, k2 = index[0], index[1]
    rest = index[2:]
    out: dict = {}
    for (idx, h), c in _plain_to_star(index[1:], memo).items():
        _bump(out, ((k1,) + idx, h), c)
    for (idx, h), c in _plain_to_star((k1 + k2,) + rest, memo).items():
        _bump(out, (idx, h), -c)
    for (idx, h), c in _plain_to_star((k1 + k2 - 1,) + rest, memo).items():
        _bump(out, (idx, h + 1), -c)
    result = _raw(out)
    memo[index] = result
    return result


def apply_linear(w: WordSum, fn) -> WordSum:
    """Extend an index-to-WordSum map linearly over an hbar-free sum."""
    out = WordSum.zero()
    for (index, h), c in w.items():
        if h:
            raise ValueError("linear extension over hbar-free sums only")
        out = out + c * fn(index)
    return out


def substitute_indices(w: WordSum, fn) -> WordSum:
    """Replace each index by fn(index), carrying hbar degrees through."""
    out = WordSum.zero()
    for (index, h), c in w.items():
        out = out + c * fn(index).times_hbar(h)
    return out


def indices_of_weight(k: int):
    """All indices of a given weight, in lexicographic order (2^(k-1) of them)."""
    if k < 0:
        raise ValueError("weight must be >= 0")
    if k == 0:
        return [()]
    out = []

    def rec(remaining, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for first in range(1, remaining + 1):
            prefix.append(first)
            rec(remaining - first, prefix)
            prefix.pop()

    rec(k, [])
    return out
