"""Truncated harmonic sums modulo primes and their cyclotomic refinements.

Values live over explicit prime windows: an AdelicValue holds one residue
per prime plus a ledger of primes excluded because a denominator was
divisible by them.  Two independent evaluation routes are provided: a
direct F_p prefix-sum for the classical truncated sums, and a cyclotomic
route that tracks the full residue of the root-of-unity sum modulo (p)
before collapsing to F_p.  The relation verifier evaluates word-algebra
combinations per prime in either ring and reports zero/nonzero/excluded.
"""

from __future__ import annotations

import json
import warnings
from fractions import Fraction

from .cyclotomic import PrimeExcludedError, ResidueVector, _is_prime
from .words import WordSum, check_index, format_index


def primes_in(lo: int, hi: int) -> list[int]:
    """All primes in the closed range [lo, hi]."""
    return [p for p in range(max(lo, 2), hi + 1) if _is_prime(p)]


# -- direct F_p route ----------------------------------------------------------


def _inverse_table(p: int) -> list[int]:
    inv = [0] * p
    if p > 1:
        inv[1] = 1
    for m in range(2, p):
        inv[m] = (p - (p // m) * inv[p % m]) % p
    return inv


def truncated_harmonic_mod(index, p: int, star: bool = False) -> int:
    """The truncated multiple harmonic sum below p, reduced in F_p.

    Prefix-sum recursion over the chain variables; no cyclotomic data is
    involved, which keeps this route independent of the root-of-unity one.
    """
    index = check_index(index)
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not index:
        return 1 % p
    inv = _inverse_table(p)
    below = [1] * p  # chains strictly (or weakly) below m, initially empty chain
    for k in reversed(index[1:]):
        run = 0
        nxt = [0] * p
        for m in range(1, p):
            a_m = pow(inv[m], k, p) * below[m] % p
            if star:
                run = (run + a_m) % p
                nxt[m] = run
            else:
                nxt[m] = run
                run = (run + a_m) % p
        below = nxt
    k = index[0]
    return sum(pow(inv[m], k, p) * below[m] for m in range(1, p)) % p


# -- cyclotomic route mod (p) ----------------------------------------------------


class ResidueEvaluator:
    """Root-of-unity harmonic sums with all coordinates reduced mod a prime.

    Elements are vectors of length p over F_p in the cyclic representation
    Z[x]/(x^p - 1, p); q-integer inverses are exact 0/1 vectors, so the whole
    prefix-sum recursion stays integral.  The final reduction modulo the
    cyclotomic polynomial gives the residue of the exact value modulo (p).
    """

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self._factor = {}
        self._tails = {}
        self._one = tuple([1] + [0] * (p - 1))

    def _mul(self, a, b):
        p = self.p
        out = [0] * p
        for i, c in enumerate(a):
            if c:
                for j, d in enumerate(b):
                    if d:
                        k = i + j
                        if k >= p:
                            k -= p
                        out[k] += c * d
        return tuple(c % p for c in out)

    def _part_factor(self, m: int, k: int):
        hit = self._factor.get((m, k))
        if hit is not None:
            return hit
        p = self.p
        mprime = pow(m, -1, p)
        inv = [0] * p
        for j in range(mprime):
            inv[(j * m) % p] += 1
        inv = tuple(c % p for c in inv)
        acc = inv
        for _ in range(k - 1):
            acc = self._mul(acc, inv)
        shift = ((k - 1) * m) % p
        out = acc[-shift:] + acc[:-shift] if shift else acc
        self._factor[(m, k)] = out
        return out

    def _tail_sums(self, suffix, star):
        p = self.p
        if not suffix:
            return [self._one] * p
        key = (suffix, star)
        hit = self._tails.get(key)
        if hit is not None:
            return hit
        below = self._tail_sums(suffix[1:], star)
        k = suffix[0]
        zero = tuple([0] * p)
        out = [zero] * p
        run = zero
        for m in range(1, p):
            a_m = self._mul(self._part_factor(m, k), below[m])
            if star:
                run = tuple((x + y) % p for x, y in zip(run, a_m))
                out[m] = run
            else:
                out[m] = run
                run = tuple((x + y) % p for x, y in zip(run, a_m))
        self._tails[key] = out
        return out

    def raw_value(self, index, star: bool = False):
        """Length-p cyclic vector of the value mod p (before basis reduction)."""
        index = check_index(index)
        p = self.p
        if not index:
            return self._one
        if not star and len(index) >= p:
            return tuple([0] * p)
        below = self._tail_sums(index[1:], star)
        k = index[0]
        total = [0] * p
        for m in range(1, p):
            for i, c in enumerate(self._mul(self._part_factor(m, k), below[m])):
                total[i] += c
        return tuple(c % p for c in total)

    def _to_residue(self, vec) -> ResidueVector:
        # zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2)) modulo the cyclotomic polynomial
        p = self.p
        top = vec[p - 1]
        return ResidueVector(p, "full", [(c - top) % p for c in vec[: p - 1]])

    def value(self, index, star: bool = False) -> ResidueVector:
        return self._to_residue(self.raw_value(index, star))

    def value_wordsum(self, w: WordSum, star: bool = False) -> ResidueVector:
        """Linear extension with hbar mapped to 1 - zeta; coefficients mod p.

        Raises PrimeExcludedError when p divides a coefficient denominator.
        """
        p = self.p
        total = [0] * p
        one_minus_zeta = tuple([1, -1 % p] + [0] * (p - 2))
        hpow = {0: self._one}
        for (index, h), c in w.items():
            if c.denominator % p == 0:
                raise PrimeExcludedError(p, f"coefficient denominator {c.denominator}")
            scalar = c.numerator * pow(c.denominator, -1, p) % p
            if h not in hpow:
                top = max(hpow)
                while top < h:
                    hpow[top + 1] = self._mul(hpow[top], one_minus_zeta)
                    top += 1
            vec = self._mul(self.raw_value(index, star), hpow[h])
            for i, v in enumerate(vec):
                total[i] = (total[i] + scalar * v) % p
        return self._to_residue(total)


# -- prime-window containers --------------------------------------------------


class AdelicValue:
    """A value over a finite window of primes, with per-prime exclusions.

    ``entries`` maps a prime to an int residue in F_p (ring "A") or to a
    ResidueVector modulo (p) (ring "Acyc"); ``excluded`` maps skipped primes
    to the reason they were skipped.
    """

    __slots__ = ("ring", "entries", "excluded")

    def __init__(self, ring: str, entries: dict, excluded: dict | None = None):
        if ring not in ("A", "Acyc"):
            raise ValueError("ring must be 'A' or 'Acyc'")
        self.ring = ring
        self.entries = dict(entries)
        self.excluded = dict(excluded or {})
        overlap = set(self.entries) & set(self.excluded)
        if overlap:
            raise ValueError(f"primes both stored and excluded: {sorted(overlap)}")

    def primes(self) -> list[int]:
        return sorted(self.entries)

    def is_zero_at(self, p: int) -> bool:
        v = self.entries[p]
        return v.is_zero if isinstance(v, ResidueVector) else v % p == 0

    @property
    def all_zero(self) -> bool:
        return all(self.is_zero_at(p) for p in self.entries)

    def __repr__(self):
        shown = {p: self.entries[p] for p in self.primes()[:4]}
        return f"AdelicValue(ring={self.ring}, entries~{shown}, excluded={sorted(self.excluded)})"

    def to_json(self) -> dict:
        out = {}
        for p in sorted(self.entries):
            v = self.entries[p]
            out[str(p)] = v.to_json() if isinstance(v, ResidueVector) else v
        for p in sorted(self.excluded):
            out[str(p)] = {"excluded": self.excluded[p]}
        return {"ring": self.ring, "values": out}


def fmzv(index, primes, star: bool = False) -> AdelicValue:
    """Finite multiple zeta value over a prime window, by direct F_p sums."""
    index = check_index(index)
    entries = {p: truncated_harmonic_mod(index, p, star) for p in primes}
    return AdelicValue("A", entries)


def fmzv_star(index, primes) -> AdelicValue:
    return fmzv(index, primes, star=True)


def cyclotomic_fmzv(obj, primes, star: bool = False) -> AdelicValue:
    """Cyclotomic refinement: the root-of-unity value mod (p) per prime.

    Accepts an index or a WordSum (hbar mapped to 1 - zeta_p).  Primes
    dividing a coefficient denominator are recorded as excluded.
    """
    entries: dict = {}
    excluded: dict = {}
    w = obj if isinstance(obj, WordSum) else WordSum.word(check_index(obj))
    for p in primes:
        ev = ResidueEvaluator(p)
        try:
            entries[p] = ev.value_wordsum(w, star)
        except PrimeExcludedError as exc:
            excluded[p] = str(exc)
    return AdelicValue("Acyc", entries, excluded)


# -- relation verification ---------------------------------------------------


class RelationReport:
    """Per-prime outcome of evaluating a linear combination in a chosen ring."""

    def __init__(self, ring: str, mode: str, results: dict):
        self.ring = ring
        self.mode = mode
        self.results = results  # prime -> {"status": ..., "residue"/"reason": ...}

    @property
    def all_zero(self) -> bool:
        return all(r["status"] != "nonzero" for r in self.results.values())

    def failing_primes(self) -> list[int]:
        return sorted(p for p, r in self.results.items() if r["status"] == "nonzero")

    def excluded_primes(self) -> list[int]:
        return sorted(p for p, r in self.results.items() if r["status"] == "excluded")

    def to_json(self) -> dict:
        out = {}
        for p in sorted(self.results):
            out[str(p)] = dict(self.results[p])
        return {"ring": self.ring, "mode": self.mode, "ok": self.all_zero, "primes": out}

    def to_csv(self) -> str:
        lines = ["prime,status,detail"]
        for p in sorted(self.results):
            r = self.results[p]
            detail = r.get("residue", r.get("reason", ""))
            if isinstance(detail, (list, tuple)):
                detail = " ".join(str(x) for x in detail)
            lines.append(f"{p},{r['status']},{detail}")
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return json.dumps(self.to_json())


def verify_relation(combo: WordSum, ring: str, primes, mode: str = "plain") -> RelationReport:
    """Evaluate a word combination per prime and report where it vanishes.

    ring "A": coefficients reduce into F_p and indices evaluate as truncated
    harmonic sums; hbar terms vanish there.  ring "Acyc": full residue mod
    (p) with hbar mapped to 1 - zeta_p.  mode selects strict or star sums.
    """
    if ring not in ("A", "Acyc"):
        raise ValueError("ring must be 'A' or 'Acyc'")
    if mode not in ("plain", "star"):
        raise ValueError("mode must be 'plain' or 'star'")
    star = mode == "star"
    if len(combo.total_weights()) > 1:
        warnings.warn("relation combination is not weight-homogeneous", stacklevel=2)
    results: dict = {}
    for p in primes:
        try:
            if ring == "A":
                total = 0
                for (index, h), c in combo.items():
                    if c.denominator % p == 0:
                        raise PrimeExcludedError(p, f"coefficient denominator {c.denominator}")
                    if h:
                        continue  # the hbar generator dies in F_p
                    scalar = c.numerator * pow(c.denominator, -1, p) % p
                    total = (total + scalar * truncated_harmonic_mod(index, p, star)) % p
                if total:
                    results[p] = {"status": "nonzero", "residue": total}
                else:
                    results[p] = {"status": "zero"}
            else:
                vec = ResidueEvaluator(p).value_wordsum(combo, star)
                if vec.is_zero:
                    results[p] = {"status": "zero"}
                else:
                    results[p] = {"status": "nonzero", "residue": list(vec.coords)}
        except PrimeExcludedError as exc:
            results[p] = {"status": "excluded", "reason": str(exc)}
    return RelationReport(ring, mode, results)


def adelic_report_csv(value: AdelicValue) -> str:
    """CSV export of an AdelicValue, one line per prime."""
    lines = ["prime,status,value"]
    for p in sorted(value.entries):
        v = value.entries[p]
        if isinstance(v, ResidueVector):
            lines.append(f"{p},ok,{' '.join(str(c) for c in v.coords)}")
        else:
            lines.append(f"{p},ok,{v}")
    for p in sorted(value.excluded):
        lines.append(f"{p},excluded,{value.excluded[p]}")
    return "\n".join(lines) + "\n"
