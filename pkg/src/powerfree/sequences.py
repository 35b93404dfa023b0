"""Concrete sieved sequences: all integers, the primes, and sums of two squares.

Each kind comes with a membership sieve and a density oracle ``rho(a, m)``
giving the limiting share of members in the class ``a mod m``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .errors import DomainError
from .factor import factorize
from .localarith import rho_two_squares

__all__ = [
    "SequenceKind",
    "prime_sieve",
    "two_squares_mask",
    "membership_mask",
    "enumerate",
    "iter_members",
    "density_oracle",
    "TightnessReport",
    "tightness_diagnostics",
    "landau_ramanujan_constant",
    "residue_distribution",
    "MAX_MATERIALIZED",
]

MAX_MATERIALIZED = 10 ** 8


class SequenceKind(enum.Enum):
    INTEGERS = ("integers", Fraction(0), "all primes")
    PRIMES = ("primes", Fraction(1), "all primes")
    TWO_SQUARES = ("two-squares", Fraction(1, 2), "primes = 3 mod 4")

    def __init__(self, token: str, theta: Fraction, sieving_set: str):
        self.token = token
        self.theta = theta
        self.sieving_set = sieving_set

    @classmethod
    def parse(cls, value) -> SequenceKind:
        if isinstance(value, SequenceKind):
            return value
        text = str(value).strip().lower().replace("_", "-")
        for kind in cls:
            if kind.token == text:
                return kind
        raise DomainError(f"unknown sequence kind {value!r}; expected integers, primes or two-squares")

    def __str__(self) -> str:
        return self.token


def prime_sieve(limit: int) -> np.ndarray:
    """All primes ``<= limit`` as an int64 array."""
    limit = int(limit)
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    is_p = np.ones(limit + 1, dtype=bool)
    is_p[:2] = False
    is_p[4::2] = False
    for i in range(3, math.isqrt(limit) + 1, 2):
        if is_p[i]:
            is_p[i * i::2 * i] = False
    return np.flatnonzero(is_p).astype(np.int64)


def two_squares_mask(limit: int) -> np.ndarray:
    """Boolean array ``m`` with ``m[n]`` true iff ``n`` (``1 <= n <= limit``) is a sum of two squares.

    For each prime ``p = 3 mod 4`` and odd ``e``, add one on multiples of
    ``p^e`` and subtract one on multiples of ``p^(e+1)``; the tally at ``n``
    is then the number of such primes with ``v_p(n)`` odd.
    """
    limit = int(limit)
    tally = np.zeros(limit + 1, dtype=np.int16)
    for p in prime_sieve(limit):
        p = int(p)
        if p % 4 != 3:
            continue
        pe = p
        while pe <= limit:
            tally[pe::pe] += 1
            pe1 = pe * p
            if pe1 > limit:
                break
            tally[pe1::pe1] -= 1
            pe = pe1 * p
    mask = tally == 0
    mask[0] = False
    return mask


def membership_mask(kind: SequenceKind | str, limit: int) -> np.ndarray:
    kind = SequenceKind.parse(kind)
    limit = int(limit)
    if limit > MAX_MATERIALIZED:
        raise DomainError(f"materialised sieves are limited to N <= {MAX_MATERIALIZED}")
    if kind is SequenceKind.INTEGERS:
        mask = np.ones(limit + 1, dtype=bool)
        mask[0] = False
        return mask
    if kind is SequenceKind.PRIMES:
        mask = np.zeros(limit + 1, dtype=bool)
        mask[prime_sieve(limit)] = True
        return mask
    return two_squares_mask(limit)


def enumerate(kind: SequenceKind | str, N: int) -> tuple[np.ndarray, int]:  # noqa: A001
    """Members ``<= N`` in increasing order, and their count."""
    if N < 1:
        raise DomainError("N must be >= 1")
    members = np.flatnonzero(membership_mask(kind, N)).astype(np.int64)
    return members, int(members.size)


def iter_members(kind: SequenceKind | str, N: int, block: int = 1 << 20) -> Iterator[int]:
    """Stream members ``<= N`` without materialising the whole range.

    Works block by block with a segmented sieve over base primes up to ``sqrt(N)``.
    """
    kind = SequenceKind.parse(kind)
    base = prime_sieve(math.isqrt(N) + 1)
    lo = 1
    while lo <= N:
        hi = min(N, lo + block - 1)
        yield from (int(n) for n in _segment(kind, lo, hi, base))
        lo = hi + 1


def _segment(kind: SequenceKind, lo: int, hi: int, base: np.ndarray) -> np.ndarray:
    ns = np.arange(lo, hi + 1, dtype=np.int64)
    if kind is SequenceKind.INTEGERS:
        return ns
    if kind is SequenceKind.PRIMES:
        keep = ns >= 2
        for p in base:
            p = int(p)
            if p * p > hi:
                break
            start = max(p * p, ((lo + p - 1) // p) * p)
            keep[start - lo::p] = False
        return ns[keep]
    # two squares: strip every base prime, tracking parity at p = 3 mod 4
    rest = ns.copy()
    bad = np.zeros(ns.size, dtype=bool)
    for p in base:
        p = int(p)
        if p * p > hi:
            break
        start = ((lo + p - 1) // p) * p
        idx = np.arange(start - lo, ns.size, p)
        parity = np.zeros(idx.size, dtype=bool)
        sub = rest[idx]
        while idx.size:
            div = sub % p == 0
            if not div.any():
                break
            sub = np.where(div, sub // p, sub)
            parity ^= div
        rest[idx] = sub
        if p % 4 == 3:
            bad[idx] |= parity
    # what is left is 1 or a single prime above sqrt(hi)
    bad |= (rest % 4 == 3)
    return ns[~bad]


# ---------------------------------------------------------------------------
# Density oracles


def _phi(m: int) -> int:
    out = m
    for p, _ in factorize(m).factors:
        out = out // p * (p - 1)
    return out


def density_oracle(kind: SequenceKind | str, a: int, m: int) -> Fraction:
    """Limiting share of members lying in the class ``a mod m``.

    For sums of two squares the odd part comes from the local table and the
    2-part from the exact 2-adic law (``two_adic="derived"``).
    """
    kind = SequenceKind.parse(kind)
    if m < 1:
        raise DomainError("m must be >= 1")
    if m == 1:
        return Fraction(1)
    if kind is SequenceKind.INTEGERS:
        return Fraction(1, m)
    if kind is SequenceKind.PRIMES:
        return Fraction(1, _phi(m)) if math.gcd(a, m) == 1 else Fraction(0)
    out = Fraction(1)
    for p, e in factorize(m).factors:
        out *= rho_two_squares(a, p, e, two_adic="derived")
        if not out:
            break
    return out


# ---------------------------------------------------------------------------
# Diagnostics


def landau_ramanujan_constant(cutoff: int = 10 ** 6) -> tuple[float, float]:
    """``(2 prod_{p = 3 mod 4} (1 - p^-2))^(-1/2)`` truncated at ``cutoff``, with an error bound.

    The omitted factors change the log of the product by at most
    ``sum_{n > P} 1/(n^2 - 1) < 1/P``, so the constant moves by at most half that
    in relative terms.
    """
    ps = prime_sieve(cutoff)
    ps = ps[ps % 4 == 3].astype(float)
    log_prod = float(np.sum(np.log1p(-1.0 / ps ** 2)))
    value = (2.0 * math.exp(log_prod)) ** -0.5
    rel = 0.5 / cutoff
    return value, value * (math.exp(rel) - 1.0)


@dataclass(frozen=True)
class TightnessReport:
    kind: SequenceKind
    N: int
    count: int
    ratio: float
    reference: float
    reference_error: float

    def as_dict(self) -> dict:
        return {"kind": self.kind.token, "N": self.N, "count": self.count, "ratio": self.ratio,
                "reference": self.reference, "reference_error": self.reference_error}


def tightness_diagnostics(kind: SequenceKind | str, N: int) -> TightnessReport:
    """``count(N) (log N)^theta / N`` next to its limiting value."""
    kind = SequenceKind.parse(kind)
    if N < 100:
        raise DomainError("N must be >= 100")
    _, count = enumerate(kind, N)
    ratio = count * math.log(N) ** float(kind.theta) / N
    if kind is SequenceKind.TWO_SQUARES:
        ref, err = landau_ramanujan_constant()
    else:
        ref, err = 1.0, 0.0
    return TightnessReport(kind, N, count, ratio, ref, err)


def residue_distribution(kind: SequenceKind | str, N: int, m: int) -> np.ndarray:
    """Empirical share of members ``<= N`` in each class mod ``m``."""
    members, count = enumerate(kind, N)
    return np.bincount(members % m, minlength=m) / count
