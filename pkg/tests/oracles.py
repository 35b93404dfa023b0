"""Independent reference computations for the test suite.

Nothing here calls the code under test except for prime lists.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import flint
import numpy as np
import sympy

LIMIT = 10 ** 5
_CHUNK = 128


@lru_cache(maxsize=None)
def primes(limit: int) -> tuple[int, ...]:
    return tuple(int(p) for p in sympy.primerange(2, limit + 1))


def prime_powers(limit: int = LIMIT) -> list[tuple[int, int]]:
    out = []
    for p in primes(limit):
        q, k = p, 1
        while q <= limit:
            out.append((p, k))
            q *= p
            k += 1
    return out


def _small_prime_counts(coeffs, limit, out):
    """Evaluate f on every residue mod the top power of each p <= sqrt(limit)."""
    for p in primes(math.isqrt(limit)):
        top, kmax = p, 1
        while top * p <= limit:
            top *= p
            kmax += 1
        r = np.arange(top, dtype=np.int64)
        v = np.zeros(top, dtype=np.int64)
        for c in reversed(coeffs):
            v = (v * r + c) % top
        unit = r % p != 0
        q = 1
        for k in range(1, kmax + 1):
            q *= p
            hit = v[:q] % q == 0
            out[(p, k)] = (int(hit.sum()), int((hit & unit[:q]).sum()))


@lru_cache(maxsize=None)
def _suffix_primorials(limit: int) -> dict[int, flint.fmpz]:
    """Product of primes above ``max(start, sqrt(limit))`` for every chunk start."""
    big = [p for p in primes(limit) if p * p > limit]
    out = {}
    acc = flint.fmpz(1)
    idx = len(big) - 1
    for start in range((limit // _CHUNK) * _CHUNK, -1, -_CHUNK):
        while idx >= 0 and big[idx] > start:
            acc *= big[idx]
            idx -= 1
        out[start] = acc
    return out


def root_counts_bruteforce(coeffs, limit: int = LIMIT) -> dict[tuple[int, int], tuple[int, int]]:
    """``(p, k) -> (#roots, #unit roots)`` of ``f`` mod ``p^k`` for every ``p^k <= limit``.

    Every residue is examined.  Primes below ``sqrt(limit)`` are handled by
    direct evaluation; for larger primes (only ``k = 1`` applies) residue
    ``r`` is tested against all primes ``p > r`` at once through a gcd with
    their product.
    """
    coeffs = [int(c) for c in coeffs]
    out: dict[tuple[int, int], tuple[int, int]] = {}
    _small_prime_counts(coeffs, limit, out)
    big = [p for p in primes(limit) if p * p > limit]
    for p in big:
        out[(p, 1)] = (0, 0)
    suffix = _suffix_primorials(limit)
    horner = "0"
    for c in reversed(coeffs):
        horner = f"({horner})*r+({c})"
    values = eval(f"[{horner} for r in range({limit})]")
    for start in range(0, limit, _CHUNK):
        chunk = values[start:start + _CHUNK]
        M = suffix[start]
        if M == 1:
            break
        G = int(M.gcd(math.prod(v for v in chunk if v) or 1))
        for i, v in enumerate(chunk):
            r = start + i
            if v == 0:
                divisors = [p for p in big if p > r]
            else:
                g = math.gcd(v, G)
                if g == 1:
                    continue
                divisors = [int(p) for p, _ in flint.fmpz(g).factor() if p > r]
            for p in divisors:
                a, u = out[(p, 1)]
                out[(p, 1)] = (a + 1, u + (r % p != 0))
    return out


def sylvester_resultant(a, b) -> int:
    """Resultant as the determinant of the Sylvester matrix (ascending coefficient lists)."""
    a = list(a)
    b = list(b)
    m, n = len(a) - 1, len(b) - 1
    rows = []
    for i in range(n):
        rows.append([0] * i + a[::-1] + [0] * (n - 1 - i))
    for i in range(m):
        rows.append([0] * i + b[::-1] + [0] * (m - 1 - i))
    return int(sympy.Matrix(rows).det(method="bareiss"))


def entropy_from_counts(counts: dict[int, int]) -> float:
    order = sum(counts.values())
    return math.fsum(c / order * lam * math.log(lam) for lam, c in counts.items() if lam > 1)


def derangements(n: int) -> int:
    return round(math.factorial(n) / math.e) if n else 1


def squarefree_count(N: int) -> int:
    return sum(1 for n in range(1, N + 1) if all(e < 2 for e in sympy.factorint(n).values()))


def two_square_by_search(n: int) -> bool:
    a = 0
    while a * a <= n:
        b = math.isqrt(n - a * a)
        if b * b == n - a * a:
            return True
        a += 1
    return False


def rho_two_squares_bruteforce(a: int, m: int, window: int) -> Fraction:
    """Share of sums of two squares below ``window`` lying in ``a mod m`` (frequency, not a limit)."""
    hits = total = 0
    for n in range(1, window):
        if two_square_by_search(n):
            total += 1
            hits += n % m == a % m
    return Fraction(hits, total)


def two_square_class_counts(N: int, m: int) -> list[int]:
    """Counts of ``n <= N`` of the form ``a^2 + b^2`` in each class mod ``m``, by marking all pairs."""
    hit = np.zeros(N + 1, dtype=bool)
    for a in range(math.isqrt(N) + 1):
        b = np.arange(a, math.isqrt(N - a * a) + 1)
        hit[a * a + b * b] = True
    hit[0] = False
    n = np.nonzero(hit)[0]
    return np.bincount(n % m, minlength=m).tolist()


def rho_binary_form_bruteforce(coeffs, p: int) -> int:
    """Pairs ``(x, y)`` mod ``p^2`` with ``F(x, y) = 0 mod p^2``; ``coeffs[i]`` multiplies ``x^i y^(d-i)``."""
    m = p * p
    d = len(coeffs) - 1
    x = np.arange(m, dtype=np.int64)[:, None]
    y = np.arange(m, dtype=np.int64)[None, :]
    total = np.zeros((m, m), dtype=np.int64)
    for i, c in enumerate(coeffs):
        term = np.full((m, m), c % m, dtype=np.int64)
        for _ in range(i):
            term = term * x % m
        for _ in range(d - i):
            term = term * y % m
        total = (total + term) % m
    return int((total == 0).sum())


def root_count_mod_prime(coeffs, q: int) -> int:
    """Distinct roots of ``f`` mod ``q`` as ``deg gcd(x^q - x, f)``, using sympy's finite-field routines."""
    from sympy.polys.domains import ZZ
    from sympy.polys.galoistools import gf_from_int_poly, gf_gcd, gf_pow_mod, gf_sub

    f = gf_from_int_poly(list(reversed([int(c) for c in coeffs])), q)
    if not f:
        return q
    xq = gf_pow_mod([1, 0], q, f, q, ZZ)
    g = gf_gcd(gf_sub(xq, [1, 0], q, ZZ), f, q, ZZ)
    return len(g) - 1
