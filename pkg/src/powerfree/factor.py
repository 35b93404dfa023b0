"""Integer factorisation and primality.

Two backends produce the same :class:`Factorization`:

* ``"flint"`` delegates to FLINT's ``fmpz.factor``;
* ``"python"`` does trial division to 10^5, then Miller-Rabin and
  Pollard rho with Brent's cycle detection.

Whatever the backend, every result is certified here: the factors are
multiplied back together and each is re-tested with a deterministic
Miller-Rabin independent of FLINT.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError, InternalInconsistency

try:
    import flint as _flint
except ImportError:  # pragma: no cover - flint is a declared dependency
    _flint = None

__all__ = ["Factorization", "factorize", "is_prime", "small_primes", "DEFAULT_BACKEND"]

TRIAL_LIMIT = 10 ** 5
DEFAULT_BACKEND = "flint" if _flint is not None else "python"

# first 13 primes: deterministic for n < 3.3e24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_DETERMINISTIC_BELOW = 3_317_044_064_679_887_385_961_981
# (bound, number of leading bases that suffice below it)
_MR_TIERS = (
    (3_215_031_751, 4),
    (341_550_071_728_321, 7),
    (3_825_123_056_546_413_051, 9),
    (318_665_857_834_031_151_167_461, 12),
    (_MR_DETERMINISTIC_BELOW, 13),
)


@lru_cache(maxsize=1)
def small_primes(limit: int = TRIAL_LIMIT) -> tuple[int, ...]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, limit + 1, i)))
    return tuple(i for i, v in enumerate(sieve) if v)


def _strong_probable_prime(n: int, a: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def _miller_rabin(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    for bound, count in _MR_TIERS:
        if n < bound:
            return all(_strong_probable_prime(n, a) for a in _MR_BASES[:count])
    if not all(_strong_probable_prime(n, a) for a in _MR_BASES):
        return False
    # beyond the deterministic range fall back to a proving test
    if _flint is not None:
        return bool(_flint.fmpz(n).is_prime())
    extra = (43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)
    return all(_strong_probable_prime(n, a) for a in extra)


def is_prime(n: int) -> bool:
    """Primality; exact below 3.3e24 and proved by FLINT above that."""
    return _miller_rabin(int(n))


def _pollard_brent(n: int, c: int) -> int:
    """A nontrivial factor of composite odd ``n``, or ``n`` on failure."""
    y, m, g, r, q = 2, 128, 1, 1, 1
    x = ys = y
    f = lambda v: (v * v + c) % n  # noqa: E731
    while g == 1:
        x = y
        for _ in range(r):
            y = f(y)
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = f(y)
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        r *= 2
    if g == n:
        while True:
            ys = f(ys)
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return g


def _split_python(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if _miller_rabin(n):
        out[n] = out.get(n, 0) + 1
        return
    r = math.isqrt(n)
    if r * r == n:
        _split_python(r, out)
        _split_python(r, out)
        return
    c = 1
    while True:
        g = _pollard_brent(n, c)
        if 1 < g < n:
            break
        c += 1
    _split_python(g, out)
    _split_python(n // g, out)


def _factor_python(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for p in small_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
    if n > 1:
        if n < TRIAL_LIMIT * TRIAL_LIMIT:
            out[n] = out.get(n, 0) + 1
        else:
            _split_python(n, out)
    return out


def _factor_flint(n: int) -> dict[int, int]:
    return {int(p): int(e) for p, e in _flint.fmpz(n).factor()}


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]
    certified: bool

    def __post_init__(self):
        ps = [p for p, _ in self.factors]
        if ps != sorted(set(ps)):
            raise InternalInconsistency("factor list is not strictly increasing")

    @property
    def omega(self) -> int:
        return len(self.factors)

    @property
    def max_exponent(self) -> int:
        return max((e for _, e in self.factors), default=0)

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]


def factorize(n: int, backend: str | None = None, certify: bool = True) -> Factorization:
    """Complete factorisation of ``|n|``; ``n = 0`` is rejected."""
    n = int(n)
    if n == 0:
        raise DomainError("cannot factor 0")
    m = abs(n)
    backend = backend or DEFAULT_BACKEND
    if backend == "flint":
        raw = _factor_flint(m) if m > 1 else {}
    elif backend == "python":
        raw = _factor_python(m)
    else:
        raise DomainError(f"unknown factorisation backend {backend!r}")
    factors = tuple(sorted(raw.items()))
    if certify:
        prod = 1
        for p, e in factors:
            if not _miller_rabin(p):
                raise InternalInconsistency(f"backend {backend} returned non-prime factor {p} of {n}")
            prod *= p ** e
        if prod != m:
            raise InternalInconsistency(f"factors of {n} multiply to {prod}")
    return Factorization(n, factors, certify)
