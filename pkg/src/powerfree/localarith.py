"""Polynomials over Z and their local behaviour at prime powers.

Root counts modulo ``p^k`` are found by solving modulo ``p`` and lifting one
level at a time.  On top of the counts sit the local densities, the
truncated Euler products with rigorous tail bounds, the truncated Moebius
series, obstruction checks and Frobenius fixed-point classes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product as cartesian
from typing import Iterable, Sequence

import flint
import sympy

from .errors import (DomainError, InvalidFormError, InvalidInputError, InvalidPrimeError,
                     UnsupportedInputError)
from .factor import factorize, is_prime
from .polyparse import parse_sparse

__all__ = [
    "IntPolynomial",
    "BinaryForm",
    "poly_invariants",
    "parse_polynomial",
    "parse_binary_form",
    "parse_polynomial_spec",
    "resultant",
    "roots_mod_p",
    "roots_mod_pk",
    "count_roots_mod_pk",
    "rho_two_squares",
    "rho_two_squares_poly",
    "rho_binary_form",
    "rho_binary_form_bruteforce",
    "LocalDensityTable",
    "DensityPrediction",
    "VARIANTS",
    "euler_product_density",
    "euler_tail_integral",
    "mobius_series_density",
    "ObstructionReport",
    "obstruction_check",
    "frobenius_lambda_class",
    "RAMIFIED",
    "primes_up_to",
]

RAMIFIED = "ramified"
VARIANTS = ("all_residues", "unit_residues", "two_squares", "binary_form")


# ---------------------------------------------------------------------------
# Integer polynomials


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    cs = [int(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _content(cs: Sequence[int]) -> int:
    g = 0
    for c in cs:
        g = math.gcd(g, c)
    return g


def _pseudo_rem(a: list[int], b: list[int]) -> list[int]:
    """``lc(b)^(deg a - deg b + 1) a mod b`` over Z."""
    a = list(a)
    lb, db = b[-1], len(b) - 1
    e = len(a) - len(b) + 1
    while len(a) - 1 >= db and a:
        la, shift = a[-1], len(a) - 1 - db
        a = [lb * x for x in a]
        for i, bi in enumerate(b):
            a[i + shift] -= la * bi
        a.pop()
        e -= 1
        while a and a[-1] == 0:
            a.pop()
    if e > 0:
        a = [x * lb ** e for x in a]
    return a


def resultant(a: Sequence[int], b: Sequence[int]) -> int:
    """Resultant of two integer polynomials (ascending coefficients), by subresultants."""
    A, B = list(_trim(a)), list(_trim(b))
    if not A or not B:
        return 0
    if len(A) == 1 and len(B) == 1:
        return 1
    ca, cb = _content(A), _content(B)
    A = [x // ca for x in A]
    B = [x // cb for x in B]
    da, db = len(A) - 1, len(B) - 1
    t = ca ** db * cb ** da
    s = 1
    if da < db:
        A, B = B, A
        if da % 2 and db % 2:
            s = -1
    g = h = 1
    while True:
        da, db = len(A) - 1, len(B) - 1
        if db == 0:
            break
        delta = da - db
        if da % 2 and db % 2:
            s = -s
        R = _pseudo_rem(A, B)
        if not R:
            return 0
        A = B
        div = g * h ** delta
        B = [x // div for x in R]
        g = A[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = g ** delta // h ** (delta - 1)
    da = len(A) - 1
    lb = B[0]
    if da == 0:
        h = 1
    elif da == 1:
        h = lb
    else:
        h = lb ** da // h ** (da - 1)
    return s * t * h


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial; ``coefficients[i]`` multiplies ``x^i``."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        cs = _trim(self.coefficients)
        if not cs:
            raise InvalidInputError("the zero polynomial is not allowed")
        object.__setattr__(self, "coefficients", cs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> int:
        return self.coefficients[-1]

    @cached_property
    def content(self) -> int:
        return _content(self.coefficients)

    @cached_property
    def discriminant(self) -> int:
        n = self.degree
        if n == 0:
            raise DomainError("discriminant of a constant is undefined")
        if n == 1:
            return 1
        res = resultant(self.coefficients, self.derivative().coefficients)
        sign = -1 if (n * (n - 1) // 2) % 2 else 1
        q, r = divmod(sign * res, self.leading)
        assert r == 0
        return q

    @cached_property
    def is_irreducible(self) -> bool:
        """Irreducible over Q (content ignored)."""
        if self.degree < 1:
            return False
        x = sympy.Symbol("x")
        return bool(sympy.Poly(list(reversed(self.coefficients)), x, domain="QQ").is_irreducible)

    def derivative(self) -> IntPolynomial:
        if self.degree == 0:
            raise DomainError("derivative of a constant is zero")
        return IntPolynomial(tuple(i * c for i, c in enumerate(self.coefficients))[1:])

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def eval_mod(self, x: int, m: int) -> int:
        acc = 0
        for c in reversed(self.coefficients):
            acc = (acc * x + c) % m
        return acc

    def __str__(self) -> str:
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coefficients[i]
            if c == 0:
                continue
            mono = "" if i == 0 else "x" if i == 1 else f"x^{i}"
            mag = abs(c)
            body = str(mag) if not mono else (mono if mag == 1 else f"{mag}*{mono}")
            parts.append(("-" if c < 0 else "+") + body)
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s


def poly_invariants(coefficients: Sequence[int]) -> IntPolynomial:
    if not coefficients:
        raise InvalidInputError("empty coefficient list")
    if coefficients[-1] == 0:
        raise InvalidInputError("leading coefficient must be nonzero")
    f = IntPolynomial(tuple(coefficients))
    # populate the cached invariants eagerly
    _ = f.content
    if f.degree >= 1:
        _ = f.discriminant
    return f


@dataclass(frozen=True)
class BinaryForm:
    """Homogeneous form; ``coefficients[i]`` multiplies ``x^i y^(d-i)``."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        cs = tuple(int(c) for c in self.coefficients)
        if len(cs) < 3 or not any(cs):
            raise InvalidFormError("a binary form needs degree >= 2 and a nonzero coefficient")
        object.__setattr__(self, "coefficients", cs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x: int, y: int) -> int:
        d = self.degree
        return sum(c * x ** i * y ** (d - i) for i, c in enumerate(self.coefficients))

    def affine_x(self) -> IntPolynomial:
        """``F(t, 1)``."""
        return IntPolynomial(self.coefficients)

    def affine_y(self) -> IntPolynomial:
        """``F(1, s)``."""
        return IntPolynomial(tuple(reversed(self.coefficients)))

    @cached_property
    def is_irreducible(self) -> bool:
        # y | F when the x^d coefficient vanishes
        return self.coefficients[-1] != 0 and self.affine_x().is_irreducible

    def __str__(self) -> str:
        d = self.degree
        parts = []
        for i in range(d, -1, -1):
            c = self.coefficients[i]
            if c == 0:
                continue
            mono = "*".join(m for m in (_pw("x", i), _pw("y", d - i)) if m)
            mag = abs(c)
            body = mono if mag == 1 else f"{mag}*{mono}"
            parts.append(("-" if c < 0 else "+") + body)
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s


def _pw(v: str, e: int) -> str:
    return "" if e == 0 else v if e == 1 else f"{v}^{e}"


def parse_polynomial(text: str) -> IntPolynomial:
    """Parse ``x^3-3*x-1`` style input into ascending coefficients."""
    sparse = parse_sparse(text, ("x",))
    if not sparse:
        raise InvalidInputError("expression expands to the zero polynomial")
    deg = max(m[0] for m in sparse)
    coeffs = [0] * (deg + 1)
    for (e,), c in sparse.items():
        coeffs[e] = c
    return IntPolynomial(tuple(coeffs))


def parse_binary_form(text: str) -> BinaryForm:
    sparse = parse_sparse(text, ("x", "y"))
    if not sparse:
        raise InvalidFormError("expression expands to zero")
    degrees = {a + b for a, b in sparse}
    if len(degrees) != 1:
        raise InvalidFormError(f"form is not homogeneous (total degrees {sorted(degrees)})")
    d = degrees.pop()
    coeffs = [0] * (d + 1)
    for (a, _b), c in sparse.items():
        coeffs[a] = c
    return BinaryForm(tuple(coeffs))


def parse_polynomial_spec(text: str) -> IntPolynomial:
    """Either a JSON list ``[c0, c1, ...]`` or an expression in ``x``."""
    stripped = text.strip()
    if stripped.startswith("["):
        try:
            coeffs = json.loads(stripped)
        except json.JSONDecodeError as exc:
            from .errors import ParseError
            raise ParseError(exc.msg, len(stripped[:exc.pos].encode()), text) from None
        if not isinstance(coeffs, list) or not all(isinstance(c, int) and not isinstance(c, bool) for c in coeffs):
            raise InvalidInputError("coefficient list must contain integers only")
        return poly_invariants(coeffs)
    return parse_polynomial(text)


# ---------------------------------------------------------------------------
# Roots modulo prime powers


@lru_cache(maxsize=1 << 16)
def _is_prime_cached(p: int) -> bool:
    return p >= 2 and is_prime(p)


def _check_prime(p: int) -> None:
    if not _is_prime_cached(int(p)):
        raise InvalidPrimeError(f"{p} is not prime")


def roots_mod_p(coeffs: Sequence[int], p: int) -> list[int]:
    """Distinct roots in ``[0, p)``; every residue when ``f`` vanishes mod ``p``."""
    red = [c % p for c in coeffs]
    while red and red[-1] == 0:
        red.pop()
    if not red:
        return list(range(p))
    if len(red) == 1:
        return []
    return list(_roots_reduced(tuple(red), p))


@lru_cache(maxsize=4096)
def _roots_reduced(red: tuple[int, ...], p: int) -> tuple[int, ...]:
    if p < (1 << 62):
        rts = flint.nmod_poly(list(red), p).roots()
    else:
        rts = flint.fmpz_mod_poly_ctx(p)(list(red)).roots()
    return tuple(sorted(int(r) for r, _ in rts))


def _lift(f: IntPolynomial, fprime: IntPolynomial, p: int, roots: list[int], level: int) -> list[int]:
    """Roots mod ``p^(level+1)`` above the given roots mod ``p^level``."""
    pj = p ** level
    pj1 = pj * p
    out = []
    for r in roots:
        dr = fprime.eval_mod(r, p)
        if dr:
            # regular: unique lift
            t = (-(f.eval_mod(r, pj1) // pj) * pow(dr, -1, p)) % p
            out.append(r + t * pj)
        else:
            for t in range(p):
                cand = r + t * pj
                if f.eval_mod(cand, pj1) == 0:
                    out.append(cand)
    return out


def _p_adic_content(f: IntPolynomial, p: int) -> int:
    v, c = 0, f.content
    while c % p == 0:
        c //= p
        v += 1
    return v


def roots_mod_pk(f: IntPolynomial, p: int, k: int, units_only: bool = False) -> list[int]:
    """Sorted roots of ``f`` in ``Z/p^k``.

    A factor ``p^v`` of the content is split off first: the roots of
    ``p^v g`` mod ``p^k`` are the residues reducing to roots of ``g`` mod
    ``p^(k-v)``.
    """
    _check_prime(p)
    if k < 1:
        raise DomainError("k must be >= 1")
    v = _p_adic_content(f, p)
    pk = p ** k
    if v >= k:
        return [a for a in range(pk) if not units_only or a % p]
    g = IntPolynomial(tuple(c // p ** v for c in f.coefficients)) if v else f
    kk = k - v
    roots = roots_mod_p(g.coefficients, p)
    if units_only:
        roots = [r for r in roots if r % p]
    if kk > 1 and roots:
        gp = g.derivative()
        for level in range(1, kk):
            roots = _lift(g, gp, p, roots, level)
            if not roots:
                break
    if v:
        step = p ** kk
        roots = sorted(r + i * step for r in roots for i in range(p ** v))
    return sorted(roots)


def count_roots_mod_pk(f: IntPolynomial, p: int, k: int, units_only: bool = False) -> int:
    return len(roots_mod_pk(f, p, k, units_only))


# ---------------------------------------------------------------------------
# Sums of two squares


def _valuation(a: int, p: int) -> int:
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v


def rho_two_squares(a: int, p: int, k: int, two_adic: str = "uniform") -> Fraction:
    """Limiting share of sums of two squares lying in ``a mod p^k``.

    Odd primes follow the five-case table.  At ``p = 2`` the value is
    ``2^-k`` with ``two_adic="uniform"`` (the table's fallback) or the exact
    2-adic law with ``two_adic="derived"``: writing ``a = 2^v u``,
    ``2^(1-k)[u = 1 mod 4]`` for ``v <= k-2`` and ``2^-k`` when ``v >= k-1``.
    """
    if k < 1:
        raise DomainError("k must be >= 1")
    pk = p ** k
    a %= pk
    if p == 2:
        if two_adic == "uniform":
            return Fraction(1, pk)
        if two_adic != "derived":
            raise DomainError(f"unknown two_adic mode {two_adic!r}")
        if a == 0:
            return Fraction(1, pk)
        v = _valuation(a, 2)
        if v == k - 1:
            return Fraction(1, pk)
        return Fraction(2, pk) if (a >> v) % 4 == 1 else Fraction(0)
    if p % 4 == 1:
        return Fraction(1, pk)
    if a == 0:
        return Fraction(1, pk) if k % 2 == 0 else Fraction(1, pk * p)
    v = _valuation(a, p)
    return Fraction(p + 1, pk * p) if v % 2 == 0 else Fraction(0)


def rho_two_squares_poly(f: IntPolynomial, p: int, k: int, two_adic: str = "uniform") -> Fraction:
    """Sum of ``rho_two_squares(a, p^k)`` over the roots ``a`` of ``f`` mod ``p^k``."""
    return sum((rho_two_squares(a, p, k, two_adic) for a in roots_mod_pk(f, p, k)), Fraction(0))


# ---------------------------------------------------------------------------
# Binary forms


def rho_binary_form(F: BinaryForm, p: int) -> int:
    """Pairs ``(x, y)`` mod ``p^2`` with ``F(x, y) = 0 mod p^2``.

    Pairs with ``y`` a unit are ``(ty, y)`` with ``F(t, 1) = 0``; pairs with
    ``y`` divisible by ``p`` and ``x`` a unit are ``(x, sx)`` with ``p | s``
    and ``F(1, s) = 0``; the ``p^2`` pairs with both divisible by ``p`` always
    count because ``p^d | F`` there.
    """
    _check_prime(p)
    if F.degree < 2:
        raise InvalidFormError("degree must be >= 2")
    units = p * p - p
    n_x = count_roots_mod_pk(F.affine_x(), p, 2) if any(F.coefficients) else p * p
    n_y = sum(1 for s in roots_mod_pk(F.affine_y(), p, 2) if s % p == 0)
    return units * (n_x + n_y) + p * p


def rho_binary_form_bruteforce(F: BinaryForm, p: int) -> int:
    m = p * p
    d = F.degree
    pw = [[pow(v, e, m) for e in range(d + 1)] for v in range(m)]
    cs = F.coefficients
    count = 0
    for x in range(m):
        px = pw[x]
        for y in range(m):
            py = pw[y]
            if sum(c * px[i] * py[d - i] for i, c in enumerate(cs)) % m == 0:
                count += 1
    return count


# ---------------------------------------------------------------------------
# Euler products


@lru_cache(maxsize=16)
def _prime_tuple(limit: int) -> tuple[int, ...]:
    if limit < 2:
        return ()
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, limit + 1, i)))
    return tuple(i for i, v in enumerate(sieve) if v)


def primes_up_to(limit: int) -> tuple[int, ...]:
    return _prime_tuple(int(limit))


@dataclass(frozen=True)
class LocalDensityTable:
    f: IntPolynomial | BinaryForm
    k: int
    variant: str
    entries: tuple[tuple[int, Fraction | int], ...]
    cutoff: int
    tail_bound: float


@dataclass(frozen=True)
class DensityPrediction:
    """Truncated Euler product.  The infinite product lies in ``[value e^-tail_bound, value]``."""

    value: float
    tail_bound: float
    obstruction: int | None
    table: LocalDensityTable
    two_adic: str = "uniform"

    @property
    def lower(self) -> float:
        return self.value * math.exp(-self.tail_bound)

    def __iter__(self):
        yield self.value
        yield self.tail_bound


def euler_tail_integral(P: int, k: int) -> float:
    """Upper bound for ``sum_{n > P} 1/(n^(k-1)(n-1))``, via the integral from ``P``.

    The integrand expands as ``sum_{i >= k} t^-i``, so the integral is the
    positive series ``sum_{i >= k} P^(1-i)/(i-1)``; summed until the
    geometric remainder is negligible and then bounded.
    """
    if P < 2 or k < 2:
        raise DomainError("need P >= 2 and k >= 2")
    total, i = 0.0, k
    while True:
        term = P ** (1 - i) / (i - 1)
        total += term
        if term < 1e-18 * total:
            break
        i += 1
    # remainder after the last term is at most term * (1/P) / (1 - 1/P)
    return total + term / (P - 1)


def _tail(A: int, P: int, k: int) -> float:
    s = A * euler_tail_integral(P, k)
    u_max = A / (P ** (k - 1) * (P - 1))
    if u_max >= 1:
        raise DomainError("cutoff too small for a tail bound")
    # -log(1 - u) <= u / (1 - u)
    return s / (1 - u_max)


def _required_cutoff(f: IntPolynomial | BinaryForm) -> int:
    if isinstance(f, BinaryForm):
        g = f.affine_x()
        if f.coefficients[-1] == 0 or g.degree != f.degree:
            raise DomainError("binary form needs a nonzero x^d coefficient")
        bad = abs(g.discriminant * f.coefficients[-1])
        base = f.degree + 1
    else:
        if f.degree < 1:
            raise DomainError("constant polynomial")
        bad = abs(f.discriminant * f.content)
        base = f.degree + 1
    if bad == 0:
        raise DomainError("f has a repeated factor; local root counts are unbounded")
    largest = max(factorize(bad).primes(), default=1)
    return max(base, largest)


def _local_factor(f, k: int, variant: str, p: int, two_adic: str) -> tuple[Fraction, Fraction | int]:
    if variant == "all_residues":
        r = count_roots_mod_pk(f, p, k)
        return 1 - Fraction(r, p ** k), r
    if variant == "unit_residues":
        r = count_roots_mod_pk(f, p, k, units_only=True)
        return 1 - Fraction(r, p ** k - p ** (k - 1)), r
    if variant == "two_squares":
        r = rho_two_squares_poly(f, p, k, two_adic)
        return 1 - r, r
    if variant == "binary_form":
        r = rho_binary_form(f, p)
        return 1 - Fraction(r, p ** 4), r
    raise DomainError(f"unknown variant {variant!r}")


def euler_product_density(f: IntPolynomial | BinaryForm, k: int, variant: str, cutoff: int,
                          two_adic: str = "uniform") -> DensityPrediction:
    """Product of the local factors of ``variant`` over ``p <= cutoff``.

    ``tail_bound`` bounds minus the log of the omitted factors, using at
    most ``A`` roots per unramified prime (``A = d`` for one-variable
    variants, ``d + 1`` for forms in the projective count).
    """
    if variant not in VARIANTS:
        raise DomainError(f"unknown variant {variant!r}")
    if k < 2:
        raise DomainError("k must be >= 2")
    if variant == "binary_form":
        if not isinstance(f, BinaryForm):
            raise InvalidFormError("binary_form variant needs a BinaryForm")
        if k != 2:
            raise DomainError("binary form densities are for k = 2")
    elif not isinstance(f, IntPolynomial):
        raise InvalidInputError("expected an IntPolynomial")
    need = _required_cutoff(f)
    if cutoff < need:
        raise DomainError(f"cutoff {cutoff} is below the required {need}")
    value = 1.0
    entries = []
    obstruction = None
    for p in primes_up_to(cutoff):
        fac, rho = _local_factor(f, k, variant, p, two_adic)
        entries.append((p, rho))
        if fac == 0:
            obstruction = p
            value = 0.0
            break
        value *= float(fac)
    if obstruction is not None:
        tail = 0.0
    else:
        A = f.degree + 1 if variant == "binary_form" else f.degree
        tail = _tail(A, cutoff, k)
    table = LocalDensityTable(f, k, variant, tuple(entries), cutoff, tail)
    return DensityPrediction(value, tail, obstruction, table, two_adic)


# ---------------------------------------------------------------------------
# Moebius series


def _crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    return (r1 + m1 * ((r2 - r1) * pow(m1, -1, m2) % m2)) % (m1 * m2)


def mobius_series_density(f: IntPolynomial, k: int, sequence_kind, z: int,
                          method: str = "factored") -> float:
    """``sum mu(m) sum_{f(a) = 0 mod m^k} rho(a, m^k)`` over square-free ``z``-smooth ``m``.

    ``method="enumerate"`` walks every such ``m`` and builds its roots by
    CRT, evaluating the density oracle at the composite modulus; it is
    exponential in the number of primes and meant for small ``z``.
    ``method="factored"`` sums the oracle over roots prime by prime.
    """
    from .sequences import density_oracle, SequenceKind

    kind = SequenceKind.parse(sequence_kind)
    if z < 2:
        raise DomainError("z must be >= 2")
    primes = primes_up_to(z)
    local_roots = {p: roots_mod_pk(f, p, k) for p in primes}
    if method == "factored":
        value = 1.0
        for p in primes:
            s = sum((density_oracle(kind, a, p ** k) for a in local_roots[p]), Fraction(0))
            value *= float(1 - s)
        return value
    if method != "enumerate":
        raise DomainError(f"unknown method {method!r}")
    if len(primes) > 12:
        raise DomainError("enumeration is limited to 12 primes")
    total = Fraction(0)
    for mask in cartesian((0, 1), repeat=len(primes)):
        chosen = [p for p, b in zip(primes, mask) if b]
        mod = 1
        roots = [0]
        for p in chosen:
            q = p ** k
            roots = [_crt_pair(r, mod, s, q) for r in roots for s in local_roots[p]]
            mod *= q
        if chosen and not roots:
            continue
        sign = -1 if len(chosen) % 2 else 1
        total += sign * sum((density_oracle(kind, a, mod) for a in roots), Fraction(0))
    return float(total)


# ---------------------------------------------------------------------------
# Obstructions and Frobenius classes


@dataclass(frozen=True)
class ObstructionReport:
    f: IntPolynomial
    k: int
    content_ok: bool
    small_prime_ok: dict[int, bool] = field(default_factory=dict)
    reasons: tuple[str, ...] = ()

    @property
    def product_positive(self) -> bool:
        return self.content_ok and all(self.small_prime_ok.values())

    def as_dict(self) -> dict:
        return {
            "polynomial": str(self.f),
            "k": self.k,
            "content": self.f.content,
            "content_ok": self.content_ok,
            "small_prime_ok": {str(p): ok for p, ok in self.small_prime_ok.items()},
            "product_positive": self.product_positive,
            "reasons": list(self.reasons),
        }


def obstruction_check(f: IntPolynomial, k: int) -> ObstructionReport:
    """Local reasons for every value ``f(n)`` (``n`` a unit) to be divisible by a ``k``-th power."""
    if k < 2:
        raise DomainError("k must be >= 2")
    reasons = []
    content_ok = True
    for p, e in factorize(f.content).factors:
        if e >= k:
            content_ok = False
            reasons.append(f"content {f.content} divisible by {p}^{k}")
    small = {}
    for p in primes_up_to(f.degree + 1):
        units = p ** k - p ** (k - 1)
        ok = count_roots_mod_pk(f, p, k, units_only=True) < units
        small[p] = ok
        if not ok:
            reasons.append(f"f(u) = 0 mod {p}^{k} for every unit u")
    return ObstructionReport(f, k, content_ok, small, tuple(reasons))


@lru_cache(maxsize=256)
def _irreducible(coeffs: tuple[int, ...]) -> bool:
    return IntPolynomial(coeffs).is_irreducible


def frobenius_lambda_class(f: IntPolynomial, p: int) -> int | str:
    """Number of roots of ``f`` mod ``p``, or ``"ramified"`` when ``p | disc * content * lc``."""
    _check_prime(p)
    if not _irreducible(f.coefficients):
        raise UnsupportedInputError(f"{f} is reducible over Q")
    if (f.discriminant * f.content * f.leading) % p == 0:
        return RAMIFIED
    return len(roots_mod_p(f.coefficients, p))
