import os
import random
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

import oracles  # noqa: E402
from powerfree.localarith import IntPolynomial, count_roots_mod_pk, parse_binary_form, parse_polynomial  # noqa: E402

CRITERIA: dict[int, tuple[bool, str]] = {}

SEXTIC = "x^6+x^5*y+y^6"


def record(number: int, ok: bool, detail: str) -> None:
    CRITERIA[number] = (ok, detail)
    print(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        ok, detail = CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


def random_test_polynomials(count: int = 200, seed: int = 20240601) -> list[list[int]]:
    """Cubics and quartics with coefficients in [-50, 50] and nonzero leading term."""
    rnd = random.Random(seed)
    out = []
    for i in range(count):
        d = 3 + i % 2
        lead = rnd.choice([c for c in range(-50, 51) if c])
        out.append([rnd.randint(-50, 50) for _ in range(d)] + [lead])
    return out


@pytest.fixture(scope="session")
def hensel_comparison():
    """Hensel counts against the exhaustive scan on 200 polynomials and every p^k <= 10^5."""
    t0 = time.perf_counter()
    powers = oracles.prime_powers()
    checked = 0
    mismatches = []
    for coeffs in random_test_polynomials():
        brute = oracles.root_counts_bruteforce(coeffs)
        f = IntPolynomial(coeffs)
        for p, k in powers:
            got = (count_roots_mod_pk(f, p, k), count_roots_mod_pk(f, p, k, units_only=True))
            checked += 1
            if got != brute[(p, k)]:
                mismatches.append((tuple(coeffs), p, k, got, brute[(p, k)]))
    return {"checked": checked, "mismatches": mismatches, "seconds": time.perf_counter() - t0}


@pytest.fixture(scope="session")
def surveys_1e6():
    from powerfree.survey import powerfree_survey

    f = parse_polynomial("x^3-3*x-1")
    out = {}
    for kind in ("integers", "primes", "two-squares"):
        t0 = time.perf_counter()
        rep = powerfree_survey(f, 2, kind, 10 ** 6)
        out[kind] = (rep, time.perf_counter() - t0)
    return out


@pytest.fixture(scope="session")
def sextic_survey():
    from powerfree.survey import binary_form_survey

    t0 = time.perf_counter()
    rep = binary_form_survey(parse_binary_form(SEXTIC), 300)
    return rep, time.perf_counter() - t0


@pytest.fixture(scope="session")
def omega_1e6():
    from powerfree.survey import omega_statistics

    return omega_statistics(parse_polynomial("x^3-x-1"), "integers", 10 ** 6)
