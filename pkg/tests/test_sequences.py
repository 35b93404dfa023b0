import functools
import math
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

import oracles
from powerfree.errors import DomainError
from powerfree.sequences import (
    SequenceKind, density_oracle, enumerate as enumerate_members, iter_members, landau_ramanujan_constant,
    membership_mask, residue_distribution, tightness_diagnostics,
)

KINDS = ["integers", "primes", "two-squares"]


def test_membership_examples():
    members, count = enumerate_members("primes", 100)
    assert count == 25 and members[-1] == 97
    members, count = enumerate_members("integers", 10)
    assert members.tolist() == list(range(1, 11)) and count == 10
    mask = membership_mask("two-squares", 400)
    assert mask[325] and not mask[21] and mask[1] and mask[2] and not mask[3]


def test_kind_parsing_and_tags():
    assert SequenceKind.parse("two_squares") is SequenceKind.TWO_SQUARES
    assert SequenceKind.PRIMES.theta == 1
    assert SequenceKind.TWO_SQUARES.theta == Fraction(1, 2)
    assert SequenceKind.INTEGERS.theta == 0
    with pytest.raises(DomainError):
        SequenceKind.parse("squares")
    with pytest.raises(DomainError):
        enumerate_members("primes", 0)


def test_two_squares_mask_matches_search():
    mask = membership_mask("two-squares", 3000)
    assert [n for n in range(1, 3001) if mask[n]] == [n for n in range(1, 3001) if oracles.two_square_by_search(n)]


def test_two_squares_mask_matches_pair_marking():
    N = 10 ** 6
    counts = oracles.two_square_class_counts(N, 1)
    assert enumerate_members("two-squares", N)[1] == counts[0]


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("N,block", [(1000, 97), (123_457, 1 << 12), (300_000, 1 << 20)])
def test_streaming_matches_sieve(kind, N, block):
    assert np.array_equal(np.fromiter(iter_members(kind, N, block), dtype=np.int64), enumerate_members(kind, N)[0])


@given(st.integers(1, 10 ** 5))
@settings(max_examples=200)
def test_two_squares_multiplicative(n):
    mask = membership_mask("two-squares", 10 ** 5)
    bad = any(p % 4 == 3 and e % 2 for p, e in sympy.factorint(n).items())
    assert mask[n] == (not bad)


def test_residue_distribution_sums_to_one():
    for kind in KINDS:
        shares = residue_distribution(kind, 10 ** 4, 12)
        assert shares.shape == (12,) and abs(shares.sum() - 1) < 1e-12


def test_density_oracle_examples():
    assert density_oracle("primes", 3, 4) == Fraction(1, 2)
    assert density_oracle("primes", 2, 4) == 0
    assert all(density_oracle("integers", a, 7) == Fraction(1, 7) for a in range(7))
    with pytest.raises(DomainError):
        density_oracle("integers", 0, 0)


@pytest.mark.parametrize("kind", KINDS)
def test_density_oracle_sums_to_one(kind):
    for m in list(range(1, 200)) + [360, 512, 625, 729, 1000]:
        assert sum(density_oracle(kind, a, m) for a in range(m)) == 1


@given(st.integers(0, 10 ** 6), st.sampled_from([(4, 9), (8, 25), (3, 49), (16, 27), (5, 7)]))
@settings(max_examples=150, deadline=None)
def test_density_oracle_multiplicative(a, pair):
    m1, m2 = pair
    for kind in KINDS:
        assert density_oracle(kind, a, m1 * m2) == density_oracle(kind, a, m1) * density_oracle(kind, a, m2)


@functools.lru_cache(maxsize=None)
def _members(kind, N):
    return enumerate_members(kind, N)[0]


def _worst_residue_gap(kind, N, m):
    members = _members(kind, N)
    shares = np.bincount(members % m, minlength=m) / members.size
    oracle = np.array([float(density_oracle(kind, a, m)) for a in range(m)])
    return float(np.max(np.abs(shares - oracle)))


@pytest.mark.parametrize("kind", ["integers", "primes"])
def test_residue_shares_converge(kind):
    for m in range(1, 25):
        assert _worst_residue_gap(kind, 10 ** 6, m) <= 0.01


@pytest.mark.xfail(strict=True, reason="classes 0 mod small m are 1.2-1.6% heavy at N = 10^6; the gap decays like 1/log N")
def test_two_squares_residue_shares_within_one_percent():
    assert all(_worst_residue_gap("two-squares", 10 ** 6, m) <= 0.01 for m in range(1, 25))


def test_two_squares_residue_gap_decays():
    for m in (2, 3, 4, 5, 8, 9, 10, 24):
        gaps = [_worst_residue_gap("two-squares", N, m) for N in (10 ** 5, 10 ** 6, 10 ** 7)]
        assert gaps[2] < gaps[1] < gaps[0]
        assert gaps[2] * math.log(10 ** 7) < 0.25
    assert max(_worst_residue_gap("two-squares", 10 ** 7, m) for m in range(1, 25)) < 0.0135


def test_tightness_examples():
    rep = tightness_diagnostics("primes", 10 ** 6)
    assert rep.count == 78498
    assert abs(rep.count - float(sympy.li(10 ** 6))) < 200
    assert tightness_diagnostics("integers", 10 ** 6).ratio == 1.0
    with pytest.raises(DomainError):
        tightness_diagnostics("primes", 10)


def test_landau_ramanujan_constant():
    value, err = landau_ramanujan_constant()
    assert abs(value - 0.7642236535892206) < max(err, 1e-9)


@pytest.mark.xfail(strict=True, reason="ratio at N = 10^6 is still 5.2% above its limit; second-order term decays like 1/log N")
def test_two_squares_tightness_within_five_percent():
    rep = tightness_diagnostics("two-squares", 10 ** 6)
    assert abs(rep.ratio / rep.reference - 1) < 0.05


def test_two_squares_tightness_gap_shrinks():
    gaps = []
    for N in (10 ** 4, 10 ** 5, 10 ** 6, 10 ** 7):
        rep = tightness_diagnostics("two-squares", N)
        gaps.append(rep.ratio / rep.reference - 1)
    assert all(0 < b < a for a, b in zip(gaps, gaps[1:]))
    # the gap times log N settles near a constant
    scaled = [g * math.log(N) for g, N in zip(gaps, (10 ** 4, 10 ** 5, 10 ** 6, 10 ** 7))]
    assert max(scaled) / min(scaled) < 1.3
