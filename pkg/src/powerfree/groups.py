"""Transitive permutation groups of degree 3 to 6 and their fixed-point data.

Groups are found by brute force inside the full symmetric group: every
subgroup class is reached by repeatedly adjoining one element to a class
representative, classes are identified by a conjugation-invariant canonical
key, and the transitive ones are named from an embedded table in the
Conway-Hulpke-McKay nomenclature.

Permutations are tuples of 0-based images: ``p[i]`` is the image of point
``i``.
"""

from __future__ import annotations

import functools
import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import InvariantViolation, OutOfRangeError, ParseError, UnsupportedDegreeError

__all__ = [
    "PermutationGroup",
    "FixedPointDistribution",
    "GroupRecord",
    "TABLE1_ORDER",
    "enumerate_transitive_groups",
    "catalog",
    "group_by_name",
    "fixed_point_distribution",
    "entropy",
    "regular_distribution",
    "rencontres_distribution",
    "poisson_limit_constant",
    "export_catalog",
    "parse_catalog",
]

CATALOG_FORMAT = "powerfree-group-catalog v1"

Perm = tuple[int, ...]


# ---------------------------------------------------------------------------
# Domain types


@dataclass(frozen=True)
class PermutationGroup:
    degree: int
    generators: tuple[Perm, ...]
    elements: tuple[Perm, ...] = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @classmethod
    def from_generators(cls, degree: int, generators: Iterable[Sequence[int]]) -> PermutationGroup:
        gens = tuple(tuple(int(i) for i in g) for g in generators)
        for g in gens:
            if sorted(g) != list(range(degree)):
                raise InvariantViolation(f"{g} is not a permutation of 0..{degree - 1}")
        identity = tuple(range(degree))
        seen = {identity}
        frontier = [identity]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = tuple(g[i] for i in a)
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
            frontier = nxt
        return cls(degree, gens, tuple(sorted(seen)))

    @classmethod
    def from_cycles(cls, degree: int, *cycle_strings: str) -> PermutationGroup:
        """Build a group from generators in 1-based cycle notation, e.g. ``"(1 2 3)(4 5)"``."""
        return cls.from_generators(degree, [_parse_cycles(degree, s) for s in cycle_strings])

    def is_transitive(self) -> bool:
        orbit = {0}
        frontier = [0]
        while frontier:
            i = frontier.pop()
            for g in self.generators:
                j = g[i]
                if j not in orbit:
                    orbit.add(j)
                    frontier.append(j)
        return len(orbit) == self.degree


def _parse_cycles(degree: int, text: str) -> Perm:
    image = list(range(degree))
    pos = 0
    text = text.strip()
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        if text[pos] != "(":
            raise ParseError("expected '('", pos, text)
        end = text.find(")", pos)
        if end < 0:
            raise ParseError("unclosed cycle", pos, text)
        points = [int(t) - 1 for t in text[pos + 1:end].replace(",", " ").split()]
        if any(not 0 <= q < degree for q in points) or len(set(points)) != len(points):
            raise ParseError("bad cycle", pos, text)
        for a, b in zip(points, points[1:] + points[:1]):
            image[a] = b
        pos = end + 1
    return tuple(image)


@dataclass(frozen=True)
class FixedPointDistribution:
    """Weights of the elements of a group, collapsed by number of fixed points.

    ``entries`` is sorted by decreasing ``lambda``; weights are exact.
    """

    degree: int
    entries: tuple[tuple[int, Fraction], ...]
    group_order: int

    def __post_init__(self):
        if sum(w for _, w in self.entries) != 1:
            raise InvariantViolation("weights do not sum to 1")
        if any(w <= 0 for _, w in self.entries):
            raise InvariantViolation("weights must be positive")

    @classmethod
    def from_counts(cls, degree: int, counts: dict[int, int]) -> FixedPointDistribution:
        order = sum(counts.values())
        entries = tuple((lam, Fraction(c, order)) for lam, c in sorted(counts.items(), reverse=True) if c)
        return cls(degree, entries, order)

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.entries)

    def counts(self) -> dict[int, int]:
        return {lam: int(w * self.group_order) for lam, w in self.entries}

    def mean_fixed_points(self) -> Fraction:
        return sum((w * lam for lam, w in self.entries), Fraction(0))

    def sigma_ratio(self) -> Fraction:
        """Proportion of elements with at least one fixed point."""
        return sum((w for lam, w in self.entries if lam > 0), Fraction(0))


@dataclass(frozen=True)
class GroupRecord:
    chm_name: str
    degree: int
    order: int
    distribution: FixedPointDistribution
    entropy: float
    sigma_ratio: Fraction
    group: PermutationGroup | None = field(default=None, compare=False, repr=False)

    @property
    def is_regular(self) -> bool:
        return self.order == self.degree


# ---------------------------------------------------------------------------
# Name table
#
# Keyed on (degree, order, fixed-point counts).  Where two classes share that
# key the entry carries a discriminator: the element-order multiset, or for
# the two order-24 copies of S_4 in degree 6 (even the element orders agree,
# since both are S_4) whether the action lies in the alternating group.

TABLE1_ORDER = (
    "A_3", "S_3",
    "C(4)", "E(4)", "D(4)", "A_4", "S_4",
    "C(5)", "D(5)", "F(5)", "A_5", "S_5",
    "C(6)", "D_6(6)", "D(6)", "A_4(6)", "F_18(6)", "2A_4(6)", "S_4(6d)", "S_4(6c)",
    "F_18(6):2", "F_36(6)", "2S_4(6)", "L(6)", "F_36(6):2", "L(6):2", "A_6", "S_6",
)

# name: (degree, order, {lambda: count}, discriminator or None)
# discriminator: ("orders", {element order: count}) or ("even", bool)
_NAME_DATA: dict[str, tuple[int, int, dict[int, int], tuple | None]] = {
    "A_3": (3, 3, {3: 1, 0: 2}, None),
    "S_3": (3, 6, {3: 1, 1: 3, 0: 2}, None),
    "C(4)": (4, 4, {4: 1, 0: 3}, ("orders", {1: 1, 2: 1, 4: 2})),
    "E(4)": (4, 4, {4: 1, 0: 3}, ("orders", {1: 1, 2: 3})),
    "D(4)": (4, 8, {4: 1, 2: 2, 0: 5}, None),
    "A_4": (4, 12, {4: 1, 1: 8, 0: 3}, None),
    "S_4": (4, 24, {4: 1, 2: 6, 1: 8, 0: 9}, None),
    "C(5)": (5, 5, {5: 1, 0: 4}, None),
    "D(5)": (5, 10, {5: 1, 1: 5, 0: 4}, None),
    "F(5)": (5, 20, {5: 1, 1: 15, 0: 4}, None),
    "A_5": (5, 60, {5: 1, 2: 20, 1: 15, 0: 24}, None),
    "S_5": (5, 120, {5: 1, 3: 10, 2: 20, 1: 45, 0: 44}, None),
    "C(6)": (6, 6, {6: 1, 0: 5}, ("orders", {1: 1, 2: 1, 3: 2, 6: 2})),
    "D_6(6)": (6, 6, {6: 1, 0: 5}, ("orders", {1: 1, 2: 3, 3: 2})),
    "D(6)": (6, 12, {6: 1, 2: 3, 0: 8}, ("orders", {1: 1, 2: 7, 3: 2, 6: 2})),
    "A_4(6)": (6, 12, {6: 1, 2: 3, 0: 8}, ("orders", {1: 1, 2: 3, 3: 8})),
    "F_18(6)": (6, 18, {6: 1, 3: 4, 0: 13}, None),
    "2A_4(6)": (6, 24, {6: 1, 4: 3, 2: 3, 0: 17}, None),
    "S_4(6d)": (6, 24, {6: 1, 2: 9, 0: 14}, ("even", True)),
    "S_4(6c)": (6, 24, {6: 1, 2: 9, 0: 14}, ("even", False)),
    "F_18(6):2": (6, 36, {6: 1, 3: 4, 2: 9, 0: 22}, ("orders", {1: 1, 2: 15, 3: 8, 6: 12})),
    "F_36(6)": (6, 36, {6: 1, 3: 4, 2: 9, 0: 22}, ("orders", {1: 1, 2: 9, 3: 8, 4: 18})),
    "2S_4(6)": (6, 48, {6: 1, 4: 3, 2: 15, 0: 29}, None),
    "L(6)": (6, 60, {6: 1, 2: 15, 1: 24, 0: 20}, None),
    "F_36(6):2": (6, 72, {6: 1, 4: 6, 3: 4, 2: 9, 1: 12, 0: 40}, None),
    "L(6):2": (6, 120, {6: 1, 2: 45, 1: 24, 0: 50}, None),
    "A_6": (6, 360, {6: 1, 3: 40, 2: 45, 1: 144, 0: 130}, None),
    "S_6": (6, 720, {6: 1, 4: 15, 3: 40, 2: 135, 1: 264, 0: 265}, None),
}


def _primary_key(degree: int, order: int, counts: dict[int, int]) -> tuple:
    return degree, order, tuple(sorted((k, v) for k, v in counts.items() if v))


@functools.lru_cache(maxsize=None)
def _name_lookup() -> dict[tuple, list[tuple[tuple | None, str]]]:
    table: dict[tuple, list[tuple[tuple | None, str]]] = {}
    for name, (deg, order, counts, disc) in _NAME_DATA.items():
        table.setdefault(_primary_key(deg, order, counts), []).append((disc, name))
    for key, entries in table.items():
        discs = [d for d, _ in entries]
        if len(entries) > 1 and (None in discs or len({repr(d) for d in discs}) != len(discs)):
            raise InvariantViolation(f"name table collision not resolved for {key}")
    return table


def _assign_name(degree: int, order: int, counts: dict[int, int],
                 element_orders: dict[int, int], all_even: bool) -> str:
    entries = _name_lookup().get(_primary_key(degree, order, counts))
    if not entries:
        raise InvariantViolation(f"no name for transitive group of degree {degree}, order {order}")
    if len(entries) == 1:
        return entries[0][1]
    for disc, name in entries:
        kind, value = disc
        if kind == "orders" and value == element_orders:
            return name
        if kind == "even" and value == all_even:
            return name
    raise InvariantViolation(f"ambiguous name for degree {degree}, order {order}")


# ---------------------------------------------------------------------------
# Symmetric group tables and the subgroup search


class _SymmetricTables:
    def __init__(self, degree: int):
        d = degree
        self.degree = d
        self.perms = np.array(list(itertools.permutations(range(d))), dtype=np.int64)
        n = self.n = len(self.perms)
        weights = d ** np.arange(d)[::-1]
        lookup = np.full(d ** d, -1, dtype=np.int64)
        lookup[self.perms @ weights] = np.arange(n)
        # mult[i, j] = index of p_i o p_j, i.e. apply p_j first
        self.mult = lookup[self.perms[:, self.perms] @ weights]
        self.identity = int(lookup[np.arange(d) @ weights])
        self.inv = np.argmax(self.mult == self.identity, axis=1)
        self.conj = np.empty((n, n), dtype=np.int64)
        for s in range(n):
            self.conj[s] = self.mult[self.mult[s], self.inv[s]]
        self.fixed = (self.perms == np.arange(d)).sum(axis=1)
        self.elem_order = np.ones(n, dtype=np.int64)
        cur = np.arange(n)
        while True:
            live = cur != self.identity
            if not live.any():
                break
            self.elem_order[live] += 1
            cur = np.where(live, self.mult[cur, np.arange(n)], cur)
        inversions = np.zeros(n, dtype=np.int64)
        for i in range(d):
            for j in range(i + 1, d):
                inversions += self.perms[:, i] > self.perms[:, j]
        self.even = inversions % 2 == 0

    def closure(self, gens: Sequence[int]) -> np.ndarray:
        member = np.zeros(self.n, dtype=bool)
        member[self.identity] = True
        frontier = np.array([self.identity])
        g = np.asarray(gens, dtype=np.int64)
        while frontier.size:
            new = self.mult[np.ix_(frontier, g)].ravel()
            new = np.unique(new[~member[new]])
            member[new] = True
            frontier = new
        return np.flatnonzero(member)

    def class_key(self, elems: np.ndarray) -> tuple[int, bytes]:
        rows = np.sort(self.conj[:, elems], axis=1)
        best = np.lexsort(rows.T[::-1])[0]
        return len(elems), rows[best].tobytes()

    def subgroup_classes(self) -> list[tuple[np.ndarray, list[int]]]:
        """One (elements, generators) pair per conjugacy class of subgroups."""
        trivial = np.array([self.identity])
        classes = {self.class_key(trivial): (trivial, [])}
        queue = [(trivial, [])]
        while queue:
            H, gens = queue.pop()
            covered = np.zeros(self.n, dtype=bool)
            covered[H] = True
            for g in range(self.n):
                if covered[g]:
                    continue
                # <H, g> depends only on the double coset HgH
                covered[self.mult[np.ix_(self.mult[H, g], H)].ravel()] = True
                K = self.closure(gens + [g])
                key = self.class_key(K)
                if key not in classes:
                    classes[key] = (K, gens + [g])
                    queue.append((K, gens + [g]))
        return sorted(classes.values(), key=lambda kg: (len(kg[0]), kg[0].tolist()))


@functools.lru_cache(maxsize=None)
def _tables(degree: int) -> _SymmetricTables:
    return _SymmetricTables(degree)


def _check_degree(degree: int) -> None:
    if not isinstance(degree, (int, np.integer)) or not 3 <= degree <= 6:
        raise UnsupportedDegreeError(f"degree must be in 3..6, got {degree!r}")


@functools.lru_cache(maxsize=None)
def _enumerate(degree: int) -> tuple[GroupRecord, ...]:
    T = _tables(degree)
    records = []
    for elems, gens in T.subgroup_classes():
        if len(np.unique(T.perms[elems, 0])) != degree:
            continue
        counts = Counter(T.fixed[elems].tolist())
        orders = dict(Counter(T.elem_order[elems].tolist()))
        name = _assign_name(degree, len(elems), dict(counts), orders, bool(T.even[elems].all()))
        group = PermutationGroup(
            degree,
            tuple(tuple(int(i) for i in T.perms[g]) for g in gens),
            tuple(tuple(int(i) for i in p) for p in T.perms[elems]),
        )
        dist = FixedPointDistribution.from_counts(degree, dict(counts))
        records.append(GroupRecord(name, degree, len(elems), dist, entropy(dist), dist.sigma_ratio(), group))
    names = [r.chm_name for r in records]
    if len(set(names)) != len(names):
        raise InvariantViolation(f"duplicate names among degree-{degree} groups: {names}")
    records.sort(key=lambda r: TABLE1_ORDER.index(r.chm_name))
    return tuple(records)


def enumerate_transitive_groups(degree: int) -> list[GroupRecord]:
    """All transitive groups of the given degree up to conjugacy, in Table-1 order."""
    _check_degree(degree)
    return list(_enumerate(int(degree)))


def catalog() -> list[GroupRecord]:
    """Every transitive group of degree 3 to 6 (28 records)."""
    return [r for d in range(3, 7) for r in enumerate_transitive_groups(d)]


def group_by_name(name: str) -> GroupRecord:
    if name not in _NAME_DATA:
        raise KeyError(f"unknown group {name!r}; known: {', '.join(TABLE1_ORDER)}")
    for r in enumerate_transitive_groups(_NAME_DATA[name][0]):
        if r.chm_name == name:
            return r
    raise InvariantViolation(f"{name} missing from enumeration")


# ---------------------------------------------------------------------------
# Fixed points and entropy


def fixed_point_distribution(group: PermutationGroup) -> FixedPointDistribution:
    if not group.is_transitive():
        raise InvariantViolation("group action is not transitive")
    counts = Counter(sum(1 for i, j in enumerate(p) if i == j) for p in group.elements)
    return FixedPointDistribution.from_counts(group.degree, dict(counts))


def entropy(dist: FixedPointDistribution) -> float:
    """Weighted mean of lambda*log(lambda) over the distribution."""
    return math.fsum(float(w) * lam * math.log(lam) for lam, w in dist.entries if lam > 1)


def regular_distribution(d: int) -> FixedPointDistribution:
    """Fixed points of a group of order d acting on itself by translation."""
    return FixedPointDistribution.from_counts(d, {d: 1, 0: d - 1})


# ---------------------------------------------------------------------------
# Random permutations


def _derangements(m: int) -> int:
    # D_m = m D_{m-1} + (-1)^m
    value = 1
    for i in range(1, m + 1):
        value = i * value + (-1) ** i
    return value


def rencontres_distribution(n: int) -> list[Fraction]:
    """Exact law of the number of fixed points of a uniform permutation of n letters."""
    if not 1 <= n <= 12:
        raise OutOfRangeError(f"n must be in 1..12, got {n}")
    total = math.factorial(n)
    return [Fraction(math.comb(n, k) * _derangements(n - k), total) for k in range(n + 1)]


def poisson_limit_constant(tolerance: float = 1e-12) -> float:
    """Sum over k >= 1 of exp(-1) k log k / k!, the limiting entropy of S_n.

    Terms are summed until the remaining tail is provably below ``tolerance``:
    for k >= K the ratio of consecutive terms is at most 2/K, so the tail after
    term K is bounded by term_K * (2/K) / (1 - 2/K).
    """
    if not tolerance > 0:
        raise OutOfRangeError("tolerance must be positive")
    terms = []
    k = 1
    while True:
        k += 1
        term = math.exp(-1.0) * math.log(k) / math.factorial(k - 1)
        terms.append(term)
        if k >= 4:
            r = 2.0 / k
            if term * r / (1 - r) < tolerance:
                break
    return math.fsum(terms)


# ---------------------------------------------------------------------------
# Text catalog


def _format_weight(w: Fraction) -> str:
    return f"{w.numerator}/{w.denominator}"


def export_catalog(records: Iterable[GroupRecord] | None = None) -> str:
    """Serialise group records, one per line: ``name;degree;order;lambda:num/den,...``."""
    records = catalog() if records is None else list(records)
    lines = [f"# {CATALOG_FORMAT}"]
    for r in records:
        dist = ",".join(f"{lam}:{_format_weight(w)}" for lam, w in r.distribution.entries)
        lines.append(f"{r.chm_name};{r.degree};{r.order};{dist}")
    return "\n".join(lines) + "\n"


def parse_catalog(text: str) -> list[GroupRecord]:
    lines = text.splitlines()
    if not lines or lines[0].strip() != f"# {CATALOG_FORMAT}":
        raise ParseError("missing catalog header", 0, text)
    out = []
    for line in lines[1:]:
        if not line.strip() or line.startswith("#"):
            continue
        name, degree, order, dist = line.split(";")
        entries = []
        for item in dist.split(","):
            lam, w = item.split(":")
            entries.append((int(lam), Fraction(w)))
        fpd = FixedPointDistribution(int(degree), tuple(entries), int(order))
        out.append(GroupRecord(name, int(degree), int(order), fpd, entropy(fpd), fpd.sigma_ratio()))
    return out
