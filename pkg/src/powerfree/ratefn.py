"""Large-deviation rate functions and the independent prime-divisor model.

The model attaches to each prime ``p`` of class ``j`` an independent
indicator that fires with probability ``s_j / p``; the per-class counts of
fired primes obey a Sanov-type principle with rate ``I_c`` where
``c_j = r_j s_j``.  :func:`simulate_omega_model` samples the model and
:func:`exact_region_probability` evaluates it exactly on small instances.
"""

from __future__ import annotations

import math
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping, Sequence

import numpy as np

from .errors import DomainError, EmptyModelError, ModelTooLargeError, ShapeError

__all__ = [
    "RateVector",
    "SanovModel",
    "SimulationResult",
    "rate_function",
    "deviation_region_contains",
    "simulate_omega_model",
    "exact_region_probability",
    "exact_count_distribution",
    "scaling_frequencies",
]

Label = Hashable


@dataclass(frozen=True)
class RateVector:
    labels: tuple[Label, ...]
    values: tuple[float, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.values):
            raise ShapeError("labels and values differ in length")
        if len(set(self.labels)) != len(self.labels):
            raise ShapeError("duplicate labels")
        for v in self.values:
            if not (math.isfinite(float(v)) and v >= 0):
                raise DomainError(f"rate vector entries must be finite and >= 0, got {v}")

    @classmethod
    def from_mapping(cls, m: Mapping[Label, float]) -> RateVector:
        return cls(tuple(m.keys()), tuple(m.values()))

    def as_dict(self) -> dict[Label, float]:
        return dict(zip(self.labels, self.values))

    def __getitem__(self, label: Label) -> float:
        return self.values[self.labels.index(label)]

    def __len__(self) -> int:
        return len(self.labels)


def _as_vector(v: RateVector | Mapping[Label, float]) -> RateVector:
    return v if isinstance(v, RateVector) else RateVector.from_mapping(v)


def _aligned(*vectors: RateVector | Mapping[Label, float]) -> list[list[float]]:
    vs = [_as_vector(v) for v in vectors]
    labels = vs[0].labels
    for v in vs[1:]:
        if set(v.labels) != set(labels):
            raise ShapeError(f"label sets differ: {sorted(map(repr, labels))} vs {sorted(map(repr, v.labels))}")
    return [[float(v[label]) for label in labels] for v in vs]


def rate_function(c: RateVector | Mapping, x: RateVector | Mapping) -> float:
    """``1 - sum(x) + sum(x log(x/c))``; ``math.inf`` when some ``x_j > 0 = c_j``.

    Terms with ``x_j = 0`` contribute nothing, including when ``c_j = 0``.
    """
    cs, xs = _aligned(c, x)
    total = [1.0]
    for cj, xj in zip(cs, xs):
        if xj == 0:
            continue
        if cj == 0:
            return math.inf
        total.append(-xj)
        total.append(xj * (math.log(xj) - math.log(cj)))
    return math.fsum(total)


def _sgn(t: float) -> int:
    return (t > 0) - (t < 0)


def deviation_region_contains(c: RateVector | Mapping, x: RateVector | Mapping,
                              y: RateVector | Mapping) -> bool:
    """Whether ``y`` is at least as far from ``c`` as ``x`` in every coordinate where ``x != c``."""
    cs, xs, ys = _aligned(c, x, y)
    return all(_sgn(yj - xj) == _sgn(xj - cj) for cj, xj, yj in zip(cs, xs, ys) if xj != cj)


# ---------------------------------------------------------------------------
# The independent model


@dataclass(frozen=True)
class SanovModel:
    """Independent indicators ``X_p`` firing with probability ``s[class_of[p]] / p``.

    ``s`` values may be ints or Fractions (kept exact for the enumeration
    oracle); ``r`` holds the class densities and is informational only.
    """

    primes: tuple[int, ...]
    class_of: Mapping[int, Label]
    s: Mapping[Label, Fraction | int]
    r: Mapping[Label, float] = field(default_factory=dict)

    def __post_init__(self):
        if len(set(self.primes)) != len(self.primes):
            raise DomainError("primes must be distinct")
        for p in self.primes:
            j = self.class_of[p]
            if j not in self.s:
                raise ShapeError(f"class {j!r} of prime {p} has no s value")
            if Fraction(self.s[j]) < 0 or Fraction(self.s[j]) / p > 1:
                raise DomainError(f"firing probability s_j/p = {self.s[j]}/{p} is not in [0, 1]")

    @property
    def labels(self) -> tuple[Label, ...]:
        return tuple(self.s.keys())

    def probabilities(self) -> list[Fraction]:
        return [Fraction(self.s[self.class_of[p]]) / p for p in self.primes]

    @classmethod
    def single_class(cls, primes: Iterable[int], s: Fraction | int = 1, label: Label = "e") -> SanovModel:
        primes = tuple(primes)
        return cls(primes, {p: label for p in primes}, {label: s})


CountVector = tuple[int, ...]


@dataclass(frozen=True)
class SimulationResult:
    labels: tuple[Label, ...]
    trials: int
    seed: int
    counts: dict[CountVector, int]

    def frequency(self, predicate: Callable[[dict[Label, int]], bool]) -> float:
        hits = sum(n for vec, n in self.counts.items() if predicate(dict(zip(self.labels, vec))))
        return hits / self.trials

    def frequencies(self) -> dict[CountVector, float]:
        return {vec: n / self.trials for vec, n in sorted(self.counts.items())}


def _simulate_block(args) -> Counter:
    probs, class_idx, n_labels, seed, start, stop = args
    probs = np.asarray(probs, dtype=float)
    class_idx = np.asarray(class_idx, dtype=np.int64)
    out: Counter = Counter()
    for t in range(start, stop):
        # one Philox stream per (seed, trial); draw i belongs to prime i
        u = np.random.Generator(np.random.Philox(key=seed & _KEY_MASK, counter=[0, t, 0, 0])).random(len(probs))
        fired = class_idx[u < probs]
        out[tuple(np.bincount(fired, minlength=n_labels).tolist())] += 1
    return out


def _default_workers() -> int:
    return max(1, int(os.environ.get("POWERFREE_WORKERS", "1")))


def simulate_omega_model(model: SanovModel, trials: int, seed: int,
                         workers: int | None = None) -> SimulationResult:
    """Sample the per-class count vector ``sum_p delta_{X_p}`` ``trials`` times.

    The uniform deciding ``X_p`` in trial ``t`` depends only on
    ``(seed, t, index of p)``, so the result does not depend on ``workers``.
    """
    if not model.primes:
        raise EmptyModelError("model has no primes")
    if trials < 1:
        raise DomainError("trials must be >= 1")
    labels = model.labels
    probs = [float(q) for q in model.probabilities()]
    class_idx = [labels.index(model.class_of[p]) for p in model.primes]
    workers = _default_workers() if workers is None else max(1, workers)
    bounds = np.linspace(0, trials, workers + 1).astype(int)
    jobs = [(probs, class_idx, len(labels), seed, int(a), int(b)) for a, b in zip(bounds, bounds[1:]) if b > a]
    total: Counter = Counter()
    if workers == 1:
        for job in jobs:
            total.update(_simulate_block(job))
    else:
        with ProcessPoolExecutor(workers) as ex:
            for part in ex.map(_simulate_block, jobs):
                total.update(part)
    return SimulationResult(labels, trials, seed, dict(sorted(total.items())))


MAX_EXACT_PRIMES = 20
_KEY_MASK = (1 << 64) - 1


def exact_count_distribution(model: SanovModel) -> dict[CountVector, Fraction]:
    """Exact law of the per-class count vector, by convolving over primes."""
    if len(model.primes) > MAX_EXACT_PRIMES:
        raise ModelTooLargeError(f"exact evaluation supports at most {MAX_EXACT_PRIMES} primes")
    labels = model.labels
    zero = (0,) * len(labels)
    dist: dict[CountVector, Fraction] = {zero: Fraction(1)}
    for p, q in zip(model.primes, model.probabilities()):
        j = labels.index(model.class_of[p])
        nxt: dict[CountVector, Fraction] = {}
        for vec, w in dist.items():
            if q != 1:
                nxt[vec] = nxt.get(vec, Fraction(0)) + w * (1 - q)
            if q != 0:
                up = vec[:j] + (vec[j] + 1,) + vec[j + 1:]
                nxt[up] = nxt.get(up, Fraction(0)) + w * q
        dist = nxt
    return dist


def exact_region_probability(model: SanovModel,
                             predicate: Callable[[dict[Label, int]], bool]) -> Fraction:
    """Exact probability that the count vector satisfies ``predicate``."""
    labels = model.labels
    return sum((w for vec, w in exact_count_distribution(model).items()
                if predicate(dict(zip(labels, vec)))), Fraction(0))


def scaling_frequencies(x: Mapping[Label, float], ms: Sequence[float], trials: int, seed: int,
                        classify: Callable[[int], Label] | None = None,
                        s: Mapping[Label, float] | None = None) -> list[dict]:
    """Diagnostic: empirical frequency of ``Z_m in B_{c,x}`` for primes up to ``e^{e^m}``.

    By default primes are split by residue mod 4 (``r = {1: 1/2, 3: 1/2}``,
    ``s = 1``), so ``c = {1: 1/2, 3: 1/2}`` and ``Z_m`` is the count vector
    divided by ``m``.  Convergence is of order ``log log``; no tolerance is
    implied.  Each row also carries ``-I_c(x)`` for comparison with
    ``log(frequency) / m``.
    """
    from .sequences import prime_sieve

    classify = classify or (lambda p: p % 4 if p > 2 else 1)
    labels = tuple(x.keys())
    s = s or {j: 1 for j in labels}
    rows = []
    for m in ms:
        bound = int(math.exp(math.exp(m)))
        primes = [int(p) for p in prime_sieve(bound)]
        classes = [classify(p) for p in primes]
        r = {j: sum(1 / p for p, cj in zip(primes, classes) if cj == j) / m for j in labels}
        c = {j: r[j] * s[j] for j in labels}
        probs = np.array([min(1.0, s[cj] / p) for p, cj in zip(primes, classes)])
        idx = np.array([labels.index(cj) for cj in classes])
        hits = 0
        for t in range(trials):
            u = np.random.Generator(np.random.Philox(key=seed & _KEY_MASK, counter=[0, t, 0, 0])).random(len(primes))
            z = np.bincount(idx[u < probs], minlength=len(labels)) / m
            if deviation_region_contains(c, x, dict(zip(labels, z.tolist()))):
                hits += 1
        freq = hits / trials
        rows.append({
            "m": m,
            "prime_bound": bound,
            "c": c,
            "frequency": freq,
            "log_frequency_over_m": math.log(freq) / m if freq > 0 else -math.inf,
            "minus_rate": -rate_function(c, x),
        })
    return rows
