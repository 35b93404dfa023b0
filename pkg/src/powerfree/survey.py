"""Empirical surveys of k-free values along a sequence.

The engine scans ``n`` in fixed blocks.  Inside a block every prime
``q <= B`` is divided out of ``f(n)`` along the residue classes of the roots
of ``f`` mod ``q``, so each ``f(n)`` ends up with its small primes, their
exponents and a cofactor built from primes above ``B``.  Cofactors at most
``B^2`` are prime; larger ones go to :func:`factorize`.  Aggregates are
integers merged in block order, which makes reports independent of the
number of workers.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import flint
import numpy as np

from .errors import DomainError, InternalInconsistency, UnsupportedInputError
from .factor import DEFAULT_BACKEND, Factorization, factorize, is_prime
from .localarith import (RAMIFIED, BinaryForm, IntPolynomial, euler_product_density, primes_up_to,
                         roots_mod_p)
from .report import DERIVED, dumps, tagged
from .sequences import SequenceKind, _segment, density_oracle, prime_sieve

__all__ = [
    "Factorization",
    "factorize",
    "is_prime",
    "is_kfree",
    "SurveyReport",
    "powerfree_survey",
    "OmegaReport",
    "omega_statistics",
    "SmoothSplitReport",
    "smooth_split_diagnostics",
    "smooth_split_values",
    "binary_form_survey",
    "frobenius_class_frequencies",
    "predicted_density",
    "BLOCK",
    "CHECKPOINT_EVERY",
]

BLOCK = 1 << 17
CHECKPOINT_EVERY = 10 ** 6
SIEVE_LIMIT = 10 ** 6
MAX_N = 10 ** 8
SUBSAMPLE_PERCENT = 1
CROSSCHECK_BMAX = 10 ** 4
TAIL_THRESHOLDS = (0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 2.0)
_INT64_SAFE = (1 << 62)


def is_kfree(n: int, k: int) -> bool:
    if k < 2:
        raise DomainError("k must be >= 2")
    return factorize(n).max_exponent < k


def _workers(workers: int | None) -> int:
    if workers is not None:
        return max(1, int(workers))
    return max(1, int(os.environ.get("POWERFREE_WORKERS", "1")))


# ---------------------------------------------------------------------------
# Prime classes


def _ramified_product(f: IntPolynomial) -> int:
    disc = f.discriminant if f.degree >= 1 else 0
    return abs(disc * f.content * f.leading)


def _lambda_of(f: IntPolynomial, bad: int, q: int) -> int | str:
    if bad and bad % q == 0:
        return RAMIFIED
    return len(roots_mod_p(f.coefficients, q))


def _lambda_with_root(coeffs: tuple[int, ...], q: int, r: int) -> int:
    """Root count mod an unramified ``q`` given one root ``r``.

    Deflates by ``x - r``; a leftover quadratic is settled by a Jacobi symbol.
    """
    g = []
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * r + c) % q
        g.append(acc)
    g.pop()  # remainder, zero
    g.reverse()  # ascending, degree d-1
    if len(g) <= 2:
        return len(g)
    if len(g) == 3:
        c0, c1, c2 = g
        disc = (c1 * c1 - 4 * c0 * c2) % q
        return 1 + (1 + int(flint.fmpz(disc).jacobi(q))) if q > 2 else len(roots_mod_p(coeffs, q))
    return 1 + len(roots_mod_p(g, q))


def _class_labels(degree: int) -> list:
    return list(range(degree + 1)) + [RAMIFIED]


@dataclass
class _Context:
    coeffs: tuple[int, ...]
    kind: SequenceKind
    N: int
    k: int
    big_prime: float           # exceptional threshold N^epsilon
    sieve_limit: int
    omega_bound: int
    fast: bool                 # values fit in int64
    base_primes: np.ndarray
    table: list                # (q, roots, class index)
    bad: int
    seed: int
    smooth_y: tuple[float, ...] = ()
    smooth_eps: tuple[float, ...] = ()


def _class_index(label, degree: int) -> int:
    return degree + 1 if label == RAMIFIED else int(label)


def _build_context(f: IntPolynomial, kind: SequenceKind, N: int, k: int, epsilon: float,
                   omega_bound: int, seed: int, smooth_y: Sequence[float] = (),
                   smooth_eps: Sequence[float] = ()) -> _Context:
    bound = sum(abs(c) * N ** i for i, c in enumerate(f.coefficients))
    fast = bound < _INT64_SAFE
    sieve_limit = max(2, min(SIEVE_LIMIT, math.isqrt(bound) + 1), min(omega_bound, SIEVE_LIMIT))
    bad = _ramified_product(f)
    table = []
    for q in primes_up_to(sieve_limit):
        rts = roots_mod_p(f.coefficients, q)
        if not rts:
            continue
        label = RAMIFIED if bad % q == 0 else len(rts)
        table.append((q, tuple(rts), _class_index(label, f.degree)))
    return _Context(f.coefficients, kind, N, k, N ** epsilon, sieve_limit, omega_bound, fast,
                    prime_sieve(math.isqrt(N) + 1), table, bad, seed, tuple(smooth_y),
                    tuple(smooth_eps))


def _subsampled(n: int, seed: int) -> bool:
    h = hashlib.blake2b(int(n).to_bytes(16, "little", signed=True),
                        key=int(seed & ((1 << 64) - 1)).to_bytes(8, "little"), digest_size=8)
    return int.from_bytes(h.digest(), "little") % 100 < SUBSAMPLE_PERCENT


def _kth_root_floor(v: int, k: int) -> int:
    r = int(round(v ** (1.0 / k)))
    while r ** k > v:
        r -= 1
    while (r + 1) ** k <= v:
        r += 1
    return r


def _partial_kth_power_divisor(v: int, k: int) -> int | None:
    """Some ``b <= 10^4`` with ``b^k | v``, searched independently of any factorisation."""
    top = min(CROSSCHECK_BMAX, _kth_root_floor(v, k))
    if top < 2:
        return None
    bs = np.arange(2, top + 1, dtype=object if v >= _INT64_SAFE or top ** k >= _INT64_SAFE else np.int64)
    hits = np.flatnonzero((v % (bs ** k)) == 0) if bs.dtype != object else \
        [i for i, b in enumerate(bs) if v % (b ** k) == 0]
    return int(bs[hits[0]]) if len(hits) else None


def _scan_block(ctx: _Context, lo: int, hi: int) -> dict:
    degree = len(ctx.coeffs) - 1
    n_classes = degree + 2
    ns = np.arange(lo, hi + 1, dtype=np.int64)
    size = ns.size
    member = np.zeros(size, dtype=bool)
    member[_segment(ctx.kind, lo, hi, ctx.base_primes) - lo] = True

    dtype = np.int64 if ctx.fast else object
    x = ns.astype(dtype)
    vals = np.zeros(size, dtype=dtype)
    for c in reversed(ctx.coeffs):
        vals = vals * x + c
    absv = np.abs(vals)
    zero = absv == 0
    resid = absv.copy()
    resid[zero] = 1
    prod = np.ones(size, dtype=dtype)
    maxexp = np.zeros(size, dtype=np.int16)
    omega = np.zeros((n_classes, size), dtype=np.int16)
    omega_trunc = np.zeros((n_classes, size), dtype=np.int16)
    omega_any = np.zeros(size, dtype=np.int16)
    n_eps = len(ctx.smooth_y)
    slog = np.zeros((n_eps, size))
    nlarge = np.zeros((n_eps, size), dtype=np.int16)
    exceptional = []

    for q, rts, ci in ctx.table:
        for r in rts:
            start = (r - lo) % q
            sl = slice(start, None, q)
            sub = resid[sl]
            if not len(sub):
                continue
            e = np.zeros(len(sub), dtype=np.int16)
            div = (sub % q) == 0
            while div.any():
                sub = np.where(div, sub // q, sub)
                e += div
                div &= (sub % q) == 0
            resid[sl] = sub
            has = e > 0
            maxexp[sl] = np.maximum(maxexp[sl], e)
            omega[ci, sl] += has
            omega_any[sl] += has
            if q <= ctx.omega_bound:
                omega_trunc[ci, sl] += has
            prod[sl] = prod[sl] * np.power(np.asarray(q, dtype=dtype), e.astype(np.int64) if ctx.fast else e.astype(object))
            for j, y in enumerate(ctx.smooth_y):
                if q <= y:
                    slog[j, sl] += np.where(has, math.log(q), 0.0)
                    nlarge[j, sl] += e >= 2
                else:
                    nlarge[j, sl] += has
            if q > ctx.big_prime:
                hit = np.flatnonzero(e >= ctx.k)
                for h in hit:
                    pos = start + int(h) * q
                    if member[pos]:
                        exceptional.append((int(ns[pos]), q, int(e[h])))

    # cofactors made of primes above the sieve limit
    lam_cache: dict[int, int] = {}
    limit_sq = ctx.sieve_limit * ctx.sieve_limit
    for i in np.flatnonzero(member & ~zero & (resid > 1)):
        c = int(resid[i])
        facs = [(c, 1)] if c <= limit_sq else list(factorize(c).factors)
        for q, e in facs:
            if q not in lam_cache:
                if ctx.bad % q == 0:
                    lab = RAMIFIED
                else:
                    lab = _lambda_with_root(ctx.coeffs, q, int(ns[i]) % q)
                lam_cache[q] = _class_index(lab, degree)
            ci = lam_cache[q]
            omega[ci, i] += 1
            omega_any[i] += 1
            if q <= ctx.omega_bound:
                omega_trunc[ci, i] += 1
            maxexp[i] = max(int(maxexp[i]), e)
            prod[i] = prod[i] * q ** e
            for j, y in enumerate(ctx.smooth_y):
                if q <= y:
                    slog[j, i] += math.log(q)
                    nlarge[j, i] += e >= 2
                else:
                    nlarge[j, i] += 1
            if q > ctx.big_prime and e >= ctx.k:
                exceptional.append((int(ns[i]), q, e))

    live = member & ~zero
    bad_prod = np.flatnonzero(live & (prod != absv))
    if bad_prod.size:
        i = int(bad_prod[0])
        raise InternalInconsistency(f"factors of f({int(ns[i])}) do not multiply back")

    kfree = live & (maxexp < ctx.k)
    sampled = contradictions = 0
    for i in np.flatnonzero(live):
        n = int(ns[i])
        if not _subsampled(n, ctx.seed):
            continue
        sampled += 1
        b = _partial_kth_power_divisor(int(absv[i]), ctx.k)
        if b is not None and kfree[i]:
            contradictions += 1

    total_omega = omega[:, live].sum(axis=0)
    out = {
        "members": int(live.sum()),
        "kfree": int(kfree.sum()),
        "excluded": [int(n) for n in ns[member & zero]],
        "exceptional": sorted(exceptional),
        "omega_hist": [_hist(omega[c, live]) for c in range(n_classes)],
        "omega_trunc_sum": [int(omega_trunc[c, live].sum()) for c in range(n_classes)],
        "omega_total_hist": _hist(total_omega),
        "partition_ok": bool(np.all(total_omega == omega_any[live])),
        "sampled": sampled,
        "contradictions": contradictions,
        "certified": int(live.sum()),
        "smooth": [],
    }
    if n_eps:
        loglog = math.log(math.log(ctx.N))
        logN = math.log(ctx.N)
        for j, eps in enumerate(ctx.smooth_eps):
            c1 = (slog[j, live] / logN) >= eps
            c2 = nlarge[j, live] >= eps * loglog
            out["smooth"].append({"cond1": int(c1.sum()), "cond2": int(c2.sum()), "either": int((c1 | c2).sum())})
    return out


def _hist(arr: np.ndarray) -> dict[int, int]:
    if not arr.size:
        return {}
    counts = np.bincount(arr.astype(np.int64))
    return {int(v): int(c) for v, c in zip(range(counts.size), counts) if c}


def _merge(acc: dict | None, part: dict) -> dict:
    if acc is None:
        return json.loads(json.dumps(part))
    acc["members"] += part["members"]
    acc["kfree"] += part["kfree"]
    acc["excluded"] += part["excluded"]
    acc["exceptional"] = sorted(map(list, acc["exceptional"])) + sorted(map(list, part["exceptional"]))
    acc["exceptional"].sort()
    for hist_acc, hist in zip(acc["omega_hist"], part["omega_hist"]):
        for v, c in hist.items():
            hist_acc[str(v)] = hist_acc.get(str(v), 0) + c
    for i, s in enumerate(part["omega_trunc_sum"]):
        acc["omega_trunc_sum"][i] += s
    for v, c in part["omega_total_hist"].items():
        acc["omega_total_hist"][str(v)] = acc["omega_total_hist"].get(str(v), 0) + c
    acc["partition_ok"] = acc["partition_ok"] and part["partition_ok"]
    acc["sampled"] += part["sampled"]
    acc["contradictions"] += part["contradictions"]
    acc["certified"] += part["certified"]
    for s_acc, s in zip(acc["smooth"], part["smooth"]):
        for key in s:
            s_acc[key] += s[key]
    return acc


def _normalise(part: dict) -> dict:
    """JSON-shaped copy (string histogram keys) so merged and fresh blocks agree."""
    return json.loads(json.dumps(part))


def _scan_job(args):
    ctx, lo, hi = args
    return _normalise(_scan_block(ctx, lo, hi))


def _run(ctx: _Context, workers: int, checkpoint: Path | None, fingerprint: str) -> dict:
    bounds = [(lo, min(ctx.N, lo + BLOCK - 1)) for lo in range(1, ctx.N + 1, BLOCK)]
    acc = None
    done = 0
    if checkpoint is not None and checkpoint.exists():
        state = json.loads(checkpoint.read_text())
        if state.get("fingerprint") == fingerprint:
            acc, done = state["aggregate"], state["blocks_done"]
    todo = bounds[done:]
    since = 0

    def handle(part):
        nonlocal acc, done, since
        acc = _merge(acc, part)
        done += 1
        since += part["members"]
        if checkpoint is not None and (since >= CHECKPOINT_EVERY or done == len(bounds)):
            tmp = checkpoint.with_suffix(checkpoint.suffix + ".tmp")
            tmp.write_text(json.dumps({"fingerprint": fingerprint, "blocks_done": done, "aggregate": acc}))
            tmp.replace(checkpoint)
            since = 0

    if workers == 1 or len(todo) <= 1:
        for lo, hi in todo:
            handle(_scan_job((ctx, lo, hi)))
    else:
        with ProcessPoolExecutor(workers) as ex:
            for part in ex.map(_scan_job, [(ctx, lo, hi) for lo, hi in todo]):
                handle(part)
    return acc


# ---------------------------------------------------------------------------
# Predictions


def predicted_density(f: IntPolynomial, k: int, kind: SequenceKind, cutoff: int | None = None) -> dict:
    """Euler-product prediction for the share of members with ``f(n)`` k-free."""
    kind = SequenceKind.parse(kind)
    from .localarith import _required_cutoff
    P = max(cutoff or 10 ** 4, _required_cutoff(f))
    out = {}
    if kind is SequenceKind.INTEGERS:
        d = euler_product_density(f, k, "all_residues", P)
        out["primary"] = {"variant": "all_residues", "two_adic": None, "provenance": "paper-product"}
    elif kind is SequenceKind.PRIMES:
        d = euler_product_density(f, k, "unit_residues", P)
        out["primary"] = {"variant": "unit_residues", "two_adic": None, "provenance": "paper-product"}
    else:
        d = euler_product_density(f, k, "two_squares", P, two_adic="derived")
        out["primary"] = {"variant": "two_squares", "two_adic": "derived", "provenance": "derived-oracle"}
        uniform = euler_product_density(f, k, "two_squares", P, two_adic="uniform")
        out["uniform_two_adic"] = {"value": uniform.value, "tail_bound": uniform.tail_bound, "lower": uniform.lower,
                              "obstruction": uniform.obstruction, "variant": "two_squares",
                              "two_adic": "uniform", "provenance": "paper-product"}
    out["primary"].update({"value": d.value, "tail_bound": d.tail_bound, "lower": d.lower,
                           "obstruction": d.obstruction, "cutoff": P})
    return out


def _omega_oracle(f: IntPolynomial, kind: SequenceKind, bound: int) -> list[float]:
    """``sum_{q <= bound} sum_{f(a) = 0 mod q} rho(a, q)`` split by Frobenius class."""
    degree = f.degree
    bad = _ramified_product(f)
    terms: list[list[float]] = [[] for _ in range(degree + 2)]
    for q in primes_up_to(bound):
        rts = roots_mod_p(f.coefficients, q)
        if not rts:
            continue
        label = RAMIFIED if bad % q == 0 else len(rts)
        s = sum((density_oracle(kind, a, q) for a in rts), Fraction(0))
        terms[_class_index(label, degree)].append(float(s))
    return [math.fsum(t) for t in terms]


# ---------------------------------------------------------------------------
# Reports


@dataclass
class SurveyReport:
    polynomial: str
    coefficients: list[int]
    k: int
    sequence: str
    N: int
    epsilon: float
    members_total: int
    kfree_count: int
    empirical_density: float
    predicted: dict
    omega: dict
    exceptional: list
    excluded: list
    checks: dict
    seed: int
    runtime: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "polynomial": self.polynomial,
            "coefficients": self.coefficients,
            "k": self.k,
            "sequence": self.sequence,
            "N": self.N,
            "epsilon": self.epsilon,
            "members_total": self.members_total,
            "kfree_count": self.kfree_count,
            "empirical_density": self.empirical_density,
            "predicted": self.predicted,
            "omega": self.omega,
            "exceptional": self.exceptional,
            "excluded": self.excluded,
            "checks": self.checks,
            "seed": self.seed,
            "runtime": self.runtime,
        }

    def to_json(self) -> str:
        return dumps(self.as_dict())

    def csv_row(self) -> list:
        p = self.predicted["primary"]
        return [self.polynomial, self.k, self.sequence, self.N, self.members_total, self.kfree_count,
                self.empirical_density, p["value"], p["tail_bound"], len(self.exceptional)]

    CSV_HEADER = ("polynomial", "k", "sequence", "N", "members_total", "kfree_count",
                  "empirical_density", "predicted_density", "tail_bound", "exceptional")

    @property
    def predicted_density(self) -> float:
        return self.predicted["primary"]["value"]


def _omega_section(f: IntPolynomial, kind: SequenceKind, N: int, agg: dict, omega_bound: int) -> dict:
    labels = _class_labels(f.degree)
    members = agg["members"]
    loglog = math.log(math.log(N)) if N >= 16 else float("nan")
    oracle = _omega_oracle(f, kind, omega_bound)
    classes = {}
    for i, lab in enumerate(labels):
        hist = {int(v): c for v, c in agg["omega_hist"][i].items()}
        total = sum(v * c for v, c in hist.items())
        mean = total / members if members else 0.0
        trunc = agg["omega_trunc_sum"][i] / members if members else 0.0
        tails = {}
        for thr in TAIL_THRESHOLDS:
            cut = thr * loglog
            tails[repr(thr)] = sum(c for v, c in hist.items() if v >= cut) / members if members else 0.0
        classes[str(lab)] = {
            "mean": mean,
            "mean_over_loglogN": mean / loglog if loglog == loglog else None,
            "mean_truncated": trunc,
            "oracle_truncated": tagged(oracle[i], DERIVED),
            "tail_frequencies": tails,
            "histogram": {str(v): c for v, c in sorted(hist.items())},
        }
    total_hist = {int(v): c for v, c in agg["omega_total_hist"].items()}
    mean_total = sum(v * c for v, c in total_hist.items()) / members if members else 0.0
    return {"omega_bound": omega_bound, "loglogN": loglog if loglog == loglog else None,
            "classes": classes, "mean_total": mean_total}


def _fingerprint(*parts) -> str:
    return hashlib.blake2b(repr(parts).encode(), digest_size=16).hexdigest()


def powerfree_survey(f: IntPolynomial, k: int, kind: SequenceKind | str, N: int, epsilon: float = 0.25,
                     seed: int = 0, workers: int | None = None, cutoff: int | None = None,
                     omega_bound: int | None = None, checkpoint: str | os.PathLike | None = None) -> SurveyReport:
    """Count members ``n <= N`` with ``f(n)`` free of ``k``-th powers and compare with the Euler product."""
    kind = SequenceKind.parse(kind)
    if k < 2:
        raise DomainError("k must be >= 2")
    if not 1 <= N <= MAX_N:
        raise DomainError(f"N must lie in [1, {MAX_N}]")
    if f.degree < 1:
        raise DomainError("surveys need a nonconstant polynomial")
    if not 0 < epsilon < 1:
        raise DomainError("epsilon must lie in (0, 1)")
    t0 = time.perf_counter()
    omega_bound = min(N, SIEVE_LIMIT) if omega_bound is None else int(omega_bound)
    workers = _workers(workers)
    ctx = _build_context(f, kind, N, k, epsilon, omega_bound, seed)
    fp = _fingerprint("survey", f.coefficients, k, kind.token, N, epsilon, seed, omega_bound, BLOCK)
    agg = _run(ctx, workers, Path(checkpoint) if checkpoint else None, fp)
    predicted = predicted_density(f, k, kind, cutoff)
    if predicted["primary"]["obstruction"] is not None:
        predicted["comparison"] = "skipped: local obstruction at p = %d" % predicted["primary"]["obstruction"]
    members = agg["members"]
    emp = agg["kfree"] / members if members else 0.0
    checks = {
        "certified_values": agg["certified"],
        "partition_exact": agg["partition_ok"],
        "crosscheck_sampled": agg["sampled"],
        "crosscheck_contradictions": agg["contradictions"],
        "tolerances": "engineering choices; no effective constant is known for the convergence",
    }
    report = SurveyReport(
        polynomial=str(f), coefficients=list(f.coefficients), k=k, sequence=kind.token, N=N,
        epsilon=epsilon, members_total=members, kfree_count=agg["kfree"], empirical_density=emp,
        predicted=predicted, omega=_omega_section(f, kind, N, agg, omega_bound),
        exceptional=[list(e) for e in agg["exceptional"]], excluded=agg["excluded"], checks=checks,
        seed=seed,
        runtime={"seconds": round(time.perf_counter() - t0, 3), "workers": workers,
                 "backend": DEFAULT_BACKEND},
    )
    if agg["contradictions"]:
        raise InternalInconsistency(f"{agg['contradictions']} partial-oracle contradictions")
    return report


# ---------------------------------------------------------------------------
# Omega statistics


@dataclass
class OmegaReport:
    polynomial: str
    sequence: str
    N: int
    omega_bound: int
    loglogN: float
    classes: dict
    mean_total: float
    partition_exact: bool
    runtime: dict = field(default_factory=dict)

    def relative_errors(self) -> dict:
        out = {}
        for lab, row in self.classes.items():
            o = row["oracle_truncated"]["value"]
            m = row["mean_truncated"]
            out[lab] = abs(m - o) / o if o else abs(m)
        return out

    def as_dict(self) -> dict:
        return {"polynomial": self.polynomial, "sequence": self.sequence, "N": self.N,
                "omega_bound": self.omega_bound, "loglogN": self.loglogN, "classes": self.classes,
                "mean_total": self.mean_total, "partition_exact": self.partition_exact,
                "runtime": self.runtime}


def omega_statistics(f: IntPolynomial, kind: SequenceKind | str, N: int, omega_bound: int | None = None,
                     workers: int | None = None, seed: int = 0) -> OmegaReport:
    """Per Frobenius-class means of ``omega_lambda(f(n))`` against the truncated oracle sums.

    The comparison restricts both sides to primes ``q <= omega_bound``
    (default ``N``); the untruncated means are reported alongside.
    """
    kind = SequenceKind.parse(kind)
    if N > 10 ** 7:
        raise DomainError("omega statistics are limited to N <= 10^7")
    if not f.is_irreducible:
        raise UnsupportedInputError(f"{f} is reducible over Q")
    t0 = time.perf_counter()
    omega_bound = N if omega_bound is None else int(omega_bound)
    ctx = _build_context(f, kind, N, 2, 0.25, omega_bound, seed)
    fp = _fingerprint("omega", f.coefficients, kind.token, N, omega_bound, BLOCK)
    agg = _run(ctx, _workers(workers), None, fp)
    sec = _omega_section(f, kind, N, agg, omega_bound)
    return OmegaReport(str(f), kind.token, N, omega_bound, sec["loglogN"], sec["classes"], sec["mean_total"],
                       agg["partition_ok"], {"seconds": round(time.perf_counter() - t0, 3)})


def frobenius_class_frequencies(f: IntPolynomial, bound: int) -> dict:
    """Share of unramified primes ``p <= bound`` with each root count."""
    if not f.is_irreducible:
        raise UnsupportedInputError(f"{f} is reducible over Q")
    bad = _ramified_product(f)
    counts: dict[int, int] = {}
    total = 0
    for p in primes_up_to(bound):
        lab = _lambda_of(f, bad, p)
        if lab == RAMIFIED:
            continue
        counts[lab] = counts.get(lab, 0) + 1
        total += 1
    return {lam: c / total for lam, c in sorted(counts.items())}


# ---------------------------------------------------------------------------
# Smooth / large split


@dataclass
class SmoothSplitReport:
    polynomial: str
    N: int
    rows: list

    def violation(self, epsilon: float) -> float:
        for row in self.rows:
            if row["epsilon"] == epsilon:
                return row["violation_fraction"]
        raise KeyError(epsilon)

    def as_dict(self) -> dict:
        return {"polynomial": self.polynomial, "N": self.N, "rows": self.rows}


def smooth_split_values(f: IntPolynomial, n: int, N: int, epsilon: float) -> tuple[int, int]:
    """``(gamma_N(n), large count)`` for one ``n``, with ``y = N^((log N)^-eps)``."""
    if N < 16 or not 0 < epsilon < 1:
        raise DomainError("need N >= 16 and epsilon in (0, 1)")
    v = f(n)
    if v == 0:
        raise DomainError(f"f({n}) = 0")
    y = N ** (math.log(N) ** -epsilon)
    gamma, large = 1, 0
    for q, e in factorize(v).factors:
        if q <= y:
            gamma *= q
            large += e >= 2
        else:
            large += 1
    return gamma, large


def smooth_split_diagnostics(f: IntPolynomial, N: int, epsilon: float | Sequence[float],
                             workers: int | None = None) -> SmoothSplitReport:
    """For ``y = N^((log N)^-eps)``: share of ``n <= N`` where ``log gamma_N(n) / log N >= eps``
    (small primes carry too much) or where count of primes ``> y`` plus count of
    squares of primes ``<= y`` dividing ``f(n)`` reaches ``eps log log N``.
    """
    if N > 10 ** 7 or N < 16:
        raise DomainError("N must lie in [16, 10^7]")
    eps_list = [float(epsilon)] if isinstance(epsilon, (int, float)) else [float(e) for e in epsilon]
    for e in eps_list:
        if not 0 < e < 1:
            raise DomainError("epsilon must lie in (0, 1)")
    logN = math.log(N)
    ys = tuple(N ** (logN ** -e) for e in eps_list)
    ctx = _build_context(f, SequenceKind.INTEGERS, N, 2, 0.25, min(N, SIEVE_LIMIT), 0, ys, eps_list)
    agg = _run(ctx, _workers(workers), None, _fingerprint("smooth", f.coefficients, N, tuple(eps_list)))
    members = agg["members"]
    rows = []
    for e, y, s in zip(eps_list, ys, agg["smooth"]):
        rows.append({
            "epsilon": e,
            "delta": logN ** -e,
            "y": y,
            "threshold_count": e * math.log(logN),
            "condition1_fraction": s["cond1"] / members,
            "condition2_fraction": s["cond2"] / members,
            "violation_fraction": s["either"] / members,
        })
    return SmoothSplitReport(str(f), N, rows)


# ---------------------------------------------------------------------------
# Binary forms


def _form_block(args) -> tuple[int, int]:
    coeffs, N, y_lo, y_hi = args
    F = BinaryForm(coeffs)
    total = sqfree = 0
    for y in range(y_lo, y_hi + 1):
        for x in range(1, N + 1):
            v = F(x, y)
            total += 1
            if v != 0 and factorize(v).max_exponent < 2:
                sqfree += 1
    return total, sqfree


def binary_form_survey(F: BinaryForm, N: int, cutoff: int | None = None, workers: int | None = None) -> dict:
    """Square-free values of ``F(x, y)`` on ``[1, N]^2`` against ``N^2 prod (1 - rho_F(p^2)/p^4)``."""
    if N > 2000 or N < 1:
        raise DomainError("N must lie in [1, 2000]")
    if F.degree != 6:
        raise DomainError("expected a sextic form")
    if not F.is_irreducible:
        raise UnsupportedInputError(f"{F} is reducible over Q")
    t0 = time.perf_counter()
    from .localarith import _required_cutoff
    P = max(cutoff or 10 ** 4, _required_cutoff(F))
    pred = euler_product_density(F, 2, "binary_form", P)
    w = _workers(workers)
    step = max(1, N // (4 * w))
    jobs = [(F.coefficients, N, lo, min(N, lo + step - 1)) for lo in range(1, N + 1, step)]
    if w == 1:
        parts = [_form_block(j) for j in jobs]
    else:
        with ProcessPoolExecutor(w) as ex:
            parts = list(ex.map(_form_block, jobs))
    total = sum(p[0] for p in parts)
    sqfree = sum(p[1] for p in parts)
    expected = N * N * pred.value
    return {
        "form": str(F),
        "coefficients": list(F.coefficients),
        "N": N,
        "pairs": total,
        "squarefree_count": sqfree,
        "predicted_count": tagged(expected, "paper-product"),
        "predicted_density": pred.value,
        "tail_bound": pred.tail_bound,
        "obstruction": pred.obstruction,
        "relative_error": abs(sqfree - expected) / expected if expected else (0.0 if sqfree == 0 else math.inf),
        "cutoff": P,
        "runtime": {"seconds": round(time.perf_counter() - t0, 3), "workers": w},
    }
