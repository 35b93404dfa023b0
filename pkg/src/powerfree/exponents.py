"""The minimax exponent gamma and its closed form for normal groups.

For a rate profile ``(c, c', d, theta)`` the exponent is

    gamma = min_x max((d-1)/d + I_c(x)/d, theta + I_{c'}(x)) - theta

over the box between ``c`` and ``c'``.  The minimiser lies on the path
``x_j(alpha) = c_j^alpha c'_j^(1-alpha)`` (zero where either entry is zero),
so the search is one-dimensional: find where the two branches cross, or
fall back to the better endpoint.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from .errors import DomainError, InternalInconsistency
from .groups import FixedPointDistribution, GroupRecord, TABLE1_ORDER, catalog, regular_distribution
from .ratefn import RateVector, rate_function

__all__ = [
    "RateProfile",
    "GammaResult",
    "profile_from_group",
    "profile_from_distribution",
    "alpha_path",
    "branch_values",
    "crossing_residual",
    "gamma_min",
    "lambert_w_minus1",
    "gamma_normal_closed_form",
    "entropy_threshold_check",
    "TABLE2_ORDER",
    "gamma_table",
    "gamma_table_csv",
]

BISECTION_TOL = 1e-12
# 1/e as an unevaluated sum hi + lo, so x + 1/e is exact near the branch point
_INV_E_HI = 0.36787944117144233
_INV_E_LO = -1.2428753672788363e-17
ENDPOINT_AGREEMENT_TOL = 1e-12


@dataclass(frozen=True)
class RateProfile:
    """Class weights ``c`` and fixed-point-weighted ``c'`` with degree and sieve dimension.

    Labels are arbitrary; ``lambda_of`` maps each to its fixed-point count.
    Weights are exact rationals.
    """

    labels: tuple
    c: tuple[Fraction, ...]
    cprime: tuple[Fraction, ...]
    lambda_of: dict
    degree: int
    theta: float

    def __post_init__(self):
        for label, cj, cpj in zip(self.labels, self.c, self.cprime):
            if cpj != cj * self.lambda_of[label]:
                raise DomainError(f"c'_{label} != c_{label} * lambda")
        if self.theta < 0:
            raise DomainError("theta must be >= 0")

    @property
    def c_vector(self) -> RateVector:
        return RateVector(self.labels, tuple(float(v) for v in self.c))

    @property
    def cprime_vector(self) -> RateVector:
        return RateVector(self.labels, tuple(float(v) for v in self.cprime))

    def support(self) -> list[int]:
        """Indices of the labels with both weights nonzero."""
        return [i for i, (a, b) in enumerate(zip(self.c, self.cprime)) if a and b]

    def with_theta(self, theta: float) -> RateProfile:
        return RateProfile(self.labels, self.c, self.cprime, self.lambda_of, self.degree, theta)


@dataclass(frozen=True)
class GammaResult:
    alpha: float | None
    x: RateVector
    gamma: float
    g_value: float
    branch: str  # "interior_root" | "endpoint_luverly" | "zero_vector"
    g1: float
    g2: float
    theta: float


def profile_from_distribution(dist: FixedPointDistribution, theta: float,
                              degree: int | None = None) -> RateProfile:
    labels = tuple(lam for lam, _ in dist.entries)
    c = tuple(w for _, w in dist.entries)
    cprime = tuple(w * lam for lam, w in dist.entries)
    return RateProfile(labels, c, cprime, {lam: lam for lam in labels},
                       dist.degree if degree is None else degree, theta)


def profile_from_group(record: GroupRecord, theta: float, degree_override: int | None = None) -> RateProfile:
    return profile_from_distribution(record.distribution, theta,
                                     record.degree if degree_override is None else degree_override)


def _path(profile: RateProfile, alpha: float) -> list[float]:
    x = [0.0] * len(profile.labels)
    for i in profile.support():
        ci, cpi = float(profile.c[i]), float(profile.cprime[i])
        x[i] = ci ** alpha * cpi ** (1.0 - alpha)
    return x


def alpha_path(profile: RateProfile, alpha: float) -> RateVector:
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha}")
    return RateVector(profile.labels, tuple(_path(profile, alpha)))


def branch_values(profile: RateProfile, x: RateVector | Mapping) -> tuple[float, float]:
    """``(g1, g2)`` at ``x``: the two arguments of the max."""
    d = profile.degree
    g1 = (d - 1) / d + rate_function(profile.c_vector, x) / d
    g2 = profile.theta + rate_function(profile.cprime_vector, x)
    return g1, g2


def _delta(profile: RateProfile, alpha: float) -> float:
    g1, g2 = branch_values(profile, alpha_path(profile, alpha))
    return g1 - g2


def crossing_residual(profile: RateProfile, alpha: float) -> float:
    """Left side minus right side of the crossing equation, written out per class.

    Algebraically equal to ``g1 - g2`` along the path; computed separately.
    """
    d = profile.degree
    terms = [-profile.theta]
    for i in profile.support():
        ci, cpi = float(profile.c[i]), float(profile.cprime[i])
        xi = ci ** alpha * cpi ** (1.0 - alpha)
        terms.append(xi * ((d - 1) / d - math.log(ci / cpi) * (1 / d + (d - 1) * alpha / d)))
    return math.fsum(terms)


def _box_check(profile: RateProfile, g_best: float, n_points: int, seed: int) -> None:
    """Random points of the box must not beat the path minimum."""
    support = profile.support()
    if not support:
        return
    rng = np.random.default_rng(seed)
    d = profile.degree
    c = np.array([float(profile.c[i]) for i in support])
    cp = np.array([float(profile.cprime[i]) for i in support])
    lo, hi = np.minimum(c, cp), np.maximum(c, cp)
    x = lo + (hi - lo) * rng.random((n_points, len(support)))
    # coordinates off the support are forced to 0 for a finite value
    i_c = 1 - x.sum(1) + (x * np.log(x / c)).sum(1)
    i_cp = 1 - x.sum(1) + (x * np.log(x / cp)).sum(1)
    g = np.maximum((d - 1) / d + i_c / d, profile.theta + i_cp)
    if g.min() < g_best - 1e-9:
        raise InternalInconsistency(f"box point with g={g.min():.12g} below path minimum {g_best:.12g}")


def gamma_min(profile: RateProfile, verify: bool = True, box_points: int = 1000) -> GammaResult:
    """Minimise the max of the two branches along the alpha-path.

    With ``verify`` the endpoint value is recomputed from the closed formula
    and random points of the box are checked against the result.
    """
    d, theta = profile.degree, profile.theta
    support = profile.support()
    if not support:
        x = RateVector(profile.labels, (0.0,) * len(profile.labels))
        g1, g2 = branch_values(profile, x)
        g = max(1.0, theta + 1.0)
        return GammaResult(None, x, g - theta, g, "zero_vector", g1, g2, theta)

    d0, d1 = _delta(profile, 0.0), _delta(profile, 1.0)
    if d0 == 0 or d1 == 0 or (d0 > 0) != (d1 > 0):
        lo, hi = 0.0, 1.0
        f_lo = d0
        alpha = 0.0 if d0 == 0 else 1.0 if d1 == 0 else 0.5
        if d0 != 0 and d1 != 0:
            while True:
                alpha = 0.5 * (lo + hi)
                f = _delta(profile, alpha)
                if abs(f) <= BISECTION_TOL or hi - lo < 1e-16:
                    break
                if (f > 0) == (f_lo > 0):
                    lo, f_lo = alpha, f
                else:
                    hi = alpha
        x = alpha_path(profile, alpha)
        g1, g2 = branch_values(profile, x)
        g = max(g1, g2)
        branch = "interior_root"
    else:
        ends = []
        for a in (0.0, 1.0):
            xa = alpha_path(profile, a)
            ga1, ga2 = branch_values(profile, xa)
            ends.append((max(ga1, ga2), a, xa, ga1, ga2))
        g_direct, alpha, x, g1, g2 = min(ends, key=lambda e: (e[0], e[1]))
        sum_c = math.fsum(float(profile.c[i]) for i in support)
        sum_cp = math.fsum(float(profile.cprime[i]) for i in support)
        g_formula = max(1.0 - sum_c / d, theta + 1.0 - sum_cp)
        if abs(g_formula - g_direct) > ENDPOINT_AGREEMENT_TOL:
            raise InternalInconsistency(
                f"endpoint formula {g_formula!r} disagrees with direct evaluation {g_direct!r}")
        g = g_formula
        branch = "endpoint_luverly"
    if verify:
        _box_check(profile, g, box_points, seed=len(profile.labels) * 7919 + d)
    return GammaResult(alpha, x, g - theta, g, branch, g1, g2, theta)


# ---------------------------------------------------------------------------
# Normal groups


def _log_excess(s: float) -> float:
    """``s - log(1 + s)`` without cancellation for small ``s``."""
    if s >= 0.25:
        return s - math.log1p(s)
    total, term, n = 0.0, -s, 1
    while True:
        n += 1
        term *= -s
        piece = term / n
        total += piece
        if abs(piece) <= 1e-18 * total:
            return total


def lambert_w_minus1(x: float, tol: float = 1e-15, max_iter: int = 100) -> float:
    """Lower real branch of the inverse of ``y e^y``, for ``-1/e <= x < 0``.

    With ``w = -1 - s`` the equation becomes ``s - log(1 + s) = -log(-e x)``,
    whose right side is obtained through ``log1p`` of the exact gap
    ``x + 1/e``; Halley steps on this form stay well conditioned up to the
    branch point, where ``w e^w - x`` itself would cancel.
    """
    branch_point = -math.exp(-1.0)
    if not (x < 0) or x < branch_point - 1e-16:
        raise DomainError(f"W_-1 is defined on [-1/e, 0), got {x}")
    gap = (x + _INV_E_HI) + _INV_E_LO
    if gap <= 0.0:
        return -1.0
    lx = math.log(-x)
    # -1 - log(-x) cancels when e x is close to -1
    rhs = -math.log1p(-math.e * gap) if math.e * gap < 0.5 else -1.0 - lx
    if gap < 1e-3:
        # series in p = -sqrt(2(1 + e x)) about the branch point
        p = -math.sqrt(2.0 * math.e * gap)
        s = -(p - p * p / 3.0 + 11.0 / 72.0 * p ** 3)
    else:
        s = -1.0 - (lx - math.log(-lx))
    for _ in range(max_iter):
        f = _log_excess(s) - rhs
        d1 = s / (1.0 + s)
        d2 = 1.0 / (1.0 + s) ** 2
        step = f / (d1 - f * d2 / (2.0 * d1))
        s_new = s - step
        if s_new <= 0.0:
            s_new = s / 2.0
        done = abs(s_new - s) <= tol * s
        s = s_new
        if done:
            break
    return -1.0 - s


def gamma_normal_closed_form(d: int) -> float:
    """Exponent for a normal polynomial of degree ``d`` over the primes."""
    if d < 3:
        raise DomainError("closed form requires d >= 3")
    arg = -(d ** ((d - 2) / (d - 1))) / (math.e * (d - 1))
    w = lambert_w_minus1(arg)
    return -(d * math.log(d)) / ((d - 1) ** 2 * w) - 1.0 / (d - 1)


def entropy_threshold_check(entropy: float, theta: float, k: int) -> bool:
    """Whether ``entropy > (k+1) theta - k``."""
    if k < 2:
        raise DomainError("k must be >= 2")
    return entropy > (k + 1) * theta - k


# ---------------------------------------------------------------------------
# Tables

TABLE2_ORDER = (
    "A_3", "C(4)", "E(4)", "D(4)", "C(5)", "C(6)", "D_6(6)", "D(6)", "A_4(6)",
    "F_18(6)", "2A_4(6)", "F_18(6):2", "F_36(6)", "2S_4(6)",
)


def gamma_table(theta: float, names: Iterable[str] | None = None) -> list[tuple[GroupRecord, GammaResult]]:
    if names is None:
        names = TABLE2_ORDER if theta == 1 else TABLE1_ORDER
    by_name = {r.chm_name: r for r in catalog()}
    return [(by_name[n], gamma_min(profile_from_group(by_name[n], theta))) for n in names]


def gamma_table_csv(theta: float, names: Iterable[str] | None = None) -> str:
    lines = ["chm_name,theta,alpha,branch,gamma"]
    for rec, res in gamma_table(theta, names):
        alpha = "" if res.alpha is None else repr(res.alpha)
        lines.append(f"{rec.chm_name},{theta!r},{alpha},{res.branch},{res.gamma!r}")
    return "\n".join(lines) + "\n"


def regular_profile(d: int, theta: float = 1.0) -> RateProfile:
    return profile_from_distribution(regular_distribution(d), theta)


__all__.append("regular_profile")
