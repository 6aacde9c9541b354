"""Closed-form exponential and Pareto models, exact TV/KL formulas,
and the packing separation function T(r).

All distances here are analytic. The exponential TV formula is exact (the
two densities cross exactly once, at a point with a closed form); the
Pareto distance is an upper bound combining an exact equal-shape TV term
with a Pinsker bound on the equal-scale shape gap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dataset import Dataset
from .errors import EmptyRequest, InvalidRate, InvalidRatio, InvalidScale, InvalidShape
from .privacy import RngStream

__all__ = [
    "ExpModel",
    "ParetoModel",
    "TvCrossing",
    "sample",
    "exp_tv",
    "exp_tv_crossing",
    "separation_T",
    "pareto_kl_equal_scale",
    "pareto_tv_bound",
]

# Rates closer than this (relatively) are treated as equal; the crossing
# point formula degenerates to 0/0 there.
_RATE_EQ_RTOL = 1e-12


def _check_rate(rate) -> float:
    if not (isinstance(rate, (int, float)) and math.isfinite(rate) and rate > 0):
        raise InvalidRate(f"rate must be positive and finite, got {rate!r}")
    return float(rate)


@dataclass(frozen=True)
class ExpModel:
    """Exponential law with density rate * e^(-rate * x) on x >= 0."""

    rate_lambda: float

    def __post_init__(self):
        _check_rate(self.rate_lambda)

    @property
    def mean(self) -> float:
        return 1.0 / self.rate_lambda

    def pdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        out = np.where(x < 0, 0.0, self.rate_lambda * np.exp(-self.rate_lambda * x))
        return float(out) if out.ndim == 0 else out

    def cdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        out = np.where(x < 0, 0.0, -np.expm1(-self.rate_lambda * x))
        return float(out) if out.ndim == 0 else out

    def quantile(self, p):
        p = np.asarray(p, dtype=np.float64)
        if np.any(p < 0) or np.any(p >= 1):
            raise ValueError("quantile level must lie in [0, 1)")
        out = -np.log1p(-p) / self.rate_lambda
        return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class ParetoModel:
    """Pareto law with density shape * scale^shape / x^(shape+1) on x >= scale."""

    scale_xm: float
    shape_alpha_p: float

    def __post_init__(self):
        xm = self.scale_xm
        if not (isinstance(xm, (int, float)) and math.isfinite(xm) and xm > 0):
            raise InvalidScale(f"scale must be positive and finite, got {xm!r}")
        a = self.shape_alpha_p
        if not (isinstance(a, (int, float)) and math.isfinite(a) and a > 0):
            raise InvalidShape(f"shape must be positive and finite, got {a!r}")

    def pdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        xm, a = self.scale_xm, self.shape_alpha_p
        with np.errstate(divide="ignore", invalid="ignore"):
            dens = a * xm ** a / x ** (a + 1.0)
        out = np.where(x < xm, 0.0, dens)
        return float(out) if out.ndim == 0 else out

    def cdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        xm, a = self.scale_xm, self.shape_alpha_p
        with np.errstate(divide="ignore", invalid="ignore"):
            tail = -np.expm1(a * np.log(xm / x))
        out = np.where(x < xm, 0.0, tail)
        return float(out) if out.ndim == 0 else out

    def quantile(self, p):
        p = np.asarray(p, dtype=np.float64)
        if np.any(p < 0) or np.any(p >= 1):
            raise ValueError("quantile level must lie in [0, 1)")
        out = self.scale_xm * np.exp(-np.log1p(-p) / self.shape_alpha_p)
        return float(out) if out.ndim == 0 else out


def sample(model, n: int, rng: RngStream) -> Dataset:
    """n i.i.d. draws via inverse CDF on uniforms in [0, 1)."""
    if n < 1:
        raise EmptyRequest(f"need at least one draw, got n={n}")
    u = rng.random(int(n))
    if isinstance(model, ExpModel):
        values = -np.log1p(-u) / model.rate_lambda
    elif isinstance(model, ParetoModel):
        values = model.scale_xm * np.exp(-np.log1p(-u) / model.shape_alpha_p)
    else:
        raise TypeError(f"unsupported model type {type(model).__name__}")
    return Dataset(values)


@dataclass(frozen=True)
class TvCrossing:
    """The point where two exponential densities with distinct rates meet."""

    crossing_a: float


def exp_tv_crossing(lambda1: float, lambda2: float) -> TvCrossing:
    """Crossing point a = ln(l1/l2) / (l1 - l2) for distinct rates."""
    l1, l2 = _check_rate(lambda1), _check_rate(lambda2)
    lo, hi = min(l1, l2), max(l1, l2)
    if hi - lo < _RATE_EQ_RTOL * hi:
        raise InvalidRate("crossing point undefined for (near-)equal rates")
    d = hi - lo
    return TvCrossing(math.log1p(d / lo) / d)


def exp_tv(lambda1: float, lambda2: float) -> float:
    """Exact TV distance between Exp(lambda1) and Exp(lambda2).

    The densities cross once at a = ln(l_hi/l_lo)/(l_hi - l_lo), and
    TV = e^(-l_lo * a) - e^(-l_hi * a). Written with log1p/expm1 so nearby
    rates do not lose the small difference to cancellation.
    """
    l1, l2 = _check_rate(lambda1), _check_rate(lambda2)
    lo, hi = min(l1, l2), max(l1, l2)
    if hi - lo < _RATE_EQ_RTOL * hi:
        return 0.0
    d = hi - lo
    a = math.log1p(d / lo) / d
    return -math.exp(-lo * a) * math.expm1(-d * a)


def separation_T(r: float) -> float:
    """TV between exponential laws whose rates differ by ratio r >= 1.

    T(r) = r^(-1/(r-1)) * (1 - 1/r); T(1) = 0 by continuity. Satisfies
    T(1 + 8a) >= a for a in (0, 1/2), which is what makes the geometric
    packing family pairwise separated.
    """
    if not (isinstance(r, (int, float)) and math.isfinite(r) and r >= 1):
        raise InvalidRatio(f"ratio must satisfy r >= 1, got {r!r}")
    r = float(r)
    if r == 1.0:
        return 0.0
    return r ** (-1.0 / (r - 1.0)) * (1.0 - 1.0 / r)


def pareto_kl_equal_scale(alpha1: float, alpha2: float) -> float:
    """alpha1/alpha2 - 1 - ln(alpha1/alpha2), the KL between equal-scale
    Pareto laws whose shapes differ by the ratio alpha1/alpha2.

    (As an oriented divergence this equals KL(Pareto(alpha2) || Pareto(alpha1));
    the TV bound below only uses it through the symmetric max/min ratio.)
    """
    for a in (alpha1, alpha2):
        if not (isinstance(a, (int, float)) and math.isfinite(a) and a > 0):
            raise InvalidShape(f"shape must be positive and finite, got {a!r}")
    ratio = alpha1 / alpha2
    return ratio - 1.0 - math.log(ratio)


def pareto_tv_bound(model1: ParetoModel, model2: ParetoModel) -> float:
    """Upper bound on TV(model1, model2): exact equal-shape scale term plus
    a Pinsker bound on the equal-scale shape term. May exceed 1."""
    m_hi = max(model1.scale_xm, model2.scale_xm)
    m_lo = min(model1.scale_xm, model2.scale_xm)
    delta_s = math.log(m_hi / m_lo)
    a_max = max(model1.shape_alpha_p, model2.shape_alpha_p)
    a_min = min(model1.shape_alpha_p, model2.shape_alpha_p)
    scale_term = -math.expm1(-a_max * delta_s)
    shape_term = math.sqrt(0.5 * pareto_kl_equal_scale(a_max, a_min))
    return scale_term + shape_term
