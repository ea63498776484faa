"""Cascading three-wave adoption curve and its inverse.

The transformation score over time is the sum of three staggered
logistics (foundation, generative/agentic, autonomous). Because the sum
is strictly increasing, every attainable score has a unique implied
curve position; the inverse uses per-wave closed forms as starting
points and always polishes with a bracketed Newton/bisection root so the
other-wave tails are accounted for.

Firm adjustments reshape the base curve: readiness factors multiply wave
steepness and delay the ramp midpoint, and the frontier multiplier
raises wave ceilings while pulling wave onsets earlier.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Sequence

__all__ = [
    "TrajectoryError",
    "WaveParams",
    "IfsTrajectoryFactors",
    "FirmCurve",
    "DEFAULT_WAVES",
    "aitg_at",
    "invert",
    "adjust_steepness",
    "adjust_t50",
    "shift_wave_midpoints",
    "afc_firm_adjust",
    "variable_t50_base",
    "build_firm_curve",
]

_SUM_TOL = 1e-9

#: Branch guard half-width around wave boundaries, in score units.
BRANCH_EPS = 0.01

#: Hard floor applied to readiness factors inside delay formulas.
DELTA_MIN = 0.10

#: Newton iteration cap before the solver falls back to pure bisection.
NEWTON_MAX_ITER = 25

#: Root bracket for the inverse, in months.
BRACKET = (-200.0, 600.0)


class TrajectoryError(ValueError):
    """Raised on invalid trajectory inputs."""


@dataclass(frozen=True)
class WaveParams:
    """One logistic wave: ceiling, steepness (per month), midpoint (months)."""

    ceiling: float
    steepness: float
    midpoint: float

    def __post_init__(self) -> None:
        if self.ceiling <= 0:
            raise TrajectoryError("wave ceiling must be positive")
        if self.steepness <= 0:
            raise TrajectoryError("wave steepness must be positive")


DEFAULT_WAVES: tuple[WaveParams, ...] = (
    WaveParams(4.0, 0.38, 18.0),
    WaveParams(3.5, 0.42, 36.0),
    WaveParams(2.5, 0.32, 60.0),
)


def _validate_waves(waves: Sequence[WaveParams], require_unit_sum: bool = True) -> None:
    if len(waves) != 3:
        raise TrajectoryError("exactly three waves expected")
    if require_unit_sum and abs(sum(w.ceiling for w in waves) - 10.0) > _SUM_TOL:
        raise TrajectoryError("base wave ceilings must sum to 10")
    mids = [w.midpoint for w in waves]
    if not (mids[0] < mids[1] < mids[2]):
        raise TrajectoryError("wave midpoints must be strictly increasing")


@dataclass(frozen=True)
class IfsTrajectoryFactors:
    """Organizational change capacity and data readiness.

    Nominal calibration range is [0.50, 1.00]; any value in (0, 1] is
    accepted at entry because production scorings do fall below the
    nominal floor, and the formulas carry their own 0.10 hard floor.
    """

    occ: float
    dr: float

    def __post_init__(self) -> None:
        for name, v in (("occ", self.occ), ("dr", self.dr)):
            if not (0.0 < v <= 1.00):
                raise TrajectoryError(f"trajectory factor {name}={v} outside (0, 1]")


@dataclass(frozen=True)
class FirmCurve:
    """Effective firm curve: adjusted waves plus ramp parameters.

    ``waves`` already carry every firm adjustment (readiness steepness,
    midpoint delay, frontier ceiling/onset scaling); ``t50`` is the value
    ramp inflection in months.
    """

    waves: tuple[WaveParams, ...]
    t50: float
    t50_base: float = 18.0
    ramp_steepness: float = 0.18

    def __post_init__(self) -> None:
        _validate_waves(self.waves, require_unit_sum=False)
        if self.t50 <= 0 or self.t50_base <= 0:
            raise TrajectoryError("ramp midpoints must be positive")
        if self.ramp_steepness <= 0:
            raise TrajectoryError("ramp steepness must be positive")

    @property
    def total_ceiling(self) -> float:
        return sum(w.ceiling for w in self.waves)

    @property
    def delay_factor(self) -> float:
        return self.t50 / self.t50_base


BASE_CURVE = FirmCurve(waves=DEFAULT_WAVES, t50=18.0)


def _logistic(ceiling: float, steepness: float, midpoint: float, t: float) -> float:
    # exp is clamped through the argument to avoid overflow far out on the tails
    z = -steepness * (t - midpoint)
    if z > 700.0:
        return 0.0
    if z < -700.0:
        return ceiling
    return ceiling / (1.0 + math.exp(z))


def aitg_at(t: float, curve: FirmCurve = BASE_CURVE) -> float:
    """Transformation score at month ``t``: sum of the three wave logistics."""
    if not math.isfinite(t):
        raise TrajectoryError("time must be finite")
    return sum(_logistic(w.ceiling, w.steepness, w.midpoint, t) for w in curve.waves)


def _aitg_slope(t: float, curve: FirmCurve) -> float:
    total = 0.0
    for w in curve.waves:
        a = _logistic(w.ceiling, w.steepness, w.midpoint, t)
        total += w.steepness * a * (1.0 - a / w.ceiling)
    return total


def _closed_form_start(score: float, curve: FirmCurve) -> float | None:
    """Single-wave closed-form inverse used to seed the root search.

    Branch 1 treats the score as wave-1 only; branch 2 as wave-2 on top of
    a saturated wave 1. Both are guarded so the log argument is strictly
    positive; outside their validity windows the caller starts at t=60.
    """
    w1, w2, _ = curve.waves
    if score < w1.ceiling - BRANCH_EPS:
        return w1.midpoint - math.log(w1.ceiling / score - 1.0) / w1.steepness
    lo = w1.ceiling + BRANCH_EPS
    hi = w1.ceiling + w2.ceiling - BRANCH_EPS
    if lo < score < hi:
        return w2.midpoint - math.log(w2.ceiling / (score - w1.ceiling) - 1.0) / w2.steepness
    return None


def invert(score: float, curve: FirmCurve = BASE_CURVE, tol: float = 1e-6) -> float:
    """Implied curve position (months) for an observed score.

    Strict monotonicity of the cascade guarantees a unique root. The
    wave-appropriate closed form (when valid) only seeds the search; the
    full-cascade Newton iteration with a bisection fallback produces the
    returned value, so closed-form tail error never leaks through. The
    result satisfies |aitg_at(t) - score| <= tol.
    """
    if not (0.0 < score < 10.0):
        raise TrajectoryError(f"score {score} outside the invertible range (0, 10)")
    if score >= curve.total_ceiling:
        raise TrajectoryError(
            f"score {score} at or above the curve ceiling {curve.total_ceiling}"
        )

    lo, hi = BRACKET
    f_lo = aitg_at(lo, curve) - score
    f_hi = aitg_at(hi, curve) - score
    if f_lo >= 0.0 or f_hi <= 0.0:
        raise TrajectoryError("score not bracketed; curve parameters out of supported range")

    start = _closed_form_start(score, curve)
    t = start if start is not None and lo < start < hi else 60.0

    f = aitg_at(t, curve) - score
    for _ in range(NEWTON_MAX_ITER):
        if abs(f) <= tol * 1e-3:
            return t
        # keep the bracket current
        if f > 0.0:
            hi = t
        else:
            lo = t
        slope = _aitg_slope(t, curve)
        if slope > 0.0:
            t_next = t - f / slope
        else:
            t_next = (lo + hi) / 2.0
        if not (lo < t_next < hi):
            t_next = (lo + hi) / 2.0
        t = t_next
        f = aitg_at(t, curve) - score

    # Bisection fallback: the bracket is maintained, so this always lands.
    while abs(f) > tol * 1e-3 and hi - lo > 1e-13:
        if f > 0.0:
            hi = t
        else:
            lo = t
        t = (lo + hi) / 2.0
        f = aitg_at(t, curve) - score
    if abs(f) > tol:
        raise TrajectoryError(f"inverse failed to converge at score {score}")
    return t


def adjust_steepness(k_base: float, factors: IfsTrajectoryFactors) -> float:
    """Wave steepness under readiness drag.

    k * (0.55 + 0.45*occ) * (0.50 + 0.50*dr); both multipliers are bounded
    strictly above zero on the declared factor range.
    """
    if k_base <= 0:
        raise TrajectoryError("base steepness must be positive")
    return k_base * (0.55 + 0.45 * factors.occ) * (0.50 + 0.50 * factors.dr)


def adjust_t50(t50_base: float, factors: IfsTrajectoryFactors) -> float:
    """Value ramp midpoint under readiness drag.

    t50 / (occ^0.40 * dr^0.60), with both factors floored at 0.10 before
    exponentiation so degenerate inputs stay finite.
    """
    if t50_base <= 0:
        raise TrajectoryError("base ramp midpoint must be positive")
    occ = max(factors.occ, DELTA_MIN)
    dr = max(factors.dr, DELTA_MIN)
    return t50_base / (occ**0.40 * dr**0.60)


def shift_wave_midpoints(waves: Sequence[WaveParams], delay_factor: float) -> tuple[WaveParams, ...]:
    """Apply the ramp delay factor to every wave midpoint."""
    if delay_factor <= 0:
        raise TrajectoryError("delay factor must be positive")
    return tuple(replace(w, midpoint=w.midpoint * delay_factor) for w in waves)


def afc_firm_adjust(
    waves: Sequence[WaveParams],
    afc: float,
    ceiling_exponents: Sequence[float] = (0.25, 0.50, 1.00),
    onset_exponents: Sequence[float] = (0.10, 0.20, 0.30),
) -> tuple[WaveParams, ...]:
    """Frontier adjustment of wave ceilings and onsets.

    ceiling_w *= afc^phi_w and midpoint_w /= afc^mu_w. The ceiling
    exponents must be strictly increasing across waves (later waves are
    the more frontier-sensitive) and onset exponents positive.
    """
    if afc <= 0:
        raise TrajectoryError("frontier multiplier must be positive")
    phi = tuple(ceiling_exponents)
    mu = tuple(onset_exponents)
    if len(phi) != 3 or len(mu) != 3:
        raise TrajectoryError("three exponents per wave expected")
    if not (phi[0] < phi[1] < phi[2]):
        raise TrajectoryError("ceiling exponents must be strictly increasing")
    if any(m <= 0 for m in mu):
        raise TrajectoryError("onset exponents must be positive")
    return tuple(
        WaveParams(w.ceiling * afc ** phi[i], w.steepness, w.midpoint / afc ** mu[i])
        for i, w in enumerate(waves)
    )


def variable_t50_base(aitg_raw: float) -> float:
    """Score-dependent ramp midpoint base: a linear map from 18 to 60 months.

    Firms further along the adoption curve face longer value realization
    horizons as they pursue later-wave capabilities.
    """
    if not (0.0 <= aitg_raw <= 10.0):
        raise TrajectoryError(f"score {aitg_raw} outside [0, 10]")
    return 18.0 + (aitg_raw / 10.0) * 42.0


def build_firm_curve(
    factors: IfsTrajectoryFactors,
    afc: float = 1.0,
    base_waves: Sequence[WaveParams] = DEFAULT_WAVES,
    t50_base: float = 18.0,
    ramp_steepness: float = 0.18,
    ceiling_exponents: Sequence[float] = (0.25, 0.50, 1.00),
    onset_exponents: Sequence[float] = (0.10, 0.20, 0.30),
) -> FirmCurve:
    """Assemble the effective firm curve from base waves and adjustments.

    Readiness factors reshape steepness and delay midpoints; the frontier
    multiplier then scales ceilings and accelerates onsets. ``t50_base``
    is either the constant 18-month default or the score-dependent value
    from :func:`variable_t50_base`, per run configuration.
    """
    _validate_waves(tuple(base_waves))
    t50 = adjust_t50(t50_base, factors)
    delay = t50 / t50_base
    waves = tuple(
        replace(w, steepness=adjust_steepness(w.steepness, factors)) for w in base_waves
    )
    waves = shift_wave_midpoints(waves, delay)
    waves = afc_firm_adjust(waves, afc, ceiling_exponents, onset_exponents)
    return FirmCurve(waves=waves, t50=t50, t50_base=t50_base, ramp_steepness=ramp_steepness)
