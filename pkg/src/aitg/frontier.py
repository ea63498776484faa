"""Capability-frontier tracking and ceiling adjustment.

Maintains the capability index (weighted benchmark composite with EWMA
smoothing and rotation governance) and converts its movements into
industry-specific ceiling multipliers, scenario uncertainty, and
sensitivity-parameter updates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

__all__ = [
    "FrontierError",
    "CapabilityBasket",
    "CapabilitySeries",
    "AfcConfig",
    "ThetaState",
    "ScenarioSet",
    "capability_index",
    "ewma_smooth",
    "compute_afc",
    "adjusted_ceiling",
    "update_theta",
    "compute_atd",
    "scenario_uq",
    "rotation_check",
    "chain_link",
]

_WEIGHT_SUM_TOL = 1e-9

#: Benchmark domain weights for the capability composite.
DEFAULT_DOMAIN_WEIGHTS = {
    "language": 0.20,
    "math": 0.15,
    "code": 0.15,
    "multimodal": 0.10,
    "agentic": 0.15,
    "domain_specific": 0.15,
    "long_context": 0.10,
}


class FrontierError(ValueError):
    """Raised on invalid frontier inputs."""


@dataclass(frozen=True)
class CapabilityBasket:
    """Per-domain benchmark scores and the weights combining them."""

    scores: Mapping[str, float]
    weights: Mapping[str, float] = field(default_factory=lambda: dict(DEFAULT_DOMAIN_WEIGHTS))

    def __post_init__(self) -> None:
        if set(self.scores) != set(self.weights):
            raise FrontierError("basket scores and weights must cover the same domains")
        if any(w <= 0 for w in self.weights.values()):
            raise FrontierError("domain weights must be positive")
        total = sum(self.weights.values())
        if abs(total - 1.0) > _WEIGHT_SUM_TOL:
            raise FrontierError(f"domain weights must sum to 1, got {total!r}")
        for k, b in self.scores.items():
            if not (0.0 <= b <= 1.0):
                raise FrontierError(f"benchmark score {k}={b} outside [0, 1]")


@dataclass(frozen=True)
class CapabilitySeries:
    """Ordered quarterly raw composites with EWMA smoothing state."""

    raw: Sequence[float]
    smoothing: float = 0.5

    def __post_init__(self) -> None:
        if not self.raw:
            raise FrontierError("capability series is empty")
        if not (0.0 < self.smoothing <= 1.0):
            raise FrontierError(f"smoothing {self.smoothing} outside (0, 1]")


@dataclass(frozen=True)
class AfcConfig:
    """Baseline and cap for the frontier multiplier."""

    c_0: float = 1.0
    alpha_max: float = 1.35

    def __post_init__(self) -> None:
        if self.c_0 <= 0:
            raise FrontierError("baseline capability must be positive")
        if self.alpha_max < 1.0:
            raise FrontierError("alpha_max must be at least 1")


@dataclass(frozen=True)
class ThetaState:
    """Per-industry frontier sensitivity with its update hyperparameters."""

    theta: float
    learning_rate: float = 0.30
    stall_threshold: float = 0.005
    bounds: tuple[float, float] = (0.05, 1.50)

    def __post_init__(self) -> None:
        lo, hi = self.bounds
        if not (lo <= self.theta <= hi):
            raise FrontierError(f"theta={self.theta} outside [{lo}, {hi}]")


@dataclass(frozen=True)
class ScenarioSet:
    """Conservative / base / aggressive frontier multipliers with weights."""

    conservative: float
    base: float
    aggressive: float
    weights: tuple[float, float, float] = (0.20, 0.60, 0.20)

    def __post_init__(self) -> None:
        if not (self.conservative <= self.base <= self.aggressive):
            raise FrontierError("scenarios must be ordered conservative <= base <= aggressive")
        if abs(sum(self.weights) - 1.0) > _WEIGHT_SUM_TOL:
            raise FrontierError("scenario weights must sum to 1")


def capability_index(basket: CapabilityBasket) -> float:
    """Weighted composite of normalized benchmark scores."""
    return sum(basket.weights[k] * basket.scores[k] for k in basket.scores)


def ewma_smooth(series: CapabilitySeries) -> list[float]:
    """Exponentially weighted smoothing of the raw composite series.

    The first smoothed value equals the first raw value; thereafter
    s_t = lam * r_t + (1 - lam) * s_{t-1}. A unit spike decays to
    lam*(1-lam)^3 weight after three subsequent quarters.
    """
    lam = series.smoothing
    out = [float(series.raw[0])]
    for r in series.raw[1:]:
        out.append(lam * r + (1.0 - lam) * out[-1])
    return out


def compute_afc(theta: float, c_t: float, config: AfcConfig | None = None) -> float:
    """Frontier coefficient: min(1 + theta*(C_t - C_0), alpha_max).

    Values below 1 are permitted when the capability index regresses
    below its baseline; the cap binds only on the upside.
    """
    cfg = config or AfcConfig()
    if c_t <= 0:
        raise FrontierError("capability index must be positive")
    if theta < 0:
        raise FrontierError("theta must be nonnegative")
    return min(1.0 + theta * (c_t - cfg.c_0), cfg.alpha_max)


def adjusted_ceiling(iass_base: float, afc: float) -> float:
    """Effective industry ceiling: base ceiling times the frontier multiplier."""
    if iass_base <= 0 or afc <= 0:
        raise FrontierError("ceiling inputs must be positive")
    return iass_base * afc


def update_theta(state: ThetaState, delta_atd: float, delta_c: float) -> ThetaState:
    """One sensitivity update step.

    No update when the capability increment is below the stall threshold;
    otherwise theta moves by learning_rate * (delta_atd / delta_c) and is
    clamped into bounds.
    """
    if delta_c < state.stall_threshold:
        return state
    lo, hi = state.bounds
    proposed = state.theta + state.learning_rate * (delta_atd / delta_c)
    clamped = min(hi, max(lo, proposed))
    return ThetaState(clamped, state.learning_rate, state.stall_threshold, state.bounds)


def compute_atd(tasks: Sequence[Mapping[str, object]]) -> float:
    """Importance-weighted share of tasks flagged automatable.

    Each record carries ``weight`` (nonnegative) and ``automatable``
    (truthy flag).
    """
    total = 0.0
    flagged = 0.0
    for task in tasks:
        w = float(task["weight"])  # type: ignore[arg-type]
        if w < 0:
            raise FrontierError("task weights must be nonnegative")
        total += w
        if task["automatable"]:
            flagged += w
    if total <= 0:
        raise FrontierError("total task weight is zero")
    return flagged / total


def scenario_uq(scenarios: ScenarioSet) -> float:
    """90% confidence half-width from the scenario spread.

    (aggressive - conservative) / 4, treating the three scenarios as a
    roughly normal distribution.
    """
    return (scenarios.aggressive - scenarios.conservative) / 4.0


def rotation_check(panel: Mapping[str, Sequence[float]], threshold: float = 0.90) -> set[str]:
    """Flag benchmarks whose mean top-model solve rate strictly exceeds the trigger.

    ``panel`` maps benchmark name to the top-5 model solve rates in [0, 1].
    Flagged benchmarks are due for deprecation from the basket at the next
    rotation cycle.
    """
    if not panel:
        raise FrontierError("empty benchmark panel")
    flagged = set()
    for name, rates in panel.items():
        if not rates:
            raise FrontierError(f"benchmark {name!r} has no model scores")
        if any(not (0.0 <= r <= 1.0) for r in rates):
            raise FrontierError(f"benchmark {name!r} has solve rates outside [0, 1]")
        if sum(rates) / len(rates) > threshold:
            flagged.add(name)
    return flagged


def chain_link(
    pre_series: Sequence[float],
    post_series: Sequence[float],
    overlap: int,
) -> list[float]:
    """Scale a post-rotation series so it is continuous at the transition knot.

    The post series is multiplied by the ratio of overlap-window means
    (pre over post), the same ratio-linking used for chained price indexes.
    """
    if overlap <= 0 or overlap > len(pre_series) or overlap > len(post_series):
        raise FrontierError("overlap window must be nonempty in both series")
    pre_mean = sum(pre_series[-overlap:]) / overlap
    post_mean = sum(post_series[:overlap]) / overlap
    if post_mean == 0:
        raise FrontierError("post-series overlap mean is zero; chain ratio undefined")
    scale = pre_mean / post_mean
    return [scale * v for v in post_series]
