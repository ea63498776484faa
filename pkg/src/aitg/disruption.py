"""Disruption risk scoring.

Moat composite, the disruption risk index (gap x diffusion x exposed
surface x urgency, normalized to a 0-10 scale), its reading as an
annualized hazard intensity, cumulative displacement probability under
the constant-rate approximation, and grid classification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

__all__ = [
    "DisruptionError",
    "MoatFactors",
    "AdriConfig",
    "urgency_delta",
    "moat",
    "adri",
    "hazard",
    "cumulative_displacement",
    "classify",
]


class DisruptionError(ValueError):
    """Raised on invalid disruption-risk inputs."""


@dataclass(frozen=True)
class MoatFactors:
    """Structural defensibility: switching costs, network effects, regulatory
    barriers, proprietary data; each scored as a fraction of full protection."""

    switching_costs: float
    network_effects: float
    regulatory_barriers: float
    proprietary_data: float
    weights: tuple[float, float, float, float] | None = None

    def __post_init__(self) -> None:
        for name in ("switching_costs", "network_effects", "regulatory_barriers", "proprietary_data"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0):
                raise DisruptionError(f"moat factor {name}={v} outside [0, 1]")
        if self.weights is not None:
            if any(w < 0 for w in self.weights):
                raise DisruptionError("moat weights must be nonnegative")
            if abs(sum(self.weights) - 1.0) > 1e-9:
                raise DisruptionError("moat weights must sum to 1")

    def factors(self) -> tuple[float, float, float, float]:
        return (
            self.switching_costs,
            self.network_effects,
            self.regulatory_barriers,
            self.proprietary_data,
        )


@dataclass(frozen=True)
class AdriConfig:
    """Normalization constant onto [0, 10] and the hazard scale.

    The default normalization maps the maximal composite (gap at the
    capped ceiling of 13.5, diffusion 10, no moat, urgency 1.5) to exactly
    10. The hazard scale of 100 makes the index read directly as percent
    per year.
    """

    normalization: float = 20.25
    hazard_scale: float = 100.0

    def __post_init__(self) -> None:
        if self.normalization <= 0 or self.hazard_scale <= 0:
            raise DisruptionError("normalization constants must be positive")


def urgency_delta(c_t: float, c_0: float = 1.0) -> float:
    """Time-indexed urgency multiplier in [1.0, 1.5].

    1 + 0.5 * min(c_t/c_0 - 1, 1), clamped at 1 below the baseline:
    frontier advances accelerate competitive erosion, regressions do not
    decelerate it.
    """
    if c_0 <= 0:
        raise DisruptionError("baseline capability must be positive")
    return max(1.0, 1.0 + 0.5 * min(c_t / c_0 - 1.0, 1.0))


def moat(factors: MoatFactors) -> float:
    """Weighted mean of the four defensibility factors (equal weights default)."""
    vals = factors.factors()
    weights = factors.weights or (0.25, 0.25, 0.25, 0.25)
    return sum(w * v for w, v in zip(weights, vals))


def adri(
    g_eff: float,
    cadr: float,
    moat_f: float,
    delta_t: float,
    config: AdriConfig | None = None,
) -> float:
    """Disruption risk index, clipped to [0, 10].

    gap x diffusion x (1 - moat) x urgency, over the normalization
    constant. Zero gap or a full moat both zero the index.
    """
    cfg = config or AdriConfig()
    if g_eff < 0:
        raise DisruptionError("effective gap must be nonnegative")
    if not (0.0 <= cadr <= 10.0):
        raise DisruptionError(f"diffusion rate {cadr} outside [0, 10]")
    if not (0.0 <= moat_f <= 1.0):
        raise DisruptionError(f"moat {moat_f} outside [0, 1]")
    if delta_t < 1.0:
        raise DisruptionError("urgency multiplier below 1")
    raw = g_eff * cadr * (1.0 - moat_f) * delta_t / cfg.normalization
    return min(10.0, max(0.0, raw))


def hazard(adri_score: float, config: AdriConfig | None = None) -> float:
    """Instantaneous displacement hazard, events per year.

    index / 100 with the default scale: an index of 5 reads as a 5%
    annualized marginal displacement probability.
    """
    cfg = config or AdriConfig()
    if not (0.0 <= adri_score <= 10.0):
        raise DisruptionError(f"index {adri_score} outside [0, 10]")
    return adri_score / cfg.hazard_scale


def cumulative_displacement(
    adri_score: float,
    horizon_months: float,
    config: AdriConfig | None = None,
) -> float:
    """Probability of a displacement event within the horizon.

    1 - exp(-lambda * T) with constant hazard from :func:`hazard`;
    bounded in [0, 1).
    """
    if horizon_months < 0:
        raise DisruptionError("horizon must be nonnegative")
    lam = hazard(adri_score, config)
    return 1.0 - math.exp(-lam * horizon_months / 12.0)


#: Grid thresholds: below 2.5 low, below 5.0 moderate, below 7.0 high, else critical.
_GRID = ((2.5, "Low"), (5.0, "Moderate"), (7.0, "High"))


def classify(adri_score: float) -> str:
    """Interpretation-grid level for an index value."""
    if not (0.0 <= adri_score <= 10.0):
        raise DisruptionError(f"index {adri_score} outside [0, 10]")
    for bound, label in _GRID:
        if adri_score < bound:
            return label
    return "Critical"
