"""Industry ceiling construction.

Builds the per-industry susceptibility ceiling from six observable
dimensions: sub-dimension indicators (cognitive task density, routine task
intensity, task entropy), winsorized min-max normalization onto the 0-10
scale, weighted geometric aggregation, and the regulatory hard floor that
multiplies the geometric composite from outside the product.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

__all__ = [
    "DIMENSIONS",
    "DEFAULT_WEIGHTS",
    "DimensionWeights",
    "IndustryCalibration",
    "RawIndicatorPanel",
    "CalibrationError",
    "normalize_minmax",
    "compute_ctd",
    "compute_rti",
    "compute_task_entropy",
    "compute_psi",
    "compute_psi_multifloor",
    "compute_iass",
]

#: Industry dimension keys, in canonical order.
DIMENSIONS = ("ctd", "drsa", "pri", "rff", "cadr", "clsr")

#: Default dimension weights (cognitive density, data richness, process
#: repeatability, regulatory friction, diffusion rate, capital-labor
#: substitutability).
DEFAULT_WEIGHTS = {
    "ctd": 0.25,
    "drsa": 0.20,
    "pri": 0.20,
    "rff": 0.15,
    "cadr": 0.10,
    "clsr": 0.10,
}

_WEIGHT_SUM_TOL = 1e-9


class CalibrationError(ValueError):
    """Raised when calibration inputs violate a declared invariant."""


@dataclass(frozen=True)
class DimensionWeights:
    """Normalized weights over the six industry dimensions.

    Each weight must be strictly positive and the six must sum to 1
    within 1e-9.
    """

    weights: Mapping[str, float] = field(default_factory=lambda: dict(DEFAULT_WEIGHTS))

    def __post_init__(self) -> None:
        missing = [d for d in DIMENSIONS if d not in self.weights]
        if missing:
            raise CalibrationError(f"missing dimension weights: {missing}")
        if any(self.weights[d] <= 0 for d in DIMENSIONS):
            raise CalibrationError("dimension weights must be strictly positive")
        total = sum(self.weights[d] for d in DIMENSIONS)
        if abs(total - 1.0) > _WEIGHT_SUM_TOL:
            raise CalibrationError(f"dimension weights must sum to 1, got {total!r}")

    def as_tuple(self) -> tuple[float, ...]:
        return tuple(self.weights[d] for d in DIMENSIONS)


@dataclass(frozen=True)
class IndustryCalibration:
    """One calibrated industry: six dimension scores plus ceiling parameters.

    ``iass_base`` is derived from the scores, weights, and floor at
    construction time; the stored value is validated to match the
    recomputation within 1e-6.
    """

    industry_id: str
    name: str
    naics: str
    scores: Mapping[str, float]
    psi: float
    theta: float
    s_star_b: float
    exit_multiple: float
    iass_base: float = 0.0
    weights: DimensionWeights = field(default_factory=DimensionWeights)

    THETA_BOUNDS = (0.05, 1.50)

    def __post_init__(self) -> None:
        for d in DIMENSIONS:
            if d not in self.scores:
                raise CalibrationError(f"{self.industry_id}: missing dimension {d!r}")
            s = self.scores[d]
            if not (0.0 <= s <= 10.0):
                raise CalibrationError(f"{self.industry_id}: score {d}={s} outside [0, 10]")
            if s < 0.1:
                # Scores of exactly 0 would leave the log domain downstream.
                raise CalibrationError(f"{self.industry_id}: score {d}={s} below entry minimum 0.1")
        if not (0.0 < self.psi <= 1.0):
            raise CalibrationError(f"{self.industry_id}: psi={self.psi} outside (0, 1]")
        lo, hi = self.THETA_BOUNDS
        if not (lo <= self.theta <= hi):
            raise CalibrationError(f"{self.industry_id}: theta={self.theta} outside [{lo}, {hi}]")
        if self.s_star_b <= 0:
            raise CalibrationError(f"{self.industry_id}: critical scale must be positive")
        if self.exit_multiple <= 0:
            raise CalibrationError(f"{self.industry_id}: exit multiple must be positive")
        recomputed = compute_iass(self.scores, self.weights, self.psi)
        if self.iass_base == 0.0:
            object.__setattr__(self, "iass_base", recomputed)
        elif abs(self.iass_base - recomputed) > 1e-6:
            raise CalibrationError(
                f"{self.industry_id}: stored iass_base {self.iass_base} does not match "
                f"recomputed {recomputed}"
            )

    @property
    def cadr(self) -> float:
        return self.scores["cadr"]


@dataclass(frozen=True)
class RawIndicatorPanel:
    """Raw per-industry indicator values for one dimension.

    Values are in arbitrary source units. When ``winsorize`` is set the
    panel is clipped at the 5th/95th percentile before normalization.
    """

    values: Sequence[float]
    winsorize: bool = False
    lower_pct: float = 5.0
    upper_pct: float = 95.0

    def __post_init__(self) -> None:
        if len(self.values) < 2:
            raise CalibrationError("indicator panel needs at least 2 industries")
        if not all(math.isfinite(v) for v in self.values):
            raise CalibrationError("indicator panel contains non-finite values")
        if not (0.0 <= self.lower_pct < self.upper_pct <= 100.0):
            raise CalibrationError("winsorization percentiles out of order")


def _nearest_rank(sorted_values: Sequence[float], pct: float) -> float:
    """Nearest-rank percentile on an ascending-sorted sequence."""
    n = len(sorted_values)
    rank = max(1, math.ceil(pct / 100.0 * n))
    return sorted_values[min(rank, n) - 1]


def winsorize_values(values: Sequence[float], lower_pct: float = 5.0, upper_pct: float = 95.0) -> list[float]:
    """Clip values to the nearest-rank lower/upper percentile bounds."""
    ordered = sorted(values)
    lo = _nearest_rank(ordered, lower_pct)
    hi = _nearest_rank(ordered, upper_pct)
    return [min(max(v, lo), hi) for v in values]


def normalize_minmax(panel: RawIndicatorPanel) -> list[float]:
    """Min-max normalize a raw panel onto [0, 10].

    The panel minimum maps to 0 and the maximum to 10; ordering is
    preserved and outputs are clipped to [0, 10]. With winsorization the
    5th/95th percentile clip is applied first, so the bounds come from the
    winsorized values.

    Raises:
        CalibrationError: if the panel is degenerate (zero range after
            winsorization). A fabricated mid-scale score would silently
            corrupt every downstream ceiling.
    """
    values = list(panel.values)
    if panel.winsorize:
        values = winsorize_values(values, panel.lower_pct, panel.upper_pct)
    lo, hi = min(values), max(values)
    if hi - lo <= 0.0:
        raise CalibrationError("degenerate panel: all values equal after winsorization")
    span = hi - lo
    return [min(10.0, max(0.0, (v - lo) / span * 10.0)) for v in values]


def compute_ctd(occupations: Sequence[Mapping[str, float]]) -> float:
    """Employment-weighted mean automatable task share.

    Each occupation record carries ``employment`` (count, >= 0) and
    ``automatable_share`` (fraction in [0, 1]).
    """
    total = 0.0
    weighted = 0.0
    for occ in occupations:
        e = occ["employment"]
        a = occ["automatable_share"]
        if e < 0:
            raise CalibrationError("employment must be nonnegative")
        if not (0.0 <= a <= 1.0):
            raise CalibrationError(f"automatable share {a} outside [0, 1]")
        total += e
        weighted += e * a
    if total <= 0:
        raise CalibrationError("total employment is zero")
    return weighted / total


def compute_rti(measures: Mapping[str, float]) -> float:
    """Routine task intensity from the five task-content components.

    Abstract content is the half-sum of direction/control/planning and
    quantitative reasoning; routine content is the half-sum of tolerance
    standards and finger dexterity; manual content is eye-hand-foot
    coordination. Returns ln(routine) - ln(abstract) - ln(manual).
    """
    required = ("dcp", "ged_math", "sts", "fingdex", "eyehand")
    for key in required:
        if key not in measures:
            raise CalibrationError(f"missing task measure {key!r}")
        if measures[key] <= 0:
            raise CalibrationError(f"task measure {key}={measures[key]} must be positive")
    t_abstract = 0.5 * (measures["dcp"] + measures["ged_math"])
    t_routine = 0.5 * (measures["sts"] + measures["fingdex"])
    t_manual = measures["eyehand"]
    return math.log(t_routine) - math.log(t_abstract) - math.log(t_manual)


def compute_task_entropy(freqs: Sequence[float]) -> float:
    """Shannon entropy (nats) of task phrase frequencies.

    Frequencies must be nonnegative and sum to 1 within 1e-9; zero
    frequencies contribute 0 by the usual limit convention.
    """
    if any(f < 0 for f in freqs):
        raise CalibrationError("frequencies must be nonnegative")
    total = sum(freqs)
    if abs(total - 1.0) > 1e-9:
        raise CalibrationError(f"frequencies must sum to 1, got {total!r}")
    return -sum(f * math.log(f) for f in freqs if f > 0.0)


def compute_psi(rff_score: float) -> float:
    """Regulatory hard-floor multiplier from the single friction score.

    min(1, (rff/5)^1.5): unity at or above the mid-scale threshold,
    decaying below it.
    """
    if not (0.0 <= rff_score <= 10.0):
        raise CalibrationError(f"rff score {rff_score} outside [0, 10]")
    return min(1.0, (rff_score / 5.0) ** 1.5)


def compute_psi_multifloor(floor_coefficients: Sequence[float]) -> float:
    """Regulatory floor as a product of per-prohibition coefficients.

    Each coefficient lies in (0, 1]; an empty sequence means no binding
    prohibition and yields 1.
    """
    psi = 1.0
    for c in floor_coefficients:
        if not (0.0 < c <= 1.0):
            raise CalibrationError(f"floor coefficient {c} outside (0, 1]")
        psi *= c
    return min(1.0, psi)


def compute_iass(
    scores: Mapping[str, float],
    weights: DimensionWeights | None = None,
    psi: float = 1.0,
) -> float:
    """Floored weighted geometric mean of the six dimension scores.

    psi * exp(sum_d w_d ln s_d). Geometric aggregation makes low scores
    non-compensable; the floor multiplies from outside the product so a
    binding prohibition caps the ceiling regardless of other dimensions.

    Raises:
        CalibrationError: on any nonpositive score (log domain).
    """
    w = weights or DimensionWeights()
    if not (0.0 < psi <= 1.0):
        raise CalibrationError(f"psi={psi} outside (0, 1]")
    acc = 0.0
    for d in DIMENSIONS:
        s = scores[d]
        if s <= 0:
            raise CalibrationError(f"score {d}={s} outside the log domain")
        acc += w.weights[d] * math.log(s)
    return psi * math.exp(acc)
