"""Uncertainty machinery.

Seeded Monte Carlo value-creation distributions, first-order Sobol
indices via pick-and-freeze, weight-perturbation rank stability for the
industry ceilings, Spearman rank correlation, and action-signal
classification.

Determinism contract: every stochastic operation is a pure function of
(inputs, master seed). Draw ``j`` is generated from a substream keyed
only by (seed, j), so results are independent of worker count or
evaluation order, and percentiles are computed from the sorted draw
vector.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from .calibration import DIMENSIONS, DimensionWeights, IndustryCalibration

__all__ = [
    "SensitivityError",
    "DistributionSpec",
    "McConfig",
    "McSummary",
    "RankPanel",
    "RankStabilityResult",
    "SobolResult",
    "MC_INPUTS",
    "sample_input",
    "mc_delta_ev",
    "sobol_first_order",
    "weight_perturbation_rank_stability",
    "spearman",
    "action_signal",
]

#: Canonical sampling order for the five named pipeline inputs.
MC_INPUTS = ("capture_rate", "exit_multiple", "gap", "ifs_residual", "impl_cost")

_KINDS = ("uniform-multiplier", "uniform-additive", "normal-additive", "lognormal-multiplier")


class SensitivityError(ValueError):
    """Raised on invalid sensitivity-analysis inputs."""


@dataclass(frozen=True)
class DistributionSpec:
    """Perturbation law for one pipeline input.

    ``scale`` is in the input's own units: the half-range for uniform
    kinds, the standard deviation for normal-additive, and the log-sigma
    for lognormal-multiplier. Optional clip bounds apply after sampling.
    """

    kind: str
    scale: float
    floor: float | None = None
    ceiling: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise SensitivityError(f"unknown distribution kind {self.kind!r}")
        if self.scale < 0:
            raise SensitivityError("distribution scale must be nonnegative")
        if self.floor is not None and self.ceiling is not None and self.floor > self.ceiling:
            raise SensitivityError("floor exceeds ceiling")


@dataclass(frozen=True)
class McConfig:
    """Draw count, master seed, and reported percentiles."""

    draws: int = 10_000
    seed: int = 0
    percentiles: tuple[float, ...] = (10.0, 50.0, 90.0)

    def __post_init__(self) -> None:
        if self.draws < 1:
            raise SensitivityError("draw count must be at least 1")
        if any(not (0.0 <= p <= 100.0) for p in self.percentiles):
            raise SensitivityError("percentiles outside [0, 100]")


@dataclass(frozen=True)
class McSummary:
    draws: int
    seed: int
    percentiles: Mapping[float, float]
    mean: float
    draw_digest: str

    def ratio(self, hi: float = 90.0, lo: float = 10.0) -> float:
        return self.percentiles[hi] / self.percentiles[lo]


@dataclass(frozen=True)
class RankPanel:
    """Items under rank-stability analysis with the perturbation half-width."""

    item_ids: tuple[str, ...]
    half_width: float = 0.05

    def __post_init__(self) -> None:
        if len(self.item_ids) < 2:
            raise SensitivityError("rank panel needs at least 2 items")
        if len(set(self.item_ids)) != len(self.item_ids):
            raise SensitivityError("rank panel ids must be unique")
        if self.half_width < 0:
            raise SensitivityError("half-width must be nonnegative")


@dataclass(frozen=True)
class RankStabilityResult:
    item_ids: tuple[str, ...]
    baseline_ranks: Mapping[str, int]
    mean_rank_shift: float
    swap_frequency: Mapping[tuple[str, str], float]
    total_swaps: int


@dataclass(frozen=True)
class SobolResult:
    first_order: Mapping[str, float]
    output_variance: float
    draws: int


def _rng_for_draw(seed: int, draw_index: int) -> np.random.Generator:
    # Substream keyed only by (seed, draw index): worker-count independent.
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(draw_index,))))


def sample_input(spec: DistributionSpec, base: float, rng: np.random.Generator) -> float:
    """Draw one perturbed value for an input with the given base value."""
    if spec.kind == "uniform-multiplier":
        value = base * rng.uniform(1.0 - spec.scale, 1.0 + spec.scale)
    elif spec.kind == "uniform-additive":
        value = base + rng.uniform(-spec.scale, spec.scale)
    elif spec.kind == "normal-additive":
        value = base + rng.normal(0.0, spec.scale) if spec.scale > 0 else base
    else:  # lognormal-multiplier
        value = base * math.exp(rng.normal(0.0, spec.scale)) if spec.scale > 0 else base
    if spec.floor is not None:
        value = max(spec.floor, value)
    if spec.ceiling is not None:
        value = min(spec.ceiling, value)
    return value


def _validate_specs(specs: Mapping[str, DistributionSpec]) -> None:
    missing = [name for name in MC_INPUTS if name not in specs]
    if missing:
        raise SensitivityError(f"distribution specs missing inputs: {missing}")
    for name, spec in specs.items():
        if not isinstance(spec, DistributionSpec):
            raise SensitivityError(f"spec for {name!r} is not a DistributionSpec")


def _sample_draw(
    specs: Mapping[str, DistributionSpec],
    bases: Mapping[str, float],
    seed: int,
    draw_index: int,
) -> dict[str, float]:
    rng = _rng_for_draw(seed, draw_index)
    # fixed canonical order so the stream layout never depends on dict order
    return {name: sample_input(specs[name], bases[name], rng) for name in MC_INPUTS}


def mc_delta_ev(
    evaluate: Callable[[Mapping[str, float]], float],
    specs: Mapping[str, DistributionSpec],
    bases: Mapping[str, float],
    config: McConfig,
    draw_indices: Sequence[int] | None = None,
) -> McSummary:
    """Monte Carlo distribution of value creation under joint input uncertainty.

    ``evaluate`` maps the five perturbed inputs to a value-creation figure;
    it is invoked once per draw. ``draw_indices`` lets a caller evaluate an
    arbitrary subset/order of draws (worker partitioning); results are
    keyed by index, so any partition reassembles to the identical summary.
    """
    _validate_specs(specs)
    for name in MC_INPUTS:
        if name not in bases:
            raise SensitivityError(f"missing base value for input {name!r}")
    indices = range(config.draws) if draw_indices is None else draw_indices
    values = np.empty(config.draws, dtype=np.float64)
    seen = np.zeros(config.draws, dtype=bool)
    for j in indices:
        if not (0 <= j < config.draws):
            raise SensitivityError(f"draw index {j} outside 0..{config.draws - 1}")
        values[j] = evaluate(_sample_draw(specs, bases, config.seed, j))
        seen[j] = True
    if not seen.all():
        raise SensitivityError("draw partition did not cover every index")
    pcts = {p: float(np.percentile(values, p)) for p in config.percentiles}
    digest = hashlib.sha256(values.tobytes()).hexdigest()
    return McSummary(
        draws=config.draws,
        seed=config.seed,
        percentiles=pcts,
        mean=float(values.mean()),
        draw_digest=digest,
    )


def sobol_first_order(
    evaluate: Callable[[Mapping[str, float]], float],
    specs: Mapping[str, DistributionSpec],
    bases: Mapping[str, float],
    config: McConfig,
    input_names: Sequence[str] | None = None,
) -> SobolResult:
    """First-order Sobol indices by the pick-and-freeze scheme.

    Two independent sample matrices A and B are drawn from the input
    distributions; for each input i the mixed matrix AB_i takes column i
    from B. S1_i is estimated as mean(f(B) * (f(AB_i) - f(A))) over the
    variance of the pooled outputs.
    """
    names = tuple(input_names) if input_names is not None else MC_INPUTS
    if len(names) < 2:
        raise SensitivityError("sobol needs at least 2 inputs")
    for name in names:
        if name not in specs or name not in bases:
            raise SensitivityError(f"missing spec or base for input {name!r}")
    n = config.draws
    rng_a = np.random.Generator(np.random.PCG64(np.random.SeedSequence(config.seed, spawn_key=(0,))))
    rng_b = np.random.Generator(np.random.PCG64(np.random.SeedSequence(config.seed, spawn_key=(1,))))

    def matrix(rng: np.random.Generator) -> list[dict[str, float]]:
        rows = []
        for _ in range(n):
            rows.append({name: sample_input(specs[name], bases[name], rng) for name in names})
        return rows

    a_rows = matrix(rng_a)
    b_rows = matrix(rng_b)
    f_a = np.array([evaluate(row) for row in a_rows])
    f_b = np.array([evaluate(row) for row in b_rows])
    pooled = np.concatenate([f_a, f_b])
    var = float(pooled.var())
    if var <= 0.0:
        raise SensitivityError("output variance is zero; indices undefined")
    mixed: dict[str, float] = {}
    for name in names:
        f_ab = np.empty(n, dtype=np.float64)
        for j in range(n):
            row = dict(a_rows[j])
            row[name] = b_rows[j][name]
            f_ab[j] = evaluate(row)
        mixed[name] = float(np.mean(f_b * (f_ab - f_a)) / var)
    return SobolResult(first_order=mixed, output_variance=var, draws=n)


def weight_perturbation_rank_stability(
    industries: Sequence[IndustryCalibration],
    panel: RankPanel,
    draws: int,
    seed: int = 0,
) -> RankStabilityResult:
    """Ceiling rank stability under random weight perturbations.

    Each draw perturbs the six dimension weights uniformly within the
    panel half-width, renormalizes onto the simplex, recomputes every
    industry ceiling, and ranks. Reported are the mean absolute shift of
    each item's mean rank from baseline, and the pairwise swap frequency.
    Exact ceiling ties are broken uniformly at random within the draw's
    substream.
    """
    by_id = {ind.industry_id: ind for ind in industries}
    missing = [i for i in panel.item_ids if i not in by_id]
    if missing:
        raise SensitivityError(f"rank panel references unknown industries: {missing}")
    subset = [by_id[i] for i in panel.item_ids]
    n = len(subset)
    base_w = np.array([DEFAULT_WEIGHT_VECTOR[d] for d in DIMENSIONS])
    ln_scores = np.array([[math.log(ind.scores[d]) for d in DIMENSIONS] for ind in subset])
    psis = np.array([ind.psi for ind in subset])

    def ranks_for(weights: np.ndarray, tiebreak: np.ndarray) -> np.ndarray:
        iass = psis * np.exp(ln_scores @ weights)
        order = np.lexsort((tiebreak, -iass))
        ranks = np.empty(n, dtype=np.int64)
        ranks[order] = np.arange(1, n + 1)
        return ranks

    base_ranks = ranks_for(base_w, np.arange(n, dtype=np.float64))
    rank_sums = np.zeros(n)
    swap_counts = np.zeros((n, n), dtype=np.int64)
    for j in range(draws):
        rng = _rng_for_draw(seed, j)
        w = base_w + rng.uniform(-panel.half_width, panel.half_width, size=len(DIMENSIONS))
        w = np.clip(w, 1e-9, None)
        w = w / w.sum()
        ranks = ranks_for(w, rng.random(n))
        rank_sums += ranks
        for a in range(n):
            for b in range(a + 1, n):
                base_order = base_ranks[a] < base_ranks[b]
                draw_order = ranks[a] < ranks[b]
                if base_order != draw_order:
                    swap_counts[a, b] += 1
    mean_ranks = rank_sums / max(draws, 1)
    mean_shift = float(np.mean(np.abs(base_ranks - mean_ranks))) if draws > 0 else 0.0
    swap_freq = {
        (panel.item_ids[a], panel.item_ids[b]): swap_counts[a, b] / draws
        for a in range(n)
        for b in range(a + 1, n)
        if draws > 0
    }
    return RankStabilityResult(
        item_ids=panel.item_ids,
        baseline_ranks={panel.item_ids[i]: int(base_ranks[i]) for i in range(n)},
        mean_rank_shift=mean_shift,
        swap_frequency=swap_freq,
        total_swaps=int(swap_counts.sum()),
    )


#: Baseline weight vector used by the rank-stability draws.
DEFAULT_WEIGHT_VECTOR = dict(DimensionWeights().weights)


def _average_ranks(values: Sequence[float]) -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64)
    order = np.argsort(arr, kind="mergesort")
    ranks = np.empty(len(arr), dtype=np.float64)
    i = 0
    while i < len(arr):
        j = i
        while j + 1 < len(arr) and arr[order[j + 1]] == arr[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2.0 + 1.0
        i = j + 1
    return ranks


def spearman(x: Sequence[float], y: Sequence[float]) -> float:
    """Spearman rank correlation with average ranks for ties."""
    if len(x) != len(y):
        raise SensitivityError("sequences must have equal length")
    if len(x) < 2:
        raise SensitivityError("need at least 2 observations")
    rx = _average_ranks(x)
    ry = _average_ranks(y)
    sx = rx.std()
    sy = ry.std()
    if sx == 0.0 or sy == 0.0:
        raise SensitivityError("constant sequence; rank correlation undefined")
    return float(np.mean((rx - rx.mean()) * (ry - ry.mean())) / (sx * sy))


#: Action-signal thresholds (currency figures in $B).
INVEST_P10 = 1.0
INVEST_VD = 5.0
MONITOR_VD = (2.5, 5.0)
NEAR_ZERO_FRACTION = 0.01


def action_signal(p10_b: float, p50_b: float, vd_p50: float) -> str:
    """Classify a value-creation distribution into an action signal.

    Precedence: Invest (P10 above $1B and median value density above 5x),
    then Monitor (positive median with density in the 2.5-5x band), then
    Diligence (P10 within 1% of the median, i.e. the downside is near
    zero), else DoNotInvest.
    """
    for v in (p10_b, p50_b, vd_p50):
        if not math.isfinite(v):
            raise SensitivityError("action-signal inputs must be finite")
    if p10_b > INVEST_P10 and vd_p50 > INVEST_VD:
        return "Invest"
    if p50_b > 0 and MONITOR_VD[0] <= vd_p50 <= MONITOR_VD[1]:
        return "Monitor"
    if abs(p10_b) < NEAR_ZERO_FRACTION * abs(p50_b):
        return "Diligence"
    return "DoNotInvest"
