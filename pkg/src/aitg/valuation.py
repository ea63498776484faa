"""Value creation bridge.

Maps an effective transformation gap to dollar-denominated enterprise
value: firm scale factor, bottleneck aggregation over the enabling
dimensions, concave gap-to-capture scaling, per-pool run-rate values,
ramp increments over the hold, terminal value, discounted interim cash
flows, cost NPV, total value creation, and value density with tiering.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

__all__ = [
    "ValuationError",
    "ValuePoolSpec",
    "CesConfig",
    "CostStream",
    "FinancialBaseline",
    "PoolValue",
    "VcbResult",
    "firm_scale",
    "ces_bottleneck",
    "capture",
    "pool_value",
    "rescale_captures",
    "ramp",
    "delta_r",
    "npv_cost",
    "terminal_value",
    "fcf_interim",
    "delta_ev",
    "value_density",
    "dev_dct",
]

#: Logistic cap on the scale factor for vendor-only AI stacks.
VENDOR_CAP = 0.65

#: Interim cash-flow horizon, years.
FCF_YEARS = 5


class ValuationError(ValueError):
    """Raised on invalid valuation inputs."""


@dataclass(frozen=True)
class ValuePoolSpec:
    """One standard value pool: uplift baseline, base capture, gated dimensions."""

    pool_id: str
    name: str
    uplift_fraction: float
    base_capture: float
    dims: tuple[str, ...]
    dim_weights: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if not (0.0 < self.base_capture <= 1.0):
            raise ValuationError(f"{self.pool_id}: base capture outside (0, 1]")
        if self.uplift_fraction < 0:
            raise ValuationError(f"{self.pool_id}: uplift fraction must be nonnegative")
        if not self.dims:
            raise ValuationError(f"{self.pool_id}: gated dimension set is empty")
        if self.dim_weights:
            if len(self.dim_weights) != len(self.dims):
                raise ValuationError(f"{self.pool_id}: weight/dimension length mismatch")
            if any(w <= 0 for w in self.dim_weights):
                raise ValuationError(f"{self.pool_id}: dimension weights must be positive")
            if abs(sum(self.dim_weights) - 1.0) > 1e-9:
                raise ValuationError(f"{self.pool_id}: dimension weights must sum to 1")

    def weights(self) -> tuple[float, ...]:
        if self.dim_weights:
            return self.dim_weights
        n = len(self.dims)
        return tuple(1.0 / n for _ in range(n))


@dataclass(frozen=True)
class CesConfig:
    """Substitution parameter and input floor for the bottleneck aggregator."""

    rho: float = 5.0
    floor: float = 0.01

    def __post_init__(self) -> None:
        if self.rho <= 0:
            raise ValuationError("rho must be positive")
        if not (0.0 < self.floor < 1.0):
            raise ValuationError("dimension floor outside (0, 1)")


@dataclass(frozen=True)
class CostStream:
    """One year of implementation cost: capitalizable plus period expense, $B."""

    year: int
    capex: float = 0.0
    opex: float = 0.0

    def __post_init__(self) -> None:
        if self.year < 1:
            raise ValuationError("cost stream years are 1-indexed")
        if not math.isfinite(self.capex) or not math.isfinite(self.opex):
            raise ValuationError("cost stream values must be finite")


@dataclass(frozen=True)
class FinancialBaseline:
    """Firm financials feeding the bridge: revenue, scale threshold, discounting."""

    revenue_b: float
    s_star_b: float
    wacc: float
    exit_multiple: float
    cost_streams: tuple[CostStream, ...] = ()
    vendor_only: bool = False
    capture_lambda: float = 3.5
    scale_alpha: float = 2.0

    def __post_init__(self) -> None:
        if self.revenue_b <= 0 or self.s_star_b <= 0:
            raise ValuationError("revenue and critical scale must be positive")
        if self.wacc < 0:
            raise ValuationError("wacc must be nonnegative")
        if self.exit_multiple < 0:
            raise ValuationError("exit multiple must be nonnegative")
        if self.capture_lambda <= 0 or self.scale_alpha <= 0:
            raise ValuationError("model constants must be positive")


@dataclass(frozen=True)
class PoolValue:
    pool_id: str
    bottleneck: float
    capture_raw: float
    capture: float
    uplift_fraction: float
    baseline_b: float
    value_b: float


@dataclass(frozen=True)
class VcbResult:
    """Full bridge output for one firm evaluation."""

    phi: float
    pools: tuple[PoolValue, ...]
    captures_rescaled: bool
    pool_sum_b: float
    delta_r: float
    tv_b: float
    fcf_b: float
    npv_cost_b: float
    impl_cost_b: float
    cost_basis: str
    delta_ev_b: float
    value_density: float
    tier: str

    def __post_init__(self) -> None:
        if self.delta_ev_b >= 0 and self.tv_b < -1e-12:
            raise ValuationError("terminal value negative with nonnegative value creation")


def firm_scale(baseline: FinancialBaseline) -> float:
    """Scale factor: logistic in log revenue relative to the critical threshold.

    Equals 0.5 exactly at the threshold and approaches 1 an order of
    magnitude above it. Vendor-only stacks are capped at 0.65 because a
    rented model carries no compounding data advantage.
    """
    z = baseline.scale_alpha * math.log(baseline.revenue_b / baseline.s_star_b)
    phi = 1.0 / (1.0 + math.exp(-z))
    if baseline.vendor_only:
        phi = min(phi, VENDOR_CAP)
    return phi


def ces_bottleneck(
    inputs: Sequence[float],
    weights: Sequence[float] | None = None,
    config: CesConfig | None = None,
) -> float:
    """Low-elasticity aggregate of normalized dimension inputs.

    (sum_d alpha_d e_d^(-rho))^(-1/rho): a weighted power mean of the
    reciprocals, approaching min(e_d) as rho grows and the weighted
    geometric mean as rho -> 0. Inputs are floored at the configured
    minimum before exponentiation, which also bounds the output away from
    zero. Computed in log space so extreme rho stays finite.
    """
    cfg = config or CesConfig()
    if not inputs:
        raise ValuationError("bottleneck needs at least one input")
    n = len(inputs)
    if weights is None:
        weights = [1.0 / n] * n
    if len(weights) != n:
        raise ValuationError("weight/input length mismatch")
    if any(w <= 0 for w in weights):
        raise ValuationError("weights must be positive")
    if abs(sum(weights) - 1.0) > 1e-9:
        raise ValuationError("weights must sum to 1")
    floored = [max(min(e, 1.0), cfg.floor) for e in inputs]
    # logsumexp of ln(alpha_d) - rho * ln(e_d)
    terms = [math.log(w) - cfg.rho * math.log(e) for w, e in zip(weights, floored)]
    m = max(terms)
    lse = m + math.log(sum(math.exp(t - m) for t in terms))
    return math.exp(-lse / cfg.rho)


def capture(g_eff: float, kappa: float, b: float, lam: float = 3.5) -> float:
    """Expected capture fraction for one pool.

    kappa * b * (1 - exp(-lam * g_eff / 10)): base capture, discounted by
    the bottleneck, scaled by a concave function of the normalized gap —
    accessible wins come first, structurally resistant tasks persist.
    """
    if g_eff < 0:
        raise ValuationError("effective gap must be nonnegative")
    if lam <= 0:
        raise ValuationError("capture concavity must be positive")
    eta = 1.0 - math.exp(-lam * g_eff / 10.0)
    return kappa * b * eta


def pool_value(uplift_fraction: float, revenue_b: float, phi: float, capture_p: float) -> float:
    """Annual run-rate value of one pool, $B.

    revenue * uplift * phi * capture. The scale factor enters here exactly
    once; downstream terminal-value math must not multiply it again.
    """
    if revenue_b < 0 or uplift_fraction < 0 or phi < 0 or capture_p < 0:
        raise ValuationError("pool value inputs must be nonnegative")
    return revenue_b * uplift_fraction * phi * capture_p


def rescale_captures(captures: Sequence[float]) -> tuple[list[float], bool]:
    """Proportionally rescale pool captures when the sum exceeds unity.

    Prevents the pools from claiming more than 100% of the theoretical
    uplift; below the bound the captures pass through unchanged.
    """
    if any(c < 0 for c in captures):
        raise ValuationError("captures must be nonnegative")
    total = sum(captures)
    if total <= 1.0 or total == 0.0:
        return list(captures), False
    return [c / total for c in captures], True


def ramp(t: float, t50: float, k_ramp: float = 0.18) -> float:
    """Logistic value-realization ramp at month ``t``."""
    if not (math.isfinite(t) and math.isfinite(t50)):
        raise ValuationError("ramp inputs must be finite")
    if k_ramp <= 0:
        raise ValuationError("ramp steepness must be positive")
    z = -k_ramp * (t - t50)
    if z > 700.0:
        return 0.0
    if z < -700.0:
        return 1.0
    return 1.0 / (1.0 + math.exp(z))


def delta_r(t_hat: float, t50: float, hold_months: float = 60.0, k_ramp: float = 0.18) -> float:
    """Incremental ramp fraction over the hold period.

    ramp(t_hat + hold) - ramp(t_hat): the share of the pool not already in
    baseline earnings at acquisition. Replacing this with the end-of-hold
    level alone would credit value already priced in.
    """
    if hold_months <= 0:
        raise ValuationError("hold period must be positive")
    return ramp(t_hat + hold_months, t50, k_ramp) - ramp(t_hat, t50, k_ramp)


def npv_cost(streams: Sequence[CostStream], wacc: float) -> float:
    """Present value of implementation cost streams, $B.

    sum_t (capex_t + opex_t) / (1 + wacc)^t over 1-indexed years.
    """
    if wacc <= -1.0:
        raise ValuationError("wacc must exceed -1")
    return sum((s.capex + s.opex) / (1.0 + wacc) ** s.year for s in streams)


def terminal_value(pool_sum_b: float, delta_r_f: float, exit_multiple: float, ifs_resid: float) -> float:
    """Exit-multiple capitalization of the incremental run-rate uplift, $B.

    pool_sum * delta_r * multiple * residual. The pool sum already carries
    the scale factor; it is not applied again here.
    """
    for name, v in (
        ("pool sum", pool_sum_b),
        ("ramp increment", delta_r_f),
        ("exit multiple", exit_multiple),
        ("residual multiplier", ifs_resid),
    ):
        if v < 0:
            raise ValuationError(f"{name} must be nonnegative")
    return pool_sum_b * delta_r_f * exit_multiple * ifs_resid


def fcf_interim(
    pool_sum_b: float,
    t_hat: float,
    t50: float,
    ifs_resid: float,
    wacc: float,
    k_ramp: float = 0.18,
    years: int = FCF_YEARS,
) -> float:
    """Discounted interim cash flows over the hold, $B.

    Discrete annual approximation: each year contributes the pool sum
    times the ramp increment since acquisition, haircut by the residual
    multiplier and discounted at the cost of capital.
    """
    if wacc <= -1.0:
        raise ValuationError("wacc must exceed -1")
    r0 = ramp(t_hat, t50, k_ramp)
    total = 0.0
    for y in range(1, years + 1):
        increment = ramp(t_hat + 12.0 * y, t50, k_ramp) - r0
        total += pool_sum_b * increment * ifs_resid / (1.0 + wacc) ** y
    return total


def delta_ev(tv_b: float, fcf_b: float, npv_cost_b: float) -> float:
    """Total risk-adjusted enterprise value creation, $B."""
    for v in (tv_b, fcf_b, npv_cost_b):
        if not math.isfinite(v):
            raise ValuationError("value components must be finite")
    return tv_b + fcf_b - npv_cost_b


#: Value density tier thresholds.
TIER1_THRESHOLD = 2.0
TIER2_THRESHOLD = 1.0


def value_density(delta_ev_b: float, impl_cost_b: float) -> tuple[float, str]:
    """Value creation per unit of implementation cost, with its tier.

    >= 2.0x is tier 1 (invest), [1.0, 2.0) tier 2 (monitor), below 1.0
    tier 3 (pass).
    """
    if impl_cost_b <= 0:
        raise ValuationError("implementation cost must be positive for value density")
    vd = delta_ev_b / impl_cost_b
    if vd >= TIER1_THRESHOLD:
        tier = "Tier1"
    elif vd >= TIER2_THRESHOLD:
        tier = "Tier2"
    else:
        tier = "Tier3"
    return vd, tier


def dev_dct(pipeline: Callable[[float], float], c_t: float, step: float = 0.01) -> float:
    """Numerical sensitivity of value creation to the capability index.

    Central finite difference of the full evaluation closure through the
    frontier -> ceiling -> gap chain. O(step^2) accurate; exact for
    locally quadratic responses.
    """
    if step <= 0:
        raise ValuationError("step must be positive")
    return (pipeline(c_t + step) - pipeline(c_t - step)) / (2.0 * step)
