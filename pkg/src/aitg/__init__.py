"""AI Transformation Gap engine.

Deterministic pipeline from declarative calibration and firm inputs to
industry ceilings, adoption-trajectory positions, dollar-denominated
value creation, disruption hazard, and uncertainty analysis. Exposed as
a library, a CLI (``aitg``), and a local JSON service.
"""

__version__ = "0.1.0"

from .calibration import (  # noqa: F401
    DimensionWeights,
    IndustryCalibration,
    RawIndicatorPanel,
    compute_ctd,
    compute_iass,
    compute_psi,
    compute_rti,
    compute_task_entropy,
    normalize_minmax,
)
from .frontier import (  # noqa: F401
    AfcConfig,
    CapabilityBasket,
    CapabilitySeries,
    ScenarioSet,
    ThetaState,
    adjusted_ceiling,
    capability_index,
    chain_link,
    compute_afc,
    compute_atd,
    ewma_smooth,
    rotation_check,
    scenario_uq,
    update_theta,
)
from .trajectory import (  # noqa: F401
    FirmCurve,
    IfsTrajectoryFactors,
    WaveParams,
    adjust_steepness,
    adjust_t50,
    afc_firm_adjust,
    aitg_at,
    build_firm_curve,
    invert,
    shift_wave_midpoints,
    variable_t50_base,
)
from .scorecard import (  # noqa: F401
    FirmDimensionScores,
    IfsFactors,
    SurveyAnswer,
    SurveyResponse,
    UncertaintyQuotient,
    aggregate_uq,
    aitg_raw,
    discriminability,
    ifs_residual,
    ir_and_gap,
    score_survey,
    scorecard_line,
)
from .valuation import (  # noqa: F401
    CesConfig,
    CostStream,
    FinancialBaseline,
    ValuePoolSpec,
    capture,
    ces_bottleneck,
    delta_ev,
    delta_r,
    dev_dct,
    fcf_interim,
    firm_scale,
    npv_cost,
    pool_value,
    ramp,
    rescale_captures,
    terminal_value,
    value_density,
)
from .disruption import (  # noqa: F401
    AdriConfig,
    MoatFactors,
    adri,
    classify,
    cumulative_displacement,
    hazard,
    moat,
    urgency_delta,
)
from .sensitivity import (  # noqa: F401
    DistributionSpec,
    McConfig,
    RankPanel,
    action_signal,
    mc_delta_ev,
    sobol_first_order,
    spearman,
    weight_perturbation_rank_stability,
)
from .workspace import (  # noqa: F401
    FirmProfile,
    RunConfig,
    WorkspaceBundle,
    bundled_workspace_path,
    load_workspace,
)
from .pipeline import (  # noqa: F401
    build_perturbation_closure,
    default_mc_specs,
    evaluate_firm,
)
