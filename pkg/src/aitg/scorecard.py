"""Firm-side scoring.

Survey ingestion with evidence-tier capping, the raw firm composite,
industry-relative normalization, the effective gap, the residual
feasibility multiplier, uncertainty aggregation, and cross-firm
discriminability.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

__all__ = [
    "ScorecardError",
    "FIRM_DIMENSIONS",
    "EVIDENCE_TIERS",
    "TIER_PENALTIES",
    "FirmDimensionScores",
    "SurveyResponse",
    "SurveyResult",
    "IfsFactors",
    "UncertaintyQuotient",
    "score_survey",
    "aitg_raw",
    "ir_and_gap",
    "ifs_residual",
    "aggregate_uq",
    "discriminability",
    "scorecard_line",
]

#: Firm dimension keys in canonical order: data infrastructure, process
#: automation, workforce augmentation, decision automation, product/revenue
#: integration, organizational capability.
FIRM_DIMENSIONS = ("dim", "pac", "war", "dar", "apr", "oac")

EVIDENCE_TIERS = ("A", "B", "C", "D")

#: Uncertainty penalty added per dimension by evidence tier.
TIER_PENALTIES = {"A": 0.00, "B": 0.08, "C": 0.18, "D": 0.30}

#: Question -> dimension assignment: four consecutive questions per dimension,
#: question 25 carries the five feasibility sub-scores.
QUESTIONS_PER_DIMENSION = 4
N_QUESTIONS = 25

#: Residual factor keys and their geometric weights.
RESIDUAL_WEIGHTS = {"vtr": 0.35, "crs": 0.35, "reg": 0.30}

#: Declared factor ranges used to clamp survey-derived feasibility factors.
FACTOR_RANGES = {
    "occ": (0.50, 1.00),
    "dr": (0.50, 1.00),
    "vtr": (0.75, 1.00),
    "crs": (0.70, 1.00),
    "reg": (0.55, 1.00),
}


class ScorecardError(ValueError):
    """Raised on malformed scorecard inputs."""


@dataclass(frozen=True)
class FirmDimensionScores:
    """Six firm dimension scores with per-dimension evidence tiers."""

    scores: Mapping[str, float]
    tiers: Mapping[str, str]

    def __post_init__(self) -> None:
        for d in FIRM_DIMENSIONS:
            if d not in self.scores:
                raise ScorecardError(f"missing firm dimension {d!r}")
            s = self.scores[d]
            if not (0.0 <= s <= 10.0):
                raise ScorecardError(f"dimension {d}={s} outside [0, 10]")
            tier = self.tiers.get(d)
            if tier not in EVIDENCE_TIERS:
                raise ScorecardError(f"dimension {d} has invalid evidence tier {tier!r}")

    def as_tuple(self) -> tuple[float, ...]:
        return tuple(self.scores[d] for d in FIRM_DIMENSIONS)

    def data_tier_component(self) -> float:
        """Mean per-dimension tier penalty, the data-quality UQ component."""
        return sum(TIER_PENALTIES[self.tiers[d]] for d in FIRM_DIMENSIONS) / len(FIRM_DIMENSIONS)


@dataclass(frozen=True)
class SurveyAnswer:
    """One survey record: 0-4 response plus evidence attachment flag."""

    question: int
    answer: int
    evidence: bool = False
    citation: str = ""
    sub_answers: Mapping[str, int] | None = None


@dataclass(frozen=True)
class SurveyResponse:
    """Exactly 25 answers; answer 25 carries the five feasibility sub-scores."""

    answers: Sequence[SurveyAnswer]

    def __post_init__(self) -> None:
        if len(self.answers) != N_QUESTIONS:
            raise ScorecardError(f"survey needs exactly {N_QUESTIONS} answers, got {len(self.answers)}")
        seen = set()
        for a in self.answers:
            if a.question in seen:
                raise ScorecardError(f"duplicate question id {a.question}")
            seen.add(a.question)
            if not (1 <= a.question <= N_QUESTIONS):
                raise ScorecardError(f"question id {a.question} outside 1..{N_QUESTIONS}")
            if a.question < N_QUESTIONS:
                if not isinstance(a.answer, int) or not (0 <= a.answer <= 4):
                    raise ScorecardError(f"Q{a.question}: answer must be an integer 0..4")
            else:
                subs = a.sub_answers or {}
                if set(subs) != set(FACTOR_RANGES):
                    raise ScorecardError("Q25 must carry sub-answers for occ, dr, vtr, crs, reg")
                for k, v in subs.items():
                    if not isinstance(v, int) or not (0 <= v <= 4):
                        raise ScorecardError(f"Q25 sub-answer {k}={v} must be an integer 0..4")


@dataclass(frozen=True)
class IfsFactors:
    """Two trajectory factors plus the three residual factors.

    Residual factors may take any value in (0, 1] on direct-entry
    scorecards; survey-derived factors are clamped into the declared
    per-factor ranges before they get here.
    """

    occ: float
    dr: float
    vtr: float
    crs: float
    reg: float

    def __post_init__(self) -> None:
        for name in ("occ", "dr", "vtr", "crs", "reg"):
            v = getattr(self, name)
            if not (0.0 < v <= 1.0):
                raise ScorecardError(f"feasibility factor {name}={v} outside (0, 1]")


@dataclass(frozen=True)
class UncertaintyQuotient:
    """Component half-widths: data tier, model parameter, frontier scenario, interrater."""

    data_tier: float
    model: float
    afc: float
    interrater: float

    def __post_init__(self) -> None:
        for name in ("data_tier", "model", "afc", "interrater"):
            if getattr(self, name) < 0:
                raise ScorecardError(f"UQ component {name} must be nonnegative")

    def components(self) -> tuple[float, float, float, float]:
        return (self.data_tier, self.model, self.afc, self.interrater)


@dataclass(frozen=True)
class SurveyResult:
    scores: FirmDimensionScores
    ifs: IfsFactors
    capped_questions: tuple[int, ...]
    question_scores: Mapping[int, float] = field(default_factory=dict)


def _anchor_score(answer: int) -> float:
    # 0..4 responses map onto the fixed rubric anchors 1/3/5/7/9
    return 2.0 * answer + 1.0


def _clamp(v: float, bounds: tuple[float, float]) -> float:
    lo, hi = bounds
    return min(hi, max(lo, v))


def score_survey(resp: SurveyResponse) -> SurveyResult:
    """Score a 25-question survey into dimension scores and feasibility factors.

    Any answer of 3 or 4 without attached evidence is capped at 2 (anchor
    score 5) and its dimension is flagged tier D; evidenced surveys are
    tier C. Each dimension score is the arithmetic mean of its four
    question scores. The question-25 sub-answers map onto the same anchors
    rescaled to tenths (0.1 ... 0.9), then clamp into each factor's
    declared range; the evidence cap applies to them identically.
    """
    by_q = {a.question: a for a in resp.answers}
    question_scores: dict[int, float] = {}
    capped: list[int] = []
    dim_scores: dict[str, float] = {}
    dim_tiers: dict[str, str] = {}

    for i, dim in enumerate(FIRM_DIMENSIONS):
        total = 0.0
        dim_capped = False
        for q in range(i * QUESTIONS_PER_DIMENSION + 1, (i + 1) * QUESTIONS_PER_DIMENSION + 1):
            a = by_q[q]
            answer = a.answer
            if answer >= 3 and not a.evidence:
                answer = 2
                dim_capped = True
                capped.append(q)
            score = _anchor_score(answer)
            question_scores[q] = score
            total += score
        dim_scores[dim] = total / QUESTIONS_PER_DIMENSION
        dim_tiers[dim] = "D" if dim_capped else "C"

    q25 = by_q[N_QUESTIONS]
    subs = dict(q25.sub_answers or {})
    factors: dict[str, float] = {}
    for key, raw in subs.items():
        answer = raw
        if answer >= 3 and not q25.evidence:
            answer = 2
            if N_QUESTIONS not in capped:
                capped.append(N_QUESTIONS)
        factors[key] = _clamp(_anchor_score(answer) / 10.0, FACTOR_RANGES[key])

    return SurveyResult(
        scores=FirmDimensionScores(scores=dim_scores, tiers=dim_tiers),
        ifs=IfsFactors(**factors),
        capped_questions=tuple(sorted(capped)),
        question_scores=question_scores,
    )


def aitg_raw(scores: FirmDimensionScores) -> float:
    """Raw firm composite: arithmetic mean of the six dimension scores."""
    vals = scores.as_tuple()
    return sum(vals) / len(vals)


def ir_and_gap(aitg: float, iass_star: float) -> tuple[float, float]:
    """Industry-relative score and effective gap against the adjusted ceiling.

    IR = aitg / ceiling * 10; gap = max(0, ceiling - aitg). A firm above
    the ceiling has zero gap (frontier exceeded), never a negative one.
    """
    if iass_star <= 0:
        raise ScorecardError("adjusted ceiling must be positive")
    if aitg < 0:
        raise ScorecardError("composite score must be nonnegative")
    ir = aitg / iass_star * 10.0
    g_eff = max(0.0, iass_star - aitg)
    return ir, g_eff


def ifs_residual(factors: IfsFactors) -> float:
    """Geometric residual multiplier over vendor, competitive, and regulatory risk.

    vtr^0.35 * crs^0.35 * reg^0.30. Lies between the min and max of the
    three inputs (weighted geometric mean bound).
    """
    return (
        factors.vtr ** RESIDUAL_WEIGHTS["vtr"]
        * factors.crs ** RESIDUAL_WEIGHTS["crs"]
        * factors.reg ** RESIDUAL_WEIGHTS["reg"]
    )


def aggregate_uq(components: UncertaintyQuotient) -> float:
    """Root-sum-of-squares of the component half-widths."""
    return math.sqrt(sum(c * c for c in components.components()))


def discriminability(delta: float, uq_a: float, uq_b: float) -> float:
    """Signal-to-noise ratio of a score gap against the joint uncertainty.

    delta / sqrt(uq_a^2 + uq_b^2); above ~2 the two firms are credibly
    distinct at the stated uncertainty.
    """
    if uq_a < 0 or uq_b < 0:
        raise ScorecardError("uncertainty half-widths must be nonnegative")
    joint = math.hypot(uq_a, uq_b)
    if joint == 0:
        raise ScorecardError("both uncertainty half-widths are zero; ratio undefined")
    return delta / joint


def scorecard_line(aitg: float, ir: float, g_eff: float, uq: float) -> str:
    """Dual-format reporting line: AITG a | IR b | G_eff c | UQ +/-d."""
    return f"AITG {aitg:.2f} | IR {ir:.2f} | G_eff {g_eff:.2f} | UQ ±{uq:.2f}"
