"""Search for minimal explanation-property pairs for a designated row.

Conditions are built once per attribute: the natural interval around the
designated row's value for numeric columns (equality for categorical ones,
and the trivial single-point interval for constant numeric columns). For
each candidate property the search then walks condition subsets level by
level, starting with the empty explanation and single conditions. A subset
that reaches both thresholds is reported and never extended, so only
minimal explanations are kept; a subset below the support threshold is
dropped together with all its supersets.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace

import numpy as np

from .dataset import (
    CATEGORICAL,
    NUMERIC,
    Attribute,
    Condition,
    Dataset,
    DataObject,
    Explanation,
    SelectionView,
)
from .errors import ConfigError
from .intervals import EMConfig, em_fit, natural_condition_categorical, natural_interval
from .outlierness import OutliernessScore, outlierness


@dataclass(frozen=True)
class MiningConfig:
    """Thresholds and knobs for one mining run."""

    outlier_index: int
    min_support: float = 0.2
    min_score: float = 0.8
    max_conditions: int = 3
    em: EMConfig = field(default_factory=EMConfig)

    def __post_init__(self):
        if not 0.0 <= self.min_support <= 1.0:
            raise ConfigError("min_support must lie in [0, 1]")
        if not 0.0 <= self.min_score <= 1.0:
            raise ConfigError("min_score must lie in [0, 1]")
        if self.max_conditions < 1:
            raise ConfigError("max_conditions must be at least 1")
        if self.outlier_index < 0:
            raise ConfigError("outlier_index must be non-negative")


@dataclass(frozen=True, eq=False)
class ExplanationPropertyPair:
    """A reported finding: the property is atypical within the selection."""

    explanation: Explanation
    property: Attribute
    score: OutliernessScore
    support: float


@dataclass(frozen=True, eq=False)
class PairEvaluation:
    """Result of scoring one user-chosen (explanation, property) pair."""

    explanation: Explanation
    property: Attribute
    support: float
    score: OutliernessScore
    accepted: bool


@dataclass(frozen=True)
class IntervalReport:
    """How one numeric attribute's natural condition was obtained."""

    attribute: str
    seed: tuple
    annihilation: float
    iterations: int
    components: int
    log_likelihood: float
    fell_back: bool


@dataclass(eq=False)
class MiningResult:
    """Mined pairs plus the condition vocabulary and phase timings."""

    pairs: list[ExplanationPropertyPair]
    conditions: dict[int, Condition]
    interval_reports: list[IntervalReport]
    condition_seconds: float
    scoring_seconds: float


def _check_config(db: Dataset, cfg: MiningConfig) -> DataObject:
    if cfg.outlier_index >= db.n_rows:
        raise ConfigError(
            f"outlier index {cfg.outlier_index} out of range for {db.n_rows} rows"
        )
    if cfg.max_conditions > db.n_attributes:
        raise ConfigError(
            f"max_conditions {cfg.max_conditions} exceeds the {db.n_attributes} attributes"
        )
    return db.row(cfg.outlier_index)


def natural_conditions(
    db: Dataset, cfg: MiningConfig
) -> tuple[dict[int, Condition], list[IntervalReport]]:
    """One condition per attribute, anchored at the designated row.

    Numeric attributes get the natural interval of the row's value from a
    seeded mixture fit of the full column; the seed is derived from the
    configured seed and the attribute index, so runs are reproducible and
    attributes are independent. A constant numeric column degenerates to
    the single-point interval. Categorical attributes get equality.
    """
    o = _check_config(db, cfg)
    conditions: dict[int, Condition] = {}
    reports: list[IntervalReport] = []
    base_seed = cfg.em.seed if isinstance(cfg.em.seed, tuple) else (cfg.em.seed,)
    for attr in db.schema:
        col = db.columns[attr.index]
        if attr.kind == CATEGORICAL:
            conditions[attr.index] = natural_condition_categorical(attr, o)
            continue
        value = float(o.values[attr.index])
        if float(col.max()) == float(col.min()):
            conditions[attr.index] = Condition.interval(attr.index, value, value)
            continue
        seed = base_seed + (attr.index,)
        state = em_fit(col, replace(cfg.em, seed=seed))
        lo, hi = natural_interval(col, value, state)
        conditions[attr.index] = Condition.interval(attr.index, lo, hi)
        reports.append(
            IntervalReport(
                attribute=attr.name,
                seed=seed,
                annihilation=cfg.em.annihilation,
                iterations=state.iterations,
                components=state.components,
                log_likelihood=state.log_likelihood,
                fell_back=state.fell_back,
            )
        )
    return conditions, reports


def _condition_mask(db: Dataset, condition: Condition) -> np.ndarray:
    col = db.columns[condition.attribute]
    if condition.is_interval:
        return (col >= condition.lower) & (col <= condition.upper)
    return col == condition.value


def _view(db: Dataset, mask: np.ndarray, explanation: Explanation) -> SelectionView:
    return SelectionView(base=db, indices=np.nonzero(mask)[0], explanation=explanation)


def mine(db: Dataset, cfg: MiningConfig) -> MiningResult:
    """Report every minimal pair meeting the support and score thresholds.

    Parameters
    ----------
    db : Dataset
    cfg : MiningConfig
        Thresholds, the designated row, and the interval-search knobs.

    Returns
    -------
    MiningResult
        Pairs sorted by score (descending, ties broken by property and
        explanation attributes), the per-attribute condition vocabulary,
        and wall times of the two phases.
    """
    o = _check_config(db, cfg)
    t0 = time.perf_counter()
    conditions, reports = natural_conditions(db, cfg)
    masks = {i: _condition_mask(db, c) for i, c in conditions.items()}
    condition_seconds = time.perf_counter() - t0

    n = db.n_rows
    full_mask = np.ones(n, dtype=bool)
    pairs: list[ExplanationPropertyPair] = []

    t1 = time.perf_counter()
    for prop in db.schema:
        score = outlierness(_view(db, full_mask, Explanation.empty()), prop, o)
        if score.value >= cfg.min_score:
            pairs.append(
                ExplanationPropertyPair(Explanation.empty(), prop, score, 1.0)
            )
            continue  # every larger explanation would be non-minimal

        passed: list[frozenset[int]] = []
        frontier: list[tuple[tuple[int, ...], np.ndarray]] = []
        vocabulary = [i for i in sorted(conditions) if i != prop.index]
        for i in vocabulary:
            mask = masks[i]
            sup = float(mask.sum()) / n
            if sup < cfg.min_support:
                continue
            expl = Explanation.of(conditions[i])
            score = outlierness(_view(db, mask, expl), prop, o)
            if score.value >= cfg.min_score:
                pairs.append(ExplanationPropertyPair(expl, prop, score, sup))
                passed.append(frozenset((i,)))
            else:
                frontier.append(((i,), mask))

        level = 2
        while level <= cfg.max_conditions and frontier:
            frontier_keys = {key for key, _ in frontier}
            next_frontier: list[tuple[tuple[int, ...], np.ndarray]] = []
            for a in range(len(frontier)):
                key_a, mask_a = frontier[a]
                for b in range(a + 1, len(frontier)):
                    key_b, _ = frontier[b]
                    if key_a[:-1] != key_b[:-1]:
                        continue
                    lo, hi = sorted((key_a[-1], key_b[-1]))
                    candidate = key_a[:-1] + (lo, hi)
                    subsets = [
                        candidate[:r] + candidate[r + 1 :] for r in range(len(candidate))
                    ]
                    if any(s not in frontier_keys for s in subsets):
                        continue
                    cand_set = frozenset(candidate)
                    if any(p <= cand_set for p in passed):
                        continue
                    mask = mask_a & masks[hi if key_a[-1] == lo else lo]
                    sup = float(mask.sum()) / n
                    if sup < cfg.min_support:
                        continue
                    expl = Explanation.of(*(conditions[i] for i in candidate))
                    score = outlierness(_view(db, mask, expl), prop, o)
                    if score.value >= cfg.min_score:
                        pairs.append(ExplanationPropertyPair(expl, prop, score, sup))
                        passed.append(cand_set)
                    else:
                        next_frontier.append((candidate, mask))
            frontier = next_frontier
            level += 1
    scoring_seconds = time.perf_counter() - t1

    pairs.sort(
        key=lambda p: (
            -p.score.value,
            p.property.index,
            tuple(sorted(p.explanation.attributes)),
        )
    )
    return MiningResult(
        pairs=pairs,
        conditions=conditions,
        interval_reports=reports,
        condition_seconds=condition_seconds,
        scoring_seconds=scoring_seconds,
    )


def explain_one(
    db: Dataset, cfg: MiningConfig, explanation: Explanation, property_index: int
) -> PairEvaluation:
    """Score a single caller-chosen pair against the thresholds.

    The pair is accepted when the explanation's support reaches
    cfg.min_support and the score reaches cfg.min_score; a pair below the
    support threshold is rejected no matter its score.
    """
    o = _check_config(db, cfg)
    if not 0 <= property_index < db.n_attributes:
        raise ConfigError(f"no attribute at index {property_index}")
    if property_index in explanation.attributes:
        raise ConfigError("the property may not appear in the explanation")
    mask = np.ones(db.n_rows, dtype=bool)
    for condition in explanation:
        mask &= _condition_mask(db, condition)
    sup = float(mask.sum()) / db.n_rows
    prop = db.schema[property_index]
    score = outlierness(_view(db, mask, explanation), prop, o)
    accepted = sup >= cfg.min_support and score.value >= cfg.min_score
    return PairEvaluation(
        explanation=explanation, property=prop, support=sup, score=score, accepted=accepted
    )
