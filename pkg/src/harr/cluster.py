"""Clustering engine: weight-learning variants and classical baselines.

All prototype-based variants share one alternating loop: objects are
assigned to their nearest prototype under the variant's dissimilarity,
prototypes are refit as per-cluster means (numerical attributes) and modal
values (categorical attributes), and the loop repeats until the partition
stops changing. The weight-learning variants then refresh attribute weights
from the ratio of inter- to intra-cluster average distance per attribute and
resume, stopping once the partition is stable across weight refreshes.

Variants:

==========  =================================================================
HARR-V      reconstructed sub-attributes, one learned weight per attribute
HARR-M      reconstructed sub-attributes, learned per-cluster weight rows
HAR         reconstructed sub-attributes, frozen uniform weights
BD          raw base distances replace 0/1 mismatch (no projection, no weights)
KMD         0/1 mismatch on categorical attributes (pure categorical data)
KPT         |x - m| on numerical plus 0/1 mismatch on categorical attributes
OHE+OC      k-means on one-hot nominal + rank-coded ordinal + numerical
==========  =================================================================
"""

from __future__ import annotations

import time
import warnings
from dataclasses import dataclass, field

import numpy as np

from .base_distance import BaseDistanceTable, build_base_distances
from .projection import (
    HAMMING_FALLBACK,
    ReconstructedSpace,
    reconstruct,
    value_distance,
)
from .schema import AttributeKind, Dataset, discretize_numerical

__all__ = [
    "VARIANTS",
    "BASELINE_VARIANTS",
    "ConfigError",
    "RunConfig",
    "Partition",
    "Prototypes",
    "WeightVector",
    "WeightMatrix",
    "ObjectiveTrace",
    "PhaseTimings",
    "RunReport",
    "Prepared",
    "prepare",
    "run",
    "run_prepared",
    "run_harr_v",
    "run_harr_m",
    "run_baseline",
    "weighted_distance",
    "assign",
    "update_prototypes",
    "update_weight_vector",
    "update_weight_matrix",
    "normalize_importances",
    "encode_ohe_oc",
]

VARIANTS = ("HARR-V", "HARR-M", "HAR", "BD", "KMD", "KPT", "OHE+OC")
BASELINE_VARIANTS = ("KMD", "KPT", "OHE+OC", "BD", "HAR")

MONOTONE_TOLERANCE = 1e-9


class ConfigError(ValueError):
    """An invalid run configuration."""


def _freeze(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class RunConfig:
    """Configuration of a single clustering run.

    ``inner_cap`` bounds assignment/refit rounds per weight epoch and
    ``outer_cap`` bounds weight refreshes; ``epsilon`` guards the division by
    intra-cluster distance, which is legitimately zero for a perfectly
    compact attribute. ``bins`` overrides the discretization bin count.
    """

    k: int
    seed: int = 0
    variant: str = "HARR-M"
    inner_cap: int = 100
    outer_cap: int = 50
    epsilon: float = 1e-12
    bins: int | None = None

    def __post_init__(self) -> None:
        if self.variant not in VARIANTS:
            raise ConfigError(
                f"unknown variant {self.variant!r}; expected one of {VARIANTS}"
            )
        if self.k < 2:
            raise ConfigError(
                "k must be at least 2 (weight learning is undefined for a "
                "single cluster)"
            )
        if self.inner_cap < 1 or self.outer_cap < 1:
            raise ConfigError("iteration caps must be at least 1")
        if self.epsilon <= 0:
            raise ConfigError("epsilon must be positive")
        if self.bins is not None and self.bins < 2:
            raise ConfigError("bins override must be at least 2")


@dataclass(frozen=True)
class Partition:
    """Crisp cluster labels in [1, k], one per object."""

    labels: tuple[int, ...]
    k: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(int(x) for x in self.labels))
        if self.labels and not all(1 <= x <= self.k for x in self.labels):
            raise ValueError(f"labels must lie in [1, {self.k}]")

    def to_zero_based(self) -> np.ndarray:
        return np.asarray(self.labels, dtype=np.int64) - 1


@dataclass(frozen=True)
class Prototypes:
    """Per-cluster representatives in the original attribute space: means
    for numerical attributes, modal value indices for categorical ones."""

    values: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _freeze(np.asarray(self.values, float)))

    @property
    def k(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class WeightVector:
    """Non-negative attribute weights summing to 1."""

    w: np.ndarray

    def __post_init__(self) -> None:
        w = np.asarray(self.w, dtype=float)
        if (w < 0).any() or abs(w.sum() - 1.0) > 1e-9:
            raise ValueError("weights must be non-negative and sum to 1")
        object.__setattr__(self, "w", _freeze(w))


@dataclass(frozen=True)
class WeightMatrix:
    """One weight row per cluster, each on the simplex."""

    w: np.ndarray

    def __post_init__(self) -> None:
        w = np.asarray(self.w, dtype=float)
        if (w < 0).any() or (np.abs(w.sum(axis=1) - 1.0) > 1e-9).any():
            raise ValueError("every weight row must be non-negative and sum to 1")
        object.__setattr__(self, "w", _freeze(w))


@dataclass(frozen=True)
class ObjectiveTrace:
    """Objective value after each assignment, with markers for assignments
    that used freshly refreshed weights and for empty-cluster re-seeds.

    Converged runs close with one terminal entry repeating the fixed-point
    objective (the stopping check re-evaluates an unchanged state), so their
    final two values are equal.
    """

    z: tuple[float, ...]
    weights_updated: tuple[bool, ...]
    reseeded: tuple[bool, ...]


@dataclass(frozen=True)
class PhaseTimings:
    """Wall-clock seconds per phase; excluded from report equality."""

    reconstruct_s: float = 0.0
    cluster_s: float = 0.0
    weights_s: float = 0.0


@dataclass(frozen=True)
class RunReport:
    """Everything produced by one seeded clustering run.

    ``inner_monotone`` records whether the objective was non-increasing
    (within tolerance) across consecutive assignments of every fixed-weight
    epoch, skipping pairs interrupted by an empty-cluster re-seed;
    ``max_inner_increase`` is the largest observed increase.
    """

    variant: str
    k: int
    seed: int
    labels: tuple[int, ...]
    weights: tuple[float, ...] | None
    weight_matrix: tuple[tuple[float, ...], ...] | None
    trace_z: tuple[float, ...]
    trace_weights_updated: tuple[bool, ...]
    trace_reseeded: tuple[bool, ...]
    inner_iterations: int
    weight_updates: int
    converged: bool
    inner_monotone: bool
    max_inner_increase: float
    ari: float | None = None
    ca: float | None = None
    timings: PhaseTimings = field(default=PhaseTimings(), compare=False)

    @property
    def trace(self) -> ObjectiveTrace:
        return ObjectiveTrace(
            self.trace_z, self.trace_weights_updated, self.trace_reseeded
        )

    @property
    def partition(self) -> Partition:
        return Partition(self.labels, self.k)


# ---------------------------------------------------------------------------
# Column model shared by all prototype-based variants. Categorical distances
# depend only on the value index, so every categorical column carries a
# value-by-value distance table and scoring gathers one per-value total per
# source attribute instead of touching per-object columns.


@dataclass(frozen=True)
class _NumericCol:
    col: int  # position in the expanded column order
    source: int  # original attribute index
    values: np.ndarray  # n


@dataclass(frozen=True)
class _CatGroup:
    """All expanded columns of one source categorical attribute."""

    source: int
    cols: np.ndarray  # positions in the expanded column order
    codes0: np.ndarray  # n, 0-based value codes
    dist_tables: np.ndarray  # (len(cols), v, v) value-level distances
    value_counts: np.ndarray  # (v,) occurrences over the whole dataset


@dataclass(frozen=True)
class _ColumnModel:
    n: int
    m: int
    numeric: tuple[_NumericCol, ...]
    groups: tuple[_CatGroup, ...]


def _make_group(source, cols, codes0, tables) -> _CatGroup:
    dist_tables = np.ascontiguousarray(np.stack(tables))
    v = dist_tables.shape[1]
    return _CatGroup(
        source,
        _freeze(np.asarray(cols, dtype=np.int64)),
        _freeze(codes0),
        _freeze(dist_tables),
        _freeze(np.bincount(codes0, minlength=v).astype(float)),
    )


def _mismatch_table(v: int) -> np.ndarray:
    return 1.0 - np.eye(v)


def _model_reconstructed(dataset: Dataset, space: ReconstructedSpace) -> _ColumnModel:
    numeric = []
    col = 0
    for r in space.numeric_attrs:
        numeric.append(_NumericCol(col, r, _freeze(dataset.cells[:, r])))
        col += 1
    groups = []
    by_source: dict[int, list] = {}
    for sub in space.sub_attributes:
        by_source.setdefault(sub.source, []).append(sub)
    for source in sorted(by_source):
        subs = by_source[source]
        v = subs[0].v
        tables = []
        cols = []
        for sub in subs:
            if sub.span == HAMMING_FALLBACK:
                tables.append(_mismatch_table(v))
            else:
                tables.append(np.abs(sub.coords[:, None] - sub.coords[None, :]))
            cols.append(col)
            col += 1
        codes0 = dataset.cells[:, source].astype(np.int64) - 1
        groups.append(_make_group(source, cols, codes0, tables))
    return _ColumnModel(dataset.n, col, tuple(numeric), tuple(groups))


def _model_original(
    dataset: Dataset, table: BaseDistanceTable | None = None
) -> _ColumnModel:
    """KMD/KPT columns (0/1 mismatch on categorical attributes), or the BD
    columns when a base-distance table is supplied."""
    numeric = []
    groups = []
    for r, attr in enumerate(dataset.schema.attributes):
        if not attr.kind.is_categorical:
            numeric.append(_NumericCol(r, r, _freeze(dataset.cells[:, r])))
        else:
            codes0 = dataset.cells[:, r].astype(np.int64) - 1
            dist = _mismatch_table(attr.v) if table is None else table.matrices[r]
            groups.append(_make_group(r, [r], codes0, [dist]))
    return _ColumnModel(dataset.n, dataset.schema.d, tuple(numeric), tuple(groups))


def _scores(
    model: _ColumnModel, proto_vals: np.ndarray, weights: np.ndarray | None
) -> np.ndarray:
    """n x k weighted object-to-prototype dissimilarities.

    ``weights`` is a length-m vector, a k x m matrix (row per cluster), or
    None for an unweighted sum. ``proto_vals`` holds prototypes in the
    original attribute space.
    """
    k = proto_vals.shape[0]
    scores = np.zeros((model.n, k))
    for l in range(k):
        w_l = weights[l] if weights is not None and weights.ndim == 2 else weights
        s = scores[:, l]
        for num in model.numeric:
            gap = np.abs(num.values - proto_vals[l, num.source])
            s += gap if w_l is None else w_l[num.col] * gap
        for g in model.groups:
            proto_code = int(proto_vals[l, g.source]) - 1
            per_value = g.dist_tables[:, :, proto_code]
            if w_l is None:
                totals = per_value.sum(axis=0)
            else:
                totals = w_l[g.cols] @ per_value
            s += totals[g.codes0]
    return scores


def _fit_prototypes(cells: np.ndarray, labels0: np.ndarray, k: int, schema) -> np.ndarray:
    proto = np.empty((k, schema.d))
    for l in range(k):
        members = cells[labels0 == l]
        if members.shape[0] == 0:
            # Direct-call fallback; run loops re-seed empty clusters first.
            members = cells
        for r, attr in enumerate(schema.attributes):
            if attr.kind.is_categorical:
                counts = np.bincount(
                    members[:, r].astype(np.int64), minlength=attr.v + 1
                )[1:]
                proto[l, r] = int(np.argmax(counts)) + 1
            else:
                proto[l, r] = members[:, r].mean()
    return proto


def _reseed_empty(
    labels0: np.ndarray, scores: np.ndarray, k: int
) -> tuple[np.ndarray, bool]:
    """Move the worst-served object into each empty cluster.

    Candidates are objects whose current cluster keeps at least one other
    member; the one farthest from its assigned prototype wins, ties to the
    lowest object index. Empty clusters are filled in ascending index order.
    """
    reseeded = False
    n = labels0.shape[0]
    for l in range(k):
        if (labels0 == l).any():
            continue
        if not reseeded:
            labels0 = labels0.copy()
            reseeded = True
        own = scores[np.arange(n), labels0]
        sizes = np.bincount(labels0, minlength=k)
        movable = sizes[labels0] > 1
        if not movable.any():
            break
        candidates = np.flatnonzero(movable)
        pick = candidates[int(np.argmax(own[candidates]))]
        labels0[pick] = l
    return labels0, reseeded


def normalize_importances(importances: np.ndarray) -> np.ndarray:
    """Scale per-attribute importances onto the simplex.

    Invariant under multiplication of all importances by a positive
    constant. All-zero importances fall back to uniform with a warning.
    """
    importances = np.asarray(importances, dtype=float)
    total = importances.sum()
    if total <= 0.0:
        warnings.warn(
            "all attribute importances are zero; falling back to uniform weights",
            RuntimeWarning,
            stacklevel=2,
        )
        return np.full(importances.shape, 1.0 / importances.shape[-1])
    return importances / total


def _weight_stats(
    model: _ColumnModel, proto_vals: np.ndarray, labels0: np.ndarray, k: int
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-cluster member sums and all-object sums of per-column distances.

    Categorical columns aggregate through per-value occurrence counts, so the
    cost per cluster is one pass over the numeric columns plus table-sized
    work per categorical attribute.
    """
    member_sum = np.empty((k, model.m))
    total_sum = np.empty((k, model.m))
    for l in range(k):
        mask = labels0 == l
        for num in model.numeric:
            gap = np.abs(num.values - proto_vals[l, num.source])
            total_sum[l, num.col] = gap.sum()
            member_sum[l, num.col] = gap[mask].sum()
        for g in model.groups:
            proto_code = int(proto_vals[l, g.source]) - 1
            per_value = g.dist_tables[:, :, proto_code]
            v = per_value.shape[1]
            member_counts = np.bincount(g.codes0[mask], minlength=v).astype(float)
            member_sum[l, g.cols] = per_value @ member_counts
            total_sum[l, g.cols] = per_value @ g.value_counts
    sizes = np.bincount(labels0, minlength=k).astype(float)
    return member_sum, total_sum, sizes


def _weight_vector_from_stats(
    member_sum: np.ndarray, total_sum: np.ndarray, n: int, k: int, epsilon: float
) -> np.ndarray:
    intra = member_sum.sum(axis=0) / n
    inter = (total_sum - member_sum).sum(axis=0) / (n * (k - 1))
    return normalize_importances(inter / (intra + epsilon))


def _weight_matrix_from_stats(
    member_sum: np.ndarray,
    total_sum: np.ndarray,
    sizes: np.ndarray,
    n: int,
    epsilon: float,
) -> np.ndarray:
    k, m = member_sum.shape
    out = np.empty((k, m))
    for l in range(k):
        if sizes[l] == 0:
            # A cluster covering all n objects forces empty siblings, so both
            # degenerate cases resolve to a uniform row.
            warnings.warn(
                f"cluster {l} is empty; its weight row is set uniform",
                RuntimeWarning,
                stacklevel=3,
            )
            out[l] = 1.0 / m
            continue
        if sizes[l] == n:
            warnings.warn(
                f"cluster {l} covers every object; its weight row is set uniform",
                RuntimeWarning,
                stacklevel=3,
            )
            out[l] = 1.0 / m
            continue
        intra = member_sum[l] / sizes[l]
        inter = (total_sum[l] - member_sum[l]) / (n - sizes[l])
        out[l] = normalize_importances(inter / (intra + epsilon))
    return out


# ---------------------------------------------------------------------------
# Public single-step operations.


def weighted_distance(
    dataset: Dataset,
    space: ReconstructedSpace,
    protos: Prototypes,
    weights: WeightVector | WeightMatrix | None,
    x: int,
    m: int,
) -> float:
    """Weighted dissimilarity between object ``x`` and prototype ``m``
    (both 0-based indices).

    Numerical pass-through attributes contribute |x - m|; sub-attributes
    contribute the coordinate gap between the object's and the prototype's
    value. With a weight matrix, row ``m`` applies. Reference implementation;
    the run loops use an equivalent vectorized path.
    """
    if isinstance(weights, WeightMatrix):
        w = weights.w[m]
    elif isinstance(weights, WeightVector):
        w = weights.w
    else:
        w = None
    total = 0.0
    j = 0
    for r in space.numeric_attrs:
        phi = abs(dataset.cells[x, r] - protos.values[m, r])
        total += phi * (w[j] if w is not None else 1.0)
        j += 1
    for sub in space.sub_attributes:
        u = int(dataset.cells[x, sub.source])
        f = int(protos.values[m, sub.source])
        phi = value_distance(sub, u, f)
        total += phi * (w[j] if w is not None else 1.0)
        j += 1
    return total


def assign(
    dataset: Dataset,
    space: ReconstructedSpace,
    protos: Prototypes,
    weights: WeightVector | WeightMatrix | None,
) -> Partition:
    """Assign every object to its nearest prototype; ties break to the
    lowest cluster index."""
    model = _model_reconstructed(dataset, space)
    w = None if weights is None else weights.w
    labels0 = _scores(model, protos.values, w).argmin(axis=1)
    return Partition(tuple(int(x) + 1 for x in labels0), protos.k)


def update_prototypes(dataset: Dataset, partition: Partition, k: int | None = None) -> Prototypes:
    """Refit prototypes: numerical attributes take the member mean,
    categorical attributes the most frequent value index (ties to the lowest
    index). A memberless cluster falls back to the dataset-wide mean/mode;
    the run loops re-seed empty clusters before refitting, so the fallback
    only matters for direct calls.
    """
    k = partition.k if k is None else k
    return Prototypes(
        _fit_prototypes(dataset.cells, partition.to_zero_based(), k, dataset.schema)
    )


def update_weight_vector(
    dataset: Dataset,
    space: ReconstructedSpace,
    partition: Partition,
    protos: Prototypes,
    epsilon: float = 1e-12,
) -> WeightVector:
    """Refresh the shared attribute weight vector.

    Each attribute's importance is its average distance to other clusters'
    prototypes divided by its average distance to the assigned prototype
    (guarded by ``epsilon``); importances are normalized onto the simplex.
    Requires k >= 2.
    """
    k = protos.k
    if k < 2:
        raise ValueError("weight learning requires k >= 2")
    model = _model_reconstructed(dataset, space)
    member_sum, total_sum, _ = _weight_stats(
        model, protos.values, partition.to_zero_based(), k
    )
    return WeightVector(
        _weight_vector_from_stats(member_sum, total_sum, dataset.n, k, epsilon)
    )


def update_weight_matrix(
    dataset: Dataset,
    space: ReconstructedSpace,
    partition: Partition,
    protos: Prototypes,
    epsilon: float = 1e-12,
) -> WeightMatrix:
    """Refresh per-cluster weight rows.

    Row l weighs each attribute by its average distance from non-members to
    prototype l over its average distance from members (guarded by
    ``epsilon``). Degenerate clusters (no members, or covering every object)
    get a uniform row with a warning; the run loops re-seed empty clusters
    so neither case arises there.
    """
    k = protos.k
    if k < 2:
        raise ValueError("weight learning requires k >= 2")
    model = _model_reconstructed(dataset, space)
    member_sum, total_sum, sizes = _weight_stats(
        model, protos.values, partition.to_zero_based(), k
    )
    return WeightMatrix(
        _weight_matrix_from_stats(member_sum, total_sum, sizes, dataset.n, epsilon)
    )


# ---------------------------------------------------------------------------
# Run loops.


@dataclass(frozen=True)
class Prepared:
    """Variant-specific immutable inputs shared by every run on a dataset."""

    variant: str
    model: _ColumnModel | None
    space: ReconstructedSpace | None
    encoded: np.ndarray | None
    reconstruct_s: float


def prepare(dataset: Dataset, variant: str, bins: int | None = None) -> Prepared:
    """Build the representation a variant clusters on, timing the build.

    The result is immutable and safe to share across concurrent seeded runs.
    """
    if variant not in VARIANTS:
        raise ConfigError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    start = time.perf_counter()
    model = space = encoded = None
    if variant in ("HARR-V", "HARR-M", "HAR"):
        view = discretize_numerical(dataset, bins=bins)
        table = build_base_distances(dataset, view)
        space = reconstruct(dataset, table)
        model = _model_reconstructed(dataset, space)
    elif variant == "BD":
        view = discretize_numerical(dataset, bins=bins)
        table = build_base_distances(dataset, view)
        model = _model_original(dataset, table)
    elif variant in ("KMD", "KPT"):
        if variant == "KMD" and dataset.schema.d_u > 0:
            raise ConfigError(
                "KMD handles pure categorical data only; use KPT for mixed data"
            )
        model = _model_original(dataset)
    else:  # OHE+OC
        encoded = encode_ohe_oc(dataset)
    return Prepared(variant, model, space, encoded, time.perf_counter() - start)


def run(dataset: Dataset, config: RunConfig) -> RunReport:
    """Prepare the variant's representation and execute one seeded run."""
    return run_prepared(dataset, prepare(dataset, config.variant, config.bins), config)


def run_harr_v(dataset: Dataset, config: RunConfig) -> RunReport:
    """Weight-vector learning run (requires ``config.variant == "HARR-V"``)."""
    if config.variant != "HARR-V":
        raise ConfigError(f"run_harr_v got variant {config.variant!r}")
    return run(dataset, config)


def run_harr_m(dataset: Dataset, config: RunConfig) -> RunReport:
    """Weight-matrix learning run (requires ``config.variant == "HARR-M"``)."""
    if config.variant != "HARR-M":
        raise ConfigError(f"run_harr_m got variant {config.variant!r}")
    return run(dataset, config)


def run_baseline(dataset: Dataset, config: RunConfig) -> RunReport:
    """One seeded run of a baseline variant (KMD, KPT, OHE+OC, BD, or HAR)."""
    if config.variant not in BASELINE_VARIANTS:
        raise ConfigError(
            f"run_baseline got variant {config.variant!r}; expected one of "
            f"{BASELINE_VARIANTS}"
        )
    return run(dataset, config)


def run_prepared(dataset: Dataset, prep: Prepared, config: RunConfig) -> RunReport:
    """Execute one seeded run on an already-prepared representation."""
    if prep.variant != config.variant:
        raise ConfigError(
            f"prepared for {prep.variant!r} but config asks for {config.variant!r}"
        )
    if config.k > dataset.n:
        raise ConfigError(f"k={config.k} exceeds the {dataset.n} available objects")
    rng = np.random.default_rng(config.seed)
    if config.variant == "OHE+OC":
        return _run_kmeans(dataset, prep, config, rng)
    weight_mode = {
        "HARR-V": "vector",
        "HARR-M": "matrix",
        "HAR": "frozen",
    }.get(config.variant, "none")
    return _run_alternating(dataset, prep, config, rng, weight_mode)


def _run_alternating(
    dataset: Dataset,
    prep: Prepared,
    config: RunConfig,
    rng: np.random.Generator,
    weight_mode: str,
) -> RunReport:
    model = prep.model
    n, m = model.n, model.m
    k = config.k
    started = time.perf_counter()
    weights_s = 0.0

    proto_vals = dataset.cells[rng.choice(n, size=k, replace=False)].copy()
    if weight_mode == "none":
        weights = None
    elif weight_mode == "matrix":
        weights = np.full((k, m), 1.0 / m)
    else:
        weights = np.full(m, 1.0 / m)

    trace_z: list[float] = []
    trace_updated: list[bool] = []
    trace_reseeded: list[bool] = []
    labels0 = None
    prev_inner: np.ndarray | None = None  # last partition seen (Q')
    prev_outer: np.ndarray | None = None  # partition at last weight refresh (Q'')
    inner_total = 0
    inner_count = 0
    updates = 0
    just_updated = False
    prev_z: float | None = None
    max_increase = 0.0
    converged = False
    inner_stable = False

    while True:
        scores = _scores(model, proto_vals, weights)
        labels0 = scores.argmin(axis=1)
        labels0, reseeded = _reseed_empty(labels0, scores, k)
        z = float(scores[np.arange(n), labels0].sum())
        if prev_z is not None and not just_updated:
            if not (reseeded or trace_reseeded[-1]):
                max_increase = max(max_increase, z - prev_z)
        trace_z.append(z)
        trace_updated.append(just_updated)
        trace_reseeded.append(reseeded)
        prev_z = z
        just_updated = False
        inner_total += 1
        inner_count += 1

        changed = prev_inner is None or not np.array_equal(labels0, prev_inner)
        if changed and inner_count < config.inner_cap:
            prev_inner = labels0
            proto_vals = _fit_prototypes(dataset.cells, labels0, k, dataset.schema)
            continue
        inner_stable = not changed
        if changed:
            prev_inner = labels0

        if weight_mode in ("none", "frozen"):
            converged = inner_stable
            break
        if prev_outer is not None and np.array_equal(labels0, prev_outer):
            converged = inner_stable
            break
        if updates >= config.outer_cap:
            converged = False
            break
        prev_outer = labels0
        t0 = time.perf_counter()
        member_sum, total_sum, sizes = _weight_stats(model, proto_vals, labels0, k)
        if weight_mode == "vector":
            weights = _weight_vector_from_stats(
                member_sum, total_sum, n, k, config.epsilon
            )
        else:
            weights = _weight_matrix_from_stats(
                member_sum, total_sum, sizes, n, config.epsilon
            )
        weights_s += time.perf_counter() - t0
        updates += 1
        just_updated = True
        inner_count = 0

    if converged:
        # terminal fixed-point entry: the stopping check re-evaluated an
        # unchanged state
        trace_z.append(trace_z[-1])
        trace_updated.append(False)
        trace_reseeded.append(False)

    cluster_s = time.perf_counter() - started - weights_s
    if weights is None:
        w_vec, w_mat = None, None
    elif weights.ndim == 1:
        w_vec, w_mat = tuple(float(x) for x in weights), None
    else:
        w_vec, w_mat = None, tuple(tuple(float(x) for x in row) for row in weights)
    return RunReport(
        variant=config.variant,
        k=k,
        seed=config.seed,
        labels=tuple(int(x) + 1 for x in labels0),
        weights=w_vec,
        weight_matrix=w_mat,
        trace_z=tuple(trace_z),
        trace_weights_updated=tuple(trace_updated),
        trace_reseeded=tuple(trace_reseeded),
        inner_iterations=inner_total,
        weight_updates=updates,
        converged=converged,
        inner_monotone=max_increase <= MONOTONE_TOLERANCE,
        max_inner_increase=max_increase,
        timings=PhaseTimings(prep.reconstruct_s, cluster_s, weights_s),
    )


def encode_ohe_oc(dataset: Dataset) -> np.ndarray:
    """Numeric encoding for the OHE+OC baseline: numerical attributes pass
    through, ordinal values become normalized ranks (t-1)/(v-1), nominal
    values become one-hot blocks (two different values sit at distance 2 in
    the squared-Euclidean geometry)."""
    cols: list[np.ndarray] = []
    for r, attr in enumerate(dataset.schema.attributes):
        col = dataset.cells[:, r]
        if attr.kind is AttributeKind.NUMERICAL:
            cols.append(col)
        elif attr.kind is AttributeKind.ORDINAL:
            cols.append((col - 1.0) / (attr.v - 1))
        else:
            onehot = np.zeros((dataset.n, attr.v))
            onehot[np.arange(dataset.n), col.astype(np.int64) - 1] = 1.0
            cols.extend(onehot.T)
    return np.column_stack(cols)


def _run_kmeans(
    dataset: Dataset, prep: Prepared, config: RunConfig, rng: np.random.Generator
) -> RunReport:
    encoded = prep.encoded
    n = encoded.shape[0]
    k = config.k
    started = time.perf_counter()
    centroids = encoded[rng.choice(n, size=k, replace=False)].copy()

    trace_z: list[float] = []
    trace_reseeded: list[bool] = []
    prev_labels: np.ndarray | None = None
    prev_z: float | None = None
    max_increase = 0.0
    converged = False
    iters = 0

    while True:
        sq = np.empty((n, k))
        for l in range(k):
            sq[:, l] = ((encoded - centroids[l]) ** 2).sum(axis=1)
        labels0 = sq.argmin(axis=1)
        labels0, reseeded = _reseed_empty(labels0, sq, k)
        z = float(sq[np.arange(n), labels0].sum())
        if prev_z is not None and not (reseeded or trace_reseeded[-1]):
            max_increase = max(max_increase, z - prev_z)
        trace_z.append(z)
        trace_reseeded.append(reseeded)
        prev_z = z
        iters += 1
        if prev_labels is not None and np.array_equal(labels0, prev_labels):
            converged = True
            break
        if iters >= config.inner_cap:
            break
        prev_labels = labels0
        for l in range(k):
            centroids[l] = encoded[labels0 == l].mean(axis=0)

    if converged:
        trace_z.append(trace_z[-1])
        trace_reseeded.append(False)

    return RunReport(
        variant=config.variant,
        k=k,
        seed=config.seed,
        labels=tuple(int(x) + 1 for x in labels0),
        weights=None,
        weight_matrix=None,
        trace_z=tuple(trace_z),
        trace_weights_updated=tuple([False] * len(trace_z)),
        trace_reseeded=tuple(trace_reseeded),
        inner_iterations=iters,
        weight_updates=0,
        converged=converged,
        inner_monotone=max_increase <= MONOTONE_TOLERANCE,
        max_inner_increase=max_increase,
        timings=PhaseTimings(
            prep.reconstruct_s, time.perf_counter() - started, 0.0
        ),
    )
