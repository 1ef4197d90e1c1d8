"""Experiment orchestration: methods x models x replicates, with CSV results.

Every replicate generates (or splits off) its own train/test data; all
methods within a replicate share that data. Augmentation methods train on the
original rows plus an equal number of new rows; the plain baseline trains on
a bootstrap of the same total size, so every model sees exactly 2T rows.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .augment import (
    FsgmConfig,
    bootstrap,
    fsgm_augment,
    group_swap_augment,
    vanilla_mixup,
)
from .data import ALL_SUBGROUPS, Dataset, concat, subgroup_indices
from .metrics import EvalResult, evaluate
from .models import ForestSpec, MlpSpec, TrainedModel, train_forest, train_mlp
from .rng import STREAM_OFFSETS, RngStream, derive_seed
from .synth import (
    SCENARIO_NAMES,
    ScenarioConfig,
    ShiftSpec,
    balanced_test_config,
    gen_conditional_gaussian,
    preset_scenario,
)
from .tabular import CsvSchema, dump_augmented_csv, load_csv

METHODS = ("original", "fsgm", "vanilla-mixup", "group-swap")
MODEL_KINDS = ("forest", "mlp")
ALPHA_METHODS = ("fsgm", "vanilla-mixup")
DEFAULT_ALPHA_GRID = (0.1, 0.5, 1.0, 2.0, 4.0)

# Default interpolation directions per data source: which subgroups donate
# samples and which they are pulled toward.
DEFAULT_PAIRS = {
    "unbalanced-groups": (((0, 0), (1, 0)), ((1, 0), (0, 0))),
    "unbalanced-class": (((1, 0), (1, 1)), ((1, 1), (1, 0))),
    "underrepresented-subgroup": (((1, 0), (1, 1)), ((1, 0), (0, 0))),
    "csv": (((1, 0), (0, 0)), ((0, 0), (1, 0))),
}


@dataclass(frozen=True)
class ExperimentConfig:
    """Everything run_experiment needs; exactly one data source must be set."""

    scenario: str | None = None
    csv_path: str | None = None
    csv_schema: CsvSchema | None = None
    methods: tuple[str, ...] = METHODS
    models: tuple[str, ...] = MODEL_KINDS
    replicates: int = 5
    alpha_grid: tuple[float, ...] = DEFAULT_ALPHA_GRID
    fixed_alpha: float | None = None
    seed: int = 0
    test_fraction: float = 0.3
    validation_fraction: float = 0.25
    pairs: tuple | None = None
    k: int = 5
    standardize_knn: bool | None = None  # None: on for CSV data, off for synthetic
    shifts: ShiftSpec | None = None
    counts: object = None  # optional 2x2 override of scenario training counts
    forest: ForestSpec = field(default_factory=ForestSpec)
    mlp: MlpSpec = field(default_factory=MlpSpec)
    leaky_alpha_selection: bool = False
    dump_augmented: str | None = None
    out: str | None = None

    def __post_init__(self):
        has_scenario = self.scenario is not None
        has_csv = self.csv_path is not None
        if has_scenario == has_csv:
            raise ValueError("exactly one of scenario and csv_path must be set")
        if has_scenario and self.scenario not in SCENARIO_NAMES:
            raise ValueError(
                f"unknown scenario {self.scenario!r}; choose from {SCENARIO_NAMES}"
            )
        if has_csv and self.csv_schema is None:
            raise ValueError("csv_path requires csv_schema")
        if not self.methods:
            raise ValueError("methods must be nonempty")
        unknown = [m for m in self.methods if m not in METHODS]
        if unknown:
            raise ValueError(f"unknown methods {unknown}; choose from {METHODS}")
        unknown = [m for m in self.models if m not in MODEL_KINDS]
        if not self.models or unknown:
            raise ValueError(f"models must be a nonempty subset of {MODEL_KINDS}")
        if self.replicates < 1:
            raise ValueError("replicates must be >= 1")
        if not self.alpha_grid and self.fixed_alpha is None:
            raise ValueError("alpha_grid must be nonempty unless fixed_alpha is set")


@dataclass(frozen=True)
class MethodRun:
    """One augment-and-train pass: the model plus what it was trained on."""

    method: str
    alpha: float | None
    model: TrainedModel
    train_data: Dataset
    origins: tuple[str, ...]


@dataclass(frozen=True)
class ResultRow:
    method: str
    model: str
    replicate: int
    alpha: float | None
    accuracy: float
    dp_gap_signed: float
    fairness: float
    train_size: int
    seed: int


@dataclass(frozen=True)
class CellError:
    method: str
    model: str
    replicate: int
    message: str


@dataclass
class ResultTable:
    rows: list[ResultRow] = field(default_factory=list)
    errors: list[CellError] = field(default_factory=list)
    metadata: dict = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)


RESULTS_HEADER = "method,model,replicate,alpha,accuracy,dp_gap_signed,fairness,train_size,seed"


def train_test_split(dataset: Dataset, test_fraction: float, seed: int):
    """Stratified split: every subgroup with >= 2 members lands in both parts.

    Single-member subgroups go to the training part. Row order within each
    part follows the original dataset, so output is stable under a fixed seed.
    """
    if not 0.0 < test_fraction < 1.0:
        raise ValueError(f"test_fraction must be in (0, 1), got {test_fraction}")
    if len(dataset) < 2:
        raise ValueError(f"cannot split {len(dataset)} sample(s)")
    stream = RngStream(seed, (STREAM_OFFSETS["split"],))
    train_idx, test_idx = [], []
    for key in ALL_SUBGROUPS:
        members = subgroup_indices(dataset, key)
        if members.size == 0:
            continue
        if members.size == 1:
            train_idx.append(members)
            continue
        perm = stream.gen.permutation(members)
        n_test = int(round(members.size * test_fraction))
        n_test = min(max(n_test, 1), members.size - 1)
        test_idx.append(perm[:n_test])
        train_idx.append(perm[n_test:])
    if not train_idx or not test_idx:
        raise ValueError("degenerate split: one side would be empty")
    train = dataset.subset(np.sort(np.concatenate(train_idx)))
    test = dataset.subset(np.sort(np.concatenate(test_idx)))
    return train, test


def _resolve_pairs(config: ExperimentConfig):
    if config.pairs is not None:
        return tuple(config.pairs)
    key = config.scenario if config.scenario is not None else "csv"
    return DEFAULT_PAIRS[key]


def _resolve_standardize(config: ExperimentConfig) -> bool:
    if config.standardize_knn is not None:
        return config.standardize_knn
    return config.csv_path is not None


def _train_model(data: Dataset, model_kind: str, config: ExperimentConfig, seed: int):
    model_seed = derive_seed(seed, STREAM_OFFSETS["model-init"])
    if model_kind == "forest":
        return train_forest(data.x, data.y, dataclasses.replace(config.forest, seed=model_seed))
    if model_kind == "mlp":
        return train_mlp(data.x, data.y, dataclasses.replace(config.mlp, seed=model_seed))
    raise ValueError(f"unknown model kind {model_kind!r}")


def run_method(
    train: Dataset,
    method: str,
    model_kind: str,
    config: ExperimentConfig,
    seed: int,
    alpha: float | None = None,
) -> MethodRun:
    """Augment to exactly 2T rows, then fit the requested model."""
    t = len(train)
    aug_seed = derive_seed(seed, STREAM_OFFSETS["augmentation"])
    if method == "original":
        data = bootstrap(train, 2 * t, derive_seed(seed, STREAM_OFFSETS["bootstrap"]))
        origins = ("original",) * t + ("bootstrap",) * t
    elif method == "fsgm":
        report = fsgm_augment(
            train,
            FsgmConfig(
                pairs=_resolve_pairs(config),
                new_count=t,
                k=config.k,
                alpha=alpha if alpha is not None else 1.0,
                seed=aug_seed,
                standardize=_resolve_standardize(config),
            ),
        )
        data = concat(train, report.produced)
        origins = ("original",) * t + ("fsgm",) * t
    elif method == "vanilla-mixup":
        produced = vanilla_mixup(train, t, alpha if alpha is not None else 1.0, aug_seed)
        data = concat(train, produced)
        origins = ("original",) * t + ("vanilla",) * t
    elif method == "group-swap":
        produced = group_swap_augment(train, t, aug_seed)
        data = concat(train, produced)
        origins = ("original",) * t + ("swap",) * t
    else:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
    if len(data) != 2 * t:
        raise RuntimeError(
            f"budget parity violated: method {method} produced {len(data)} rows, expected {2 * t}"
        )
    model = _train_model(data, model_kind, config, seed)
    return MethodRun(method=method, alpha=alpha, model=model, train_data=data, origins=origins)


def alpha_search(
    train: Dataset,
    method: str,
    model_kind: str,
    config: ExperimentConfig,
    seed: int,
    holdout: Dataset | None = None,
):
    """Pick the grid alpha with the best validation accuracy + fairness.

    By default each alpha is scored on an internal stratified split of the
    training data, so no test information leaks into the choice. Passing a
    holdout scores on it directly instead. All alphas share the same split
    and the same downstream seeds; ties go to the smaller alpha.
    """
    if not config.alpha_grid:
        raise ValueError("alpha grid is empty")
    if holdout is None:
        inner_train, inner_val = train_test_split(
            train, config.validation_fraction,
            derive_seed(seed, STREAM_OFFSETS["alpha-search"]),
        )
    else:
        inner_train, inner_val = train, holdout
    inner_seed = derive_seed(seed, STREAM_OFFSETS["alpha-search"], 1)
    scores: dict[float, float] = {}
    best_alpha, best_score = None, -np.inf
    for alpha in sorted(config.alpha_grid):
        run = run_method(inner_train, method, model_kind, config, inner_seed, alpha=alpha)
        result = evaluate(run.model, inner_val)
        score = result.accuracy + result.fairness
        scores[alpha] = score
        if score > best_score:
            best_alpha, best_score = alpha, score
    return best_alpha, scores


def _dump_path(base: str, method: str) -> str:
    p = Path(base)
    suffix = p.suffix if p.suffix else ".csv"
    return str(p.with_name(f"{p.stem}.{method}{suffix}"))


def _replicate_data(config: ExperimentConfig, full: Dataset | None, rep_seed: int):
    if config.scenario is not None:
        preset = preset_scenario(config.scenario)
        shifts = config.shifts if config.shifts is not None else preset.shifts
        counts = preset.counts if config.counts is None else np.asarray(config.counts)
        train = gen_conditional_gaussian(
            ScenarioConfig(counts=counts, shifts=shifts,
                           seed=derive_seed(rep_seed, STREAM_OFFSETS["data-gen"]))
        )
        test = gen_conditional_gaussian(
            balanced_test_config(shifts, derive_seed(rep_seed, STREAM_OFFSETS["test-gen"]))
        )
        return train, test
    return train_test_split(full, config.test_fraction, rep_seed)


def run_experiment(config: ExperimentConfig) -> ResultTable:
    """Run every (method, model, replicate) cell; failures become error rows."""
    full = None
    if config.csv_path is not None:
        full = load_csv(config.csv_path, config.csv_schema)
    table = ResultTable()
    table.metadata = {
        "source": config.scenario if config.scenario is not None else config.csv_path,
        "pairs": repr(_resolve_pairs(config)),
        "methods": ",".join(config.methods),
        "models": ",".join(config.models),
        "replicates": config.replicates,
        "seed": config.seed,
        "alpha_grid": ",".join(str(a) for a in sorted(config.alpha_grid)),
        "knn_standardize": _resolve_standardize(config),
    }
    table.notes = [
        "alpha grid searched: " + table.metadata["alpha_grid"]
        + (" (leaky holdout selection)" if config.leaky_alpha_selection
           else " (internal validation selection)"),
        ("test sets are balanced at 500 samples per subgroup"
         if config.scenario is not None
         else f"test sets are stratified {config.test_fraction:g} fractions of the CSV"),
        f"forest defaults: {config.forest}",
        f"mlp defaults: {config.mlp}",
    ]
    for r in range(config.replicates):
        rep_seed = derive_seed(config.seed, r)
        train, test = _replicate_data(config, full, rep_seed)
        for mi, method in enumerate(config.methods):
            for ki, model_kind in enumerate(config.models):
                cell_seed = derive_seed(rep_seed, 100 + mi, ki)
                try:
                    alpha = None
                    if method in ALPHA_METHODS:
                        if config.fixed_alpha is not None:
                            alpha = config.fixed_alpha
                        else:
                            alpha, _ = alpha_search(
                                train, method, model_kind, config, cell_seed,
                                holdout=test if config.leaky_alpha_selection else None,
                            )
                    run = run_method(train, method, model_kind, config, cell_seed, alpha=alpha)
                    result: EvalResult = evaluate(run.model, test)
                    table.rows.append(ResultRow(
                        method=method,
                        model=model_kind,
                        replicate=r,
                        alpha=alpha,
                        accuracy=result.accuracy,
                        dp_gap_signed=result.dp_gap_signed,
                        fairness=result.fairness,
                        train_size=len(run.train_data),
                        seed=rep_seed,
                    ))
                    if config.dump_augmented and r == 0 and ki == 0:
                        dump_augmented_csv(
                            _dump_path(config.dump_augmented, method),
                            run.train_data, run.origins,
                        )
                except Exception as exc:  # noqa: BLE001 - cell isolation is the contract
                    table.errors.append(CellError(method, model_kind, r, str(exc)))
    table.rows.sort(key=lambda row: (row.method, row.model, row.replicate))
    table.errors.sort(key=lambda err: (err.method, err.model, err.replicate))
    return table


def emit_results(table: ResultTable, path) -> str:
    """Write the results CSV and print a mean/std summary per method x model."""
    lines = [RESULTS_HEADER]
    for row in table.rows:
        alpha = "" if row.alpha is None else f"{row.alpha:.6f}"
        lines.append(
            f"{row.method},{row.model},{row.replicate},{alpha},"
            f"{row.accuracy:.6f},{row.dp_gap_signed:.6f},{row.fairness:.6f},"
            f"{row.train_size},{row.seed}"
        )
    Path(path).write_text("\n".join(lines) + "\n")

    print(f"results: {path} ({len(table.rows)} rows, {len(table.errors)} failed cells)")
    groups: dict[tuple[str, str], list[ResultRow]] = {}
    for row in table.rows:
        groups.setdefault((row.method, row.model), []).append(row)
    for (method, model), rows in sorted(groups.items()):
        acc = np.array([r.accuracy for r in rows])
        fair = np.array([r.fairness for r in rows])
        print(
            f"  {method:>13s} x {model:<6s}  accuracy {acc.mean():.3f} +/- {acc.std():.3f}"
            f"  fairness {fair.mean():.3f} +/- {fair.std():.3f}  (n={len(rows)})"
        )
    for err in table.errors:
        print(f"  FAILED {err.method} x {err.model} replicate {err.replicate}: {err.message}")
    for note in table.notes:
        print(f"  note: {note}")
    return str(path)
