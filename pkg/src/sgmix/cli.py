"""Command-line entry point: run an experiment and write the results CSV.

Settings come from three layers: built-in defaults, then a `key = value`
config file (--config), then command-line flags; later layers win. Exactly
one data source must end up set: a named scenario or a CSV path.
"""
from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from .harness import (
    DEFAULT_ALPHA_GRID,
    METHODS,
    MODEL_KINDS,
    ExperimentConfig,
    emit_results,
    run_experiment,
)
from .models import ForestSpec, MlpSpec
from .synth import SCENARIO_NAMES, ShiftSpec
from .tabular import CsvSchema, load_config

KNOWN_KEYS = {
    "experiment.seed", "experiment.replicates", "experiment.methods",
    "experiment.models", "experiment.alpha_grid", "experiment.test_fraction",
    "experiment.validation_fraction", "experiment.leaky_alpha_selection",
    "experiment.out",
    "scenario.name", "scenario.class_shift", "scenario.group_shift",
    "scenario.angle", "scenario.dim",
    "scenario.t00", "scenario.t01", "scenario.t10", "scenario.t11",
    "fsgm.k", "fsgm.alpha", "fsgm.pairs", "fsgm.standardize",
    "forest.n_trees", "forest.max_depth", "forest.min_leaf",
    "forest.features_per_split",
    "mlp.hidden_units", "mlp.epochs", "mlp.learning_rate", "mlp.batch_size",
    "csv.path", "csv.features", "csv.label_column", "csv.label_positive",
    "csv.label_negative", "csv.group_column", "csv.group_positive",
    "csv.group_negative", "csv.delimiter",
    "output.dump_augmented",
}

_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def _parse_bool(value: str, key: str) -> bool:
    low = value.lower()
    if low in _TRUE:
        return True
    if low in _FALSE:
        return False
    raise ValueError(f"{key}: expected a boolean, got {value!r}")


def _parse_pairs(text: str):
    """Parse `y,z->y,z` pairs separated by semicolons."""
    pairs = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        if "->" not in part:
            raise ValueError(f"bad pair {part!r}; expected like 1,0->0,0")
        src, tgt = part.split("->", 1)
        sy, sz = (int(v) for v in src.split(","))
        ty, tz = (int(v) for v in tgt.split(","))
        pairs.append(((sy, sz), (ty, tz)))
    if not pairs:
        raise ValueError(f"no pairs in {text!r}")
    return tuple(pairs)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sgmix",
        description="Subgroup-mixup fairness experiments on synthetic or CSV data.",
    )
    parser.add_argument("--config", help="path to a key = value config file")
    parser.add_argument("--seed", type=int, help="master seed (default 0)")
    parser.add_argument("--scenario", choices=SCENARIO_NAMES,
                        help="named synthetic scenario")
    parser.add_argument("--csv", help="path to a CSV dataset (needs csv.* schema keys)")
    parser.add_argument("--out", help="path for the results CSV")
    parser.add_argument("--methods", help="comma list from: " + ",".join(METHODS))
    parser.add_argument("--models", help="comma list from: " + ",".join(MODEL_KINDS))
    parser.add_argument("--replicates", type=int)
    parser.add_argument("--alpha-grid", help="comma list of positive reals")
    parser.add_argument("--alpha", type=float,
                        help="fixed mixing alpha; disables the grid search")
    parser.add_argument("--k", type=int, help="neighbors per source draw")
    parser.add_argument("--test-fraction", type=float)
    parser.add_argument("--dump-augmented",
                        help="base path; per-method augmented training sets "
                             "of replicate 0 are written next to it")
    parser.add_argument("--leaky-alpha-selection", action="store_true", default=None,
                        help="select alpha on the test set (leaks test data; "
                             "off by default)")
    return parser


def _merged_settings(args) -> dict[str, str]:
    settings: dict[str, str] = {}
    if args.config:
        file_settings = load_config(args.config)
        unknown = sorted(set(file_settings) - KNOWN_KEYS)
        if unknown:
            raise ValueError(f"unknown config keys: {unknown}")
        settings.update(file_settings)
    cli_map = {
        "experiment.seed": args.seed,
        "scenario.name": args.scenario,
        "csv.path": args.csv,
        "experiment.out": args.out,
        "experiment.methods": args.methods,
        "experiment.models": args.models,
        "experiment.replicates": args.replicates,
        "experiment.alpha_grid": args.alpha_grid,
        "fsgm.alpha": args.alpha,
        "fsgm.k": args.k,
        "experiment.test_fraction": args.test_fraction,
        "output.dump_augmented": args.dump_augmented,
        "experiment.leaky_alpha_selection": args.leaky_alpha_selection,
    }
    for key, value in cli_map.items():
        if value is not None:
            settings[key] = str(value)
    return settings


def _schema_from(settings: dict[str, str]) -> CsvSchema:
    required = ("csv.features", "csv.label_column", "csv.label_positive",
                "csv.group_column", "csv.group_positive")
    missing = [key for key in required if key not in settings]
    if missing:
        raise ValueError(f"CSV input needs config keys: {missing}")
    return CsvSchema(
        feature_columns=tuple(
            name.strip() for name in settings["csv.features"].split(",") if name.strip()
        ),
        label_column=settings["csv.label_column"],
        label_positive=settings["csv.label_positive"],
        label_negative=settings.get("csv.label_negative"),
        group_column=settings["csv.group_column"],
        group_positive=settings["csv.group_positive"],
        group_negative=settings.get("csv.group_negative"),
        delimiter=settings.get("csv.delimiter", ","),
    )


def config_from_settings(settings: dict[str, str]) -> tuple[ExperimentConfig, str]:
    scenario = settings.get("scenario.name")
    csv_path = settings.get("csv.path")
    out = settings.get("experiment.out")
    if out is None:
        raise ValueError("an output path is required (--out or experiment.out)")

    shifts = None
    shift_keys = ("scenario.class_shift", "scenario.group_shift",
                  "scenario.angle", "scenario.dim")
    if scenario is not None and any(key in settings for key in shift_keys):
        from .synth import preset_scenario

        base = preset_scenario(scenario).shifts
        shifts = ShiftSpec(
            class_shift_magnitude=float(settings.get("scenario.class_shift",
                                                     base.class_shift_magnitude)),
            group_shift_magnitude=float(settings.get("scenario.group_shift",
                                                     base.group_shift_magnitude)),
            angle=float(settings.get("scenario.angle", base.angle)),
            dim=int(settings.get("scenario.dim", base.dim)),
        )
    counts = None
    count_keys = ("scenario.t00", "scenario.t01", "scenario.t10", "scenario.t11")
    if scenario is not None and any(key in settings for key in count_keys):
        from .synth import preset_scenario

        counts = np.array(preset_scenario(scenario).counts)
        for key in count_keys:
            if key in settings:
                y, z = int(key[-2]), int(key[-1])
                counts[y, z] = int(settings[key])

    forest = ForestSpec(
        n_trees=int(settings.get("forest.n_trees", 100)),
        max_depth=int(settings.get("forest.max_depth", 8)),
        min_leaf=int(settings.get("forest.min_leaf", 2)),
        features_per_split=(int(settings["forest.features_per_split"])
                            if "forest.features_per_split" in settings else None),
    )
    mlp = MlpSpec(
        hidden_units=int(settings.get("mlp.hidden_units", 32)),
        epochs=int(settings.get("mlp.epochs", 200)),
        learning_rate=float(settings.get("mlp.learning_rate", 0.01)),
        batch_size=int(settings.get("mlp.batch_size", 32)),
    )
    alpha_grid = DEFAULT_ALPHA_GRID
    if "experiment.alpha_grid" in settings:
        alpha_grid = tuple(float(v) for v in settings["experiment.alpha_grid"].split(","))
    config = ExperimentConfig(
        scenario=scenario,
        csv_path=csv_path,
        csv_schema=_schema_from(settings) if csv_path is not None else None,
        methods=(tuple(m.strip() for m in settings["experiment.methods"].split(","))
                 if "experiment.methods" in settings else METHODS),
        models=(tuple(m.strip() for m in settings["experiment.models"].split(","))
                if "experiment.models" in settings else MODEL_KINDS),
        replicates=int(settings.get("experiment.replicates", 5)),
        alpha_grid=alpha_grid,
        fixed_alpha=(float(settings["fsgm.alpha"]) if "fsgm.alpha" in settings else None),
        seed=int(settings.get("experiment.seed", 0)),
        test_fraction=float(settings.get("experiment.test_fraction", 0.3)),
        validation_fraction=float(settings.get("experiment.validation_fraction", 0.25)),
        pairs=(_parse_pairs(settings["fsgm.pairs"]) if "fsgm.pairs" in settings else None),
        k=int(settings.get("fsgm.k", 5)),
        standardize_knn=(_parse_bool(settings["fsgm.standardize"], "fsgm.standardize")
                         if "fsgm.standardize" in settings else None),
        shifts=shifts,
        counts=counts,
        forest=forest,
        mlp=mlp,
        leaky_alpha_selection=(
            _parse_bool(settings["experiment.leaky_alpha_selection"],
                        "experiment.leaky_alpha_selection")
            if "experiment.leaky_alpha_selection" in settings else False),
        dump_augmented=settings.get("output.dump_augmented"),
        out=out,
    )
    return config, out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = _merged_settings(args)
        config, out = config_from_settings(settings)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if not math.isfinite(config.test_fraction):
        print("error: test_fraction must be finite", file=sys.stderr)
        return 2
    table = run_experiment(config)
    emit_results(table, out)
    if table.errors and not table.rows:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
