"""Command-line front end.

    python -m driftmem.cli.main generate sea_s --n 100000 --seed 7 --out streams
    python -m driftmem.cli.main run --dataset sea_s --n 20000 --seed 1 --seed 2 --dam3.ws 50
    python -m driftmem.cli.main compare --config experiment.json --out runs

Configuration precedence: built-in defaults < --config file < flags.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from joblib import Parallel, delayed
from pydantic import BaseModel, ValidationError

from driftmem.config import require_data_dir, worker_cap
from driftmem.core.datasets import MinMaxNormalizer, dataset_schema, load_csv_dataset
from driftmem.core.types import LabeledInstance
from driftmem.errors import ConfigError, DriftmemError
from driftmem.evaluation.export import diagnostics_export, write_csv
from driftmem.evaluation.prequential import prequential_run
from driftmem.generators.presets import preset_metadata, preset_stream
from driftmem.models.dam3 import Dam3Model
from driftmem.models.samknn import SamKnnBaseline
from driftmem.presets.preset_store import canonical_name, is_preset
from driftmem.schemas.models import Dam3Config, DatasetSchema, ExperimentConfig, SmoteConfig
from driftmem.telemetry.logging_setup import configure_logging
from driftmem.telemetry.run_context import run_metadata

logger = logging.getLogger(__name__)

MODELS = {"dam3": Dam3Model, "samknn-baseline": SamKnnBaseline}
COMPARED = ("dam3", "samknn-baseline")
# schema of files written by `generate`
GENERATED_SCHEMA = DatasetSchema(label_column="label", positive_value="1", negative_value="-1")
AGGREGATE_FIELDS = (
    "balanced_accuracy",
    "g_mean",
    "recall_pos",
    "recall_neg",
    "drift_events",
    "compression_events",
    "minority_lost",
    "final_ltm_ir",
)

EXIT_OK, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2


# argument parsing


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _scalar_fields(model: type) -> List[Tuple[str, type]]:
    out = []
    for name, info in model.model_fields.items():
        annotation = info.annotation
        if isinstance(annotation, type) and issubclass(annotation, BaseModel):
            continue
        kind = float if annotation is float else int
        out.append((name, kind))
    return out


def _add_experiment_args(parser: argparse.ArgumentParser, with_model: bool) -> None:
    parser.add_argument("--config", help="JSON file with flat dotted keys, e.g. {\"dam3.ws\": 50}")
    parser.add_argument("--dataset", "--preset", dest="dataset", help="preset name or CSV path")
    parser.add_argument("--label-column", dest="label_column")
    parser.add_argument("--positive-value", dest="positive_value")
    parser.add_argument("--normalize", action="store_const", const=True, default=None)
    if with_model:
        parser.add_argument("--model", choices=sorted(MODELS))
    parser.add_argument("--seed", dest="seeds", action="append", type=int, help="repeatable")
    parser.add_argument("--n", type=positive_int)
    parser.add_argument("--window", type=positive_int)
    parser.add_argument("--threads", type=positive_int)
    parser.add_argument("--out")
    parser.add_argument("--log-level", dest="log_level")
    for name, kind in _scalar_fields(Dam3Config):
        parser.add_argument(f"--dam3.{name}", dest=f"dam3.{name}", type=kind)
    for name, kind in _scalar_fields(SmoteConfig):
        parser.add_argument(f"--dam3.smote.{name}", dest=f"dam3.smote.{name}", type=kind)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="driftmem", description="Drift-aware memory models for imbalanced streams")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a preset stream to CSV plus a metadata JSON")
    gen.add_argument("preset")
    gen.add_argument("--n", type=positive_int)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", default="streams")
    gen.add_argument("--log-level", dest="log_level")

    run = sub.add_parser("run", help="prequential run of one model over one or more seeds")
    _add_experiment_args(run, with_model=True)

    compare = sub.add_parser("compare", help="run dam3 and the baseline on identical streams")
    _add_experiment_args(compare, with_model=False)
    return parser


# configuration


def _unflatten(flat: Dict[str, Any]) -> Dict[str, Any]:
    nested: Dict[str, Any] = {}
    for key, value in flat.items():
        node = nested
        parts = key.split(".")
        for part in parts[:-1]:
            node = node.setdefault(part, {})
            if not isinstance(node, dict):
                raise ConfigError(f"config key {key!r} conflicts with a scalar value")
        node[parts[-1]] = value
    return nested


def read_config_file(path: str) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config file {path} is not valid JSON: {exc}")
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must hold a JSON object")
    return data


def _flatten(data: Dict[str, Any], prefix: str = "") -> Dict[str, Any]:
    flat: Dict[str, Any] = {}
    for key, value in data.items():
        full = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(_flatten(value, f"{full}."))
        else:
            flat[full] = value
    return flat


def load_experiment(args: argparse.Namespace) -> ExperimentConfig:
    flat: Dict[str, Any] = {}
    if args.config:
        flat.update(_flatten(read_config_file(args.config)))
    for key, value in vars(args).items():
        if key in ("command", "config", "log_level") or value is None:
            continue
        flat[key] = value
    if "dataset" not in flat:
        raise ConfigError("no dataset given: pass --dataset or set \"dataset\" in the config file")
    return ExperimentConfig.model_validate(_unflatten(flat))


# datasets


def resolve_dataset_path(dataset: str) -> Path:
    path = Path(dataset)
    if path.is_file():
        return path
    candidate = require_data_dir() / dataset
    if candidate.is_file():
        return candidate
    raise ConfigError(f"dataset {dataset!r} is neither a preset nor an existing CSV file")


def load_stream(config: ExperimentConfig, seed: int) -> Tuple[str, List[LabeledInstance]]:
    if is_preset(config.dataset):
        name = canonical_name(config.dataset)
        return name, list(preset_stream(name, config.n, seed))

    path = resolve_dataset_path(config.dataset)
    if config.label_column and config.positive_value is not None:
        schema = DatasetSchema(label_column=config.label_column, positive_value=config.positive_value)
    else:
        schema = dataset_schema(path.name) or GENERATED_SCHEMA
    instances = load_csv_dataset(path, schema)
    if config.normalize:
        instances = MinMaxNormalizer().fit_transform(instances)
    if config.n is not None:
        instances = instances[: config.n]
    return path.name, instances


# runs


def run_one(config: ExperimentConfig, model_name: str, seed: int, out_dir: str, log_level: Optional[str]) -> Dict[str, Any]:
    """One seed of one model, end to end; executed inside a pool worker."""
    configure_logging(log_level)
    dataset, instances = load_stream(config, seed)
    model_config = config.dam3.model_copy(update={"seed": seed})
    model = MODELS[model_name](model_config)
    logger.info("run start: model=%s dataset=%s seed=%d n=%d", model_name, dataset, seed, len(instances))

    result = prequential_run(model, instances, window=config.window)
    metadata = run_metadata(model_name, dataset, seed, model_config.model_dump())
    files = diagnostics_export(result, out_dir, dataset=dataset, seed=seed, run_metadata=metadata)
    summary = json.loads(files["summary"].read_text(encoding="utf-8"))

    return {
        "model": model_name,
        "seed": seed,
        "dir": out_dir,
        "n": len(instances),
        "verified": verify_run(files, len(instances)),
        "summary": summary,
        "ltm_ir": [row["ltm_ir"] for row in (result.diagnostics or [])],
    }


def verify_run(files: Dict[str, Path], n: int) -> bool:
    ok = True
    for kind in ("metrics", "diagnostics"):
        rows = len(pd.read_csv(files[kind]))
        if rows != n:
            logger.error("row count mismatch in %s: %d rows for %d instances", files[kind], rows, n)
            ok = False
    return ok


def _run_all(config: ExperimentConfig, models: Sequence[str], out: Path, log_level: Optional[str]) -> List[Dict[str, Any]]:
    jobs = [(m, s, str(out / m / f"seed_{s}")) for m in models for s in config.seeds]
    n_jobs = min(worker_cap(config.threads), len(jobs))
    return Parallel(n_jobs=n_jobs)(
        delayed(run_one)(config, model, seed, out_dir, log_level) for model, seed, out_dir in jobs
    )


def _field_values(runs: List[Dict[str, Any]], field: str) -> List[float]:
    values = []
    for run in runs:
        summary = run["summary"]
        value = summary["metrics"][field] if field in summary["metrics"] else summary.get(field)
        values.append(np.nan if value is None else float(value))
    return values


def aggregate(runs: List[Dict[str, Any]]) -> Dict[str, Dict[str, Optional[float]]]:
    """Mean and population std of each summary field over seeds (undefined values skipped)."""
    out: Dict[str, Dict[str, Optional[float]]] = {}
    for field in AGGREGATE_FIELDS:
        values = np.array(_field_values(runs, field))
        defined = values[~np.isnan(values)]
        if len(defined):
            out[field] = {"mean": float(defined.mean()), "std": float(defined.std())}
        else:
            out[field] = {"mean": None, "std": None}
    return out


def cmd_generate(args: argparse.Namespace) -> int:
    name = canonical_name(args.preset)
    meta = preset_metadata(name, args.n, args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    stem = f"{name.lower()}_n{meta.n}_seed{args.seed}"

    instances = list(preset_stream(name, meta.n, args.seed))
    frame = pd.DataFrame(
        np.vstack([inst.features for inst in instances]),
        columns=[f"f{i + 1}" for i in range(meta.n_features)],
    )
    frame["label"] = [int(inst.label) for inst in instances]
    csv_path = out / f"{stem}.csv"
    frame.to_csv(csv_path, index=False, float_format="%.17g", lineterminator="\n")
    (out / f"{stem}.json").write_text(meta.model_dump_json(indent=2) + "\n", encoding="utf-8")
    logger.info("generated %s: %d rows, change points %s", csv_path, len(instances), meta.change_points)
    print(csv_path)
    return EXIT_OK if len(pd.read_csv(csv_path)) == meta.n else EXIT_VERIFY


def cmd_run(args: argparse.Namespace) -> int:
    config = load_experiment(args)
    out = Path(config.out)
    runs = _run_all(config, [config.model], out, args.log_level)
    aggregate_path = out / config.model / "aggregate.json"
    aggregate_path.write_text(
        json.dumps({"model": config.model, "seeds": config.seeds, "aggregate": aggregate(runs)}, indent=2) + "\n",
        encoding="utf-8",
    )
    print(aggregate_path)
    return EXIT_OK if all(r["verified"] for r in runs) else EXIT_VERIFY


def compare_table(dam3_runs: List[Dict[str, Any]], baseline_runs: List[Dict[str, Any]]) -> pd.DataFrame:
    dam3, baseline = aggregate(dam3_runs), aggregate(baseline_runs)
    rows = []
    for field in AGGREGATE_FIELDS:
        a, b = dam3[field]["mean"], baseline[field]["mean"]
        delta = a - b if a is not None and b is not None else None
        rows.append({"metric": field, "dam3_mean": a, "baseline_mean": b, "delta": delta})
    return pd.DataFrame(rows, columns=["metric", "dam3_mean", "baseline_mean", "delta"])


def _as_float(values: List[Optional[float]]) -> np.ndarray:
    return np.array([np.nan if v is None else v for v in values], dtype=np.float64)


def ltm_ir_trajectories(dam3_runs: List[Dict[str, Any]], baseline_runs: List[Dict[str, Any]]) -> pd.DataFrame:
    by_seed = {r["seed"]: r for r in baseline_runs}
    frames = []
    for run in dam3_runs:
        other = by_seed[run["seed"]]
        frames.append(
            pd.DataFrame(
                {
                    "seed": run["seed"],
                    "t": np.arange(len(run["ltm_ir"])),
                    "dam3_ltm_ir": _as_float(run["ltm_ir"]),
                    "baseline_ltm_ir": _as_float(other["ltm_ir"]),
                }
            )
        )
    if not frames:
        return pd.DataFrame(columns=["seed", "t", "dam3_ltm_ir", "baseline_ltm_ir"])
    return pd.concat(frames, ignore_index=True)


def cmd_compare(args: argparse.Namespace) -> int:
    config = load_experiment(args)
    out = Path(config.out)
    runs = _run_all(config, COMPARED, out, args.log_level)
    dam3_runs = [r for r in runs if r["model"] == "dam3"]
    baseline_runs = [r for r in runs if r["model"] == "samknn-baseline"]

    write_csv(compare_table(dam3_runs, baseline_runs), out / "compare.csv")
    write_csv(ltm_ir_trajectories(dam3_runs, baseline_runs), out / "ltm_ir_trajectories.csv")
    for model, model_runs in (("dam3", dam3_runs), ("samknn-baseline", baseline_runs)):
        (out / model / "aggregate.json").write_text(
            json.dumps({"model": model, "seeds": config.seeds, "aggregate": aggregate(model_runs)}, indent=2) + "\n",
            encoding="utf-8",
        )
    print(out / "compare.csv")
    return EXIT_OK if all(r["verified"] for r in runs) else EXIT_VERIFY


COMMANDS = {"generate": cmd_generate, "run": cmd_run, "compare": cmd_compare}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    try:
        return COMMANDS[args.command](args)
    except (DriftmemError, ValidationError) as exc:
        message = str(exc).splitlines()[0] if isinstance(exc, DriftmemError) else str(exc).replace("\n", "; ")
        print(f"driftmem: error: {message}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
