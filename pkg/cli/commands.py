"""
SCQR command line

    scqr fit   --input data.csv --response y --penalty scad --lambda 0.05
    scqr tune  --input data.csv --response y --tune cv --folds 5 --seed 7
    scqr bench table1-desk --seed 1 --output bench_results

Exit codes: 0 success (including non-converged fits), 2 usage or IO
errors, 3 data validation errors, 4 numerical failures (non-finite
objective, singular normal system).
"""
import functools
import json
import sys
from pathlib import Path
from typing import Literal, Optional, Union

import click
import pandas as pd
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator
from rich.console import Console
from rich.table import Table

from bench.presets import PRESETS, get_preset
from bench.reporting import aggregate_frame, runtime_frame, write_aggregate_csv, write_records_jsonl, write_runtime_csv
from bench.runner import BenchmarkRunner
from config.logging_config import setup_logging
from config.settings import Settings
from core.exceptions import ContractError, DomainError, NumericalError
from services.dataset_io import covariate_names, read_dataset_csv, write_frame_csv, write_json
from solvers.estimator import CompositeQuantileEstimator
from tuning.bic import select_by_bic
from tuning.cross_validation import cross_validate
from tuning.lambda_grid import estimator_lambda_max, lambda_grid
from tuning.pivotal import tune_pivotal
from utils.logger import get_logger

EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_NUMERICAL = 4

logger = get_logger("cli")
console = Console()
err_console = Console(stderr=True)


class CliConfig(BaseModel):
    """Validated options of one CLI invocation"""

    command: Literal["fit", "tune", "bench"]
    input: Optional[Path] = None
    response: Optional[str] = None
    method: Literal["cqr-admm", "scqr"] = "scqr"
    penalty: Literal["l1", "scad", "mcp"] = "l1"
    lam: Optional[float] = Field(None, gt=0.0)
    tune: Optional[Literal["cv", "bic", "pivotal"]] = None
    folds: int = Field(5, ge=2)
    q: int = Field(19, ge=1)
    h: Union[float, Literal["auto"]] = "auto"
    kernel: Literal["gaussian", "logistic", "uniform", "epanechnikov"] = "gaussian"
    seed: int = 0
    threads: int = Field(1, ge=1)
    output: Optional[Path] = None
    format: Literal["json", "csv"] = "json"
    standardize: bool = True
    irw_steps: int = Field(3, ge=1)

    @field_validator("h", mode="before")
    @classmethod
    def parse_bandwidth(cls, v):
        if isinstance(v, str) and v.lower() == "auto":
            return "auto"
        v = float(v)
        if v <= 0:
            raise ValueError("--h must be positive or 'auto'")
        return v

    @model_validator(mode="after")
    def check_tuning(self):
        if self.lam is not None and self.tune is not None:
            raise ValueError("--lambda and --tune are mutually exclusive")
        if self.command == "fit" and self.lam is None and self.tune is None:
            raise ValueError("fit needs --lambda or --tune")
        if self.command == "tune" and self.tune is None:
            raise ValueError("tune needs --tune")
        if self.command != "bench" and (self.input is None or self.response is None):
            raise ValueError("--input and --response are required")
        return self


def _fail(ctx: click.Context, code: int, message: str):
    err_console.print(f"Error: {message}", style="bold red", markup=False, highlight=False, soft_wrap=True)
    ctx.exit(code)


def handle_errors(fn):
    """Map exceptions to the documented exit codes"""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            return fn(*args, **kwargs)
        except ValidationError as e:
            _fail(ctx, EXIT_USAGE, "; ".join(err["msg"] for err in e.errors()))
        except (ContractError, DomainError) as e:
            _fail(ctx, EXIT_DATA, str(e))
        except NumericalError as e:
            logger.error("numerical failure: %s", e)
            _fail(ctx, EXIT_NUMERICAL, f"numerical failure: {e}")
        except (FileNotFoundError, IsADirectoryError, PermissionError) as e:
            _fail(ctx, EXIT_USAGE, str(e))

    return wrapper


def _load_settings(log_level: Optional[str], command: str) -> Settings:
    config = Settings()
    if log_level:
        config.logging = config.logging.model_copy(update={"log_level": log_level.upper()})
    setup_logging(config, command)
    return config


def _estimator(cfg: CliConfig, config: Settings) -> CompositeQuantileEstimator:
    lamm = config.lamm.to_config(irw_steps=cfg.irw_steps)
    return CompositeQuantileEstimator(
        method=cfg.method,
        penalty=cfg.penalty,
        q=cfg.q,
        kernel=cfg.kernel,
        bandwidth=cfg.h,
        a=config.concavity(cfg.penalty),
        lamm=lamm,
        admm=config.admm_config(),
        standardize=cfg.standardize,
    )


def _run_tuning(cfg: CliConfig, config: Settings, estimator, data):
    tuning = config.tuning
    if cfg.tune == "pivotal":
        return tune_pivotal(
            estimator, data,
            c=config.pivotal_c(cfg.penalty),
            alpha=tuning.pivotal_alpha,
            B=tuning.pivotal_replications,
            seed=cfg.seed,
            threads=cfg.threads,
        )
    grid = lambda_grid(estimator_lambda_max(estimator, data), tuning.n_lambda, tuning.lambda_min_ratio)
    if cfg.tune == "cv":
        return cross_validate(estimator, data, grid.values, folds=cfg.folds, seed=cfg.seed, threads=cfg.threads)
    return select_by_bic(estimator, data, grid.values, cn=tuning.bic_cn)


def _emit_json(document: dict, output: Optional[Path]):
    if output is None:
        click.echo(json.dumps(document, indent=2))
    else:
        write_json(output, document)


def _emit_frame(frame: pd.DataFrame, output: Optional[Path]):
    if output is None:
        click.echo(frame.to_csv(index=False, float_format="%.17g"), nl=False)
    else:
        write_frame_csv(output, frame)


def model_options(fn):
    """Options shared by fit and tune"""
    options = [
        click.option("--input", "input_path", type=click.Path(path_type=Path), required=True, help="CSV file with a header row"),
        click.option("--response", required=True, help="Name of the response column"),
        click.option("--method", type=click.Choice(["cqr-admm", "scqr"]), default="scqr", show_default=True),
        click.option("--penalty", type=click.Choice(["l1", "scad", "mcp"]), default="l1", show_default=True),
        click.option("--lambda", "lam", type=float, default=None, help="Penalty level"),
        click.option("--tune", type=click.Choice(["cv", "bic", "pivotal"]), default=None, help="Select lambda from the data"),
        click.option("--folds", type=int, default=None, help="Cross-validation folds"),
        click.option("--q", type=int, default=None, help="Number of quantile levels"),
        click.option("--h", "bandwidth", default=None, help="Bandwidth or 'auto'"),
        click.option("--kernel", type=click.Choice(["gaussian", "logistic", "uniform", "epanechnikov"]), default=None),
        click.option("--seed", type=int, default=0, show_default=True),
        click.option("--threads", type=int, default=None),
        click.option("--output", type=click.Path(path_type=Path), default=None, help="Output file (stdout when omitted)"),
        click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default="json", show_default=True),
        click.option("--standardize/--no-standardize", default=None),
        click.option("--irw-steps", type=int, default=None, help="Reweighting steps T"),
        click.option("--log-level", type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False), default=None),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def _cli_config(command: str, config: Settings, **opts) -> CliConfig:
    model = config.model
    return CliConfig(
        command=command,
        input=opts["input_path"],
        response=opts["response"],
        method=opts["method"],
        penalty=opts["penalty"],
        lam=opts["lam"],
        tune=opts["tune"],
        folds=opts["folds"] or config.tuning.folds,
        q=opts["q"] or model.q,
        h=opts["bandwidth"] or model.bandwidth,
        kernel=opts["kernel"] or model.kernel,
        seed=opts["seed"],
        threads=opts["threads"] or config.bench.threads,
        output=opts["output"],
        format=opts["fmt"],
        standardize=model.standardize if opts["standardize"] is None else opts["standardize"],
        irw_steps=opts["irw_steps"] or model.irw_steps,
    )


@click.group()
@click.version_option("1.0.0", prog_name="scqr")
def cli():
    """Smoothed composite quantile regression with reweighted L1 penalties"""


@cli.command()
@model_options
@handle_errors
def fit(log_level, **opts):
    """Fit a penalized CQR model and write its coefficients"""
    config = _load_settings(log_level, "fit")
    cfg = _cli_config("fit", config, **opts)
    data = read_dataset_csv(cfg.input, cfg.response)
    estimator = _estimator(cfg, config)

    if cfg.lam is not None:
        document = estimator.fit(data, cfg.lam).to_dict()
    else:
        document = _run_tuning(cfg, config, estimator, data).fit

    if cfg.format == "csv":
        names = ["intercept_" + f"{tau:g}" for tau in estimator.grid.levels] + covariate_names(cfg.input, cfg.response)
        values = document["alpha"] + document["beta"]
        _emit_frame(pd.DataFrame({"term": names, "value": values}), cfg.output)
    else:
        _emit_json(document, cfg.output)
    if not document["converged"]:
        logger.warning("fit did not converge; results written with converged=false")


@cli.command()
@model_options
@handle_errors
def tune(log_level, **opts):
    """Select lambda by cross-validation, BIC or the pivotal rule"""
    config = _load_settings(log_level, "tune")
    cfg = _cli_config("tune", config, **opts)
    data = read_dataset_csv(cfg.input, cfg.response)
    report = _run_tuning(cfg, config, _estimator(cfg, config), data)

    if cfg.format == "csv":
        _emit_frame(pd.DataFrame([r.model_dump() for r in report.records]), cfg.output)
    else:
        _emit_json(report.model_dump(), cfg.output)


def _print_frame(frame: pd.DataFrame, title: str):
    table = Table(title=title)
    for column in frame.columns:
        table.add_column(str(column), justify="right" if frame[column].dtype.kind in "fiu" else "left")
    for row in frame.itertuples(index=False):
        table.add_row(*(f"{v:.4g}" if isinstance(v, float) else str(v) for v in row))
    console.print(table)


@cli.command()
@click.argument("scenario")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--threads", type=int, default=None)
@click.option("--output", type=click.Path(path_type=Path), default=None, help="Output directory")
@click.option("--progress/--no-progress", default=None)
@click.option("--log-level", type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False), default=None)
@handle_errors
def bench(scenario, seed, threads, output, progress, log_level):
    """Run a named benchmark preset and write its tables"""
    ctx = click.get_current_context()
    config = _load_settings(log_level, "bench")
    if scenario not in PRESETS:
        _fail(ctx, EXIT_USAGE, f"unknown scenario '{scenario}'; available: {', '.join(sorted(PRESETS))}")
    preset = get_preset(scenario).with_seed(seed)
    out_dir = output or Path(config.bench.output_dir)
    runner = BenchmarkRunner(config=config, threads=threads, progress=progress)

    if preset.kind == "runtime":
        rows = runner.run_runtime_comparison(preset.sizes, repeats=preset.repeats, seed=seed)
        write_runtime_csv(out_dir / f"{preset.name}_runtime.csv", rows)
        _print_frame(runtime_frame(rows), f"{preset.name}: runtime (seconds)")
        return

    results = runner.run(preset.name, preset.scenarios)
    aggregates = [r.aggregate for r in results if r.aggregate is not None]
    records = [rec for r in results for rec in r.records]
    write_aggregate_csv(out_dir / f"{preset.name}_aggregate.csv", aggregates)
    write_records_jsonl(out_dir / f"{preset.name}_records.jsonl", records)
    _print_frame(aggregate_frame(aggregates), preset.name)


def main():
    cli(prog_name="scqr")


if __name__ == "__main__":
    sys.exit(main())
