"""
CLI for running pricing experiments.
Provides commands for single prices, convergence sweeps, the example registry
and the damping optimizer.
"""
import json
import sys
from pathlib import Path
from typing import List, Optional

import click
import structlog
from tabulate import tabulate

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent.parent))

from src.config.logging import configure_logging
from src.config.settings import settings
from src.exceptions import PricingError
from src.pricing import DampingOptions, optimal_damping
from src.repositories.example_repository import ExampleRepository
from src.services.experiment_service import ExperimentConfig, ExperimentService
from src.services.metrics_service import MetricsService
from src.utils.reporting import write_csv, write_json

logger = structlog.get_logger(__name__)


# Options used when an experiment is given by --example only
_EXAMPLE_DEFAULTS = {
    "TP": {"level": 3},
    "SM": {"level": 3},
    "ASGQ": {"budget": 10_000},
    "MC": {},
    "COS2D": {},
}


def _load_configs(config: Optional[str], example: Optional[str], method: Optional[str],
                  seed: Optional[int]) -> List[ExperimentConfig]:
    if config:
        configs = ExperimentConfig.from_file(Path(config))
    elif example:
        method = method or "ASGQ"
        configs = [ExperimentConfig(example=example, method=method, options=_EXAMPLE_DEFAULTS[method])]
    else:
        raise click.UsageError("pass --config or --example")
    if seed is not None:
        configs = [
            c.model_copy(update={"options": c.options.model_copy(update={"seed": seed})})
            for c in configs
        ]
    return configs


def _finish_metrics(metrics: MetricsService, metrics_out: Optional[str]) -> None:
    target = metrics_out or settings.metrics_file
    if target:
        metrics.write(Path(target))


@click.group()
@click.version_option(settings.app_version, prog_name=settings.app_name)
@click.option('--log-level', default=None, help='Override the configured log level')
def cli(log_level: Optional[str]):
    """Fourier Basket Pricer - price multi-asset options by damped Fourier quadrature"""
    configure_logging(level=log_level)


@cli.command()
@click.option('--config', '-c', type=click.Path(exists=True), help='Experiment JSON (object or array)')
@click.option('--example', '-e', help='Registry example name or number')
@click.option('--method', '-m', type=click.Choice(['TP', 'SM', 'ASGQ', 'MC', 'COS2D']), help='Method for --example')
@click.option('--seed', type=int, default=None, help='Override the Monte Carlo seed')
@click.option('--out', '-o', type=click.Path(), help='Write the reports as JSON')
@click.option('--metrics-out', type=click.Path(), help='Write Prometheus metrics to this file')
def price(config, example, method, seed, out, metrics_out):
    """Run one experiment or a batch and print the prices"""
    try:
        configs = _load_configs(config, example, method, seed)
    except (PricingError, ValueError, OSError) as exc:
        click.echo(f"Error: {exc}", err=True)
        sys.exit(2)

    metrics = MetricsService()
    service = ExperimentService(metrics)
    reports, errors = service.run_batch(configs)

    rows = [
        [r.name, r.method.value, f"{r.estimate:.8g}",
         "-" if r.reference is None else f"{r.reference:.8g}",
         "-" if r.relative_error is None else f"{r.relative_error:.2e}",
         r.n_eval or r.n_cf or r.M, f"{r.wall_time_s:.3f}"]
        for r in reports
    ]
    if rows:
        click.echo(tabulate(
            rows,
            headers=['Experiment', 'Method', 'Estimate', 'Reference', 'Rel. error', 'Work', 'Time (s)'],
            tablefmt='grid',
        ))
    for error in errors:
        click.echo(f"Error: {error}", err=True)

    if out:
        write_json([r.model_dump(mode="json") for r in reports], Path(out))
    _finish_metrics(metrics, metrics_out)
    if errors:
        sys.exit(1)


@cli.command()
@click.option('--config', '-c', type=click.Path(exists=True), help='Experiment JSON (single object)')
@click.option('--example', '-e', help='Registry example name or number')
@click.option('--method', '-m', type=click.Choice(['TP', 'SM', 'ASGQ', 'MC', 'COS2D']), default='ASGQ')
@click.option('--budget', '-b', 'budgets', type=int, multiple=True, required=True,
              help='Budget per row; repeat for several rows')
@click.option('--seed', type=int, default=None, help='Override the Monte Carlo seed')
@click.option('--out', '-o', type=click.Path(), help='Write the convergence table as CSV')
@click.option('--metrics-out', type=click.Path(), help='Write Prometheus metrics to this file')
def sweep(config, example, method, budgets, seed, out, metrics_out):
    """Convergence table over increasing budgets"""
    try:
        configs = _load_configs(config, example, method, seed)
        if len(configs) != 1:
            raise click.UsageError("sweep takes a single experiment")
        metrics = MetricsService()
        table = ExperimentService(metrics).sweep(configs[0], budgets)
    except click.UsageError:
        raise
    except (PricingError, ValueError, OSError) as exc:
        click.echo(f"Error: {exc}", err=True)
        sys.exit(1)

    click.echo(tabulate(table.values.tolist(), headers=list(table.columns), tablefmt='grid'))
    if out:
        write_csv(table, Path(out))
    _finish_metrics(metrics, metrics_out)


@cli.command()
@click.option('--family', '-f', type=click.Choice(['GBM', 'VG', 'NIG']), help='Only this model family')
@click.option('--out', '-o', type=click.Path(), help='Export the registry as JSON')
def registry(family, out):
    """List the benchmark examples"""
    repository = ExampleRepository()
    entries = repository.get_all()
    if family:
        entries = [e for e in entries if e.model.family.value == family]
    rows = [
        [e.name, e.model.family.value, e.payoff.family.value, e.d, e.payoff.strike,
         "-" if e.reference is None else e.reference,
         "-" if e.damping is None else ", ".join(f"{r:g}" for r in e.damping)]
        for e in entries
    ]
    click.echo(tabulate(rows, headers=['Name', 'Model', 'Payoff', 'd', 'K', 'Reference', 'Damping'],
                        tablefmt='grid'))
    if out:
        repository.export(Path(out))


@cli.command('optimize-damping')
@click.option('--example', '-e', required=True, help='Registry example name or number')
@click.option('--tol', type=float, default=None, help='Optimizer tolerance')
@click.option('--start', type=str, default=None, help='Comma-separated start vector')
def optimize_damping(example, tol, start):
    """Optimal damping vector for a registry example"""
    try:
        entry = ExampleRepository().get_by_name(example)
        overrides = {}
        if tol is not None:
            overrides["tol"] = tol
        if start:
            overrides["start"] = tuple(float(s) for s in start.split(","))
        damping = optimal_damping(entry.model, entry.payoff, DampingOptions(**overrides))
    except (PricingError, KeyError, ValueError) as exc:
        click.echo(f"Error: {exc}", err=True)
        sys.exit(1)

    click.echo(json.dumps({
        "example": entry.name,
        "R": list(damping.R),
        "log_peak": damping.log_peak,
        "converged": damping.converged,
        "iterations": damping.iterations,
        "tabulated": None if entry.damping is None else list(entry.damping),
    }, indent=2))


def main():
    """Main CLI entry point"""
    cli()


if __name__ == '__main__':
    main()
