"""The cli module

``hypercauchy`` command group. Exit codes: 0 when every check passes, 1
when a check fails, 2 for configuration errors.
"""

import json
import logging
import sys

import click

from hypercauchy import __version__
from hypercauchy.config import load_scenario
from hypercauchy.exceptions import ConfigError, DensityError, DomainError, HypercauchyError
from hypercauchy.main import cmd_certify, cmd_field, cmd_jump, cmd_kernel_eval
from hypercauchy.utilities import load_configuration
from hypercauchy.verify import CLAIMS

EXIT_FAILED = 1
EXIT_CONFIG = 2


class ScenarioError(click.ClickException):
    """Configuration problem reported on stderr with exit code 2"""

    exit_code = EXIT_CONFIG


def _configure_logging(verbose: int) -> None:
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbose, logging.DEBUG)
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        force=True,
    )


def _scenario(path: str):
    try:
        return load_scenario(path)
    except (ConfigError, DensityError) as exc:
        raise ScenarioError(str(exc)) from exc


@click.group()
@click.version_option(__version__, prog_name="hypercauchy")
@click.option("--config", "config_file", type=click.Path(exists=True, dir_okay=False), help="Settings JSON loaded into the environment.")
@click.option("-v", "--verbose", count=True, help="-v for progress, -vv for debug output.")
def main(config_file, verbose):
    """Cauchy-type integrals of alpha-hyperholomorphic function theory."""
    _configure_logging(verbose)
    if config_file:
        try:
            load_configuration(config_file)
        except (OSError, ValueError) as exc:
            raise ScenarioError(f"cannot load settings {config_file}: {exc}") from exc


@main.command()
@click.argument("scenario", type=click.Path(dir_okay=False))
@click.option("--out", "output_path", required=True, type=click.Path(dir_okay=False), help="CSV file to write.")
@click.option("--window", nargs=4, type=float, default=(-2.0, 2.0, -2.0, 2.0), show_default=True, help="x0 x1 y0 y1")
@click.option("--resolution", type=click.IntRange(min=1), default=64, show_default=True, help="Points per axis.")
def field(scenario, output_path, window, resolution):
    """Evaluate the Cauchy-type integral on a grid."""
    loaded = _scenario(scenario)
    try:
        frame = cmd_field(loaded, output_path, window, resolution)
    except (DensityError, DomainError) as exc:
        raise ScenarioError(f"cannot evaluate the density: {exc}") from exc
    except HypercauchyError as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo(f"wrote {len(frame)} rows to {output_path}", err=True)


@main.command()
@click.argument("scenario", type=click.Path(dir_okay=False))
@click.option("--out", "output_path", required=True, type=click.Path(dir_okay=False), help="JSON file to write.")
@click.option("--samples", type=click.IntRange(min=1), default=16, show_default=True, help="Boundary points.")
def jump(scenario, output_path, samples):
    """Check the jump formulas at equispaced boundary points."""
    try:
        payload, passed = cmd_jump(_scenario(scenario), output_path, samples)
    except HypercauchyError as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo(f"max scaled residual {payload['max_scaled_residual']:.3e} (tolerance {payload['tolerance']:.1e})", err=True)
    if not passed:
        sys.exit(EXIT_FAILED)


@main.command()
@click.argument("scenarios")
@click.option("--out", "output_path", required=True, type=click.Path(dir_okay=False), help="JSON file for the reports.")
@click.option("--summary", "summary_path", type=click.Path(dir_okay=False), help="Markdown summary file.")
@click.option("--claim", "claims", multiple=True, type=click.Choice(CLAIMS), help="Run only these claims.")
def certify(scenarios, output_path, summary_path, claims):
    """Run the certification suite on a scenario set, or on "reference"."""
    try:
        reports, passed = cmd_certify(scenarios, output_path, summary_path, claims)
    except (ConfigError, DensityError) as exc:
        raise ScenarioError(str(exc)) from exc
    failed = [r.name for r in reports if not r.passed]
    click.echo(f"{len(reports) - len(failed)} of {len(reports)} checks passed", err=True)
    if not passed:
        click.echo(f"failed: {', '.join(failed)}", err=True)
        sys.exit(EXIT_FAILED)


@main.command("kernel-eval")
@click.argument("scenario", type=click.Path(dir_okay=False))
@click.option("--point", nargs=2, type=float, required=True, help="x y")
def kernel_eval(scenario, point):
    """Print theta and the Cauchy kernel at one point."""
    try:
        result = cmd_kernel_eval(_scenario(scenario), point)
    except HypercauchyError as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo(json.dumps(result, sort_keys=True, indent=2))
