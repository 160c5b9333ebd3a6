from __future__ import annotations

import math
from os import getenv
from typing import TYPE_CHECKING, Any

import click
from dotenv import load_dotenv

from . import __version__
from .actions import run_action
from .config import DOMAINS, RunConfig, default_out
from .enums import Command, InitPreset
from .environment import running_in_pytest
from .errors import NBubbleError
from .logs import configure_logging
from .persistence import dumps_json, read_json
from .settings import settings

if TYPE_CHECKING:
    from collections.abc import Sequence

# load .env environment variables as early as possible
if not running_in_pytest():  # pragma: no cover
    load_dotenv()

DEFAULT_EPS_LIST = "1e-2,1e-3,1e-4,1e-5,1e-6"
SOLVE_PRESETS = [str(InitPreset.CURVATURE_BUMP), str(InitPreset.CONSTANT)]


class FloatList(click.ParamType):
    """Comma-separated finite numbers, e.g. `0.1,0.05,0.025`."""

    name = "floats"

    def convert(
        self,
        value: Any,
        param: click.Parameter | None,
        ctx: click.Context | None,
    ) -> tuple[float, ...]:
        if isinstance(value, tuple):
            return value
        parts = [part.strip() for part in str(value).split(",") if part.strip()]
        try:
            numbers = tuple(float(part) for part in parts)
        except ValueError:
            self.fail(f"{value!r} is not a comma-separated list of numbers", param, ctx)
        if not all(math.isfinite(number) for number in numbers):
            self.fail(f"{value!r} holds a non-finite number", param, ctx)
        return numbers


FLOAT_LIST = FloatList()


def execute(config: RunConfig) -> None:
    try:
        payload = run_action(config)
    except NBubbleError as ex:
        click.echo(f"error: {ex}", err=True)
        raise click.exceptions.Exit(ex.exit_code) from ex
    click.echo(dumps_json(payload), nl=False)


def _out(out: str | None, command: Command) -> str:
    return out if out is not None else default_out(command)


def _require(values: Sequence[float], option: str) -> tuple[float, ...]:
    if not values:
        raise click.BadParameter("at least one value is required", param_hint=option)
    return tuple(values)


out_option = click.option(
    "-o",
    "--out",
    type=click.Path(file_okay=False),
    default=None,
    help="Output directory, defaults to <NB_OUTPUT_ROOT>/<command>.",
)
domain_option = click.option(
    "--domain",
    type=click.Choice(DOMAINS),
    default="disk",
    show_default=True,
    help="Planar domain: the disk of --radius or the ellipse of --semi-axes.",
)
radius_option = click.option("--radius", type=float, default=1.0, show_default=True)
axes_option = click.option(
    "--semi-axes",
    type=FLOAT_LIST,
    default="2,1",
    show_default=True,
    help="Ellipse semi-axes a,b.",
)
tol_option = click.option(
    "--tol",
    type=float,
    default=1e-10,
    show_default=True,
    help="Amplitude tolerance of the shooting bisection.",
)
rmax_option = click.option(
    "--rmax",
    "r_max",
    type=float,
    default=25.0,
    show_default=True,
    help="Radius the limit profile is computed to.",
)


def _axes(semi_axes: tuple[float, ...]) -> tuple[float, float]:
    if len(semi_axes) != 2:
        raise click.BadParameter("expected two values a,b", param_hint="--semi-axes")
    return semi_axes[0], semi_axes[1]


@click.group()
@click.option(
    "-l",
    "--log-level",
    type=click.Choice(["CRITICAL", "ERROR", "WARNING", "INFO", "DEBUG"]),
    default=None,
    help="INFO is not set, can also be set by the LOG_LEVEL environment variable.",
)
@click.version_option(version=__version__)
def main(log_level: str | None) -> None:
    # Ensure that configure_logging() is called as early as possible
    level = log_level if log_level is not None else (getenv("LOG_LEVEL") or settings.LOG_LEVEL)
    configure_logging(level)


@main.command()
@tol_option
@rmax_option
@out_option
def profile(tol: float, r_max: float, out: str | None) -> None:
    """Shoot the radial ground state w and report its constants."""
    config = RunConfig(
        command=Command.PROFILE,
        out=_out(out, Command.PROFILE),
        tol=tol,
        r_max=r_max,
    )
    execute(config)


@main.command()
@domain_option
@radius_option
@axes_option
@click.option("--d", "d", type=float, required=True, help="Diffusion coefficient.")
@click.option("--h", "h", type=float, default=None, help="Target mesh size.")
@click.option("--refine-levels", type=click.IntRange(min=0), default=0, show_default=True)
@click.option(
    "--init",
    type=click.Choice(SOLVE_PRESETS),
    default=str(InitPreset.CURVATURE_BUMP),
    show_default=True,
)
@click.option("--seed", type=int, default=0, show_default=True)
@out_option
def solve(
    domain: str,
    radius: float,
    semi_axes: tuple[float, ...],
    d: float,
    h: float | None,
    refine_levels: int,
    init: str,
    seed: int,
    out: str | None,
) -> None:
    """Compute the ground state u_d and its level m_d on one mesh."""
    config = RunConfig(
        command=Command.SOLVE,
        out=_out(out, Command.SOLVE),
        seed=seed,
        domain=domain,
        radius=radius,
        semi_axes=_axes(semi_axes),
        d=d,
        h=h,
        refine_levels=refine_levels,
        init=InitPreset(init),
    )
    execute(config)


@main.command()
@click.option("--d-list", "d_list", type=FLOAT_LIST, required=True, help="e.g. 0.1,0.05")
@domain_option
@radius_option
@axes_option
@click.option("--plots", is_flag=True, default=False, help="Also write SVG line plots.")
@tol_option
@rmax_option
@out_option
def sweep(
    d_list: tuple[float, ...],
    domain: str,
    radius: float,
    semi_axes: tuple[float, ...],
    plots: bool,
    tol: float,
    r_max: float,
    out: str | None,
) -> None:
    """Solve along a d-sweep and fit the energy expansion."""
    config = RunConfig(
        command=Command.SWEEP,
        out=_out(out, Command.SWEEP),
        domain=domain,
        radius=radius,
        semi_axes=_axes(semi_axes),
        d_list=_require(d_list, "--d-list"),
        plots=plots,
        tol=tol,
        r_max=r_max,
    )
    execute(config)


@main.command()
@click.option("--alphas", type=FLOAT_LIST, required=True, help="e.g. 6.2832,5.6549")
@click.option("--eps-list", "eps_list", type=FLOAT_LIST, default=DEFAULT_EPS_LIST)
@click.option("--delta", type=float, default=settings.MOSER_DELTA, show_default=True)
@out_option
def moser(
    alphas: tuple[float, ...],
    eps_list: tuple[float, ...],
    delta: float,
    out: str | None,
) -> None:
    """Classify the growth of the Trudinger-Moser functional on Moser functions."""
    config = RunConfig(
        command=Command.MOSER,
        out=_out(out, Command.MOSER),
        alphas=_require(alphas, "--alphas"),
        eps_list=_require(eps_list, "--eps-list"),
        delta=delta,
    )
    execute(config)


@main.command()
@click.argument("config_path", type=click.Path(exists=True, dir_okay=False))
@out_option
def rerun(config_path: str, out: str | None) -> None:
    """Replay a run from its config.json echo."""
    try:
        config = RunConfig.from_dict(read_json(config_path, "config"))
    except NBubbleError as ex:
        click.echo(f"error: {ex}", err=True)
        raise click.exceptions.Exit(ex.exit_code) from ex
    execute(config if out is None else config.with_out(out))
