"""CLI entry point for hkasym."""

import logging
import math
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Optional

import typer
from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape

from . import __version__
from .asymptotics import ratio_table, remainder_bound, saddle_diagnostics
from .config import (
    Config,
    get_global_config_path,
    get_project_config_path,
    load_config,
    save_global_config,
    save_project_config,
    set_config_value,
)
from .errors import DomainError, HkasymError
from .gtf import (
    default_rule_exponent,
    default_rule_name,
    derivative_growth_bound,
    get_function,
    get_radius_rule,
    gtf_scan,
    oscillation_amplitude,
)
from .gtf.geometry import Sector
from .kernel import KernelParams, evaluate, heat_kernel, residue_coefficients
from .output import render, scaled_columns, write_output
from .specfun.scaled import ScaledValue

app = typer.Typer(
    name="hkasym",
    help="Heat-kernel asymptotics on H-type groups and good test functions",
    invoke_without_command=True,
)
config_app = typer.Typer(help="Inspect and edit the layered configuration")
kernel_app = typer.Typer(help="Evaluate the reduced heat kernel p(n, m; u, v)")
asymp_app = typer.Typer(help="Compare the kernel with its large-v approximations")
gtf_app = typer.Typer(help="Good-test-function checks")
saddle_app = typer.Typer(help="Saddle-point diagnostics")
app.add_typer(config_app, name="config")
app.add_typer(kernel_app, name="kernel")
app.add_typer(asymp_app, name="asymp")
app.add_typer(gtf_app, name="gtf")
app.add_typer(saddle_app, name="saddle")

console = Console()
err_console = Console(stderr=True)


def version_callback(value: bool) -> None:
    """--version"""
    if value:
        console.print(f"hkasym {__version__}")
        raise typer.Exit()


def setup_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=err_console, show_path=False)],
        force=True,
    )


@contextmanager
def reporting_errors() -> Iterator[None]:
    """Turn library errors into a red message and the matching exit code."""
    try:
        yield
    except HkasymError as e:
        err_console.print(f"[red]Error: {escape(str(e))}[/red]")
        raise typer.Exit(e.exit_code)
    except ValidationError as e:
        err_console.print(f"[red]Invalid parameters: {escape(str(e))}[/red]")
        raise typer.Exit(DomainError.exit_code)


def _load(output_format: Optional[str], seed: Optional[int] = None) -> Config:
    config = load_config()
    updates: dict[str, Any] = {}
    if output_format is not None:
        updates["output_format"] = output_format
    if seed is not None:
        updates["seed"] = seed
    if updates:
        config = Config(**{**config.model_dump(), **updates})
    return config


def _run_config(command: str, parameters: dict[str, Any], config: Config) -> dict[str, Any]:
    # threads only changes scheduling, never results
    return {"command": command, "parameters": parameters, **config.model_dump(exclude={"threads"})}


def _emit(
    command: str,
    parameters: dict[str, Any],
    config: Config,
    rows: list[dict[str, Any]],
    output: Optional[Path],
    meta: Optional[dict[str, Any]] = None,
) -> None:
    text = render(rows, _run_config(command, parameters, config), config.output_format, meta)
    if output is None:
        typer.echo(text, nl=False)
    else:
        write_output(text, output)
        err_console.print(f"[green]Wrote {output}[/green]")


def _parse_grid(text: str) -> list[float]:
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise DomainError(f"malformed v grid: {text!r}") from None


def _decimal(value: ScaledValue) -> str:
    if value.is_zero or abs(value.log_scale) < 700:
        return str(value.to_number())
    return ""


def _value_row(value: ScaledValue) -> dict[str, Any]:
    return {**scaled_columns(value), "log_abs": value.log_abs()}


@app.callback(invoke_without_command=True)
def main(
    ctx: typer.Context,
    version: bool = typer.Option(
        False,
        "--version",
        "-V",
        callback=version_callback,
        is_eager=True,
        help="Show version and exit.",
    ),
    verbose: bool = typer.Option(False, "--verbose", help="Log debug records to stderr."),
) -> None:
    """hkasym - heat-kernel asymptotics on H-type groups."""
    setup_logging(verbose)
    if ctx.invoked_subcommand is None:
        typer.echo(ctx.get_help())


@kernel_app.command("eval")
def kernel_eval(
    n: int = typer.Option(1, "--n", help="Horizontal half-dimension n >= 1"),
    m: int = typer.Option(1, "--m", help="Center dimension m >= 1"),
    u: float = typer.Option(0.0, "--u", help="u = |z|^2 / h"),
    v: float = typer.Option(1.0, "--v", help="v = |t| / h"),
    v_imag: float = typer.Option(0.0, "--v-imag", help="Imaginary part of v (m = 1 only)"),
    route: str = typer.Option("auto", "--route", help="auto, direct or contour"),
    z_sq: Optional[float] = typer.Option(None, "--z-sq", help="|z|^2 for a physical-variable evaluation"),
    t: Optional[float] = typer.Option(None, "--t", help="|t| for a physical-variable evaluation"),
    h: Optional[float] = typer.Option(None, "--h", help="Time h for a physical-variable evaluation"),
    output_format: Optional[str] = typer.Option(None, "--format", help="csv or json"),
    output: Optional[Path] = typer.Option(None, "--output", help="Write to this file instead of stdout"),
) -> None:
    """Evaluate one kernel value, printed as mantissa, log_scale and a decimal."""
    with reporting_errors():
        config = _load(output_format)
        physical = (z_sq, t, h)
        if any(x is not None for x in physical):
            if any(x is None for x in physical):
                raise DomainError("--z-sq, --t and --h must be given together")
            value = heat_kernel(z_sq, t, h, n, m, config.quadrature, route=route, branch=config.branch)
            parameters: dict[str, Any] = {"n": n, "m": m, "z_sq": z_sq, "t": t, "h": h, "route": route}
        else:
            if v < 0:
                raise DomainError(f"v must be ≥ 0, got {v}")
            point = complex(v, v_imag) if v_imag else v
            value = evaluate(KernelParams(n, m, u, point), config.quadrature, route=route, branch=config.branch)
            parameters = {"n": n, "m": m, "u": u, "v": v, "v_imag": v_imag, "route": route}
        row = {**parameters, **_value_row(value), "value": _decimal(value)}
        _emit("kernel eval", parameters, config, [row], output)


@kernel_app.command("table")
def kernel_table(
    n: int = typer.Option(1, "--n", help="Horizontal half-dimension n >= 1"),
    m: int = typer.Option(1, "--m", help="Center dimension m >= 1"),
    u: float = typer.Option(0.0, "--u", help="u = |z|^2 / h"),
    v_grid: str = typer.Option("1,2,4,8", "--v-grid", help="Comma-separated v values"),
    route: str = typer.Option("auto", "--route", help="auto, direct or contour"),
    output_format: Optional[str] = typer.Option(None, "--format", help="csv or json"),
    output: Optional[Path] = typer.Option(None, "--output", help="Write to this file instead of stdout"),
) -> None:
    """Tabulate p(n, m; u, v) over a v grid."""
    with reporting_errors():
        config = _load(output_format)
        grid = _parse_grid(v_grid)
        if any(v < 0 for v in grid):
            raise DomainError("v must be ≥ 0 at every grid point")
        rows = []
        for v in grid:
            value = evaluate(KernelParams(n, m, u, v), config.quadrature, route=route, branch=config.branch)
            rows.append({"v": v, **_value_row(value), "value": _decimal(value)})
        parameters = {"n": n, "m": m, "u": u, "v_grid": grid, "route": route}
        _emit("kernel table", parameters, config, rows, output)


@asymp_app.command("compare")
def asymp_compare(
    n: int = typer.Option(1, "--n", help="Horizontal half-dimension n >= 1"),
    m: int = typer.Option(1, "--m", help="Center dimension m >= 1"),
    u: float = typer.Option(0.0, "--u", help="u = |z|^2 / h (0 selects the center-only asymptotics)"),
    v_grid: str = typer.Option("20,40,80", "--v-grid", help="Strictly ascending comma-separated v values"),
    output_format: Optional[str] = typer.Option(None, "--format", help="csv or json"),
    output: Optional[Path] = typer.Option(None, "--output", help="Write to this file instead of stdout"),
) -> None:
    """Table of p / q and |p / q - 1| over a v grid."""
    with reporting_errors():
        config = _load(output_format)
        grid = _parse_grid(v_grid)
        rows = [row.as_dict() for row in ratio_table(n, m, u, grid, config)]
        _emit("asymp compare", {"n": n, "m": m, "u": u, "v_grid": grid}, config, rows, output)


@gtf_app.command("check")
def gtf_check(
    fn: str = typer.Option("power_log", "--fn", help="power_log, power_exp, plain_log or log_plus_sin"),
    alpha: float = typer.Option(0.0, "--alpha", help="Power of z"),
    beta: float = typer.Option(0.0, "--beta", help="Power of log z (power_log) or exponent factor (power_exp)"),
    gamma: float = typer.Option(1.0, "--gamma", help="Power of z in the exponent (power_exp)"),
    theta0: float = typer.Option(math.pi / 2, "--theta0", help="Half-opening of the sector"),
    theta1: float = typer.Option(math.pi / 4, "--theta1", help="Half-opening of the sampled subsector"),
    r_min: float = typer.Option(10.0, "--r-min", help="Inner radius of the sector"),
    rule: Optional[str] = typer.Option(None, "--rule", help="half_sine, power or fixed"),
    exponent: Optional[float] = typer.Option(None, "--exponent", help="Exponent of the power rule"),
    radius: Optional[float] = typer.Option(None, "--radius", help="Radius of the fixed rule"),
    decades: Optional[int] = typer.Option(None, "--decades", help="Decades of |z| to scan"),
    jitter: float = typer.Option(0.0, "--jitter", help="Random argument jitter in [0, 1)"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Seed for the jitter"),
    output_format: Optional[str] = typer.Option(None, "--format", help="csv or json"),
    output: Optional[Path] = typer.Option(None, "--output", help="Write to this file instead of stdout"),
) -> None:
    """Scan the contour criterion over a sector and classify sup c_hat."""
    with reporting_errors():
        config = _load(output_format, seed)
        if not 0 <= jitter < 1:
            raise DomainError(f"jitter must lie in [0, 1), got {jitter}")
        sector = Sector(r_min=r_min, theta0=theta0, theta1=theta1)
        g = get_function(fn, alpha, beta, gamma)
        rule_name = rule or default_rule_name(g)
        if exponent is None and rule_name == "power":
            exponent = default_rule_exponent(g)
        radius_rule = get_radius_rule(rule_name, sector, exponent=exponent, radius=radius)
        gtf_cfg = config.gtf if decades is None else config.gtf.model_copy(update={"decades": decades})
        report = gtf_scan(
            g, sector, radius_rule, gtf_cfg, jitter=jitter, seed=config.seed, workers=config.worker_count()
        )
        err_console.print(
            f"[bold]{fn}[/bold]: {report.verdict} (slope {report.slope:.4g}, rule {report.radius_rule_tag})"
        )
        parameters = {
            "fn": fn,
            "alpha": alpha,
            "beta": beta,
            "gamma": gamma,
            "theta0": theta0,
            "theta1": theta1,
            "r_min": r_min,
            "rule": radius_rule.name,
            "decades": gtf_cfg.decades,
            "jitter": jitter,
        }
        meta = {"verdict": report.verdict, "slope": report.slope, "sup_c_hat": report.sup_c_hat}
        _emit("gtf check", parameters, config, report.as_rows(), output, meta)


@gtf_app.command("derivative-demo")
def gtf_derivative_demo(
    fn: str = typer.Option("log_plus_sin", "--fn", help="Catalog function to probe"),
    r_start: float = typer.Option(1e2, "--r-start", help="Start of the positive-axis stretch"),
    decades: float = typer.Option(4.0, "--decades", help="Decades of |z| to probe"),
    output_format: Optional[str] = typer.Option(None, "--format", help="csv or json"),
    output: Optional[Path] = typer.Option(None, "--output", help="Write to this file instead of stdout"),
) -> None:
    """Show that f ~ log z does not force z f'(z) -> 1."""
    with reporting_errors():
        config = _load(output_format)
        f = get_function(fn)
        samples = config.gtf.oscillation_samples_per_decade
        amplitude = oscillation_amplitude(f, r_start, decades, samples)
        bound = derivative_growth_bound(f, r_start, decades, samples)
        oscillates = amplitude >= config.gtf.oscillation_threshold
        if oscillates:
            err_console.print(f"[yellow]z f'(z) oscillates with amplitude {amplitude:.4g}[/yellow]")
        else:
            err_console.print(f"[green]z f'(z) settles (amplitude {amplitude:.4g})[/green]")
        row = {"fn": fn, "amplitude": amplitude, "growth_bound": bound, "oscillates": oscillates}
        _emit("gtf derivative-demo", {"fn": fn, "r_start": r_start, "decades": decades}, config, [row], output)


@saddle_app.command("verify")
def saddle_verify(
    n: int = typer.Option(1, "--n", help="Horizontal half-dimension n >= 1"),
    u: float = typer.Option(1.0, "--u", help="u = |z|^2 / h"),
    v: float = typer.Option(100.0, "--v", help="v = |t| / h"),
    output_format: Optional[str] = typer.Option(None, "--format", help="csv or json"),
    output: Optional[Path] = typer.Option(None, "--output", help="Write to this file instead of stdout"),
) -> None:
    """Measure the saddle-point identities at (u, v)."""
    with reporting_errors():
        config = _load(output_format)
        parameters = {"n": n, "u": u, "v": v}
        if u < 0 or v <= 0:
            raise DomainError(f"need u >= 0 and v > 0, got u={u}, v={v}")
        if u == 0:
            # no saddle: the kernel is the residue at i pi
            err_console.print("[yellow]u = 0: the saddle degenerates, reporting the residue route[/yellow]")
            coefficients = residue_coefficients(n)
            rows = [
                {"route": "residue", "k": k + 1, "re_a": float(c.real), "im_a": float(c.imag)}
                for k, c in enumerate(coefficients)
            ]
            _emit("saddle verify", parameters, config, rows, output)
            return
        diag = saddle_diagnostics(u, v, branch=config.branch)
        row = {
            "route": "saddle",
            "theta": float(diag.theta),
            "eps": float(diag.eps),
            "phi_residual": diag.phi_residual,
            "phi_prime_norm": diag.phi_prime_norm,
            "phi_prime_over_v": diag.phi_prime_norm / v,
            "saddle_relation_residual": diag.saddle_relation_residual,
            "remainder_sup": diag.remainder_sup,
            "bound_constant": remainder_bound(u, diag.eps),
        }
        _emit("saddle verify", parameters, config, [row], output)


@app.command()
def init(
    output_format: str = typer.Option("csv", "--format", help="Default table format"),
    threads: Optional[int] = typer.Option(None, "--threads", help="Cap on sweep parallelism"),
) -> None:
    """Write .hkasym.yaml with defaults into the working directory."""
    with reporting_errors():
        config = Config(output_format=output_format, threads=threads)

    save_project_config(config)
    console.print(f"[green]Wrote {get_project_config_path()}[/green]")


@config_app.command("show")
def config_show() -> None:
    """Print the resolved configuration, section by section."""
    with reporting_errors():
        config = load_config()

    console.print("[bold]top level:[/bold]")
    console.print(f"  output_format: {config.output_format}")
    console.print(f"  threads: {config.threads or 'auto'} (using {config.worker_count()})")
    console.print(f"  seed: {config.seed}")
    for section in ("branch", "quadrature", "gtf"):
        console.print(f"\n[bold]{section}:[/bold]")
        for key, value in getattr(config, section).model_dump().items():
            console.print(f"  {section}.{key}: {value}")

    console.print(f"\n[dim]global file: {get_global_config_path()}\nproject file: {get_project_config_path()}[/dim]")


@config_app.command("set")
def config_set(
    key: str = typer.Argument(..., help="Config key, dotted for nested sections (quadrature.rel_tol)"),
    value: str = typer.Argument(..., help="Value to set"),
) -> None:
    """Store KEY = VALUE in the global file (dotted keys reach nested sections)."""
    with reporting_errors():
        config = load_config()
        try:
            config = set_config_value(config, key, value)
        except KeyError:
            err_console.print(f"[red]{key!r} is not a configuration key[/red]")
            raise typer.Exit(1)

    save_global_config(config)
    console.print(f"[green]{key} = {value} saved to {get_global_config_path()}[/green]")


if __name__ == "__main__":
    app()
