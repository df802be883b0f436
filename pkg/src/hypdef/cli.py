"""Command-line verification harness.

`hypdef verify <suite>` runs one named suite (or 'all') over a seeded grid
and prints a report.  Exit codes: 0 when everything passed or diverged as
expected, 1 when any check failed, 2 for configuration problems (unknown
suite, malformed numbers or expressions, unreadable config file).
"""

from __future__ import annotations

import sys
from dataclasses import fields as dataclass_fields

import click

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .checks import SUITE_NAMES, CheckConfigError, SuiteConfig, run_suite
from .reporting import exit_code, report_emit

_COMPLEX_KEYS = ("tau", "b1", "b2", "longitude")
_FLOAT_KEYS = ("tol", "k1", "k2", "alpha", "eps")
_INT_KEYS = ("seed", "samples")
_ALLOWED_KEYS = {f.name for f in dataclass_fields(SuiteConfig)}


def parse_complex(value) -> complex:
    """Accept 'a+bi' and 'a+bj' spellings, or plain real numbers."""
    if isinstance(value, (int, float)):
        return complex(value)
    cleaned = str(value).strip().replace(" ", "").replace("i", "j")
    try:
        return complex(cleaned)
    except ValueError:
        raise CheckConfigError(f"cannot parse complex number from {value!r}") from None


def _load_sections(path) -> dict:
    """[suite.<name>] tables from a TOML file, or {} when no file is given."""
    if path is None:
        return {}
    with open(path, "rb") as fh:
        data = tomllib.load(fh)
    sections = data.get("suite", {})
    if not isinstance(sections, dict):
        raise CheckConfigError("[suite] must be a table of per-suite sections")
    return sections


def build_config(name: str, sections: dict, overrides: dict) -> SuiteConfig:
    """Merge defaults < config-file section < command-line flags."""
    merged = {}
    section = sections.get(name, {})
    if not isinstance(section, dict):
        raise CheckConfigError(f"[suite.{name}] must be a table")
    for source in (section, overrides):
        for key, value in source.items():
            if value is None:
                continue
            if key not in _ALLOWED_KEYS:
                raise CheckConfigError(
                    f"unknown config key {key!r} for suite {name!r}"
                )
            merged[key] = value
    for key in _COMPLEX_KEYS:
        if key in merged:
            merged[key] = parse_complex(merged[key])
    for key in _FLOAT_KEYS:
        if key in merged:
            merged[key] = float(merged[key])
    for key in _INT_KEYS:
        if key in merged:
            merged[key] = int(merged[key])
    if "field" in merged:
        merged["field"] = str(merged["field"])
    return SuiteConfig(**merged)


@click.group()
def main() -> None:
    """Verification harness for the hyperbolic deformation calculus."""


@main.command()
@click.argument("suite")
@click.option("--seed", type=int, default=None, help="Seed for the sample grids.")
@click.option("--samples", type=int, default=None, help="Sample count per check.")
@click.option("--tol", type=float, default=None, help="Override every tolerance.")
@click.option("--tau", default=None, help="Torus parameter a+bi with Im > 0.")
@click.option("--b1", default=None, help="First cusp coefficient a+bi.")
@click.option("--b2", default=None, help="Second cusp coefficient a+bi.")
@click.option("--k1", type=float, default=None, help="First principal curvature.")
@click.option("--k2", type=float, default=None, help="Second principal curvature.")
@click.option("--alpha", type=float, default=None, help="Cone angle.")
@click.option("--eps", type=float, default=None, help="Tube radius.")
@click.option("--field", default=None, help="Boundary field expression, e.g. z^3.")
@click.option(
    "--format", "fmt", type=click.Choice(("json", "text")), default="text",
    help="Report format.",
)
@click.option(
    "--config", "config_path", type=click.Path(), default=None,
    help="TOML file with [suite.<name>] sections mirroring the flags.",
)
def verify(
    suite, seed, samples, tol, tau, b1, b2, k1, k2, alpha, eps, field,
    fmt, config_path,
):
    """Run SUITE (a named suite, or 'all') and emit its report."""
    overrides = {
        "seed": seed, "samples": samples, "tol": tol, "tau": tau,
        "b1": b1, "b2": b2, "k1": k1, "k2": k2,
        "alpha": alpha, "eps": eps, "field": field,
    }
    try:
        sections = _load_sections(config_path)
        if suite != "all" and suite not in SUITE_NAMES:
            raise CheckConfigError(
                f"unknown suite {suite!r}; available: "
                f"{', '.join(SUITE_NAMES)} or 'all'"
            )
        names = SUITE_NAMES if suite == "all" else (suite,)
        reports = []
        for name in names:
            cfg = build_config(name, sections, overrides)
            reports.extend(run_suite(name, cfg))
    except (CheckConfigError, ValueError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    click.echo(report_emit(reports, fmt).decode("utf-8"), nl=False)
    sys.exit(exit_code(reports))
