"""Command-line client for the captune service.

By default the commands talk to an in-process instance of the service, so
no server needs to be running; point --server at a deployed instance to run
against it instead. Exit codes: 0 success, 1 no acceptable configuration or
hypothesis violation, 2 input error, 3 internal error.
"""

from __future__ import annotations

import asyncio
import csv
import json
import sys
from pathlib import Path

import click
import httpx

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3


async def _post_async(server: str | None, path: str, payload: dict) -> httpx.Response:
    if server:
        async with httpx.AsyncClient(base_url=server, timeout=600.0) as client:
            return await client.post(path, json=payload)
    from .service import create_app  # imported lazily; pulls in FastAPI

    transport = httpx.ASGITransport(app=create_app())
    async with httpx.AsyncClient(
        transport=transport, base_url="http://captune.internal"
    ) as client:
        return await client.post(path, json=payload)


def _post(server: str | None, path: str, payload: dict, quiet: bool) -> dict:
    """POST and map HTTP errors onto the documented exit codes."""
    try:
        resp = asyncio.run(_post_async(server, path, payload))
    except httpx.HTTPError as exc:
        _fail(f"cannot reach service: {exc}", EXIT_INTERNAL, quiet)
    if resp.status_code in (400, 422):
        detail = resp.json().get("detail", resp.text)
        _fail(f"invalid input: {detail}", EXIT_INPUT, quiet)
    if resp.status_code != 200:
        _fail(f"service error {resp.status_code}: {resp.text}", EXIT_INTERNAL, quiet)
    return resp.json()


def _fail(message: str, code: int, quiet: bool) -> None:
    if not quiet:
        click.echo(message, err=True)
    sys.exit(code)


def _load_json_file(path: str, quiet: bool) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        _fail(f"cannot read {path}: {exc}", EXIT_INPUT, quiet)
    except json.JSONDecodeError as exc:
        _fail(f"{path} is not valid JSON: {exc}", EXIT_INPUT, quiet)


def _surface_argument(value: str, quiet: bool) -> str | dict:
    """A preset name, or a path to a surface document."""
    if Path(value).exists():
        return _load_json_file(value, quiet)
    return value


def _write_json(path: Path, payload) -> None:
    path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _write_csv(path: Path, header: list, rows: list[list]) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _series_filename(scenario_id: str, cap_watts: float, technique: str,
                     multi_cap: bool, suffix: str) -> str:
    if multi_cap:
        return f"{scenario_id}_cap{cap_watts:g}_{technique}{suffix}"
    return f"{scenario_id}_{technique}{suffix}"


def _write_run_outputs(payload: dict, out_dir: Path) -> list[str]:
    out_dir.mkdir(parents=True, exist_ok=True)
    scenario_id = payload["scenario"]
    runs = payload["runs"]
    multi_cap = len({run["cap_watts"] for run in runs}) > 1
    written: list[str] = []
    for run in runs:
        name = _series_filename(
            scenario_id, run["cap_watts"], run["technique"], multi_cap, ".csv"
        )
        _write_csv(out_dir / name, run["header"], run["rows"])
        written.append(name)
        trace_name = _series_filename(
            scenario_id, run["cap_watts"], run["technique"], multi_cap, "_trace.json"
        )
        _write_json(out_dir / trace_name, run["traces"])
        written.append(trace_name)
    _write_json(out_dir / "report.json", payload["reports"])
    written.append("report.json")
    _write_csv(out_dir / "summary.csv", payload["summary_header"], payload["summary_rows"])
    written.append("summary.csv")
    return written


@click.group()
@click.option("--server", default=None, metavar="URL",
              help="Base URL of a running service; default runs in process.")
@click.option("--quiet", is_flag=True, help="Suppress non-essential output.")
@click.pass_context
def main(ctx: click.Context, server: str | None, quiet: bool) -> None:
    """Power-cap tuning experiments: run, validate, oracle, sweep."""
    ctx.ensure_object(dict)
    ctx.obj["server"] = server
    ctx.obj["quiet"] = quiet


@main.command()
@click.argument("scenario_path", type=click.Path())
@click.option("--out", "out_dir", default="out", show_default=True,
              help="Directory for CSV/JSON outputs.")
@click.option("--seed", type=int, default=None, help="Override the scenario seed.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv",
              show_default=True, help="Format of the summary printed to stdout.")
@click.pass_context
def run(ctx: click.Context, scenario_path: str, out_dir: str,
        seed: int | None, fmt: str) -> None:
    """Run every technique in SCENARIO_PATH and write series, traces, report."""
    quiet = ctx.obj["quiet"]
    doc = _load_json_file(scenario_path, quiet)
    if seed is not None:
        if not isinstance(doc, dict):
            _fail("scenario: expected an object", EXIT_INPUT, quiet)
        doc["seed"] = seed
    scenario_id = Path(scenario_path).stem
    payload = _post(ctx.obj["server"], "/run",
                    {"scenario": doc, "scenario_id": scenario_id}, quiet)
    written = _write_run_outputs(payload, Path(out_dir))
    if not quiet:
        if fmt == "json":
            click.echo(json.dumps(payload["reports"], sort_keys=True, indent=2))
        else:
            writer = csv.writer(sys.stdout, lineterminator="\n")
            writer.writerow(payload["summary_header"])
            writer.writerows(payload["summary_rows"])
        click.echo(f"wrote {len(written)} files to {out_dir}", err=True)
    sys.exit(EXIT_OK)


@main.command()
@click.argument("surface", metavar="SURFACE")
@click.option("--step-index", type=int, default=0, show_default=True)
@click.option("--weak", is_flag=True,
              help="Tolerate equal throughput across adjacent P-states.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="json",
              show_default=True)
@click.pass_context
def validate(ctx: click.Context, surface: str, step_index: int, weak: bool,
             fmt: str) -> None:
    """Check the structural hypotheses of SURFACE (preset name or file)."""
    quiet = ctx.obj["quiet"]
    body = {
        "surface": _surface_argument(surface, quiet),
        "step_index": step_index,
        "strict": not weak,
    }
    result = _post(ctx.obj["server"], "/validate", body, quiet)
    if not quiet:
        if fmt == "json":
            click.echo(json.dumps(result, sort_keys=True, indent=2))
        else:
            writer = csv.writer(sys.stdout, lineterminator="\n")
            writer.writerow(["hypothesis", "holds"])
            for key in ("h1_unimodal", "h2_shape_preserved", "h3_freq_monotone",
                        "h4_power_monotone"):
                writer.writerow([key, result[key]])
            for example in result["counterexamples"]:
                click.echo(f"counterexample: {example}", err=True)
    sys.exit(EXIT_OK if result["all_hold"] else EXIT_NEGATIVE)


@main.command()
@click.argument("surface", metavar="SURFACE")
@click.argument("cap_watts", type=float)
@click.option("--step-index", type=int, default=0, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv",
              show_default=True)
@click.pass_context
def oracle(ctx: click.Context, surface: str, cap_watts: float, step_index: int,
           fmt: str) -> None:
    """Print the brute-force optimum of SURFACE under CAP_WATTS."""
    quiet = ctx.obj["quiet"]
    body = {
        "surface": _surface_argument(surface, quiet),
        "cap_watts": cap_watts,
        "step_index": step_index,
    }
    result = _post(ctx.obj["server"], "/oracle", body, quiet)
    if not result["found"]:
        if not quiet:
            click.echo("no configuration satisfies the cap", err=True)
        sys.exit(EXIT_NEGATIVE)
    if not quiet:
        if fmt == "json":
            click.echo(json.dumps(result, sort_keys=True, indent=2))
        else:
            cfg = result["config"]
            click.echo(
                f"p={cfg['p']} t={cfg['t']} "
                f"throughput={result['throughput']!r} power={result['power']!r}"
            )
    sys.exit(EXIT_OK)


@main.command()
@click.argument("scenario_path", type=click.Path())
@click.option("--parameter", type=click.Choice(["cap", "sigma", "kappa"]),
              required=True)
@click.option("--values", required=True, metavar="V1,V2,...",
              help="Comma-separated sweep values.")
@click.option("--out", "out_dir", default="sweep", show_default=True)
@click.option("--seed", type=int, default=None, help="Override the scenario seed.")
@click.pass_context
def sweep(ctx: click.Context, scenario_path: str, parameter: str, values: str,
          out_dir: str, seed: int | None) -> None:
    """Re-run the scenario once per value, plus a combined summary CSV."""
    quiet = ctx.obj["quiet"]
    try:
        parsed = [float(v) for v in values.split(",") if v.strip() != ""]
    except ValueError:
        _fail(f"invalid sweep values: {values!r}", EXIT_INPUT, quiet)
    if not parsed:
        _fail("empty sweep range", EXIT_INPUT, quiet)
    doc = _load_json_file(scenario_path, quiet)
    if seed is not None:
        doc["seed"] = seed
    scenario_id = Path(scenario_path).stem
    body = {
        "scenario": doc,
        "parameter": parameter,
        "values": parsed,
        "scenario_id": scenario_id,
    }
    result = _post(ctx.obj["server"], "/sweep", body, quiet)
    base = Path(out_dir)
    base.mkdir(parents=True, exist_ok=True)
    for point in result["points"]:
        _write_run_outputs(point["payload"], base / point["point_id"])
    _write_csv(base / "summary.csv", result["summary_header"], result["summary_rows"])
    if not quiet:
        click.echo(f"swept {parameter} over {len(parsed)} points into {out_dir}",
                   err=True)
    sys.exit(EXIT_OK)


if __name__ == "__main__":
    main()
