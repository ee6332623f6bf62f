"""HTTP facade over the library: stateless request/response computation.

Every endpoint is a pure function of its body, so the service can sit behind
multiple clients (CLI invocations, plot pipelines) without shared state.
"""

from __future__ import annotations

import dataclasses
from typing import Literal

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, ConfigDict, Field

from . import evaluation, model
from .errors import CaptuneError, ConfigurationError, InvariantError
from .model import PRESET_NAMES, CapSpec, SurfaceSpec
from .scenario import ScenarioSpec, resolve_surface, scenario_from_dict
from .strategies import TIMESERIES_CSV_HEADER


class ValidateRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    surface: str | dict
    step_index: int = 0
    strict: bool = True


class OracleRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    surface: str | dict
    cap_watts: float = Field(gt=0)
    step_index: int = 0


class RunRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    scenario: dict
    scenario_id: str = "scenario"


class SweepRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    scenario: dict
    parameter: Literal["cap", "sigma", "kappa"]
    values: list[float] = Field(min_length=1)
    scenario_id: str = "scenario"


def _http_error(exc: CaptuneError) -> HTTPException:
    if isinstance(exc, InvariantError):
        return HTTPException(status_code=500, detail=str(exc))
    return HTTPException(status_code=422, detail=str(exc))


def _run_payload(spec: ScenarioSpec, scenario_id: str) -> dict:
    reports, all_series = evaluation.run_experiment_detailed(spec, scenario_id)
    runs = []
    for cap_watts, series in all_series.items():
        for tech, ts in series.items():
            runs.append(
                {
                    "cap_watts": cap_watts,
                    "technique": tech,
                    "header": TIMESERIES_CSV_HEADER,
                    "rows": ts.csv_rows(),
                    "traces": list(ts.traces),
                    "parked_steps": ts.parked_steps,
                }
            )
    return {
        "scenario": scenario_id,
        "reports": [r.to_dict() for r in reports],
        "summary_header": evaluation.SUMMARY_CSV_HEADER,
        "summary_rows": evaluation.summary_csv_rows(reports),
        "runs": runs,
    }


def _sweep_point_scenario(spec: ScenarioSpec, parameter: str, value: float) -> ScenarioSpec:
    if parameter == "cap":
        return dataclasses.replace(spec, caps=(CapSpec(value),))
    if not isinstance(spec.surface, SurfaceSpec):
        raise ConfigurationError(f"cannot sweep {parameter!r} on a tabular surface")
    scal = dataclasses.replace(spec.surface.scalability, **{parameter: value})
    return dataclasses.replace(
        spec, surface=dataclasses.replace(spec.surface, scalability=scal)
    )


def create_app() -> FastAPI:
    app = FastAPI(title="captune", version="0.1.0")

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok"}

    @app.get("/presets")
    def presets() -> dict:
        return {"presets": list(PRESET_NAMES)}

    @app.post("/validate")
    def validate(req: ValidateRequest) -> dict:
        try:
            surface = resolve_surface(req.surface)
            report = model.validate_hypotheses(surface, req.step_index, req.strict)
        except CaptuneError as exc:
            raise _http_error(exc) from exc
        return {
            "h1_unimodal": report.h1_unimodal,
            "h2_shape_preserved": report.h2_shape_preserved,
            "h3_freq_monotone": report.h3_freq_monotone,
            "h4_power_monotone": report.h4_power_monotone,
            "all_hold": report.all_hold,
            "counterexamples": list(report.counterexamples),
        }

    @app.post("/oracle")
    def oracle(req: OracleRequest) -> dict:
        try:
            surface = resolve_surface(req.surface)
            best = evaluation.brute_force_optimum(
                surface, CapSpec(req.cap_watts), req.step_index
            )
        except CaptuneError as exc:
            raise _http_error(exc) from exc
        if best is None:
            return {"found": False, "config": None, "throughput": None, "power": None}
        return {
            "found": True,
            "config": {"p": best.p, "t": best.t},
            "throughput": model.throughput_at(surface, best, req.step_index),
            "power": model.power_at(surface, best, req.step_index),
        }

    @app.post("/run")
    def run(req: RunRequest) -> dict:
        try:
            spec = scenario_from_dict(req.scenario)
            return _run_payload(spec, req.scenario_id)
        except CaptuneError as exc:
            raise _http_error(exc) from exc

    @app.post("/sweep")
    def sweep(req: SweepRequest) -> dict:
        try:
            spec = scenario_from_dict(req.scenario)
            points = []
            for value in req.values:
                point_spec = _sweep_point_scenario(spec, req.parameter, value)
                point_id = f"{req.scenario_id}_{req.parameter}{value:g}"
                points.append(
                    {
                        "value": value,
                        "point_id": point_id,
                        "payload": _run_payload(point_spec, point_id),
                    }
                )
        except CaptuneError as exc:
            raise _http_error(exc) from exc
        summary_rows = []
        for point in points:
            summary_rows.extend(point["payload"]["summary_rows"])
        return {
            "scenario": req.scenario_id,
            "parameter": req.parameter,
            "points": points,
            "summary_header": evaluation.SUMMARY_CSV_HEADER,
            "summary_rows": summary_rows,
        }

    return app


app = create_app()
