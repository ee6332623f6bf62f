"""Scenario documents: everything one experiment needs, in one JSON file."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from . import model
from .errors import ScenarioError
from .model import CapSpec, Config, Surface
from .strategies import TECHNIQUES, ControllerConfig

_CONTROLLER_KEYS = {
    "total_steps", "units_per_step", "period_steps", "window_w", "tolerance_l",
}


@dataclass(frozen=True)
class ScenarioSpec:
    surface: Surface
    caps: tuple[CapSpec, ...]
    controller: ControllerConfig
    seed: int
    techniques: tuple[str, ...]
    start: Config


def resolve_surface(spec: str | dict) -> Surface:
    """A surface is either a preset name or an inline surface document."""
    if isinstance(spec, str):
        return model.preset_profile(spec)
    if isinstance(spec, dict):
        return model.surface_document_from_dict(spec)
    raise ScenarioError("surface: expected a preset name or an object")


def scenario_from_dict(doc: dict) -> ScenarioSpec:
    if not isinstance(doc, dict):
        raise ScenarioError("scenario: expected an object")
    allowed = {"surface", "caps", "controller", "seed", "techniques", "start"}
    unknown = set(doc) - allowed
    if unknown:
        raise ScenarioError(f"scenario: unknown key(s) {sorted(unknown)}")
    for key in ("surface", "caps", "controller"):
        if key not in doc:
            raise ScenarioError(f"scenario: missing key {key!r}")

    surface = resolve_surface(doc["surface"])

    caps_doc = doc["caps"]
    if not isinstance(caps_doc, list) or not caps_doc:
        raise ScenarioError("scenario.caps: expected a non-empty list of watts")
    caps = []
    for i, value in enumerate(caps_doc):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ScenarioError(f"scenario.caps[{i}]: expected a number")
        caps.append(CapSpec(float(value)))

    ctl_doc = doc["controller"]
    if not isinstance(ctl_doc, dict):
        raise ScenarioError("scenario.controller: expected an object")
    unknown = set(ctl_doc) - _CONTROLLER_KEYS
    if unknown:
        raise ScenarioError(f"scenario.controller: unknown key(s) {sorted(unknown)}")
    if "total_steps" not in ctl_doc:
        raise ScenarioError("scenario.controller: missing key 'total_steps'")
    for key, value in ctl_doc.items():
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ScenarioError(f"scenario.controller.{key}: expected a number")
        if key != "tolerance_l" and not isinstance(value, int):
            raise ScenarioError(f"scenario.controller.{key}: expected an integer")
    controller = ControllerConfig(**ctl_doc)

    seed = doc.get("seed", 0)
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise ScenarioError("scenario.seed: expected an integer")

    techniques_doc = doc.get("techniques", list(TECHNIQUES))
    if not isinstance(techniques_doc, list) or not techniques_doc:
        raise ScenarioError("scenario.techniques: expected a non-empty list")
    for tech in techniques_doc:
        if tech not in TECHNIQUES:
            raise ScenarioError(
                f"scenario.techniques: unknown technique {tech!r}; "
                f"known: {', '.join(TECHNIQUES)}"
            )
    if len(set(techniques_doc)) != len(techniques_doc):
        raise ScenarioError("scenario.techniques: duplicates not allowed")

    grid = surface.capabilities
    start_doc = doc.get("start", {"p": grid.p_max, "t": 1})
    if not isinstance(start_doc, dict) or set(start_doc) != {"p", "t"}:
        raise ScenarioError("scenario.start: expected an object with keys p and t")
    start = Config(int(start_doc["p"]), int(start_doc["t"]))
    try:
        model.check_bounds(grid, start)
    except Exception as exc:
        raise ScenarioError(f"scenario.start: {exc}") from exc

    return ScenarioSpec(
        surface=surface,
        caps=tuple(caps),
        controller=controller,
        seed=seed,
        techniques=tuple(techniques_doc),
        start=start,
    )


def load_scenario(path: str | Path) -> ScenarioSpec:
    try:
        raw = Path(path).read_text()
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario file: {exc}") from exc
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"scenario file is not valid JSON: {exc}") from exc
    return scenario_from_dict(doc)
