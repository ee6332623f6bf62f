"""Scenario document parsing and strict validation."""

import json

import pytest

from captune.errors import ScenarioError
from captune.model import Config, SurfaceSpec, surface_to_dict, demo_surface
from captune.scenario import load_scenario, scenario_from_dict


def base_doc(**overrides):
    doc = {
        "surface": "genome-tx",
        "caps": [50, 60.0],
        "controller": {"total_steps": 100, "period_steps": 50},
        "seed": 9,
        "techniques": ["basic", "baseline"],
        "start": {"p": 11, "t": 1},
    }
    doc.update(overrides)
    return doc


class TestScenarioFromDict:
    def test_happy_path(self):
        spec = scenario_from_dict(base_doc())
        assert isinstance(spec.surface, SurfaceSpec)
        assert [c.cap_watts for c in spec.caps] == [50.0, 60.0]
        assert spec.controller.total_steps == 100
        assert spec.controller.period_steps == 50
        assert spec.controller.units_per_step == 5000
        assert spec.seed == 9
        assert spec.techniques == ("basic", "baseline")
        assert spec.start == Config(11, 1)

    def test_inline_surface(self):
        spec = scenario_from_dict(base_doc(surface=surface_to_dict(demo_surface())))
        assert spec.surface == demo_surface()

    def test_defaults(self):
        doc = base_doc()
        del doc["seed"], doc["techniques"], doc["start"]
        spec = scenario_from_dict(doc)
        assert spec.seed == 0
        assert spec.techniques == ("basic", "enhanced", "baseline", "dual-phase")
        assert spec.start == Config(11, 1)

    def test_unknown_top_level_key(self):
        with pytest.raises(ScenarioError, match="unknown key"):
            scenario_from_dict(base_doc(extra_knob=True))

    def test_unknown_controller_key(self):
        doc = base_doc(controller={"total_steps": 10, "burst": 3})
        with pytest.raises(ScenarioError, match="unknown key"):
            scenario_from_dict(doc)

    def test_unknown_technique(self):
        with pytest.raises(ScenarioError, match="unknown technique"):
            scenario_from_dict(base_doc(techniques=["basic", "triple-phase"]))

    def test_malformed_caps(self):
        with pytest.raises(ScenarioError):
            scenario_from_dict(base_doc(caps=[]))
        with pytest.raises(ScenarioError):
            scenario_from_dict(base_doc(caps=["fifty"]))

    def test_start_out_of_bounds(self):
        with pytest.raises(ScenarioError, match="start"):
            scenario_from_dict(base_doc(start={"p": 12, "t": 1}))

    def test_unknown_preset(self):
        with pytest.raises(Exception, match="unknown preset"):
            scenario_from_dict(base_doc(surface="bayes-lock"))

    def test_missing_total_steps(self):
        with pytest.raises(ScenarioError, match="total_steps"):
            scenario_from_dict(base_doc(controller={"period_steps": 10}))

    def test_non_numeric_controller_value(self):
        with pytest.raises(ScenarioError):
            scenario_from_dict(base_doc(controller={"total_steps": "many"}))


class TestLoadScenario:
    def test_reads_file(self, tmp_path):
        path = tmp_path / "s.json"
        path.write_text(json.dumps(base_doc()))
        assert load_scenario(path).seed == 9

    def test_missing_file(self, tmp_path):
        with pytest.raises(ScenarioError, match="cannot read"):
            load_scenario(tmp_path / "absent.json")

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(ScenarioError, match="not valid JSON"):
            load_scenario(path)
