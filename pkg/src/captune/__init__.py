"""Adaptive power capping: joint P-state and thread-count tuning under a
power budget, with a deterministic simulator and experiment harness."""

from .errors import (
    BackendError,
    BoundsError,
    CaptuneError,
    ConfigurationError,
    InvariantError,
    ScenarioError,
)
from .evaluation import (
    Report,
    brute_force_optimum,
    powercap_error,
    run_experiment,
    speedup,
)
from .explorer import ExplorationResult, Observation, explore, phase1, phase2, phase3
from .model import (
    Capabilities,
    CapSpec,
    Config,
    FreqResponse,
    GenerationBounds,
    HypothesisReport,
    PowerParams,
    ScalabilityParams,
    ScheduleEntry,
    SurfaceSpec,
    TabularSurface,
    demo_surface,
    generate_surface,
    power_at,
    preset_profile,
    sample,
    throughput_at,
    validate_hypotheses,
)
from .platform import LinuxSysfsAdapter, SimulatedPlatform, StepStats
from .scenario import ScenarioSpec, load_scenario, scenario_from_dict
from .strategies import (
    ControllerConfig,
    TimeSeries,
    baseline_select,
    dual_phase_select,
    run_baseline,
    run_basic,
    run_dual_phase,
    run_enhanced,
)

__version__ = "0.1.0"

__all__ = [
    "BackendError",
    "BoundsError",
    "Capabilities",
    "CapSpec",
    "CaptuneError",
    "Config",
    "ConfigurationError",
    "ControllerConfig",
    "ExplorationResult",
    "FreqResponse",
    "GenerationBounds",
    "HypothesisReport",
    "InvariantError",
    "LinuxSysfsAdapter",
    "Observation",
    "PowerParams",
    "Report",
    "ScalabilityParams",
    "ScenarioError",
    "ScenarioSpec",
    "ScheduleEntry",
    "SimulatedPlatform",
    "StepStats",
    "SurfaceSpec",
    "TabularSurface",
    "TimeSeries",
    "baseline_select",
    "brute_force_optimum",
    "demo_surface",
    "dual_phase_select",
    "explore",
    "generate_surface",
    "load_scenario",
    "phase1",
    "phase2",
    "phase3",
    "power_at",
    "powercap_error",
    "preset_profile",
    "run_baseline",
    "run_basic",
    "run_dual_phase",
    "run_enhanced",
    "run_experiment",
    "sample",
    "scenario_from_dict",
    "speedup",
    "throughput_at",
    "validate_hypotheses",
]
