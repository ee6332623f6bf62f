"""Brute-force oracle, comparison metrics, and the experiment harness."""

from __future__ import annotations

from dataclasses import dataclass

from . import model
from .errors import InvariantError
from .model import CapSpec, Config, Surface, validate_hypotheses
from .platform import SimulatedPlatform
from .scenario import ScenarioSpec
from .strategies import RUNNERS, TimeSeries


def brute_force_optimum(
    surface: Surface, cap: CapSpec, step_index: int = 0
) -> Config | None:
    """Exhaustive scan of the noise-free grid; the controllers never call this.

    Ties break exactly like the explorer: lower power, then fewer threads,
    then the slower P-state.
    """
    caps = surface.capabilities
    best_key: tuple | None = None
    best: Config | None = None
    for p in range(caps.p_tot):
        for t in range(1, caps.t_tot + 1):
            config = Config(p, t)
            pwr = model.power_at(surface, config, step_index)
            if pwr > cap.cap_watts:
                continue
            thr = model.throughput_at(surface, config, step_index)
            key = (thr, -pwr, -t, p)
            if best_key is None or key > best_key:
                best_key = key
                best = config
    return best


def powercap_error(series: TimeSeries, cap: CapSpec) -> float:
    """Mean relative excess over the cap across violating steps, in percent."""
    if not series.entries:
        raise InvariantError("powercap_error needs a non-empty series")
    c = cap.cap_watts
    excess = [
        100.0 * (e.stats.power - c) / c for e in series.entries if e.stats.power > c
    ]
    if not excess:
        return 0.0
    return sum(excess) / len(excess)


def speedup(series: TimeSeries, reference: TimeSeries) -> float:
    """Ratio of mean throughputs over the full runs, exploration included."""
    if len(series.entries) != len(reference.entries):
        raise InvariantError(
            f"series lengths differ: {len(series.entries)} vs {len(reference.entries)}"
        )
    return series.mean_throughput() / reference.mean_throughput()


@dataclass(frozen=True)
class TechniqueResult:
    mean_throughput: float
    speedup_vs_baseline: float | None
    cap_error_pct: float
    exploration_steps_total: int
    parked_steps: int
    step_bound_ok: bool

    def to_dict(self) -> dict:
        return {
            "mean_throughput": self.mean_throughput,
            "speedup_vs_baseline": self.speedup_vs_baseline,
            "cap_error_pct": self.cap_error_pct,
            "exploration_steps_total": self.exploration_steps_total,
            "parked_steps": self.parked_steps,
            "step_bound_ok": self.step_bound_ok,
        }


@dataclass(frozen=True)
class SegmentInfo:
    """Oracle pick and hypothesis check for one schedule segment."""

    start_step: int
    optimum: Config | None
    throughput: float | None
    power: float | None
    hypotheses_hold: bool

    def to_dict(self) -> dict:
        return {
            "start_step": self.start_step,
            "optimum": None if self.optimum is None else {
                "p": self.optimum.p, "t": self.optimum.t,
            },
            "throughput": self.throughput,
            "power": self.power,
            "hypotheses_hold": self.hypotheses_hold,
        }


@dataclass(frozen=True)
class Report:
    """Aggregated comparison of the techniques for one scenario and cap."""

    scenario: str
    cap_watts: float
    techniques: dict[str, TechniqueResult]
    segments: tuple[SegmentInfo, ...]

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "cap_watts": self.cap_watts,
            "techniques": {k: v.to_dict() for k, v in self.techniques.items()},
            "oracle": [s.to_dict() for s in self.segments],
        }


def _step_bound_ok(series: TimeSeries, caps: model.Capabilities) -> bool:
    bound = 3 * (caps.p_tot + caps.t_tot)
    return all(trace.get("steps", 0) <= bound for trace in series.traces)


def run_techniques(
    scenario: ScenarioSpec, cap: CapSpec
) -> dict[str, TimeSeries]:
    """One platform clone per technique, all seeded identically."""
    out: dict[str, TimeSeries] = {}
    for tech in scenario.techniques:
        platform = SimulatedPlatform(scenario.surface, scenario.seed)
        out[tech] = RUNNERS[tech](platform, cap, scenario.controller, scenario.start)
    return out


def run_experiment_detailed(
    scenario: ScenarioSpec, scenario_id: str = "scenario"
) -> tuple[list[Report], dict[float, dict[str, TimeSeries]]]:
    """Run every requested technique at every cap; keep the raw series too."""
    caps = scenario.surface.capabilities
    segment_starts = [0] + [
        e.start_step for e in scenario.surface.schedule if e.start_step > 0
    ]
    reports: list[Report] = []
    all_series: dict[float, dict[str, TimeSeries]] = {}
    for cap in scenario.caps:
        series = run_techniques(scenario, cap)
        all_series[cap.cap_watts] = series
        baseline = series.get("baseline")
        techniques: dict[str, TechniqueResult] = {}
        for tech, ts in series.items():
            techniques[tech] = TechniqueResult(
                mean_throughput=ts.mean_throughput(),
                speedup_vs_baseline=(
                    speedup(ts, baseline) if baseline is not None else None
                ),
                cap_error_pct=powercap_error(ts, cap),
                exploration_steps_total=ts.exploration_steps(),
                parked_steps=ts.parked_steps,
                step_bound_ok=_step_bound_ok(ts, caps),
            )
        segments = []
        for start in segment_starts:
            optimum = brute_force_optimum(scenario.surface, cap, start)
            segments.append(
                SegmentInfo(
                    start_step=start,
                    optimum=optimum,
                    throughput=(
                        model.throughput_at(scenario.surface, optimum, start)
                        if optimum else None
                    ),
                    power=(
                        model.power_at(scenario.surface, optimum, start)
                        if optimum else None
                    ),
                    hypotheses_hold=validate_hypotheses(
                        scenario.surface, start
                    ).all_hold,
                )
            )
        reports.append(
            Report(
                scenario=scenario_id,
                cap_watts=cap.cap_watts,
                techniques=techniques,
                segments=tuple(segments),
            )
        )
    return reports, all_series


def run_experiment(scenario: ScenarioSpec, scenario_id: str = "scenario") -> list[Report]:
    """Run every requested technique at every cap and aggregate the metrics."""
    reports, _ = run_experiment_detailed(scenario, scenario_id)
    return reports


SUMMARY_CSV_HEADER = [
    "scenario", "technique", "cap_w", "mean_throughput", "speedup",
    "cap_error_pct", "explore_steps",
]


def summary_csv_rows(reports: list[Report]) -> list[list]:
    rows = []
    for report in reports:
        for tech, res in report.techniques.items():
            rows.append(
                [
                    report.scenario,
                    tech,
                    report.cap_watts,
                    res.mean_throughput,
                    "" if res.speedup_vs_baseline is None else res.speedup_vs_baseline,
                    res.cap_error_pct,
                    res.exploration_steps_total,
                ]
            )
    return rows
