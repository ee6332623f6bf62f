"""Runtime policies: periodic re-exploration plus a steady or fluctuating
actuation phase, and the two reference selection strategies they are
compared against."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from statistics import fmean

from . import explorer
from .errors import ConfigurationError
from .model import CapSpec, Config
from .platform import Platform, StepStats

TECHNIQUES = ("basic", "enhanced", "baseline", "dual-phase")

MODE_EXPLORING = "exploring"
MODE_STEADY = "steady"
MODE_FLUCT_HIGH = "fluct_high"
MODE_FLUCT_LOW = "fluct_low"


@dataclass(frozen=True)
class ControllerConfig:
    """Loop parameters shared by every technique."""

    total_steps: int
    units_per_step: int = 5000
    period_steps: int = 150
    window_w: int = 20
    tolerance_l: float = 1.0

    def __post_init__(self) -> None:
        for name in ("total_steps", "units_per_step", "period_steps", "window_w"):
            if getattr(self, name) < 1:
                raise ConfigurationError(f"{name} must be >= 1")
        if self.tolerance_l < 0:
            raise ConfigurationError("tolerance_l must be >= 0")


@dataclass(frozen=True)
class TimeSeriesEntry:
    stats: StepStats
    mode: str


@dataclass(frozen=True)
class TimeSeries:
    """Per-step controller trace for one technique at one cap."""

    entries: tuple[TimeSeriesEntry, ...]
    cap_watts: float
    parked_steps: int = 0
    traces: tuple[dict, ...] = ()

    def mean_throughput(self) -> float:
        return fmean(e.stats.throughput for e in self.entries)

    def exploration_steps(self) -> int:
        return sum(1 for e in self.entries if e.mode == MODE_EXPLORING)

    def csv_rows(self) -> list[list]:
        rows = []
        for e in self.entries:
            rows.append(
                [
                    e.stats.step_index,
                    e.mode,
                    e.stats.config.p,
                    e.stats.config.t,
                    e.stats.throughput,
                    e.stats.power,
                    self.cap_watts,
                    1 if e.stats.power > self.cap_watts else 0,
                ]
            )
        return rows


TIMESERIES_CSV_HEADER = [
    "step", "mode", "p", "t", "throughput_ops_s", "power_w", "cap_w", "violated",
]


def _park_config(platform: Platform) -> Config:
    caps = platform.capabilities()
    return Config(caps.p_max, 1)


class _Recorder:
    """Accumulates entries up to the step budget."""

    def __init__(self, budget: int) -> None:
        self.budget = budget
        self.entries: list[TimeSeriesEntry] = []

    def full(self) -> bool:
        return len(self.entries) >= self.budget

    def add(self, stats: StepStats, mode: str) -> None:
        self.entries.append(TimeSeriesEntry(stats, mode))

    def hook(self, mode: str, extra=None):
        def on_stats(stats: StepStats) -> None:
            self.add(stats, mode)
            if extra is not None:
                extra(stats)

        return on_stats

    def finish(self) -> tuple[TimeSeriesEntry, ...]:
        return tuple(self.entries[: self.budget])


# ---------------------------------------------------------------------------
# Reference selection strategies


def baseline_select(
    platform: Platform,
    cap: CapSpec,
    units: int = 5000,
    on_stats=None,
) -> Config | None:
    """Most threads first, then the fastest P-state that still fits.

    Measures along the cheapest column: thread climb at the slowest P-state,
    then a P-state descent at the thread count found.
    """
    caps = platform.capabilities()
    cap_w = cap.cap_watts

    def measure(config: Config) -> StepStats:
        platform.set_config(config)
        stats = platform.run_step(units, cap)
        if on_stats is not None:
            on_stats(stats)
        return stats

    first = measure(Config(caps.p_max, 1))
    if first.power > cap_w:
        return None
    t_base = 1
    while t_base < caps.t_tot:
        probe = measure(Config(caps.p_max, t_base + 1))
        if probe.power > cap_w:
            break
        t_base += 1
    p_sel = caps.p_max
    while p_sel > 0:
        probe = measure(Config(p_sel - 1, t_base))
        if probe.power > cap_w:
            break
        p_sel -= 1
    return Config(p_sel, t_base)


def dual_phase_select(
    platform: Platform,
    cap: CapSpec,
    units: int = 5000,
    on_stats=None,
) -> Config | None:
    """Tune threads at the slowest P-state, then speed the clock up at that
    fixed thread count; the two knobs are never revisited jointly."""
    caps = platform.capabilities()
    cap_w = cap.cap_watts
    start = Config(caps.p_max, 1)
    r1 = explorer.phase1(platform, start, cap, units, on_stats)
    acceptable = [o for o in r1.log if o.power <= cap_w]
    if not acceptable:
        return None
    best = max(acceptable, key=lambda o: (o.throughput, -o.power))
    out = r1.out
    out_obs = next(o for o in r1.log if o.config == out)
    if out_obs.power <= cap_w:
        p, t = out.p, out.t
        while p > 0:
            platform.set_config(Config(p - 1, t))
            stats = platform.run_step(units, cap)
            if on_stats is not None:
                on_stats(stats)
            if stats.power > cap_w:
                break
            p -= 1
            if stats.throughput > best.throughput:
                best = explorer.Observation(Config(p, t), stats.throughput, stats.power, 1)
    return best.config


# ---------------------------------------------------------------------------
# Full controller runs


def run_basic(
    platform: Platform,
    cap: CapSpec,
    cc: ControllerConfig,
    start: Config | None = None,
) -> TimeSeries:
    """Re-explore periodically; sit at the winner in between."""
    park = _park_config(platform)
    next_start = start if start is not None else park
    rec = _Recorder(cc.total_steps)
    traces: list[dict] = []
    parked = 0
    while not rec.full():
        result = explorer.explore(
            platform, next_start, cap, cc.units_per_step, rec.hook(MODE_EXPLORING)
        )
        traces.append(result.to_dict())
        target = result.best if result.best is not None else park
        next_start = target
        for _ in range(cc.period_steps):
            if rec.full():
                break
            platform.set_config(target)
            stats = platform.run_step(cc.units_per_step, cap)
            rec.add(stats, MODE_STEADY)
            if result.best is None:
                parked += 1
    return TimeSeries(rec.finish(), cap.cap_watts, parked, tuple(traces))


def _shift_p(config: Config, delta: int, p_max: int) -> Config:
    return Config(min(max(config.p + delta, 0), p_max), config.t)


def run_enhanced(
    platform: Platform,
    cap: CapSpec,
    cc: ControllerConfig,
    start: Config | None = None,
) -> TimeSeries:
    """Like run_basic, but duty-cycles between the winner and a hotter or
    cooler companion so the windowed mean power rides the cap.

    Between explorations: fluctuate with the over-cap companion while the
    windowed mean allows it; on workload drift pushing the winner itself over
    the cap, fluctuate with the under-cap companion instead; if even that one
    lands over the cap, shift every candidate one P-state slower (and one
    faster again when the hot companion falls back under).
    """
    caps = platform.capabilities()
    park = _park_config(platform)
    cap_w = cap.cap_watts
    next_start = start if start is not None else park
    rec = _Recorder(cc.total_steps)
    traces: list[dict] = []
    parked = 0
    window: deque[float] = deque(maxlen=cc.window_w)

    def feed(stats: StepStats) -> None:
        window.append(stats.power)

    while not rec.full():
        result = explorer.explore(
            platform, next_start, cap, cc.units_per_step,
            rec.hook(MODE_EXPLORING, feed),
        )
        traces.append(result.to_dict())
        best_c = result.best
        high_c = result.high
        low_c = result.low
        if best_c is None:
            next_start = park
            for _ in range(cc.period_steps):
                if rec.full():
                    break
                platform.set_config(park)
                stats = platform.run_step(cc.units_per_step, cap)
                feed(stats)
                rec.add(stats, MODE_STEADY)
                parked += 1
            continue

        role = "best"  # which candidate is actuated this step
        # drift False: companion is the over-cap config; True: the under-cap one
        drift = False
        park_rest = False
        for _ in range(cc.period_steps):
            if rec.full():
                break
            if park_rest:
                platform.set_config(park)
                stats = platform.run_step(cc.units_per_step, cap)
                feed(stats)
                rec.add(stats, MODE_STEADY)
                parked += 1
                continue
            wmean = sum(window) / len(window) if window else None
            if wmean is not None:
                if not drift and high_c is not None:
                    if role == "best" and wmean <= cap_w - cc.tolerance_l:
                        role = "high"
                    elif role == "high" and wmean >= cap_w + cc.tolerance_l:
                        role = "best"
                elif drift and low_c is not None:
                    if role == "best" and wmean >= cap_w + cc.tolerance_l:
                        role = "low"
                    elif role == "low" and wmean <= cap_w - cc.tolerance_l:
                        role = "best"
            config = {"best": best_c, "high": high_c, "low": low_c}[role]
            mode = {
                "best": MODE_STEADY,
                "high": MODE_FLUCT_HIGH,
                "low": MODE_FLUCT_LOW,
            }[role]
            platform.set_config(config)
            stats = platform.run_step(cc.units_per_step, cap)
            feed(stats)
            rec.add(stats, mode)

            if role == "best" and stats.power > cap_w and not drift:
                drift = True
                role = "best"
                if low_c is None:
                    park_rest = True  # nothing cooler was seen; fail safe
            elif role == "low" and stats.power > cap_w:
                best_c = _shift_p(best_c, +1, caps.p_max)
                low_c = _shift_p(low_c, +1, caps.p_max)
                if high_c is not None:
                    high_c = _shift_p(high_c, +1, caps.p_max)
            elif role == "high" and stats.power < cap_w:
                best_c = _shift_p(best_c, -1, caps.p_max)
                high_c = _shift_p(high_c, -1, caps.p_max)
                if low_c is not None:
                    low_c = _shift_p(low_c, -1, caps.p_max)
        next_start = best_c
    return TimeSeries(rec.finish(), cap_w, parked, tuple(traces))


def _run_reselecting(
    platform: Platform,
    cap: CapSpec,
    cc: ControllerConfig,
    select,
    name: str,
) -> TimeSeries:
    park = _park_config(platform)
    rec = _Recorder(cc.total_steps)
    traces: list[dict] = []
    parked = 0
    while not rec.full():
        path_len = [0]

        def counting(stats: StepStats, _rec=rec, _n=path_len) -> None:
            _rec.add(stats, MODE_EXPLORING)
            _n[0] += 1

        chosen = select(platform, cap, cc.units_per_step, counting)
        traces.append(
            {
                "technique": name,
                "selected": None if chosen is None else {"p": chosen.p, "t": chosen.t},
                "steps": path_len[0],
            }
        )
        target = chosen if chosen is not None else park
        for _ in range(cc.period_steps):
            if rec.full():
                break
            platform.set_config(target)
            stats = platform.run_step(cc.units_per_step, cap)
            rec.add(stats, MODE_STEADY)
            if chosen is None:
                parked += 1
    return TimeSeries(rec.finish(), cap.cap_watts, parked, tuple(traces))


def run_baseline(
    platform: Platform, cap: CapSpec, cc: ControllerConfig, start: Config | None = None
) -> TimeSeries:
    return _run_reselecting(platform, cap, cc, baseline_select, "baseline")


def run_dual_phase(
    platform: Platform, cap: CapSpec, cc: ControllerConfig, start: Config | None = None
) -> TimeSeries:
    return _run_reselecting(platform, cap, cc, dual_phase_select, "dual-phase")


RUNNERS = {
    "basic": run_basic,
    "enhanced": run_enhanced,
    "baseline": run_baseline,
    "dual-phase": run_dual_phase,
}
