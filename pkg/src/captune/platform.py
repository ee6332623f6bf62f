"""Actuation/measurement backends driven by the controllers.

The simulated backend is the only one exercised by the test suite. The Linux
adapter documents the sysfs contract for running against real hardware; it
needs root and a cooperating application, so it is constructed but never
driven in CI.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Protocol

from . import model
from .errors import BackendError, ConfigurationError
from .model import Capabilities, CapSpec, Config, Surface

DEFAULT_UNITS_PER_STEP = 5000


@dataclass(frozen=True)
class StepStats:
    """Measurements for one control step (a fixed batch of work units)."""

    step_index: int
    config: Config
    units_done: int
    throughput: float
    power: float
    cap_violated: bool


class Platform(Protocol):
    """One exclusive control loop drives a platform; handles are independent."""

    def capabilities(self) -> Capabilities: ...

    @property
    def current(self) -> Config: ...

    def set_config(self, config: Config) -> None: ...

    def run_step(self, units: int, cap: CapSpec | None = None) -> StepStats: ...


class SimulatedPlatform:
    """Deterministic playback of a surface: same seed, same call sequence,
    same stats stream."""

    def __init__(
        self,
        surface: Surface,
        seed: int = 0,
        initial: Config | None = None,
        switch_penalty_steps: int = 0,
    ) -> None:
        if switch_penalty_steps < 0:
            raise ConfigurationError("switch_penalty_steps must be >= 0")
        self._surface = surface
        self._caps = surface.capabilities
        self._rng = random.Random(seed)
        self._current = initial if initial is not None else Config(self._caps.p_max, 1)
        model.check_bounds(self._caps, self._current)
        self._previous = self._current
        self._step_counter = 0
        self._switch_penalty = switch_penalty_steps
        self._penalty_left = 0

    def capabilities(self) -> Capabilities:
        return self._caps

    @property
    def current(self) -> Config:
        return self._current

    @property
    def step_counter(self) -> int:
        return self._step_counter

    def set_config(self, config: Config) -> None:
        model.check_bounds(self._caps, config)
        if config == self._current:
            return
        self._previous = self._current
        self._current = config
        self._penalty_left = self._switch_penalty

    def run_step(self, units: int, cap: CapSpec | None = None) -> StepStats:
        if units <= 0:
            raise ConfigurationError("units must be > 0")
        step = self._step_counter
        thr, pwr = model.sample(self._surface, self._current, step, self._rng)
        if self._penalty_left > 0:
            # Transition steps pay both sides of the switch: the slower
            # throughput and the higher power draw.
            old_thr, old_pwr = model.sample(self._surface, self._previous, step, self._rng)
            thr = min(thr, old_thr)
            pwr = max(pwr, old_pwr)
            self._penalty_left -= 1
        self._step_counter += 1
        violated = cap is not None and pwr > cap.cap_watts
        return StepStats(
            step_index=step,
            config=self._current,
            units_done=units,
            throughput=thr,
            power=pwr,
            cap_violated=violated,
        )


def rapl_energy_delta(prev_uj: int, cur_uj: int, max_range_uj: int) -> int:
    """Microjoules elapsed between two monotonic counter reads, wrap-corrected.

    The counter wraps to zero at max_range_uj; a reading below the previous
    one means exactly one wrap occurred within the sampling interval.
    """
    if max_range_uj <= 0:
        raise ConfigurationError("max_range_uj must be > 0")
    if cur_uj >= prev_uj:
        return cur_uj - prev_uj
    return cur_uj + max_range_uj - prev_uj


class LinuxSysfsAdapter:
    """Adapter contract for real hosts (documented; excluded from CI runs).

    P-state actuation writes the target frequency for every CPU:
      /sys/devices/system/cpu/cpu<N>/cpufreq/scaling_governor  <- "userspace"
      /sys/devices/system/cpu/cpu<N>/cpufreq/scaling_setspeed  <- kHz
    Energy comes from the powercap counters:
      /sys/class/powercap/intel-rapl:<K>/energy_uj          (monotonic, uJ)
      /sys/class/powercap/intel-rapl:<K>/max_energy_range_uj (wrap point)
    Thread-count actuation is application-specific, so the constructor takes
    a callback for it, plus one that runs a batch of work units and returns
    when they complete.
    """

    def __init__(
        self,
        capabilities: Capabilities,
        set_thread_count: Callable[[int], None],
        run_units: Callable[[int], None],
        cpu_ids: tuple[int, ...] = (0,),
        rapl_domains: tuple[int, ...] = (0,),
        sysfs_root: str = "/sys",
    ) -> None:
        self._caps = capabilities
        self._set_threads = set_thread_count
        self._run_units = run_units
        self._cpu_ids = cpu_ids
        self._rapl = rapl_domains
        self._root = Path(sysfs_root)
        self._current = Config(capabilities.p_max, 1)
        self._step_counter = 0

    def capabilities(self) -> Capabilities:
        return self._caps

    @property
    def current(self) -> Config:
        return self._current

    def _cpufreq_dir(self, cpu: int) -> Path:
        return self._root / "devices/system/cpu" / f"cpu{cpu}" / "cpufreq"

    def _rapl_dir(self, dom: int) -> Path:
        return self._root / "class/powercap" / f"intel-rapl:{dom}"

    def _write(self, path: Path, value: str) -> None:
        try:
            path.write_text(value)
        except OSError as exc:
            raise BackendError(f"write {path}: {exc}") from exc

    def _read_int(self, path: Path) -> int:
        try:
            return int(path.read_text().strip())
        except (OSError, ValueError) as exc:
            raise BackendError(f"read {path}: {exc}") from exc

    def set_config(self, config: Config) -> None:
        model.check_bounds(self._caps, config)
        khz = int(self._caps.freq_table[config.p] * 1e6)
        for cpu in self._cpu_ids:
            d = self._cpufreq_dir(cpu)
            self._write(d / "scaling_governor", "userspace")
            self._write(d / "scaling_setspeed", str(khz))
        self._set_threads(config.t)
        self._current = config

    def _read_energy_uj(self) -> list[int]:
        return [self._read_int(self._rapl_dir(d) / "energy_uj") for d in self._rapl]

    def run_step(self, units: int, cap: CapSpec | None = None) -> StepStats:
        if units <= 0:
            raise ConfigurationError("units must be > 0")
        ranges = [
            self._read_int(self._rapl_dir(d) / "max_energy_range_uj") for d in self._rapl
        ]
        before = self._read_energy_uj()
        t0 = time.monotonic()
        self._run_units(units)
        elapsed = time.monotonic() - t0
        after = self._read_energy_uj()
        if elapsed <= 0:
            raise BackendError("work batch completed in zero time")
        energy_uj = sum(
            rapl_energy_delta(b, a, r) for b, a, r in zip(before, after, ranges)
        )
        power = energy_uj / 1e6 / elapsed
        step = self._step_counter
        self._step_counter += 1
        return StepStats(
            step_index=step,
            config=self._current,
            units_done=units,
            throughput=units / elapsed,
            power=power,
            cap_violated=cap is not None and power > cap.cap_watts,
        )
