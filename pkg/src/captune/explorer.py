"""Three-phase configuration exploration under a power cap.

The search measures a pruned path through the (P-state, threads) grid:

  phase 1  climbs the thread count at the starting P-state;
  phase 2  sweeps toward faster P-states, shedding threads at the frontier;
  phase 3  sweeps toward slower P-states, adding threads inside the budget.

Three exclusion rules keep the path linear in the grid dimensions: once a
throughput drop is seen at some thread count, no configuration at or above
it can win at any P-state; once a thread count fits the budget at some
P-state, slower P-states at that thread count are strictly worse; once a
configuration blows the budget, everything hotter (faster clock, more
threads) blows it too. Revisited configurations are answered from the log
instead of being re-measured.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import model
from .model import CapSpec, Config
from .platform import DEFAULT_UNITS_PER_STEP, Platform, StepStats

StatsHook = Callable[[StepStats], None]


@dataclass(frozen=True)
class Observation:
    """First measurement of a configuration within one exploration."""

    config: Config
    throughput: float
    power: float
    phase: int


@dataclass(frozen=True)
class ExplorationResult:
    best: Config | None
    high: Config | None
    low: Config | None
    phase1_out: Config
    phase2_out: Config | None
    phase3_out: Config | None
    log: tuple[Observation, ...]
    steps: int
    peak_confirmed: bool

    def to_dict(self) -> dict:
        def cfg(c: Config | None) -> dict | None:
            return None if c is None else {"p": c.p, "t": c.t}

        return {
            "best": cfg(self.best),
            "high": cfg(self.high),
            "low": cfg(self.low),
            "phase1_out": cfg(self.phase1_out),
            "phase2_out": cfg(self.phase2_out),
            "phase3_out": cfg(self.phase3_out),
            "steps": self.steps,
            "peak_confirmed": self.peak_confirmed,
            "log": [
                {
                    "p": o.config.p,
                    "t": o.config.t,
                    "throughput": o.throughput,
                    "power": o.power,
                    "phase": o.phase,
                }
                for o in self.log
            ],
        }


@dataclass(frozen=True)
class Phase1Result:
    out: Config
    peak_confirmed: bool
    log: list[Observation]


class _Walk:
    """Shared exploration state: the log plus the three exclusion rules."""

    def __init__(
        self,
        platform: Platform,
        cap: CapSpec,
        log: list[Observation],
        units: int,
        on_stats: StatsHook | None,
    ) -> None:
        self.platform = platform
        self.cap = cap
        self.caps = platform.capabilities()
        self.log = log
        self.units = units
        self.on_stats = on_stats
        self.seen: dict[Config, Observation] = {}
        # Rule 1: smallest thread count where a same-P-state throughput drop
        # was observed; everything at or beyond it is descending at every p.
        self.desc_t = self.caps.t_tot + 1
        # Rule 2: per thread count, smallest P-state index found acceptable.
        self.acc_min_p: dict[int, int] = {}
        # Rule 3: per P-state index, smallest thread count proven to violate
        # the cap there (taking the h4 power ordering into account).
        self.viol_min_t = [self.caps.t_tot + 1] * self.caps.p_tot
        for obs in log:
            self._account(obs)

    # -- rule bookkeeping ---------------------------------------------------

    def _account(self, obs: Observation) -> None:
        self.seen[obs.config] = obs
        c = obs.config
        if self.acceptable(obs):
            self.acc_min_p[c.t] = min(self.acc_min_p.get(c.t, c.p), c.p)
        else:
            for p in range(c.p + 1):
                if c.t < self.viol_min_t[p]:
                    self.viol_min_t[p] = c.t
        for neighbor_t, hi_t in ((c.t - 1, c.t), (c.t + 1, c.t + 1)):
            other = self.seen.get(Config(c.p, neighbor_t))
            if other is None:
                continue
            lo, hi = (other, obs) if neighbor_t < c.t else (obs, other)
            if hi.throughput <= lo.throughput and hi_t < self.desc_t:
                self.desc_t = hi_t

    def acceptable(self, obs: Observation) -> bool:
        return obs.power <= self.cap.cap_watts

    def in_descending_region(self, t: int) -> bool:
        return t >= self.desc_t

    def dominated_at_same_t(self, config: Config) -> bool:
        return self.acc_min_p.get(config.t, config.p + 1) < config.p

    def known_to_violate(self, config: Config) -> bool:
        return self.viol_min_t[config.p] <= config.t

    # -- measurement ---------------------------------------------------------

    def measure(self, config: Config, phase: int) -> Observation:
        hit = self.seen.get(config)
        if hit is not None:
            return hit
        self.platform.set_config(config)
        stats = self.platform.run_step(self.units, self.cap)
        if self.on_stats is not None:
            self.on_stats(stats)
        obs = Observation(config, stats.throughput, stats.power, phase)
        self.log.append(obs)
        self._account(obs)
        return obs


def _best_acceptable(walk: _Walk, observations: list[Observation]) -> Observation | None:
    best: Observation | None = None
    for obs in observations:
        if not walk.acceptable(obs):
            continue
        if best is None or _better(obs, best):
            best = obs
    return best


def _better(a: Observation, b: Observation) -> bool:
    """Throughput first; ties prefer lower power, then fewer threads, then
    the slower P-state."""
    ka = (a.throughput, -a.power, -a.config.t, a.config.p)
    kb = (b.throughput, -b.power, -b.config.t, b.config.p)
    return ka > kb


def phase1(
    platform: Platform,
    start: Config,
    cap: CapSpec,
    units: int = DEFAULT_UNITS_PER_STEP,
    on_stats: StatsHook | None = None,
) -> Phase1Result:
    """Tune the thread count at the starting P-state.

    Climbs while throughput improves within the cap; otherwise walks the
    thread count down, through the frontier if needed, until the throughput
    peak inside the budget has clearly been passed.
    """
    caps = platform.capabilities()
    model.check_bounds(caps, start)
    log: list[Observation] = []
    walk = _Walk(platform, cap, log, units, on_stats)
    mine: list[Observation] = []

    def measure(config: Config) -> Observation:
        obs = walk.measure(config, 1)
        mine.append(obs)
        return obs

    s0 = measure(start)
    ascending = False
    first_up: Observation | None = None
    if start.t < caps.t_tot and walk.acceptable(s0) and not walk.known_to_violate(
        Config(start.p, start.t + 1)
    ):
        first_up = measure(Config(start.p, start.t + 1))
        ascending = walk.acceptable(first_up) and first_up.throughput > s0.throughput

    if ascending:
        prev = first_up
        while prev.config.t < caps.t_tot:
            nxt = Config(start.p, prev.config.t + 1)
            if walk.known_to_violate(nxt):
                break
            obs = measure(nxt)
            if not walk.acceptable(obs) or obs.throughput <= prev.throughput:
                break
            prev = obs
    else:
        # Walk downward: forced through cap-violating configurations, and
        # stopped one step past the throughput peak inside the budget.
        best_so_far = _best_acceptable(walk, mine)
        for t in range(start.t - 1, 0, -1):
            obs = measure(Config(start.p, t))
            if not walk.acceptable(obs):
                continue
            if best_so_far is not None and obs.throughput <= best_so_far.throughput:
                break
            best_so_far = obs

    best = _best_acceptable(walk, mine)
    out = best.config if best is not None else Config(start.p, 1)
    above = walk.seen.get(Config(out.p, out.t + 1))
    peak_confirmed = (
        best is not None
        and above is not None
        and walk.acceptable(above)
        and above.throughput <= best.throughput
    )
    return Phase1Result(out=out, peak_confirmed=peak_confirmed, log=log)


def phase2(
    platform: Platform,
    from_config: Config,
    cap: CapSpec,
    log: list[Observation],
    units: int = DEFAULT_UNITS_PER_STEP,
    on_stats: StatsHook | None = None,
) -> Config | None:
    """Sweep toward faster P-states from the phase-1 pick.

    Each P-state decrement that lands over the budget sheds threads until the
    configuration fits again. Runs only when the starting point itself fits.
    """
    walk = _Walk(platform, cap, log, units, on_stats)
    from_obs = walk.seen.get(from_config)
    if from_obs is None or not walk.acceptable(from_obs):
        return None
    if from_config.p == 0:
        return from_config

    mine: list[Observation] = [from_obs]
    p, t = from_config.p, from_config.t
    while p > 0:
        p -= 1
        while True:
            candidate = Config(p, t)
            if walk.known_to_violate(candidate):
                violated = True
            else:
                obs = walk.measure(candidate, 2)
                mine.append(obs)
                violated = not walk.acceptable(obs)
            if not violated:
                break
            t -= 1
            if t == 0:  # the single-thread column itself blew the budget
                best = _best_acceptable(walk, mine)
                return best.config if best is not None else None

    best = _best_acceptable(walk, mine)
    return best.config if best is not None else None


def phase3(
    platform: Platform,
    from_config: Config,
    cap: CapSpec,
    peak_confirmed: bool,
    log: list[Observation],
    units: int = DEFAULT_UNITS_PER_STEP,
    on_stats: StatsHook | None = None,
) -> Config | None:
    """Sweep toward slower P-states, climbing threads inside the budget.

    Skipped when phase 1 already confirmed the scalability peak within the
    cap: slower clocks cannot beat it. Terminates at the first throughput
    drop inside the budget or when the P-state range is exhausted.
    """
    if peak_confirmed:
        return None
    walk = _Walk(platform, cap, log, units, on_stats)
    caps = walk.caps
    p_max = caps.p_max
    fallback = Config(p_max, from_config.t)
    if from_config.p == p_max:
        return fallback

    mine: list[Observation] = []
    p, t = from_config.p + 1, from_config.t
    prev_thr: float | None = None
    while True:
        candidate = Config(p, t)
        if walk.in_descending_region(t):
            break
        if walk.dominated_at_same_t(candidate):
            # A faster P-state already fit the budget at this thread count;
            # this point cannot win, but climbing past it still can.
            t += 1
            if t > caps.t_tot:
                break
            continue
        if walk.known_to_violate(candidate):
            violated = True
        else:
            obs = walk.measure(candidate, 3)
            mine.append(obs)
            violated = not walk.acceptable(obs)
        if violated:
            p += 1
            if p > p_max:
                break
            prev_thr = None  # new climb at the slower P-state, same threads
            continue
        if prev_thr is not None and obs.throughput <= prev_thr:
            break
        prev_thr = obs.throughput
        t += 1
        if t > caps.t_tot:
            break

    best = _best_acceptable(walk, mine)
    return best.config if best is not None else fallback


def explore(
    platform: Platform,
    start: Config,
    cap: CapSpec,
    units: int = DEFAULT_UNITS_PER_STEP,
    on_stats: StatsHook | None = None,
) -> ExplorationResult:
    """Run all three phases and select the best measured configuration.

    Also picks the fluctuation candidates: the most efficient measured
    configuration above the winner's throughput (necessarily over the cap)
    and the most efficient one below the winner's power draw.
    """
    r1 = phase1(platform, start, cap, units, on_stats)
    log = r1.log
    p2 = phase2(platform, r1.out, cap, log, units, on_stats)
    p3 = phase3(platform, r1.out, cap, r1.peak_confirmed, log, units, on_stats)

    cap_w = cap.cap_watts
    best: Observation | None = None
    for obs in log:
        if obs.power <= cap_w and (best is None or _better(obs, best)):
            best = obs

    high: Observation | None = None
    low: Observation | None = None
    if best is not None:
        for obs in log:
            if obs.throughput > best.throughput:
                if high is None or obs.throughput / obs.power > high.throughput / high.power:
                    high = obs
            if obs.power < best.power:
                if low is None or obs.throughput / obs.power > low.throughput / low.power:
                    low = obs

    return ExplorationResult(
        best=best.config if best else None,
        high=high.config if high else None,
        low=low.config if low else None,
        phase1_out=r1.out,
        phase2_out=p2,
        phase3_out=p3,
        log=tuple(log),
        steps=len(log),
        peak_confirmed=r1.peak_confirmed,
    )
