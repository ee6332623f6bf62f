"""Configuration grid and parametric throughput/power surfaces.

The ground-truth workload model is multiplicative: a contention-limited
speedup curve in the thread count times a frequency response factor in the
P-state. That shape makes throughput unimodal in threads with a peak that
does not move across P-states, and power strictly monotone in both knobs,
which is exactly the structure the exploration strategies rely on.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .errors import BoundsError, ConfigurationError

DEFAULT_P_TOT = 12
DEFAULT_T_TOT = 20

# Index 0 is the turbo state; the rest step down to the lowest rated clock.
DEFAULT_FREQ_TABLE = (3.1, 2.2, 2.1, 2.0, 1.9, 1.8, 1.7, 1.6, 1.5, 1.4, 1.3, 1.2)


@dataclass(frozen=True)
class Capabilities:
    """Grid limits of a platform: P-state count, max threads, clock table."""

    p_tot: int
    t_tot: int
    freq_table: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.p_tot < 1 or self.t_tot < 1:
            raise ConfigurationError("p_tot and t_tot must be >= 1")
        if len(self.freq_table) != self.p_tot:
            raise ConfigurationError(
                f"freq_table has {len(self.freq_table)} entries, expected {self.p_tot}"
            )
        for i, f in enumerate(self.freq_table):
            if not (math.isfinite(f) and f > 0):
                raise ConfigurationError(f"freq_table[{i}] must be finite and > 0")
            if i > 0 and f >= self.freq_table[i - 1]:
                raise ConfigurationError("freq_table must be strictly decreasing")

    @property
    def p_max(self) -> int:
        """Largest P-state index (the slowest, lowest-power state)."""
        return self.p_tot - 1


@dataclass(frozen=True, order=True)
class Config:
    """One point of the search space: P-state index and thread count."""

    p: int
    t: int


def check_bounds(caps: Capabilities, config: Config) -> None:
    if not (0 <= config.p < caps.p_tot and 1 <= config.t <= caps.t_tot):
        raise BoundsError(
            f"config (p={config.p}, t={config.t}) outside grid "
            f"p in [0, {caps.p_tot - 1}], t in [1, {caps.t_tot}]"
        )


@dataclass(frozen=True)
class CapSpec:
    """A power cap in watts."""

    cap_watts: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.cap_watts) and self.cap_watts > 0):
            raise ConfigurationError("cap_watts must be finite and > 0")


@dataclass(frozen=True)
class ScalabilityParams:
    """Two-coefficient speedup curve: contention (sigma) and coherence (kappa).

    speedup(t) = t / (1 + sigma*(t-1) + kappa*t*(t-1)); speedup(1) == 1.
    """

    sigma: float
    kappa: float
    base_rate: float

    def __post_init__(self) -> None:
        if self.sigma < 0 or self.kappa < 0:
            raise ConfigurationError("sigma and kappa must be >= 0")
        if not (math.isfinite(self.base_rate) and self.base_rate > 0):
            raise ConfigurationError("base_rate must be finite and > 0")

    def speedup(self, t: int) -> float:
        return t / (1.0 + self.sigma * (t - 1) + self.kappa * t * (t - 1))


@dataclass(frozen=True)
class FreqResponse:
    """Throughput scaling with clock: factor(p) = (freq[p] / freq[0]) ** alpha."""

    alpha: float

    def __post_init__(self) -> None:
        if not (0 < self.alpha <= 1):
            raise ConfigurationError("alpha must be in (0, 1]")


@dataclass(frozen=True)
class PowerParams:
    """Package power: p_base + t * (c0 + c1 * freq**gamma)."""

    p_base: float
    c0: float
    c1: float
    gamma: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.p_base) and self.p_base > 0):
            raise ConfigurationError("p_base must be finite and > 0")
        if self.c0 < 0 or self.c1 < 0:
            raise ConfigurationError("c0 and c1 must be >= 0")
        if self.gamma < 1:
            raise ConfigurationError("gamma must be >= 1")

    def per_thread_watts(self, freq_ghz: float) -> float:
        return self.c0 + self.c1 * freq_ghz**self.gamma


@dataclass(frozen=True)
class ScheduleEntry:
    """Parameter override active from start_step onward (groups replace whole)."""

    start_step: int
    scalability: ScalabilityParams | None = None
    freq_response: FreqResponse | None = None
    power_model: PowerParams | None = None

    def __post_init__(self) -> None:
        if self.start_step < 0:
            raise ConfigurationError("schedule start_step must be >= 0")
        if (
            self.scalability is None
            and self.freq_response is None
            and self.power_model is None
        ):
            raise ConfigurationError("schedule entry overrides nothing")


@dataclass(frozen=True)
class SurfaceSpec:
    """Parametric ground truth plus measurement noise and a change schedule."""

    capabilities: Capabilities
    scalability: ScalabilityParams
    freq_response: FreqResponse
    power_model: PowerParams
    noise: float = 0.0
    schedule: tuple[ScheduleEntry, ...] = ()

    def __post_init__(self) -> None:
        if not (math.isfinite(self.noise) and self.noise >= 0):
            raise ConfigurationError("noise amplitude must be finite and >= 0")
        starts = [e.start_step for e in self.schedule]
        if starts != sorted(starts) or len(set(starts)) != len(starts):
            raise ConfigurationError("schedule start_steps must be strictly increasing")

    def params_at(
        self, step_index: int
    ) -> tuple[ScalabilityParams, FreqResponse, PowerParams]:
        """Effective parameter groups for a given control step."""
        scal, freq, power = self.scalability, self.freq_response, self.power_model
        for entry in self.schedule:
            if entry.start_step > step_index:
                break
            scal = entry.scalability or scal
            freq = entry.freq_response or freq
            power = entry.power_model or power
        return scal, freq, power


class TabularSurface:
    """Surface backed by explicit grids; used to build hypothesis violators.

    The parametric family cannot express a bimodal thread curve, so negative
    controls supply throughput/power tables directly. Static only.
    """

    def __init__(
        self,
        capabilities: Capabilities,
        throughput_table: tuple[tuple[float, ...], ...],
        power_table: tuple[tuple[float, ...], ...],
        noise: float = 0.0,
    ) -> None:
        caps = capabilities
        for name, table in (("throughput", throughput_table), ("power", power_table)):
            if len(table) != caps.p_tot or any(len(row) != caps.t_tot for row in table):
                raise ConfigurationError(f"{name}_table must be p_tot x t_tot")
            if any(v <= 0 or not math.isfinite(v) for row in table for v in row):
                raise ConfigurationError(f"{name}_table entries must be finite and > 0")
        self.capabilities = caps
        self.throughput_table = tuple(tuple(row) for row in throughput_table)
        self.power_table = tuple(tuple(row) for row in power_table)
        self.noise = noise
        self.schedule: tuple[ScheduleEntry, ...] = ()

    def throughput_at(self, config: Config, step_index: int = 0) -> float:
        check_bounds(self.capabilities, config)
        return self.throughput_table[config.p][config.t - 1]

    def power_at(self, config: Config, step_index: int = 0) -> float:
        check_bounds(self.capabilities, config)
        return self.power_table[config.p][config.t - 1]


Surface = SurfaceSpec | TabularSurface


def throughput_at(surface: Surface, config: Config, step_index: int = 0) -> float:
    """Noise-free throughput (ops/sec) under the schedule segment at step_index."""
    if isinstance(surface, TabularSurface):
        return surface.throughput_at(config, step_index)
    check_bounds(surface.capabilities, config)
    if step_index < 0:
        raise ConfigurationError("step_index must be >= 0")
    scal, freq, _ = surface.params_at(step_index)
    table = surface.capabilities.freq_table
    factor = (table[config.p] / table[0]) ** freq.alpha
    return scal.base_rate * scal.speedup(config.t) * factor


def power_at(surface: Surface, config: Config, step_index: int = 0) -> float:
    """Noise-free power draw (watts) under the schedule segment at step_index."""
    if isinstance(surface, TabularSurface):
        return surface.power_at(config, step_index)
    check_bounds(surface.capabilities, config)
    if step_index < 0:
        raise ConfigurationError("step_index must be >= 0")
    _, _, power = surface.params_at(step_index)
    freq_ghz = surface.capabilities.freq_table[config.p]
    return power.p_base + config.t * power.per_thread_watts(freq_ghz)


def sample(
    surface: Surface, config: Config, step_index: int, rng: random.Random
) -> tuple[float, float]:
    """One measurement: ground truth scaled by independent uniform noise factors.

    noise == 0 returns ground truth exactly and consumes no random draws.
    """
    thr = throughput_at(surface, config, step_index)
    pwr = power_at(surface, config, step_index)
    eps = surface.noise
    if eps == 0.0:
        return thr, pwr
    thr *= 1.0 + rng.uniform(-eps, eps)
    pwr *= 1.0 + rng.uniform(-eps, eps)
    return thr, pwr


# ---------------------------------------------------------------------------
# Hypothesis validation


@dataclass(frozen=True)
class HypothesisReport:
    """Exhaustive grid check of the four structural assumptions."""

    h1_unimodal: bool
    h2_shape_preserved: bool
    h3_freq_monotone: bool
    h4_power_monotone: bool
    counterexamples: tuple[str, ...] = ()

    @property
    def all_hold(self) -> bool:
        return (
            self.h1_unimodal
            and self.h2_shape_preserved
            and self.h3_freq_monotone
            and self.h4_power_monotone
        )


def _sign(x: float) -> int:
    return (x > 0) - (x < 0)


def validate_hypotheses(
    surface: Surface, step_index: int = 0, strict: bool = True
) -> HypothesisReport:
    """Check unimodality, shape preservation, and both monotonicities.

    strict=False tolerates equal throughput across adjacent P-states (weakly
    monotone clocks); power monotonicity is always checked weakly, matching
    how the acceptable-region frontier is defined.
    """
    caps = surface.capabilities
    p_tot, t_tot = caps.p_tot, caps.t_tot
    thr = [
        [throughput_at(surface, Config(p, t), step_index) for t in range(1, t_tot + 1)]
        for p in range(p_tot)
    ]
    pwr = [
        [power_at(surface, Config(p, t), step_index) for t in range(1, t_tot + 1)]
        for p in range(p_tot)
    ]

    bad: list[str] = []
    h1 = True
    for p in range(p_tot):
        descending = False
        for i in range(t_tot - 1):
            d = thr[p][i + 1] - thr[p][i]
            if d <= 0:
                descending = True
            elif descending:
                h1 = False
                bad.append(f"h1: thr(p={p}) rises again at t={i + 2}")
                break

    h2 = True
    for i in range(t_tot - 1):
        signs = {_sign(thr[p][i + 1] - thr[p][i]) for p in range(p_tot)}
        if len(signs) > 1:
            h2 = False
            bad.append(f"h2: slope sign at t={i + 1}->{i + 2} differs across P-states")
            break

    h3 = True
    for p in range(p_tot - 1):
        for i in range(t_tot):
            hi, lo = thr[p][i], thr[p + 1][i]
            if hi < lo or (strict and hi == lo):
                h3 = False
                bad.append(f"h3: thr(p={p}, t={i + 1}) not above thr(p={p + 1}, t={i + 1})")
                break
        if not h3:
            break

    h4 = True
    for p in range(p_tot):
        for i in range(t_tot - 1):
            if pwr[p][i + 1] < pwr[p][i]:
                h4 = False
                bad.append(f"h4: pwr(p={p}) drops at t={i + 2}")
                break
        if not h4:
            break
    if h4:
        for p in range(p_tot - 1):
            for i in range(t_tot):
                if pwr[p][i] < pwr[p + 1][i]:
                    h4 = False
                    bad.append(f"h4: pwr(p={p}, t={i + 1}) below pwr(p={p + 1}, t={i + 1})")
                    break
            if not h4:
                break

    return HypothesisReport(h1, h2, h3, h4, tuple(bad))


# ---------------------------------------------------------------------------
# Generation


@dataclass(frozen=True)
class GenerationBounds:
    """Uniform draw ranges for random surface instances."""

    p_tot: tuple[int, int] = (1, DEFAULT_P_TOT)
    t_tot: tuple[int, int] = (1, DEFAULT_T_TOT)
    freq_ghz: tuple[float, float] = (0.8, 3.6)
    sigma: tuple[float, float] = (0.0, 1.4)
    kappa: tuple[float, float] = (0.0, 0.05)
    base_rate: tuple[float, float] = (1e4, 1e6)
    alpha: tuple[float, float] = (0.3, 1.0)
    p_base: tuple[float, float] = (5.0, 40.0)
    c0: tuple[float, float] = (0.0, 2.0)
    c1: tuple[float, float] = (0.05, 1.5)
    gamma: tuple[float, float] = (1.0, 3.5)

    def __post_init__(self) -> None:
        for name in ("p_tot", "t_tot", "freq_ghz", "sigma", "kappa", "base_rate",
                     "alpha", "p_base", "c0", "c1", "gamma"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise ConfigurationError(f"bounds for {name} are inverted")
        if self.p_tot[0] < 1 or self.t_tot[0] < 1:
            raise ConfigurationError("grid bounds must start at 1")
        # Strict clock monotonicity and strict throughput/power monotonicity
        # need alpha > 0, c1 > 0 and a positive frequency span.
        if self.alpha[0] <= 0:
            raise ConfigurationError("alpha lower bound must be > 0")
        if self.c1[0] <= 0:
            raise ConfigurationError("c1 lower bound must be > 0")
        if self.freq_ghz[0] <= 0:
            raise ConfigurationError("freq lower bound must be > 0")


def _uniform(rng: random.Random, bounds: tuple[float, float]) -> float:
    return rng.uniform(bounds[0], bounds[1])


def generate_surface(
    bounds: GenerationBounds = GenerationBounds(), seed: int = 0
) -> SurfaceSpec:
    """Deterministically draw a surface that satisfies all four hypotheses."""
    rng = random.Random(seed)
    p_tot = rng.randint(*bounds.p_tot)
    t_tot = rng.randint(*bounds.t_tot)
    lo, hi = bounds.freq_ghz
    freqs: list[float] = []
    while len(set(freqs)) != p_tot:  # duplicate draws are measure-zero, retry
        freqs = sorted((rng.uniform(lo, hi) for _ in range(p_tot)), reverse=True)
    caps = Capabilities(p_tot=p_tot, t_tot=t_tot, freq_table=tuple(freqs))
    surface = SurfaceSpec(
        capabilities=caps,
        scalability=ScalabilityParams(
            sigma=_uniform(rng, bounds.sigma),
            kappa=_uniform(rng, bounds.kappa),
            base_rate=_uniform(rng, bounds.base_rate),
        ),
        freq_response=FreqResponse(alpha=_uniform(rng, bounds.alpha)),
        power_model=PowerParams(
            p_base=_uniform(rng, bounds.p_base),
            c0=_uniform(rng, bounds.c0),
            c1=_uniform(rng, bounds.c1),
            gamma=_uniform(rng, bounds.gamma),
        ),
    )
    report = validate_hypotheses(surface)
    if not report.all_hold:
        raise ConfigurationError(
            f"bounds produced a hypothesis-violating surface: {report.counterexamples}"
        )
    return surface


# ---------------------------------------------------------------------------
# Presets

_DEFAULT_POWER = PowerParams(p_base=20.0, c0=0.3, c1=0.6, gamma=3.0)
_DEFAULT_ALPHA = FreqResponse(alpha=0.7)


def _kappa_for_peak(sigma: float, t_star: float) -> float:
    # Continuous speedup peak sits at sqrt((1 - sigma) / kappa).
    return (1.0 - sigma) / (t_star * t_star)


# Scalability classes mirror the benchmark suite's synchronization variants:
# coarse-lock workloads stop scaling at one thread, transactional ones range
# from mid-grid peaks to fully scalable.
_PRESETS: dict[str, ScalabilityParams] = {
    "intruder-lock": ScalabilityParams(sigma=1.1, kappa=0.005, base_rate=1.8e5),
    "intruder-tx": ScalabilityParams(
        sigma=0.32, kappa=_kappa_for_peak(0.32, 8.2), base_rate=2.4e5
    ),
    "genome-lock": ScalabilityParams(
        sigma=0.55, kappa=_kappa_for_peak(0.55, 5.4), base_rate=3.0e5
    ),
    "genome-tx": ScalabilityParams(sigma=0.03, kappa=0.0, base_rate=3.6e5),
    "vacation-lock": ScalabilityParams(sigma=1.3, kappa=0.008, base_rate=1.5e5),
    "vacation-tx": ScalabilityParams(sigma=0.05, kappa=0.0002, base_rate=2.1e5),
    "ssca2-lock": ScalabilityParams(sigma=1.05, kappa=0.003, base_rate=0.9e5),
    "ssca2-tx": ScalabilityParams(
        sigma=0.5, kappa=_kappa_for_peak(0.5, 15.4), base_rate=1.2e5
    ),
}

PRESET_NAMES = tuple(sorted(_PRESETS))


def preset_profile(name: str) -> SurfaceSpec:
    """Named synthetic workload on the default 12 P-state x 20 thread grid."""
    try:
        scalability = _PRESETS[name]
    except KeyError:
        raise ConfigurationError(
            f"unknown preset {name!r}; known: {', '.join(PRESET_NAMES)}"
        ) from None
    return SurfaceSpec(
        capabilities=Capabilities(DEFAULT_P_TOT, DEFAULT_T_TOT, DEFAULT_FREQ_TABLE),
        scalability=scalability,
        freq_response=_DEFAULT_ALPHA,
        power_model=_DEFAULT_POWER,
    )


def demo_surface() -> SurfaceSpec:
    """Hand-tuned surface for walking through a full three-phase exploration.

    The thread peak sits at t=15 and the 50 W frontier is placed so that an
    exploration starting from (6, 5) exercises the thread climb, the downward
    P-state sweep, and the upward P-state sweep, each ending on a distinct
    configuration.
    """
    # Per-thread watts targets; frequencies are derived so the cube-law power
    # model reproduces them exactly: w_p = 1 + c1 * f_p**3 with c1 = 15 / 3.1**3.
    watts = (16.0, 9.0, 6.2, 4.7, 4.0, 3.2, 2.42, 2.36, 1.82, 1.55, 1.38, 1.2)
    c1 = 15.0 / 3.1**3
    freq = tuple(3.1 * ((w - 1.0) / 15.0) ** (1.0 / 3.0) for w in watts)
    return SurfaceSpec(
        capabilities=Capabilities(DEFAULT_P_TOT, DEFAULT_T_TOT, freq),
        scalability=ScalabilityParams(
            sigma=0.2, kappa=_kappa_for_peak(0.2, 15.3), base_rate=1000.0
        ),
        freq_response=FreqResponse(alpha=1.0),
        power_model=PowerParams(p_base=20.0, c0=1.0, c1=c1, gamma=3.0),
    )


# ---------------------------------------------------------------------------
# Serialization (strict: unknown keys are rejected)


def _require_keys(doc: dict, allowed: set[str], required: set[str], where: str) -> None:
    if not isinstance(doc, dict):
        raise ConfigurationError(f"{where}: expected an object")
    unknown = set(doc) - allowed
    if unknown:
        raise ConfigurationError(f"{where}: unknown key(s) {sorted(unknown)}")
    missing = required - set(doc)
    if missing:
        raise ConfigurationError(f"{where}: missing key(s) {sorted(missing)}")


def _num(doc: dict, key: str, where: str) -> float:
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigurationError(f"{where}.{key}: expected a number")
    return float(v)


def _scalability_from_dict(doc: dict, where: str) -> ScalabilityParams:
    keys = {"sigma", "kappa", "base_rate"}
    _require_keys(doc, keys, keys, where)
    return ScalabilityParams(
        sigma=_num(doc, "sigma", where),
        kappa=_num(doc, "kappa", where),
        base_rate=_num(doc, "base_rate", where),
    )


def _freq_response_from_dict(doc: dict, where: str) -> FreqResponse:
    _require_keys(doc, {"alpha"}, {"alpha"}, where)
    return FreqResponse(alpha=_num(doc, "alpha", where))


def _power_from_dict(doc: dict, where: str) -> PowerParams:
    keys = {"p_base", "c0", "c1", "gamma"}
    _require_keys(doc, keys, keys, where)
    return PowerParams(
        p_base=_num(doc, "p_base", where),
        c0=_num(doc, "c0", where),
        c1=_num(doc, "c1", where),
        gamma=_num(doc, "gamma", where),
    )


def surface_to_dict(surface: SurfaceSpec) -> dict:
    doc: dict = {
        "capabilities": {
            "p_tot": surface.capabilities.p_tot,
            "t_tot": surface.capabilities.t_tot,
            "freq_table": list(surface.capabilities.freq_table),
        },
        "scalability": {
            "sigma": surface.scalability.sigma,
            "kappa": surface.scalability.kappa,
            "base_rate": surface.scalability.base_rate,
        },
        "freq_response": {"alpha": surface.freq_response.alpha},
        "power_model": {
            "p_base": surface.power_model.p_base,
            "c0": surface.power_model.c0,
            "c1": surface.power_model.c1,
            "gamma": surface.power_model.gamma,
        },
        "noise": surface.noise,
        "schedule": [],
    }
    for entry in surface.schedule:
        params: dict = {}
        if entry.scalability is not None:
            params["scalability"] = {
                "sigma": entry.scalability.sigma,
                "kappa": entry.scalability.kappa,
                "base_rate": entry.scalability.base_rate,
            }
        if entry.freq_response is not None:
            params["freq_response"] = {"alpha": entry.freq_response.alpha}
        if entry.power_model is not None:
            params["power_model"] = {
                "p_base": entry.power_model.p_base,
                "c0": entry.power_model.c0,
                "c1": entry.power_model.c1,
                "gamma": entry.power_model.gamma,
            }
        doc["schedule"].append({"start_step": entry.start_step, "params": params})
    return doc


def surface_from_dict(doc: dict) -> SurfaceSpec:
    allowed = {"capabilities", "scalability", "freq_response", "power_model",
               "noise", "schedule"}
    required = {"capabilities", "scalability", "freq_response", "power_model"}
    _require_keys(doc, allowed, required, "surface")

    cap_doc = doc["capabilities"]
    _require_keys(cap_doc, {"p_tot", "t_tot", "freq_table"},
                  {"p_tot", "t_tot", "freq_table"}, "surface.capabilities")
    freq_table = cap_doc["freq_table"]
    if not isinstance(freq_table, list) or not all(
        isinstance(f, (int, float)) and not isinstance(f, bool) for f in freq_table
    ):
        raise ConfigurationError("surface.capabilities.freq_table: expected numbers")
    caps = Capabilities(
        p_tot=int(cap_doc["p_tot"]),
        t_tot=int(cap_doc["t_tot"]),
        freq_table=tuple(float(f) for f in freq_table),
    )

    schedule: list[ScheduleEntry] = []
    for i, entry in enumerate(doc.get("schedule", [])):
        where = f"surface.schedule[{i}]"
        _require_keys(entry, {"start_step", "params"}, {"start_step", "params"}, where)
        params = entry["params"]
        _require_keys(params, {"scalability", "freq_response", "power_model"},
                      set(), f"{where}.params")
        schedule.append(
            ScheduleEntry(
                start_step=int(entry["start_step"]),
                scalability=(
                    _scalability_from_dict(params["scalability"], f"{where}.scalability")
                    if "scalability" in params else None
                ),
                freq_response=(
                    _freq_response_from_dict(params["freq_response"], f"{where}.freq_response")
                    if "freq_response" in params else None
                ),
                power_model=(
                    _power_from_dict(params["power_model"], f"{where}.power_model")
                    if "power_model" in params else None
                ),
            )
        )

    noise = 0.0
    if "noise" in doc:
        noise = _num(doc, "noise", "surface")

    return SurfaceSpec(
        capabilities=caps,
        scalability=_scalability_from_dict(doc["scalability"], "surface.scalability"),
        freq_response=_freq_response_from_dict(doc["freq_response"], "surface.freq_response"),
        power_model=_power_from_dict(doc["power_model"], "surface.power_model"),
        noise=noise,
        schedule=tuple(schedule),
    )


def tabular_from_dict(doc: dict) -> TabularSurface:
    """Parse the explicit-grid surface form used for negative controls."""
    keys = {"capabilities", "throughput_table", "power_table"}
    _require_keys(doc, keys, keys, "surface")
    cap_doc = doc["capabilities"]
    _require_keys(cap_doc, {"p_tot", "t_tot", "freq_table"},
                  {"p_tot", "t_tot", "freq_table"}, "surface.capabilities")
    caps = Capabilities(
        p_tot=int(cap_doc["p_tot"]),
        t_tot=int(cap_doc["t_tot"]),
        freq_table=tuple(float(f) for f in cap_doc["freq_table"]),
    )
    return TabularSurface(
        capabilities=caps,
        throughput_table=tuple(tuple(float(v) for v in row) for row in doc["throughput_table"]),
        power_table=tuple(tuple(float(v) for v in row) for row in doc["power_table"]),
    )


def surface_document_from_dict(doc: dict) -> Surface:
    """Dispatch between the parametric and tabular surface document forms."""
    if isinstance(doc, dict) and "throughput_table" in doc:
        return tabular_from_dict(doc)
    return surface_from_dict(doc)
