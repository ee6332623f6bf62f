"""Simulated backend contract and the adapter's pure helpers."""

import pytest

from captune.errors import BoundsError, ConfigurationError
from captune.model import (
    Capabilities,
    CapSpec,
    Config,
    FreqResponse,
    PowerParams,
    ScalabilityParams,
    ScheduleEntry,
    SurfaceSpec,
    power_at,
    preset_profile,
    throughput_at,
)
from captune.platform import SimulatedPlatform, rapl_energy_delta


def small_surface(noise=0.0, schedule=()):
    return SurfaceSpec(
        capabilities=Capabilities(4, 6, (2.2, 1.8, 1.5, 1.2)),
        scalability=ScalabilityParams(sigma=0.2, kappa=0.01, base_rate=500.0),
        freq_response=FreqResponse(alpha=0.8),
        power_model=PowerParams(p_base=15.0, c0=0.5, c1=0.8, gamma=3.0),
        noise=noise,
        schedule=schedule,
    )


class TestSetConfig:
    def test_next_step_runs_under_new_config(self):
        plat = SimulatedPlatform(small_surface(), seed=0)
        plat.set_config(Config(3, 6))
        stats = plat.run_step(5000)
        assert stats.config == Config(3, 6)

    def test_idempotent(self):
        plat = SimulatedPlatform(small_surface(), seed=0, switch_penalty_steps=2)
        plat.set_config(Config(2, 4))
        plat.run_step(5000)
        plat.run_step(5000)
        plat.run_step(5000)  # penalty exhausted
        before = plat.step_counter
        plat.set_config(Config(2, 4))  # no-op: same config, no new penalty
        stats = plat.run_step(5000)
        assert plat.step_counter == before + 1
        assert stats.throughput == throughput_at(small_surface(), Config(2, 4), before)

    def test_out_of_bounds_rejected(self):
        plat = SimulatedPlatform(small_surface(), seed=0)
        with pytest.raises(BoundsError):
            plat.set_config(Config(4, 1))
        with pytest.raises(BoundsError):
            plat.set_config(Config(0, 7))


class TestRunStep:
    def test_noise_free_passthrough(self):
        s = small_surface()
        plat = SimulatedPlatform(s, seed=0)
        plat.set_config(Config(1, 3))
        stats = plat.run_step(5000)
        assert stats.throughput == throughput_at(s, Config(1, 3), 0)
        assert stats.power == power_at(s, Config(1, 3), 0)
        assert stats.units_done == 5000

    def test_deterministic_streams(self):
        s = small_surface(noise=0.05)
        configs = [Config(0, 1), Config(1, 4), Config(1, 4), Config(3, 2)]
        streams = []
        for _ in range(2):
            plat = SimulatedPlatform(s, seed=99)
            stream = []
            for c in configs:
                plat.set_config(c)
                stream.append(plat.run_step(5000))
            streams.append(stream)
        assert streams[0] == streams[1]

    def test_schedule_boundary(self):
        override = ScalabilityParams(sigma=0.2, kappa=0.01, base_rate=1000.0)
        s = small_surface(schedule=(ScheduleEntry(100, scalability=override),))
        plat = SimulatedPlatform(s, seed=0)
        plat.set_config(Config(0, 2))
        stats = [plat.run_step(5000) for _ in range(101)]
        assert stats[99].throughput == throughput_at(s, Config(0, 2), 99)
        assert stats[100].throughput == throughput_at(s, Config(0, 2), 100)
        assert stats[100].throughput == 2 * stats[99].throughput

    def test_step_counter_contiguous(self):
        plat = SimulatedPlatform(small_surface(), seed=0)
        indices = [plat.run_step(100).step_index for _ in range(10)]
        assert indices == list(range(10))

    def test_units_must_be_positive(self):
        plat = SimulatedPlatform(small_surface(), seed=0)
        with pytest.raises(ConfigurationError):
            plat.run_step(0)

    def test_cap_violation_flag(self):
        s = small_surface()
        plat = SimulatedPlatform(s, seed=0)
        plat.set_config(Config(0, 6))
        hot = plat.run_step(5000, CapSpec(20.0))
        assert hot.cap_violated
        plat.set_config(Config(3, 1))
        cool = plat.run_step(5000, CapSpec(20.0))
        assert not cool.cap_violated

    def test_switch_penalty_blends_configs(self):
        s = small_surface()
        plat = SimulatedPlatform(s, seed=0, switch_penalty_steps=1)
        plat.set_config(Config(3, 1))
        plat.run_step(5000)
        plat.run_step(5000)
        plat.set_config(Config(0, 6))
        transition = plat.run_step(5000)
        settled = plat.run_step(5000)
        # Transition pays the old throughput and the new power draw.
        assert transition.throughput == throughput_at(s, Config(3, 1), 2)
        assert transition.power == power_at(s, Config(0, 6), 2)
        assert settled.throughput == throughput_at(s, Config(0, 6), 3)


class TestCapabilities:
    def test_default_simulated_grid(self):
        plat = SimulatedPlatform(preset_profile("genome-tx"), seed=0)
        caps = plat.capabilities()
        assert caps.p_tot == 12
        assert caps.t_tot == 20

    def test_single_point_grid(self):
        s = SurfaceSpec(
            capabilities=Capabilities(1, 1, (2.0,)),
            scalability=ScalabilityParams(sigma=0.0, kappa=0.0, base_rate=10.0),
            freq_response=FreqResponse(alpha=1.0),
            power_model=PowerParams(p_base=5.0, c0=0.0, c1=0.1, gamma=1.0),
        )
        caps = SimulatedPlatform(s, seed=0).capabilities()
        assert (caps.p_tot, caps.t_tot) == (1, 1)

    def test_constant_over_lifetime(self):
        plat = SimulatedPlatform(small_surface(), seed=0)
        first = plat.capabilities()
        plat.run_step(100)
        assert plat.capabilities() == first


class TestRaplWraparound:
    def test_no_wrap(self):
        assert rapl_energy_delta(1000, 5000, 1_000_000) == 4000

    def test_wrap(self):
        assert rapl_energy_delta(999_900, 50, 1_000_000) == 150

    def test_bad_range(self):
        with pytest.raises(ConfigurationError):
            rapl_energy_delta(0, 1, 0)
