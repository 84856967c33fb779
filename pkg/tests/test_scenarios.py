"""Experiment designs: utilities, launch-delay law, presets, replication."""

import numpy as np
import pytest

from pottsdiff.decision import three_options
from pottsdiff.errors import ConfigurationError
from pottsdiff.network import GridSpec
from pottsdiff.rng import UTILITIES, substream
from pottsdiff.scenarios import (
    DEFAULT_TAU,
    HeterogeneityDistribution,
    HomogeneousUtilities,
    LaunchPlan,
    Scenario,
    assign_utilities,
    four_option_utilities,
    improved_utility,
    preset,
    replicate,
)
from pottsdiff.simulation import InnovatorSchedule

# mpmath oracle (30 significant digits):
#   0.6 + 0.4 * tanh(1)   = 0.904637662382305955247783313042
#   0.4 + 0.6 * tanh(0.3) = 0.574787567470954543490932763694
TANH_ORACLE_06 = 0.904637662382305955
TANH_ORACLE_04 = 0.574787567470954543

DEFAULT_MIX = ((0.4, 0.6), (0.4, 0.7), (0.2, 0.4))


class TestImprovedUtility:
    def test_zero_delay_is_identity(self):
        assert improved_utility(0.6, 0, DEFAULT_TAU) == 0.6
        assert improved_utility(0.25, 0, 1.0) == 0.25

    def test_oracle_values(self):
        assert improved_utility(0.6, DEFAULT_TAU, DEFAULT_TAU) == pytest.approx(
            TANH_ORACLE_06, abs=1e-12
        )
        assert improved_utility(0.4, 2, DEFAULT_TAU) == pytest.approx(
            TANH_ORACLE_04, abs=1e-12
        )

    def test_monotone_and_bounded(self):
        values = [improved_utility(0.6, t, DEFAULT_TAU) for t in range(9)]
        assert all(b > a for a, b in zip(values, values[1:]))
        assert all(0.6 <= v < 1.0 for v in values)

    def test_validation(self):
        with pytest.raises(ConfigurationError):
            improved_utility(1.2, 1, DEFAULT_TAU)
        with pytest.raises(ConfigurationError):
            improved_utility(0.6, 1, 0.0)
        with pytest.raises(ConfigurationError):
            improved_utility(0.6, -1, DEFAULT_TAU)


class TestHeterogeneityDistribution:
    def test_exact_counts(self):
        dist = HeterogeneityDistribution(DEFAULT_MIX)
        assert dist.counts(10_000) == [4000, 4000, 2000]
        assert dist.counts(40_000) == [16_000, 16_000, 8000]

    def test_remainder_goes_to_first_largest_bucket(self):
        third = 1.0 / 3.0
        dist = HeterogeneityDistribution(((third, 0.5), (third, 0.6), (third, 0.7)))
        counts = dist.counts(10)
        assert counts == [4, 3, 3]
        assert sum(counts) == 10

    def test_fraction_sum_validated(self):
        with pytest.raises(ConfigurationError):
            HeterogeneityDistribution(((0.5, 0.6), (0.4, 0.7)))

    def test_entry_ranges_validated(self):
        with pytest.raises(ConfigurationError):
            HeterogeneityDistribution(((1.0, 1.5),))


class TestAssignUtilities:
    def test_homogeneous_broadcast(self):
        u = assign_utilities(HomogeneousUtilities((0.6, 0.7)), None, 50, 3,
                             substream(1, UTILITIES))
        assert u.shape == (50, 3)
        assert (u[:, 0] == 0.6).all()
        assert (u[:, 1] == 0.7).all()
        assert (u[:, 2] == 0.0).all()

    def test_homogeneous_launch_improves_b(self):
        u = assign_utilities(HomogeneousUtilities((0.6, 0.6)),
                             LaunchPlan(t_b=int(round(DEFAULT_TAU))), 10, 3,
                             substream(1, UTILITIES))
        # t_b is an integer tick count, so compare against the law directly.
        want = improved_utility(0.6, int(round(DEFAULT_TAU)), DEFAULT_TAU)
        assert np.allclose(u[:, 1], want)

    def test_heterogeneous_partition(self):
        dist = HeterogeneityDistribution(DEFAULT_MIX)
        u = assign_utilities(dist, None, 1000, 3, substream(2, UTILITIES))
        values, counts = np.unique(u[:, 0], return_counts=True)
        assert dict(zip(values, counts)) == {0.4: 200, 0.6: 400, 0.7: 400}
        assert abs(u[:, 0].mean() - 0.6) < 1e-12
        # Without a launch plan B mirrors A per agent.
        assert (u[:, 0] == u[:, 1]).all()

    def test_heterogeneous_launch_uses_own_base_utility(self):
        dist = HeterogeneityDistribution(DEFAULT_MIX)
        u = assign_utilities(dist, LaunchPlan(t_b=2), 1000, 3, substream(2, UTILITIES))
        agent = np.flatnonzero(u[:, 0] == 0.4)[0]
        assert u[agent, 1] == pytest.approx(TANH_ORACLE_04, abs=1e-12)

    def test_shuffle_depends_on_stream(self):
        dist = HeterogeneityDistribution(DEFAULT_MIX)
        a = assign_utilities(dist, None, 1000, 3, substream(1, UTILITIES))
        b = assign_utilities(dist, None, 1000, 3, substream(1, UTILITIES))
        c = assign_utilities(dist, None, 1000, 3, substream(2, UTILITIES))
        assert (a == b).all()
        assert not (a == c).all()


class TestFourOptionUtilities:
    def test_reference_differences(self):
        u = four_option_utilities(0.7, 0.65, 0.6)
        assert u.tolist() == [0.7, 0.65, 0.6, 0.0]
        assert u[2] - u[0] == pytest.approx(-0.1)
        assert u[2] - u[1] == pytest.approx(-0.05)

    def test_identity_and_zero_cases(self):
        assert four_option_utilities(0.5, 0.2, 0.5)[2] == four_option_utilities(0.5, 0.2, 0.5)[0]
        assert four_option_utilities(0.0, 0.0, 0.0).tolist() == [0.0] * 4

    def test_range_validated(self):
        with pytest.raises(ConfigurationError):
            four_option_utilities(0.7, 1.2, 0.6)


class TestScenarioValidation:
    def test_defaults_are_valid(self):
        scn = Scenario()
        assert scn.grid.n == 40_000
        assert scn.options == "three"

    def test_rejects_bad_fields(self):
        with pytest.raises(ConfigurationError):
            Scenario(options="five")
        with pytest.raises(ConfigurationError):
            Scenario(p_r=1.5)
        with pytest.raises(ConfigurationError):
            Scenario(temperature=-0.1)
        with pytest.raises(ConfigurationError):
            Scenario(utilities=HomogeneousUtilities((0.6,)))

    def test_heterogeneous_requires_three_options(self):
        with pytest.raises(ConfigurationError):
            Scenario(options="four",
                     utilities=HeterogeneityDistribution(DEFAULT_MIX))

    def test_launch_requires_three_options(self):
        with pytest.raises(ConfigurationError):
            Scenario(options="four",
                     utilities=HomogeneousUtilities((0.7, 0.65, 0.6)),
                     launch=LaunchPlan(t_b=2))

    def test_innovator_product_range(self):
        with pytest.raises(ConfigurationError):
            Scenario(innovators=(InnovatorSchedule(product=2, rate=5),))


class TestPresets:
    def test_fig1(self):
        scn = preset("fig1")
        assert scn.options == "three"
        assert scn.utilities == HomogeneousUtilities((0.6, 0.6))
        assert [s.rate for s in scn.innovators] == [125, 125]
        assert scn.temperature == 0.0 and scn.p_r == 0.0
        assert scn.grid == GridSpec(200, 200)

    def test_fig2_rates(self):
        scn = preset("fig2", gamma_b=500)
        assert scn.innovators[0].rate == 125
        assert scn.innovators[1].rate == 500
        assert preset("fig2").innovators[1].rate == 1000

    def test_fig3_homogeneous_launch(self):
        scn = preset("fig3", t_b=4)
        assert scn.launch == LaunchPlan(t_b=4, tau=DEFAULT_TAU)
        assert scn.innovators[1].start_tick == 4
        assert scn.utilities == HomogeneousUtilities((0.6, 0.6))

    def test_fig4_heterogeneous_launch(self):
        scn = preset("fig4", t_b=6)
        assert scn.utilities == HeterogeneityDistribution(DEFAULT_MIX)
        assert scn.launch.t_b == 6

    def test_fig5_four_options(self):
        scn = preset("fig5", p_r=0.02, temperature=0.05)
        assert scn.options == "four"
        assert scn.utilities == HomogeneousUtilities((0.7, 0.65, 0.6))
        assert [s.product for s in scn.innovators] == [0, 1]
        assert scn.p_r == 0.02 and scn.temperature == 0.05

    def test_grid_override(self):
        assert preset("fig1", grid=GridSpec(50, 50)).grid == GridSpec(50, 50)

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            preset("fig9")


class TestReplicate:
    def small(self, **kw):
        base = dict(
            grid=GridSpec(20, 20),
            utilities=HomogeneousUtilities((0.6, 0.6)),
            innovators=(
                InnovatorSchedule(product=0, rate=5),
                InnovatorSchedule(product=1, rate=5),
            ),
            max_ticks=100,
            seed=7,
        )
        base.update(kw)
        return Scenario(**base)

    def test_aggregates_align_by_tick(self):
        stats = replicate(self.small(), 4)
        length = max(len(r.series) for r in stats.results)
        assert stats.mean.shape == (length, 3)
        assert stats.std.shape == (length, 3)
        assert len(stats.saturation_ticks) == 4
        assert np.allclose(stats.mean.sum(axis=1), 1.0)

    def test_consecutive_seeds(self):
        stats = replicate(self.small(seed=7), 3)
        single = replicate(self.small(seed=8), 1)
        assert np.array_equal(stats.results[1].series.data, single.results[0].series.data)

    def test_final_mean_matches_padded_tail(self):
        stats = replicate(self.small(), 3)
        finals = np.stack([r.series.data[-1] for r in stats.results])
        assert np.allclose(stats.final_mean, finals.mean(axis=0))

    def test_run_count_validated(self):
        with pytest.raises(ConfigurationError):
            replicate(self.small(), 0)

    def test_uses_scenario_replications_by_default(self):
        stats = replicate(self.small(replications=2))
        assert len(stats.results) == 2


class TestOptionModelFromScenario:
    def test_three_option_scenario_model(self):
        from pottsdiff.scenarios import option_model

        assert option_model(Scenario()).labels == three_options().labels
