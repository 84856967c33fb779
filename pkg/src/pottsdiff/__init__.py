"""Multi-option innovation diffusion on small-world lattices.

Agents on a Moore-neighborhood grid (optionally rewired toward a random
network) choose between competing products with a Boltzmann-Gibbs decision
kernel over local adoption fractions and personal utilities.
"""

__version__ = "0.1.0"

from .decision import (  # noqa: F401
    OptionModel,
    choice_probabilities,
    four_options,
    local_field,
    neighbor_fractions,
    sample_state,
    three_options,
    zero_temperature_probabilities,
)
from .errors import ConfigParseError, ConfigurationError  # noqa: F401
from .network import GridSpec, Network, build_moore_lattice, rewire  # noqa: F401
from .scenarios import (  # noqa: F401
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
from .simulation import (  # noqa: F401
    InnovatorSchedule,
    RunResult,
    SimulationState,
    TimeSeries,
    detect_saturation,
    run,
    seed_innovators,
    step,
)
