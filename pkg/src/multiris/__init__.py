"""Channel models for cascades of reconfigurable surfaces, built from a
multiport impedance description of the whole system.

The package keeps two channel models side by side: the physics form, in
which every surface contributes its full reflection behavior including
the structural term, and the conventional form commonly assumed in
link-level analyses.  Both are exercised by closed-form optimizers and
seeded Monte Carlo experiments, and a set of randomized verification
suites cross-checks every layer against independent oracles.
"""

__version__ = "0.1.0"

from .numerics import (
    DEFAULT_ATOL,
    DEFAULT_RTOL,
    MIN_RCOND,
    IllConditionedError,
    close,
    relative_difference,
    wrap_phase,
)
from .network import (
    AssumptionSet,
    BlockBidiagonal,
    InconsistentScenarioError,
    PartitionedImpedance,
    RisLoadSet,
    SystemTopology,
    assemble_impedance_matrix,
    block_bidiagonal_inverse,
    channel_cascaded_impedance,
    channel_exact,
)
from .scattering import (
    NormalizedLinks,
    RisScattering,
    conventional_channel,
    impedance_from_scattering,
    physics_channel,
    scattering_from_impedance,
)
from .los import (
    LosLinks,
    derive_seed,
    hop_phase_sums,
    materialize,
    sample_los_links,
)
from .optimize import (
    OptimizationResult,
    delta_theory,
    expected_gain_physics,
    gain_conventional,
    optimize_conventional,
    optimize_physics,
)
from .montecarlo import (
    ExperimentSpec,
    GainStats,
    SweepRow,
    delta_empirical,
    run_gain_experiment,
    sweep,
    trial_seed,
)
from .verify import (
    SuiteReport,
    grid_search_max_gain,
    run_verification,
)

__all__ = [
    "__version__",
    "DEFAULT_ATOL",
    "DEFAULT_RTOL",
    "MIN_RCOND",
    "IllConditionedError",
    "close",
    "relative_difference",
    "wrap_phase",
    "AssumptionSet",
    "BlockBidiagonal",
    "InconsistentScenarioError",
    "PartitionedImpedance",
    "RisLoadSet",
    "SystemTopology",
    "assemble_impedance_matrix",
    "block_bidiagonal_inverse",
    "channel_cascaded_impedance",
    "channel_exact",
    "NormalizedLinks",
    "RisScattering",
    "conventional_channel",
    "impedance_from_scattering",
    "physics_channel",
    "scattering_from_impedance",
    "LosLinks",
    "derive_seed",
    "hop_phase_sums",
    "materialize",
    "sample_los_links",
    "OptimizationResult",
    "delta_theory",
    "expected_gain_physics",
    "gain_conventional",
    "optimize_conventional",
    "optimize_physics",
    "ExperimentSpec",
    "GainStats",
    "SweepRow",
    "delta_empirical",
    "run_gain_experiment",
    "sweep",
    "trial_seed",
    "SuiteReport",
    "grid_search_max_gain",
    "run_verification",
]
