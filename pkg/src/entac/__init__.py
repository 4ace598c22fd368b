"""Entanglement access control for quantum repeater networks."""

from .access import (
    AccessResult,
    PriorityClass,
    UserDemand,
    adapt_m,
    evaluate_access,
    find_disjoint_paths,
    max_disjoint_supply,
    run_access_control,
)
from .cost import connection_cost, path_cost
from .density import Exponential, Tabulated, TruncatedNormal, Uniform, density_from_dict
from .dynamics import (
    ChiVector,
    ClampReport,
    chi,
    evolve_state,
    fidelity_distance,
    gamma,
    gamma_evolved,
    prob_distance,
)
from .errors import (
    ContractError,
    DomainError,
    EntacError,
    NumericError,
    ScenarioError,
    ScenarioParseError,
    UnknownNodeError,
)
from .montecarlo import (
    Estimate,
    TrialConfig,
    estimate_multipath,
    estimate_single_path,
    sample_distance,
)
from .network import (
    EntangledConnection,
    NetworkDefaults,
    NetworkGraph,
    NodeState,
    ValidationReport,
    hop_distance,
    neighbors,
    validate,
)
from .paths import EntangledPath, PathSet
from .pathstats import (
    cdf,
    multipath_probability,
    pathset_probability,
    single_path_probability,
    single_path_probability_iid,
)
from .profiles import EvolutionProfile, TimeWindow
from .scenario import Scenario, load_scenario, save_scenario

__version__ = "0.1.0"
