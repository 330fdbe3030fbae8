"""dickelab: symmetric Dicke, GHZ and W states, their SLOCC invariants and
classification checks, and their entanglement-monogamy quantities."""

__version__ = "0.1.0"

from .invariants import (
    EPS_ZERO,
    InvariantReport,
    d_l,
    d_l_exact,
    delta_offset,
    i_bar,
    i_star,
    invariant_report,
    sgn_star,
    tau,
    tau_exact,
)
from .monogamy import (
    MonogamyReport,
    NumericalConsistencyError,
    c1_rest_squared,
    c12_closed_form,
    chi,
    chi_even_maximum,
    chi_odd_maximum,
    monogamy_report,
    monogamy_sweep,
    sweep_csv,
    wootters_concurrence,
)
from .slocc import (
    INVERTIBILITY_FLOOR,
    LocalOperatorChain,
    OrbitCampaign,
    Verdict,
    apply_local,
    check_tau_covariance,
    classify,
    compose_chains,
    ghz_orbit_state,
    identity_chain,
    random_ilo,
    run_orbit_campaign,
    sigma_x_chain,
    w_orbit_state,
)
from .statekit import (
    DEFAULT_MAX_QUBITS,
    DensityMatrix,
    DickeSpec,
    ExactAmplitudes,
    StateVector,
    bipartitions,
    complement,
    dicke_state,
    ghz_state,
    is_genuinely_entangled,
    is_product_across,
    load_state,
    partial_trace,
    popcount,
    store_state,
    w_state,
)

__all__ = [
    "__version__",
    "DEFAULT_MAX_QUBITS",
    "EPS_ZERO",
    "INVERTIBILITY_FLOOR",
    "DensityMatrix",
    "DickeSpec",
    "ExactAmplitudes",
    "InvariantReport",
    "LocalOperatorChain",
    "MonogamyReport",
    "NumericalConsistencyError",
    "OrbitCampaign",
    "StateVector",
    "Verdict",
    "apply_local",
    "bipartitions",
    "c12_closed_form",
    "c1_rest_squared",
    "check_tau_covariance",
    "chi",
    "chi_even_maximum",
    "chi_odd_maximum",
    "classify",
    "complement",
    "compose_chains",
    "d_l",
    "d_l_exact",
    "delta_offset",
    "dicke_state",
    "ghz_orbit_state",
    "ghz_state",
    "i_bar",
    "i_star",
    "identity_chain",
    "invariant_report",
    "is_genuinely_entangled",
    "is_product_across",
    "load_state",
    "monogamy_report",
    "monogamy_sweep",
    "partial_trace",
    "popcount",
    "random_ilo",
    "run_orbit_campaign",
    "sgn_star",
    "sigma_x_chain",
    "store_state",
    "sweep_csv",
    "tau",
    "tau_exact",
    "w_orbit_state",
    "w_state",
    "wootters_concurrence",
]
