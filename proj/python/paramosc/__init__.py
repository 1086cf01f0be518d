"""Two-ion parametric phonon coupling: states, dynamics and Wigner tomography."""

from ._core import (
    ConfigError,
    ContractError,
    __version__,
    canonical_config,
    config_hash,
    crossing,
    fock_wigner,
    mode_params,
    oscillation,
    parity,
    run,
    state,
    wigner_oracle,
    wigner_scan,
)

__all__ = [
    "ConfigError",
    "ContractError",
    "__version__",
    "canonical_config",
    "config_hash",
    "crossing",
    "fock_wigner",
    "mode_params",
    "oscillation",
    "parity",
    "run",
    "state",
    "wigner_oracle",
    "wigner_scan",
]
