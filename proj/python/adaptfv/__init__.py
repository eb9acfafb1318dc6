"""Adaptive moving-mesh finite volumes for 1D scalar conservation laws."""

from ._adaptfv import (
    AdaptParams,
    CflError,
    ConfigError,
    DtPolicy,
    Error,
    InfeasibleError,
    InterfaceCoeffs,
    InternalError,
    MasState,
    Mesh1D,
    NumericError,
    PreconditionError,
    Problem,
    Scheme,
    SizeError,
    StepOptions,
    StepReport,
    all_interface_coeffs,
    check_config,
    compute_monitor,
    edge_displacements,
    from_reference,
    h_terms,
    interface_coeffs,
    maincond_rhs,
    mas_step,
    mesh_term,
    reconstruct_mesh,
    remap_u,
    remap_v_via_h,
    run_config,
    to_reference,
)

__version__ = "0.1.0"
