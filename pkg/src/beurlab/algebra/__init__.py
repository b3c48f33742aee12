from .kernels import (
    EquationId,
    KernelKind,
    KernelSpec,
    eval_kernel,
    fe_residual,
    g_multiplicativity_residual,
    kernel_func,
    solve_gbe_kernel,
    tau_numeric,
    three_term_residual,
)
from .popa import (
    IdentityResidual,
    LocalContext,
    PopaParams,
    ResidualReport,
    check_prop2,
    circ,
    circ_local,
    eta,
    eta_inverse,
    eta_star,
    group_axiom_report,
    inv,
    iterate_local,
    reflect,
)
from ._exceptions import (
    AlgebraError,
    MissingRoleError,
    PopaOriginError,
    UndefinedForRhoZeroError,
    UnsupportedPairError,
)


__all__ = [
    "AlgebraError",
    "EquationId",
    "IdentityResidual",
    "KernelKind",
    "KernelSpec",
    "LocalContext",
    "MissingRoleError",
    "PopaOriginError",
    "PopaParams",
    "ResidualReport",
    "UndefinedForRhoZeroError",
    "UnsupportedPairError",
    "check_prop2",
    "circ",
    "circ_local",
    "eta",
    "eta_inverse",
    "eta_star",
    "eval_kernel",
    "fe_residual",
    "g_multiplicativity_residual",
    "group_axiom_report",
    "inv",
    "iterate_local",
    "kernel_func",
    "reflect",
    "solve_gbe_kernel",
    "tau_numeric",
    "three_term_residual",
]
