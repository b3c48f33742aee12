import math

import pytest
from hypothesis import given, settings, strategies as st

from beurlab import BadParamError, DomainError
from beurlab.algebra import (
    EquationId,
    KernelSpec,
    MissingRoleError,
    PopaParams,
    UnsupportedPairError,
    eval_kernel,
    fe_residual,
    g_multiplicativity_residual,
    kernel_func,
    solve_gbe_kernel,
    tau_numeric,
    three_term_residual,
)


def test_closed_form_values():
    # Assert
    assert eval_kernel(KernelSpec("H_gamma", gamma=0.0), 1.7) == 1.7
    assert eval_kernel(KernelSpec("K_rho_gamma", 1.0, 2.0), 1.0) == pytest.approx(1.5)
    assert eval_kernel(KernelSpec("K_rho_gamma", 1.0, 0.0), 1.0) == pytest.approx(math.log(2.0))
    assert eval_kernel(KernelSpec("H_gamma", gamma=1.0), 1.0) == pytest.approx(math.e - 1.0)
    assert eval_kernel(KernelSpec("tau_eta", 0.0), 3.0) == 3.0


def test_kernel_domain_and_validation():
    # Assert
    with pytest.raises(DomainError):
        eval_kernel(KernelSpec("K_rho_gamma", 1.0, 0.5), -1.5)
    with pytest.raises(BadParamError):
        KernelSpec("K_rho_gamma", -1.0)
    with pytest.raises(BadParamError):
        KernelSpec("no_such_kind")  # type: ignore[arg-type]
    assert KernelSpec("H_gamma", 1.0, 0.5).lower == -math.inf
    assert KernelSpec("eta", 2.0).lower == -0.5


def test_kernel_func_carries_domain():
    # Action
    func = kernel_func("tau_eta", rho=1.0)

    # Assert
    assert func(math.e - 1.0) == pytest.approx(1.0)
    assert not func.contains(-1.0)


@pytest.mark.parametrize(
    "f, base, x, expected",
    [
        (lambda w: 1.0 + w, 0.0, 1.0, math.log(2.0)),
        (lambda w: 1.0, 0.0, 2.5, 2.5),
        (lambda w: 1.0 / (1.0 + w), 0.0, 1.0, 1.5),
    ],
)
def test_tau_numeric(f, base, x, expected):
    # Assert
    assert tau_numeric(f, x, base) == pytest.approx(expected, rel=1e-10)


@pytest.mark.parametrize("rho", [0.5, 1.0])
def test_tau_numeric_matches_closed_form_on_log_grid(rho: float):
    # Setup
    eta = kernel_func("eta", rho)
    closed = kernel_func("tau_eta", rho)

    # Assert
    for x in (1e-3, 1e-1, 1.0, 10.0, 1e3):
        assert abs(tau_numeric(eta, x, 0.0) - closed(x)) < 1e-8


@pytest.mark.parametrize("kind", ["H_gamma", "K_rho_gamma"])
def test_gamma_zero_branch_is_continuous(kind: str):
    # Assert
    for x in (0.1, 0.5, 1.0, 2.0):
        at_zero = KernelSpec(kind, 1.0, 0.0)(x)
        assert abs(KernelSpec(kind, 1.0, 2e-7)(x) - at_zero) < 1e-6
        assert abs(KernelSpec(kind, 1.0, -2e-7)(x) - at_zero) < 1e-6


def test_goldie_equation_example():
    # Setup
    funcs = {"K": kernel_func("H_gamma", gamma=1.0, c=2.0)}

    # Action
    residual = fe_residual(EquationId.GFE, funcs, 0.3, 0.5, gamma=1.0)
    slack = fe_residual("GFI", funcs, 0.3, 0.5, gamma=1.0)

    # Assert
    assert abs(residual) < 1e-12
    assert slack == 0.0


def test_missing_role_raises():
    # Assert
    with pytest.raises(MissingRoleError):
        fe_residual(EquationId.GBE_P, {"K": math.sin}, 0.1, 0.2)
    with pytest.raises(MissingRoleError):
        fe_residual(EquationId.GFE, {"K": math.sin}, 0.1, 0.2)


def test_inequality_slack_is_positive_when_violated():
    # Setup
    funcs = {"K": lambda x: x * x, "g": lambda x: 1.0}

    # Action
    slack = fe_residual(EquationId.GFI, funcs, 1.0, 1.0)

    # Assert
    assert slack == pytest.approx(2.0)


@given(
    st.sampled_from([0.5, 1.0]),
    st.sampled_from([-0.5, 0.5, 1.0, 2.0]),
    st.floats(min_value=-0.4, max_value=3.0),
    st.floats(min_value=-0.4, max_value=3.0),
)
@settings(max_examples=500)
def test_closed_forms_solve_their_equations(rho: float, gamma: float, u: float, v: float):
    # Setup
    h = KernelSpec("eta", rho)
    g = KernelSpec("exp_g", rho, gamma)
    K = solve_gbe_kernel(h, g)
    funcs = {
        "h": h.to_func(),
        "eta": h.to_func(),
        "K": K.to_func(),
        "kappa": K.to_func(),
        "g": g.to_func(),
        "f": KernelSpec("flow_rate_f", rho, gamma).to_func(),
    }
    p = PopaParams(rho)
    w = 0.5 * (u + v)

    # Action
    residuals = {eq: fe_residual(eq, funcs, u, v) for eq in ("GS", "BFE", "GBE_P", "GBE_GROUP", "CBE")}
    residuals["mult"] = g_multiplicativity_residual(funcs["g"], p, u, v)
    residuals["three"] = three_term_residual(funcs["K"], funcs["g"], p, u, v, w)

    # Assert
    scale = max(1.0, abs(K(u)), abs(K(v)), abs(K(w)), abs(g(u)), abs(g(v)), abs(g(w)))
    scale = max(scale, abs(g(u) * g(v) * g(w)), abs(K(u) * g(v) * g(w)))
    for name, residual in residuals.items():
        assert abs(residual) <= 1e-12 * scale, name


def test_solve_gbe_kernel_families():
    # Action
    goldie = solve_gbe_kernel(KernelSpec("eta", 0.0), KernelSpec("exp_g", 0.0, 1.0))
    beurling = solve_gbe_kernel(KernelSpec("eta", 1.0), KernelSpec("exp_g", 1.0, 2.0))
    linear = solve_gbe_kernel(KernelSpec("eta", 1.0), KernelSpec("exp_g", 1.0, 1.0), c=3.0)

    # Assert
    assert goldie.kind == "H_gamma"
    assert goldie(1.0) == pytest.approx(math.e - 1.0)
    assert beurling(1.0) == pytest.approx(1.5)
    assert linear(0.7) == pytest.approx(2.1)


def test_solve_gbe_kernel_rejects_unsupported_pairs():
    # Assert
    with pytest.raises(UnsupportedPairError):
        solve_gbe_kernel(KernelSpec("exp_g", 1.0), KernelSpec("exp_g", 1.0, 2.0))
    with pytest.raises(UnsupportedPairError):
        solve_gbe_kernel(KernelSpec("eta", 1.0), KernelSpec("exp_g", 0.5, 2.0))
