"""Squeezed-coherent-state mean-field theory of fluxonium at the sweet spot."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize, root

from .circuits import CircuitParams, eigensystem, fluxonium_fock
from .errors import ConvergenceError, DomainError
from .operators import Fock, SqueezedAnsatz, squeezed_coherent_state

__all__ = [
    "MeanFieldResult", "mean_field_energy", "mean_field_gradient", "optimize_mean_field",
    "phase_boundary", "analytic_alpha", "analytic_alpha_finite_ec", "analytic_theta",
    "analytic_theta_simple", "alpha_prime", "ground_overlap", "flux_statistics",
    "SYMMETRY_BROKEN_ALPHA",
]

SYMMETRY_BROKEN_ALPHA = 1e-3


@dataclass(frozen=True)
class MeanFieldResult:
    alpha_opt: float
    theta_opt: float
    energy: float
    symmetry_broken: bool
    grad_norm: float


def mean_field_energy(alpha: float, theta: float, params: CircuitParams) -> float:
    """``<alpha, theta| H |alpha, theta>`` for the sweet-spot Fock Hamiltonian."""
    p0 = params.phi0
    return (params.hbar_omega * (alpha**2 + math.sinh(theta) ** 2)
            + params.E_j * math.exp(-p0**2 * math.exp(-2 * theta) / 2) * math.cos(2 * alpha * p0))


def mean_field_gradient(alpha: float, theta: float, params: CircuitParams) -> np.ndarray:
    p0, hw, ej = params.phi0, params.hbar_omega, params.E_j
    damp = math.exp(-p0**2 * math.exp(-2 * theta) / 2)
    d_alpha = 2 * hw * alpha - 2 * p0 * ej * damp * math.sin(2 * alpha * p0)
    d_theta = hw * math.sinh(2 * theta) + ej * damp * p0**2 * math.exp(-2 * theta) * math.cos(2 * alpha * p0)
    return np.array([d_alpha, d_theta])


def phase_boundary(ec_over_el: float) -> float:
    """Critical ``E_j / E_l`` where the symmetric mean-field state goes unstable."""
    if ec_over_el < 0:
        raise ValueError("ec_over_el must be nonnegative")
    return math.exp(math.sqrt(2 * ec_over_el) / 2)


def analytic_alpha(params: CircuitParams) -> float:
    """Heavy-limit displacement, ``(pi/2) (E_l / 2E_c)^(1/4) E_j / (E_j + E_l)``."""
    return 0.5 * math.pi * (params.E_l / (2 * params.E_c)) ** 0.25 * params.E_j / (params.E_j + params.E_l)


def analytic_alpha_finite_ec(params: CircuitParams) -> float:
    """Displacement before taking ``E_c -> 0``; tends to :func:`analytic_alpha`."""
    p0, hw = params.phi0, params.hbar_omega
    josephson = params.E_j * 2 * p0**2 * math.exp(-p0**2 / 2)
    return math.pi / (2 * p0) * (1 - hw / (hw + josephson))


def analytic_theta(params: CircuitParams) -> float:
    ej, el = params.E_j, params.E_l
    arg = ej / el - math.pi**2 * ej * el / (2 * (ej + el) ** 2) + 1
    if arg <= 0:
        raise DomainError(f"squeezing formula undefined for E_j/E_l = {ej / el:.3g}")
    return 0.25 * math.log(arg)


def analytic_theta_simple(params: CircuitParams) -> float:
    """``ln(E_j / E_l) / 4``, valid for ``E_j >> E_l, E_c``."""
    return 0.25 * math.log(params.E_j / params.E_l)


def alpha_prime(params: CircuitParams) -> float:
    """``alpha e^theta`` in the heavy limit; ``N = alpha'^2`` sets codeword separation."""
    return 0.5 * math.pi * (params.E_j / (2 * params.E_c)) ** 0.25 * params.E_j / (params.E_j + params.E_l)


def optimize_mean_field(params: CircuitParams, *, theta_domain: str = "squeeze",
                        max_iter: int = 2000) -> MeanFieldResult:
    """Minimize the mean-field energy over ``alpha >= 0`` and ``theta``.

    ``theta_domain="squeeze"`` restricts to ``theta >= 0`` (flux-quadrature
    squeezing only); ``"free"`` lets ``theta`` take any sign. Several starts
    are tried (trivial point, analytic heavy-limit guess, intermediate) and
    the lowest local minimum is kept.
    """
    if theta_domain not in ("squeeze", "free"):
        raise ValueError("theta_domain must be 'squeeze' or 'free'")
    scale = max(params.hbar_omega, params.E_j)
    theta_lo = 0.0 if theta_domain == "squeeze" else -5.0
    bounds = [(0.0, None), (theta_lo, 5.0)]

    def fun(x):
        return mean_field_energy(x[0], x[1], params) / scale

    def jac(x):
        return mean_field_gradient(x[0], x[1], params) / scale

    a_guess = analytic_alpha(params)
    try:
        t_guess = analytic_theta(params)
    except DomainError:
        t_guess = analytic_theta_simple(params)
    starts = [(0.0, 0.0), (1e-3, 0.0), (a_guess, max(t_guess, theta_lo)),
              (0.5 * a_guess, 0.5 * max(t_guess, 0.0)), (a_guess, 0.0)]
    if theta_domain == "free":
        starts.append((0.0, -0.3))
    best, last = None, None
    for x0 in starts:
        res = minimize(fun, np.array(x0, float), jac=jac, method="L-BFGS-B", bounds=bounds,
                       options={"maxiter": max_iter, "ftol": 1e-15, "gtol": 1e-13})
        last = res
        if not np.all(np.isfinite(res.x)):
            continue
        if best is None or res.fun < best.fun - 1e-15:
            best = res
    if best is None:
        raise ConvergenceError("mean-field optimization failed from every start", last=last)

    def projected_grad(x):
        # components pushing into an active bound do not count
        g = mean_field_gradient(x[0], x[1], params)
        if x[0] <= 0 and g[0] > 0:
            g[0] = 0.0
        if x[1] <= theta_lo and g[1] > 0:
            g[1] = 0.0
        return float(np.linalg.norm(g))

    # near the phase boundary the minimum is nearly quartic and L-BFGS stops
    # early; polish by solving grad = 0 from the best point
    if projected_grad(best.x) > 1e-8 * scale and best.x[0] > 0 and best.x[1] > theta_lo:
        sol = root(jac, best.x, method="hybr", options={"xtol": 1e-15})
        x = sol.x
        if (np.all(np.isfinite(x)) and x[0] >= 0 and x[1] >= theta_lo and fun(x) <= best.fun + 1e-14
                and projected_grad(x) < projected_grad(best.x)):
            best.x, best.fun = x, fun(x)
    a, t = float(best.x[0]), float(best.x[1])
    gnorm = projected_grad(best.x)
    if gnorm > 1e-8 * scale:
        raise ConvergenceError(f"gradient norm {gnorm:.2e} after optimization", last=best)
    e = mean_field_energy(a, t, params)
    e0 = mean_field_energy(0.0, 0.0, params)
    if e > e0:
        a, t, e = 0.0, 0.0, e0
    return MeanFieldResult(alpha_opt=a, theta_opt=t, energy=e,
                           symmetry_broken=a > SYMMETRY_BROKEN_ALPHA, grad_norm=gnorm)


def ground_overlap(params: CircuitParams, basis: Fock, *, theta: str = "full") -> float:
    """``|<gnd|psi_sq>|^2`` with ``psi_sq ~ |alpha, theta> + |-alpha, theta>``.

    ``alpha`` is the heavy-limit displacement; ``theta="full"`` uses the
    uncontracted squeezing formula and ``theta="simple"`` ``ln(E_j/E_l)/4``.
    """
    params = params.at_sweet_spot()
    a = analytic_alpha(params)
    if theta not in ("full", "simple"):
        raise ValueError("theta must be 'full' or 'simple'")
    t = analytic_theta_simple(params) if theta == "simple" else analytic_theta(params)
    plus = squeezed_coherent_state(SqueezedAnsatz(a, t), basis)
    minus = squeezed_coherent_state(SqueezedAnsatz(-a, t), basis)
    psi = plus + minus
    psi /= np.linalg.norm(psi)
    gnd = eigensystem(fluxonium_fock(params, basis), 1, basis).states[:, 0]
    return float(abs(np.vdot(gnd, psi)) ** 2)


def flux_statistics(params: CircuitParams) -> dict:
    """Heavy-limit flux mean, flux variance and persistent current ``I / I_0``."""
    mean = math.pi * params.E_j / (params.E_j + params.E_l)
    return {
        "mean_flux": mean,
        "flux_variance": math.sqrt(2 * params.E_c / params.E_j),
        "circulating_current": math.sin(mean),
    }
