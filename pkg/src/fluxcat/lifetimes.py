"""Bit-flip and phase-flip lifetimes from Lindblad traces, plus 1/f estimators.

Protocols work on fluxonium (flux grid) and on the cos(2 theta) qubit
(rotor basis). Times are in ns; reported lifetimes are usually quoted as
``x^2 T / tau0`` with ``tau0 = h / kT``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .circuits import CircuitParams, Cos2ThetaParams, cos2theta_hamiltonian, eigensystem, fluxonium_flux
from .errors import FitError, ProtocolError
from .lindblad import (
    HBAR, BathSpec, LindbladModel, build_dissipator, evolve, lindblad_spectrum, stationary_state,
)
from .meanfield import analytic_alpha, analytic_theta_simple, alpha_prime as heavy_alpha_prime
from .operators import (
    Fock, FluxGrid, Rotor, SqueezedAnsatz, cat_state, flux_charge_ops, flux_grid_ops, parity,
    rotor_trig_ops, squeezed_coherent_state, well_projector,
)

__all__ = [
    "DecayFit", "LifetimeProtocolConfig", "QubitModel", "default_baths", "fluxonium_model",
    "cos2theta_model", "bitflip_time", "phaseflip_time", "fit_exponential", "tau0",
    "one_over_f_dephasing", "d_eps01_d_phi_e", "one_over_f_bitflip_proxy",
    "twolevel_golden_rule_elements",
]

DEFAULT_X2 = 1e-5


def tau0(kT: float) -> float:
    """Thermal time ``h / kT`` in ns for ``kT`` in h*GHz."""
    return 1.0 / kT


@dataclass(frozen=True)
class DecayFit:
    T: float
    amplitude: float
    r_squared: float
    n_points: int
    T_late: float = math.nan
    times: np.ndarray = field(default=None, repr=False, compare=False)
    values: np.ndarray = field(default=None, repr=False, compare=False)

    @property
    def censored(self) -> bool:
        return math.isinf(self.T)

    @property
    def extrapolated(self) -> bool:
        """True when the time grid covers fewer than three decay constants."""
        return self.times is not None and not self.censored and self.times[-1] < 3 * self.T * (1 - 1e-9)


@dataclass(frozen=True)
class LifetimeProtocolConfig:
    """Numerical and protocol settings shared by the lifetime protocols.

    ``k=None`` picks the number of retained eigenstates automatically so that
    ``n_delocalized`` of them have support on both wells (capped at ``k_max``).
    For the cos(2 theta) qubit, ``delta_phi_e`` is ignored and the bias comes
    from ``E_j1`` instead.
    """

    delta_phi_e: float = 0.03 * math.pi
    phi_max: float = 2 * math.pi
    n_points: int = 801
    n_max: int = 30
    k: int | None = None
    n_delocalized: int = 5
    k_max: int = 40
    k_scan: int = 80
    n_times: int = 48
    span: float = 3.0
    min_r_squared: float = 0.98


@dataclass
class QubitModel:
    """A Lindblad model together with the observables the protocols read out."""

    model: LindbladModel
    right: np.ndarray
    parity: np.ndarray
    right_weight: np.ndarray
    kT: float
    ops: dict


def default_baths(kT: float = 1.0, x2: float = DEFAULT_X2, channels=("flux", "charge")) -> list[BathSpec]:
    return [BathSpec(kT, math.sqrt(x2), c) for c in channels]


def _deloc_cutoff(weights, n_deloc, k_max):
    deloc = np.flatnonzero((weights > 0.1) & (weights < 0.9))
    if len(deloc) >= n_deloc:
        return int(min(deloc[n_deloc - 1] + 1, k_max))
    return int(min(len(weights), k_max))


def _assemble(energies, states, ops_basis, right_basis, parity_basis, baths, config, right_weight_all):
    k = config.k or _deloc_cutoff(right_weight_all, config.n_delocalized, config.k_max)
    v = states[:, :k]
    e = energies[:k]
    proj = lambda m: v.conj().T @ m @ v  # noqa: E731
    ops = {name: proj(m) for name, m in ops_basis.items()}
    dissipators = []
    for bath in baths:
        if bath.channel not in ops:
            raise ValueError(f"channel {bath.channel!r} not available; have {sorted(ops)}")
        if bath.x > 0:
            dissipators.append(build_dissipator(ops[bath.channel], e, bath))
    kts = {b.kT for b in baths}
    if len(kts) > 1:
        raise ValueError("all baths must share one temperature")
    return QubitModel(model=LindbladModel(e, dissipators), right=proj(right_basis), parity=proj(parity_basis),
                      right_weight=right_weight_all[:k], kT=kts.pop() if kts else 1.0, ops=ops)


def fluxonium_model(params: CircuitParams, baths, config: LifetimeProtocolConfig | None = None) -> QubitModel:
    """Fluxonium on a flux grid with flux and charge baths, ``phi_e = params.phi_e``."""
    config = config or LifetimeProtocolConfig()
    basis = FluxGrid.symmetric(config.phi_max, config.n_points)
    es = eigensystem(fluxonium_flux(params, basis), config.k or config.k_scan, basis)
    right = well_projector(basis, (0.0, config.phi_max))
    w = np.real(np.einsum("ij,ij->j", es.states.conj(), right @ es.states))
    phi, n, _ = flux_grid_ops(basis)
    return _assemble(es.energies, es.states, {"flux": phi, "charge": n}, right, parity(basis), baths, config, w)


def cos2theta_model(params: Cos2ThetaParams, baths, config: LifetimeProtocolConfig | None = None) -> QubitModel:
    """cos(2 theta) qubit in the charge basis with ``cos theta`` and charge baths.

    The "right" well is the phase interval ``(pi/2, 3 pi/2)`` around ``theta = pi``.
    """
    config = config or LifetimeProtocolConfig()
    basis = Rotor(config.n_max)
    es = eigensystem(cos2theta_hamiltonian(params, basis), config.k or config.k_scan, basis)
    right = well_projector(basis, (0.5 * math.pi, 1.5 * math.pi))
    w = np.real(np.einsum("ij,ij->j", es.states.conj(), right @ es.states))
    ops = rotor_trig_ops(basis)
    return _assemble(es.energies, es.states, {"cos_theta": ops["cos_theta"], "charge": ops["n_op"]},
                     right, parity(basis), baths, config, w)


def fit_exponential(times, values, *, model: str = "decay") -> DecayFit:
    """Fit ``y = A exp(-t / T)`` by least squares on ``log y``.

    ``model="rise"`` fits ``y = (1 - A exp(-t / T)) / 2`` by transforming to
    ``1 - 2y``. A trace that does not decay gives ``T = inf``.
    """
    t = np.asarray(times, float)
    y = np.asarray(values, float)
    if model == "rise":
        y = 1 - 2 * y
    elif model != "decay":
        raise ValueError(f"unknown model {model!r}")
    if len(t) < 8:
        raise FitError("need at least 8 points")
    if np.ptp(y) <= 1e-12 * max(np.max(np.abs(y)), 1e-300):
        if np.all(y > 0):
            return DecayFit(math.inf, float(y[0]), 1.0, len(t), math.inf, t, y)
        raise FitError("constant nonpositive trace")
    if np.any(y <= 0):
        raise FitError("nonpositive values after transform")
    slope, intercept, r2 = _loglinear(t, np.log(y))
    late = slice(len(t) // 2, None)
    t_late = math.nan
    if len(t) - len(t) // 2 >= 4:
        s_late = _loglinear(t[late], np.log(y[late]))[0]
        t_late = math.inf if s_late >= 0 else -1.0 / s_late
    T = math.inf if slope >= 0 else -1.0 / slope
    return DecayFit(T, float(math.exp(intercept)), r2, len(t), t_late, t, y)


def _loglinear(t, ly):
    slope, intercept = np.polyfit(t, ly, 1)
    pred = intercept + slope * t
    ss_res = float(np.sum((ly - pred) ** 2))
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return float(slope), float(intercept), max(r2, 0.0)


def _well_state(qm: QubitModel, side: str, tol=0.05):
    """Lowest eigenstate localized in one well.

    If none is (wells hybridized), fall back to the state of the two-level
    ground space with the largest weight in that well.
    """
    w = qm.right_weight if side == "right" else 1 - qm.right_weight
    k = qm.model.k
    for i in np.flatnonzero(w > 1 - tol):
        psi = np.zeros(k, complex)
        psi[i] = 1
        return psi
    proj = qm.right if side == "right" else np.eye(k) - qm.right
    vals, vecs = np.linalg.eigh(proj[:2, :2])
    if vals[-1] < 1 - tol:
        raise ProtocolError(f"no state localized in the {side} well (best weight {vals[-1]:.3f})")
    psi = np.zeros(k, complex)
    psi[:2] = vecs[:, -1]
    return psi


def _left_state(qm, tol=0.05):
    return _well_state(qm, "left", tol)


def _right_state(qm, tol=0.05):
    return _well_state(qm, "right", tol)


def _closed(qm):
    return not qm.model.dissipators


def _scan_decay(qm, rho0, signal, target):
    """Coarse geometric scan for the time at which ``signal`` has fallen to ``target``."""
    times = np.geomspace(1e-3, 1e12, 121)
    rhos = evolve(qm.model, rho0, times)
    y = np.array([signal(t, r) for t, r in zip(times, rhos)])
    below = np.flatnonzero(y < target)
    return None if len(below) == 0 else float(times[below[0]])


def _run_protocol(qm, rho0, signal, y_inf, config):
    y0 = signal(0.0, rho0)
    norm = lambda t, r: (signal(t, r) - y_inf) / (y0 - y_inf)  # noqa: E731
    t_e = _scan_decay(qm, rho0, norm, math.exp(-1))
    if t_e is None:
        times = np.linspace(0, 1e12, config.n_times)
        return DecayFit(math.inf, 1.0, 1.0, len(times), math.inf, times, np.ones_like(times))
    for _ in range(3):
        times = np.linspace(0.0, config.span * t_e, config.n_times)
        rhos = evolve(qm.model, rho0, times)
        y = np.array([norm(t, r) for t, r in zip(times, rhos)])
        fit = fit_exponential(times, y)
        if abs(fit.T - t_e) < 0.2 * t_e and not fit.extrapolated:
            break
        t_e = 1.05 * fit.T
    return fit


def _checked(fit, config):
    if not fit.censored and fit.r_squared < config.min_r_squared:
        raise FitError(f"exponential fit quality r^2 = {fit.r_squared:.4f} below {config.min_r_squared}")
    return fit


def _build(params, baths, config):
    config = config or LifetimeProtocolConfig()
    if baths is None:
        baths = default_baths(channels=("cos_theta", "charge") if isinstance(params, Cos2ThetaParams)
                              else ("flux", "charge"))
    if isinstance(baths, BathSpec):
        baths = [baths]
    if isinstance(params, CircuitParams):
        return fluxonium_model(params.with_offset(config.delta_phi_e), baths, config), config
    if isinstance(params, Cos2ThetaParams):
        return cos2theta_model(params, baths, config), config
    raise TypeError(f"unsupported parameter type {type(params).__name__}")


def bitflip_time(params, baths=None, config: LifetimeProtocolConfig | None = None, *,
                 qubit: QubitModel | None = None) -> DecayFit:
    """Bit-flip time from the tunnelling trace ``p(t) = Tr[rho(t) Pi_r]``.

    The system starts in the lowest eigenstate localized in the left well and
    the fit is to the normalized approach of ``p(t)`` to its stationary value,
    ``(p_ss - p(t)) / (p_ss - p(0)) = A exp(-t / T_bf)``.
    """
    qm, config = (qubit, config or LifetimeProtocolConfig()) if qubit is not None else _build(params, baths, config)
    psi = _left_state(qm)
    rho0 = np.outer(psi, psi.conj())
    p_of = lambda t, r: float(np.real(np.trace(r @ qm.right)))  # noqa: E731
    if _closed(qm):
        times = np.linspace(0, 1e3, config.n_times)
        p = np.array([p_of(t, r) for t, r in zip(times, evolve(qm.model, rho0, times))])
        return DecayFit(math.inf, 1.0, 1.0, len(times), math.inf, times, p)
    p_ss = p_of(None, stationary_state(qm.model))
    return _checked(_run_protocol(qm, rho0, p_of, p_ss, config), config)


def phaseflip_time(params, baths=None, config: LifetimeProtocolConfig | None = None, *,
                   qubit: QubitModel | None = None) -> DecayFit:
    """Phase-flip time from the decay of the parity expectation value.

    The system starts in the even superposition of the lowest left- and
    right-well eigenstates. Parity is read out on the interaction-picture
    state ``exp(iHt) rho(t) exp(-iHt)``, which removes the coherent precession
    at the well splitting and leaves the decay envelope. Only the coherence
    (off-diagonal) part of the parity is kept, since population transfer
    between wells adds a slow background on the bit-flip timescale.
    """
    qm, config = (qubit, config or LifetimeProtocolConfig()) if qubit is not None else _build(params, baths, config)
    left, right = _left_state(qm), _right_state(qm)
    psi = (left + right) / math.sqrt(2)
    if np.vdot(psi, qm.parity @ psi).real < 0:
        psi = (left - right) / math.sqrt(2)
    rho0 = np.outer(psi, psi.conj())
    e = qm.model.energies
    de = (e[:, None] - e[None, :]) / HBAR

    # population terms carry a slow background from well equilibration; keep the coherences
    p_off = qm.parity - np.diag(np.diag(qm.parity))

    def p_of(t, r):
        return float(np.real(np.sum(r.T * p_off * np.exp(-1j * de * t))))

    if _closed(qm):
        times = np.linspace(0, 1e3, config.n_times)
        p = np.array([p_of(t, r) for t, r in zip(times, evolve(qm.model, rho0, times))])
        return DecayFit(math.inf, float(p[0]), 1.0, len(times), math.inf, times, p)
    p_inf = 0.0
    return _checked(_run_protocol(qm, rho0, p_of, p_inf, config), config)


# --- 1/f estimators and two-level golden-rule elements -----------------------------------

def _eps01(params: CircuitParams, basis: FluxGrid) -> float:
    es = eigensystem(fluxonium_flux(params, basis), 2, basis)
    return float(es.energies[1] - es.energies[0])


def d_eps01_d_phi_e(params: CircuitParams, *, step: float = 1e-4, basis: FluxGrid | None = None,
                    rtol: float = 1e-3) -> float:
    """``d eps_01 / d phi_e`` by central differences, Richardson-checked against ``2 * step``.

    Evaluated at ``params.phi_e``, which must be off the sweet spot so that the
    two lowest states are the well states.
    """
    basis = basis or FluxGrid.symmetric(2 * math.pi, 801)

    def central(h):
        up, dn = params.with_offset(params.delta_phi_e + h), params.with_offset(params.delta_phi_e - h)
        return (_eps01(up, basis) - _eps01(dn, basis)) / (2 * h)

    d1, d2 = central(step), central(2 * step)
    rich = (4 * d1 - d2) / 3
    if abs(rich - d1) > rtol * max(abs(rich), 1e-300):
        raise ProtocolError(f"ill-conditioned flux derivative: {d1:.6g} vs {rich:.6g}")
    return rich


def one_over_f_dephasing(params: CircuitParams, A_phi_e: float, omega_low: float, t_exp: float, *,
                         derivative: float | None = None, **kw) -> float:
    """``sqrt(2) A (d eps01/d phi_e) sqrt(|ln(w_low t_exp)|)``; units follow ``eps01`` (h*GHz)."""
    if A_phi_e == 0:
        return 0.0
    if derivative is None:
        derivative = d_eps01_d_phi_e(params, **kw)
    return math.sqrt(2) * A_phi_e * abs(derivative) * math.sqrt(abs(math.log(omega_low * t_exp)))


def one_over_f_bitflip_proxy(params: CircuitParams, *, basis: FluxGrid | None = None) -> float:
    """``|<0|phi|1>|^2 / eps01`` from the two lowest eigenstates off the sweet spot."""
    if abs(params.delta_phi_e) < 1e-12:
        raise ProtocolError("bit-flip proxy needs a flux offset from the sweet spot")
    basis = basis or FluxGrid.symmetric(2 * math.pi, 801)
    es = eigensystem(fluxonium_flux(params, basis), 2, basis)
    v0, v1 = es.states[:, 0], es.states[:, 1]
    m = np.vdot(v0, basis.points * v1)
    return float(abs(m) ** 2 / (es.energies[1] - es.energies[0]))


def twolevel_golden_rule_elements(params: CircuitParams, *, basis: Fock | None = None) -> dict:
    """Squared flux and charge matrix elements between codewords and between cats.

    Returns the heavy-limit closed forms together with a direct Fock-basis
    evaluation (keys with suffix ``_direct``) when ``basis`` is given.
    """
    a = analytic_alpha(params)
    t = analytic_theta_simple(params)
    ap = a * math.exp(t)
    n0 = 0.5 / params.phi0
    charge = 4 * (n0 * ap * math.exp(t)) ** 2 * math.exp(-4 * ap**2)
    out = {
        "flux_codeword": 0.0,
        "charge_codeword": charge,
        "flux_cat": math.pi**2 * (params.E_j / (params.E_j + params.E_l)) ** 2,
        "charge_cat": charge,
        "alpha_prime": ap,
    }
    if basis is not None:
        phi, n = flux_charge_ops(params, basis)
        ans = SqueezedAnsatz(a, t)
        plus = squeezed_coherent_state(ans, basis)
        minus = squeezed_coherent_state(SqueezedAnsatz(-a, t), basis)
        c_plus, c_minus = cat_state(ans, basis, +1), cat_state(ans, basis, -1)
        out["flux_codeword_direct"] = float(abs(np.vdot(minus, phi @ plus)) ** 2)
        out["charge_codeword_direct"] = float(abs(np.vdot(minus, n @ plus)) ** 2)
        out["flux_cat_direct"] = float(abs(np.vdot(c_minus, phi @ c_plus)) ** 2)
        out["charge_cat_direct"] = float(abs(np.vdot(c_minus, n @ c_plus)) ** 2)
    return out
