"""Circuit Hamiltonians: fluxonium, the cos(2 theta) qubit and a phase-slip-coupled pair.

Energies are in units of h*GHz throughout.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

import numpy as np
import scipy.linalg
from scipy.optimize import brentq

from .errors import ConvergenceWarning, NotHermitianError, ProtocolError, TruncationWarning
from .operators import (
    Fock, FluxGrid, Rotor, flux_charge_ops, flux_grid_ops, herm_func, is_hermitian,
    number_op, parity, quadrature, rotor_trig_ops, well_projector,
)

__all__ = [
    "CircuitParams", "Cos2ThetaParams", "QpsPairParams", "EigenSystem",
    "fluxonium_fock", "fluxonium_fock_terms", "fluxonium_flux", "cos2theta_hamiltonian",
    "eigensystem", "splitting", "grid_convergence", "kepler_solve", "kepler_roots",
    "qps_pair_hamiltonian", "qps_nonlinear_term", "qps_logical_states", "qps_logical_basis",
    "qps_xx_coupling",
]


@dataclass(frozen=True)
class CircuitParams:
    """Fluxonium energies ``E_c``, ``E_l``, ``E_j`` (h*GHz) and external flux ``phi_e`` (rad)."""

    E_c: float
    E_l: float
    E_j: float
    phi_e: float = math.pi

    def __post_init__(self):
        for name in ("E_c", "E_l", "E_j"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be positive, got {v}")

    @property
    def phi0(self) -> float:
        return (2 * self.E_c / self.E_l) ** 0.25

    @property
    def hbar_omega(self) -> float:
        return math.sqrt(8 * self.E_l * self.E_c)

    @property
    def delta_phi_e(self) -> float:
        """Flux offset from the sweet spot ``phi_e = pi``."""
        return self.phi_e - math.pi

    def at_sweet_spot(self) -> "CircuitParams":
        return replace(self, phi_e=math.pi)

    def with_offset(self, delta_phi_e: float) -> "CircuitParams":
        return replace(self, phi_e=math.pi + delta_phi_e)


@dataclass(frozen=True)
class Cos2ThetaParams:
    E_j2: float
    E_c: float
    E_j1: float = 0.0
    phi_e: float = 0.0
    n_e: float = 0.0

    def __post_init__(self):
        if not self.E_j2 > 0:
            raise ValueError(f"E_j2 must be positive, got {self.E_j2}")
        if not self.E_c > 0:
            raise ValueError(f"E_c must be positive, got {self.E_c}")
        if self.E_j1 < 0:
            raise ValueError(f"E_j1 must be nonnegative, got {self.E_j1}")


@dataclass(frozen=True)
class QpsPairParams:
    """Two cos(2 theta) qubits joined by a phase-slip junction.

    ``E_c_node`` is ``(2e)^2 / 2C``. ``cross`` is the coefficient of the
    ``Q1 Q3`` charge coupling relative to ``(Q1^2 + Q3^2) / 2``.
    """

    E_c_node: float
    E_q: float
    E_j: float
    cross: float = -1.0

    def __post_init__(self):
        for name in ("E_c_node", "E_q", "E_j"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class EigenSystem:
    energies: np.ndarray
    states: np.ndarray
    basis: object
    k: int

    @property
    def gaps(self) -> np.ndarray:
        return self.energies - self.energies[0]


def _check_ground_support(h, basis, tail_fraction=0.1, tol=1e-8, label="Hamiltonian"):
    w, v = scipy.linalg.eigh(h, subset_by_index=[0, 0])
    pop = np.abs(v[:, 0]) ** 2
    if isinstance(basis, Rotor):
        tail = np.abs(basis.charges) > basis.n_max * (1 - tail_fraction)
    else:
        n_tail = max(1, int(math.ceil(tail_fraction * len(pop))))
        tail = np.zeros(len(pop), bool)
        tail[-n_tail:] = True
    leak = pop[tail].sum()
    if leak > tol:
        warnings.warn(f"{label}: ground-state weight {leak:.2e} near the truncation edge", TruncationWarning,
                      stacklevel=3)
    return leak


def fluxonium_fock_terms(params: CircuitParams, basis: Fock) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """``(a^dag a, cos(phi0 (a + a^dag)), phi)`` in the Fock basis."""
    n = number_op(basis)
    x = params.phi0 * quadrature(basis)
    return n, herm_func(x, np.cos), x


def fluxonium_fock(params: CircuitParams, basis: Fock, *, zero_point: bool = False,
                   check: bool = True) -> np.ndarray:
    """``hbar w a^dag a + E_j cos(phi0 (a + a^dag))``.

    Away from the sweet spot the inductive offset adds
    ``-E_l dphi phi + E_l dphi^2 / 2``. With ``zero_point`` the constant
    ``hbar w / 2`` is included so energies match :func:`fluxonium_flux`.
    """
    n, cos_phi, phi = fluxonium_fock_terms(params, basis)
    h = params.hbar_omega * n + params.E_j * cos_phi
    d = params.delta_phi_e
    if d != 0.0:
        h = h - params.E_l * d * phi + 0.5 * params.E_l * d**2 * np.eye(basis.dim)
    if zero_point:
        h = h + 0.5 * params.hbar_omega * np.eye(basis.dim)
    h = 0.5 * (h + h.conj().T)
    if check:
        _check_ground_support(h, basis, label="fluxonium_fock")
    return h


def fluxonium_flux(params: CircuitParams, basis: FluxGrid) -> np.ndarray:
    """``4 E_c n^2 + E_l (phi - dphi)^2 / 2 + E_j cos(phi)`` on a flux grid.

    The static pi of the external flux is absorbed into the sign of the
    Josephson term; ``dphi = phi_e - pi``.
    """
    if not isinstance(basis, FluxGrid):
        raise TypeError("fluxonium_flux requires a FluxGrid basis")
    if basis.phi_min > -2 * math.pi + 1e-9 or basis.phi_max < 2 * math.pi - 1e-9:
        raise ValueError("flux grid must cover at least [-2 pi, 2 pi]")
    _, _, n_sq = flux_grid_ops(basis)
    phi = basis.points
    pot = 0.5 * params.E_l * (phi - params.delta_phi_e) ** 2 + params.E_j * np.cos(phi)
    return 4 * params.E_c * n_sq + np.diag(pot).astype(complex)


def _flux_levels(params: CircuitParams, basis: FluxGrid, k: int) -> np.ndarray:
    """Lowest ``k`` energies of :func:`fluxonium_flux` without forming the dense matrix."""
    phi, h = basis.points, basis.step
    pot = 0.5 * params.E_l * (phi - params.delta_phi_e) ** 2 + params.E_j * np.cos(phi)
    diag = pot + 8 * params.E_c / h**2
    off = np.full(basis.n_points - 1, -4 * params.E_c / h**2)
    return scipy.linalg.eigh_tridiagonal(diag, off, eigvals_only=True, select="i", select_range=(0, k - 1))


def cos2theta_hamiltonian(params: Cos2ThetaParams, basis: Rotor, *, check: bool = True) -> np.ndarray:
    """``-E_j2 cos 2t - E_j1 cos(t - phi_e) + 4 E_c (n - n_e)^2`` in the charge basis."""
    ops = rotor_trig_ops(basis)
    n_shift = ops["n_op"] - params.n_e * np.eye(basis.dim)
    h = (-params.E_j2 * ops["cos_2theta"]
         - params.E_j1 * (math.cos(params.phi_e) * ops["cos_theta"] + math.sin(params.phi_e) * ops["sin_theta"])
         + 4 * params.E_c * n_shift @ n_shift)
    if check:
        _check_ground_support(h, basis, label="cos2theta_hamiltonian")
    return h


def _fix_phases(v):
    idx = np.argmax(np.abs(v), axis=0)
    ph = v[idx, np.arange(v.shape[1])]
    return v * (np.abs(ph) / ph)[None, :]


def eigensystem(h: np.ndarray, k: int, basis=None) -> EigenSystem:
    """The ``k`` lowest eigenpairs of a hermitian matrix.

    Each eigenvector is rephased so that its largest-magnitude entry is real
    and positive.
    """
    h = np.asarray(h)
    if not is_hermitian(h, rtol=1e-10):
        raise NotHermitianError("eigensystem requires a hermitian matrix")
    k = int(min(k, h.shape[0]))
    if np.iscomplexobj(h) and not np.any(h.imag):
        h = h.real
    if not np.iscomplexobj(h) and h.shape[0] > 64 and not np.any(np.triu(h, 2)):
        # finite-difference grids are tridiagonal
        w, v = scipy.linalg.eigh_tridiagonal(np.diag(h).copy(), np.diag(h, 1).copy(),
                                             select="i", select_range=(0, k - 1))
    else:
        w, v = scipy.linalg.eigh(h, subset_by_index=[0, k - 1])
    return EigenSystem(energies=w, states=_fix_phases(v.astype(complex)), basis=basis, k=k)


def _hamiltonian(params, basis):
    if isinstance(basis, Fock):
        return fluxonium_fock(params, basis)
    if isinstance(basis, FluxGrid):
        return fluxonium_flux(params, basis)
    if isinstance(basis, Rotor) and isinstance(params, Cos2ThetaParams):
        return cos2theta_hamiltonian(params, basis)
    raise TypeError(f"no Hamiltonian for {type(params).__name__} in {type(basis).__name__}")


def splitting(params, basis, j: int = 1) -> float:
    """``E_j - E_0`` at the sweet spot (fluxonium) or at the given parameters (cos 2 theta)."""
    if isinstance(params, CircuitParams):
        params = params.at_sweet_spot()
    es = eigensystem(_hamiltonian(params, basis), j + 1, basis)
    return float(es.energies[j] - es.energies[0])


def grid_convergence(params: CircuitParams, basis: FluxGrid, k: int = 4, rtol: float = 1e-4) -> float:
    """Largest relative change of the first ``k - 1`` gaps when the grid is refined 2x.

    Emits a :class:`ConvergenceWarning` if it exceeds ``rtol``.
    """
    fine = FluxGrid(basis.phi_min, basis.phi_max, 2 * basis.n_points - 1)
    g1, g2 = (_flux_levels(params, b, k) for b in (basis, fine))
    g1, g2 = g1[1:] - g1[0], g2[1:] - g2[0]
    rel = float(np.max(np.abs(g1 - g2) / np.abs(g2)))
    if rel > rtol:
        warnings.warn(f"flux grid not converged: relative gap change {rel:.2e}", ConvergenceWarning, stacklevel=2)
    return rel


# --- phase-slip coupled pair ---------------------------------------------------------

_RTOL = 4 * np.finfo(float).eps  # tightest brentq accepts


def _kepler_residual(x, q_sum, ratio):
    return x + ratio * math.sin(2 * math.pi * x) + 0.5 * q_sum


def _polish(x, q_sum, ratio):
    for _ in range(3):
        f = _kepler_residual(x, q_sum, ratio)
        df = 1 + 2 * math.pi * ratio * math.cos(2 * math.pi * x)
        if f == 0 or abs(df) < 1e-8:
            break
        step = f / df
        if abs(step) > 1e-6:
            break
        x -= step
    return x


def kepler_roots(q_sum: float, ratio: float) -> list[float]:
    """All roots of ``x + ratio sin(2 pi x) = -q_sum / 2``, ascending."""
    if ratio < 0:
        raise ValueError("ratio must be nonnegative")
    c = -0.5 * q_sum
    if ratio == 0:
        return [c]
    lo, hi = c - ratio, c + ratio
    # at most one root between neighbouring critical points, so a fine scan brackets all of them
    n = max(64, int(64 * ratio * 4) + 1)
    xs = np.linspace(lo, hi, n)
    fs = xs + ratio * np.sin(2 * np.pi * xs) - c
    roots = []
    for i in range(n - 1):
        if fs[i] == 0:
            roots.append(float(xs[i]))
        elif fs[i] * fs[i + 1] < 0:
            r = brentq(_kepler_residual, xs[i], xs[i + 1], args=(q_sum, ratio), xtol=1e-15, rtol=_RTOL)
            roots.append(_polish(r, q_sum, ratio))
    if fs[-1] == 0:
        roots.append(float(xs[-1]))
    return roots


def kepler_solve(q_sum: float, ratio: float) -> float:
    """Solve Kepler's equation for the phase-slip charge ``x = q_e2 / 2e``.

    ``q_sum`` is ``(Q1 + Q3) / 2e`` and ``ratio`` is ``pi E_q / 8 E_c``. When
    several roots exist the one on the branch through ``x = 0`` at
    ``q_sum = 0`` is returned (the root closest to zero beyond a fold).
    The result is odd in ``q_sum``.
    """
    if ratio < 0:
        raise ValueError("ratio must be nonnegative")
    if ratio == 0:
        return -0.5 * q_sum
    if q_sum == 0:
        return 0.0
    sign = -1.0 if q_sum < 0 else 1.0
    q = abs(q_sum)
    c = -0.5 * q
    if 2 * math.pi * ratio <= 1:
        x = brentq(_kepler_residual, c - ratio, c + ratio, args=(q, ratio), xtol=1e-15, rtol=_RTOL)
        return sign * _polish(x, q, ratio)
    # central monotone segment |x| < x_f containing the origin
    x_f = math.acos(-1 / (2 * math.pi * ratio)) / (2 * math.pi)
    if _kepler_residual(-x_f, q, ratio) <= 0:
        x = brentq(_kepler_residual, -x_f, 0.0, args=(q, ratio), xtol=1e-15, rtol=_RTOL)
        return sign * _polish(x, q, ratio)
    roots = kepler_roots(q, ratio)
    return sign * min(roots, key=abs)


def _pair_ops(n_max):
    b = Rotor(n_max)
    ops = rotor_trig_ops(b)
    eye = np.eye(b.dim)
    n1, n3 = np.kron(ops["n_op"], eye), np.kron(eye, ops["n_op"])
    c1, c3 = np.kron(ops["cos_2theta"], eye), np.kron(eye, ops["cos_2theta"])
    return b, n1, n3, c1, c3


def qps_nonlinear_term(params: QpsPairParams, basis: Rotor) -> np.ndarray:
    """``-E_q cos(pi (n1 + n3))``: the joint pi-translation of both phases."""
    q = basis.charges
    tot = q[:, None] + q[None, :]
    return np.diag(-params.E_q * np.cos(np.pi * tot).ravel()).astype(complex)


def qps_pair_hamiltonian(params: QpsPairParams, basis: Rotor) -> np.ndarray:
    """Two-rotor Hamiltonian on ``basis (x) basis`` in the linearized-constraint regime.

    ``E_cn ((n1^2 + n3^2)/2 + cross n1 n3) - E_q cos(pi (n1 + n3)) - E_j (cos 2 p1 + cos 2 p3)``.
    """
    _, n1, n3, c1, c3 = _pair_ops(basis.n_max)
    kin = params.E_c_node * (0.5 * (n1 @ n1 + n3 @ n3) + params.cross * n1 @ n3)
    return kin + qps_nonlinear_term(params, basis) - params.E_j * (c1 + c3)


def qps_logical_states(params: QpsPairParams, basis: Rotor) -> tuple[np.ndarray, np.ndarray]:
    """Single-qubit codewords localized at phase 0 and pi.

    Built from the two lowest states of ``E_cn n^2 / 2 - E_j cos 2 theta``,
    the uncoupled single-rotor part of the pair Hamiltonian.
    """
    ops = rotor_trig_ops(basis)
    h1 = 0.5 * params.E_c_node * ops["n_op"] @ ops["n_op"] - params.E_j * ops["cos_2theta"]
    es = eigensystem(h1, 2, basis)
    p = parity(basis)
    g = es.states
    # order by parity so the sum is the phase-0 codeword
    par = np.real([np.vdot(g[:, i], p @ g[:, i]) for i in range(2)])
    even, odd = g[:, np.argmax(par)], g[:, np.argmin(par)]
    zero, one = (even + odd) / math.sqrt(2), (even - odd) / math.sqrt(2)
    pi_zero = well_projector(basis, (-math.pi / 2, math.pi / 2))
    if np.vdot(zero, pi_zero @ zero).real < np.vdot(one, pi_zero @ one).real:
        zero, one = one, zero
    return zero, one


_PAULI = {"I": np.eye(2), "X": np.array([[0, 1], [1, 0]]), "Y": np.array([[0, -1j], [1j, 0]]),
          "Z": np.diag([1.0, -1.0])}


def qps_logical_basis(params: QpsPairParams, basis: Rotor) -> np.ndarray:
    """Columns ``|00>, |01>, |10>, |11>`` of product codewords on ``basis (x) basis``."""
    zero, one = qps_logical_states(params, basis)
    single = (zero, one)
    return np.column_stack([np.kron(single[i], single[j]) for i in (0, 1) for j in (0, 1)])


def qps_xx_coupling(params: QpsPairParams, basis: Rotor, *, method: str = "projected") -> dict:
    """Coefficients of ``c0 + h1 X1 + h3 X3 - g X1 X3`` for the pair Hamiltonian.

    ``method="projected"`` projects the Hamiltonian onto the product codewords
    and expands it in two-qubit Pauli strings; all 16 coefficients are returned
    under ``"pauli"``. ``method="spectral"`` instead fits the four lowest pair
    levels, labelled by their Cooper-pair parities. The spectral fit is only
    meaningful when the four lowest levels are the codeword manifold; with the
    linearized constraint the sum charge ``n1 + n3`` has no charging energy and
    its levels depend on the truncation.
    """
    h = qps_pair_hamiltonian(params, basis)
    if method == "projected":
        v = qps_logical_basis(params, basis)
        h_eff = v.conj().T @ h @ v
        pauli = {a + b: float(np.real(np.trace(h_eff @ np.kron(_PAULI[a], _PAULI[b])))) / 4
                 for a in "IXYZ" for b in "IXYZ"}
        return {"c0": pauli["II"], "h1": pauli["XI"], "h3": pauli["IX"], "g": -pauli["XX"], "pauli": pauli,
                "residual": float(np.sqrt(sum(c**2 for k, c in pauli.items() if k not in ("II", "XI", "IX", "XX")))),
                "h_eff": h_eff}
    if method != "spectral":
        raise ValueError("method must be 'projected' or 'spectral'")
    es = eigensystem(h, 8, basis)
    p = parity(basis)
    eye = np.eye(basis.dim)
    p1, p3 = np.kron(p, eye), np.kron(eye, p)
    states = es.states.copy()
    # within degenerate levels pick parity eigenstates
    e = es.energies
    i = 0
    while i < len(e):
        j = i + 1
        while j < len(e) and abs(e[j] - e[i]) < 1e-9 * max(1.0, abs(e[i])):
            j += 1
        if j - i > 1:
            sub = states[:, i:j]
            _, u = np.linalg.eigh(sub.conj().T @ p1 @ sub)
            states[:, i:j] = sub @ u
        i = j
    e = e[:4]
    labels = np.array([(np.vdot(states[:, i], p1 @ states[:, i]).real, np.vdot(states[:, i], p3 @ states[:, i]).real)
                       for i in range(4)])
    signs = {tuple(np.sign(r).astype(int)) for r in labels}
    if len(signs) != 4:
        raise ProtocolError(f"four lowest levels do not span all parity sectors: {labels.tolist()}")
    a = np.column_stack([np.ones(4), labels[:, 0], labels[:, 1], -labels[:, 0] * labels[:, 1]])
    coef, *_ = np.linalg.lstsq(a, e, rcond=None)
    resid = float(np.linalg.norm(a @ coef - e))
    return {"c0": coef[0], "h1": coef[1], "h3": coef[2], "g": coef[3], "residual": resid,
            "energies": e, "labels": labels}
