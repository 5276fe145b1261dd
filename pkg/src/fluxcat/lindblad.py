"""Johnson-Nyquist baths, universal-Lindblad dissipators and the Lindbladian.

Units: energies in h*GHz, times in ns, so hbar = 1 / (2 pi).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
from scipy.integrate import solve_ivp

from .errors import IntegrationError

__all__ = [
    "HBAR", "BathSpec", "LindbladModel", "spectral_density", "build_dissipator", "liouvillian",
    "evolve", "lindblad_spectrum", "stationary_state", "thermal_state", "vec", "unvec",
    "check_density_matrix",
]

HBAR = 1 / (2 * math.pi)
CHANNELS = ("flux", "charge", "cos_theta")


@dataclass(frozen=True)
class BathSpec:
    """Thermal bath at ``kT`` (h*GHz) coupled with dimensionless strength ``x``."""

    kT: float
    x: float
    channel: str = "flux"

    def __post_init__(self):
        if not self.kT > 0:
            raise ValueError(f"kT must be positive, got {self.kT}")
        if self.x < 0:
            raise ValueError(f"x must be nonnegative, got {self.x}")
        if self.channel not in CHANNELS:
            raise ValueError(f"unknown channel {self.channel!r}; expected one of {CHANNELS}")


@dataclass
class LindbladModel:
    """Hamiltonian eigenenergies plus jump operators, all in the truncated eigenbasis."""

    energies: np.ndarray
    dissipators: list = field(default_factory=list)
    _superop: np.ndarray | None = field(default=None, repr=False, compare=False)
    _eig: tuple | None = field(default=None, repr=False, compare=False)

    @property
    def k(self) -> int:
        return len(self.energies)

    @property
    def hamiltonian(self) -> np.ndarray:
        return np.diag(self.energies).astype(complex)

    def superoperator(self) -> np.ndarray:
        if self._superop is None:
            self._superop = liouvillian(self)
        return self._superop

    def eig(self):
        """Cached right eigenvectors, eigenvalues and inverse eigenvector matrix."""
        if self._eig is None:
            s = self.superoperator()
            lam, r = scipy.linalg.eig(s)
            # roundoff around the stationary eigenvalue grows linearly in t otherwise
            scale = np.abs(lam).max() if lam.size else 1.0
            lam = np.where(np.abs(lam) < 1e-13 * scale, 0.0, lam)
            # unpaired eigenvalues of a hermiticity-preserving map are real
            lam = np.where(np.abs(lam.imag) < 1e-13 * scale, lam.real + 0j, lam)
            r = _hermitize_real_modes(lam, r, self.k)
            r_inv = np.linalg.inv(r)
            self._eig = (lam, r, r_inv)
        return self._eig


def _hermitize_real_modes(lam, r, k):
    """Replace eigenvectors of real eigenvalues by hermitian ones.

    If ``S v = l v`` with ``l`` real and ``S`` hermiticity preserving, then
    ``v^dag`` is an eigenvector too, so the hermitian or antihermitian part of
    ``v`` is one. Together with the tracelessness of decaying modes this
    removes roundoff mixing between nearly degenerate slow modes.
    """
    r = r.copy()
    for i in np.flatnonzero(lam.imag == 0):
        m = unvec(r[:, i], k)
        h, a = 0.5 * (m + m.conj().T), -0.5j * (m - m.conj().T)
        m = h if np.linalg.norm(h) >= np.linalg.norm(a) else a
        r[:, i] = vec(m) / np.linalg.norm(m)
    # modes with nonzero eigenvalue are traceless; strip any stationary admixture
    zero = np.flatnonzero(lam == 0)
    if len(zero) == 1:
        ss = r[:, zero[0]] / np.trace(unvec(r[:, zero[0]], k))
        tr = np.trace(r.reshape(k, k, -1, order="F"))
        tr[zero[0]] = 0.0
        r = r - np.outer(ss, tr)
    return r


def vec(rho):
    return np.asarray(rho).reshape(-1, order="F")


def unvec(v, k):
    return np.asarray(v).reshape((k, k), order="F")


def spectral_density(omega, kT: float):
    """``hbar w / (1 - exp(-hbar w / kT))`` in h*GHz for angular frequency ``omega`` (rad/ns).

    The coupling constant is not included; it enters through ``BathSpec.x``.
    """
    e = np.asarray(omega, dtype=float) * HBAR
    y = e / kT
    small = np.abs(y) < 1e-6
    safe = np.where(small, 1.0, y)
    val = np.where(small, kT * (1 + y / 2 + y**2 / 12), e / -np.expm1(-safe))
    return val if val.ndim else float(val)


def build_dissipator(op_eig: np.ndarray, energies: np.ndarray, bath: BathSpec) -> np.ndarray:
    """Single jump operator ``L_ji = x sqrt(S(w_ij)) <j|op|i>`` with ``hbar w_ij = e_i - e_j``.

    ``op_eig`` is the system coupling operator already expressed in the
    eigenbasis belonging to ``energies``.
    """
    op_eig = np.asarray(op_eig)
    energies = np.asarray(energies, dtype=float)
    if op_eig.shape != (len(energies), len(energies)):
        raise ValueError(f"operator shape {op_eig.shape} does not match {len(energies)} levels")
    # element [j, i] describes the jump i -> j
    w = (energies[None, :] - energies[:, None]) / HBAR
    return bath.x * np.sqrt(spectral_density(w, bath.kT)) * op_eig


def liouvillian(model: LindbladModel) -> np.ndarray:
    """Column-stacked superoperator of ``(-i[H, rho] + sum D[L] rho) / hbar`` (units 1/ns)."""
    k = model.k
    eye = np.eye(k)
    h = model.hamiltonian
    s = -1j * (np.kron(eye, h) - np.kron(h.T, eye))
    for l in model.dissipators:
        ld_l = l.conj().T @ l
        s += np.kron(l.conj(), l) - 0.5 * np.kron(eye, ld_l) - 0.5 * np.kron(ld_l.T, eye)
    return s / HBAR


def lindblad_spectrum(model: LindbladModel, m: int | None = None) -> np.ndarray:
    """The ``m`` eigenvalues of smallest ``|Re|`` (ties broken by ``|Im|``), in 1/ns."""
    lam = model.eig()[0]
    order = np.lexsort((np.abs(lam.imag), np.abs(lam.real)))
    lam = lam[order]
    return lam if m is None else lam[:m]


def stationary_state(model: LindbladModel) -> np.ndarray:
    lam, r, _ = model.eig()
    i = int(np.argmin(np.abs(lam)))
    rho = unvec(r[:, i], model.k)
    rho = rho / np.trace(rho)
    return 0.5 * (rho + rho.conj().T)


def thermal_state(energies, kT: float) -> np.ndarray:
    e = np.asarray(energies, float)
    w = np.exp(-(e - e.min()) / kT)
    return np.diag(w / w.sum()).astype(complex)


def check_density_matrix(rho, *, herm_tol=1e-8, trace_tol=1e-8, pos_tol=1e-6) -> float:
    """Raise :class:`IntegrationError` on a broken density matrix; return the positivity defect."""
    if np.max(np.abs(rho - rho.conj().T)) > herm_tol:
        raise IntegrationError("density matrix lost hermiticity")
    if abs(np.trace(rho) - 1) > trace_tol:
        raise IntegrationError(f"trace drifted to {np.trace(rho).real:.12f}")
    defect = max(0.0, -float(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)).min()))
    if defect > pos_tol:
        raise IntegrationError(f"negative eigenvalue {-defect:.2e}")
    return defect


def evolve(model: LindbladModel, rho0: np.ndarray, times, *, method: str = "auto") -> list[np.ndarray]:
    """Density matrices at each time in ``times`` (ns, ascending, >= 0).

    ``method="eig"`` uses the superoperator eigendecomposition, ``"ode"`` a
    stiff BDF integration; ``"auto"`` picks the eigendecomposition unless it is
    too ill-conditioned to reconstruct the Lindbladian accurately.
    """
    times = np.asarray(times, dtype=float)
    if np.any(times < 0) or np.any(np.diff(times) < 0):
        raise ValueError("times must be ascending and nonnegative")
    k = model.k
    v0 = vec(rho0).astype(complex)
    if method == "auto":
        method = "eig" if k <= 40 and _eig_ok(model) else "ode"
    if method == "eig":
        lam, r, r_inv = model.eig()
        c = r_inv @ v0
        out = [unvec(r @ (np.exp(lam * t) * c), k) for t in times]
        out = [np.array(rho0, dtype=complex) if t == 0 else rho for t, rho in zip(times, out)]
    elif method == "ode":
        s = model.superoperator()
        sol = solve_ivp(lambda t, y: s @ y, (0.0, times[-1] if len(times) else 0.0), v0, method="BDF",
                        t_eval=times, jac=s, rtol=1e-10, atol=1e-12)
        if not sol.success:
            raise IntegrationError(f"ODE integration failed: {sol.message}")
        out = [unvec(sol.y[:, i], k) for i in range(len(times))]
    else:
        raise ValueError(f"unknown method {method!r}")
    for rho in out:
        if np.max(np.abs(rho - rho.conj().T)) > 1e-8:
            raise IntegrationError("density matrix lost hermiticity")
    out = [0.5 * (rho + rho.conj().T) for rho in out]
    for rho in out:
        check_density_matrix(rho)
    return out


def _eig_ok(model):
    lam, r, r_inv = model.eig()
    s = model.superoperator()
    err = np.linalg.norm((r * lam) @ r_inv - s) / max(np.linalg.norm(s), 1e-300)
    return err < 1e-9
