"""Bosonic and rotor operator algebra on dense matrices.

Operators are plain complex ``numpy`` arrays. The basis a matrix lives in is
described by one of the frozen dataclasses :class:`Fock`, :class:`FluxGrid`
or :class:`Rotor`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidBasisError, TruncationError, UnsupportedBasisError

__all__ = [
    "Fock", "FluxGrid", "Rotor", "SqueezedAnsatz",
    "annihilation", "creation", "number_op", "quadrature",
    "displacement", "squeeze", "squeezed_coherent_state", "cat_state",
    "flux_charge_ops", "flux_grid_ops", "parity", "rotor_trig_ops",
    "well_projector", "expm_antihermitian", "herm_func", "is_hermitian",
    "fock_to_flux", "commutator", "expect", "variance",
]


@dataclass(frozen=True)
class Fock:
    dim: int

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 2:
            raise InvalidBasisError(f"Fock dim must be an integer >= 2, got {self.dim}")


@dataclass(frozen=True)
class FluxGrid:
    """Uniform grid of flux values, endpoints included.

    The grid must have an odd number of points so that ``phi = 0`` is a grid
    point when it is symmetric.
    """

    phi_min: float
    phi_max: float
    n_points: int

    def __post_init__(self):
        if self.n_points < 3 or self.n_points % 2 == 0:
            raise InvalidBasisError(f"n_points must be odd and >= 3, got {self.n_points}")
        if not self.phi_max > self.phi_min:
            raise InvalidBasisError("phi_max must exceed phi_min")

    @classmethod
    def symmetric(cls, phi_max: float = 4 * math.pi, n_points: int = 801) -> "FluxGrid":
        return cls(-phi_max, phi_max, n_points)

    @property
    def dim(self) -> int:
        return self.n_points

    @property
    def points(self) -> np.ndarray:
        return np.linspace(self.phi_min, self.phi_max, self.n_points)

    @property
    def step(self) -> float:
        return (self.phi_max - self.phi_min) / (self.n_points - 1)

    @property
    def is_symmetric(self) -> bool:
        return math.isclose(self.phi_min, -self.phi_max, rel_tol=1e-12, abs_tol=1e-12)


@dataclass(frozen=True)
class Rotor:
    """Integer charge basis ``-n_max ... n_max`` of a compact phase variable."""

    n_max: int

    def __post_init__(self):
        if int(self.n_max) != self.n_max or self.n_max < 0:
            raise InvalidBasisError(f"n_max must be a nonnegative integer, got {self.n_max}")

    @property
    def dim(self) -> int:
        return 2 * self.n_max + 1

    @property
    def charges(self) -> np.ndarray:
        return np.arange(-self.n_max, self.n_max + 1)


@dataclass(frozen=True)
class SqueezedAnsatz:
    """Displacement ``alpha`` and squeezing ``theta`` of ``D(alpha) S(theta)|vac>``."""

    alpha: complex
    theta: complex

    @property
    def alpha_prime(self):
        return self.alpha * np.exp(self.theta)


def _require_fock(basis, what):
    if not isinstance(basis, Fock):
        raise UnsupportedBasisError(f"{what} is only defined in the Fock basis, got {type(basis).__name__}")


def is_hermitian(m: np.ndarray, rtol: float = 1e-12) -> bool:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    scale = np.max(np.abs(m)) if m.size else 0.0
    return np.max(np.abs(m - m.conj().T), initial=0.0) <= rtol * max(scale, 1e-300)


def commutator(a, b):
    return a @ b - b @ a


def expect(op, psi):
    return np.vdot(psi, op @ psi)


def variance(op, psi):
    mean = expect(op, psi)
    return (expect(op @ op, psi) - mean**2).real


def annihilation(basis) -> np.ndarray:
    _require_fock(basis, "annihilation")
    return np.diag(np.sqrt(np.arange(1, basis.dim)), 1).astype(complex)


def creation(basis) -> np.ndarray:
    return annihilation(basis).conj().T


def number_op(basis) -> np.ndarray:
    _require_fock(basis, "number_op")
    return np.diag(np.arange(basis.dim, dtype=float)).astype(complex)


def quadrature(basis) -> np.ndarray:
    """``a + a^dagger``."""
    a = annihilation(basis)
    return a + a.conj().T


def herm_func(h: np.ndarray, func) -> np.ndarray:
    """Apply a scalar function to a hermitian matrix by eigendecomposition."""
    w, v = np.linalg.eigh(h)
    return (v * func(w)) @ v.conj().T


def expm_antihermitian(g: np.ndarray) -> np.ndarray:
    """``exp(g)`` for anti-hermitian ``g``; the result is unitary to machine precision."""
    h = 1j * g
    h = 0.5 * (h + h.conj().T)
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * w)) @ v.conj().T


def displacement(alpha: complex, basis) -> np.ndarray:
    _require_fock(basis, "displacement")
    if abs(alpha) ** 2 > basis.dim / 4:
        need = int(math.ceil(4 * abs(alpha) ** 2))
        raise TruncationError(
            f"|alpha|^2 = {abs(alpha) ** 2:.3g} exceeds dim/4 for dim={basis.dim}; use dim >= {need}",
            suggested_dim=need,
        )
    a = annihilation(basis)
    return expm_antihermitian(alpha * a.conj().T - np.conj(alpha) * a)


def squeeze(theta: complex, basis) -> np.ndarray:
    _require_fock(basis, "squeeze")
    if math.exp(2 * abs(theta)) > basis.dim / 8:
        need = int(math.ceil(8 * math.exp(2 * abs(theta))))
        raise TruncationError(
            f"exp(2|theta|) = {math.exp(2 * abs(theta)):.3g} exceeds dim/8 for dim={basis.dim}; "
            f"use dim >= {need}",
            suggested_dim=need,
        )
    a = annihilation(basis)
    return expm_antihermitian(0.5 * (np.conj(theta) * a @ a - theta * a.conj().T @ a.conj().T))


def squeezed_coherent_state(ansatz: SqueezedAnsatz, basis) -> np.ndarray:
    vac = np.zeros(basis.dim, dtype=complex)
    vac[0] = 1.0
    psi = displacement(ansatz.alpha, basis) @ (squeeze(ansatz.theta, basis) @ vac)
    return psi / np.linalg.norm(psi)


def cat_state(ansatz: SqueezedAnsatz, basis, sign: int = +1) -> np.ndarray:
    """Normalized ``|alpha, theta> + sign |-alpha, theta>``."""
    plus = squeezed_coherent_state(ansatz, basis)
    minus = squeezed_coherent_state(SqueezedAnsatz(-ansatz.alpha, ansatz.theta), basis)
    psi = plus + sign * minus
    return psi / np.linalg.norm(psi)


def flux_charge_ops(params, basis) -> tuple[np.ndarray, np.ndarray]:
    """Flux ``phi0 (a + a^dag)`` and charge ``(i / 2 phi0)(a^dag - a)`` in the Fock basis.

    ``params`` only needs a ``phi0`` attribute.
    """
    _require_fock(basis, "flux_charge_ops")
    phi0 = params.phi0
    a = annihilation(basis)
    ad = a.conj().T
    return phi0 * (a + ad), (1j / (2 * phi0)) * (ad - a)


def flux_grid_ops(basis: FluxGrid) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Flux, charge and charge-squared on a flux grid.

    ``n = -i d/dphi`` by central differences, ``n^2`` by the three-point
    second difference. Both use Dirichlet boundaries.
    """
    if not isinstance(basis, FluxGrid):
        raise UnsupportedBasisError("flux_grid_ops requires a FluxGrid basis")
    m, h = basis.n_points, basis.step
    phi = np.diag(basis.points).astype(complex)
    off = np.ones(m - 1)
    n = (-1j / (2 * h)) * (np.diag(off, 1) - np.diag(off, -1))
    n_sq = (1.0 / h**2) * (2 * np.eye(m) - np.diag(off, 1) - np.diag(off, -1))
    return phi, n, n_sq.astype(complex)


def parity(basis) -> np.ndarray:
    if isinstance(basis, Fock):
        return np.diag((-1.0) ** np.arange(basis.dim)).astype(complex)
    if isinstance(basis, FluxGrid):
        if not basis.is_symmetric:
            raise InvalidBasisError("parity needs a grid symmetric about phi = 0")
        return np.fliplr(np.eye(basis.n_points)).astype(complex)
    if isinstance(basis, Rotor):
        return np.diag((-1.0) ** np.abs(basis.charges)).astype(complex)
    raise UnsupportedBasisError(f"parity not defined for {type(basis).__name__}")


def _shift(dim, k):
    # |n + k><n| in the truncated charge basis
    return np.eye(dim, k=-k, dtype=complex)


def rotor_trig_ops(basis: Rotor) -> dict[str, np.ndarray]:
    """Charge and phase-trigonometric operators of a rotor.

    ``exp(i theta)`` raises the charge by one; shifts are truncated at the
    cutoff instead of wrapping around.
    """
    if not isinstance(basis, Rotor):
        raise UnsupportedBasisError("rotor_trig_ops requires a Rotor basis")
    d = basis.dim
    e1, e2 = _shift(d, 1), _shift(d, 2)
    return {
        "n_op": np.diag(basis.charges.astype(float)).astype(complex),
        "cos_theta": 0.5 * (e1 + e1.conj().T),
        "sin_theta": -0.5j * (e1 - e1.conj().T),
        "cos_2theta": 0.5 * (e2 + e2.conj().T),
        "sin_2theta": -0.5j * (e2 - e2.conj().T),
    }


def well_projector(basis, region, *, phi0: float | None = None) -> np.ndarray:
    """Projector onto the flux (or rotor phase) interval ``region = (lo, hi)``.

    On a flux grid the interval is half-open, ``lo <= phi < hi``, except that
    an upper bound at the grid edge is inclusive; complementary intervals then
    sum to the identity. In the Fock basis the projector is built from the
    spectral decomposition of the flux quadrature, so ``phi0`` is required.
    On a rotor the matrix elements are the exact integrals of
    ``exp(-i (n - m) theta) / 2 pi`` over the interval; the truncated matrix is
    hermitian but only approximately idempotent.
    """
    lo, hi = float(region[0]), float(region[1])
    if not hi > lo:
        raise ValueError(f"empty region {region}")
    if isinstance(basis, FluxGrid):
        pts = basis.points
        tol = 1e-9 * basis.step
        upper = (pts < hi - tol) | ((hi >= basis.phi_max - tol) & (pts <= hi + tol))
        mask = (pts >= lo - tol) & upper
        if not mask.any():
            raise ValueError(f"region {region} contains no grid points")
        return np.diag(mask.astype(float)).astype(complex)
    if isinstance(basis, Rotor):
        if hi - lo > 2 * math.pi + 1e-12:
            raise ValueError("rotor region longer than 2 pi")
        q = basis.charges
        k = q[:, None] - q[None, :]
        with np.errstate(divide="ignore", invalid="ignore"):
            off = (np.exp(-1j * k * hi) - np.exp(-1j * k * lo)) / (-1j * k * 2 * math.pi)
        return np.where(k == 0, (hi - lo) / (2 * math.pi), off)
    if isinstance(basis, Fock):
        if phi0 is None:
            raise ValueError("Fock-basis well projector needs phi0")
        w, v = np.linalg.eigh(phi0 * quadrature(basis))
        mask = (w >= lo) & (w < hi)
        return (v[:, mask]) @ v[:, mask].conj().T
    raise UnsupportedBasisError(f"well_projector not defined for {type(basis).__name__}")


def fock_to_flux(state: np.ndarray, phi0: float, phi: np.ndarray) -> np.ndarray:
    """Flux-space wavefunction of a Fock-basis state, normalized on ``phi``.

    Uses the real Hermite-function representation consistent with
    ``flux = phi0 (a + a^dag)`` and ``n = -i d/dphi``.
    """
    x = np.asarray(phi) / (math.sqrt(2) * phi0)
    out = np.zeros_like(x, dtype=complex)
    h_prev = np.zeros_like(x)
    h_cur = np.pi**-0.25 * np.exp(-x**2 / 2)
    for n, c in enumerate(state):
        out += c * h_cur
        h_next = math.sqrt(2.0 / (n + 1)) * x * h_cur - math.sqrt(n / (n + 1)) * h_prev
        h_prev, h_cur = h_cur, h_next
    return out / math.sqrt(math.sqrt(2) * phi0)
