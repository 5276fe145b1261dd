"""Diabatic X gate on fluxonium with a tunable Josephson energy.

Quenching ``E_j`` to (nearly) zero leaves a harmonic oscillator, under which
the two well states rotate into each other after half an oscillator period.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .circuits import CircuitParams, eigensystem, fluxonium_fock_terms
from .errors import IntegrationError, ProtocolError
from .lindblad import HBAR
from .operators import Fock, SqueezedAnsatz, annihilation, well_projector

__all__ = ["GateSchedule", "GateResult", "x_gate_simulate", "free_rotation_map", "oscillator_omega"]

RAMP_SHAPES = ("linear", "cosine")


def oscillator_omega(params: CircuitParams) -> float:
    """Angular frequency ``omega`` in rad/ns of the ``E_j = 0`` oscillator."""
    return params.hbar_omega / HBAR


@dataclass(frozen=True)
class GateSchedule:
    """``E_j(t)``: ramp down over ``t_rise``, hold at ``E_j_min``, ramp back up.

    ``hold=None`` places the ramp midpoints half an oscillator period apart,
    ``hold = max(pi / omega - t_rise, 0)``: each linear ramp is roughly half
    harmonic evolution, so this keeps the net rotation at ``pi``.
    """

    E_j_max: float
    E_j_min: float = 0.0
    t_rise: float = 0.05
    hold: float | None = None
    shape: str = "linear"

    def __post_init__(self):
        if not 0 <= self.E_j_min <= self.E_j_max:
            raise ValueError("need 0 <= E_j_min <= E_j_max")
        if self.t_rise < 0:
            raise ValueError("t_rise must be nonnegative")
        if self.hold is not None and self.hold < 0:
            raise ValueError("hold must be nonnegative")
        if self.shape not in RAMP_SHAPES:
            raise ValueError(f"shape must be one of {RAMP_SHAPES}")

    def hold_time(self, params: CircuitParams) -> float:
        if self.hold is None:
            return max(math.pi / oscillator_omega(params) - self.t_rise, 0.0)
        return self.hold

    def duration(self, params: CircuitParams) -> float:
        return 2 * self.t_rise + self.hold_time(params)

    def _ramp(self, s):
        # s in [0, 1] from E_j_max to E_j_min
        f = s if self.shape == "linear" else 0.5 * (1 - math.cos(math.pi * s))
        return self.E_j_max + (self.E_j_min - self.E_j_max) * f

    def E_j(self, t: float, params: CircuitParams) -> float:
        hold = self.hold_time(params)
        if t <= 0:
            return self.E_j_max
        if t < self.t_rise:
            return self._ramp(t / self.t_rise)
        if t <= self.t_rise + hold:
            return self.E_j_min
        if t < 2 * self.t_rise + hold:
            return self._ramp(1 - (t - self.t_rise - hold) / self.t_rise)
        return self.E_j_max


@dataclass(frozen=True)
class GateResult:
    final_state: np.ndarray
    error: float
    fidelity: float
    gate_time: float
    norm_drift: float
    separation_ratio: float
    n_steps: int


def free_rotation_map(ansatz: SqueezedAnsatz, t: float, omega: float) -> SqueezedAnsatz:
    """Harmonic evolution of ``|alpha, theta>``: ``(alpha e^{-i w t}, theta e^{-2 i w t})``."""
    return SqueezedAnsatz(complex(ansatz.alpha) * np.exp(-1j * omega * t),
                          complex(ansatz.theta) * np.exp(-2j * omega * t))


def _propagator(n_op, cos_op, hw, e_j, dt):
    h = hw * n_op + e_j * cos_op
    w, v = np.linalg.eigh(0.5 * (h + h.conj().T))
    return (v * np.exp(-1j * w * dt / HBAR)) @ v.conj().T


def _segments(schedule, params, dt_max):
    """Piecewise-constant steps ``(E_j at midpoint, dt)`` covering the schedule."""
    steps = []
    for t0, t1, ramp in ((0.0, schedule.t_rise, True),
                         (schedule.t_rise, schedule.t_rise + schedule.hold_time(params), False),
                         (schedule.t_rise + schedule.hold_time(params), schedule.duration(params), True)):
        span = t1 - t0
        if span <= 0:
            continue
        n = max(1, math.ceil(span / dt_max))
        dt = span / n
        if not ramp:
            steps.extend([(schedule.E_j_min, dt)] * n)
            continue
        steps.extend((schedule.E_j(t0 + (i + 0.5) * dt, params), dt) for i in range(n))
    return steps


def _codewords(params, basis, e_j):
    """Left and right well states of the idle Hamiltonian's two-level ground space."""
    n_op, cos_op, _ = fluxonium_fock_terms(params, basis)
    es = eigensystem(params.hbar_omega * n_op + e_j * cos_op, 2, basis)
    left = well_projector(basis, (-math.inf, 0.0), phi0=params.phi0)
    g = es.states
    vals, vecs = np.linalg.eigh(g.conj().T @ left @ g)
    psi_l = g @ vecs[:, -1]
    psi_r = g @ vecs[:, 0]
    if vals[-1] < 0.95:
        raise ProtocolError(f"ground space not split into wells (left weight {vals[-1]:.3f})")
    return psi_l, psi_r


def x_gate_simulate(params: CircuitParams, schedule: GateSchedule, basis: Fock | None = None, *,
                    steps_per_period: int = 50) -> GateResult:
    """Closed-system X gate at the sweet spot.

    The start state is the left-well state of the ``E_j_max`` ground space.
    ``error`` is the probability of not ending in the right well;
    ``fidelity`` is the overlap with the right-well idle state.
    ``separation_ratio`` is ``min_t |<a>_L - <a>_R|`` over its initial value
    for the two codewords evolved together.
    """
    params = params.at_sweet_spot()
    basis = basis or Fock(120)
    omega = oscillator_omega(params)
    dt_max = 1.0 / (omega * steps_per_period)
    n_op, cos_op, _ = fluxonium_fock_terms(params, basis)
    psi_l, psi_r = _codewords(replace(params, E_j=schedule.E_j_max), basis, schedule.E_j_max)
    a = annihilation(basis)
    sep0 = abs(np.vdot(psi_l, a @ psi_l) - np.vdot(psi_r, a @ psi_r))
    states = np.column_stack([psi_l, psi_r])
    sep_min = sep0
    steps = _segments(schedule, params, dt_max)
    cache = {}
    for e_j, dt in steps:
        if (e_j, dt) not in cache:
            cache = {(e_j, dt): _propagator(n_op, cos_op, params.hbar_omega, e_j, dt)}
        states = cache[(e_j, dt)] @ states
        sep = abs(np.vdot(states[:, 0], a @ states[:, 0]) - np.vdot(states[:, 1], a @ states[:, 1]))
        sep_min = min(sep_min, sep)
    final = states[:, 0]
    drift = abs(np.linalg.norm(final) - 1.0)
    if drift > 1e-8:
        raise IntegrationError(f"norm drifted by {drift:.2e}")
    right = well_projector(basis, (0.0, math.inf), phi0=params.phi0)
    error = 1.0 - float(np.real(np.vdot(final, right @ final)))
    fidelity = float(abs(np.vdot(psi_r, final)) ** 2)
    return GateResult(final_state=final, error=error, fidelity=fidelity, gate_time=schedule.duration(params),
                      norm_drift=drift, separation_ratio=float(sep_min / sep0), n_steps=len(steps))
