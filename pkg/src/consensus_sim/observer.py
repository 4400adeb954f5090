"""Distributed adaptive observer dynamics, plus the centralized and
filtered-leader reference forms used as oracles.

Each follower runs two stable filters driven by its own leader-output
estimate y_hat, adapts theta_hat through the disagreement with its
neighbors' estimates, and corrects y_hat with the same coupling term.
Pinned followers treat the leader as a neighbor broadcasting its true
output.
"""

from dataclasses import dataclass

import numpy as np

from .filter_form import FilterMatrices
from .graph import Topology
from .leader import LeaderSpec


@dataclass
class ObserverState:
    """eta_hat, chi_hat (filters), theta_hat (parameters), y_hat (output)."""

    eta_hat: np.ndarray
    chi_hat: np.ndarray
    theta_hat: np.ndarray
    y_hat: float

    @classmethod
    def zeros(cls, l: int) -> "ObserverState":
        n = 2 * l - 1
        return cls(np.zeros(n), np.zeros(n), np.zeros(l), 0.0)


@dataclass
class LeaderFilteredState:
    """Filter states eta, chi driven by the true leader output."""

    eta: np.ndarray
    chi: np.ndarray


def coupling_z(y_hats, leader_y: float, t: Topology) -> np.ndarray:
    """Neighborhood disagreement z_i = sum_{j in N_i} (y_hat_j - y_hat_i).

    The sum runs over follower neighbors and, for pinned followers, the
    leader with y_hat_{N+1} = leader_y.  Algebraically z = -H (y_hat - y 1).
    """
    y_hats = np.asarray(y_hats, dtype=float)
    if y_hats.shape != (t.n_followers,):
        raise ValueError(f"expected {t.n_followers} estimates, got shape {y_hats.shape}")
    z = np.zeros(t.n_followers)
    for i, j in t.follower_edges:
        z[i - 1] += y_hats[j - 1] - y_hats[i - 1]
        z[j - 1] += y_hats[i - 1] - y_hats[j - 1]
    for p in t.leader_pins:
        z[p - 1] += leader_y - y_hats[p - 1]
    return z


def observer_derivative(s: ObserverState, z_i: float, fm: FilterMatrices,
                        a1: float, kappa: float, mu: float) -> ObserverState:
    """Time derivative of one follower's observer state given its coupling z_i."""
    fchi = fm.F @ s.chi_hat
    d_eta = fm.A @ s.eta_hat + fm.B * s.y_hat
    d_chi = fm.A.T @ s.chi_hat + fm.E * s.y_hat
    d_theta = kappa * fchi * z_i
    d_yhat = float(fm.E @ s.eta_hat + a1 * s.y_hat + fchi @ s.theta_hat + mu * z_i)
    return ObserverState(d_eta, d_chi, d_theta, d_yhat)


def centralized_observer_derivative(theta_hat, y_hat: float, eta, chi,
                                    fm: FilterMatrices, a1: float, kappa: float,
                                    mu: float, y_leader: float):
    """Single-agent reference observer driven by the measured leader output.

    Unlike the distributed form, the filters eta/chi are driven by the true
    output and the innovation is y_leader - y_hat.  Requires mu > ||A||/4
    (spectral norm) for its guarantee.  Returns (d_theta_hat, d_y_hat).
    """
    theta_hat = np.asarray(theta_hat, dtype=float)
    fchi = fm.F @ np.asarray(chi, dtype=float)
    innov = y_leader - y_hat
    d_theta = kappa * fchi * innov
    d_yhat = float(fm.E @ np.asarray(eta, dtype=float) + a1 * y_leader
                   + fchi @ theta_hat + mu * innov)
    return d_theta, d_yhat


def leader_filtered_derivative(s: LeaderFilteredState, fm: FilterMatrices,
                               y_leader: float) -> LeaderFilteredState:
    """Filtered transformation of the leader signal: eta' = A eta + B y, chi' = A^T chi + E y."""
    return LeaderFilteredState(fm.A @ s.eta + fm.B * y_leader,
                               fm.A.T @ s.chi + fm.E * y_leader)


def leader_filtered_steady_state(fm: FilterMatrices, spec: LeaderSpec,
                                 t: float = 0.0) -> LeaderFilteredState:
    """Periodic steady-state filter response to the sinusoidal leader at time t.

    Superposes the per-frequency phasor responses amp_k * Im[e^(i(w_k t +
    phase_k)) (i w_k I - A)^-1 B] (and the transposed form for chi).  This is
    the state the filters converge to, and the one consistent with the
    leader's exosystem trajectory.
    """
    n = fm.A.shape[0]
    eye = np.eye(n)
    eta = np.zeros(n)
    chi = np.zeros(n)
    for amp, w, ph in zip(spec.amplitudes, spec.frequencies, spec.phases):
        phasor = np.exp(1j * (w * t + ph))
        eta += amp * (phasor * np.linalg.solve(1j * w * eye - fm.A, fm.B)).imag
        chi += amp * (phasor * np.linalg.solve(1j * w * eye - fm.A.T, fm.E)).imag
    return LeaderFilteredState(eta, chi)
