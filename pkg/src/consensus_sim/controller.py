"""Tracking controller: regulator functions, exosystem-state estimator, and
the pole-placed correction gain.

The feedforward terms f_s(v, theta) = C g(theta)^(s-1) v solve the tracking
problem for the integrator-chain follower; the local estimate v_hat is
corrected through a Luenberger-style gain L placing the eigenvalues of
M - L C, which is exact here because (M, C) is in observer canonical form.
"""

from dataclasses import dataclass

import mpmath
import numpy as np

from .filter_form import DesignError, is_hurwitz
from .leader import apply_g, build_M_C_E2k


@dataclass(frozen=True)
class ControllerDesign:
    """Error-polynomial coefficients alpha (alpha_(r+1) = 1) and estimator gain L."""

    alpha: np.ndarray
    L: np.ndarray

    def __post_init__(self):
        alpha = np.asarray(self.alpha, dtype=float)
        L = np.asarray(self.L, dtype=float)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "L", L)
        if alpha.size < 2 or alpha[-1] != 1.0:
            raise DesignError("alpha must be (alpha_1..alpha_r, 1) with r >= 1")
        if not is_hurwitz(alpha[::-1]):
            raise DesignError(f"error polynomial with coefficients {alpha.tolist()} is not Hurwitz")
        if L.size % 2 != 0 or L.size == 0:
            raise DesignError("L must have even length 2l")
        if not is_hurwitz(np.concatenate(([1.0], L))):
            raise DesignError(f"M - L C with L={L.tolist()} is not Hurwitz")

    @property
    def r(self) -> int:
        return self.alpha.size - 1

    @property
    def l(self) -> int:
        return self.L.size // 2


def regulator_f(v, theta, s: int) -> float:
    """f_s(v, theta) = C g(theta)^(s-1) v, the s-th regulator function."""
    if s < 1:
        raise ValueError("s must be >= 1")
    w = np.asarray(v, dtype=float)
    for _ in range(s - 1):
        w = apply_g(theta, w)
    return float(w[0])


def regulator_f_stack(v, theta, r: int) -> np.ndarray:
    """col(f_1, ..., f_r): the follower state that tracks the leader exactly."""
    w = np.asarray(v, dtype=float)
    out = np.empty(r)
    out[0] = w[0]
    for s in range(1, r):
        w = apply_g(theta, w)
        out[s] = w[0]
    return out


def design_L(desired_poly) -> np.ndarray:
    """Gain L from a desired monic characteristic polynomial of degree 2l.

    Because (M, C) is canonical, char(M - L C) = s^(2l) + L_1 s^(2l-1) + ...
    + L_(2l), so L is just the non-leading coefficient vector.
    """
    c = np.asarray(desired_poly, dtype=float)
    if c.size < 3 or c.size % 2 == 0:
        raise DesignError("desired polynomial must be monic of even degree 2l >= 2")
    if c[0] != 1.0:
        raise DesignError("desired polynomial must be monic")
    if not is_hurwitz(c):
        raise DesignError(f"desired polynomial {c.tolist()} is not Hurwitz")
    return c[1:].copy()


def closed_loop_eigenvalues(L, dps: int = 60) -> np.ndarray:
    """Eigenvalues of M - L C, computed in high-precision arithmetic.

    With repeated poles the eigenvalue problem is defective and double
    precision can only locate the cluster to ~(machine eps)^(1/(2l)); running
    the QR iteration at `dps` digits brings that error down to negligible.
    """
    L = np.asarray(L, dtype=float)
    l = L.size // 2
    M, C, _ = build_M_C_E2k(l)
    MLC = M - np.outer(L, C)
    with mpmath.workdps(dps):
        ev = mpmath.eig(mpmath.matrix(MLC.tolist()), left=False, right=False)
        return np.array([complex(z) for z in ev])


def vhat_derivative(v_hat, y_hat_i: float, theta_hat_i, cd: ControllerDesign) -> np.ndarray:
    """Estimator update: M v_hat - L (C v_hat - y_hat) - sum_k theta_hat_k E_2k y_hat."""
    v_hat = np.asarray(v_hat, dtype=float)
    theta_hat_i = np.asarray(theta_hat_i, dtype=float)
    dv = np.zeros_like(v_hat)
    dv[:-1] = v_hat[1:]
    dv -= cd.L * (v_hat[0] - y_hat_i)
    dv[1::2] -= theta_hat_i * y_hat_i
    return dv


def control_input(x_i, v_hat_i, theta_hat_i, cd: ControllerDesign) -> float:
    """u_i = sum_{s=1}^{r+1} alpha_s f_s(v_hat, theta_hat) - sum_{s=1}^{r} alpha_s x_s."""
    x_i = np.asarray(x_i, dtype=float)
    w = np.asarray(v_hat_i, dtype=float)
    u = cd.alpha[0] * w[0]
    for s in range(1, cd.r + 1):
        w = apply_g(theta_hat_i, w)
        u += cd.alpha[s] * w[0]
    return float(u - cd.alpha[: cd.r] @ x_i)
