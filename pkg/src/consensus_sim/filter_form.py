"""Per-agent filtered-transformation matrices and all design-bound arithmetic.

Each agent picks a stable filter polynomial lambda^(2l-1) + a_1 lambda^(2l-2)
+ ... + a_(2l-1); from it the companion-style matrices A, B and the constant
selectors E, F produce the adaptive-observer form in which the unknown theta
enters linearly.  The coupling gain mu must dominate a bound built from the
pinning spectrum, the theta bound, and two H-infinity norms per agent.
"""

from dataclasses import dataclass

import numpy as np
from scipy import optimize


class DesignError(ValueError):
    """Raised when a design ingredient violates its stability/bound requirement."""


def is_hurwitz(coeffs) -> bool:
    """Routh-Hurwitz test for a monic polynomial given as [1, c1, ..., cn].

    Returns True iff all roots lie strictly in the open left half-plane.
    A zero (or negative) pivot anywhere in the table, including the marginal
    cases, yields False.
    """
    c = np.asarray(coeffs, dtype=float)
    if c.size == 0:
        raise ValueError("empty coefficient list")
    if c[0] != 1.0:
        raise ValueError("polynomial must be monic (leading coefficient 1)")
    if c.size < 2:
        raise ValueError("degree must be >= 1")
    width = (c.size + 1) // 2
    row0 = np.zeros(width)
    row1 = np.zeros(width)
    row0[: c[0::2].size] = c[0::2]
    row1[: c[1::2].size] = c[1::2]
    for _ in range(c.size - 2):
        if row1[0] <= 0.0:
            return False
        nxt = np.zeros(width)
        nxt[:-1] = row0[1:] - (row0[0] / row1[0]) * row1[1:]
        row0, row1 = row1, nxt
    return row1[0] > 0.0


def build_E(l: int) -> np.ndarray:
    E = np.zeros(2 * l - 1)
    E[0] = 1.0
    return E


def build_F(l: int) -> np.ndarray:
    """Block-diagonal of (l-1) copies of [-1, 0] followed by a scalar -1."""
    F = np.zeros((l, 2 * l - 1))
    for k in range(l - 1):
        F[k, 2 * k] = -1.0
    F[l - 1, 2 * l - 2] = -1.0
    return F


@dataclass(frozen=True)
class FilterMatrices:
    """A, B, E, F for one agent, plus the filter vector they came from."""

    a: np.ndarray
    A: np.ndarray
    B: np.ndarray
    E: np.ndarray
    F: np.ndarray
    l: int

    @property
    def a1(self) -> float:
        return float(self.a[0])


def build_filter_matrices(a, l: int) -> FilterMatrices:
    """Companion-style filter matrices from the coefficient vector a.

    A has -a in its first column and a shifted identity to the right; B is
    col(a_2 - a_1 a_1, ..., a_(2l-1) - a_(2l-2) a_1, -a_(2l-1) a_1).
    """
    a = np.asarray(a, dtype=float)
    n = 2 * l - 1
    if a.shape != (n,):
        raise DesignError(f"filter vector must have length 2l-1={n}, got {a.shape}")
    if not is_hurwitz(np.concatenate(([1.0], a))):
        raise DesignError(f"filter polynomial with coefficients {a.tolist()} is not Hurwitz")
    A = np.zeros((n, n))
    A[:, 0] = -a
    A[:-1, 1:] = np.eye(n - 1)
    B = np.empty(n)
    B[:-1] = a[1:] - a[:-1] * a[0]
    B[-1] = -a[-1] * a[0]
    return FilterMatrices(a=a, A=A, B=B, E=build_E(l), F=build_F(l), l=l)


def _gain_at(A: np.ndarray, b: np.ndarray, C: np.ndarray, w: float) -> float:
    n = A.shape[0]
    x = np.linalg.solve(1j * w * np.eye(n) - A, b.astype(complex))
    return float(np.linalg.norm(C @ x))


def hinf_norm(A, input_vec, output_map, n_sweep: int = 2000,
              w_lo: float = 1e-3, w_hi: float = 1e4, rel_tol: float = 1e-5) -> float:
    """Peak gain over frequency of output_map (s I - A)^-1 input_vec.

    Log-spaced sweep over [w_lo, w_hi] followed by golden-section refinement
    around the grid peak; the DC gain (w = 0) is always included as a
    candidate.  A must be Hurwitz, otherwise the norm is unbounded.
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(input_vec, dtype=float)
    C = np.atleast_2d(np.asarray(output_map, dtype=float))
    if np.max(np.linalg.eigvals(A).real) >= 0.0:
        raise ValueError("A is not Hurwitz: peak gain is undefined/unbounded")
    ws = np.logspace(np.log10(w_lo), np.log10(w_hi), n_sweep)
    n = A.shape[0]
    lhs = 1j * ws[:, None, None] * np.eye(n) - A
    X = np.linalg.solve(lhs, np.broadcast_to(b.astype(complex), (ws.size, n))[..., None])
    gains = np.linalg.norm(X[..., 0] @ C.T, axis=1)
    k = int(np.argmax(gains))
    best = float(gains[k])
    if 0 < k < ws.size - 1 and gains[k] > gains[k - 1] and gains[k] > gains[k + 1]:
        try:
            res = optimize.minimize_scalar(
                lambda w: -_gain_at(A, b, C, w),
                bracket=(ws[k - 1], ws[k], ws[k + 1]),
                method="golden", options={"xtol": rel_tol},
            )
            best = max(best, float(-res.fun))
        except ValueError:
            pass
    dc = float(np.linalg.norm(C @ np.linalg.solve(-A, b)))
    return max(best, dc)


def mu_lower_bound(a_bar: float, lam1: float, pi_: float,
                   gamma1_bar: float, gamma2_bar: float) -> float:
    """Right-hand side of the coupling-gain condition that mu must exceed."""
    if lam1 <= 0:
        raise ValueError("lam1 must be positive")
    return (2 * a_bar * lam1 + (1 + pi_) * lam1**2 + gamma1_bar**2 + gamma2_bar**2) / (2 * lam1**2)


@dataclass(frozen=True)
class GainDesign:
    """Shared gains kappa/mu with the per-agent norms backing the mu bound."""

    kappa: float
    mu: float
    gamma1: tuple
    gamma2: tuple
    a_bar: float
    gamma1_bar: float
    gamma2_bar: float
    mu_min: float
    within_guarantee: bool = True


def assemble_gain_design(filters, lam1: float, pi_: float, kappa: float,
                         mu: float = None, mu_margin: float = 1.25,
                         allow_unsafe: bool = False) -> GainDesign:
    """Compute per-agent peak gains, their maxima, and the mu bound.

    If mu is not supplied it is set to mu_margin * mu_min.  A supplied mu at
    or below the bound is an error unless allow_unsafe is set, in which case
    the design is returned flagged as outside the guarantee.
    """
    if kappa <= 0:
        raise DesignError(f"kappa must be positive, got {kappa}")
    g1 = tuple(hinf_norm(fm.A, fm.B, fm.E.reshape(1, -1)) for fm in filters)
    g2 = tuple(hinf_norm(fm.A.T, fm.E, fm.F) for fm in filters)
    a_bar = max(fm.a1 for fm in filters)
    g1_bar, g2_bar = max(g1), max(g2)
    mu_min = mu_lower_bound(a_bar, lam1, pi_, g1_bar, g2_bar)
    within = True
    if mu is None:
        mu = mu_margin * mu_min
    elif mu <= mu_min:
        if not allow_unsafe:
            raise DesignError(f"mu={mu} is below the required bound {mu_min:.4f}")
        within = False
    return GainDesign(kappa=float(kappa), mu=float(mu), gamma1=g1, gamma2=g2,
                      a_bar=a_bar, gamma1_bar=g1_bar, gamma2_bar=g2_bar,
                      mu_min=mu_min, within_guarantee=within)
