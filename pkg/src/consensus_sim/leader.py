"""The uncertain leader signal and its exact ground-truth quantities.

The leader output is a sum of l sinusoids.  It can equivalently be produced
by a marginally stable linear exosystem of dimension 2l whose system matrix
g(theta) is parameterized by theta, the vector of elementary symmetric
functions of the squared frequencies.  Everything here is computed
analytically (no integration), so these functions double as drift-free
ground truth for error metrics.
"""

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class LeaderSpec:
    """Amplitudes, frequencies (rad/s), phases (rad) and the known frequency bound.

    Frequencies must be positive and no larger than omega_bar.  Repeated
    frequencies or zero amplitudes are allowed (they make the signal
    insufficiently rich); use richness_issues() to detect them.
    """

    amplitudes: tuple
    frequencies: tuple
    phases: tuple
    omega_bar: float

    def __post_init__(self):
        amp = tuple(float(v) for v in self.amplitudes)
        frq = tuple(float(v) for v in self.frequencies)
        phs = tuple(float(v) for v in self.phases)
        object.__setattr__(self, "amplitudes", amp)
        object.__setattr__(self, "frequencies", frq)
        object.__setattr__(self, "phases", phs)
        object.__setattr__(self, "omega_bar", float(self.omega_bar))
        if not (len(amp) == len(frq) == len(phs)) or len(amp) == 0:
            raise ValueError("amplitudes, frequencies and phases must have equal nonzero length")
        if self.omega_bar <= 0:
            raise ValueError("omega_bar must be positive")
        for w in frq:
            if w <= 0:
                raise ValueError(f"frequencies must be positive, got {w}")
            if w > self.omega_bar:
                raise ValueError(f"frequency {w} exceeds omega_bar={self.omega_bar}")

    @property
    def l(self) -> int:
        return len(self.frequencies)


def richness_issues(spec: LeaderSpec) -> list:
    """Conditions under which the signal is not sufficiently rich of order 2l."""
    issues = []
    for k, a in enumerate(spec.amplitudes):
        if a == 0.0:
            issues.append(f"amplitude {k + 1} is zero")
    freqs = sorted(spec.frequencies)
    for a, b in zip(freqs, freqs[1:]):
        if abs(a - b) <= 1e-12 * max(1.0, abs(b)):
            issues.append(f"repeated frequency {b}")
    return issues


def leader_output(t, spec: LeaderSpec):
    """y(t) = sum_k amp_k * sin(w_k t + phase_k); t may be scalar or array."""
    return leader_output_derivative(t, spec, 0)


def leader_output_derivative(t, spec: LeaderSpec, order: int):
    """Exact derivative of any order via the quarter-period phase shift."""
    if order < 0:
        raise ValueError("order must be >= 0")
    t = np.asarray(t, dtype=float)
    y = np.zeros_like(t)
    for amp, w, ph in zip(spec.amplitudes, spec.frequencies, spec.phases):
        y = y + amp * w**order * np.sin(w * t + ph + order * (np.pi / 2))
    return float(y) if y.ndim == 0 else y


def theta_from_omegas(omegas) -> np.ndarray:
    """Elementary symmetric functions of the squared frequencies.

    theta_k is the coefficient of z^(l-k) in prod_k (z + w_k^2), so the
    exosystem's characteristic polynomial is s^(2l) + theta_1 s^(2l-2) + ...
    + theta_l.
    """
    omegas = np.asarray(omegas, dtype=float)
    if np.any(omegas <= 0):
        raise ValueError("all frequencies must be positive")
    poly = np.array([1.0])
    for w in omegas:
        poly = np.convolve(poly, [1.0, w**2])
    return poly[1:]


def omegas_from_theta(theta, imag_tol: float = 1e-6) -> np.ndarray:
    """Recover frequency estimates from a (possibly imperfect) theta estimate.

    Finds the roots z_k of z^l + theta_1 z^(l-1) + ... + theta_l.  A root
    maps to sqrt(-Re z) when -Re z >= 0 and the imaginary part is within
    imag_tol * (1 + |z|); anything else (complex or positive-real root)
    is clamped to 0.  Result is sorted in descending order.
    """
    theta = np.asarray(theta, dtype=float)
    roots = np.roots(np.concatenate(([1.0], theta)))
    out = np.zeros(theta.size)
    for k, z in enumerate(roots):
        if -z.real >= 0.0 and abs(z.imag) <= imag_tol * (1.0 + abs(z)):
            out[k] = math.sqrt(-z.real)
    return np.sort(out)[::-1]


def build_M_C_E2k(l: int):
    """Canonical exosystem ingredients: shift matrix M, selector C, unit vectors E_2k.

    M is the 2l x 2l upper-shift matrix, C picks the first state, and E_2k
    (returned stacked as an (l, 2l) array, row k-1 being E_2k) has a single
    one at index 2k.
    """
    if l < 1:
        raise ValueError("l must be >= 1")
    m = 2 * l
    M = np.zeros((m, m))
    M[:-1, 1:] = np.eye(m - 1)
    C = np.zeros(m)
    C[0] = 1.0
    E2k = np.zeros((l, m))
    for k in range(1, l + 1):
        E2k[k - 1, 2 * k - 1] = 1.0
    return M, C, E2k


def build_g(theta) -> np.ndarray:
    """Exosystem matrix: ones on the superdiagonal, -theta_k at rows 2k of column 1."""
    theta = np.asarray(theta, dtype=float)
    l = theta.size
    M, C, E2k = build_M_C_E2k(l)
    g = M.copy()
    for k in range(l):
        g[2 * k + 1, 0] -= theta[k]
    return g


def apply_g(theta, w) -> np.ndarray:
    """Matrix-vector product g(theta) @ w without forming g."""
    theta = np.asarray(theta, dtype=float)
    w = np.asarray(w, dtype=float)
    out = np.zeros_like(w)
    out[:-1] = w[1:]
    out[1::2] -= theta * w[0]
    return out


def pi_bound(omega_bar: float, l: int) -> float:
    """Upper bound on ||theta||^2 given only the frequency bound."""
    if omega_bar <= 0:
        raise ValueError("omega_bar must be positive")
    return float(sum(math.comb(l, k) ** 2 * omega_bar ** (4 * k) for k in range(1, l + 1)))


def _virtual_state_coeffs(theta: np.ndarray) -> np.ndarray:
    # coeffs[m, d]: contribution of y^(d) to state component m+1.  Row m+1 is
    # the derivative of row m, plus theta_{m/2} * y on the even rows.
    l = theta.size
    m = 2 * l
    coeffs = np.zeros((m, m + 1))
    coeffs[0, 0] = 1.0
    for row in range(1, m):
        coeffs[row, 1:] = coeffs[row - 1, :-1]
        if row % 2 == 0:
            coeffs[row, 0] += theta[row // 2 - 1]
    return coeffs


def virtual_state(t, spec: LeaderSpec) -> np.ndarray:
    """Exact exosystem state v(t) realizing the leader output (v_1 = y).

    Built from the recurrence v_(m+1) = d/dt v_m (+ theta_(m/2) y on even m),
    evaluated with analytic output derivatives.  For scalar t the result has
    shape (2l,); for an array of times, shape (2l, len(t)).
    """
    theta = theta_from_omegas(spec.frequencies)
    coeffs = _virtual_state_coeffs(theta)
    t = np.asarray(t, dtype=float)
    derivs = np.stack([leader_output_derivative(t, spec, d) for d in range(2 * spec.l + 1)])
    return coeffs @ derivs
