"""Communication topology: follower graph plus leader pinning.

The network is an undirected graph over followers 1..N together with a set of
directed "pin" edges from the (virtual) leader node N+1 into a subset of the
followers.  Deleting the leader's row and column from the Laplacian of that
augmented graph yields the pinning matrix H, which is symmetric positive
definite exactly when every follower can be reached from the leader node.
All edges carry unit weight.
"""

from dataclasses import dataclass, field

import numpy as np


class TopologyError(ValueError):
    """Raised when a topology violates a structural assumption."""


def _normalize_edge(i: int, j: int) -> tuple[int, int]:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Topology:
    """Follower graph and leader pin set, with 1-based follower indices."""

    n_followers: int
    follower_edges: frozenset = field(default_factory=frozenset)
    leader_pins: frozenset = field(default_factory=frozenset)

    @classmethod
    def from_lists(cls, n_followers, edges, pins) -> "Topology":
        """Build from iterables of (i, j) pairs and pinned follower indices."""
        norm = frozenset(_normalize_edge(int(i), int(j)) for i, j in edges)
        return cls(int(n_followers), norm, frozenset(int(p) for p in pins))

    def neighbors(self, i: int) -> set:
        """Follower neighbors of follower i (leader not included)."""
        out = set()
        for a, b in self.follower_edges:
            if a == i:
                out.add(b)
            elif b == i:
                out.add(a)
        return out


def validate_topology(t: Topology):
    """Check all structural assumptions; return None if fine, else a message.

    The checks, in order: positive follower count, well-formed edges (no
    self-loops, indices in 1..N), a nonempty pin set with valid indices, and
    reachability of every follower from the leader node through the pinned
    followers and the undirected follower edges.
    """
    n = t.n_followers
    if n < 1:
        return f"n_followers must be >= 1, got {n}"
    for i, j in t.follower_edges:
        if i == j:
            return f"self-loop on follower {i}"
        if not (1 <= i <= n and 1 <= j <= n):
            return f"edge ({i},{j}) references a follower outside 1..{n}"
    if not t.leader_pins:
        return "leader pin set is empty (no follower receives the leader signal)"
    for p in t.leader_pins:
        if not (1 <= p <= n):
            return f"pin {p} references a follower outside 1..{n}"
    # BFS from the pinned followers across undirected follower edges.
    seen = set(t.leader_pins)
    frontier = list(t.leader_pins)
    while frontier:
        i = frontier.pop()
        for j in t.neighbors(i):
            if j not in seen:
                seen.add(j)
                frontier.append(j)
    for i in range(1, n + 1):
        if i not in seen:
            return f"follower {i} unreachable from the leader"
    return None


def build_H(t: Topology) -> np.ndarray:
    """Pinning matrix: H[i][i] = degree(i) + pinned(i), H[i][j] = -1 on edges."""
    msg = validate_topology(t)
    if msg is not None:
        raise TopologyError(msg)
    n = t.n_followers
    H = np.zeros((n, n))
    for i, j in t.follower_edges:
        H[i - 1, j - 1] = -1.0
        H[j - 1, i - 1] = -1.0
        H[i - 1, i - 1] += 1.0
        H[j - 1, j - 1] += 1.0
    for p in t.leader_pins:
        H[p - 1, p - 1] += 1.0
    return H


def smallest_eigenvalue(H: np.ndarray) -> float:
    """Smallest eigenvalue of a symmetric matrix (symmetric QR solver)."""
    H = np.asarray(H, dtype=float)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {H.shape}")
    if not np.allclose(H, H.T, rtol=0.0, atol=1e-12 * max(1.0, np.abs(H).max())):
        raise ValueError("matrix is not symmetric")
    return float(np.linalg.eigvalsh(H)[0])


@dataclass(frozen=True)
class PinningMatrix:
    """H together with its smallest eigenvalue."""

    H: np.ndarray
    lambda1: float


def pinning_matrix(t: Topology) -> PinningMatrix:
    H = build_H(t)
    return PinningMatrix(H=H, lambda1=smallest_eigenvalue(H))
