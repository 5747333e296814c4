"""Closed-loop system assembly, simulation and disagreement metrics.

States are stacked order-major: X = [X^(1); ...; X^(s)] with X^(l) the
length-n vector of order-l states, so entry (l-1)*n + i is agent i's order-l
state.  One step of the closed loop is X(k) = W X(k-1).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.linalg
import scipy.special

from . import _kernels
from .graph import NetworkBackbone, has_spanning_tree, left_eigenvector


class HorizonTooShortError(RuntimeError):
    """The disagreement still exceeds the threshold at the last simulated step."""


@dataclass(frozen=True)
class PerronSystem:
    """Closed-loop transition matrix with its construction parameters."""

    s: int
    n: int
    epsilon: float
    omega: float
    gains: tuple
    w: np.ndarray
    backbone: NetworkBackbone


@dataclass(frozen=True)
class Trajectory:
    """A simulated state history; row k is X(k)."""

    states: np.ndarray  # (K+1, s*n)
    epsilon: float
    s: int
    n: int

    @property
    def horizon(self) -> int:
        return self.states.shape[0] - 1

    def order_block(self, order: int) -> np.ndarray:
        """All agents' order-l states over time, shape (K+1, n)."""
        if not 1 <= order <= self.s:
            raise ValueError(f"order must be in 1..{self.s}")
        lo = (order - 1) * self.n
        return self.states[:, lo : lo + self.n]

    def agent_series(self, agent: int, order: int = 1) -> np.ndarray:
        """One agent's order-l state sequence (agents indexed from 0)."""
        if not 0 <= agent < self.n:
            raise ValueError(f"agent must be in 0..{self.n - 1}")
        return self.order_block(order)[:, agent]


@dataclass(frozen=True)
class SpectralReport:
    eigenvalues: np.ndarray
    count_at_one: int
    max_modulus_excluding_one: float
    geometric_multiplicity_at_one: int
    assumption_violated: bool

    def to_dict(self) -> dict:
        return {
            "eigenvalues": [[float(v.real), float(v.imag)] for v in self.eigenvalues],
            "count_at_one": self.count_at_one,
            "max_modulus_excluding_one": self.max_modulus_excluding_one,
            "geometric_multiplicity_at_one": self.geometric_multiplicity_at_one,
            "assumption_violated": self.assumption_violated,
        }

    def to_json(self, path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=1))


def build_perron(backbone: NetworkBackbone, s: int, epsilon: float, omega: float,
                 gains) -> PerronSystem:
    """Assemble the closed-loop matrix.

    Block layout: identity diagonal, epsilon*I on the superdiagonal, and the
    feedback row [omega*c_0*L, ..., omega*c_{s-2}*L, I + omega*c_{s-1}*L]
    at the bottom.  Requires epsilon > 0, omega < 0 and positive gains.
    """
    gains = tuple(float(c) for c in gains)
    if s < 1:
        raise ValueError("state order s must be >= 1")
    if len(gains) != s:
        raise ValueError(f"expected {s} gains, got {len(gains)}")
    if epsilon <= 0:
        raise ValueError("sampling time must be positive")
    if omega >= 0:
        raise ValueError("external coupling weight must be negative")
    if any(c <= 0 for c in gains):
        raise ValueError("internal coupling gains must be positive")

    n = backbone.n
    lap = backbone.laplacian
    eye = np.eye(n)
    w = np.zeros((s * n, s * n))
    for block in range(s - 1):
        lo = block * n
        w[lo : lo + n, lo : lo + n] = eye
        w[lo : lo + n, lo + n : lo + 2 * n] = epsilon * eye
    last = (s - 1) * n
    for block in range(s):
        lo = block * n
        w[last : last + n, lo : lo + n] = omega * gains[block] * lap
    w[last : last + n, last : last + n] += eye
    return PerronSystem(
        s=s, n=n, epsilon=float(epsilon), omega=float(omega), gains=gains,
        w=w, backbone=backbone,
    )


def companion_block(system: PerronSystem, lam: complex) -> np.ndarray:
    """The s x s transition block attached to one Laplacian eigenvalue."""
    s = system.s
    block = np.eye(s, dtype=complex)
    block += system.epsilon * np.diag(np.ones(s - 1), 1)
    block[s - 1, :] += system.omega * lam * np.asarray(system.gains)
    return block


def spectral_check(system: PerronSystem, one_tol: float = 1e-7,
                   circle_tol: float = 1e-9, zero_tol: float = 1e-9) -> SpectralReport:
    """Eigenvalue report: multiplicity at 1 and stability of the rest.

    The spectrum factors through the Laplacian: each eigenvalue of L yields
    one s x s companion block of the closed loop.  Computing per block keeps
    the multiple eigenvalue at 1 exact (a zero Laplacian eigenvalue gives a
    triangular block with a ones diagonal), where a direct eigensolve of the
    full defective matrix would scatter it by the usual lambda^(1/s) cloud.

    A report, not an exception: ``assumption_violated`` flags any eigenvalue
    off 1 whose modulus exceeds 1 + circle_tol.
    """
    lap = system.backbone.laplacian
    t_mat = scipy.linalg.schur(lap.astype(complex), output="complex")[0]
    lap_eigs = np.diag(t_mat)
    scale = max(1.0, float(np.max(np.abs(lap)))) if lap.size else 1.0
    eigs = []
    for lam in lap_eigs:
        if abs(lam) <= zero_tol * scale:
            eigs.extend([1.0 + 0.0j] * system.s)
        else:
            eigs.extend(np.linalg.eigvals(companion_block(system, lam)))
    eigs = np.array(eigs)
    at_one = np.abs(eigs - 1.0) <= one_tol
    count = int(at_one.sum())
    rest = np.abs(eigs[~at_one])
    max_rest = float(rest.max()) if rest.size else 0.0
    rank = np.linalg.matrix_rank(system.w - np.eye(system.w.shape[0]))
    geo = system.w.shape[0] - rank
    return SpectralReport(
        eigenvalues=eigs,
        count_at_one=count,
        max_modulus_excluding_one=max_rest,
        geometric_multiplicity_at_one=int(geo),
        assumption_violated=bool(max_rest > 1.0 + circle_tol),
    )


def simulate(system: PerronSystem, x0, horizon: int) -> Trajectory:
    """Iterate X(k) = W X(k-1) for ``horizon`` steps from X(0) = x0."""
    x0 = np.asarray(x0, dtype=float).ravel()
    if x0.shape[0] != system.s * system.n:
        raise ValueError(
            f"initial state must have length {system.s * system.n}, got {x0.shape[0]}"
        )
    if horizon < 0:
        raise ValueError("horizon must be nonnegative")
    states = _kernels.propagate(system.w, x0, horizon)
    return Trajectory(states=states, epsilon=system.epsilon, s=system.s, n=system.n)


def consensus_vector(backbone: NetworkBackbone, x0, k, epsilon: float, s: int):
    """Exact consensus values at step(s) k from the full initial state.

    Order l takes the value sum_{j=0}^{s-l} C(k, j) eps^j * p.X^(l+j)(0),
    the projection of X(0) through the left eigenvector p.  The binomial
    factor (not (k eps)^j / j!) is what direct summation of the recurrence
    produces: each integration order accumulates a falling-factorial, and
    the two bases only agree asymptotically.  Returns shape (s,) for scalar
    k, else (len(k), s).
    """
    if not has_spanning_tree(backbone):
        raise ValueError("consensus vector requires a directed spanning tree")
    p = left_eigenvector(backbone).p
    x0 = np.asarray(x0, dtype=float).ravel()
    n = backbone.n
    if x0.shape[0] != s * n:
        raise ValueError(f"initial state must have length {s * n}")
    weights = np.array([p @ x0[(l - 1) * n : l * n] for l in range(1, s + 1)])
    karr = np.atleast_1d(np.asarray(k, dtype=float))
    out = np.zeros((karr.shape[0], s))
    for l in range(1, s + 1):
        for j in range(0, s - l + 1):
            out[:, l - 1] += scipy.special.comb(karr, j) * epsilon**j * weights[l - 1 + j]
    if np.isscalar(k) or np.asarray(k).ndim == 0:
        return out[0]
    return out


def disagreement_series(trajectory: Trajectory, backbone: NetworkBackbone) -> np.ndarray:
    """Per-agent deviation from the consensus values, shape (K+1, s, n)."""
    s, n = trajectory.s, trajectory.n
    ks = np.arange(trajectory.states.shape[0])
    cons = consensus_vector(backbone, trajectory.states[0], ks, trajectory.epsilon, s)
    out = np.empty((trajectory.states.shape[0], s, n))
    for l in range(s):
        out[:, l, :] = trajectory.states[:, l * n : (l + 1) * n] - cons[:, l : l + 1]
    return out


def aggregate_disagreement(disagreement: np.ndarray) -> np.ndarray:
    """Sum of absolute disagreement over agents and orders, per step."""
    return np.abs(disagreement).sum(axis=(1, 2))


def cwlt(disagreement: np.ndarray, sigma: float, epsilon: float,
         horizon: int | None = None) -> float:
    """Consensus-window-launch-time of a disagreement series.

    The launch time is epsilon * (1 + k*) where k* is the last step at which
    the aggregate absolute disagreement still exceeds sigma; 0.0 when the
    threshold is never exceeded.  Raises HorizonTooShortError when the series
    still violates the threshold at its final step, since the launch point is
    then not yet observable.
    """
    if sigma <= 0:
        raise ValueError("threshold sigma must be positive")
    agg = aggregate_disagreement(disagreement)
    if horizon is not None:
        agg = agg[: horizon + 1]
    exceed = np.nonzero(agg > sigma)[0]
    if exceed.size == 0:
        return 0.0
    last = int(exceed[-1])
    if last == len(agg) - 1:
        raise HorizonTooShortError(
            f"aggregate disagreement {agg[-1]:.3g} still exceeds sigma={sigma} "
            f"at the final step k={len(agg) - 1}"
        )
    return epsilon * (1 + last)


def trajectory_to_csv(trajectory: Trajectory, path) -> None:
    """Long-format export with columns k, agent, order, value."""
    lines = ["k,agent,order,value"]
    for k in range(trajectory.states.shape[0]):
        for order in range(1, trajectory.s + 1):
            block = trajectory.order_block(order)
            for agent in range(trajectory.n):
                lines.append(f"{k},{agent},{order},{block[k, agent]!r}")
    Path(path).write_text("\n".join(lines) + "\n")
