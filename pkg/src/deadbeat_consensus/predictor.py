"""Single-agent deadbeat prediction pipeline.

From a finite window of one agent's first-order output the pipeline
identifies the smallest linear recurrence annihilating the s-th order
forward differences (a Hankel-matrix rank scan), splits the resulting
z-domain rational into a polynomial consensus part and a decaying
disagreement part, and returns closed-form evaluators for both.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.special import comb as _comb

from . import polyalg
from .dynamics import PerronSystem, companion_block

__all__ = [
    "MemoryWindow",
    "MinimalPolyPair",
    "ConsensusPrediction",
    "DisagreementPrediction",
    "PredictorConfig",
    "MdcpResult",
    "ShortWindowError",
    "UndetectableDegreeError",
    "AmbiguousDegreeError",
    "DecompositionSingularError",
    "ConditioningWarning",
    "build_hankel",
    "find_minimal_pair",
    "build_phi",
    "fit_decomposition",
    "consensus_item",
    "predict_disagreement",
    "mdcp_run",
    "corollary_oracle",
]


class ShortWindowError(ValueError):
    """The sample window is too short for the requested construction."""

    def __init__(self, message: str, required: int):
        super().__init__(message)
        self.required = required


class UndetectableDegreeError(RuntimeError):
    """The window ran out before the Hankel matrix lost rank."""

    def __init__(self, message: str, required: int):
        super().__init__(message)
        self.required = required


class AmbiguousDegreeError(RuntimeError):
    """The Hankel null space is not one-dimensional at the detected degree."""


class DecompositionSingularError(RuntimeError):
    """p(1) vanishes, so the consensus/disagreement split is singular."""


class ConditioningWarning(UserWarning):
    """Eigenvector matrix of the closed loop is badly conditioned."""


@dataclass(frozen=True)
class MemoryWindow:
    """One agent's stored first-order output samples x(0..T)."""

    agent: int
    samples: np.ndarray
    epsilon: float

    def __post_init__(self):
        object.__setattr__(
            self, "samples", np.asarray(self.samples, dtype=float).ravel()
        )

    def __len__(self) -> int:
        return self.samples.shape[0]


@dataclass(frozen=True)
class MinimalPolyPair:
    """Identified annihilating polynomial q(t) = (t-1)^s p(t) for one agent.

    degree          deg p (the part without the root at 1)
    zeta            monic coefficients of p, ascending, length degree+1
    alpha           monic coefficients of q, ascending, length degree+s+1
    consumed_samples  output samples the rank scan needed (2*degree + s + 1)
    """

    degree: int
    s: int
    zeta: np.ndarray
    alpha: np.ndarray
    consumed_samples: int
    null_space_dim: int = 1
    prev_rank_full: bool = True
    annihilation_residual: float = 0.0

    @property
    def q_degree(self) -> int:
        return self.degree + self.s

    def p_at_one(self) -> float:
        return float(self.zeta.sum())


def _difference_stream(samples: np.ndarray, s: int) -> np.ndarray:
    return np.diff(samples, n=s)


def build_hankel(window: MemoryWindow, k0: int, d_hat: int, s: int) -> np.ndarray:
    """(d_hat+1) x (d_hat+1) Hankel matrix of s-th order forward differences.

    Entry (r, j) is the s-th difference of the sample stream at index
    k0 + j + r, so the last sample touched is k0 + 2*d_hat + s.
    """
    if d_hat < 1:
        raise ValueError("candidate degree must be >= 1")
    if s < 1:
        raise ValueError("state order s must be >= 1")
    required = k0 + 2 * d_hat + s + 1
    if len(window) < required:
        raise ShortWindowError(
            f"window of {len(window)} samples cannot form the degree-{d_hat} "
            f"difference Hankel matrix; {required} samples required",
            required=required,
        )
    d = _difference_stream(window.samples, s)
    idx = k0 + np.arange(d_hat + 1)
    return d[idx[:, None] + idx[None, :]]


def find_minimal_pair(window: MemoryWindow, s: int, rank_tol: float = 1e-8,
                      max_degree: int | None = None, k0: int = 0) -> MinimalPolyPair:
    """Scan candidate degrees until the difference Hankel matrix loses rank.

    The null direction of the first rank-deficient matrix gives the
    coefficients of p (rescaled monic); convolving with the binomial
    expansion of (t-1)^s yields q.  A window whose s-th differences vanish
    identically is the degenerate case p = 1 (degree 0).

    Raises UndetectableDegreeError when the window (or ``max_degree``) is
    exhausted before a rank drop, and AmbiguousDegreeError when more than one
    null direction appears at once.
    """
    x = window.samples
    if len(window) < s + 3:
        raise ShortWindowError(
            f"window needs at least {s + 3} samples, got {len(window)}",
            required=s + 3,
        )
    scale = max(1.0, float(np.max(np.abs(x))))
    d = _difference_stream(x, s)
    binom_s = np.array(
        [(-1) ** (s - h) * math.comb(s, h) for h in range(s + 1)], dtype=float
    )

    if np.max(np.abs(d)) <= 1e-12 * scale:
        zeta = np.array([1.0])
        pair = MinimalPolyPair(
            degree=0, s=s, zeta=zeta, alpha=binom_s.copy(),
            consumed_samples=s + 1,
            annihilation_residual=_annihilation_residual(x, binom_s),
        )
        return pair

    d_hat = 1
    prev_full = True
    while True:
        required = k0 + 2 * d_hat + s + 1
        if len(window) < required:
            raise UndetectableDegreeError(
                f"no rank drop up to candidate degree {d_hat - 1}; "
                f"{required} samples would be needed to test degree {d_hat}",
                required=required,
            )
        if max_degree is not None and d_hat > max_degree:
            raise UndetectableDegreeError(
                f"no rank drop up to the degree cap {max_degree}",
                required=required,
            )
        gamma = build_hankel(window, k0, d_hat, s)
        sv = np.linalg.svd(gamma, compute_uv=False)
        rank = int(np.sum(sv > rank_tol * sv[0]))
        if rank < d_hat + 1:
            break
        prev_full = True
        d_hat += 1

    null_dim = d_hat + 1 - rank
    if null_dim > 1:
        raise AmbiguousDegreeError(
            f"null space at detected degree {d_hat} has dimension {null_dim}"
        )
    # Re-check minimality explicitly rather than trusting the loop path.
    if d_hat > 1:
        prev = build_hankel(window, k0, d_hat - 1, s)
        psv = np.linalg.svd(prev, compute_uv=False)
        prev_full = bool(np.sum(psv > rank_tol * psv[0]) == d_hat)
    else:
        prev_full = bool(abs(d[k0]) > 0)

    _, _, vh = np.linalg.svd(gamma)
    zeta = vh[-1]
    if abs(zeta[-1]) < 1e-6 * np.max(np.abs(zeta)):
        raise AmbiguousDegreeError(
            "null direction has a vanishing leading coefficient; "
            "the detected degree is not trustworthy"
        )
    zeta = zeta / zeta[-1]
    alpha = npoly.polymul(zeta, binom_s)
    return MinimalPolyPair(
        degree=d_hat, s=s, zeta=zeta, alpha=alpha,
        consumed_samples=2 * d_hat + s + 1,
        null_space_dim=int(null_dim),
        prev_rank_full=prev_full,
        annihilation_residual=_annihilation_residual(x, alpha),
    )


def _annihilation_residual(x: np.ndarray, alpha: np.ndarray) -> float:
    """max_k |sum_j alpha_j x(k+j)| over every in-window start k."""
    width = len(alpha)
    if len(x) < width:
        return 0.0
    windows = np.lib.stride_tricks.sliding_window_view(x, width)
    return float(np.max(np.abs(windows @ alpha)))


def build_phi(pair: MinimalPolyPair, window: MemoryWindow) -> np.ndarray:
    """Numerator polynomial of the windowed z-transform.

    With q's coefficients alpha and output samples x, the transform of the
    stream is z*phi(z) / ((z-1)^s p(z)) where
    phi_j = sum_{h} alpha_{h+j+1} x(h), a polynomial of degree deg(q) - 1.
    """
    di = pair.q_degree - 1
    if len(window) < di + 2:
        raise ShortWindowError(
            f"numerator construction needs samples 0..{di + 1}; "
            f"window has {len(window)}",
            required=di + 2,
        )
    x = window.samples
    alpha = pair.alpha
    phi = np.empty(di + 1)
    for j in range(di + 1):
        phi[j] = alpha[j + 1 :] @ x[: di + 1 - j]
    return phi


def fit_decomposition(phi: np.ndarray, pair: MinimalPolyPair, s: int,
                      p_one_tol: float = 1e-6):
    """Split phi into p(z) * (low part) + (high part) in powers of (z - 1).

    Shifts both polynomials to the (z-1) basis and solves the resulting
    lower-triangular system for beta_0..beta_{s-1}; the remaining (z-1)-basis
    coefficients of phi - p * low are beta_s..beta_{D}.  Requires p(1) != 0.
    """
    p_one = pair.p_at_one()
    if abs(p_one) <= p_one_tol:
        raise DecompositionSingularError(
            f"|p(1)| = {abs(p_one):.3g} is too small for the split"
        )
    di = pair.q_degree - 1
    phi = np.asarray(phi, dtype=float)
    if phi.shape[0] != di + 1:
        raise ValueError(f"phi must have {di + 1} coefficients, got {phi.shape[0]}")
    phi_u = polyalg.taylor_shift(phi, 1.0)
    p_u = polyalg.taylor_shift(pair.zeta, 1.0)

    beta_low = np.zeros(s)
    for t in range(s):
        acc = phi_u[t]
        for j in range(t):
            if t - j < len(p_u):
                acc -= p_u[t - j] * beta_low[j]
        beta_low[t] = acc / p_u[0]

    rem = phi_u - npoly.polymul(p_u, beta_low)[: di + 1]
    beta_high = rem[s:].copy()
    return beta_low, beta_high


@dataclass(frozen=True)
class ConsensusPrediction:
    """Per-order polynomials in the step index k for the agreed trajectory.

    Order l has degree s - l; successive orders satisfy the forward
    difference identity f_{l+1}(k) = (f_l(k+1) - f_l(k)) / epsilon.
    """

    polys: tuple
    epsilon: float

    @property
    def s(self) -> int:
        return len(self.polys)

    def coefficients(self, order: int = 1) -> np.ndarray:
        return np.asarray(self.polys[order - 1])

    def evaluate(self, k, order: int = 1):
        return npoly.polyval(np.asarray(k, dtype=float), self.polys[order - 1])

    def to_dict(self) -> dict:
        return {str(l + 1): [float(c) for c in poly]
                for l, poly in enumerate(self.polys)}


def _difference_poly(coeffs: np.ndarray, epsilon: float) -> np.ndarray:
    shifted = polyalg.taylor_shift(np.asarray(coeffs, dtype=float), 1.0)
    diff = (shifted - coeffs) / epsilon
    return diff[:-1] if len(diff) > 1 else np.array([0.0])


def consensus_item(beta_low: np.ndarray, s: int, epsilon: float) -> ConsensusPrediction:
    """Deadbeat consensus polynomials from the low split coefficients.

    The binomial-basis coefficients are b_r = beta_{s-1-r}; converting to
    ordinary powers of k gives the first-order polynomial, and higher orders
    follow by symbolic forward differencing.
    """
    beta_low = np.asarray(beta_low, dtype=float)
    if beta_low.shape[0] != s:
        raise ValueError(f"expected {s} low coefficients, got {beta_low.shape[0]}")
    b = beta_low[::-1]
    polys = [polyalg.falling_to_monomial(b)]
    for _ in range(1, s):
        polys.append(_difference_poly(polys[-1], epsilon))
    return ConsensusPrediction(polys=tuple(polys), epsilon=float(epsilon))


@dataclass(frozen=True)
class DisagreementPrediction:
    """Closed-form modal evaluator for one agent's decaying deviation.

    Terms follow the inverse transform of the expansion: impulses from poles
    at zero, geometric terms from simple real poles, damped cosines from
    conjugate pairs, and binomial-times-geometric terms from repeated poles.
    """

    expansion: polyalg.PartialFractionExpansion
    epsilon: float
    s: int

    def evaluate_complex(self, k) -> np.ndarray:
        k = np.atleast_1d(np.asarray(k))
        if np.any(k < 0):
            raise ValueError("prediction is defined for k >= 0")
        kf = k.astype(float)
        total = np.zeros(k.shape, dtype=complex)
        pfe = self.expansion
        if pfe.impulse_coeff != 0.0:
            total += pfe.impulse_coeff * (k == 0)
        for lam, kcoef in pfe.simple_real:
            total += kcoef * np.power(float(lam), kf)
        for mod, ang, kmag, kph in pfe.conjugate_pairs:
            total += 2.0 * kmag * np.power(mod, kf) * np.cos(ang * kf + kph)
        for lam, mult, ks in pfe.repeated:
            lam = complex(lam)
            for h_i, kcoef in enumerate(ks, start=1):
                m = h_i - 1
                valid = k >= m
                term = np.zeros(k.shape, dtype=complex)
                exponents = np.where(valid, k - m, 0)
                powers = np.power(lam, exponents.astype(float))
                term[valid] = (
                    complex(kcoef) * _comb(kf[valid], m) * powers[valid]
                )
                total += term
        return total

    def evaluate(self, k, order: int = 1):
        """Order-l disagreement at step(s) k via forward differencing."""
        if not 1 <= order <= self.s:
            raise ValueError(f"order must be in 1..{self.s}")
        k = np.atleast_1d(np.asarray(k, dtype=int))
        acc = np.zeros(k.shape, dtype=complex)
        m = order - 1
        for t in range(m + 1):
            acc += (-1) ** (m - t) * math.comb(m, t) * self.evaluate_complex(k + t)
        out = (acc / self.epsilon**m).real
        return out if out.shape != (1,) else float(out[0])

    def is_decaying(self, tol: float = 1e-9) -> bool:
        """True when every pole off zero lies strictly inside the unit circle."""
        for lam, power, _ in self.expansion.terms():
            if abs(lam) > 1e-12 and abs(lam) >= 1.0 - tol:
                return False
        return True

    def to_dict(self) -> dict:
        return self.expansion.to_dict()


def predict_disagreement(beta_high: np.ndarray, pair: MinimalPolyPair, s: int,
                         epsilon: float = 1.0,
                         cluster_tol: float = 1e-6, real_snap_tol: float = 1e-8,
                         classify_tol: float = 1e-8) -> DisagreementPrediction:
    """Modal decomposition of the decaying part of the agent's output.

    The disagreement transform is z * B(z) / p(z) with B the high split part
    re-expanded around the origin.  Dividing by z and expanding over the
    roots of z * p(z) keeps one structural pole at zero; near-zero roots of p
    are merged into that group, and the whole group inverts to a finite train
    of shifted impulses.
    """
    beta_high = np.asarray(beta_high, dtype=float)
    expected = pair.degree
    if beta_high.shape[0] != expected:
        raise ValueError(
            f"expected {expected} high coefficients for degree {pair.degree}, "
            f"got {beta_high.shape[0]}"
        )
    if beta_high.size == 0 or not np.any(beta_high):
        return DisagreementPrediction(
            expansion=polyalg.PartialFractionExpansion(), epsilon=epsilon, s=s
        )
    num_z = polyalg.taylor_shift(beta_high, -1.0)  # (z-1)-basis -> monomial
    num = np.concatenate([[0.0], num_z])  # multiply by z
    raw_roots = np.roots(polyalg.trim(pair.zeta)[::-1]) if pair.degree >= 1 else []
    groups = polyalg.cluster_roots(
        raw_roots, cluster_tol=cluster_tol, real_snap_tol=real_snap_tol, seeds=[0.0]
    )
    pfe = polyalg.partial_fractions(num, groups, classify_tol=classify_tol)
    return DisagreementPrediction(expansion=pfe, epsilon=epsilon, s=s)


@dataclass(frozen=True)
class PredictorConfig:
    rank_tol: float = 1e-8
    cluster_tol: float = 1e-6
    real_snap_tol: float = 1e-8
    classify_tol: float = 1e-8
    max_degree: int | None = None


@dataclass(frozen=True)
class MdcpResult:
    consensus: ConsensusPrediction
    disagreement: DisagreementPrediction
    pair: MinimalPolyPair
    beta_low: np.ndarray
    beta_high: np.ndarray

    def predicted_output(self, k, order: int = 1):
        """Consensus plus disagreement: the deadbeat reconstruction of x."""
        return self.consensus.evaluate(k, order) + self.disagreement.evaluate(k, order)

    def to_dict(self) -> dict:
        return {
            "consensus": self.consensus.to_dict(),
            "disagreement": self.disagreement.to_dict(),
            "degree": self.pair.degree,
            "consumed_samples": self.pair.consumed_samples,
        }


def _stage(name: str):
    class _Tag:
        def __enter__(self):
            return self

        def __exit__(self, exc_type, exc, tb):
            if exc is not None and isinstance(exc, Exception):
                exc.args = (f"[stage: {name}] {exc}",) + exc.args[1:]
            return False

    return _Tag()


def mdcp_run(window: MemoryWindow, s: int,
             config: PredictorConfig = PredictorConfig()) -> MdcpResult:
    """Full prediction pipeline on one agent's output window.

    Runs degree detection, numerator construction, the z-domain split, the
    consensus-item conversion and the disagreement inversion, in that order.
    Errors from any step propagate with the failing stage prepended.
    """
    with _stage("degree-detection"):
        pair = find_minimal_pair(
            window, s, rank_tol=config.rank_tol, max_degree=config.max_degree
        )
    with _stage("transform-numerator"):
        phi = build_phi(pair, window)
    with _stage("decomposition-fit"):
        beta_low, beta_high = fit_decomposition(phi, pair, s)
    with _stage("consensus-item"):
        consensus = consensus_item(beta_low, s, window.epsilon)
    with _stage("disagreement-prediction"):
        disagreement = predict_disagreement(
            beta_high, pair, s, epsilon=window.epsilon,
            cluster_tol=config.cluster_tol,
            real_snap_tol=config.real_snap_tol,
            classify_tol=config.classify_tol,
        )
    return MdcpResult(
        consensus=consensus, disagreement=disagreement, pair=pair,
        beta_low=beta_low, beta_high=beta_high,
    )


def corollary_oracle(system: PerronSystem, x0, zero_tol: float = 1e-9,
                     cond_threshold: float = 1e8) -> ConsensusPrediction:
    """Independent consensus polynomials from the eigenstructure of W.

    The closed loop inherits its eigenvectors from the Laplacian: each
    eigenpair (lam, u) of L and eigenpair (mu, v) of the attached s x s
    companion block give the eigenvector kron(v, u) of W.  The eigenvalue-1
    Jordan chain (from lam = 0) is known in closed form: chain vector r has
    block r equal to eps^(1-r) * 1_n.  Projecting X(0) onto the chain's dual
    rows yields binomial-basis coefficients for every order.  Warns when the
    assembled eigenvector matrix is badly conditioned.
    """
    s, n = system.s, system.n
    x0 = np.asarray(x0, dtype=float).ravel()
    lap = system.backbone.laplacian
    lam_all, u_all = np.linalg.eig(lap.astype(complex))
    scale = max(1.0, float(np.max(np.abs(lap)))) if lap.size else 1.0
    zero_idx = int(np.argmin(np.abs(lam_all)))
    if abs(lam_all[zero_idx]) > zero_tol * scale:
        raise ValueError(
            "no zero Laplacian eigenvalue found; the graph seems to lack a "
            "spanning tree"
        )
    smat = np.zeros((s * n, s * n), dtype=complex)
    for r in range(1, s + 1):
        smat[(r - 1) * n : r * n, r - 1] = system.epsilon ** (1 - r)
    col = s
    for i in range(n):
        if i == zero_idx:
            continue
        mus, vecs = np.linalg.eig(companion_block(system, lam_all[i]))
        for j in range(s):
            smat[:, col] = np.kron(vecs[:, j], u_all[:, i])
            col += 1
    cond = np.linalg.cond(smat)
    if cond > cond_threshold:
        warnings.warn(
            f"eigenvector matrix condition number {cond:.3g} exceeds "
            f"{cond_threshold:.1g}; oracle output may be inaccurate",
            ConditioningWarning,
        )
    coeffs = np.linalg.solve(smat, x0.astype(complex))
    kvec = coeffs[:s]
    if np.max(np.abs(kvec.imag)) > 1e-8 * max(1.0, np.max(np.abs(kvec.real))):
        warnings.warn(
            "eigenvalue-1 projection has a nontrivial imaginary part",
            ConditioningWarning,
        )
    kvec = kvec.real
    polys = []
    for l in range(1, s + 1):
        poly = polyalg.falling_to_monomial(kvec[l - 1 :])
        polys.append(system.epsilon ** (1 - l) * poly)
    return ConsensusPrediction(polys=tuple(polys), epsilon=system.epsilon)
