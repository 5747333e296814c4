"""Exact-rational identification path for ill-conditioned systems.

Systems whose closed loop carries eigenvalue clusters near 1 produce
annihilating pairs with p(1) close to zero; in float64 both the Hankel rank
scan and the z-domain split then lose all significant digits.  When the
system data is rational (decimal inputs, rational sampling time) the whole
identification chain can instead run over ``fractions.Fraction``: exact
simulation, exact rank decisions, exact null vector, exact split.  Only the
final modal inversion needs real arithmetic, with pole locations polished by
Newton steps evaluated on the exact polynomial.

Outputs are ordinary float-based predictor objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import polyalg
from .predictor import (
    ConsensusPrediction,
    DisagreementPrediction,
    MinimalPolyPair,
    UndetectableDegreeError,
    consensus_item,
)

__all__ = ["ExactPipelineResult", "exact_propagate", "exact_find_minimal_pair",
           "exact_pipeline"]


def to_fraction(value) -> Fraction:
    """Exact rational from int, Fraction, or decimal string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(
        f"refusing to coerce {type(value).__name__} to an exact rational; "
        "pass a string, int or Fraction"
    )


def exact_propagate(w_rows, x0, steps: int, observe: int = 0) -> list:
    """Iterate the closed loop over Fractions; returns one entry's samples."""
    x = list(x0)
    out = [x[observe]]
    m = len(x)
    for _ in range(steps):
        x = [sum(w_rows[i][j] * x[j] for j in range(m)) for i in range(m)]
        out.append(x[observe])
    return out


def _rank_and_null(mat):
    """Gauss-Jordan over Fractions; returns (rank, last-free-column null vector)."""
    m = [row[:] for row in mat]
    rows, cols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((rr for rr in range(r, rows) if m[rr][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c]
        m[r] = [v / inv for v in m[r]]
        for rr in range(rows):
            if rr != r and m[rr][c] != 0:
                f = m[rr][c]
                m[rr] = [a - f * b for a, b in zip(m[rr], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    if r == cols:
        return r, None
    free = [c for c in range(cols) if c not in pivots][-1]
    v = [Fraction(0)] * cols
    v[free] = Fraction(1)
    for ri, pc in enumerate(pivots):
        v[pc] = -m[ri][free]
    return r, v


def _binomial_alternating(s: int) -> list:
    out = []
    c = 1
    for h in range(s + 1):
        out.append(Fraction((-1) ** (s - h) * c))
        c = c * (s - h) // (h + 1)
    return out


def exact_find_minimal_pair(samples: list, s: int) -> tuple:
    """Exact-rank degree scan; returns (degree, zeta, alpha) over Fractions."""
    d = list(samples)
    for _ in range(s):
        d = [d[k + 1] - d[k] for k in range(len(d) - 1)]
    if all(v == 0 for v in d):
        return 0, [Fraction(1)], _binomial_alternating(s)
    d_hat = 1
    while True:
        if 2 * d_hat + 1 > len(d):
            raise UndetectableDegreeError(
                f"no exact rank drop with {len(samples)} samples "
                f"(candidate degree {d_hat})",
                required=2 * d_hat + s + 1,
            )
        g = [[d[r + j] for j in range(d_hat + 1)] for r in range(d_hat + 1)]
        rank, null = _rank_and_null(g)
        if rank < d_hat + 1:
            break
        d_hat += 1
    zeta = [c / null[-1] for c in null]
    binom = _binomial_alternating(s)
    alpha = [Fraction(0)] * (d_hat + s + 1)
    for i, zi in enumerate(zeta):
        for h, bh in enumerate(binom):
            alpha[i + h] += zi * bh
    return d_hat, zeta, alpha


def _shift_basis(coeffs: list, center: Fraction) -> list:
    """Exact rebasing of sum(a_j z^j) into powers of (z - center)."""
    a = list(coeffs)
    n = len(a)
    out = [Fraction(0)] * n
    for j in range(n):
        for k in range(n - 2, j - 1, -1):
            a[k] = a[k] + center * a[k + 1]
        out[j] = a[j]
    return out


def _shift_to_one(coeffs: list) -> list:
    return _shift_basis(coeffs, Fraction(1))


def _horner_complex(coeffs: list, re: Fraction, im: Fraction) -> tuple:
    """Evaluate a rational-coefficient polynomial at re + i*im, exactly."""
    acc_re, acc_im = Fraction(0), Fraction(0)
    for c in reversed(coeffs):
        acc_re, acc_im = acc_re * re - acc_im * im + c, acc_re * im + acc_im * re
    return acc_re, acc_im


def _eval_exact(coeffs: list, lam: complex) -> complex:
    re = Fraction(lam.real).limit_denominator(10**18)
    im = Fraction(lam.imag).limit_denominator(10**18)
    v_re, v_im = _horner_complex(coeffs, re, im)
    return complex(float(v_re), float(v_im))


def _aberth_polish(coeffs: list, seeds, iterations: int = 30,
                   tol: float = 1e-14) -> list:
    """Aberth-Ehrlich simultaneous root refinement with exact evaluation.

    Clustered roots put plain Newton seeds into overlapping basins; the
    Aberth correction (Newton step repelled by the other iterates) keeps the
    iterates separated and converges for simple clustered roots.  Polynomial
    values come from exact rational Horner evaluation, so the usual float
    evaluation noise floor does not limit the attainable accuracy.
    """
    deriv = [c * (j + 1) for j, c in enumerate(coeffs[1:])]
    roots = [complex(sd) for sd in seeds]
    m = len(roots)
    for _ in range(iterations):
        moved = 0.0
        new_roots = list(roots)
        for i in range(m):
            lam = roots[i]
            p = _eval_exact(coeffs, lam)
            if p == 0:
                continue
            d = _eval_exact(deriv, lam)
            newton = d / p  # reciprocal Newton step
            repel = sum(1.0 / (lam - roots[j]) for j in range(m)
                        if j != i and roots[j] != lam)
            denom = newton - repel
            if denom == 0:
                continue
            step = 1.0 / denom
            new_roots[i] = lam - step
            moved = max(moved, abs(step))
        roots = new_roots
        if moved < tol:
            break
    return roots


@dataclass(frozen=True)
class ExactPipelineResult:
    pair: MinimalPolyPair
    beta_low: np.ndarray
    beta_high: np.ndarray
    consensus: ConsensusPrediction
    disagreement: DisagreementPrediction
    zeta_exact: list
    beta_exact: list


def exact_pipeline(samples: list, s: int, epsilon) -> ExactPipelineResult:
    """Run identification, split and modal inversion from exact samples.

    ``samples`` are Fractions (or decimal strings); ``epsilon`` likewise.
    The returned prediction objects hold float coefficients and evaluate like
    their float-pipeline counterparts.
    """
    samples = [to_fraction(v) for v in samples]
    eps = to_fraction(epsilon)
    degree, zeta, alpha = exact_find_minimal_pair(samples, s)

    di = degree + s - 1
    if len(samples) < di + 2:
        raise UndetectableDegreeError(
            f"need {di + 2} samples for the numerator, got {len(samples)}",
            required=di + 2,
        )
    phi = [
        sum(alpha[h + j + 1] * samples[h] for h in range(di + 1 - j))
        for j in range(di + 1)
    ]
    phi_u = _shift_to_one(phi)
    p_u = _shift_to_one(zeta)
    if p_u[0] == 0:
        raise ArithmeticError("exact p(1) = 0: the pair still contains a root at 1")
    beta = []
    for t in range(s):
        acc = phi_u[t]
        for j in range(t):
            if t - j < len(p_u):
                acc -= p_u[t - j] * beta[j]
        beta.append(acc / p_u[0])
    rem = list(phi_u)
    for j, bj in enumerate(beta):
        for i, pc in enumerate(p_u):
            if i + j < len(rem):
                rem[i + j] -= bj * pc
    beta_high_exact = rem[s:]

    beta_low = np.array([float(b) for b in beta])
    beta_high = np.array([float(b) for b in beta_high_exact])
    consensus = consensus_item(beta_low, s, float(eps))

    pair = MinimalPolyPair(
        degree=degree, s=s,
        zeta=np.array([float(z) for z in zeta]),
        alpha=np.array([float(a) for a in alpha]),
        consumed_samples=2 * degree + s + 1,
        annihilation_residual=0.0,
    )

    # Modal inversion: polished poles, float residues, standard evaluator.
    if degree == 0 or not np.any(beta_high):
        disagreement = DisagreementPrediction(
            expansion=polyalg.PartialFractionExpansion(), epsilon=float(eps), s=s
        )
    else:
        zeta_f = pair.zeta
        seeds = np.roots(zeta_f[::-1])
        zeta_small = [z.limit_denominator(10**25) for z in zeta]
        roots = _aberth_polish(zeta_small, seeds)
        groups = polyalg.cluster_roots(
            roots, cluster_tol=1e-9, real_snap_tol=1e-12, seeds=[0.0]
        )
        # Exact monomial numerator z * sum beta_high_t (z-1)^t: float Horner
        # would cancel below its own noise at clustered poles.
        num_exact = [Fraction(0)] + _shift_basis(beta_high_exact, Fraction(-1))
        num = np.array([float(c) for c in num_exact])
        pfe = polyalg.partial_fractions(
            num, groups, classify_tol=1e-10,
            numerator_eval=lambda z: _eval_exact(num_exact, z),
        )
        disagreement = DisagreementPrediction(expansion=pfe, epsilon=float(eps), s=s)

    return ExactPipelineResult(
        pair=pair, beta_low=beta_low, beta_high=beta_high,
        consensus=consensus, disagreement=disagreement,
        zeta_exact=zeta, beta_exact=beta,
    )
