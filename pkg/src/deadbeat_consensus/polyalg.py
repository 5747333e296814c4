"""Polynomial and rational-function helpers.

All polynomials are plain 1-D float/complex arrays of coefficients in
ascending degree, following the ``numpy.polynomial`` convention.  Two bases
appear: the ordinary monomial basis in z, and the shifted basis in powers of
(z - center) produced by :func:`taylor_shift`.

The partial-fraction machinery classifies denominator roots into simple real
poles, conjugate pairs (stored once, via the positive-imaginary member) and
repeated-root groups, which is the shape needed to invert rational
z-transforms term by term.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as npoly

__all__ = [
    "trim",
    "degree",
    "taylor_shift",
    "poly_roots",
    "falling_to_monomial",
    "partial_fractions",
    "PartialFractionExpansion",
]


def trim(coeffs, tol: float = 0.0) -> np.ndarray:
    """Drop trailing (near-)zero coefficients; the zero polynomial becomes [0]."""
    c = np.atleast_1d(np.asarray(coeffs))
    keep = len(c)
    while keep > 1 and abs(c[keep - 1]) <= tol:
        keep -= 1
    return c[:keep].copy()


def degree(coeffs) -> int:
    """Degree of the trimmed polynomial; the zero polynomial has degree 0."""
    return len(trim(coeffs)) - 1


def taylor_shift(coeffs, center: float) -> np.ndarray:
    """Re-express sum(a_j z^j) as sum(b_j (z - center)^j), exactly.

    Implemented by repeated synthetic division of the polynomial by
    (z - center): each pass peels off the next shifted-basis coefficient.
    The inverse operation is taylor_shift(b, -center) applied to the shifted
    coefficients read as an ordinary polynomial in u = z - center.
    """
    a = np.array(coeffs, dtype=np.result_type(np.asarray(coeffs), float))
    n = len(a)
    if center == 0.0 or n == 1:
        return a
    out = np.empty_like(a)
    for j in range(n):
        # One synthetic-division pass: remainder is a(center) of the current
        # quotient, which is exactly the coefficient of (z - center)^j.
        for k in range(n - 2, j - 1, -1):
            a[k] = a[k] + center * a[k + 1]
        out[j] = a[j]
    return out


def poly_roots(coeffs, cluster_tol: float = 1e-6, real_snap_tol: float = 1e-8):
    """All complex roots, merged into multiplicity groups.

    Roots come from the companion-matrix eigensolve (``numpy.roots``).  Roots
    closer than ``cluster_tol`` are merged into one group whose location is
    the cluster mean; roots with |Im| below ``real_snap_tol`` are snapped to
    the real axis.  Returns a list of (root, multiplicity) pairs.

    Raises ValueError for the zero polynomial or a constant.
    """
    c = trim(coeffs)
    if len(c) == 1:
        if c[0] == 0:
            raise ValueError("roots of the zero polynomial are undefined")
        raise ValueError("constant polynomial has no roots")
    raw = np.roots(c[::-1])
    return cluster_roots(raw, cluster_tol=cluster_tol, real_snap_tol=real_snap_tol)


def cluster_roots(raw, cluster_tol: float = 1e-6, real_snap_tol: float = 1e-8,
                  seeds=()):
    """Greedy proximity clustering of a root list into multiplicity groups.

    ``seeds`` are exact pole locations (e.g. a structural pole at 0) that
    anchor their cluster: any root merged into a seeded cluster is absorbed
    at the seed location rather than the running mean.
    """
    groups: list[list[complex]] = []
    anchors: list[complex | None] = []
    for sd in seeds:
        groups.append([complex(sd)])
        anchors.append(complex(sd))
    for r in sorted(np.atleast_1d(raw), key=lambda v: (v.real, v.imag)):
        r = complex(r)
        placed = False
        for gi, g in enumerate(groups):
            center = anchors[gi] if anchors[gi] is not None else np.mean(g)
            if abs(r - center) <= cluster_tol:
                g.append(r)
                placed = True
                break
        if not placed:
            groups.append([r])
            anchors.append(None)
    out = []
    for gi, g in enumerate(groups):
        if anchors[gi] is not None:
            val = anchors[gi]
        else:
            val = complex(np.mean(g))
        if abs(val.imag) < real_snap_tol:
            val = complex(val.real, 0.0)
        out.append((val, len(g)))
    return out


def roots_to_poly(root_groups) -> np.ndarray:
    """Monic polynomial (ascending coefficients) with the given (root, mult) groups."""
    c = np.array([1.0 + 0.0j])
    for lam, mult in root_groups:
        for _ in range(mult):
            c = npoly.polymul(c, np.array([-lam, 1.0]))
    if np.max(np.abs(c.imag)) < 1e-9 * max(1.0, np.max(np.abs(c.real))):
        return c.real.copy()
    return c


def falling_to_monomial(b) -> np.ndarray:
    """Convert coefficients of sum(b_r * C(k, r)) to ordinary powers of k.

    C(k, r) = k (k-1) ... (k-r+1) / r! is expanded directly, so the returned
    kappa satisfies sum(b_r C(k,r)) == sum(kappa_j k^j) identically.
    """
    b = np.asarray(b, dtype=float)
    if b.ndim != 1 or len(b) == 0:
        raise ValueError("expected a non-empty 1-D coefficient vector")
    kappa = np.zeros(len(b))
    basis = np.array([1.0])  # C(k, 0)
    for r, br in enumerate(b):
        if r > 0:
            # C(k, r) = C(k, r-1) * (k - (r-1)) / r
            basis = npoly.polymul(basis, np.array([-(r - 1), 1.0])) / r
        kappa[: len(basis)] += br * basis
    return kappa


@dataclass
class PartialFractionExpansion:
    """Modal decomposition of a strictly proper rational function.

    impulse_coeff     residue of a simple pole at z = 0 (0.0 when absent)
    simple_real       list of (pole, residue) for simple real poles
    conjugate_pairs   list of (modulus, angle, coeff_magnitude, coeff_phase),
                      one entry per conjugate pair, for the member with
                      positive imaginary part
    repeated          list of (pole, multiplicity, [K_1 .. K_mult]) where K_j
                      multiplies 1/(z - pole)^j; pole may be complex, in which
                      case its conjugate group is listed too
    """

    impulse_coeff: float = 0.0
    simple_real: list = field(default_factory=list)
    conjugate_pairs: list = field(default_factory=list)
    repeated: list = field(default_factory=list)

    def terms(self):
        """Flatten back to (pole, power, coefficient) triples."""
        out = []
        if self.impulse_coeff != 0.0:
            out.append((0.0 + 0.0j, 1, complex(self.impulse_coeff)))
        for lam, k in self.simple_real:
            out.append((complex(lam), 1, complex(k)))
        for mod, ang, kmag, kph in self.conjugate_pairs:
            lam = mod * cmath.exp(1j * ang)
            k = kmag * cmath.exp(1j * kph)
            out.append((lam, 1, k))
            out.append((lam.conjugate(), 1, k.conjugate()))
        for lam, mult, ks in self.repeated:
            for j, k in enumerate(ks, start=1):
                out.append((complex(lam), j, complex(k)))
        return out

    def eval_rational(self, z):
        """Evaluate the recombined expansion at points z (away from poles)."""
        z = np.asarray(z, dtype=complex)
        total = np.zeros_like(z)
        for lam, power, k in self.terms():
            total = total + k / (z - lam) ** power
        return total

    def to_dict(self) -> dict:
        return {
            "impulse": self.impulse_coeff,
            "real": [[lam, k] for lam, k in self.simple_real],
            "conjugate": [[m, a, km, kp] for m, a, km, kp in self.conjugate_pairs],
            "repeated": [
                [_jsonify_c(lam), mult, [_jsonify_c(k) for k in ks]]
                for lam, mult, ks in self.repeated
            ],
        }


def _jsonify_c(v):
    v = complex(v)
    if v.imag == 0.0:
        return v.real
    return [v.real, v.imag]


def _rational_derivative(num, den):
    """(num/den)' as a polynomial pair, via the quotient rule."""
    dnum = npoly.polyder(num)
    dden = npoly.polyder(den)
    new_num = npoly.polysub(npoly.polymul(dnum, den), npoly.polymul(num, dden))
    new_den = npoly.polymul(den, den)
    return new_num, new_den


def partial_fractions(numerator, denominator_roots,
                      classify_tol: float = 1e-8,
                      numerator_eval=None) -> PartialFractionExpansion:
    """Expand numerator / prod((z - lam)^mult) into modal terms.

    ``denominator_roots`` is a list of (root, multiplicity) groups, as
    produced by :func:`poly_roots` or :func:`cluster_roots`.  The rational
    function must be strictly proper (numerator degree below the total pole
    count).

    Simple poles use the residue formula; repeated poles use the derivative
    formula evaluated on symbolically differentiated polynomial pairs, so no
    numerical differencing is involved.  Poles with |Im| below
    ``classify_tol`` count as real; a simple real pole within ``classify_tol``
    of 0 fills the impulse slot.

    ``numerator_eval`` optionally replaces the float Horner evaluation of the
    numerator at simple poles; callers with exactly-known coefficients use it
    to sidestep cancellation when poles cluster.
    """
    num = trim(np.asarray(numerator))
    if numerator_eval is None:
        numerator_eval = lambda z: complex(npoly.polyval(z, num))  # noqa: E731
    groups = [(complex(lam), int(mult)) for lam, mult in denominator_roots]
    total = sum(m for _, m in groups)
    if degree(num) >= total and np.any(num != 0):
        raise ValueError(
            f"rational function is not strictly proper: numerator degree "
            f"{degree(num)} with {total} poles"
        )

    # Pair complex simple poles with their conjugates so each pair is
    # processed once, from the positive-imaginary member.
    consumed = set()
    for gi, (lam, mult) in enumerate(groups):
        if gi in consumed or mult != 1 or abs(lam.imag) <= classify_tol:
            continue
        if lam.imag < 0:
            continue
        best, best_d = None, np.inf
        for gj, (lam2, mult2) in enumerate(groups):
            if gj == gi or gj in consumed or mult2 != 1:
                continue
            d = abs(lam2 - lam.conjugate())
            if d < best_d:
                best, best_d = gj, d
        if best is not None and best_d <= max(classify_tol, 1e-9 * abs(lam)):
            consumed.add(best)

    pfe = PartialFractionExpansion()
    for gi, (lam, mult) in enumerate(groups):
        if gi in consumed:
            continue
        if mult == 1:
            # Evaluate the deflated denominator as a product of root factors:
            # expanding it first loses every digit the cluster gaps cancel.
            denom = complex(1.0)
            for gj, (lam2, mult2) in enumerate(groups):
                if gj != gi:
                    denom *= (lam - lam2) ** mult2
            k = numerator_eval(lam) / denom
            if abs(lam.imag) <= classify_tol:
                if abs(lam) <= classify_tol:
                    pfe.impulse_coeff = float(k.real)
                else:
                    pfe.simple_real.append((float(lam.real), float(k.real)))
            else:
                rep = lam if lam.imag > 0 else lam.conjugate()
                krep = k if lam.imag > 0 else k.conjugate()
                pfe.conjugate_pairs.append(
                    (abs(rep), cmath.phase(rep), abs(krep), cmath.phase(krep))
                )
        else:
            # K_j = (1/(mult-j)!) d^{mult-j}/dz^{mult-j} [num/deflated] at lam
            deflated = np.array([1.0 + 0.0j])
            for gj, (lam2, mult2) in enumerate(groups):
                if gj == gi:
                    continue
                for _ in range(mult2):
                    deflated = npoly.polymul(deflated, np.array([-lam2, 1.0]))
            ks = [0.0j] * mult
            n_cur, d_cur = num.astype(complex), deflated
            fact = 1.0
            for order in range(mult):
                val = complex(npoly.polyval(lam, n_cur)) / complex(
                    npoly.polyval(lam, d_cur)
                )
                ks[mult - order - 1] = val / fact
                if order < mult - 1:
                    n_cur, d_cur = _rational_derivative(n_cur, d_cur)
                    fact *= order + 1
            lam_out = complex(lam.real, 0.0) if abs(lam.imag) <= classify_tol else lam
            pfe.repeated.append((lam_out, mult, ks))
    return pfe


