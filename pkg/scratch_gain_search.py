"""Dev scratch: search for benchmark gains with a wide stable coupling window."""
import numpy as np

EPS = 0.1


def block_radius(gains, k):
    s = len(gains)
    block = np.eye(s) + EPS * np.diag(np.ones(s - 1), 1)
    block[s - 1, :] += -(k * EPS) * np.asarray(gains)
    return max(abs(np.linalg.eigvals(block)))


def window_and_speed(gains, probe_k=None):
    ks = np.geomspace(0.02, 400, 1200)
    rad = np.array([block_radius(gains, k) for k in ks])
    stable = rad < 1 - 1e-12
    if not stable.any():
        return None
    i_lo = int(np.argmax(stable))
    i_hi = len(stable) - 1 - int(np.argmax(stable[::-1]))
    if not stable[i_lo : i_hi + 1].all():
        return None
    lo, hi = ks[i_lo], ks[i_hi]
    # decay rate (in 1/s of simulated time) of the slowest mode at a given K:
    # |lambda|^k = exp(k ln|lambda|), T = eps*k -> rate = -ln(rad)/eps
    def rate(k):
        return -np.log(block_radius(gains, k)) / EPS
    return lo, hi, rate


cands = []
for a in (0.8, 1.2, 1.8, 2.5):
    for b in (0.8, 1.2, 1.8, 2.5):
        for zeta in (0.7, 0.9, 1.1):
            for c3 in (0.4, 0.7, 1.0, 1.5, 2.0):
                poly = np.polynomial.polynomial.polymul(
                    [a, 1.0], [b * b, 2 * zeta * b, 1.0]
                )
                gains = list(c3 * poly)[:-1] + [c3]
                res = window_and_speed(gains)
                if res is None:
                    continue
                lo, hi, rate = res
                ratio = hi / lo
                if ratio < 25:
                    continue
                # Rate when the Fiedler block must sit at lo*margin because the
                # spread eats the whole window.
                k_tight = lo * 1.3
                cands.append((rate(k_tight), ratio, lo, hi, gains))

cands.sort(reverse=True)
print("top candidates: (rate@tight, ratio, lo, hi, gains)")
for r, ratio, lo, hi, g in cands[:12]:
    print(f"  rate={r:.3f}/s ratio={ratio:5.1f} K=[{lo:6.3f},{hi:7.2f}] "
          f"gains={[round(v, 3) for v in g]}")

# Compare: case-study gains
res = window_and_speed([6, 6, 17, 2])
lo, hi, rate = res
print(f"case gains [6,6,17,2]: K=[{lo:.3f},{hi:.2f}] ratio={hi/lo:.1f} "
      f"rate@1.3lo={rate(lo*1.3):.3f} rate@3.2={rate(3.2):.3f}")
