"""Dev scratch: randomized search over gain vectors for window ratio + speed."""
import numpy as np

EPS = 0.1
rng = np.random.default_rng(7)


def block_radius(gains, k):
    s = len(gains)
    block = np.eye(s) + EPS * np.diag(np.ones(s - 1), 1)
    block[s - 1, :] += -(k * EPS) * np.asarray(gains)
    return max(abs(np.linalg.eigvals(block)))


def analyze(gains):
    ks = np.geomspace(0.02, 600, 900)
    rad = np.array([block_radius(gains, k) for k in ks])
    stable = rad < 1 - 1e-12
    if not stable.any():
        return None
    i_lo = int(np.argmax(stable))
    i_hi = len(stable) - 1 - int(np.argmax(stable[::-1]))
    if not stable[i_lo : i_hi + 1].all():
        return None
    return ks[i_lo], ks[i_hi]


best = []
for trial in range(4000):
    g = np.exp(rng.uniform(np.log(0.05), np.log(40), size=4))
    res = analyze(g)
    if res is None:
        continue
    lo, hi = res
    if hi / lo < 28:
        continue
    rate_tight = -np.log(block_radius(g, lo * 1.3)) / EPS
    best.append((rate_tight, hi / lo, lo, hi, g))

best.sort(key=lambda t: -t[0])
print(f"{len(best)} candidates with ratio>=28")
for r, ratio, lo, hi, g in best[:15]:
    print(f"  rate={r:.3f}/s ratio={ratio:6.1f} K=[{lo:.3f},{hi:8.2f}] "
          f"gains={np.round(g, 3)}")
