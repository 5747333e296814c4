"""Dev scratch: joint search for global benchmark gains + coupling."""
import numpy as np

from deadbeat_consensus import graph

EPS = 0.1
rng = np.random.default_rng(3)

MODELS = [("er", {"rho": 0.2}), ("er", {"rho": 0.4}), ("ws", {"z": 6}),
          ("ws", {"z": 8}), ("ba", {"m": 6}), ("ba", {"m": 9})]

# Collect Laplacian spectra per model.
spectra = {}
for model, kw in MODELS:
    lam_sets = []
    for i in range(12):
        bb = graph.generate_random(model, 20, seed=7000 + i, **kw)
        lam_sets.append(np.sort(np.linalg.eigvalsh(bb.laplacian))[1:])
    spectra[(model, tuple(kw.items()))] = lam_sets


def block_radius_多(gains, k):
    s = len(gains)
    block = np.eye(s) + EPS * np.diag(np.ones(s - 1), 1)
    block[s - 1, :] += -(k * EPS) * np.asarray(gains)
    return max(abs(np.linalg.eigvals(block)))


def rate_curve(gains):
    ks = np.geomspace(0.05, 300, 500)
    rads = np.array([block_radius_多(gains, k) for k in ks])
    return ks, rads


def evaluate(gains, q):
    """Per-model slowest decay rate (1/s) under K = q*lam; None if unstable."""
    ks, rads = rate_curve(gains)
    out = {}
    for key, lam_sets in spectra.items():
        rates = []
        for lams in lam_sets:
            kvals = q * lams
            r = np.interp(kvals, ks, rads)
            if (r >= 1 - 1e-9).any():
                rates.append(None)
            else:
                rates.append(-np.log(r.max()) / EPS)
        ok = [x for x in rates if x is not None]
        out[key] = (len(lam_sets) - len(ok), np.mean(ok) if ok else 0.0)
    return out


def score(gains, q):
    res = evaluate(gains, q)
    total_fail = sum(f for f, _ in res.values())
    # target: slowest-model mean rate near 8.9/50 ~ 0.18, fastest below 8.9/27 ~ 0.33
    rates = [r for _, r in res.values()]
    if total_fail > 8 or min(rates) <= 0:
        return -1e9, res
    # M' estimates assuming ln(700/σ=0.1) ≈ 8.9
    mps = [8.9 / r for r in rates]
    # want all in [27, 55]
    penalty = sum(max(0, 27 - m) ** 2 + max(0, m - 55) ** 2 for m in mps)
    return -(penalty + 30 * total_fail), res


best = None
cands = [
    ([6, 6, 17, 2], None),
    ([1.5, 7.4, 29.0, 33.4], None),
    ([0.172, 0.143, 0.589, 0.199], None),
    ([0.484, 0.27, 0.771, 0.165], None),
    ([0.791, 0.576, 1.353, 0.328], None),
]
for trial in range(1500):
    g = np.exp(rng.uniform(np.log(0.05), np.log(40), size=4))
    cands.append((list(g), None))

for g, _ in cands:
    for q in np.geomspace(0.05, 8, 40):
        sc, res = score(g, q)
        if best is None or sc > best[0]:
            best = (sc, g, q, res)

sc, g, q, res = best
print(f"best score {sc:.1f}: gains={np.round(g, 3)} q={q:.3f} (omega=-q*eps={-q * EPS:.4f})")
for (model, kw), (fails, rate) in res.items():
    print(f"  {model} {dict(kw)}: resamples={fails}/12 rate={rate:.4f}/s -> Mprime~{8.9 / max(rate, 1e-9):.1f}s")
