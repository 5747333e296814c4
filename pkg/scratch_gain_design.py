"""Dev scratch: stability window of the companion block vs coupling strength."""
import numpy as np

from deadbeat_consensus import dynamics, graph


def block_radius(gains, eps, k):
    """Max |eigenvalue| of the closed-loop block at coupling K = -omega*lam/eps."""
    s = len(gains)
    c_mat = np.diag(np.ones(s - 1), 1)
    block = np.eye(s) + eps * c_mat
    block[s - 1, :] += -(k * eps / 1.0) * np.asarray(gains) * 1.0  # omega*lam = -K*eps
    return max(abs(np.linalg.eigvals(block)))


def window(gains, eps=0.1):
    ks = np.geomspace(0.01, 200, 2000)
    stable = np.array([block_radius(gains, eps, k) < 1 - 1e-12 for k in ks])
    if not stable.any():
        return None, None
    lo = ks[np.argmax(stable)]
    hi_idx = len(stable) - 1 - np.argmax(stable[::-1])
    hi = ks[hi_idx]
    # verify contiguous
    inside = stable[np.argmax(stable):hi_idx + 1]
    return (lo, hi) if inside.all() else (lo, -hi)


for gains in ([6, 6, 17, 2], [2.196, 3.264, 2.1, 0.6], [3.66, 5.44, 3.5, 1.0],
              [2.0, 4.0, 3.0, 0.5], [1.2, 2.8, 2.2, 0.35]):
    lo, hi = window(gains)
    print(f"gains={gains}: stable K in [{lo:.3f}, {hi:.3f}] ratio {hi / lo:.1f}")

# eigenvalue spread of benchmark graphs
for model, kw in [("er", {"rho": 0.2}), ("er", {"rho": 0.4}), ("ws", {"z": 6}),
                  ("ws", {"z": 8}), ("ba", {"m": 6}), ("ba", {"m": 9})]:
    spreads = []
    for i in range(10):
        bb = graph.generate_random(model, 20, seed=500 + i, **kw)
        lams = np.sort(np.linalg.eigvalsh(bb.laplacian))
        spreads.append((lams[1], lams[-1]))
    l2 = np.mean([a for a, b in spreads])
    lmax = np.mean([b for a, b in spreads])
    worst = max(b / a for a, b in spreads)
    print(f"{model} {kw}: mean l2={l2:.2f} lmax={lmax:.2f} worst ratio={worst:.1f}")
