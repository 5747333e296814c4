"""Dev scratch: why does the rank scan not match the published degree 10?"""
import numpy as np

from deadbeat_consensus import dynamics, graph, predictor

L = np.array([
    [2, 0, -1, -1, 0],
    [-1, 1, 0, 0, 0],
    [-1, 0, 2, 0, -1],
    [-1, 0, 0, 2, -1],
    [0, -1, -1, -1, 3],
], dtype=float)
A = -L.copy()
np.fill_diagonal(A, 0.0)
X0 = np.array([
    1.9660, 2.5108, 6.1604, 4.7329, 3.5166,
    8.3083, 5.8526, 5.4972, 9.1719, 2.8584,
    7.5720, 7.5373, 3.8045, 5.6782, 0.7585,
    0.5395, 5.3080, 7.7917, 9.3401, 1.2991,
])
bb = graph.build_backbone(A)
sys4 = dynamics.build_perron(bb, s=4, epsilon=0.1, omega=-0.2, gains=[6, 6, 17, 2])
traj = dynamics.simulate(sys4, X0, 260)
x1 = traj.agent_series(0, 1)
d = np.diff(x1, 4)
print("x1[:6]:", x1[:6])
print("d[:8]:", d[:8])
print("|d| decay:", [f"{abs(d[k]):.2e}" for k in range(0, 40, 4)])

zeta_paper = np.array([0.0000, 0.7209, -3.2848, 7.5597, -10.8951, 9.8706,
                       -4.0706, -2.6171, 5.2873, -3.5668, 1.0000])
alpha_paper = np.array([0.0000, 0.7209, -6.1685, 25.0245, -63.7266, 112.6697,
                        -142.4475, 124.0291, -59.0453, -14.2656, 53.3886,
                        -49.1670, 25.5545, -7.5668, 1.0000])

# Does the printed zeta annihilate the difference stream?
width = len(zeta_paper)
res = [abs(np.dot(zeta_paper, d[k:k + width])) for k in range(0, 30)]
print("paper zeta annihilation on diff stream:", [f"{r:.2e}" for r in res[:10]])
wa = len(alpha_paper)
res_a = [abs(np.dot(alpha_paper, x1[k:k + wa])) for k in range(0, 30)]
print("paper alpha annihilation on samples:   ", [f"{r:.2e}" for r in res_a[:10]])

# Exact W spectrum via per-block companion structure (Schur of L).
from scipy.linalg import schur
T, _ = schur(L, output="complex")
lams = np.diag(T)
print("L eigenvalues:", np.sort_complex(lams))
C = np.diag(np.ones(3), 1)
R = np.zeros((4, 4)); R[3, :] = [6, 6, 17, 2]
all_eigs = []
for lam in lams:
    B = 0.1 * C + (-0.2) * lam * R
    all_eigs.extend(np.linalg.eigvals(np.eye(4) + B))
all_eigs = np.array(all_eigs)
print("W block eigenvalues sorted by |.|:")
for e in sorted(all_eigs, key=abs):
    print(f"   {e:.6f}  |.|={abs(e):.6f}")

# Singular value profiles of the Hankel matrices.
win = predictor.MemoryWindow(agent=0, samples=x1, epsilon=0.1)
for dh in range(1, 13):
    g = predictor.build_hankel(win, 0, dh, 4)
    sv = np.linalg.svd(g, compute_uv=False)
    print(f"D̂={dh:2d}  smax={sv[0]:.3e}  ratios:",
          " ".join(f"{v / sv[0]:.1e}" for v in sv[-3:]))
