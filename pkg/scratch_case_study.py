"""Dev scratch: drive the pipeline on the published 5-agent case study."""
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
print("laplacian matches printed:", np.array_equal(bb.laplacian, L))
print("spanning tree:", graph.has_spanning_tree(bb))
p = graph.left_eigenvector(bb).p
print("p:", p, " pL inf:", np.max(np.abs(p @ L)))

sys4 = dynamics.build_perron(bb, s=4, epsilon=0.1, omega=-0.2, gains=[6, 6, 17, 2])
rep = dynamics.spectral_check(sys4)
print("count_at_one:", rep.count_at_one, "max other:", rep.max_modulus_excluding_one,
      "geo:", rep.geometric_multiplicity_at_one, "violated:", rep.assumption_violated)

traj = dynamics.simulate(sys4, X0, 260)
win = predictor.MemoryWindow(agent=0, samples=traj.agent_series(0, 1), epsilon=0.1)

# Rank scan diagnostics: singular value profile near the expected drop.
for dh in (8, 9, 10, 11):
    g = predictor.build_hankel(win, 0, dh, 4)
    sv = np.linalg.svd(g, compute_uv=False)
    print(f"D̂={dh}: smin/smax={sv[-1] / sv[0]:.3e}  two smallest ratios:",
          sv[-2] / sv[0], sv[-1] / sv[0])

res = predictor.mdcp_run(win, 4)
print("degree:", res.pair.degree, "consumed:", res.pair.consumed_samples)
np.set_printoptions(precision=4, suppress=True)
print("zeta:", res.pair.zeta)
print("alpha:", res.pair.alpha)
print("beta_low:", res.beta_low)
print("annihilation residual:", res.pair.annihilation_residual)

kappa = res.consensus.coefficients(1)
print("kappa (ascending):", [f"{c:.12g}" for c in kappa])
print("printed target:    [3.757019522, 0.6508490022, 0.02451822315, 0.000794850061]")

# Deadbeat identity: consensus + disagreement vs simulated output.
ks = np.arange(0, 201)
pred = res.predicted_output(ks, 1)
actual = traj.agent_series(0, 1)[:201]
print("deadbeat identity max err (order 1):", np.max(np.abs(pred - actual)))
for order in (2, 3, 4):
    pred_o = res.predicted_output(ks, order)
    actual_o = traj.agent_series(0, order)[:201]
    print(f"  order {order} max err:", np.max(np.abs(pred_o - actual_o)))

# Definition-based consensus values vs predicted cubic.
cons = dynamics.consensus_vector(bb, X0, ks, 0.1, 4)
pred_c = res.consensus.evaluate(ks, 1)
rel = np.max(np.abs(pred_c - cons[:, 0]) / np.maximum(1e-12, np.abs(cons[:, 0])))
print("consensus vs definition rel err:", rel)

# Corollary oracle.
oracle = predictor.corollary_oracle(sys4, X0)
for order in (1, 2, 3, 4):
    a = oracle.evaluate(ks, order)
    b = res.consensus.evaluate(ks, order)
    c = cons[:, order - 1]
    print(f"order {order}: oracle-vs-mdcp {np.max(np.abs(a - b) / np.maximum(1e-12, np.abs(b))):.3e}"
          f"  oracle-vs-def {np.max(np.abs(a - c) / np.maximum(1e-12, np.abs(c))):.3e}")

# Disagreement decay + CWLT of the routine protocol.
dis = dynamics.disagreement_series(dynamics.simulate(sys4, X0, 700), bb)
agg = dynamics.aggregate_disagreement(dis)
print("terminal aggregate disagreement:", agg[-1])
print("routine CWLT sigma=0.1:", dynamics.cwlt(dis, 0.1, 0.1))
print("p^T top-order disagreement max:", np.max(np.abs(dis[:, 3, :] @ p)))
