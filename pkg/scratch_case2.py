"""Dev scratch: full case-study validation after the exact-path rework."""
from fractions import Fraction

import numpy as np

from deadbeat_consensus import dynamics, exact, graph, predictor

L = np.array([
    [2, 0, -1, -1, 0],
    [-1, 1, 0, 0, 0],
    [-1, 0, 2, 0, -1],
    [-1, 0, 0, 2, -1],
    [0, -1, -1, -1, 3],
], dtype=float)
A = -L.copy()
np.fill_diagonal(A, 0.0)
X0_txt = [
    "1.9660", "2.5108", "6.1604", "4.7329", "3.5166",
    "8.3083", "5.8526", "5.4972", "9.1719", "2.8584",
    "7.5720", "7.5373", "3.8045", "5.6782", "0.7585",
    "0.5395", "5.3080", "7.7917", "9.3401", "1.2991",
]
X0 = np.array([float(v) for v in X0_txt])

bb = graph.build_backbone(A)
sys4 = dynamics.build_perron(bb, s=4, epsilon=0.1, omega=-0.2, gains=[6, 6, 17, 2])

rep = dynamics.spectral_check(sys4)
print("count_at_one:", rep.count_at_one, "max other:", f"{rep.max_modulus_excluding_one:.6f}",
      "geo:", rep.geometric_multiplicity_at_one, "violated:", rep.assumption_violated)

traj = dynamics.simulate(sys4, X0, 700)
x1 = traj.agent_series(0, 1)
ks = np.arange(0, 201)

# --- exact route ---
wf = [[Fraction(0)] * 20 for _ in range(20)]
eps = Fraction(1, 10)
om = Fraction(-1, 5)
gains = [Fraction(6), Fraction(6), Fraction(17), Fraction(2)]
for blk in range(3):
    for i in range(5):
        wf[blk * 5 + i][blk * 5 + i] = Fraction(1)
        wf[blk * 5 + i][(blk + 1) * 5 + i] = eps
for blk in range(4):
    for i in range(5):
        for j in range(5):
            wf[15 + i][blk * 5 + j] += om * gains[blk] * int(L[i, j])
for i in range(5):
    wf[15 + i][15 + i] += Fraction(1)

samples = exact.exact_propagate(wf, [Fraction(v) for v in X0_txt], 40, observe=0)
res = exact.exact_pipeline(samples, 4, Fraction(1, 10))
print("exact degree:", res.pair.degree)
print("exact beta:", np.round(res.beta_low, 6))
print("exact kappa:", [f"{c:.12g}" for c in res.consensus.coefficients(1)])

print("PFE: impulse:", res.disagreement.expansion.impulse_coeff)
print("PFE: simple_real:", res.disagreement.expansion.simple_real)
print("PFE: conj pairs:", [(f"{m:.6f}", f"{a:.6f}", f"{km:.4g}", f"{kp:.4f}")
                           for m, a, km, kp in res.disagreement.expansion.conjugate_pairs])
print("PFE: repeated:", res.disagreement.expansion.repeated)

for order in (1, 2, 3, 4):
    pred = res.consensus.evaluate(ks, order) + res.disagreement.evaluate(ks, order)
    act = traj.agent_series(0, order)[:201]
    print(f"exact-route deadbeat order {order} max err: {np.max(np.abs(pred - act)):.3e}")

# disagreement-only comparison (order consistency invariant)
dis_sim = dynamics.disagreement_series(traj, bb)
for order in (1, 2):
    pd = res.disagreement.evaluate(ks, order)
    ad = dis_sim[:201, order - 1, 0]
    print(f"disagreement order {order} max err: {np.max(np.abs(pd - ad)):.3e}")

# definition & corollary triangulation
cons_def = dynamics.consensus_vector(bb, X0, ks, 0.1, 4)
oracle = predictor.corollary_oracle(sys4, X0)
for order in (1, 2, 3, 4):
    a = oracle.evaluate(ks, order)
    b = res.consensus.evaluate(ks, order)
    c = cons_def[:, order - 1]
    denom = np.maximum(1e-12, np.abs(c))
    print(f"order {order}: mdcp-vs-def {np.max(np.abs(b - c) / denom):.3e}  "
          f"oracle-vs-def {np.max(np.abs(a - c) / denom):.3e}")

# routine CWLT + tail behaviour
agg = dynamics.aggregate_disagreement(dis_sim)
print("terminal aggregate:", f"{agg[-1]:.3e}")
print("routine CWLT sigma=0.1:", dynamics.cwlt(dis_sim, 0.1, 0.1))
p = graph.left_eigenvector(bb).p
print("p^T top-order disagreement max:", f"{np.max(np.abs(dis_sim[:, 3, :] @ p)):.3e}")
