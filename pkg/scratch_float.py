"""Dev scratch: float-pipeline quality across rank tolerances."""
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
ks = np.arange(0, 201)
win = predictor.MemoryWindow(agent=0, samples=x1, epsilon=0.1)

printed_beta = np.array([0.0048, 0.0538, 0.6762, 3.7570])
printed_kappa = np.array([3.757019522, 0.6508490022, 0.02451822315, 0.000794850061])

for tol in (1e-6, 1e-8, 1e-10, 1e-11, 1e-12, 5e-13, 2e-13):
    try:
        res = predictor.mdcp_run(win, 4, predictor.PredictorConfig(rank_tol=tol))
        pair = res.pair
        p1 = pair.p_at_one()
        pred = res.predicted_output(ks, 1)
        err1 = np.max(np.abs(pred - x1[:201]))
        errs = [np.max(np.abs(res.predicted_output(ks, o) - traj.agent_series(0, o)[:201]))
                for o in (2, 3, 4)]
        kerr = np.max(np.abs(res.consensus.coefficients(1) - printed_kappa))
        berr = np.max(np.abs(res.beta_low - printed_beta))
        print(f"tol={tol:.0e}: D={pair.degree:2d} p(1)={p1:+.3e} "
              f"anni={pair.annihilation_residual:.1e} beta_err={berr:.1e} "
              f"kappa_err={kerr:.1e} deadbeat={err1:.1e} ord234={[f'{e:.0e}' for e in errs]}")
    except Exception as e:
        print(f"tol={tol:.0e}: {type(e).__name__}: {e}")
