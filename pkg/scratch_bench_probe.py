"""Dev scratch: gain scaling + degree statistics on benchmark-sized graphs."""
import time

import numpy as np

from deadbeat_consensus import dynamics, graph, predictor

rng = np.random.default_rng(0)
CASE_GAINS = [6.0, 6.0, 17.0, 2.0]


def probe(model, kwargs, omega_rule, n_samples=6, rank_tol=1e-8):
    degrees, cwlts, fails = [], [], 0
    t0 = time.perf_counter()
    for i in range(n_samples):
        bb = graph.generate_random(model, 20, seed=1000 + i, **kwargs)
        lam_max = max(abs(np.linalg.eigvals(bb.laplacian)))
        omega = omega_rule(lam_max)
        sys_ = dynamics.build_perron(bb, 4, 0.1, omega, CASE_GAINS)
        rep = dynamics.spectral_check(sys_)
        if rep.assumption_violated:
            fails += 1
            continue
        x0 = rng.uniform(0, 30, 80)
        traj = dynamics.simulate(sys_, x0, 4000)
        dis = dynamics.disagreement_series(traj, bb)
        try:
            t = dynamics.cwlt(dis, 0.1, 0.1)
            cwlts.append(t)
        except dynamics.HorizonTooShortError:
            fails += 1
            continue
        win = predictor.MemoryWindow(0, traj.agent_series(0, 1), 0.1)
        try:
            res = predictor.mdcp_run(win, 4, predictor.PredictorConfig(rank_tol=rank_tol))
            degrees.append(res.pair.degree)
        except Exception as e:
            print("   mdcp fail:", type(e).__name__, e)
    dt = time.perf_counter() - t0
    print(f"{model} {kwargs}: spectral/horizon fails={fails} "
          f"Mprime={np.mean(cwlts) if cwlts else float('nan'):.1f}s "
          f"deg={degrees} M={[0.1 * (2 * d + 5) for d in degrees]} "
          f"({dt / n_samples:.2f}s/net)")


print("=== omega = -0.2 (case-study gains straight) ===")
for model, kw in [("er", {"rho": 0.2}), ("er", {"rho": 0.4}),
                  ("ws", {"z": 6}), ("ba", {"m": 6})]:
    probe(model, kw, lambda lam: -0.2, n_samples=3)

print("=== omega scaled: -0.2 * 3.56 / lam_max ===")
for model, kw in [("er", {"rho": 0.2}), ("er", {"rho": 0.4}),
                  ("ws", {"z": 6}), ("ws", {"z": 8}),
                  ("ba", {"m": 6}), ("ba", {"m": 9})]:
    probe(model, kw, lambda lam: -0.2 * 3.56 / lam, n_samples=4)
