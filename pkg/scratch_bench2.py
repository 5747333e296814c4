"""Dev scratch: full benchmark pipeline probe with designed gains."""
import time

import numpy as np

from deadbeat_consensus import dynamics, graph, predictor

GAINS = [1.5, 7.4, 29.0, 33.4]
EPS = 0.1
rng = np.random.default_rng(42)


def block_max_radius(lam_list, omega, gains=GAINS, eps=EPS):
    worst = 0.0
    for lam in lam_list:
        if abs(lam) < 1e-9:
            continue
        s = len(gains)
        block = np.eye(s, dtype=complex) + eps * np.diag(np.ones(s - 1), 1)
        block[s - 1, :] += omega * lam * np.asarray(gains)
        worst = max(worst, max(abs(np.linalg.eigvals(block))))
    return worst


def pick_omega(lams):
    nz = [l for l in np.real(lams) if l > 1e-9]
    lmax = max(nz)
    # coupling window for these gains, measured once
    candidates = np.geomspace(0.05 / lmax, 60.0 / lmax, 60)
    best_omega, best_rad = None, np.inf
    for k_over in candidates:
        om = -k_over * EPS
        rad = block_max_radius(nz, om)
        if rad < best_rad:
            best_rad, best_omega = rad, om
    return best_omega, best_rad


for model, kw in [("er", {"rho": 0.2}), ("er", {"rho": 0.4}), ("ws", {"z": 6}),
                  ("ws", {"z": 8}), ("ba", {"m": 6}), ("ba", {"m": 9})]:
    mprimes, degrees, fails = [], [], 0
    t0 = time.perf_counter()
    for i in range(5):
        bb = graph.generate_random(model, 20, seed=2000 + i, **kw)
        lams = np.linalg.eigvalsh(bb.laplacian)
        om, rad = pick_omega(lams)
        sys_ = dynamics.build_perron(bb, 4, EPS, om, GAINS)
        rep = dynamics.spectral_check(sys_)
        if rep.assumption_violated:
            fails += 1
            continue
        x0 = rng.uniform(0, 30, 80)
        traj = dynamics.simulate(sys_, x0, 3000)
        dis = dynamics.disagreement_series(traj, bb)
        try:
            mprimes.append(dynamics.cwlt(dis, 0.1, EPS))
        except dynamics.HorizonTooShortError:
            fails += 1
            continue
        for agent in range(0, 20, 5):
            win = predictor.MemoryWindow(agent, traj.agent_series(agent, 1), EPS)
            try:
                res = predictor.mdcp_run(win, 4)
                degrees.append(res.pair.degree)
            except Exception as e:
                print("   mdcp fail:", type(e).__name__, str(e)[:90])
    dt = (time.perf_counter() - t0) / 5
    ms = [EPS * (2 * d + 5) for d in degrees]
    print(f"{model} {kw}: fails={fails} Mprime={np.mean(mprimes):6.1f}s "
          f"M={np.mean(ms):5.2f}s degrees {min(degrees) if degrees else '-'}..{max(degrees) if degrees else '-'} "
          f"({dt:.2f}s/net)")
