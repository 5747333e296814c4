"""Dev scratch: do the downstream constants (beta, cubic) reproduce?"""
from fractions import Fraction

import numpy as np

from deadbeat_consensus import dynamics, graph, predictor, polyalg

L_rows = [
    [2, 0, -1, -1, 0],
    [-1, 1, 0, 0, 0],
    [-1, 0, 2, 0, -1],
    [-1, 0, 0, 2, -1],
    [0, -1, -1, -1, 3],
]
X0_txt = [
    "1.9660", "2.5108", "6.1604", "4.7329", "3.5166",
    "8.3083", "5.8526", "5.4972", "9.1719", "2.8584",
    "7.5720", "7.5373", "3.8045", "5.6782", "0.7585",
    "0.5395", "5.3080", "7.7917", "9.3401", "1.2991",
]
s, n = 4, 5
eps = Fraction(1, 10)

# ---- exact pipeline ----------------------------------------------------
W = [[Fraction(0)] * 20 for _ in range(20)]
for blk in range(s - 1):
    for i in range(n):
        W[blk * n + i][blk * n + i] = Fraction(1)
        W[blk * n + i][(blk + 1) * n + i] = eps
gains = [Fraction(6), Fraction(6), Fraction(17), Fraction(2)]
omega = Fraction(-1, 5)
for blk in range(s):
    for i in range(n):
        for j in range(n):
            W[3 * n + i][blk * n + j] += omega * gains[blk] * L_rows[i][j]
for i in range(n):
    W[3 * n + i][3 * n + i] += Fraction(1)

x = [Fraction(v) for v in X0_txt]
samples = [x[0]]
for _ in range(40):
    x = [sum(W[i][j] * x[j] for j in range(20)) for i in range(20)]
    samples.append(x[0])

d = samples[:]
for _ in range(s):
    d = [d[k + 1] - d[k] for k in range(len(d) - 1)]


def exact_rank_and_null(mat):
    """Gaussian elimination over Fractions; returns (rank, null vector or None)."""
    m = [row[:] for row in mat]
    rows, cols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(cols):
        piv = None
        for rr in range(r, rows):
            if m[rr][c] != 0:
                piv = rr
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c]
        m[r] = [v / inv for v in m[r]]
        for rr in range(rows):
            if rr != r and m[rr][c] != 0:
                f = m[rr][c]
                m[rr] = [a - f * b for a, b in zip(m[rr], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    rank = r
    if rank == cols:
        return rank, None
    free = [c for c in range(cols) if c not in pivots]
    fc = free[-1]
    v = [Fraction(0)] * cols
    v[fc] = Fraction(1)
    for ri, pc in enumerate(pivots):
        v[pc] = -m[ri][fc]
    return rank, v


dbar = None
for dh in range(1, 15):
    g = [[d[r + j] for j in range(dh + 1)] for r in range(dh + 1)]
    rank, null = exact_rank_and_null(g)
    if rank < dh + 1:
        dbar = dh
        zeta = [c / null[-1] for c in null]
        break
print("exact degree:", dbar)

alpha = [Fraction(0)] * (dbar + s + 1)
binom = [Fraction(1), Fraction(-4), Fraction(6), Fraction(-4), Fraction(1)][::-1]
for i, zi in enumerate(zeta):
    for h, bh in enumerate(binom):
        alpha[i + h] += zi * bh

di = dbar + s - 1
phi = [sum(alpha[h + j + 1] * samples[h] for h in range(di + 1 - j))
       for j in range(di + 1)]


def exact_shift_to_one(coeffs):
    a = coeffs[:]
    nn = len(a)
    out = [Fraction(0)] * nn
    for j in range(nn):
        for k in range(nn - 2, j - 1, -1):
            a[k] = a[k] + a[k + 1]
        out[j] = a[j]
    return out


phi_u = exact_shift_to_one(phi)
p_u = exact_shift_to_one(zeta)
beta = []
for t in range(s):
    acc = phi_u[t]
    for j in range(t):
        if t - j < len(p_u):
            acc -= p_u[t - j] * beta[j]
    beta.append(acc / p_u[0])
print("exact beta:", [f"{float(b):.6f}" for b in beta])
print("printed    : [0.0048, 0.0538, 0.6762, 3.7570]")

# kappa: b_r = beta_{s-1-r}; sum b_r C(k, r) -> monomial
b = beta[::-1]
kappa = [Fraction(0)] * s
basis = [Fraction(1)]
for r0, br in enumerate(b):
    if r0 > 0:
        nb = [Fraction(0)] * (len(basis) + 1)
        for i, c in enumerate(basis):
            nb[i] += c * Fraction(-(r0 - 1))
            nb[i + 1] += c
        basis = [c / r0 for c in nb]
    for i, c in enumerate(basis):
        kappa[i] += br * c
print("exact kappa:", [f"{float(c):.12g}" for c in kappa])
print("printed    : [3.757019522, 0.6508490022, 0.02451822315, 0.000794850061]")

# deadbeat identity of the exact pair, evaluated in float
zf = np.array([float(v) for v in zeta])
af = np.array([float(v) for v in alpha])
pair = predictor.MinimalPolyPair(degree=dbar, s=s, zeta=zf, alpha=af,
                                 consumed_samples=2 * dbar + s + 1)
sampf = np.array([float(v) for v in samples])
win = predictor.MemoryWindow(agent=0, samples=sampf, epsilon=0.1)
phi_f = predictor.build_phi(pair, win)
bl, bh = predictor.fit_decomposition(phi_f, pair, s)
print("float-from-exact-pair beta:", bl)
cons = predictor.consensus_item(bl, s, 0.1)
dis = predictor.predict_disagreement(bh, pair, s, epsilon=0.1)

bb = graph.build_backbone(-np.array(L_rows, float) + np.diag(np.diag(L_rows)))
sys4 = dynamics.build_perron(bb, s=4, epsilon=0.1, omega=-0.2, gains=[6, 6, 17, 2])
X0f = np.array([float(Fraction(v)) for v in X0_txt])
traj = dynamics.simulate(sys4, X0f, 260)
ks = np.arange(0, 201)
for order in (1, 2, 3, 4):
    pred = cons.evaluate(ks, order) + dis.evaluate(ks, order)
    act = traj.agent_series(0, order)[:201]
    print(f"exact-pair deadbeat order {order} max err: {np.max(np.abs(pred - act)):.3e}")

# ---- float pipeline at several tolerances -------------------------------
win_f = predictor.MemoryWindow(agent=0, samples=traj.agent_series(0, 1), epsilon=0.1)
for tol in (1e-8, 1e-10, 1e-12, 3e-13):
    try:
        res = predictor.mdcp_run(win_f, 4, predictor.PredictorConfig(rank_tol=tol))
        pred = res.predicted_output(ks, 1)
        err = np.max(np.abs(pred - traj.agent_series(0, 1)[:201]))
        print(f"tol={tol:.0e}: degree={res.pair.degree} beta={np.round(res.beta_low, 4)} "
              f"deadbeat={err:.2e}")
    except Exception as e:
        print(f"tol={tol:.0e}: {type(e).__name__}: {e}")
