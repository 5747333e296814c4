"""Dev scratch: exact-rational ground truth for the case-study degree scan."""
from fractions import Fraction

import numpy as np
import sympy as sp

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
s = 4
n = 5
eps = Fraction(1, 10)
omega = Fraction(-1, 5)
gains = [Fraction(6), Fraction(6), Fraction(17), Fraction(2)]

W = [[Fraction(0)] * 20 for _ in range(20)]
for blk in range(s - 1):
    for i in range(n):
        W[blk * n + i][blk * n + i] = Fraction(1)
        W[blk * n + i][(blk + 1) * n + i] = eps
for blk in range(s):
    for i in range(n):
        for j in range(n):
            W[3 * n + i][blk * n + j] += omega * gains[blk] * L_rows[i][j]
for i in range(n):
    W[3 * n + i][3 * n + i] += Fraction(1)

x = [Fraction(v) for v in X0_txt]
samples = [x[0]]
for k in range(40):
    x = [sum(W[i][j] * x[j] for j in range(20)) for i in range(20)]
    samples.append(x[0])

# s-th order forward differences, exact.
d = samples[:]
for _ in range(s):
    d = [d[k + 1] - d[k] for k in range(len(d) - 1)]

for dh in range(1, 14):
    need = 2 * dh + 1
    if need > len(d):
        break
    g = sp.Matrix(dh + 1, dh + 1, lambda r, j: d[r + j])
    rank = g.rank()
    print(f"exact rank of degree-{dh} Hankel: {rank} / {dh + 1}"
          + ("   <-- RANK DROP" if rank < dh + 1 else ""))
    if rank < dh + 1:
        ns = g.nullspace()
        print("null space dim:", len(ns))
        v = ns[0]
        v = v / v[-1]
        arr = np.array([float(c) for c in v])
        np.set_printoptions(precision=4, suppress=True)
        print("exact zeta:", arr)
        break

zeta_paper = np.array([0.0000, 0.7209, -3.2848, 7.5597, -10.8951, 9.8706,
                       -4.0706, -2.6171, 5.2873, -3.5668, 1.0000])
print("roots of printed zeta (|.| ascending):")
for r in sorted(np.roots(zeta_paper[::-1]), key=abs):
    print(f"   {r:.6f}  |.|={abs(r):.6f}")
