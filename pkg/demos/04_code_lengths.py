"""How long must a code be? Classical coding vs a collective front end."""

import numpy as np

from trinecode import reliability as rl

eps = rl.bsc_epsilon()
print("classical ceiling", rl.ceiling("classical"), "hybrid ceiling", rl.ceiling("qchc"))

for k in (0.1, 0.62):
    ec = rl.scheme_exponent(k, "classical")
    eq = rl.scheme_exponent(k, "qchc")
    print(f"k/n={k}: E_C={ec:.4e}  E_QC={eq:.4e} at R={rl.scheme_rate(k, 'qchc'):.4f}")

# lengths reaching the usual 1e-9 target at k/n = 0.62
nq = rl.codelength_for(1e-9, 0.62, "qchc")
nc = rl.codelength_for(1e-9, 0.62, "classical")
print("n needed:", nq, "(hybrid) vs", nc, "(classical)")

# bound against length, log scale
for n in (100, 1000, 10000, 100000):
    print(n, [f"{rl.log2_error_bound(n, 0.62, s) * np.log10(2):8.1f}" for s in rl.SCHEMES])

# decoding cost grows like (n log n)^2, so shorter codes also run faster
print("speed ratio", rl.effective_rate(0.62, nq, 1.0) / rl.effective_rate(0.62, nc, 1.0))
print(rl.rows_to_csv(rl.qchc_compare([0.62], [600, 6000, 60000])))
