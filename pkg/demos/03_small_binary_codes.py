"""Gains from short codes over two nonorthogonal binary letters."""

import numpy as np

from trinecode import infotheory

# four words 001, 010, 100, 111 and the square-root measurement
kappas = np.arange(0.3, 0.9 + 1e-9, 0.005)
gains = np.array([infotheory.binary_block_gain(k, 3)["gain"] for k in kappas])
best = np.argmax(gains)
print(f"length 3: max gain {gains[best]:.2e} bits at overlap {kappas[best]:.3f}")
for k, g in zip(kappas[::10], gains[::10]):
    print(f"  {k:.2f} {g:+.2e}")

# length 2: three of the four words. The square-root measurement never wins
# here; an optimised von Neumann measurement does, by a tiny margin
for k in (0.9, 0.95, 0.975, 0.99):
    res = infotheory.binary_block_gain(k, 2)
    srm = infotheory.binary_block_gain(k, 2, decoder="srm", prior_step=0.02)
    print(f"length 2, overlap {k}: optimal {res['gain']:+.2e}, srm {srm['gain']:+.2e}, words {res['words']}")
