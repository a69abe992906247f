"""From the collective measurement to a two-qubit gate sequence."""

import numpy as np

from trinecode import circuits, trine

np.set_printoptions(precision=4, suppress=True)

u = circuits.decoder_unitary()
print(u.real)

# Givens elimination, column by column
rots = circuits.two_level_decompose(u)
for r in rots:
    print(f"rotation on |{r.i:02b}>,|{r.j:02b}>\n", r.block.real)

# Gray-adjacent pairs need one controlled gate, the others three
seq = circuits.compile_two_qubit(rots)
print(seq.to_text())
print("gates:", len(seq), "residual:", np.max(np.abs(seq.matrix() - u)))

# run each code word through the circuit; |10> (singlet) never clicks
for x in trine.LETTERS:
    dist = circuits.outcome_distribution(seq, trine.codeword_state(x).vector, circuits.DECODER_OUTCOMES)
    print(x, {str(k): round(v, 5) for k, v in dist.items()})

# the single-letter optimum needs an ancilla qubit
ext = circuits.acc_extension()
acc = circuits.acc_circuit()
print(acc.to_text())
for x in trine.LETTERS:
    psi = ext.embed(trine.letter_state(x).vector)
    print(x, circuits.outcome_distribution(acc, psi, ext.outcome_map))
