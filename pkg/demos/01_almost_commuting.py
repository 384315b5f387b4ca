"""The clock-and-shift pair: almost commuting, never close to commuting.

Omega_n = diag(w, w^2, ..., w^n) with w = exp(2 pi i / n) and the cyclic
shift S_n commute up to the scalar w: their multiplicative commutator is
exactly w * 1.  So the commutation defect 2 sin(pi / n) goes to zero, yet
the winding number of

    r |-> det( r * [Omega, S] + (1 - r) * 1 ) = (r w + 1 - r)^n

is +1 for every n, and that integer cannot change along any path that keeps
the curve away from zero.  Tensoring with an identity block multiplies the
winding by the block size: the obstruction scales, it never dilutes.
"""

import numpy as np

from stability_lab.linalg import UnitaryTuple, evaluate_word, tensor_identity
from stability_lab.relators import Generator, parse_word
from stability_lab.winding import relator_defect, winding_sampled, winding_spectral
from stability_lab.zoo import voiculescu, voiculescu_pair

gens = (Generator("a"), Generator("b"))

for n in (4, 8, 16, 32, 64):
    con = voiculescu_pair(n)
    word = con.test_relators[0]
    defect = relator_defect(word, con.unitaries)
    wind = winding_spectral(word, con.unitaries).wind
    print(f"n = {n:3d}   || [Omega,S] - 1 || = {defect:.6f}   wind = {wind:+d}")

print()
print("The two winding algorithms agree (spectral factorization vs")
print("adaptive determinant sampling):")
con = voiculescu_pair(24)
word = con.test_relators[0]
print("  spectral:", winding_spectral(word, con.unitaries))
print("  sampled: ", winding_sampled(word, con.unitaries))

print()
print("Commutator value is the exact scalar w * 1:")
omega, shift = voiculescu(6)
tup = UnitaryTuple((omega, shift), ("a", "b"), 1e-12)
value = evaluate_word(parse_word("[a,b]", gens), tup)
print("  max deviation:", np.max(np.abs(value - np.exp(2j * np.pi / 6) * np.eye(6))))

print()
print("Tensoring with identity blocks scales the winding:")
base = voiculescu_pair(10)
for k in (1, 2, 3):
    scaled = tensor_identity(base.unitaries, k)
    wind = winding_spectral(base.test_relators[0], scaled).wind
    print(f"  k = {k}: dimension {scaled.dim:3d}, wind = {wind:+d}")
