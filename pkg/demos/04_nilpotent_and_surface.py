"""Two more families with winding obstructions.

Nilpotent slice: three generators a1 -> A_l, a2 -> S_l, c1 -> B_l with
diagonal A_l, B_l built from conjugate roots of unity and the cyclic shift
S_l.  The relations [a1, a2] = c1^M and [a1, c1] = e hold *exactly*; the
central relation [c1, a2] = e only almost, and its winding is -1 for every
odd l, so the tuple is never close to an exact solution once the defect
2 sin(pi / l) dips below 1/2 (l >= 13).

Surface groups: the product of handle commutators with the clock/shift pair
in the first handle and identities elsewhere evaluates to w * 1 and winds
+1 regardless of the genus.
"""

import numpy as np

from stability_lab.linalg import evaluate_word
from stability_lab.winding import certify_obstruction, relator_defect, winding_sampled
from stability_lab.zoo import nilpotent, surface

print("Nilpotent slice, M = 2:")
for l in (5, 9, 13, 21):
    con = nilpotent(2, l)
    a, s, b = con.unitaries.matrices
    exact1 = np.max(np.abs(a @ s @ a.conj().T @ s.conj().T - b @ b))
    exact2 = np.max(np.abs(a @ b - b @ a))
    report = certify_obstruction(con.test_relators[0], con.unitaries)
    print(
        f"  l = {l:2d}: [A,S]=B^2 to {exact1:.1e}, [A,B]=1 to {exact2:.1e}, "
        f"central defect {report.defect:.4f}, wind {report.wind:+d} -> {report.verdict}"
    )

print()
print("Surface groups (n = 20):")
for g in (1, 2, 3):
    con = surface(g, 20)
    value = evaluate_word(con.test_relators[0], con.unitaries)
    scalar_err = np.max(np.abs(value - np.exp(2j * np.pi / 20) * np.eye(20)))
    wind = winding_sampled(con.test_relators[0], con.unitaries).wind
    defect = relator_defect(con.test_relators[0], con.unitaries)
    print(
        f"  genus {g}: relator value = w * 1 to {scalar_err:.1e}, "
        f"defect {defect:.4f}, wind {wind:+d}"
    )
