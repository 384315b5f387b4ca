"""Baumslag-Solitar groups: a winding family and a spectral-gap family.

BS(m, m) = <a, b | a b^m a^-1 = b^m>.  On the clock/shift pair both the
defining relator and the twist word a^m b a^-m b^-1 evaluate to the scalar
w^m * 1; the twist word's winding is m whenever n > 2|m|.

BS(2, 3) = <a, b | a b^2 a^-1 = b^3> is different: the almost-representation
a -> vtilde_n v_n, b -> u_n (a permutation rotated by 45 degrees on one
2-plane, and the full diagonal) has a *decaying* relator defect, yet the
commutator [a b a^-1, b] -- an element every finite-dimensional
representation must kill -- stays at operator distance exactly sqrt(3) from
the identity.  No winding is needed: the gap itself separates the tuple
from every representation.
"""

from stability_lab.winding import relator_defect, winding_spectral
from stability_lab.zoo import bs23, bs23_commutator_gap, bs_mm

print("BS(m, m) twist windings:")
for m in (-3, -1, 2, 3):
    n = max(2 * abs(m) + 6, 12)
    con = bs_mm(m, n)
    wind = winding_spectral(con.test_relators[0], con.unitaries).wind
    defect = relator_defect(con.test_relators[0], con.unitaries)
    print(f"  m = {m:+d}, n = {n:2d}: defect {defect:.4f}, wind {wind:+d}")

print()
print("BS(2, 3): defect decays, gap does not (shipped relator a b^3 a^-1 b^-2):")
print(f"  {'n':>3} {'dim':>5} {'relator defect':>15} {'commutator gap':>15}")
for n in (2, 4, 8, 16, 32):
    con = bs23(n)
    defect = relator_defect(con.defect_relator, con.unitaries)
    gap = bs23_commutator_gap(n)
    print(f"  {n:>3} {6 * n:>5} {defect:>15.6f} {gap:>15.9f}")
print("  sqrt(3) =", 3 ** 0.5)
