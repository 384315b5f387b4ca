"""The 17 wallpaper groups: 12 certified stable, 5 with explicit witnesses.

Two complementary computations:

1. A K-theoretic rank test on a built-in table: for each group, a
   two-dimensional noncommutative CW model of its C*-algebra has skeleta
   A_1, A_2 and a sheet count s, and

       rank K_0(A_1) = rank K_0(A_2)
           <=>  rank K_1(A_1) - rank K_1(A_2) = s

   certifies matricial stability.  Exactly 12 groups pass.

2. For the 5 groups that do not pass (p1, p2, p3, p4, p6 -- the purely
   rotational ones), explicit almost-representations built from the
   clock/shift pair whose designated relator has nonzero winding.  The
   torsion relations hold exactly; only the composite relation is almost.

The winding values stabilize at -2, -8, -3, -12 once n >= 5.  For the two
double-twist families (p4, p6) the scalar value exp(-4 pi i / n) sits past
the principal branch at n = 3 (true winding +4 / +6) and equals -1 at
n = 4, where the curve passes through zero and the winding is undefined.
"""

from stability_lab.crystal import classify_all
from stability_lab.errors import SingularCurveError
from stability_lab.winding import certify_obstruction, winding_spectral
from stability_lab.zoo import build_family

print("Rank test over the built-in table:")
for rec, verdict in classify_all():
    mark = "stable  " if verdict.status == "stable_certified" else "NO CERT "
    print(f"  {rec.name:<5} {mark} (i): {str(verdict.cond_i):<5} (ii): {verdict.cond_ii}")

print()
print("Witnesses for the five uncertified groups (n = 16):")
print("(p1 is covered by the commuting pair itself, family bs_mm with m=1)")
for family in ("bs_mm", "p2", "p3", "p4", "p6"):
    con = build_family(family, n=16, m=1 if family == "bs_mm" else None)
    report = certify_obstruction(con.test_relators[0], con.unitaries)
    print(
        f"  {family:<6} dim {report.dim:3d}  defect {report.defect:.4f}  "
        f"wind {report.wind:+d}  {report.verdict}"
    )

print()
print("Certificates activate once the defect drops below 1/2:")
for family, first_active in (("p2", 13), ("p3", 13), ("p4", 25), ("p6", 25)):
    con = build_family(family, n=first_active)
    report = certify_obstruction(con.test_relators[0], con.unitaries)
    print(f"  {family}: n = {first_active:2d} -> {report.verdict} (defect {report.defect:.4f})")

print()
print("Small-n behavior of the double-twist families:")
for family in ("p4", "p6"):
    for n in (3, 4, 5):
        con = build_family(family, n=n)
        try:
            wind = winding_spectral(con.test_relators[0], con.unitaries).wind
            print(f"  {family} n={n}: wind {wind:+d}")
        except SingularCurveError:
            print(f"  {family} n={n}: curve passes through 0 (winding undefined)")
