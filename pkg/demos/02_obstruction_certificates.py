"""Machine-checkable "far from any exact representation" certificates.

A certificate for a homogeneous relator R and a unitary tuple X consists of
two measured numbers:

  * defect = || R(X) - 1 ||  (how well X almost satisfies the relation)
  * wind   = winding number of det( r R(X) + (1-r) 1 ) around 0

If defect < 1/2 and wind != 0, then no unitary tuple A with R(A) = 1 exists
within max-norm distance 1/(2 L(R)) of X, where L(R) is the letter weight
of R as written.  The verdict flips from "inconclusive" to "certified_far"
the moment the defect crosses 1/2: for the p2 family the defect is
2 sin(pi / n), which crosses at n = 13.
"""

from stability_lab import _fmt
from stability_lab.winding import certify_obstruction
from stability_lab.zoo import wallpaper_p2

for n in range(10, 17):
    con = wallpaper_p2(n)
    report = certify_obstruction(con.test_relators[0], con.unitaries, cross_check=True)
    print(
        f"p2 n = {n:2d}  dim {report.dim:3d}  defect {report.defect:.6f}  "
        f"wind {report.wind:+d}  radius 1/{report.radius_den}  ->  {report.verdict}"
    )

print()
print("Full JSON report for n = 13 (byte-stable across runs):")
con = wallpaper_p2(13)
report = certify_obstruction(con.test_relators[0], con.unitaries, cross_check=True)
print(_fmt.dumps(report.to_json_dict()))

print()
print("The same report from the command line:")
print("  stability-lab certify --family p2 --n 13 --cross-check")
