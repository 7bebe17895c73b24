"""Quasi-polynomials, chamber constancy and the Segre product formula.

Run: python demos/ehrhart_and_segre.py
"""

from fractions import Fraction as F

from toric_hk.catalog import pair_from_spec, parse_shorthand
from toric_hk.density import density_report, hilbert_density, product_pair, segre_g
from toric_hk.ehrhart import cell_constancy_check, chamber_lines, ehrhart_qp, reciprocity_check
from toric_hk.polytope import convex_hull

half = convex_hull([(0,), (F(1, 2),)])
qp = ehrhart_qp(half)
print(f"[0,1/2]: period {qp.period}")
for r in range(qp.period):
    print(f"  n = {r} mod {qp.period}: {[str(c) for c in qp.constituent(r)]}")
print("  reciprocity ok up to n=20:", reciprocity_check(half, 20, qp).ok)

tri = convex_hull([(0, 0), (1, 0), (0, 1)])
diag = convex_hull([(0, 0), (1, 1)])
print("\nchamber lines for triangle + diagonal:")
for line in chamber_lines(tri, diag):
    print("  ", line)
rep = cell_constancy_check(tri, diag, samples=60, seed=1)
print(f"  {rep.cells} cells, {len(rep.violations)} violations over {rep.samples} samples")

seg = pair_from_spec(parse_shorthand("segment"))
r, h = density_report(seg), hilbert_density(seg)
formula = segre_g(r.f, r.g, h, r.f, r.g, h)
direct = density_report(product_pair(seg, seg)).g
print("\nsegment # segment:")
for lam in [F(1, 2), F(3, 2)]:
    print(f"  g({lam}): formula {formula(lam)}, direct {direct(lam)}")
