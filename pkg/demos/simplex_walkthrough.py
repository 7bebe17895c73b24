"""Densities of the plane simplex, step by step.

Run: python demos/simplex_walkthrough.py
"""

from fractions import Fraction as F

from toric_hk import density_report, hk_value
from toric_hk.catalog import pair_from_spec, parse_shorthand
from toric_hk.counting import f_n, g_n
from toric_hk.density import poly_str

pair = pair_from_spec(parse_shorthand("simplex"))
rep = density_report(pair)

print("breakpoints:", [str(b) for b in rep.breakpoints])
for (a, b), fp, gp in zip(zip(rep.f.breakpoints, rep.f.breakpoints[1:]), rep.f.pieces, rep.g.pieces):
    print(f"  [{a},{b}):  f = {poly_str(fp):<22} g = {poly_str(gp)}")
print("e_HK =", rep.e_hk, "  beta =", rep.beta)

print("\nHK(q) from counting:")
for q in [2, 3, 4, 8]:
    print(f"  q={q:<2} HK={hk_value(pair, q):<4} q^3={q ** 3}")

lam = F(7, 10)
print(f"\nat lambda={lam}: f={rep.f(lam)}, g={rep.g(lam)}")
for q in [8, 16, 32, 64]:
    print(f"  q={q:<2} f_n={float(f_n(pair, q, lam)):.5f}  g_n={float(g_n(pair, q, lam, f=rep.f)):.5f}")
