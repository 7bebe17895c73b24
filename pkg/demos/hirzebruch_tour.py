"""Hilbert-Kunz data for a few Hirzebruch polygons and the fit residual.

Run: python demos/hirzebruch_tour.py
"""

from toric_hk import density_report, hk_value
from toric_hk.catalog import pair_from_spec, parse_shorthand
from toric_hk.density import poly_str

for params in ["(1,1,1)", "(1,2,1)", "(1,1,2)"]:
    pair = pair_from_spec(parse_shorthand("hirzebruch" + params))
    rep = density_report(pair)
    print(f"hirzebruch{params}: e_HK={rep.e_hk}, beta={rep.beta}")
    bs = rep.g.breakpoints
    for (a, b), gp in zip(zip(bs, bs[1:]), rep.g.pieces):
        print(f"  g on [{a},{b}) = {poly_str(gp)}")
    for q in [4, 8, 16, 32]:
        hk = hk_value(pair, q)
        r = hk - rep.e_hk * q ** 3 - rep.beta * q ** 2
        print(f"  q={q:<2} HK={hk:<6} residual/q={float(r / q):+.3f}")
