"""Members of GB_g need not share right-half-plane poles or zeros.

Runs the construction for a sample g, in both the positive (reflected) and the
literal variant, then counts over random g how often the zero sets coincide.
"""
import numpy as np

from genpos import gb_g_instability_demo, parse_expression, to_text
from genpos.polynomial import Polynomial
from genpos.ratfun import RationalFunction

g = parse_expression("(s-1)/(s-2-i)")
for literal in (False, True):
    d = gb_g_instability_demo(g, 0.01, 0.01, literal=literal)
    print("literal" if literal else "positive", "variant")
    print("  p1 =", to_text(d.p1, 6), " p2 =", to_text(d.p2, 6), " positive:", d.p_positive)
    print("  C+ zeros:", d.zeros1, d.zeros2, " distinct:", d.distinct_zeros)
    print("  C+ poles:", d.poles1, d.poles2, " distinct:", d.distinct_poles)

rng = np.random.default_rng(3)
tally = {False: [0, 0], True: [0, 0]}
trials = 200
for _ in range(trials):
    pts = rng.uniform(0.2, 3, 4) + 1j * rng.uniform(-3, 3, 4)
    gr = RationalFunction(Polynomial.from_roots(pts[:2]), Polynomial.from_roots(pts[2:]))
    for literal in (False, True):
        d = gb_g_instability_demo(gr, 0.01, 0.01, literal=literal)
        tally[literal][0] += d.distinct_zeros
        tally[literal][1] += d.distinct_poles
for literal, (z, p) in tally.items():
    name = "literal " if literal else "positive"
    print(f"{name}: distinct zeros {z}/{trials}, distinct poles {p}/{trials}")
