"""Odd interpolant in GP_g from a Foster (lossless) fit of the transformed data."""
from genpos import InterpProblem, parse_expression, sharp, solve_gp_g, solve_po, to_text
from genpos.classify import in_gp_g, is_odd

g = parse_expression("4/(7-3*s)")
# targets for p = psi / (g g#) at the nodes 1, 2
po = solve_po(InterpProblem((1, 2), (5 / 2, 13 / 4), "PO"))
form = po.detail["foster"]
print("Foster fit on rung", po.detail["rung"], ": a_o =", form.a_o, " terms =", form.terms)
print("p_d =", to_text(po.psi, 8))

psi_d = g * po.psi * sharp(g)
print("psi_d = g p_d g# =", to_text(psi_d, 8), " degree", psi_d.degree)
print("odd:", bool(is_odd(psi_d)), " in GP_g:", bool(in_gp_g(psi_d, g)))
print("psi_d(1), psi_d(2) =", psi_d(1.0), psi_d(2.0))

sol = solve_gp_g(InterpProblem((1, 2), (1, 4), "Odd_g", g))
print("solver, class Odd_g:", to_text(sol.psi, 8))
