"""Two-node interpolation in a fixed cone GP_g where the classical problem is infeasible.

Data: psi(1) = 1, psi(2) = 4 with g = 4/(7 - 3s).
"""
from genpos import InterpProblem, blend, parse_expression, pick_matrix, solve_gp_g, solve_p, to_text
from genpos.classify import in_gp_g
from genpos.errors import PickIndefinite
from genpos.factor import minimal_degree_in_gp_g

nodes, values = (1, 2), (1, 4)
g = parse_expression("4/(7-3*s)")

pm = pick_matrix(nodes, values)
print("Pick matrix of the raw data:\n", pm.entries.real, "\ninertia", pm.inertia)
try:
    solve_p(InterpProblem(nodes, values))
except PickIndefinite as exc:
    print("classical problem:", exc)

problem = InterpProblem(nodes, values, "GP_g", g)
sol = solve_gp_g(problem)
print("GP_g interpolant:", to_text(sol.psi, 8))
print("node residuals:", sol.node_residuals, "certified:", bool(in_gp_g(sol.psi, g)))

psi_a = parse_expression("12*s*(s^2+9)/((s^2+2)*(49-9*s^2))")
psi_b = parse_expression("12*(s^3+3*s^2+6)/((s^2+2)*(49-9*s^2))")
mix = blend([psi_a, psi_b], [2 / 9, 7 / 9], problem)
print("blend with weights (2/9, 7/9):", to_text(mix.psi, 8))
print("minimal-degree member of GP_g:", to_text(minimal_degree_in_gp_g(g), 8))
