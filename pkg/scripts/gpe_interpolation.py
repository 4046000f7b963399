"""Even GP interpolation at +-1, +-2, +-3 and its one-sided real counterpart."""
import numpy as np

from genpos import InterpProblem, solve_gp_onesided_real, solve_gpe_symmetric, to_text
from genpos.classify import is_gp, is_gpe
from genpos.interpolate import gpe_basis

xs, ys = (1, 2, 3), (1, 4, 9)
sol = solve_gpe_symmetric(InterpProblem(xs, ys, "GPE_symmetric"))
print("GPE interpolant:", to_text(sol.psi, 8), " certified:", bool(is_gpe(sol.psi)))
for x in xs:
    print(f"  psi(+-{x}) = {sol.psi(x).real:.10f}, {sol.psi(-x).real:.10f}")

print("basis with parameters 25/24, 8/5, 90:")
for j, b in enumerate(gpe_basis(xs, ys, mu=[25 / 24, 8 / 5, 90])):
    print(f"  B{j + 1}:", np.round([b(x).real for x in xs], 12))

one = solve_gp_onesided_real(InterpProblem(xs, ys, "GP_onesided_real"))
print("one-sided GP interpolant:", to_text(one.psi, 8), " GP:", bool(is_gp(one.psi)))
print("  values:", [round(one.psi(x).real, 10) for x in xs])
