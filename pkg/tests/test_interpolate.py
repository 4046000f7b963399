import numpy as np
import pytest
from hypothesis import given, strategies as st

from genpos import parse_expression as P, sharp
from genpos.classify import in_gp_g, is_gp, is_gpe, is_odd, is_p, is_po
from genpos.errors import (
    BadData, CertificateFailure, DuplicateNode, MixedProblems, NodeHitsGZero, NodeOnAxis, PickIndefinite,
)
from genpos.interpolate import (
    InterpProblem, blend, gpe_basis, onesided_basis, pick_matrix, pole_ladder, solve, solve_gp_g,
    solve_gp_onesided_real, solve_gpe_symmetric, solve_p, solve_po,
)
from genpos.polynomial import Polynomial
from genpos.ratfun import RationalFunction, equal, proportional
from strategies import open_rhp, positive

G = P("4/(7-3*s)")
PSI_A = P("12*s*(s^2+9)/((s^2+2)*(49-9*s^2))")
PSI_B = P("12*(s^3+3*s^2+6)/((s^2+2)*(49-9*s^2))")
PSI_D = P("8*(8*s^2+7)/(3*s*(49-9*s^2))")
PRINTED_BASIS = [
    Polynomial([4, 0, -1]) * Polynomial([9, 0, -1]) * Polynomial([25 / 24, 0, -1]),
    Polynomial([1, 0, -1]) * Polynomial([9, 0, -1]) * Polynomial([8 / 5, 0, -1]) * (1 / 9),
    Polynomial([1, 0, -1]) * Polynomial([4, 0, -1]) * Polynomial([90, 0, -1]) * (1 / 360),
]


def test_pick_matrices():
    pm = pick_matrix([1, 2], [1, 4])
    assert np.allclose(pm.entries, [[1, 5 / 3], [5 / 3, 2]], atol=1e-12)
    assert pm.det_sign == -1 and pm.inertia == (1, 1, 0) and not pm.psd
    pm = pick_matrix([1, 2], [5 / 2, 13 / 4])
    assert np.allclose(pm.entries, [[5 / 2, 23 / 12], [23 / 12, 13 / 8]], atol=1e-12)
    assert pm.psd
    assert pick_matrix([1], [1]).entries[0, 0] == pytest.approx(1)


def test_bad_nodes():
    with pytest.raises(NodeOnAxis):
        pick_matrix([1j], [1])
    with pytest.raises(BadData):
        pick_matrix([-1], [1])
    with pytest.raises(DuplicateNode):
        pick_matrix([1, 1], [1, 2])
    with pytest.raises(BadData):
        InterpProblem((1,), (1, 2))
    with pytest.raises(BadData):
        InterpProblem((1,), (1,), "GP_g")
    with pytest.raises(BadData):
        InterpProblem((1,), (1,), "nope")


def test_solve_p():
    with pytest.raises(PickIndefinite):
        solve_p(InterpProblem((1, 2), (1, 4)))
    sol = solve_p(InterpProblem((1, 2), (5 / 2, 13 / 4)))
    assert sol.psi.degree <= 2 and is_p(sol.psi)
    assert max(sol.node_residuals) <= 1e-7


def test_solve_p_single_nodes():
    assert equal(solve_p(InterpProblem((1,), (1j,))).psi, P("i"))
    assert solve_p(InterpProblem((1,), (0,))).psi.is_zero()
    z = np.array([1 + 1j, 2, 0.5 - 2j])
    w = P("(s^2+2*s+3)/(s+1) + 0.5*i")(z)
    sol = solve_p(InterpProblem(tuple(z), tuple(w)))
    assert is_p(sol.psi) and max(sol.node_residuals) < 1e-9


def test_pole_ladder_starts_at_origin():
    rungs = list(pole_ladder([1, 2], max_int=2, refinements=1))
    assert rungs[:3] == [(0.0,), (0.0, 1.0, -1.0), (0.0, 1.0, -1.0, 2.0, -2.0)]
    assert len(rungs) == 4


def test_solve_po():
    sol = solve_po(InterpProblem((1, 2), (5 / 2, 13 / 4), "PO"))
    form = sol.detail["foster"]
    assert sol.detail["rung"] == 0
    assert form.a_o == pytest.approx(4 / 3, abs=1e-9)
    assert form.terms[0][0] == pytest.approx(7 / 6, abs=1e-9)
    assert equal(sol.psi, P("(8*s^2+7)/(6*s)"))


def test_solve_gp_g():
    sol = solve_gp_g(InterpProblem((1, 2), (1, 4), "GP_g", G))
    assert max(sol.node_residuals) <= 1e-7
    assert in_gp_g(sol.psi, G)
    sol = solve_gp_g(InterpProblem((1, 2), (1, 4), "Odd_g", G))
    assert equal(sol.psi, PSI_D) and sol.psi.degree == 3
    assert is_odd(sol.psi) and in_gp_g(sol.psi, G)
    with pytest.raises(NodeHitsGZero):
        solve_gp_g(InterpProblem((7 / 3,), (1,), "GP_g", G))


def test_gp_g_with_unit_g_is_classical():
    a = solve_gp_g(InterpProblem((1, 2), (5 / 2, 13 / 4), "GP_g", P("1")))
    b = solve_p(InterpProblem((1, 2), (5 / 2, 13 / 4)))
    assert equal(a.psi, b.psi)


def test_blends():
    problem = InterpProblem((1, 2), (1, 4), "GP_g", G)
    sol = blend([PSI_A, PSI_B], [2 / 9, 7 / 9], problem)
    assert equal(sol.psi, G)
    odd = InterpProblem((1, 2), (1, 4), "Odd_g", G)
    sol = blend([PSI_A, PSI_D], [0.5, 0.5], odd)
    assert is_odd(sol.psi) and in_gp_g(sol.psi, G)
    with pytest.raises(BadData):
        blend([PSI_A, PSI_B], [0.5, 0.6], problem)
    with pytest.raises(BadData):
        blend([PSI_A, PSI_B], [-0.5, 1.5], problem)
    with pytest.raises(MixedProblems):
        blend([PSI_A, P("s")], [0.5, 0.5], problem)
    other = solve_p(InterpProblem((1, 2), (5 / 2, 13 / 4)))
    with pytest.raises(MixedProblems):
        blend([solve_gp_g(problem), other], [0.5, 0.5])


def test_blend_rejects_uncertifiable_result():
    # p_b alone is GP but not positive, so psi_b is not in GP_g
    problem = InterpProblem((1, 2), (1, 4), "GP_g", G)
    assert not in_gp_g(PSI_B, G)
    with pytest.raises(CertificateFailure):
        blend([PSI_B], [1.0], problem)


def test_gpe_symmetric():
    sol = solve_gpe_symmetric(InterpProblem((1, 2, 3), (1, 4, 9), "GPE_symmetric"))
    assert is_gpe(sol.psi)
    for x, y in zip((1, 2, 3), (1, 4, 9)):
        assert abs(sol.psi(x) - y) <= 1e-7 and abs(sol.psi(-x) - y) <= 1e-7
    with pytest.raises(BadData):
        solve_gpe_symmetric(InterpProblem((1,), (-1,), "GPE_symmetric"))
    with pytest.raises(BadData):
        solve_gpe_symmetric(InterpProblem((1 + 1j,), (1,), "GPE_symmetric"))


def test_printed_basis_table():
    for j, B in enumerate(PRINTED_BASIS):
        for k, (x, y) in enumerate(zip((1, 2, 3), (1, 4, 9))):
            want = y if j == k else 0
            assert abs(B(x) - want) <= 1e-9 and abs(B(-x) - want) <= 1e-9
    ours = gpe_basis([1, 2, 3], [1, 4, 9], mu=[25 / 24, 8 / 5, 90])
    for a, b in zip(ours, PRINTED_BASIS):
        assert a.allclose(b, 1e-12)


def test_basis_edge_cases():
    (b,) = gpe_basis([1], [2])
    assert b.allclose(Polynomial([3, 0, -1]), 1e-12)
    (b,) = onesided_basis([1], [1])
    r2 = np.sqrt(2)
    assert b.allclose(Polynomial([(r2 + 1) * r2, -(r2 + 1)]), 1e-12)
    assert gpe_basis([1, 2], [0, 1])[0].is_zero()


def test_gp_onesided():
    sol = solve_gp_onesided_real(InterpProblem((1, 2, 3), (1, 4, 9), "GP_onesided_real"))
    assert is_gp(sol.psi)
    for x, y in zip((1, 2, 3), (1, 4, 9)):
        assert abs(sol.psi(x) - y) <= 1e-7
    sol = solve_gp_onesided_real(InterpProblem((1, 2), (-1, 3), "GP_onesided_real"))
    assert is_gp(sol.psi) and abs(sol.psi(1) + 1) < 1e-9


def test_dispatch():
    assert equal(solve(InterpProblem((1, 2), (5 / 2, 13 / 4), "PO")).psi, P("(8*s^2+7)/(6*s)"))


nodes = st.lists(open_rhp, min_size=1, max_size=3, unique=True)


@given(nodes, positive(max_deg=3))
def test_solve_p_recovers_positive_data(z, p):
    w = p(np.asarray(z))
    if not np.all(np.isfinite(w)) or np.max(np.abs(w)) > 1e6:
        return
    sol = solve_p(InterpProblem(tuple(z), tuple(w)))
    assert is_p(sol.psi)
    assert max(sol.node_residuals) <= 1e-7 * (1 + np.max(np.abs(w)))
    assert sol.psi.degree <= len(z)
