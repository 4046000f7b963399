"""Nevanlinna-Pick interpolation in P, PO, GP_g, Odd_g and the even/one-sided GP classes.

Every solver returns an :class:`InterpSolution` whose node residuals and
class certificate have been checked; nothing uncertified leaves this module.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np
from scipy.optimize import nnls

from .classify import ClassReport, check_g, in_gp_g, is_gp, is_gpe, is_p, is_po
from .config import DEFAULT, Tolerances
from .errors import (
    BadData,
    BudgetExhausted,
    CertificateFailure,
    DegeneratePSD,
    DuplicateNode,
    InfeasibleBasis,
    MixedProblems,
    NodeHitsGZero,
    NodeOnAxis,
    PickIndefinite,
    VerificationFailure,
)
from .foster import FosterForm
from .polynomial import Polynomial
from .ratfun import RationalFunction, sharp

__all__ = [
    "CONSTRAINTS",
    "InterpProblem",
    "InterpSolution",
    "PickMatrix",
    "blend",
    "pick_matrix",
    "solve",
    "solve_gp_g",
    "solve_gp_onesided_real",
    "solve_gpe_symmetric",
    "solve_p",
    "solve_po",
]

CONSTRAINTS = ("P", "PO", "GP_g", "Odd_g", "GPE_symmetric", "GP_onesided_real")


@dataclass(frozen=True)
class InterpProblem:
    nodes: tuple[complex, ...]
    values: tuple[complex, ...]
    constraint: str = "P"
    g: RationalFunction | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(complex(z) for z in self.nodes))
        object.__setattr__(self, "values", tuple(complex(w) for w in self.values))
        if len(self.nodes) != len(self.values):
            raise BadData("nodes and values differ in length")
        if not self.nodes:
            raise BadData("at least one interpolation node is required")
        if self.constraint not in CONSTRAINTS:
            raise BadData(f"unknown constraint {self.constraint!r}; expected one of {CONSTRAINTS}")
        if self.constraint in ("GP_g", "Odd_g") and self.g is None:
            raise BadData(f"constraint {self.constraint} needs a function g")

    def same_data(self, other: "InterpProblem") -> bool:
        return (
            self.constraint == other.constraint
            and np.allclose(self.nodes, other.nodes, rtol=1e-12, atol=0)
            and np.allclose(self.values, other.values, rtol=1e-12, atol=0)
            and (self.g is other.g or (self.g is not None and other.g is not None and _same_g(self.g, other.g)))
        )


def _same_g(a: RationalFunction, b: RationalFunction) -> bool:
    from .ratfun import equal

    return equal(a, b)


@dataclass(frozen=True)
class PickMatrix:
    entries: np.ndarray
    min_eig: float
    det_sign: int
    inertia: tuple[int, int, int]  # (positive, negative, zero)
    threshold: float

    @property
    def psd(self) -> bool:
        return self.min_eig >= -self.threshold


@dataclass(frozen=True)
class InterpSolution:
    psi: RationalFunction
    certificate: ClassReport
    node_residuals: tuple[float, ...]
    problem: InterpProblem
    detail: dict[str, Any] = field(default_factory=dict, compare=False)


# ---------------------------------------------------------------------------
# data checks and the Pick matrix


def _check_nodes(nodes: Sequence[complex], tol: Tolerances) -> np.ndarray:
    z = np.asarray(nodes, dtype=complex)
    for k, s in enumerate(z):
        if abs(s.real) <= tol.axis * (1 + abs(s)):
            raise NodeOnAxis(f"node {s} lies on the imaginary axis")
        if s.real < 0:
            raise BadData(f"node {s} lies in the left half plane")
        for t in z[:k]:
            if abs(s - t) <= tol.cluster * (1 + max(abs(s), abs(t))):
                raise DuplicateNode(f"nodes {t} and {s} coincide")
    return z


def pick_matrix(nodes: Sequence[complex], values: Sequence[complex], tol: Tolerances = DEFAULT) -> PickMatrix:
    """``Pi[j, k] = (w_j + conj(w_k)) / (s_j + conj(s_k))`` with its eigenvalue summary."""
    z = _check_nodes(nodes, tol)
    w = np.asarray(values, dtype=complex)
    if w.shape != z.shape:
        raise BadData("nodes and values differ in length")
    Pi = (w[:, None] + w.conj()[None, :]) / (z[:, None] + z.conj()[None, :])
    Pi = 0.5 * (Pi + Pi.conj().T)
    eig = np.linalg.eigvalsh(Pi)
    n = len(z)
    scale = max(float(np.trace(Pi).real) / n, float(np.finfo(float).eps * np.max(np.abs(Pi), initial=0.0)))
    thr = tol.pick * scale
    pos = int(np.sum(eig > thr))
    neg = int(np.sum(eig < -thr))
    det_sign = 0 if pos + neg < n else (-1) ** neg
    return PickMatrix(Pi, float(eig.min()), det_sign, (pos, neg, n - pos - neg), thr)


def _require_psd(pm: PickMatrix, what: str) -> None:
    if not pm.psd:
        pos, neg, zero = pm.inertia
        raise PickIndefinite(
            f"{what}: Pick matrix is indefinite (inertia +{pos}/-{neg}/0:{zero}, min eigenvalue {pm.min_eig:.3g})",
            pm,
        )


def _residuals(psi: RationalFunction, problem: InterpProblem) -> tuple[float, ...]:
    vals = psi(np.asarray(problem.nodes))
    return tuple(float(abs(v - w)) for v, w in zip(vals, problem.values))


def _finish(psi, cert, problem, tol, **detail) -> InterpSolution:
    res = _residuals(psi, problem)
    for r, w in zip(res, problem.values):
        if not r <= tol.residual * (1 + abs(w)):
            raise VerificationFailure(f"node residual {r:.3g} exceeds tolerance")
    if not cert:
        raise CertificateFailure(f"interpolant {psi} fails its {problem.constraint} certificate", cert)
    return InterpSolution(psi, cert, res, problem, detail)


# ---------------------------------------------------------------------------
# classical problem in P


def _blaschke_factor(a: complex) -> RationalFunction:
    return RationalFunction(Polynomial([-a, 1]), Polynomial([a.conjugate(), 1]))


def _schur(nodes: np.ndarray, b: np.ndarray, tol: Tolerances, notes: list) -> RationalFunction:
    """Bounded interpolant of ``b_j`` at ``nodes`` by the half-plane Schur algorithm."""
    if nodes.size == 0:
        return RationalFunction.constant(0.0)  # central choice
    s1, b1 = nodes[0], b[0]
    slack = 1 - abs(b1) ** 2
    if slack < -tol.pick:
        raise PickIndefinite(f"reduced value {b1} leaves the unit disk", None)
    if slack <= tol.pick:
        # boundary value: the interpolant is the unimodular constant
        c = b1 / abs(b1)
        if np.any(np.abs(b - c) > np.sqrt(tol.pick) * 10):
            raise DegeneratePSD(f"singular Pick data forces the constant {c}, which misses the other nodes")
        notes.append(f"forced constant at node {s1}")
        return RationalFunction.constant(c)
    rest_nodes = nodes[1:]
    beta = (rest_nodes - s1) / (rest_nodes + s1.conjugate())
    rest = ((b[1:] - b1) / (1 - b1.conjugate() * b[1:])) / beta
    f1 = _schur(rest_nodes, rest, tol, notes)
    bf = _blaschke_factor(s1) * f1
    return (bf + b1) / (bf * b1.conjugate() + 1.0)


def solve_p(problem: InterpProblem, tol: Tolerances = DEFAULT) -> InterpSolution:
    """Positive interpolant by Nevanlinna reduction (central terminal parameter).

    The data are moved to the unit disk by the Cayley transform, reduced one
    node at a time with Blaschke factors, and the result mapped back.  The
    degree of the answer is at most the number of nodes.
    """
    pm = pick_matrix(problem.nodes, problem.values, tol)
    _require_psd(pm, "classical problem in P")
    z = np.asarray(problem.nodes)
    w = np.asarray(problem.values)
    b = (1 - w) / (1 + w)
    notes: list[str] = []
    f = _schur(z, b, tol, notes)
    one = RationalFunction.constant(1.0)
    p = (one - f) / (one + f)
    return _finish(p, is_p(p, tol), problem, tol, pick=pm, notes=notes)


# ---------------------------------------------------------------------------
# positive odd (Foster) interpolants


def pole_ladder(nodes: Sequence[complex], max_int: int = 8, refinements: int = 3):
    """Pole sets (imaginary parts) tried in order: {0}, {0,+-1}, {0,+-1,+-2}, ..., then finer grids."""
    for m in range(max_int + 1):
        yield tuple([0.0] + [float(k) * sgn for k in range(1, m + 1) for sgn in (1, -1)])
    span = max(float(max_int), 2 * max(abs(complex(z).imag) for z in nodes))
    for r in range(1, refinements + 1):
        h = 2.0 ** -r
        k = int(np.ceil(span / h))
        yield tuple(h * np.arange(-k, k + 1))


def _foster_fit(z: np.ndarray, w: np.ndarray, poles: Sequence[float]):
    cols = [np.full_like(z, 1j), np.full_like(z, -1j), z]
    cols += [1.0 / (z - 1j * r) for r in poles]
    A = np.stack(cols, axis=1)
    weight = 1.0 / (1 + np.abs(w))
    A = A * weight[:, None]
    rhs = w * weight
    Ar = np.concatenate([A.real, A.imag])
    br = np.concatenate([rhs.real, rhs.imag])
    x, _ = nnls(Ar, br, maxiter=50 * Ar.shape[1])
    form = FosterForm(
        float(x[0] - x[1]),
        float(x[2]),
        tuple((float(a), float(r)) for a, r in zip(x[3:], poles) if a > 0),
    )
    fit = form.to_rational()(z)
    rel = np.max(np.abs(fit - w) / (1 + np.abs(w)))
    return form, float(rel)


def solve_po(problem: InterpProblem, tol: Tolerances = DEFAULT, max_int: int = 8, refinements: int = 3) -> InterpSolution:
    """Foster-form interpolant ``i r_o + a_o s + sum a_j/(s - i r_j)``.

    The pole set climbs a deterministic ladder; on each rung the parameters
    are fitted by nonnegative least squares, and the first exact fit wins.
    """
    pm = pick_matrix(problem.nodes, problem.values, tol)
    _require_psd(pm, "positive odd problem")
    z = np.asarray(problem.nodes)
    w = np.asarray(problem.values)
    best = None
    for rung, poles in enumerate(pole_ladder(problem.nodes, max_int, refinements)):
        form, rel = _foster_fit(z, w, poles)
        if best is None or rel < best[1]:
            best = (form, rel)
        if rel <= tol.residual:
            p = form.to_rational()
            return _finish(p, is_po(p, tol), problem, tol, pick=pm, foster=form, rung=rung)
    raise BudgetExhausted(f"no Foster fit within the pole ladder (best residual {best[1]:.3g})", best)


# ---------------------------------------------------------------------------
# GP_g and Odd_g by rescaling


def solve_gp_g(problem: InterpProblem, tol: Tolerances = DEFAULT) -> InterpSolution:
    """``psi = g p g#`` where ``p`` solves the rescaled problem ``p(s_j) = w_j / (g g#)(s_j)``.

    With constraint ``Odd_g`` the rescaled problem is solved in PO instead of P.
    """
    g = problem.g
    check_g(g, tol)
    _check_nodes(problem.nodes, tol)
    ggs = g * sharp(g)
    z = np.asarray(problem.nodes)
    special = [r for rl in (ggs.zeros(tol), ggs.poles(tol)) for r, _ in rl]
    for s in z:
        if any(abs(s - r) <= tol.cluster * (1 + abs(s)) for r in special):
            raise NodeHitsGZero(f"g g# vanishes or has a pole at node {s}")
    scale = ggs(z)
    targets = tuple(np.asarray(problem.values) / scale)
    odd = problem.constraint == "Odd_g"
    inner = InterpProblem(problem.nodes, targets, "PO" if odd else "P")
    sol = solve_po(inner, tol) if odd else solve_p(inner, tol)
    psi = g * sol.psi * sharp(g)
    cert = in_gp_g(psi, g, tol)
    if odd and cert:
        po = is_po(cert.detail["p"], tol)
        cert = ClassReport(bool(po), po.witness, min(cert.margin, po.margin), {**cert.detail, "po": po})
    return _finish(psi, cert, problem, tol, p=sol.psi, targets=targets, inner=sol)


# ---------------------------------------------------------------------------
# real data: even GP polynomials and one-sided GP sums


def _real_data(problem: InterpProblem, nonneg: bool, tol: Tolerances):
    z = _check_nodes(problem.nodes, tol)
    w = np.asarray(problem.values)
    if np.any(np.abs(z.imag) > 0) or np.any(np.abs(w.imag) > 0):
        raise BadData(f"{problem.constraint} needs real nodes and real values")
    x, y = z.real, w.real
    if nonneg and np.any(y < 0):
        raise BadData("GPE interpolation needs nonnegative values")
    return x, y


def _basis_parameters(x: np.ndarray, y: np.ndarray, mu: Sequence[float] | None):
    """``(kappa_j, mu_j, P_j)`` with ``kappa_j (mu_j - x_j^2) P_j = y_j``, ``kappa_j > 0``, ``mu_j >= 0``."""
    out = []
    for j, (xj, yj) in enumerate(zip(x, y)):
        P = float(np.prod([xk**2 - xj**2 for k, xk in enumerate(x) if k != j]))
        if yj == 0:
            out.append((0.0, 0.0, P))
            continue
        if mu is not None:
            m = float(mu[j])
        else:
            m = xj**2 + yj / P
            if m < 0:
                # any mu in [0, x_j^2) works; kappa absorbs the rest
                m = xj**2 / 2
        if m < 0 or m == xj**2:
            raise InfeasibleBasis(f"no admissible basis parameter at node {xj}")
        kappa = yj / ((m - xj**2) * P)
        if not kappa > 0:
            raise InfeasibleBasis(f"basis parameter mu={m} at node {xj} needs a negative gain")
        out.append((kappa, m, P))
    return out


def _others(x: np.ndarray, j: int) -> Polynomial:
    out = Polynomial([1.0])
    for k, xk in enumerate(x):
        if k != j:
            out = out * Polynomial([xk**2, 0, -1])
    return out


def gpe_basis(x: Sequence[float], y: Sequence[float], mu: Sequence[float] | None = None) -> list[Polynomial]:
    """``B_j = kappa_j (mu_j - s^2) prod_{k != j} (x_k^2 - s^2)``; ``B_j(+-x_k) = y_j delta_jk``."""
    x, y = np.asarray(x, float), np.asarray(y, float)
    out = []
    for j, (kappa, m, _) in enumerate(_basis_parameters(x, y, mu)):
        out.append(Polynomial([kappa * m, 0, -kappa]) * _others(x, j) if kappa else Polynomial([0.0]))
    return out


def onesided_basis(x: Sequence[float], y: Sequence[float], mu: Sequence[float] | None = None) -> list[Polynomial]:
    """``psi_j = kappa_j (a_j + x_j)(a_j - s) prod_{k != j} (x_k^2 - s^2)`` with ``a_j = sqrt(mu_j)``.

    This is ``g_j g_j# p_j`` for the even basis term and the positive
    ``p_j = (a_j + x_j)/(a_j + s)``, which cancels the left root of ``mu_j - s^2``.
    """
    x, y = np.asarray(x, float), np.asarray(y, float)
    out = []
    for j, (kappa, m, _) in enumerate(_basis_parameters(x, y, mu)):
        if not kappa:
            out.append(Polynomial([0.0]))
            continue
        a = np.sqrt(m)
        out.append(Polynomial([kappa * (a + x[j]) * a, -kappa * (a + x[j])]) * _others(x, j))
    return out


def solve_gpe_symmetric(problem: InterpProblem, tol: Tolerances = DEFAULT, mu: Sequence[float] | None = None) -> InterpSolution:
    """Real even GP polynomial with ``psi(+-x_j) = y_j``, as a sum of even basis terms."""
    x, y = _real_data(problem, True, tol)
    terms = gpe_basis(x, y, mu)
    psi = RationalFunction(sum(terms[1:], terms[0]))
    sol = _finish(psi, is_gpe(psi, tol), problem, tol, basis=terms)
    mirrored = psi(-x)
    if np.any(np.abs(mirrored - y) > tol.residual * (1 + np.abs(y))):
        raise VerificationFailure("even interpolant misses the mirrored nodes")
    return sol


def solve_gp_onesided_real(problem: InterpProblem, tol: Tolerances = DEFAULT, mu: Sequence[float] | None = None) -> InterpSolution:
    """Real GP polynomial with ``psi(x_j) = y_j`` only, as a sum of ``g_j g_j# p_j``."""
    x, y = _real_data(problem, False, tol)
    terms = onesided_basis(x, y, mu)
    psi = RationalFunction(sum(terms[1:], terms[0]))
    return _finish(psi, is_gp(psi, tol), problem, tol, basis=terms)


# ---------------------------------------------------------------------------


def certify(psi: RationalFunction, problem: InterpProblem, tol: Tolerances = DEFAULT) -> ClassReport:
    """Class certificate of ``psi`` against the problem's constraint."""
    c = problem.constraint
    if c == "P":
        return is_p(psi, tol)
    if c == "PO":
        return is_po(psi, tol)
    if c == "GPE_symmetric":
        return is_gpe(psi, tol)
    if c == "GP_onesided_real":
        return is_gp(psi, tol)
    rep = in_gp_g(psi, problem.g, tol)
    if c == "Odd_g" and rep:
        po = is_po(rep.detail["p"], tol)
        return ClassReport(bool(po), po.witness, po.margin, {**rep.detail, "po": po})
    return rep


def blend(
    solutions: Sequence[InterpSolution | RationalFunction],
    weights: Sequence[float],
    problem: InterpProblem | None = None,
    tol: Tolerances = DEFAULT,
) -> InterpSolution:
    """Affine combination of interpolants of the same data, recertified from scratch.

    Candidates may be bare rational functions, in which case ``problem``
    supplies the data; their node residuals are checked but their class
    membership is not assumed.  Only the blend is certified.
    """
    if len(solutions) != len(weights) or not solutions:
        raise BadData("need one weight per solution")
    weights = [float(wt) for wt in weights]
    if abs(sum(weights) - 1) > 1e-12:
        raise BadData(f"weights sum to {sum(weights)}, not 1")
    for sol in solutions:
        if isinstance(sol, InterpSolution):
            if problem is None:
                problem = sol.problem
            elif not problem.same_data(sol.problem):
                raise MixedProblems("solutions interpolate different problems")
    if problem is None:
        raise BadData("bare candidates need an explicit problem")
    if any(wt < 0 for wt in weights) and problem.constraint not in ("Odd_g", "PO"):
        raise BadData("negative weights are only allowed for odd constraints")
    funcs = [s.psi if isinstance(s, InterpSolution) else s for s in solutions]
    for f in funcs:
        res = _residuals(f, problem)
        if any(r > tol.residual * (1 + abs(w)) for r, w in zip(res, problem.values)):
            raise MixedProblems(f"candidate {f} does not interpolate the problem data")
    psi = RationalFunction.constant(0.0)
    for f, wt in zip(funcs, weights):
        if wt:
            psi = psi + f.scale(wt)
    return _finish(psi, certify(psi, problem, tol), problem, tol, weights=tuple(weights))


_SOLVERS = {
    "P": solve_p,
    "PO": solve_po,
    "GP_g": solve_gp_g,
    "Odd_g": solve_gp_g,
    "GPE_symmetric": solve_gpe_symmetric,
    "GP_onesided_real": solve_gp_onesided_real,
}


def solve(problem: InterpProblem, tol: Tolerances = DEFAULT) -> InterpSolution:
    return _SOLVERS[problem.constraint](problem, tol)
