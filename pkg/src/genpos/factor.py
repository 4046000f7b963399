"""Structural factorizations of generalized positive functions.

* :func:`factor_gp` -- ``psi = g p g#`` with ``p`` positive and ``g, 1/g``
  analytic in the open left half plane.
* :func:`spectral_factor_gpe` / :func:`gpe_product_form` -- ``psi = g g#``
  for even GP functions and the equivalent product of quadratic factors.
* :func:`minimal_degree_in_gp_g` -- lowest-degree member of the cone GP_g.
* :func:`odd_canonical` -- odd functions as ``g (Foster form) g#``.
* :func:`positive_counterexample` -- positive ``p`` with ``h + p`` vanishing
  in the open right half plane, for a non-positive ``h``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .classify import (
    ClassReport,
    check_g,
    in_gp_g,
    is_gp,
    is_gpe,
    is_odd,
    is_p,
)
from .config import DEFAULT, Tolerances
from .errors import (
    BadData,
    InconsistentRoutes,
    NotGP,
    NotGPE,
    NotOdd,
    NoWitness,
    UnpairedRoot,
    VerificationFailure,
)
from .foster import FosterForm, foster_decompose
from .polynomial import Polynomial
from .ratfun import RationalFunction, equal, on_axis, region_split, sharp

__all__ = [
    "FosterForm",
    "GpFactorization",
    "GpeProductForm",
    "factor_gp",
    "gpe_product_form",
    "minimal_degree_in_gp_g",
    "odd_canonical",
    "odd_orthogonality_check",
    "positive_counterexample",
    "spectral_factor_gpe",
    "axis_sweep",
]


@dataclass(frozen=True)
class GpFactorization:
    g: RationalFunction
    p: RationalFunction
    s_o: complex

    def product(self) -> RationalFunction:
        return self.g * self.p * sharp(self.g)


@dataclass(frozen=True)
class GpeProductForm:
    """``c * prod(1 - a_j (1 + (s - i b_j)^2)) / prod(1 - c_k (1 + (s - i d_k)^2))``."""

    c: float
    numerator: tuple[tuple[float, float], ...]
    denominator: tuple[tuple[float, float], ...]

    @staticmethod
    def _quad(alpha: float, beta: float) -> Polynomial:
        # 1 - alpha (1 + (s - i beta)^2)
        shifted = Polynomial([-1j * beta, 1])
        return Polynomial([1]) - (Polynomial([1]) + shifted * shifted) * alpha

    def to_rational(self) -> RationalFunction:
        num = Polynomial([self.c])
        for a, b in self.numerator:
            num = num * self._quad(a, b)
        den = Polynomial([1])
        for a, b in self.denominator:
            den = den * self._quad(a, b)
        return RationalFunction(num, den)


def axis_sweep(limit: int = 64):
    """Deterministic sweep of axis points: 0, +-1, +-2, ..., then +-1/2, +-3/2, ..."""
    yield 0.0
    for k in range(1, limit + 1):
        yield float(k)
        yield float(-k)
    for k in range(limit):
        yield k + 0.5
        yield -(k + 0.5)
    for k in range(1, 4 * limit):
        yield k / 7.0 + 1 / 13.0
        yield -(k / 7.0 + 1 / 13.0)


def _pick_normalization_point(psi: RationalFunction, g: RationalFunction, tol: Tolerances) -> complex:
    roots = [z for z, _ in psi.zeros(tol)] + [z for z, _ in psi.poles(tol)]
    roots += [z for z, _ in g.zeros(tol)] + [z for z, _ in g.poles(tol)]
    for w in axis_sweep():
        s = complex(0.0, w)
        if any(abs(s - z) <= 1e-3 * (1 + abs(z)) for z in roots):
            continue
        val = psi(s)
        if np.isfinite(val) and abs(val) > 0:
            return s
    raise VerificationFailure("no axis point with psi finite and nonzero was found")


def _local_coefficient(gain: complex, zeros, poles, at: complex, radius: float) -> complex:
    """``lim psi(s) / (s - at)^m`` from pole/zero data, skipping the roots at ``at``."""
    c = complex(gain)
    for z, m in zeros:
        if abs(z - at) > radius:
            c *= (at - z) ** m
    for z, m in poles:
        if abs(z - at) > radius:
            c /= (at - z) ** m
    return c


def factor_gp(psi: RationalFunction, s_o: complex | None = None, tol: Tolerances = DEFAULT) -> GpFactorization:
    """Factor a GP function as ``g p g#`` with ``g(s_o) = 1`` and ``p(s_o) = psi(s_o)``.

    Right-half-plane zeros and poles of ``psi`` go to ``g`` at full
    multiplicity.  An imaginary-axis root of signed multiplicity ``m`` gives
    ``g`` the exponent ``m/2`` when ``m`` is even; for odd ``m`` the exponent
    is ``(m+1)/2`` or ``(m-1)/2``, whichever leaves ``p`` with a positive
    residue (respectively a zero with positive derivative).  The choice is
    read off the sign of the local coefficient of ``psi`` at the root.
    """
    if psi.is_zero():
        raise BadData("cannot factor the zero function")
    rep = is_gp(psi, tol)
    if not rep:
        raise NotGP(f"not generalized positive: {rep.witness}", rep)
    zeros, poles = psi.zeros(tol), psi.poles(tol)
    zp, za, _ = region_split(zeros, tol)
    pp, pa, _ = region_split(poles, tol)
    scale = 1 + max([abs(z) for z, _ in zeros] + [abs(z) for z, _ in poles] + [0.0])
    radius = tol.cluster * scale

    g_zeros = [z for z, m in zp for _ in range(m)]
    g_poles = [z for z, m in pp for _ in range(m)]
    signed = [(z, m) for z, m in za] + [(z, -m) for z, m in pa]
    for z, m in signed:
        if m % 2 == 0:
            k = m // 2
        else:
            c = _local_coefficient(psi.gain, zeros, poles, z, radius)
            k_pole = (m + 1) // 2
            k = k_pole if c.real * (-1) ** (k_pole % 2) > 0 else (m - 1) // 2
        if k > 0:
            g_zeros.extend([z] * k)
        elif k < 0:
            g_poles.extend([z] * (-k))
    g = RationalFunction(Polynomial.from_roots(g_zeros), Polynomial.from_roots(g_poles), tol)

    if s_o is None:
        s_o = _pick_normalization_point(psi, g, tol)
    else:
        s_o = complex(s_o)
        if not on_axis(s_o, tol):
            raise BadData(f"normalization point {s_o} is not on the imaginary axis")
        s_o = complex(0.0, s_o.imag)
    g_val = g(s_o)
    psi_val = psi(s_o)
    if not (np.isfinite(g_val) and abs(g_val) > 0 and np.isfinite(psi_val) and abs(psi_val) > 0):
        raise BadData(f"psi or g vanishes or has a pole at s_o = {s_o}")
    g = g.scale(1 / g_val)
    p = psi / (g * sharp(g))

    if not is_p(p, tol):
        raise VerificationFailure(f"constructed p = {p} is not positive")
    if not equal(g * p * sharp(g), psi, tol):
        raise VerificationFailure("g p g# does not reproduce psi")
    if g.degree > psi.degree:
        raise VerificationFailure("deg g exceeds deg psi")
    return GpFactorization(g, p, s_o)


# ---------------------------------------------------------------------------
# even GP functions


def _mirror_pairs(rl, tol: Tolerances, what: str) -> list[tuple[complex, int]]:
    """Half of the roots of a GPE numerator/denominator (closed right half plane)."""
    plus, axis, minus = region_split(rl, tol)
    left = [list(zm) for zm in minus]
    half: list[tuple[complex, int]] = []
    for z, m in plus:
        target = -z.conjugate()
        best, best_d = None, np.inf
        for cand in left:
            d = abs(cand[0] - target)
            if cand[1] > 0 and d < best_d:
                best, best_d = cand, d
        if best is None or best_d > tol.pairing * (1 + abs(z)) or best[1] < m:
            raise UnpairedRoot(f"{what} {z} has no mirror partner at {target}")
        best[1] -= m
        half.append((z, m))
    if any(c[1] for c in left):
        raise UnpairedRoot(f"unpaired left-half-plane {what}s remain")
    for z, m in axis:
        if m % 2:
            raise UnpairedRoot(f"axis {what} {z} has odd multiplicity {m}")
        half.append((z, m // 2))
    return half


def spectral_factor_gpe(psi: RationalFunction, tol: Tolerances = DEFAULT) -> RationalFunction:
    """``g`` with ``psi = g g#`` and all zeros and poles of ``g`` in the closed right half plane.

    The gain of ``g`` is taken real and positive.
    """
    rep = is_gpe(psi, tol)
    if not rep:
        raise NotGPE(f"not an even GP function: {rep.witness}")
    if psi.is_zero():
        return RationalFunction.constant(0.0)
    zh = _mirror_pairs(psi.zeros(tol), tol, "zero")
    ph = _mirror_pairs(psi.poles(tol), tol, "pole")
    g0 = RationalFunction(
        Polynomial.from_roots([z for z, m in zh for _ in range(m)]),
        Polynomial.from_roots([z for z, m in ph for _ in range(m)]),
        tol,
    )
    ratio = (psi / (g0 * sharp(g0)))
    if not ratio.is_constant():
        raise UnpairedRoot("psi / (g0 g0#) is not constant")
    c2 = complex(ratio.num.coeffs[0] / ratio.den.coeffs[0])
    if c2.real <= 0 or abs(c2.imag) > tol.residue * abs(c2):
        raise NotGPE(f"gain ratio {c2} is not positive")
    g = g0.scale(np.sqrt(abs(c2)))
    if not equal(g * sharp(g), psi, tol):
        raise VerificationFailure("g g# does not reproduce psi")
    return g


def gpe_product_form(psi: RationalFunction, tol: Tolerances = DEFAULT) -> GpeProductForm:
    """Product form with ``c > 0`` and every quadratic weight in (0, 1]."""
    g = spectral_factor_gpe(psi, tol)
    c = abs(g.gain) ** 2
    num_terms, den_terms = [], []
    for z, m in g.zeros(tol):
        c *= (1 + z.real**2) ** m
        num_terms += [(1 / (1 + z.real**2), z.imag)] * m
    for z, m in g.poles(tol):
        c /= (1 + z.real**2) ** m
        den_terms += [(1 / (1 + z.real**2), z.imag)] * m
    form = GpeProductForm(float(c), tuple(num_terms), tuple(den_terms))
    if not equal(form.to_rational(), psi, tol):
        raise VerificationFailure("product form does not reproduce psi")
    return form


# ---------------------------------------------------------------------------
# minimal degree members of GP_g


def _axis_arg_window(h: RationalFunction) -> complex | None:
    """Unimodular k making ``k h`` map the axis into the closed right half plane, if one exists."""
    w = np.concatenate([-np.logspace(-4, 4, 801)[::-1], [0.0], np.logspace(-4, 4, 801)])
    vals = h(1j * w)
    vals = vals[np.isfinite(vals) & (np.abs(vals) > 1e-14 * np.max(np.abs(vals[np.isfinite(vals)])))]
    if vals.size == 0:
        return 1.0
    args = np.sort(np.angle(vals))
    gaps = np.diff(np.concatenate([args, [args[0] + 2 * np.pi]]))
    j = int(np.argmax(gaps))
    width = 2 * np.pi - gaps[j]
    if width > np.pi + 1e-6:
        return None
    start = args[(j + 1) % args.size]
    mid = start + width / 2
    return complex(np.exp(-1j * mid))


def rotate_to_positive(h: RationalFunction, tol: Tolerances = DEFAULT) -> complex | None:
    """Unimodular ``k`` with ``k h`` positive, or None."""
    if h.excess == 1:
        lead = h.num.lead / h.den.lead
        k = np.conj(lead) / abs(lead)
    elif h.excess == -1:
        inv = h.invert()
        lead = inv.num.lead / inv.den.lead
        k = lead / abs(lead)
    else:
        _, axis, _ = region_split(h.poles(tol), tol)
        _, zaxis, _ = region_split(h.zeros(tol), tol)
        if any(m > 1 for _, m in list(axis) + list(zaxis)):
            return None  # a repeated axis pole or zero rules out positivity
        if len(axis):
            q, _ = h.den.divmod(Polynomial([-axis.roots[0][0], 1]))
            res = h.num(axis.roots[0][0]) / q(axis.roots[0][0])
            k = np.conj(res) / abs(res)
        elif len(zaxis):
            inv = h.invert()
            z0 = zaxis.roots[0][0]
            q, _ = inv.den.divmod(Polynomial([-z0, 1]))
            res = inv.num(z0) / q(z0)
            k = res / abs(res)
        else:
            k = _axis_arg_window(h)
            if k is None:
                return None
    k = complex(k)
    return k if is_p(h.scale(k), tol) else None


def minimal_degree_in_gp_g(g: RationalFunction, tol: Tolerances = DEFAULT) -> RationalFunction:
    """``g g2#`` where ``g = g1 g2`` with ``g1#`` positive and ``deg g1`` maximal."""
    check_g(g, tol)
    zs = [z for z, m in g.zeros(tol) for _ in range(m)]
    ps = [z for z, m in g.poles(tol) for _ in range(m)]

    def subsets(items):
        seen = set()
        for r in range(len(items), -1, -1):
            for combo in itertools.combinations(range(len(items)), r):
                key = tuple(sorted((round(items[i].real, 9), round(items[i].imag, 9)) for i in combo))
                if key in seen:
                    continue
                seen.add(key)
                yield combo

    candidates = []
    for a in subsets(zs):
        for b in subsets(ps):
            if abs(len(a) - len(b)) <= 1 and (a or b):
                candidates.append((max(len(a), len(b)), a, b))
    candidates.sort(key=lambda t: -t[0])
    g1 = None
    for _, a, b in candidates:
        base = RationalFunction(
            Polynomial.from_roots([zs[i] for i in a]), Polynomial.from_roots([ps[i] for i in b]), tol
        )
        k = rotate_to_positive(sharp(base), tol)
        if k is not None:
            g1 = base.scale(np.conj(k))
            break
    if g1 is None:
        g1 = RationalFunction.constant(1.0)
    g2 = g / g1
    psi_min = g * sharp(g2)
    if not in_gp_g(psi_min, g, tol):
        raise VerificationFailure("minimal-degree candidate is not in GP_g")
    return psi_min


# ---------------------------------------------------------------------------
# odd functions


def odd_canonical(psi: RationalFunction, tol: Tolerances = DEFAULT) -> tuple[RationalFunction, FosterForm]:
    """``psi = g (i r_o + a_o s + sum a_j/(s - i r_j)) g#`` for odd ``psi``."""
    if not is_odd(psi, tol):
        raise NotOdd("function is not odd")
    fac = factor_gp(psi, tol=tol)
    dec = foster_decompose(fac.p, tol)
    if dec is None or dec[1] > tol.residue or not dec[0].admissible(tol):
        raise VerificationFailure(f"p = {fac.p} is not in Foster form")
    return fac.g, dec[0]


def odd_orthogonality_check(g: RationalFunction, tol: Tolerances = DEFAULT) -> bool:
    """``Re(g^-1 g^2)`` vanishes identically on the imaginary axis.

    Agrees with :func:`is_odd`; a disagreement raises :class:`InconsistentRoutes`.
    """
    if g.is_zero():
        raise BadData("g must not be the zero function")
    h = g.invert() * (g * g)
    # Re h(i w) = (h + h#)(i w) / 2
    R = h.num * h.den.paraconjugate() + h.num.paraconjugate() * h.den
    verdict = R.norm() <= tol.equal * h.num.norm() * h.den.norm()
    if verdict != bool(is_odd(g, tol)):
        raise InconsistentRoutes("orthogonality test disagrees with is_odd")
    return verdict


# ---------------------------------------------------------------------------
# maximality counterexample


def _witness_candidates(h: RationalFunction, rep: ClassReport, tol: Tolerances) -> np.ndarray:
    pts = []
    ring = np.exp(1j * np.linspace(0, 2 * np.pi, 96, endpoint=False))
    plus, axis, _ = region_split(h.poles(tol), tol)
    for z, _ in plus:
        for rho in (0.5, 0.1, 0.01):
            pts.append(z + rho * min(z.real, 1 + abs(z)) * ring)
    for z, _ in axis:
        for rho in (0.1, 0.01, 1e-3):
            pts.append(z + rho * (1 + abs(z)) * ring)
    big = 1e3 * (1 + max([abs(z) for z, _ in h.poles(tol)] + [abs(z) for z, _ in h.zeros(tol)] + [0.0]))
    pts.append(big * ring)
    w = rep.witness
    if w is not None and w.kind == "frequency":
        for eps in np.logspace(-1, -7, 13):
            pts.append(np.array([eps * (1 + abs(w.s)) + 1j * w.s.imag]))
    alpha = np.logspace(-3, 3, 31)
    beta = np.concatenate([-np.logspace(-3, 3, 31), [0.0], np.logspace(-3, 3, 31)])
    A, B = np.meshgrid(alpha, beta)
    pts.append((A + 1j * B).ravel())
    allpts = np.concatenate([np.atleast_1d(p) for p in pts])
    return allpts[allpts.real > 0]


def find_cplus_witness(h: RationalFunction, tol: Tolerances = DEFAULT) -> complex | None:
    """A point of the open right half plane where ``Re h < 0``, or None."""
    rep = is_p(h, tol)
    if rep:
        return None
    pts = _witness_candidates(h, rep, tol)
    vals = h(pts)
    ok = np.isfinite(vals)
    pts, vals = pts[ok], vals[ok]
    if pts.size == 0:
        return None
    # prefer values pointing along the negative real axis, then points near s = 1
    score = -vals.real / np.maximum(np.abs(vals), 1e-300)
    neg = vals.real < -tol.nonneg * (1 + np.abs(vals))
    if not np.any(neg):
        return None
    good = neg & (score >= 0.5 * np.max(score[neg]))
    idx = np.flatnonzero(good)
    k = idx[int(np.argmin(np.abs(np.log(np.abs(pts[idx])))))]
    return complex(pts[k])


def positive_counterexample(h: RationalFunction, witness: complex | None = None, tol: Tolerances = DEFAULT) -> RationalFunction:
    """Positive ``p`` such that ``h + p`` vanishes at a right-half-plane point.

    With ``h(alpha + i beta) = -gamma + i delta`` (``gamma > 0``) the answer is
    ``p(s) = (gamma/alpha) s - i (beta gamma / alpha + delta)``.
    """
    if witness is None:
        witness = find_cplus_witness(h, tol)
        if witness is None:
            raise NoWitness("no right-half-plane point with Re h < 0 was found")
    witness = complex(witness)
    val = complex(h(witness))
    alpha, beta = witness.real, witness.imag
    gamma, delta = -val.real, val.imag
    if alpha <= 0 or gamma <= 0:
        raise NoWitness(f"h({witness}) = {val} is not a valid witness")
    p = RationalFunction(Polynomial([-1j * (beta * gamma / alpha + delta), gamma / alpha]))
    return p
