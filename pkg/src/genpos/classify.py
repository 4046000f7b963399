"""Membership tests for the function classes, each returning a witness.

Classes: positive (P), generalized positive (GP), para-positive, even, odd,
positive-odd (PO), even generalized positive (GPE), bounded (B), generalized
bounded (GB), and the cone GP_g for a fixed g.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .config import DEFAULT, Tolerances
from .errors import BadG, InconsistentRoutes
from .foster import foster_decompose
from .polynomial import Polynomial, _backward
from .ratfun import RationalFunction, equal, region_split, sharp

# sweep used to look for off-class axis values when a report needs a witness
_SWEEP = np.concatenate([-np.logspace(-3, 3, 241)[::-1], [0.0], np.logspace(-3, 3, 241)])


@dataclass(frozen=True)
class Witness:
    """Why a membership test failed.

    ``kind`` is one of ``"frequency"`` (value at ``s = i*omega``), ``"point"``
    (value at a point of the open right half plane), ``"pole"`` (offending
    pole, with its residue when simple) or ``"infinity"``.
    """

    kind: str
    s: complex
    value: complex | None = None
    residue: complex | None = None

    @property
    def omega(self) -> float:
        return self.s.imag


@dataclass(frozen=True)
class ClassReport:
    verdict: bool
    witness: Witness | None = None
    margin: float = 0.0
    detail: dict[str, Any] = field(default_factory=dict, compare=False)

    def __bool__(self) -> bool:
        return self.verdict


_STRUCTURAL = -1.0  # margin reported for failures that are not a sign dip


def _fail(witness: Witness, margin: float = _STRUCTURAL, **detail) -> ClassReport:
    return ClassReport(False, witness, margin, detail)


# ---------------------------------------------------------------------------
# nonnegativity of a real polynomial on the real line


def _real_roots(q: Polynomial, tol: Tolerances) -> list[tuple[float, int]]:
    if q.degree < 1:
        return []
    out = []
    for z, m in q.roots(tol):
        if abs(z.imag) <= tol.cluster * (1 + abs(z)):
            out.append((z.real, m))
    return out


def nonneg_on_real_line(Q: np.ndarray, ref: float, tol: Tolerances = DEFAULT):
    """Decide ``Q(omega) >= 0`` for all real omega.

    ``Q`` holds real ascending coefficients and ``ref`` the scale below which
    ``Q`` counts as identically zero.  Returns ``(ok, margin, omega_min, parity)``
    where ``margin`` is the exact minimum of ``Q / (max|Q_k| (1+omega^2)^(d/2))``
    over its critical points and infinity, and ``omega_min`` locates it.
    ``parity`` reports the sign-change test: every real root of even
    multiplicity and a positive leading coefficient of even degree.
    """
    Q = np.real_if_close(np.asarray(Q, dtype=complex), tol=1e12).real.astype(float)
    scale = float(np.max(np.abs(Q))) if Q.size else 0.0
    if scale <= tol.nonneg * ref or scale == 0.0:
        return True, 0.0, None, True
    poly = Polynomial(Q / scale, tol)
    Qn = poly.coeffs.real
    deg = poly.degree
    d = deg + (deg % 2)

    def normalized(w):
        w = np.asarray(w, dtype=float)
        return np.polynomial.polynomial.polyval(w, Qn) / (1 + w * w) ** (d / 2)

    # critical points of the normalized function
    crit_poly = (poly.deriv() * Polynomial([1, 0, 1])) - (poly * Polynomial([0, d]))
    cands = [0.0, 1.0, -1.0]
    cands += [w for w, _ in _real_roots(crit_poly, tol)]
    roots = _real_roots(poly, tol)
    cands += [w for w, _ in roots]
    cands = np.asarray(cands, dtype=float)
    vals = normalized(cands)
    i = int(np.argmin(vals))
    margin, where = float(vals[i]), float(cands[i])
    at_inf = Qn[-1] if deg == d else 0.0
    if at_inf < margin:
        # keep the infimum, but prefer a finite frequency as the witness
        margin = float(at_inf)
        if not vals[i] < -tol.nonneg:
            where = float(np.inf)
    parity = deg == d and Qn[-1] > 0 and all(m % 2 == 0 for _, m in roots)
    ok = margin >= -tol.nonneg
    return ok, margin, where, parity


def _value_dip(Q: Polynomial, D: Polynomial, value, ref: float, tol: Tolerances):
    """``(omega, re/(1+scale))`` where ``Q/D`` is clearly negative in value, or None.

    ``nonneg_on_real_line`` measures ``Q`` against its own coefficients, which
    hides a dip sitting where ``D`` (a squared modulus) is tiny, as happens
    next to a pole close to the axis.  Here the critical points of ``Q/D`` are
    checked on the value ``value(s) -> (re, scale)`` itself, and a dip counts
    only if ``Q`` there is below its noise level ``ref (1+|omega|)^deg``
    scaled by the backward error; ``ref`` is the coefficient scale of the
    terms of ``Q`` before cancellation.  Points where ``D`` is at noise
    level (poles) are skipped.
    """
    q = Polynomial(np.real_if_close(Q.coeffs, tol=1e12).real.astype(float), tol)
    dd = Polynomial(np.real_if_close(D.coeffs, tol=1e12).real.astype(float), tol)
    if q.degree < 0 or q.is_zero():
        return None
    crit = q.deriv() * dd - q * dd.deriv()
    cands = [w for w, _ in _real_roots(crit, tol)]
    qroots = sorted(w for w, _ in _real_roots(q, tol))
    cands += [(a + b) / 2 for a, b in zip(qroots, qroots[1:])]
    backward = _backward(q.degree, tol)
    worst = None
    for w in cands:
        grow = 1 + abs(w)
        if float(dd(w).real) <= backward * dd.norm() * grow ** dd.degree:
            continue
        if float(q(w).real) >= -backward * ref * grow ** q.degree:
            continue
        re, scale = value(complex(0.0, w))
        rel = re / (1 + scale)
        if np.isfinite(rel) and rel < -tol.nonneg and (worst is None or rel < worst[1]):
            worst = (w, rel)
    return worst


def _axis_real_part_numerator(psi: RationalFunction) -> tuple[Polynomial, float]:
    """``R = n d# + n# d`` so that ``Re psi(i w) = R(i w) / (2 |d(i w)|^2)``."""
    n, d = psi.num, psi.den
    R = n * d.paraconjugate() + n.paraconjugate() * d
    return R, n.norm() * d.norm()


def is_gp(psi: RationalFunction, tol: Tolerances = DEFAULT) -> ClassReport:
    """``Re psi(i omega) >= 0`` for all real omega (off the pole set and at infinity)."""
    if psi.is_zero():
        return ClassReport(True, None, 0.0)
    R, ref = _axis_real_part_numerator(psi)
    Q = R.on_axis().coeffs
    ok, margin, where, parity = nonneg_on_real_line(Q, ref, tol)
    if ok:
        D = (psi.den * psi.den.paraconjugate()).on_axis()
        # a hidden dip needs Q < 0 somewhere, i.e. a negative exact minimum
        dip = _value_dip(R.on_axis(), D, lambda s: (psi(s).real, abs(psi(s))), 2 * ref, tol) if margin < 0 else None
        if dip is None:
            return ClassReport(True, None, margin, {"parity": parity})
        where, margin = dip
    if where is None or not np.isfinite(where):
        w = Witness("infinity", complex(0, np.inf))
    else:
        s = complex(0.0, where)
        w = Witness("frequency", s, complex(psi(s)))
    return _fail(w, margin)


# ---------------------------------------------------------------------------
# even / odd


def _parity_report(f: RationalFunction, sign: int, tol: Tolerances) -> ClassReport:
    fs = sharp(f)
    diff = f.num * fs.den - sign * fs.num * f.den
    ref = max(f.num.norm() * fs.den.norm(), 1e-300)
    rel = diff.norm() / ref
    if f.is_zero() or (rel <= tol.equal and equal(f, fs.scale(sign), tol)):
        return ClassReport(True, None, -rel)
    s = 1j * _SWEEP
    vals = f(s)
    bad = np.abs(vals.imag if sign == 1 else vals.real)
    bad[~np.isfinite(bad)] = -1
    k = int(np.argmax(bad))
    return _fail(Witness("frequency", complex(s[k]), complex(vals[k])), -rel)


def is_even(f: RationalFunction, tol: Tolerances = DEFAULT) -> ClassReport:
    """``f = f#``; the witness is a frequency where ``f(i omega)`` is not real."""
    return _parity_report(f, +1, tol)


def is_odd(f: RationalFunction, tol: Tolerances = DEFAULT) -> ClassReport:
    """``f = -f#``; the witness is a frequency where ``f(i omega)`` is not imaginary."""
    return _parity_report(f, -1, tol)


# ---------------------------------------------------------------------------
# positive and related classes


def axis_residue(f: RationalFunction, ir: complex) -> complex:
    """Residue at a simple pole ``ir``, by deflating the denominator."""
    q, _ = f.den.divmod(Polynomial([-ir, 1]))
    return complex(f.num(ir) / q(ir))


def is_p(p: RationalFunction, tol: Tolerances = DEFAULT) -> ClassReport:
    """Positive: analytic in the open right half plane with ``Re p >= 0`` there.

    Decided as: no right-half-plane poles, GP on the axis, simple axis poles
    with positive residues, and at most a simple pole at infinity with a
    positive leading ratio.
    """
    if p.is_zero():
        return ClassReport(True, None, 0.0)
    plus, axis, _ = region_split(p.poles(tol), tol)
    if len(plus):
        z, _ = plus.roots[0]
        return _fail(Witness("pole", z), reason="pole in open right half plane")
    for z, m in axis:
        if m > 1:
            return _fail(Witness("pole", z), reason="repeated pole on the imaginary axis")
        res = axis_residue(p, z)
        if not (res.real > 0 and abs(res.imag) <= tol.residue * (1 + abs(res))):
            return _fail(Witness("pole", z, residue=res), reason="axis residue not positive")
    if p.excess > 1:
        return _fail(Witness("infinity", complex(0, np.inf)), reason="multiple pole at infinity")
    if p.excess == 1:
        lead = p.num.lead / p.den.lead
        if not (lead.real > 0 and abs(lead.imag) <= tol.residue * (1 + abs(lead))):
            return _fail(Witness("infinity", complex(0, np.inf), residue=lead), reason="leading ratio not positive")
    gp = is_gp(p, tol)
    if not gp:
        return ClassReport(False, gp.witness, gp.margin, {"reason": "negative real part on the axis"})
    return ClassReport(True, None, gp.margin)


def is_para_positive(psi: RationalFunction, tol: Tolerances = DEFAULT) -> ClassReport:
    """``psi#`` is positive."""
    r = is_p(sharp(psi), tol)
    if r or r.witness is None:
        return r
    w = r.witness
    # map the witness back through s -> -conj(s)
    s = complex(-w.s.real, w.s.imag) if np.isfinite(w.s.imag) else w.s
    val = None if w.value is None else w.value.conjugate()
    res = None if w.residue is None else w.residue.conjugate()
    return ClassReport(False, Witness(w.kind, s, val, res), r.margin, r.detail)


def is_po(p: RationalFunction, tol: Tolerances = DEFAULT) -> ClassReport:
    """Positive and odd, checked both as P & Odd and through the Foster form."""
    via_classes = bool(is_p(p, tol)) and bool(is_odd(p, tol))
    dec = foster_decompose(p, tol) if not p.is_zero() else None
    via_foster = p.is_zero()
    if dec is not None:
        form, defect = dec
        via_foster = (
            defect <= tol.residue
            and form.admissible(tol)
            and equal(form.to_rational(), p, tol)
        )
    if via_classes != via_foster:
        raise InconsistentRoutes(
            f"PO decision routes disagree (classes={via_classes}, foster={via_foster}) for {p}"
        )
    if via_classes:
        return ClassReport(True, None, 0.0, {"foster": dec[0] if dec else None})
    r = is_p(p, tol)
    if not r:
        return r
    return is_odd(p, tol)


def is_gpe(psi: RationalFunction, tol: Tolerances = DEFAULT) -> ClassReport:
    """Even and GP, i.e. maps the imaginary axis into the nonnegative reals."""
    ev = is_even(psi, tol)
    if not ev:
        return ev
    return is_gp(psi, tol)


def is_gb(f: RationalFunction, tol: Tolerances = DEFAULT) -> ClassReport:
    """``|f(i omega)| <= 1`` on the axis, via the GP test of ``1 - f f#``."""
    # 1 - |f|^2 has the sign of d d# - n n# on the axis; scale against n and d
    # so a unimodular f is not judged by its rounding residue
    n, d = f.num, f.den
    R = d * d.paraconjugate() - n * n.paraconjugate()
    ref = max(n.norm(), d.norm()) ** 2
    ok, margin, where, parity = nonneg_on_real_line(R.on_axis().coeffs, ref, tol)
    if ok:
        D = (d * d.paraconjugate()).on_axis()

        def value(s):
            m2 = abs(f(s)) ** 2
            return 1 - m2, m2

        dip = _value_dip(R.on_axis(), D, value, 2 * ref, tol) if margin < 0 else None
        if dip is None:
            return ClassReport(True, None, margin, {"parity": parity})
        where, margin = dip
    if where is None or not np.isfinite(where):
        return _fail(Witness("infinity", complex(0, np.inf)), margin)
    s = complex(0.0, where)
    return _fail(Witness("frequency", s, complex(f(s))), margin)


def is_bounded(f: RationalFunction, tol: Tolerances = DEFAULT) -> ClassReport:
    """Analytic on the closed right half plane and GB (maximum modulus does the rest)."""
    plus, axis, _ = region_split(f.poles(tol), tol)
    for part in (plus, axis):
        if len(part):
            return _fail(Witness("pole", part.roots[0][0]), reason="pole in closed right half plane")
    return is_gb(f, tol)


# ---------------------------------------------------------------------------
# GP_g


def check_g(g: RationalFunction, tol: Tolerances = DEFAULT) -> None:
    """Raise :class:`BadG` unless g and 1/g are analytic in the open left half plane."""
    if g.is_zero():
        raise BadG("g must not be the zero function")
    for label, rl in (("zero", g.zeros(tol)), ("pole", g.poles(tol))):
        _, _, minus = region_split(rl, tol)
        if len(minus):
            raise BadG(f"g has a {label} at {minus.roots[0][0]} in the open left half plane")


def _to_closed_rhp(g: RationalFunction, tol: Tolerances) -> RationalFunction:
    # g p g# = g# p g, so a g with every root in the closed left half plane
    # describes the same cone as g#
    if g.is_zero():
        return g
    roots = [z for rl in (g.zeros(tol), g.poles(tol)) for z, _ in rl]
    plus = any(z.real > tol.axis * (1 + abs(z)) for z in roots)
    minus = any(z.real < -tol.axis * (1 + abs(z)) for z in roots)
    return sharp(g) if minus and not plus else g


def in_gp_g(psi: RationalFunction, g: RationalFunction, tol: Tolerances = DEFAULT) -> ClassReport:
    """``psi = g p g#`` with ``p`` positive; the report carries ``p`` in ``detail``.

    A ``g`` with all zeros and poles in the closed left half plane is
    replaced by ``g#``, which spans the same cone.
    """
    g = _to_closed_rhp(g, tol)
    check_g(g, tol)
    p = psi / (g * sharp(g))
    r = is_p(p, tol)
    return ClassReport(r.verdict, r.witness, r.margin, {**r.detail, "p": p})
