"""Normalized rational functions with complex coefficients.

A :class:`RationalFunction` is stored as ``num/den`` with no common root
clusters and a monic denominator (the gain lives in the numerator).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .config import DEFAULT, Tolerances
from .errors import (
    DegenerateComposition,
    DivisionByZeroFunction,
    Indeterminate,
    ZeroDenominator,
)
from .polynomial import Polynomial, RootList, root_accuracies

_EPS = np.finfo(float).eps
_rng_points = np.random.default_rng(20240611)
# fixed cross-check points on the circle |s| = 2
_CHECK_POINTS = 2.0 * np.exp(2j * np.pi * _rng_points.random(16))


@dataclass(frozen=True)
class PoleAt:
    """Marker returned by :func:`evaluate` at a pole."""

    location: complex


@dataclass(frozen=True)
class PoleZeroGain:
    gain: complex
    zeros: RootList
    poles: RootList

    def to_rational(self, tol: Tolerances = DEFAULT) -> "RationalFunction":
        return from_pole_zero(self, tol)


class RationalFunction:
    """Quotient ``num/den`` in canonical form (see module docstring)."""

    __slots__ = ("num", "den", "_zeros", "_poles")

    def __init__(self, num, den=None, tol: Tolerances = DEFAULT):
        num = num if isinstance(num, Polynomial) else Polynomial(num)
        den = Polynomial([1]) if den is None else (den if isinstance(den, Polynomial) else Polynomial(den))
        if den.is_zero():
            raise ZeroDenominator("denominator is identically zero")
        object.__setattr__(self, "_zeros", None)
        object.__setattr__(self, "_poles", None)
        if num.is_zero():
            object.__setattr__(self, "num", Polynomial([0]))
            object.__setattr__(self, "den", Polynomial([1]))
            return
        num, den, zeros, poles = _cancel(num, den, tol)
        lead = den.lead
        object.__setattr__(self, "num", Polynomial(num.coeffs / lead))
        object.__setattr__(self, "den", Polynomial(den.coeffs / lead))
        object.__setattr__(self, "_zeros", zeros)
        object.__setattr__(self, "_poles", poles)

    @classmethod
    def _coprime(cls, num: Polynomial, den: Polynomial) -> "RationalFunction":
        """Build without a cancellation pass; caller guarantees coprimality."""
        self = object.__new__(cls)
        lead = den.lead
        if num.is_zero():
            num, den, lead = Polynomial([0]), Polynomial([1]), 1.0
        object.__setattr__(self, "num", Polynomial(num.coeffs / lead))
        object.__setattr__(self, "den", Polynomial(den.coeffs / lead))
        object.__setattr__(self, "_zeros", None)
        object.__setattr__(self, "_poles", None)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    # constructors
    @classmethod
    def constant(cls, c: complex) -> "RationalFunction":
        return cls._coprime(Polynomial([c]), Polynomial([1]))

    @classmethod
    def s(cls) -> "RationalFunction":
        return cls._coprime(Polynomial([0, 1]), Polynomial([1]))

    # properties
    @property
    def degree(self) -> int:
        """max(deg num, deg den); the zero function has degree 0."""
        return max(self.num.degree, self.den.degree, 0)

    @property
    def gain(self) -> complex:
        return self.num.lead

    @property
    def excess(self) -> int:
        """deg num - deg den: order of the pole at infinity (negative for a zero)."""
        return self.num.degree - self.den.degree

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def zeros(self, tol: Tolerances = DEFAULT) -> RootList:
        if self._zeros is None:
            object.__setattr__(self, "_zeros", RootList() if self.num.is_zero() else self.num.roots(tol))
        return self._zeros

    def poles(self, tol: Tolerances = DEFAULT) -> RootList:
        if self._poles is None:
            object.__setattr__(self, "_poles", self.den.roots(tol))
        return self._poles

    def __repr__(self) -> str:
        from .expr import to_text

        return f"RationalFunction({to_text(self)!r})"

    def __str__(self) -> str:
        from .expr import to_text

        return to_text(self)

    # evaluation
    def __call__(self, s):
        """Vectorized value; ``inf`` at poles (see :func:`evaluate` for markers)."""
        s_arr = np.asarray(s, dtype=complex)
        n = np.asarray(self.num(s_arr))
        d = np.asarray(self.den(s_arr))
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.asarray(n / d)
        out = np.where(np.asarray(d) == 0, complex(np.inf, 0), out)
        return complex(out) if out.ndim == 0 else out

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Polynomial):
            return RationalFunction._coprime(other, Polynomial([1]))
        if np.isscalar(other):
            return RationalFunction.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._coprime(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_constant():
            return self.scale(other.num.coeffs[0] / other.den.coeffs[0])
        if self.is_constant():
            return other.scale(self.num.coeffs[0] / self.den.coeffs[0])
        return _mul_factored(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.invert()

    def __rtruediv__(self, other):
        return self.invert() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.invert() ** (-k)
        out = RationalFunction.constant(1.0)
        for _ in range(k):
            out = out * self
        return out

    def scale(self, c: complex) -> "RationalFunction":
        if c == 0:
            return RationalFunction.constant(0)
        out = RationalFunction._coprime(self.num * c, self.den)
        object.__setattr__(out, "_zeros", self._zeros)
        object.__setattr__(out, "_poles", self._poles)
        return out

    def invert(self) -> "RationalFunction":
        if self.is_zero():
            raise DivisionByZeroFunction("cannot invert the zero function")
        out = RationalFunction._coprime(self.den, self.num)
        object.__setattr__(out, "_zeros", self._poles)
        object.__setattr__(out, "_poles", self._zeros)
        return out

    def sharp(self) -> "RationalFunction":
        return sharp(self)

    def restrict_axis(self) -> tuple[Polynomial, Polynomial]:
        """(num, den) of ``omega -> self(i omega)`` as polynomials in omega."""
        return self.num.on_axis(), self.den.on_axis()


def _common(za: RootList, zb: RootList, radius: float, acc_a=None, acc_b=None) -> list[tuple[complex, int]]:
    """Root pairs shared by ``za`` and ``zb``.

    A pair must lie within ``radius (1 + |w|)`` and, when accuracies are
    given, within the sum of the two roots' rounding radii, so distinct roots
    that merely sit close together are kept apart.
    """
    out = []
    used = [0] * len(zb.roots)
    for i, (z, m) in enumerate(za):
        for j, (w, k) in enumerate(zb.roots):
            avail = k - used[j]
            d = abs(z - w)
            if avail > 0 and d <= radius * (1 + abs(w)) and (acc_a is None or d <= acc_a[i] + acc_b[j]):
                c = min(m, avail)
                used[j] += c
                out.append(((z + w) / 2, c))
                break
    return out


def _remove(rl: RootList, common: list[tuple[complex, int]], radius: float) -> RootList:
    roots = [list(zm) for zm in rl.roots]
    for z, c in common:
        live = [r for r in roots if r[1] > 0 and abs(r[0] - z) <= radius * (1 + abs(z))]
        if live:
            min(live, key=lambda r: abs(r[0] - z))[1] -= c
    return RootList(tuple((z, m) for z, m in roots if m > 0), rl.residual_bound)


def _merge(a: RootList, b: RootList, tol: Tolerances) -> RootList:
    roots = [list(zm) for zm in a.roots]
    for w, k in b:
        for r in roots:
            if abs(r[0] - w) <= tol.cluster * (1 + abs(w)):
                r[0] = (r[0] * r[1] + w * k) / (r[1] + k)
                r[1] += k
                break
        else:
            roots.append([w, k])
    return RootList(tuple((z, m) for z, m in roots), max(a.residual_bound, b.residual_bound))


def _merged_accuracy(merged: RootList, sources, tol: Tolerances) -> list[float]:
    """Rounding radius of each merged root: the largest over the sources it came from."""
    table = []
    for poly, rl in sources:
        table += [(z, r) for (z, _), r in zip(rl, root_accuracies(poly, rl, tol))]
    out = []
    for w, _ in merged:
        near = [r for z, r in table if abs(z - w) <= tol.cluster * (1 + abs(w))]
        out.append(max(near, default=tol.cluster * (1 + abs(w))))
    return out


def _mul_factored(f: RationalFunction, g: RationalFunction, tol: Tolerances = DEFAULT) -> RationalFunction:
    """Product through the zero/pole lists, so no roots of the product are searched for."""
    zeros = _merge(f.zeros(tol), g.zeros(tol), tol)
    poles = _merge(f.poles(tol), g.poles(tol), tol)
    radius = tol.cluster  # relative to each root's modulus
    acc_z = _merged_accuracy(zeros, [(f.num, f.zeros(tol)), (g.num, g.zeros(tol))], tol)
    acc_p = _merged_accuracy(poles, [(f.den, f.poles(tol)), (g.den, g.poles(tol))], tol)
    common = _common(zeros, poles, radius, acc_z, acc_p)
    if common:
        zeros, poles = _remove(zeros, common, radius), _remove(poles, common, radius)
    flat = lambda rl: [z for z, m in rl for _ in range(m)]
    out = RationalFunction._coprime(
        Polynomial.from_roots(flat(zeros), f.gain * g.gain), Polynomial.from_roots(flat(poles))
    )
    object.__setattr__(out, "_zeros", zeros)
    object.__setattr__(out, "_poles", poles)
    return out


def _cancel(num: Polynomial, den: Polynomial, tol: Tolerances):
    if num.is_constant() or den.is_constant():
        return num, den, (RootList() if num.is_constant() else None), (RootList() if den.is_constant() else None)
    zn = num.roots(tol)
    zd = den.roots(tol)
    radius = tol.cluster  # relative to each root's modulus
    common = _common(zn, zd, radius, root_accuracies(num, zn, tol), root_accuracies(den, zd, tol))
    if not common:
        return num, den, zn, zd
    q = Polynomial.from_roots([z for z, m in common for _ in range(m)])
    return num.exact_div(q), den.exact_div(q), _remove(zn, common, radius), _remove(zd, common, radius)


# ---------------------------------------------------------------------------
# module-level operations


def make(num, den=None, tol: Tolerances = DEFAULT) -> RationalFunction:
    return RationalFunction(num, den, tol)


def sharp(f: RationalFunction) -> RationalFunction:
    """``f#(s) = conj(f(-conj s))``; applies the paraconjugate to num and den."""
    out = RationalFunction._coprime(f.num.paraconjugate(), f.den.paraconjugate())
    if f._zeros is not None:
        object.__setattr__(out, "_zeros", _mirror(f._zeros))
    if f._poles is not None:
        object.__setattr__(out, "_poles", _mirror(f._poles))
    return out


def _mirror(rl: RootList) -> RootList:
    return RootList(tuple((-z.conjugate(), m) for z, m in rl.roots), rl.residual_bound)


def add(f, g):
    return f + g


def sub(f, g):
    return f - g


def mul(f, g):
    return f * g


def div(f, g):
    return f / g


def invert(f: RationalFunction) -> RationalFunction:
    return f.invert()


def scale(f: RationalFunction, c: complex) -> RationalFunction:
    return f.scale(c)


def compose(outer: RationalFunction, inner: RationalFunction, tol: Tolerances = DEFAULT) -> RationalFunction:
    """``outer(inner(s))`` by homogenizing the outer numerator and denominator."""
    n = outer.degree
    a, b = inner.num, inner.den
    a_pows = [Polynomial([1])]
    b_pows = [Polynomial([1])]
    for _ in range(n):
        a_pows.append(a_pows[-1] * a)
        b_pows.append(b_pows[-1] * b)

    def homog(p: Polynomial) -> Polynomial:
        acc = Polynomial([0])
        for k, c in enumerate(p.coeffs):
            if c != 0:
                acc = acc + a_pows[k] * b_pows[n - k] * c
        return acc

    num = homog(outer.num)
    den = homog(outer.den)
    # size den would have without cancellation; far below it, den is rounding
    bound = sum(abs(c) * a.norm() ** k * b.norm() ** (n - k) for k, c in enumerate(outer.den.coeffs))
    if den.is_zero() or den.norm() <= tol.trim * bound:
        raise DegenerateComposition("inner function is a constant sitting on a pole of the outer function")
    return RationalFunction(num, den, tol)


def evaluate(f: RationalFunction, s: complex):
    """Value at ``s``, or :class:`PoleAt` when the denominator vanishes there."""
    s = complex(s)
    d = f.den(s)
    n = f.num(s)
    d_scale = float(np.sum(np.abs(f.den.coeffs) * np.abs(s) ** np.arange(f.den.coeffs.size)))
    n_scale = float(np.sum(np.abs(f.num.coeffs) * np.abs(s) ** np.arange(f.num.coeffs.size)))
    if abs(d) <= 64 * _EPS * d_scale:
        if abs(n) <= 64 * _EPS * max(n_scale, 1e-300) and not f.is_zero():
            raise Indeterminate(f"numerator and denominator both vanish at {s}")
        return PoleAt(s)
    return complex(n / d)


def pole_zero(f: RationalFunction, tol: Tolerances = DEFAULT) -> PoleZeroGain:
    return PoleZeroGain(f.gain, f.zeros(tol), f.poles(tol))


def from_pole_zero(pzg: PoleZeroGain, tol: Tolerances = DEFAULT) -> RationalFunction:
    num = Polynomial.from_roots(pzg.zeros.locations(), pzg.gain)
    den = Polynomial.from_roots(pzg.poles.locations())
    return RationalFunction(num, den, tol)


def on_axis(z: complex, tol: Tolerances = DEFAULT) -> bool:
    return abs(z.real) <= tol.axis * (1 + abs(z))


def region_split(rl: RootList, tol: Tolerances = DEFAULT) -> tuple[RootList, RootList, RootList]:
    """Partition by sign of the real part: (open right, imaginary axis, open left)."""
    plus, axis, minus = [], [], []
    for z, m in rl:
        if on_axis(z, tol):
            axis.append((complex(0.0, z.imag), m))
        elif z.real > 0:
            plus.append((z, m))
        else:
            minus.append((z, m))
    return RootList(tuple(plus)), RootList(tuple(axis)), RootList(tuple(minus))


def equal(f: RationalFunction, g: RationalFunction, tol: Tolerances = DEFAULT) -> bool:
    """Equality predicate: cross-multiplied coefficient test plus a point check."""
    lhs = f.num * g.den
    rhs = g.num * f.den
    scale = max(f.num.norm() * g.den.norm(), g.num.norm() * f.den.norm())
    if scale == 0.0:
        return True
    diff = lhs - rhs
    if diff.norm() > tol.equal * scale:
        return False
    fv = f(_CHECK_POINTS)
    gv = g(_CHECK_POINTS)
    ok = np.isfinite(fv) & np.isfinite(gv)
    err = np.abs(fv[ok] - gv[ok])
    ref = 1.0 + np.abs(fv[ok]) + np.abs(gv[ok])
    return bool(np.all(err <= 1e3 * tol.equal * ref))


def proportional(f: RationalFunction, g: RationalFunction, tol: Tolerances = DEFAULT) -> complex | None:
    """Constant c with f = c g, or None."""
    if g.is_zero():
        return None
    ratio = f / g
    if ratio.is_constant() and not ratio.is_zero():
        return complex(ratio.num.coeffs[0] / ratio.den.coeffs[0])
    return None


def s_var() -> RationalFunction:
    return RationalFunction.s()


def poly_from_roots(locations: Sequence[complex], lead: complex = 1.0) -> Polynomial:
    return Polynomial.from_roots(locations, lead)
