"""Even and odd parts, ``f_even = (f + f#)/2`` and ``f_odd = (f - f#)/2``."""
from __future__ import annotations

import numpy as np

from .classify import is_odd
from .config import DEFAULT, Tolerances
from .errors import NotOdd
from .polynomial import Polynomial
from .ratfun import RationalFunction, equal

__all__ = ["even_part", "odd_part", "even_product_law", "odd_square_gpe"]


def _unshared(rl, other, tol: Tolerances) -> list[complex]:
    """Roots of ``rl`` (with multiplicity) left over after matching against ``other``."""
    pool = [[z, m] for z, m in other]
    out = []
    for z, m in rl:
        radius = 10 * tol.cluster * (1 + abs(z))
        for entry in pool:
            if m and entry[1] and abs(entry[0] - z) <= radius:
                k = min(m, entry[1])
                m -= k
                entry[1] -= k
        out += [z] * m
    return out


def _split(f: RationalFunction, sign: int, tol: Tolerances) -> RationalFunction:
    # over lcm(d, d#), built from the poles of f and their mirror images
    n, d = f.num, f.den
    ns, ds = n.paraconjugate(), d.paraconjugate()
    poles = f.poles(tol)
    mirrored = [(-z.conjugate(), m) for z, m in poles]
    a = Polynomial.from_roots(_unshared(mirrored, poles, tol))  # lcm / d
    b = Polynomial.from_roots(_unshared(poles, mirrored, tol))  # lcm / d#, up to gain
    c = d.lead / ds.lead
    num = (n * a + ns * b * (sign * c)) * 0.5
    # cancellation leaves rounding noise measured against the inputs, not num
    ref = n.norm() * max(a.norm(), b.norm())
    coeffs = num.coeffs.copy()
    coeffs[np.abs(coeffs) <= tol.trim * ref] = 0
    if num.norm() <= tol.equal * ref:
        coeffs[:] = 0
    return RationalFunction(Polynomial(coeffs), d * a, tol)


def even_part(f: RationalFunction, tol: Tolerances = DEFAULT) -> RationalFunction:
    return _split(f, +1, tol)


def odd_part(f: RationalFunction, tol: Tolerances = DEFAULT) -> RationalFunction:
    return _split(f, -1, tol)


def even_product_law(f: RationalFunction, g: RationalFunction, tol: Tolerances = DEFAULT) -> bool:
    """Whether ``(f g)_even == f_even * g`` holds as a rational identity.

    It holds whenever ``g`` is even; for ``f`` not identically zero, the
    identity for all such ``f`` forces ``g`` to be even.
    """
    return equal(even_part(f * g, tol), even_part(f, tol) * g, tol)


def odd_square_gpe(f: RationalFunction, tol: Tolerances = DEFAULT) -> RationalFunction:
    """``-f^2`` for odd ``f``; it maps the imaginary axis into the nonnegative reals."""
    rep = is_odd(f, tol)
    if not rep:
        raise NotOdd(f"f is not odd: {rep.witness}")
    return -(f * f)
