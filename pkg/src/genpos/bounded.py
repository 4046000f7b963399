"""Generalized bounded functions: Cayley transform, Blaschke extraction, GB_g.

GB functions have modulus at most one on the imaginary axis; they are the
Cayley images of GP functions, and each is ``f_b / beta`` for a bounded
``f_b`` and a finite Blaschke product ``beta``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classify import check_g, is_bounded, is_gb, is_p
from .config import DEFAULT, Tolerances
from .errors import BadG, Degenerate, DegenerateTransform, NotGB, NotPositive, VerificationFailure
from .polynomial import Polynomial
from .ratfun import RationalFunction, equal, region_split, sharp

__all__ = [
    "BlaschkeProduct",
    "GbgDemo",
    "blaschke_extract",
    "cayley",
    "cayley_inv",
    "gb_g_instability_demo",
    "gb_representation",
]

_ONE = RationalFunction.constant(1.0)


def cayley(p: RationalFunction) -> RationalFunction:
    """``(1 - p)/(1 + p)``: P to B and GP to GB."""
    den = _ONE + p
    if den.is_zero():
        raise DegenerateTransform("1 + p vanishes identically")
    return (_ONE - p) / den


def cayley_inv(f: RationalFunction) -> RationalFunction:
    """``(1 - f)/(1 + f)``; the transform is its own inverse."""
    den = _ONE + f
    if den.is_zero():
        raise DegenerateTransform("1 + f vanishes identically")
    return (_ONE - f) / den


@dataclass(frozen=True)
class BlaschkeProduct:
    """``prod (s - w_j)/(s + conj(w_j))`` with every ``w_j`` in the open right half plane."""

    factors: tuple[complex, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(complex(w) for w in self.factors))
        for w in self.factors:
            if not w.real > 0:
                raise ValueError(f"Blaschke factor {w} is not in the open right half plane")

    def to_rational(self) -> RationalFunction:
        num = Polynomial.from_roots(self.factors)
        den = Polynomial.from_roots([-w.conjugate() for w in self.factors])
        return RationalFunction(num, den)

    def __call__(self, s):
        s = np.asarray(s, dtype=complex)
        out = np.ones_like(s)
        for w in self.factors:
            out = out * (s - w) / (s + w.conjugate())
        return out if out.ndim else complex(out)

    def __len__(self) -> int:
        return len(self.factors)


def blaschke_extract(f_gb: RationalFunction, tol: Tolerances = DEFAULT) -> tuple[RationalFunction, BlaschkeProduct]:
    """``f_gb = f_b / beta`` with ``f_b`` bounded; ``beta`` carries the right-half-plane poles."""
    rep = is_gb(f_gb, tol)
    if not rep:
        raise NotGB(f"not generalized bounded: {rep.witness}")
    plus, _, _ = region_split(f_gb.poles(tol), tol)
    beta = BlaschkeProduct(tuple(plus.locations()))
    B = beta.to_rational()
    f_b = f_gb * B
    if not is_bounded(f_b, tol):
        raise VerificationFailure(f"f_gb * beta = {f_b} is not bounded")
    if not equal(f_b / B, f_gb, tol):
        raise VerificationFailure("f_b / beta does not reproduce f_gb")
    return f_b, beta


def gb_representation(g: RationalFunction, p: RationalFunction, tol: Tolerances = DEFAULT) -> RationalFunction:
    """``(g g# - p)(g g# + p)^-1``, generalized bounded for positive ``p``."""
    check_g(g, tol)
    rep = is_p(p, tol)
    if not rep:
        raise NotPositive(f"p is not positive: {rep.witness}")
    ggs = g * sharp(g)
    den = ggs + p
    if den.is_zero():
        raise Degenerate("g g# + p vanishes identically")
    f = (ggs - p) / den
    if not is_gb(f, tol):
        raise VerificationFailure(f"{f} is not generalized bounded")
    return f


# ---------------------------------------------------------------------------
# GB_g does not fix right-half-plane poles or zeros


@dataclass(frozen=True)
class GbgDemo:
    g: RationalFunction
    p1: RationalFunction
    p2: RationalFunction
    f1: RationalFunction
    f2: RationalFunction
    p_positive: tuple[bool, bool]
    zeros1: tuple[complex, ...]
    zeros2: tuple[complex, ...]
    poles1: tuple[complex, ...]
    poles2: tuple[complex, ...]
    distinct_zeros: bool
    distinct_poles: bool


def _same_multiset(a, b, radius: float) -> bool:
    if len(a) != len(b):
        return False
    left = list(b)
    for z in a:
        d = [abs(z - w) for w in left]
        if not d or min(d) > radius * (1 + abs(z)):
            return False
        left.pop(int(np.argmin(d)))
    return True


def gb_g_instability_demo(
    g: RationalFunction,
    eps: float | tuple[float, ...] = 0.01,
    delta: float | tuple[float, ...] = 0.01,
    literal: bool = False,
    tol: Tolerances = DEFAULT,
) -> GbgDemo:
    """Two members of GB_g whose right-half-plane zeros and poles differ.

    ``g = c n/d`` with all roots of ``n`` and ``d`` in the open right half
    plane.  The zeros of ``n`` are pushed right by ``eps_j`` to form ``n~``,
    the zeros of ``d`` by ``delta_k`` to form ``d~``, and the members are
    ``(g g# - p)(g g# + p)^-1`` for ``p1 = n#/n~#`` and ``p2 = d~#/d#``.
    Both ``p`` are positive for small perturbations.  With ``literal=True``
    the unreflected ``p1 = n/n~`` and ``p2 = d~/d`` are used instead; those
    have poles in the right half plane, and ``p_positive`` reports it.
    """
    zs = g.zeros(tol).locations()
    ps = g.poles(tol).locations()
    for z in zs + ps:
        if not z.real > tol.axis * (1 + abs(z)):
            raise BadG(f"g must have all zeros and poles in the open right half plane, found {z}")
    eps_v = np.broadcast_to(np.asarray(eps, float), (len(zs),))
    delta_v = np.broadcast_to(np.asarray(delta, float), (len(ps),))
    if np.any(eps_v < 0) or np.any(delta_v < 0):
        raise ValueError("perturbations must be nonnegative")
    n = Polynomial.from_roots(zs)
    nt = Polynomial.from_roots([z + e for z, e in zip(zs, eps_v)])
    d = Polynomial.from_roots(ps)
    dt = Polynomial.from_roots([z + e for z, e in zip(ps, delta_v)])
    if literal:
        p1, p2 = RationalFunction(n, nt, tol), RationalFunction(dt, d, tol)
    else:
        p1 = RationalFunction(n.paraconjugate(), nt.paraconjugate(), tol)
        p2 = RationalFunction(dt.paraconjugate(), d.paraconjugate(), tol)
    ggs = g * sharp(g)
    f1 = (ggs - p1) / (ggs + p1)
    f2 = (ggs - p2) / (ggs + p2)

    def cplus(rl):
        plus, _, _ = region_split(rl, tol)
        return tuple(plus.locations())

    z1, z2 = cplus(f1.zeros(tol)), cplus(f2.zeros(tol))
    q1, q2 = cplus(f1.poles(tol)), cplus(f2.poles(tol))
    radius = tol.cluster  # same meaning of "one root" as the root finder
    return GbgDemo(
        g, p1, p2, f1, f2,
        (bool(is_p(p1, tol)), bool(is_p(p2, tol))),
        z1, z2, q1, q2,
        not _same_multiset(z1, z2, radius),
        not _same_multiset(q1, q2, radius),
    )
