"""Independent checks: dense frequency scans, sampling of the right half plane,
and a seeded corpus of test functions."""
from __future__ import annotations

import numpy as np

from genpos import RationalFunction, parse_expression, sharp
from genpos.bounded import cayley
from genpos.polynomial import Polynomial

_HALF = np.logspace(-4, 4, 2048)
GRID = np.concatenate([-_HALF[::-1], _HALF])  # 4096 frequencies
_RHP = (np.logspace(-3, 3, 40)[:, None] + 1j * np.concatenate([-np.logspace(-3, 3, 20)[::-1], [0], np.logspace(-3, 3, 20)])[None, :]).ravel()


def axis_values(f: RationalFunction, omegas=GRID) -> np.ndarray:
    s = 1j * omegas
    num = np.polyval(f.num.coeffs[::-1], s)
    den = np.polyval(f.den.coeffs[::-1], s)
    # drop points where the denominator is lost in rounding (at a pole)
    den_scale = np.polyval(np.abs(f.den.coeffs[::-1]), np.abs(s))
    with np.errstate(divide="ignore", invalid="ignore"):
        v = num / den
    return v[np.isfinite(v) & (np.abs(den) > 1e-10 * den_scale)]


def grid_gp(f: RationalFunction, tol: float = 1e-7) -> bool:
    v = axis_values(f)
    return bool(np.all(v.real >= -tol * (1 + np.abs(v))))


def grid_gb(f: RationalFunction, tol: float = 1e-7) -> bool:
    v = axis_values(f)
    return bool(np.all(1 - np.abs(v) ** 2 >= -tol * (1 + np.abs(v) ** 2)))


def sample_rhp_min_real(f: RationalFunction) -> float:
    v = np.polyval(f.num.coeffs[::-1], _RHP) / np.polyval(f.den.coeffs[::-1], _RHP)
    return float(np.min(v.real / (1 + np.abs(v))))


def poly_value(coeffs, s):
    return np.polyval(np.asarray(coeffs)[::-1], s)


# ---------------------------------------------------------------------------
# corpus

EXAMPLES = [
    "(s-2)/s", "(s-2)/s^2", "(s+2)/s^2", "1", "s", "i*s", "s^2", "-s^2", "1/(1+s)", "1/(1-s^2)",
    "(s^2-4)/s^2", "(s-2)/(s+2)", "16/(49-9*s^2)", "4/(7-3*s)", "(8*s^2+7)/(6*s)",
    "8*(8*s^2+7)/(3*s*(49-9*s^2))", "12*s*(s^2+9)/((s^2+2)*(49-9*s^2))",
    "12*(s^3+3*s^2+6)/((s^2+2)*(49-9*s^2))", "(s+2)^2*(s-2)/s^3", "(s^2-4)*(s+2*i)/(s*(s+i))",
    "(1-s)/(1+s)", "2/(1+s)", "1/(s-1)", "3*s*(s^2+9)/(4*(s^2+2))", "(3/4)*(s^3+3*s^2+6)/(s^2+2)",
]


def _rand_roots(rng, k, min_re=0.1):
    re = rng.uniform(min_re, 3, k) * rng.choice([-1, 1], k)
    return re + 1j * rng.uniform(-3, 3, k)


def _rand_positive(rng) -> RationalFunction:
    p = RationalFunction.constant(rng.uniform(0, 1))
    if rng.random() < 0.5:
        p = p + RationalFunction(Polynomial([0, rng.uniform(0.2, 2)]))
    for _ in range(rng.integers(0, 3)):
        b = rng.uniform(0.1, 2) + 1j * rng.uniform(-2, 2)
        p = p + RationalFunction(Polynomial([rng.uniform(0.2, 2)]), Polynomial([b, 1]))
    if p.is_zero():
        p = RationalFunction.constant(1.0)
    return p


def _rand_g(rng) -> RationalFunction:
    zeros = [complex(abs(w.real), w.imag) for w in _rand_roots(rng, rng.integers(0, 3))]
    poles = [complex(abs(w.real), w.imag) for w in _rand_roots(rng, rng.integers(0, 3))]
    return RationalFunction(Polynomial.from_roots(zeros), Polynomial.from_roots(poles))


def corpus(seed: int = 7) -> list[tuple[str, RationalFunction]]:
    """Named functions spanning the classes: worked examples plus seeded random members."""
    rng = np.random.default_rng(seed)
    out = [(e, parse_expression(e)) for e in EXAMPLES]
    for k in range(40):
        g, p = _rand_g(rng), _rand_positive(rng)
        out.append((f"gp{k}", g * p * sharp(g)))
    for k in range(40):
        num = Polynomial.from_roots(_rand_roots(rng, rng.integers(0, 4)), rng.uniform(0.2, 3) * rng.choice([-1, 1]))
        den = Polynomial.from_roots(_rand_roots(rng, rng.integers(0, 4)))
        out.append((f"rand{k}", RationalFunction(num, den)))
    for k in range(20):
        h = RationalFunction(Polynomial.from_roots(_rand_roots(rng, rng.integers(0, 3))),
                             Polynomial.from_roots(_rand_roots(rng, rng.integers(0, 3))))
        out.append((f"gpe{k}", h * sharp(h)))
    for k in range(20):
        out.append((f"bnd{k}", cayley(_rand_positive(rng))))
    for k in range(20):
        g, p = _rand_g(rng), _rand_positive(rng)
        psi = g * p * sharp(g)
        if not (RationalFunction.constant(1.0) + psi).is_zero():
            out.append((f"gb{k}", cayley(psi)))
    return out
