"""Randomized check that non-positive GP functions admit a destabilizing positive p."""
import numpy as np

from genpos import sharp
from genpos.classify import is_gp, is_p
from genpos.factor import positive_counterexample
from genpos.polynomial import Polynomial
from genpos.ratfun import RationalFunction
from oracles import _rand_positive, poly_value


def _rand_g(rng) -> RationalFunction:
    # at least one zero or pole strictly inside the right half plane
    def pts(k):
        return list(rng.uniform(0.1, 3, k) + 1j * rng.uniform(-3, 3, k))

    zeros, poles = pts(rng.integers(0, 3)), pts(rng.integers(0, 3))
    if not zeros and not poles:
        zeros = pts(1)
    return RationalFunction(Polynomial.from_roots(zeros), Polynomial.from_roots(poles))


def non_positive_gp(n: int, seed: int = 11) -> list[RationalFunction]:
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < n:
        g = _rand_g(rng)
        if g.is_constant():
            continue
        psi = g * _rand_positive(rng) * sharp(g)
        out.append(psi)
    return out


def cplus_root(f: RationalFunction, tol: float = 1e-8) -> complex | None:
    """A verified root of ``f`` in the open right half plane, or None."""
    num = f.num
    for z, _ in num.roots():
        if z.real <= 0:
            continue
        resid = abs(num(z)) / poly_value(np.abs(num.coeffs), abs(z))
        if resid <= tol:
            return z
    return None


def trial(h: RationalFunction) -> tuple[bool, str]:
    if not is_gp(h):
        return False, "sample is not GP"
    if is_p(h):
        return False, "sample is positive"
    p = positive_counterexample(h)
    if not is_p(p):
        return False, "returned p is not positive"
    if cplus_root(h + p) is None:
        return False, "h + p has no verified right-half-plane root"
    return True, ""


def run_trials(n: int = 100, seed: int = 11) -> list[tuple[int, str]]:
    return [(k, why) for k, h in enumerate(non_positive_gp(n, seed)) for ok, why in [trial(h)] if not ok]


def test_counterexample_trials():
    assert run_trials() == []
