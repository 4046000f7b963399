"""Dense complex polynomials, the paraconjugate, and a clustering root finder."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly

from .config import DEFAULT, Tolerances
from .errors import NonConvergence

_EPS = np.finfo(float).eps


def _as_coeffs(coeffs) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(coeffs, dtype=complex)).ravel()
    if arr.size == 0:
        arr = np.zeros(1, dtype=complex)
    if not np.all(np.isfinite(arr)):
        raise ValueError("polynomial coefficients must be finite")
    return arr


def _trim(arr: np.ndarray, rel: float) -> np.ndarray:
    scale = np.max(np.abs(arr))
    if scale == 0.0:
        return np.zeros(1, dtype=complex)
    n = arr.size
    while n > 1 and abs(arr[n - 1]) <= rel * scale:
        n -= 1
    return arr[:n].copy()


class Polynomial:
    """Polynomial with complex coefficients in ascending order of degree.

    Instances are immutable; the coefficient array is trimmed on construction
    so that the highest coefficient is nonzero (or the array is ``[0]``).
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs=(0,), tol: Tolerances = DEFAULT):
        c = _trim(_as_coeffs(coeffs), tol.trim)
        c.setflags(write=False)
        object.__setattr__(self, "_c", c)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # construction helpers
    @classmethod
    def constant(cls, value) -> "Polynomial":
        return cls([value])

    @classmethod
    def s(cls) -> "Polynomial":
        return cls([0, 1])

    @classmethod
    def from_roots(cls, locations: Iterable[complex], lead: complex = 1.0) -> "Polynomial":
        locs = list(locations)
        if not locs:
            return cls([lead])
        return cls(lead * npoly.polyfromroots(np.asarray(locs, dtype=complex)))

    # basic properties
    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def degree(self) -> int:
        return -1 if self.is_zero() else self._c.size - 1

    @property
    def lead(self) -> complex:
        return complex(self._c[-1])

    def is_zero(self) -> bool:
        return self._c.size == 1 and self._c[0] == 0

    def is_constant(self) -> bool:
        return self._c.size == 1

    def norm(self) -> float:
        return float(np.max(np.abs(self._c)))

    def __repr__(self) -> str:
        return f"Polynomial({np.array2string(self._c, precision=6, separator=', ')})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._c.shape == other._c.shape and bool(np.all(self._c == other._c))

    __hash__ = None

    def allclose(self, other: "Polynomial", rel: float = 1e-10) -> bool:
        n = max(self._c.size, other._c.size)
        a = np.zeros(n, complex)
        b = np.zeros(n, complex)
        a[: self._c.size] = self._c
        b[: other._c.size] = other._c
        scale = max(np.max(np.abs(a)), np.max(np.abs(b)), 1e-300)
        return bool(np.max(np.abs(a - b)) <= rel * scale)

    # arithmetic
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if np.isscalar(other):
            return Polynomial([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(npoly.polyadd(self._c, other._c))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-self._c)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(npoly.polysub(self._c, other._c))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(np.convolve(self._c, other._c))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        out = Polynomial([1])
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, s):
        return evaluate(self, s)

    def divmod(self, other: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        q, r = npoly.polydiv(self._c, other._c)
        return Polynomial(q), Polynomial(r)

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        """Quotient of a division known to be exact, solved in least squares.

        Minimizing ``||other * q - self||`` over the convolution matrix is
        backward stable, unlike synthetic division on ill-placed roots.
        """
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        m = self.degree - other.degree
        if m < 0:
            return Polynomial([0])
        A = np.zeros((self._c.size, m + 1), dtype=complex)
        for k in range(m + 1):
            A[k : k + other._c.size, k] = other._c
        q, *_ = np.linalg.lstsq(A, self._c, rcond=None)
        return Polynomial(q)

    def deriv(self, k: int = 1) -> "Polynomial":
        if self._c.size <= k:
            return Polynomial([0])
        return Polynomial(npoly.polyder(self._c, k))

    def paraconjugate(self) -> "Polynomial":
        return paraconjugate(self)

    def conj_coeffs(self) -> "Polynomial":
        return Polynomial(np.conj(self._c))

    def on_axis(self) -> "Polynomial":
        """Coefficients of ``omega -> self(i*omega)`` as a polynomial in omega."""
        k = np.arange(self._c.size)
        return Polynomial(self._c * (1j ** k))

    def shift(self, c: complex) -> "Polynomial":
        """Taylor coefficients about ``c``: returns ``q`` with ``q(t) = self(t + c)``."""
        a = self._c.astype(complex).copy()
        n = a.size
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                a[j] += c * a[j + 1]
        return Polynomial(a)

    def roots(self, tol: Tolerances = DEFAULT) -> "RootList":
        return roots(self, tol)


@dataclass(frozen=True)
class RootList:
    """Distinct root locations with multiplicities.

    ``residual_bound`` is the largest ``|a(root)|`` observed after refinement.
    """

    roots: tuple[tuple[complex, int], ...] = ()
    residual_bound: float = 0.0

    def __iter__(self) -> Iterator[tuple[complex, int]]:
        return iter(self.roots)

    def __len__(self) -> int:
        return len(self.roots)

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.roots)

    def locations(self) -> list[complex]:
        """Root locations repeated according to multiplicity."""
        out: list[complex] = []
        for z, m in self.roots:
            out.extend([z] * m)
        return out

    def multiplicity_at(self, z: complex, radius: float) -> int:
        return sum(m for r, m in self.roots if abs(r - z) <= radius)

    @classmethod
    def from_locations(cls, locs: Sequence[complex], tol: Tolerances = DEFAULT) -> "RootList":
        """Group a flat list of locations by the clustering radius."""
        locs = [complex(z) for z in locs]
        if not locs:
            return cls()
        radius = tol.cluster * (1 + max(abs(z) for z in locs))
        groups: list[list[complex]] = []
        for z in locs:
            for g in groups:
                if abs(np.mean(g) - z) <= radius:
                    g.append(z)
                    break
            else:
                groups.append([z])
        return cls(tuple((complex(np.mean(g)), len(g)) for g in groups))


def add(a: Polynomial, b: Polynomial) -> Polynomial:
    return a + b


def mul(a: Polynomial, b: Polynomial) -> Polynomial:
    return a * b


def paraconjugate(a: Polynomial) -> Polynomial:
    """``a#(s) = conj(a(-conj(s)))``: coefficient k becomes ``(-1)^k conj(c_k)``."""
    c = a.coeffs
    sign = np.where(np.arange(c.size) % 2 == 0, 1.0, -1.0)
    return Polynomial(sign * np.conj(c))


def evaluate(a: Polynomial, s):
    """Horner evaluation; accepts scalars or arrays."""
    c = a.coeffs
    s_arr = np.asarray(s, dtype=complex)
    out = np.full(s_arr.shape, c[-1], dtype=complex)
    for coef in c[-2::-1]:
        out = out * s_arr + coef
    if out.ndim == 0:
        return complex(out)
    return out


# ---------------------------------------------------------------------------
# root finding


def _aberth(c: np.ndarray, maxiter: int) -> np.ndarray | None:
    """Aberth-Ehrlich simultaneous iteration; ``c`` ascending, ``c[0] != 0``."""
    n = c.size - 1
    a = c[::-1] / c[-1]  # monic, descending
    da = np.polyder(a)
    abs_a = np.abs(a)
    # Fujiwara-style radius bound for the initial circle
    radius = 2.0 * max(abs(a[k]) ** (1.0 / k) for k in range(1, n + 1))
    centre = -a[1] / n
    spread = min(radius, max(abs(np.polyval(a, centre)) ** (1.0 / n), 1e-3))
    z = centre + spread * np.exp(1j * (2 * np.pi * np.arange(n) / n + 0.4))
    done = np.zeros(n, dtype=bool)
    for _ in range(maxiter):
        pz = np.polyval(a, z)
        bound = 8 * n * _EPS * np.polyval(abs_a, np.abs(z))
        done |= np.abs(pz) <= bound
        if done.all():
            return z
        dpz = np.polyval(da, z)
        small = dpz == 0
        dpz[small] = _EPS
        ratio = pz / dpz
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        S = inv.sum(axis=1)
        w = ratio / (1.0 - ratio * S)
        w[~np.isfinite(w)] = 1e-3 * (1 + abs(centre))
        z = np.where(done, z, z - w)
        if not np.all(np.isfinite(z)):
            return None
    return None


def _reconstructs(core: np.ndarray, raw: np.ndarray, rel: float = 1e-8) -> bool:
    """Whether ``lead * prod(s - r)`` reproduces the coefficients."""
    monic = core / core[-1]
    back = np.poly(raw)[::-1]
    return bool(np.max(np.abs(back - monic)) <= rel * np.max(np.abs(monic)))


def _taylor(desc: np.ndarray, c: complex, k: int) -> np.ndarray:
    """First ``k`` Taylor coefficients ``p^(j)(c)/j!`` by repeated synthetic division."""
    out = np.empty(k, dtype=complex)
    q = np.asarray(desc, dtype=complex)
    for j in range(k):
        acc = np.empty_like(q)
        acc[0] = q[0]
        for i in range(1, q.size):
            acc[i] = acc[i - 1] * c + q[i]
        out[j] = acc[-1]
        q = acc[:-1]
        if q.size == 0:
            out[j + 1:] = 0
            break
    return out


def _is_multiple(core: np.ndarray, centre: complex, m: int, tol: Tolerances) -> bool:
    """Whether ``p, p', ..., p^(m-1)`` all vanish at ``centre`` to rounding level."""
    desc = core[::-1] / core[-1]
    n = desc.size - 1
    t = _taylor(desc, centre, m + 1)
    absd = _taylor(np.abs(desc), abs(centre), m + 1).real
    slack = np.sqrt(_EPS) * (1 + abs(centre))
    for k in range(m):
        noise = 1e2 * _backward(n, tol) * absd[k]
        drift = math.comb(m, k) * abs(t[m]) * slack ** (m - k)
        if abs(t[k]) > noise + drift:
            return False
    return True


def _cluster(raw: np.ndarray, core: np.ndarray, tol: Tolerances) -> list[list[complex]]:
    """Group raw roots; a group of m is accepted if it fits the m-fold radius.

    A perturbed m-fold root splits into a ring of radius ~ (n eps)^(1/m), so
    the admissible radius grows with the group size.
    """
    def allowed(members: np.ndarray, others: np.ndarray, centre: complex) -> float:
        base = (1.0 + abs(centre)) * tol.cluster
        if members.size == 1:
            return base
        return max(base, _ring(core, centre, members.size, others, tol))

    raw = np.asarray(raw, dtype=complex)
    remaining = list(range(raw.size))
    groups: list[list[complex]] = []
    while remaining:
        best = None
        arr = raw[remaining]
        for zi in arr:
            order = np.argsort(np.abs(arr - zi))
            for k in range(1, len(remaining)):
                chosen = {remaining[j] for j in order[: k + 1]}
                members = raw[sorted(chosen)]
                others = raw[[j for j in range(raw.size) if j not in chosen]]
                centre = members.mean()
                rad = float(np.max(np.abs(members - centre)))
                lim = allowed(members, others, centre)
                if rad > allowed(raw, raw[:0], centre):
                    break
                isolated = others.size == 0 or np.min(np.abs(others - centre)) > 2 * rad
                if rad <= lim and isolated and _is_multiple(core, centre, k + 1, tol):
                    key = (k + 1, -rad / lim)
                    if best is None or key > best[0]:
                        best = (key, chosen)
        if best is None:
            groups.append([complex(raw[remaining.pop(0)])])
            continue
        groups.append([complex(raw[j]) for j in sorted(best[1])])
        remaining = [j for j in remaining if j not in best[1]]
    return groups


def _backward(n: int, tol: Tolerances) -> float:
    # coefficients from chained arithmetic are trusted to about tol.trim
    return max(64.0 * n * _EPS, tol.trim)


def _ring(core: np.ndarray, centre: complex, m: int, others: np.ndarray, tol: Tolerances) -> float:
    """Radius of the ring an m-fold root at ``centre`` splits into under rounding.

    ``p^(m)(c)/m!`` is taken as ``lead * prod(c - r)`` over the roots ``r``
    outside the cluster, which stays meaningful when other clusters are close.
    """
    desc = core[::-1]
    eta = _backward(core.size - 1, tol) * np.polyval(np.abs(desc), abs(centre))
    dm = abs(desc[0]) * float(np.prod(np.abs(centre - others))) if others.size else abs(desc[0])
    return 4.0 * (eta / dm) ** (1.0 / m) if dm else 0.0


def root_accuracies(a: Polynomial, rl: "RootList", tol: Tolerances = DEFAULT) -> list[float]:
    """Rounding radius of each root in ``rl`` (roots of ``a``), in list order."""
    flat = list(rl)
    out = []
    for i, (z, m) in enumerate(flat):
        others = np.array([w for j, (w, k) in enumerate(flat) if j != i for _ in range(k)], dtype=complex)
        out.append(max(_ring(a.coeffs, z, m, others, tol), 16 * _EPS * (1 + abs(z))))
    return out


def _refine(p: Polynomial, centre: complex, m: int, limit: float) -> complex:
    """Newton on the (m-1)-th derivative, where an m-fold root is simple."""
    q = p.deriv(m - 1)
    dq = q.deriv()
    z = centre
    best, best_val = centre, abs(q(centre))
    for _ in range(30):
        d = dq(z)
        if d == 0:
            break
        step = q(z) / d
        z = z - step
        if abs(z - centre) > limit:
            break
        val = abs(q(z))
        if val < best_val:
            best, best_val = z, val
        if abs(step) <= 4 * _EPS * (1 + abs(z)):
            break
    return best


def roots(a: Polynomial, tol: Tolerances = DEFAULT) -> RootList:
    """All roots of ``a`` with multiplicities (empty for constants)."""
    if a.is_zero():
        raise ValueError("roots of the zero polynomial are undefined")
    c = a.coeffs
    if c.size == 1:
        return RootList()
    scale = np.max(np.abs(c))
    k0 = 0
    while k0 < c.size - 1 and abs(c[k0]) <= tol.trim * scale:
        k0 += 1
    core = c[k0:]
    raw = np.zeros(0, dtype=complex)
    if core.size > 1:
        if core.size == 2:
            raw = np.array([-core[0] / core[1]])
        else:
            raw = _aberth(core, tol.aberth_maxiter)
            if raw is None or not _reconstructs(core, raw):
                # frozen iterates can share one pseudo-zero disc and miss roots
                raw = np.roots(core[::-1])
            if not np.all(np.isfinite(raw)):
                raise NonConvergence("root finder produced non-finite roots")
    n_total = c.size - 1
    groups = _cluster(raw, core, tol) if raw.size else []
    core_poly = Polynomial(core)
    out: list[tuple[complex, int]] = []
    for i, g in enumerate(groups):
        centre = complex(np.mean(g))
        m = len(g)
        others = np.array([z for j, h in enumerate(groups) if j != i for z in h], dtype=complex)
        limit = max(_ring(core, centre, m, others, tol), (1 + abs(centre)) * tol.cluster)
        out.append((_refine(core_poly, centre, m, limit), m))
    if k0:
        # merge an explicit zero root with any cluster sitting on the origin
        merged = False
        for i, (z, m) in enumerate(out):
            if abs(z) <= tol.cluster:
                out[i] = (0j, m + k0)
                merged = True
                break
        if not merged:
            out.append((0j, k0))
    out.sort(key=lambda zm: (round(zm[0].real, 12), round(zm[0].imag, 12)))
    residual = max((abs(a(z)) for z, _ in out), default=0.0)
    return RootList(tuple(out), float(residual))
