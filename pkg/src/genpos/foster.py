"""Foster (lossless) partial-fraction form ``i r_o + a_o s + sum a_j / (s - i r_j)``."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT, Tolerances
from .polynomial import Polynomial
from .ratfun import RationalFunction, on_axis


@dataclass(frozen=True)
class FosterForm:
    r_o: float
    a_o: float
    terms: tuple[tuple[float, float], ...] = ()  # (a_j, r_j)

    def to_rational(self) -> RationalFunction:
        out = RationalFunction(Polynomial([1j * self.r_o, self.a_o]))
        for a, r in self.terms:
            out = out + RationalFunction(Polynomial([a]), Polynomial([-1j * r, 1]))
        return out

    def admissible(self, tol: Tolerances = DEFAULT) -> bool:
        return self.a_o >= -tol.nonneg and all(a > 0 for a, _ in self.terms)


def foster_decompose(p: RationalFunction, tol: Tolerances = DEFAULT) -> tuple[FosterForm, float] | None:
    """Partial fractions of ``p`` in Foster shape.

    Returns ``(form, defect)`` where ``defect`` is the largest relative
    departure from the real parameters the shape requires, or ``None`` when
    ``p`` has an off-axis pole, a repeated pole, or a pole of order > 1 at
    infinity.
    """
    if p.excess > 1:
        return None
    poles = p.poles(tol)
    if any(m > 1 or not on_axis(z, tol) for z, m in poles):
        return None
    q, _ = p.num.divmod(p.den)
    qc = np.zeros(2, dtype=complex)
    qc[: q.coeffs.size] = q.coeffs[:2]
    c0, a_o = complex(qc[0]), complex(qc[1])
    terms = []
    defects = [abs(a_o.imag) / (1 + abs(a_o)), abs(c0.real) / (1 + abs(c0))]
    dden = p.den.deriv()
    for z, _ in poles:
        ir = complex(0.0, z.imag)
        res = complex(p.num(ir) / dden(ir))
        defects.append(abs(res.imag) / (1 + abs(res)))
        terms.append((res.real, z.imag))
    terms.sort(key=lambda t: t[1])
    return FosterForm(c0.imag, a_o.real, tuple(terms)), max(defects)
