"""Numerical tolerances shared by every module.

Classification verdicts depend on these thresholds, so they are bundled in a
single frozen record that is passed explicitly (``tol=...``) instead of being
scattered as module constants.
"""
from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from pathlib import Path


@dataclass(frozen=True)
class Tolerances:
    # leading coefficients with |c| <= trim * max|c| are dropped
    trim: float = 1e-12
    # roots farther apart than cluster * (1 + |root|) are never merged or
    # cancelled; closer ones only when they agree to rounding accuracy
    cluster: float = 1e-6
    # |Re root| <= axis * (1 + |root|) counts as on the imaginary axis
    axis: float = 1e-7
    # relative coefficient distance for function equality
    equal: float = 1e-8
    # Re >= -nonneg * (1 + scale) passes a nonnegativity test
    nonneg: float = 1e-9
    # Pick matrix PSD test: min eig >= -pick * trace / n
    pick: float = 1e-8
    # |Im residue| <= residue * (1 + |residue|) for a positive residue
    residue: float = 1e-6
    # spectral-factor pairing of lambda with -conj(lambda)
    pairing: float = 1e-6
    # interpolation node residual: |psi(s_j) - w_j| <= residual * (1 + |w_j|)
    residual: float = 1e-7
    aberth_maxiter: int = 500

    def replace(self, **changes) -> "Tolerances":
        return dataclasses.replace(self, **changes)

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_file(cls, path: str | Path, base: "Tolerances | None" = None) -> "Tolerances":
        """Load overrides from a JSON object whose keys are field names."""
        data = json.loads(Path(path).read_text())
        if not isinstance(data, dict):
            raise ValueError(f"{path}: expected a JSON object of tolerance overrides")
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"{path}: unknown tolerance keys {sorted(unknown)}")
        return (base or cls()).replace(**data)


DEFAULT = Tolerances()
