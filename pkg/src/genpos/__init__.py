"""Generalized positive rational functions: classes, factorizations, interpolation."""
from .bounded import BlaschkeProduct, blaschke_extract, cayley, cayley_inv, gb_g_instability_demo, gb_representation
from .classify import (
    ClassReport,
    Witness,
    in_gp_g,
    is_bounded,
    is_even,
    is_gb,
    is_gp,
    is_gpe,
    is_odd,
    is_p,
    is_para_positive,
    is_po,
)
from .config import DEFAULT, Tolerances
from .evenodd import even_part, even_product_law, odd_part, odd_square_gpe
from .expr import parse_expression, to_text
from .factor import (
    FosterForm,
    GpeProductForm,
    GpFactorization,
    factor_gp,
    gpe_product_form,
    minimal_degree_in_gp_g,
    odd_canonical,
    odd_orthogonality_check,
    positive_counterexample,
    spectral_factor_gpe,
)
from .interpolate import (
    InterpProblem,
    InterpSolution,
    PickMatrix,
    blend,
    pick_matrix,
    solve,
    solve_gp_g,
    solve_gp_onesided_real,
    solve_gpe_symmetric,
    solve_p,
    solve_po,
)
from .polynomial import Polynomial, RootList
from .ratfun import PoleAt, PoleZeroGain, RationalFunction, compose, equal, sharp

__version__ = "0.1.0"
