"""Exact orthogonal polynomials and the Gibbs overshoot of their expansions.

Polynomials are built with rational coefficients, expansion coefficients
carry their transcendental factors symbolically, and critical points are
located with certified brackets.  Precision enters only at evaluation.
"""

from .critpoints import RootEnclosure, Side, bracket_first_root, first_root, refine_root, u_map
from .errors import (
    DomainError,
    GibbsPolyError,
    IllConditionedError,
    MultipleRootsError,
    NoRootFoundError,
    NotDivisibleError,
    NumericalError,
    PoleError,
    PrecisionExhaustedError,
)
from .exactpoly import Poly, root_count, sturm_count, sturm_sequence
from .expand import (
    CDForm,
    ExpansionSeries,
    JumpKind,
    cd_derivative,
    gegenbauer_coefficients,
    hermite_coefficients,
    laguerre_coefficients,
    partial_sum_eval,
)
from .gibbsrun import (
    AsymptoticReport,
    ConjectureRow,
    GibbsRow,
    asymptotic_compare,
    conjecture_at_1,
    gegenbauer_overshoot,
    hermite_overshoot,
    laguerre_overshoot,
    overshoot,
    overshoot_table,
    triple_sum_limit,
    triple_sum_partial,
)
from .mpnum import ExactReal, RealMP, gamma, gibbs_constant, sine_integral, upper_incomplete_gamma_at_1
from .orthofam import Family, FamilySpec, norm_squared, polynomial, recurrence_values

__version__ = "0.1.0"
