"""Green functions of the 1D stationary Schrodinger equation.

The potential is described through f(x) with V = f**2 + f'; the same
Green function is computed through independent routes (decaying
solutions and their Wronskian, a closed form in interval
transmission/reflection coefficients, matrix elements in a polynomial
representation of the underlying rank-two algebra, and a
multiple-scattering series), plus a verification suite that re-checks
every algebraic identity the routes rest on.
"""

from .born import born_series, path_term_count
from .green import (
    GreenValue,
    green_closed_form,
    green_negative_power,
    green_polyrep,
    green_power,
    green_product,
    jump_condition_check,
)
from .potential import (
    PotentialSpec,
    Segment,
    ConstantProfile,
    LinearProfile,
    SampledProfile,
    check_wavenumber,
    load_potential,
    slab,
    vacuum_spec,
)
from .sl3 import GeneratorSet3, green_wronskian
from .transfer import (
    ScatteringTriple,
    TransferMatrix,
    interval_triple,
    propagate,
    riccati_coefficients,
    semi_infinite_coefficients,
)
from .verify import CheckReport, run_suite

__version__ = "0.1.0"

__all__ = [
    "GreenValue",
    "PotentialSpec",
    "Segment",
    "ConstantProfile",
    "LinearProfile",
    "SampledProfile",
    "ScatteringTriple",
    "TransferMatrix",
    "GeneratorSet3",
    "CheckReport",
    "born_series",
    "path_term_count",
    "check_wavenumber",
    "green_closed_form",
    "green_negative_power",
    "green_polyrep",
    "green_power",
    "green_product",
    "green_wronskian",
    "interval_triple",
    "jump_condition_check",
    "load_potential",
    "propagate",
    "riccati_coefficients",
    "run_suite",
    "semi_infinite_coefficients",
    "slab",
    "vacuum_spec",
]
