"""Shifted-Chebyshev interpolation tables for the gamma and polygamma functions.

The library regenerates, stores and evaluates coefficient tables for
gamma, 1/gamma, ln-gamma, digamma and higher polygamma functions on
z in [1, inf), built on a shifted-Chebyshev series algebra and a
Stirling-series high-precision bootstrap.
"""

from .chebcore import (
    ArgMap,
    ChebSeries,
    PrecisionContext,
    add,
    clenshaw_eval,
    differentiate,
    differentiate_inverse_arg,
    fit,
    make_series,
    multiply,
    nodes,
    scale,
    tail_sum,
    to_power_basis,
    truncate,
)
from .errors import (
    CapacityError,
    DomainError,
    FitError,
    GammachebError,
    ScanExhaustedError,
    TableParseError,
)
from .fasteval import FastEvaluator
from .gammafam import (
    FunctionTable,
    GAMMA,
    HarmonicResult,
    INVGAMMA,
    LNGAMMA,
    TableKind,
    derive_polygamma_table,
    derive_psi_table,
    evaluate,
    generalized_harmonic,
    generate_auto,
    generate_psi_table,
    generate_table,
    harmonic,
    load_table,
    power_form,
    psi_kind,
    psi_reference,
    polygamma_reference,
    save_table,
    truncated,
)
from .stirling import (
    BernoulliTable,
    TruncationReport,
    bernoulli,
    lngamma_oracle,
    optimal_truncation,
    stirling_term,
)

__version__ = "0.1.0"
